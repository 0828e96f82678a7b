#include "ipack/comparison.hpp"

#include <algorithm>
#include <string>

#include "ipack/error.hpp"
#include "ipack/kernels.hpp"
#include "ipack/standard_surfaces.hpp"

namespace ipack {

PartitionAB::PartitionAB(VertexSubset a, VertexSubset b, int vertex_count)
    : a_(std::move(a)), b_(std::move(b)) {
  if (a_.empty()) throw Error(ErrorCode::InvalidPartition, "A must be nonempty");
  if (static_cast<int>(a_.size() + b_.size()) != vertex_count) {
    throw Error(ErrorCode::InvalidPartition, "A and B must cover all vertices exactly once");
  }
  for (int v : a_.members()) {
    if (v >= vertex_count || b_.contains(v)) {
      throw Error(ErrorCode::InvalidPartition, "vertex " + std::to_string(v) + " is in both A and B");
    }
  }
  for (int v : b_.members()) {
    if (v >= vertex_count) throw Error(ErrorCode::InvalidPartition, "B member out of range");
  }
}

PartitionAB PartitionAB::from_a(const VertexSubset& a, int vertex_count) {
  std::vector<int> rest;
  for (int v = 0; v < vertex_count; ++v) {
    if (!a.contains(v)) rest.push_back(v);
  }
  return PartitionAB(a, VertexSubset(std::move(rest), vertex_count), vertex_count);
}

namespace {

std::vector<double> curvature_or_throw(const WeightedSurface& surface, const RadiusVector& radii,
                                       const char* which) {
  if (static_cast<int>(radii.size()) != surface.vertex_count()) {
    throw Error(ErrorCode::DimensionMismatch, std::string(which) + " has the wrong length");
  }
  try {
    return kernels::curvature(surface, radii);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::DegenerateTriangle) throw;
    throw Error(ErrorCode::NotAPackingMetric, std::string(which) + ": " + e.what());
  }
}

}  // namespace

ComparisonVerdict check_comparison(const WeightedSurface& surface, const PartitionAB& partition,
                                   const RadiusVector& r, const RadiusVector& big_r,
                                   const ComparisonTolerance& tolerance) {
  const auto k_small = curvature_or_throw(surface, r, "r");
  const auto k_big = curvature_or_throw(surface, big_r, "R");
  const int n = surface.vertex_count();

  ComparisonVerdict verdict;
  verdict.radius_margins.resize(n);
  verdict.curvature_margins.resize(n);
  for (int v = 0; v < n; ++v) {
    verdict.radius_margins[v] = big_r[v] - r[v];
    verdict.curvature_margins[v] = k_big[v] - k_small[v];
  }
  verdict.hyp_radii_ok = std::all_of(partition.b().members().begin(), partition.b().members().end(),
                                     [&](int v) { return verdict.radius_margins[v] >= -tolerance.hypothesis_slack; });
  verdict.hyp_curv_ok = std::all_of(partition.a().members().begin(), partition.a().members().end(),
                                    [&](int v) { return verdict.curvature_margins[v] >= -tolerance.hypothesis_slack; });
  for (int v = 0; v < n; ++v) {
    if (-verdict.radius_margins[v] > tolerance.violation_threshold) {
      verdict.violations.push_back({v, r[v], big_r[v]});
    }
  }
  verdict.conclusion_ok = verdict.violations.empty();
  return verdict;
}

ComparisonInstance build_counterexample() {
  const Triangulation t = surfaces::three_face_disk();
  std::map<Edge, double> inversive{{{0, 1}, 1.0}, {{0, 2}, 1.0}, {{1, 2}, 1.0},
                                   {{0, 3}, 1.0}, {{1, 3}, 4.0}, {{2, 3}, 3.0}};
  WeightedSurface surface = WeightedSurface::from_edge_map(t, Background::Euclidean, inversive);
  PartitionAB partition(VertexSubset({3}, 4), VertexSubset({0, 1, 2}, 4), 4);
  return {std::move(surface), RadiusVector({100, 100, 100, 155}), RadiusVector({110, 240, 220, 150}),
          std::move(partition)};
}

ComparisonInstance doubled_counterexample() {
  const ComparisonInstance disk = build_counterexample();
  DoubledSurface doubled = double_surface(disk.surface);
  const int n = doubled.surface.vertex_count();

  auto extend = [&](const RadiusVector& radii) {
    std::vector<double> out(n, 0.0);
    for (int v = 0; v < disk.surface.vertex_count(); ++v) {
      out[doubled.first_copy[v]] = radii[v];
      out[doubled.second_copy[v]] = radii[v];
    }
    return RadiusVector(std::move(out));
  };

  std::vector<int> a;
  for (int v : disk.partition.a().members()) {
    a.push_back(doubled.first_copy[v]);
    a.push_back(doubled.second_copy[v]);
  }
  PartitionAB partition = PartitionAB::from_a(VertexSubset(std::move(a), n), n);
  RadiusVector r = extend(disk.r);
  RadiusVector big_r = extend(disk.big_r);
  return {std::move(doubled.surface), std::move(r), std::move(big_r), std::move(partition)};
}

RadiusVector generate_comparison_pair(const WeightedSurface& surface, const PartitionAB& partition,
                                      const RadiusVector& r,
                                      const std::map<int, double>& radius_bumps,
                                      const std::map<int, double>& curvature_bumps,
                                      const SolverOptions& options) {
  if (!in_concave_regime(surface)) {
    throw Error(ErrorCode::NotConcaveRegion,
                "comparison pairs need I in (-1, 1] and nonnegative gamma weights");
  }
  for (const auto& [v, bump] : radius_bumps) {
    if (!partition.b().contains(v) || bump < 0) {
      throw Error(ErrorCode::InvalidPartition, "radius bumps must be nonnegative and lie on B");
    }
  }
  for (const auto& [v, bump] : curvature_bumps) {
    if (!partition.a().contains(v) || bump < 0) {
      throw Error(ErrorCode::InvalidPartition, "curvature bumps must be nonnegative and lie on A");
    }
  }
  const auto k = curvature_or_throw(surface, r, "r");

  std::map<int, double> fixed;
  for (int v : partition.b().members()) {
    auto it = radius_bumps.find(v);
    fixed[v] = r[v] + (it == radius_bumps.end() ? 0.0 : it->second);
  }
  std::map<int, double> target;
  for (int v : partition.a().members()) {
    auto it = curvature_bumps.find(v);
    target[v] = k[v] + (it == curvature_bumps.end() ? 0.0 : it->second);
  }
  SolverOptions opts = options;
  if (!opts.initial) opts.initial = r;
  return solve_prescribed_curvature(surface, fixed, target, opts).radii;
}

}  // namespace ipack
