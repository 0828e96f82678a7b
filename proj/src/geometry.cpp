#include "ipack/geometry.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ipack/error.hpp"

namespace ipack {

namespace {

constexpr double kPi = std::numbers::pi;

std::string face_label(const Triangulation& t, int f) {
  const Face& face = t.face(f);
  return std::to_string(f) + " {" + std::to_string(face[0]) + "," + std::to_string(face[1]) + "," +
         std::to_string(face[2]) + "}";
}

}  // namespace

RadiusVector::RadiusVector(std::vector<double> values) : values_(std::move(values)) {
  for (std::size_t v = 0; v < values_.size(); ++v) {
    if (!std::isfinite(values_[v]) || !(values_[v] > 0)) {
      throw Error(ErrorCode::NonPositiveRadius, "radius of vertex " + std::to_string(v) +
                                                    " must be finite and positive");
    }
  }
}

GammaWeights gamma_weights(const std::array<double, 3>& opp) {
  return GammaWeights{{opp[0] + opp[1] * opp[2], opp[1] + opp[0] * opp[2], opp[2] + opp[0] * opp[1]}};
}

GammaWeights gamma_weights(const WeightedSurface& surface, int face) {
  return gamma_weights(surface.face_inversive(face));
}

double edge_length(Background background, double ri, double rj, double inversive) {
  // Both forms split the radicand / arcosh argument into two terms that are
  // nonnegative whenever I > -1, avoiding cancellation for short edges.
  if (background == Background::Euclidean) {
    const double d = ri - rj;
    return std::sqrt(d * d + 2.0 * (1.0 + inversive) * ri * rj);
  }
  const double h = std::sinh(0.5 * (ri - rj));
  const double x = 2.0 * h * h + (1.0 + inversive) * std::sinh(ri) * std::sinh(rj);  // cosh l - 1
  return std::log1p(x + std::sqrt(x * (x + 2.0)));
}

bool triangle_valid_direct(double li, double lj, double lk) {
  return (li + lj + lk) * (li + lj - lk) * (li + lk - lj) * (lj + lk - li) > 0;
}

double triangle_validity_polynomial(Background background, const std::array<double, 3>& r,
                                    const std::array<double, 3>& in) {
  const GammaWeights g = gamma_weights(in);
  if (background == Background::Euclidean) {
    const double ri2 = r[0] * r[0], rj2 = r[1] * r[1], rk2 = r[2] * r[2];
    return ri2 * rj2 * (1 - in[2] * in[2]) + ri2 * rk2 * (1 - in[1] * in[1]) +
           rj2 * rk2 * (1 - in[0] * in[0]) +
           2 * r[0] * r[1] * r[2] * (r[0] * g.values[0] + r[1] * g.values[1] + r[2] * g.values[2]);
  }
  const double si = std::sinh(r[0]), sj = std::sinh(r[1]), sk = std::sinh(r[2]);
  const double ci = std::cosh(r[0]), cj = std::cosh(r[1]), ck = std::cosh(r[2]);
  const double si2 = si * si, sj2 = sj * sj, sk2 = sk * sk;
  return 2 * si2 * sj2 * sk2 * (1 + in[0] * in[1] * in[2]) + si2 * sj2 * (1 - in[2] * in[2]) +
         si2 * sk2 * (1 - in[1] * in[1]) + sj2 * sk2 * (1 - in[0] * in[0]) +
         2 * si * sj * sk *
             (si * cj * ck * g.values[0] + ci * sj * ck * g.values[1] + ci * cj * sk * g.values[2]);
}

bool triangle_valid_polynomial(Background background, const std::array<double, 3>& radii,
                               const std::array<double, 3>& opposite_inversive) {
  return triangle_validity_polynomial(background, radii, opposite_inversive) > 0;
}

bool triangle_valid_polynomial(const WeightedSurface& surface, int face, const RadiusVector& r) {
  return triangle_valid_polynomial(surface.background(),
                                   r.on_face(surface.triangulation().face(face)),
                                   surface.face_inversive(face));
}

std::array<double, 3> face_lengths(Background background, const std::array<double, 3>& r,
                                   const std::array<double, 3>& in) {
  return {edge_length(background, r[1], r[2], in[0]), edge_length(background, r[0], r[2], in[1]),
          edge_length(background, r[0], r[1], in[2])};
}

std::array<double, 3> inner_angles(Background background, double li, double lj, double lk) {
  if (!triangle_valid_direct(li, lj, lk)) {
    throw Error(ErrorCode::DegenerateTriangle, "lengths (" + std::to_string(li) + ", " +
                                                   std::to_string(lj) + ", " + std::to_string(lk) +
                                                   ") violate the triangle inequality");
  }
  // Half-angle tangent form of the (hyperbolic) law of cosines; well
  // conditioned for needle-like triangles.
  const double s = 0.5 * (li + lj + lk);
  const double di = 0.5 * (lj + lk - li);  // s - li
  const double dj = 0.5 * (li + lk - lj);
  const double dk = 0.5 * (li + lj - lk);
  if (background == Background::Euclidean) {
    return {2 * std::atan2(std::sqrt(dj * dk), std::sqrt(s * di)),
            2 * std::atan2(std::sqrt(di * dk), std::sqrt(s * dj)),
            2 * std::atan2(std::sqrt(di * dj), std::sqrt(s * dk))};
  }
  const double ss = std::sinh(s), si = std::sinh(di), sj = std::sinh(dj), sk = std::sinh(dk);
  return {2 * std::atan2(std::sqrt(sj * sk), std::sqrt(ss * si)),
          2 * std::atan2(std::sqrt(si * sk), std::sqrt(ss * sj)),
          2 * std::atan2(std::sqrt(si * sj), std::sqrt(ss * sk))};
}

std::vector<double> curvature_from_angles(const Triangulation& t,
                                          std::span<const std::array<double, 3>> angles) {
  std::vector<double> k(t.vertex_count(), 2 * kPi);
  for (int f = 0; f < t.face_count(); ++f) {
    const Face& face = t.face(f);
    for (int s = 0; s < 3; ++s) k[face[s]] -= angles[f][s];
  }
  return k;
}

std::vector<int> MetricReport::invalid_faces() const {
  std::vector<int> out;
  for (std::size_t f = 0; f < face_valid.size(); ++f) {
    if (!face_valid[f]) out.push_back(static_cast<int>(f));
  }
  return out;
}

MetricReport metric_report(const WeightedSurface& surface, const RadiusVector& r) {
  const Triangulation& t = surface.triangulation();
  if (static_cast<int>(r.size()) != t.vertex_count()) {
    throw Error(ErrorCode::DimensionMismatch, "radius vector has " + std::to_string(r.size()) +
                                                  " entries for " + std::to_string(t.vertex_count()) +
                                                  " vertices");
  }
  MetricReport report;
  report.edge_lengths.resize(t.edge_count());
  for (int e = 0; e < t.edge_count(); ++e) {
    const Edge& edge = t.edge(e);
    report.edge_lengths[e] = edge_length(surface.background(), r[edge.a], r[edge.b], surface.inversive(e));
  }
  report.face_angles.resize(t.face_count());
  report.face_valid.assign(t.face_count(), 0);
  report.curvature.assign(t.vertex_count(), std::nullopt);
  std::vector<double> k(t.vertex_count(), 2 * kPi);
  std::vector<char> available(t.vertex_count(), 1);
  report.is_packing_metric = true;
  for (int f = 0; f < t.face_count(); ++f) {
    const double li = report.edge_lengths[t.opposite_edge(f, 0)];
    const double lj = report.edge_lengths[t.opposite_edge(f, 1)];
    const double lk = report.edge_lengths[t.opposite_edge(f, 2)];
    const Face& face = t.face(f);
    if (!triangle_valid_direct(li, lj, lk)) {
      report.is_packing_metric = false;
      for (int v : face) available[v] = 0;
      continue;
    }
    report.face_valid[f] = 1;
    const auto angles = inner_angles(surface.background(), li, lj, lk);
    report.face_angles[f] = angles;
    for (int s = 0; s < 3; ++s) k[face[s]] -= angles[s];
  }
  for (int v = 0; v < t.vertex_count(); ++v) {
    if (available[v]) report.curvature[v] = k[v];
  }
  return report;
}

double degeneration_limit(const WeightedSurface& surface, const VertexSubset& j) {
  const Triangulation& t = surface.triangulation();
  for (int e = 0; e < t.edge_count(); ++e) {
    if (surface.inversive(e) > 1.0) {
      const Edge& edge = t.edge(e);
      throw Error(ErrorCode::InversiveOutOfRange,
                  "intersection angle undefined on edge {" + std::to_string(edge.a) + "," +
                      std::to_string(edge.b) + "} with I = " + std::to_string(surface.inversive(e)));
    }
  }
  double value = 2 * kPi * euler_characteristic_of_subcomplex(t, j);
  for (const LinkPair& p : link(t, j)) {
    const int slot = t.slot_of(p.face, p.vertex);
    const double phi = std::acos(surface.inversive(t.opposite_edge(p.face, slot)));
    value -= kPi - phi;
  }
  return value;
}

bool in_concave_regime(const WeightedSurface& surface) {
  for (double value : surface.inversive()) {
    if (!(value > -1.0 && value <= 1.0)) return false;
  }
  for (int f = 0; f < surface.triangulation().face_count(); ++f) {
    if (!gamma_weights(surface, f).nonnegative()) return false;
  }
  return true;
}

LowerBoundCheck curvature_lower_bound_check(const WeightedSurface& surface, const RadiusVector& r,
                                            const VertexSubset& j) {
  if (j.empty()) return {0.0, 0.0, true};
  const double rhs = degeneration_limit(surface, j);
  if (!in_concave_regime(surface)) {
    throw Error(ErrorCode::NotConcaveRegion, "some face has a negative gamma weight");
  }
  const MetricReport report = metric_report(surface, r);
  if (!report.is_packing_metric) {
    throw Error(ErrorCode::NotAPackingMetric,
                "face " + face_label(surface.triangulation(), report.invalid_faces().front()) +
                    " violates the triangle inequality");
  }
  double lhs = 0;
  for (int v : j.members()) lhs += *report.curvature[v];
  return {lhs, rhs, lhs > rhs};
}

}  // namespace ipack
