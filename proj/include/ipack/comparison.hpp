#pragma once

// Discrete Schwarz-Pick comparison: if R|_B >= r|_B and K_R|_A >= K_r|_A,
// does R >= r follow? Includes the four-vertex I >= 1 counterexample and its
// double.

#include <map>
#include <vector>

#include "ipack/complex.hpp"
#include "ipack/geometry.hpp"
#include "ipack/variational.hpp"

namespace ipack {

class PartitionAB {
 public:
  // Throws InvalidPartition unless A and B are disjoint, cover all vertices
  // and A is nonempty.
  PartitionAB(VertexSubset a, VertexSubset b, int vertex_count);
  // B = complement of A.
  static PartitionAB from_a(const VertexSubset& a, int vertex_count);

  const VertexSubset& a() const { return a_; }
  const VertexSubset& b() const { return b_; }

 private:
  VertexSubset a_;
  VertexSubset b_;
};

struct ComparisonTolerance {
  // Hypotheses accept R - r >= -slack and K_R - K_r >= -slack.
  double hypothesis_slack = 1e-9;
  // Conclusion is violated at v only when r(v) - R(v) > this.
  double violation_threshold = 1e-6;
};

struct Violation {
  int vertex = 0;
  double r = 0;
  double big_r = 0;
};

struct ComparisonVerdict {
  bool hyp_radii_ok = false;
  bool hyp_curv_ok = false;
  bool conclusion_ok = false;
  std::vector<Violation> violations;
  std::vector<double> radius_margins;     // R(v) - r(v), every vertex
  std::vector<double> curvature_margins;  // K_R(v) - K_r(v), every vertex

  bool hypotheses_hold() const { return hyp_radii_ok && hyp_curv_ok; }
};

// Throws NotAPackingMetric naming the offending input and face.
ComparisonVerdict check_comparison(const WeightedSurface& surface, const PartitionAB& partition,
                                   const RadiusVector& r, const RadiusVector& big_r,
                                   const ComparisonTolerance& tolerance = {});

struct ComparisonInstance {
  WeightedSurface surface;
  RadiusVector r;
  RadiusVector big_r;
  PartitionAB partition;
};

// Euclidean disk on 4 vertices (0-based): faces {0,1,3},{0,2,3},{1,2,3};
// I(1,3) = 4, I(2,3) = 3, I = 1 elsewhere; A = {3}, B = {0,1,2};
// r = (100, 100, 100, 155), R = (110, 240, 220, 150).
ComparisonInstance build_counterexample();

// Double of the counterexample disk. Both interior copies form A'.
ComparisonInstance doubled_counterexample();

// Solves for R with R|_B = r|_B + radius_bumps and K_R|_A = K_r|_A + curvature_bumps.
// Missing bump entries are zero. Throws NotConcaveRegion outside the regime
// I in (-1, 1], gamma >= 0, and propagates solver errors.
RadiusVector generate_comparison_pair(const WeightedSurface& surface, const PartitionAB& partition,
                                      const RadiusVector& r,
                                      const std::map<int, double>& radius_bumps,
                                      const std::map<int, double>& curvature_bumps,
                                      const SolverOptions& options = {});

}  // namespace ipack
