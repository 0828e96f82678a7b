#pragma once

#include <array>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "ipack/complex.hpp"

namespace ipack {

// Positive radius per vertex: a candidate circle packing metric.
class RadiusVector {
 public:
  RadiusVector() = default;
  // Throws NonPositiveRadius on any entry that is not finite and > 0.
  explicit RadiusVector(std::vector<double> values);

  std::span<const double> values() const { return values_; }
  double operator[](int v) const { return values_[v]; }
  std::size_t size() const { return values_.size(); }

  std::array<double, 3> on_face(const Face& f) const {
    return {values_[f[0]], values_[f[1]], values_[f[2]]};
  }

 private:
  std::vector<double> values_;
};

// gamma[a] = I_a + I_b I_c where I_a is the inversive distance of the edge
// opposite slot a of the face.
struct GammaWeights {
  std::array<double, 3> values{};

  bool nonnegative() const { return values[0] >= 0 && values[1] >= 0 && values[2] >= 0; }
};

GammaWeights gamma_weights(const std::array<double, 3>& opposite_inversive);
GammaWeights gamma_weights(const WeightedSurface& surface, int face);

// Length of the edge joining two circles of radii ri, rj at inversive distance I.
double edge_length(Background background, double ri, double rj, double inversive);

// Quartic product (l1+l2+l3)(l1+l2-l3)(l1+l3-l2)(l2+l3-l1) > 0. Valid for
// Euclidean and hyperbolic lengths alike.
bool triangle_valid_direct(double li, double lj, double lk);

// Polynomial validity test in radii and inversive distances, without forming
// lengths. `radii` and `opposite_inversive` are slot-aligned.
double triangle_validity_polynomial(Background background, const std::array<double, 3>& radii,
                                    const std::array<double, 3>& opposite_inversive);
bool triangle_valid_polynomial(Background background, const std::array<double, 3>& radii,
                               const std::array<double, 3>& opposite_inversive);
bool triangle_valid_polynomial(const WeightedSurface& surface, int face, const RadiusVector& r);

// Inner angles (theta_i, theta_j, theta_k), theta_a opposite l_a.
// Throws DegenerateTriangle if the lengths fail the triangle inequality.
std::array<double, 3> inner_angles(Background background, double li, double lj, double lk);

// Lengths of the edges opposite each slot of a face.
std::array<double, 3> face_lengths(Background background, const std::array<double, 3>& radii,
                                   const std::array<double, 3>& opposite_inversive);

struct MetricReport {
  std::vector<double> edge_lengths;                              // by edge index
  std::vector<std::optional<std::array<double, 3>>> face_angles;  // by face, slot-aligned
  std::vector<char> face_valid;                                  // by face
  std::vector<std::optional<double>> curvature;                  // by vertex
  bool is_packing_metric = false;

  std::vector<int> invalid_faces() const;
};

// Invalid faces are recorded, not thrown; curvature of a vertex touching an
// invalid face is empty.
MetricReport metric_report(const WeightedSurface& surface, const RadiusVector& r);

// 2 pi chi(F_J) - sum over Lk(J) of (pi - Phi(opposite edge)), Phi = arccos(I).
// Throws InversiveOutOfRange when some I > 1.
double degeneration_limit(const WeightedSurface& surface, const VertexSubset& j);

struct LowerBoundCheck {
  double lhs = 0;  // sum of K_r over J
  double rhs = 0;  // degeneration limit of J
  bool holds = true;
};

// Strict lower bound of summed curvature by the degeneration limit. Empty J
// reports (0, 0, holds = true).
LowerBoundCheck curvature_lower_bound_check(const WeightedSurface& surface, const RadiusVector& r,
                                            const VertexSubset& j);

// True when every I lies in (-1, 1] and every face has nonnegative gamma.
bool in_concave_regime(const WeightedSurface& surface);

// Angle sum of each vertex from slot-aligned face angles.
std::vector<double> curvature_from_angles(const Triangulation& t,
                                          std::span<const std::array<double, 3>> angles);

}  // namespace ipack
