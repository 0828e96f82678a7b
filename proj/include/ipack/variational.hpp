#pragma once

// Variational machinery: the u-chart, per-face angle Jacobians, the energy
// whose gradient is 2 pi - K, and a Newton solver for prescribed curvature.
//
// u-chart: u = ln r (Euclidean), u = ln tanh(r / 2) (hyperbolic, so u < 0).

#include <array>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "ipack/geometry.hpp"

namespace ipack {

class UCoordinates {
 public:
  UCoordinates() = default;
  // Throws DomainError for a hyperbolic entry >= 0 or any non-finite entry.
  UCoordinates(Background background, std::vector<double> values);

  std::span<const double> values() const { return values_; }
  double operator[](int v) const { return values_[v]; }
  std::size_t size() const { return values_.size(); }
  std::array<double, 3> on_face(const Face& f) const {
    return {values_[f[0]], values_[f[1]], values_[f[2]]};
  }

 private:
  std::vector<double> values_;
};

double radius_to_u(Background background, double r);
double u_to_radius(Background background, double u);
// d r / d u at a given radius.
double radius_u_derivative(Background background, double r);

UCoordinates to_u(Background background, const RadiusVector& r);
RadiusVector from_u(Background background, const UCoordinates& u);

// J(a, b) = d theta_a / d u_b for one face.
using AngleJacobian = Eigen::Matrix3d;

AngleJacobian angle_jacobian(Background background, const std::array<double, 3>& u,
                             const std::array<double, 3>& opposite_inversive);
AngleJacobian angle_jacobian(const WeightedSurface& surface, int face,
                             const std::array<double, 3>& u);

// Inner angles of a face as a function of its u-coordinates.
std::array<double, 3> angles_at_u(Background background, const std::array<double, 3>& u,
                                  const std::array<double, 3>& opposite_inversive);

// Base point of the energy: r = (1, 1, 1).
std::array<double, 3> energy_base_point(Background background);

// Integral of sum_a theta_a du_a along the polyline `path`.
double integrate_angle_form(Background background, const std::array<double, 3>& opposite_inversive,
                            std::span<const std::array<double, 3>> path);

// W_tau(u): the integral above along the straight segment from the base point.
double face_energy(const WeightedSurface& surface, int face, const std::array<double, 3>& u);

double total_energy(const WeightedSurface& surface, const UCoordinates& u);
// Entry v equals 2 pi - K(v) at from_u(u).
std::vector<double> energy_gradient(const WeightedSurface& surface, const UCoordinates& u);

struct SolverOptions {
  double tolerance = 1e-10;  // max |K - target| over A
  int max_iterations = 100;
  double damping = 1.0;      // initial step fraction of each Newton step, in (0, 1]
  std::optional<RadiusVector> initial;
};

struct IterationRecord {
  int iteration = 0;
  double residual = 0;
  double step = 0;
};

struct SolveOutcome {
  RadiusVector radii;
  int iterations = 0;
  double residual = 0;
  bool converged = false;
  std::vector<IterationRecord> log;
};

// Finds r with r|_B = fixed and K_r|_A = target, where B = keys(fixed) and
// A = keys(target) partition the vertices. Requires the concave regime
// (I in (-1, 1], gamma >= 0), A nonempty, and B nonempty for Euclidean.
// Errors: InvalidPartition, NotConcaveRegion, InfeasibleTarget, MaxIterations.
SolveOutcome solve_prescribed_curvature(const WeightedSurface& surface,
                                        const std::map<int, double>& fixed,
                                        const std::map<int, double>& target,
                                        const SolverOptions& options = {});

}  // namespace ipack
