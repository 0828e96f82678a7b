#include "ipack/variational.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include <Eigen/SparseCholesky>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "ipack/error.hpp"
#include "ipack/kernels.hpp"

namespace ipack {

namespace {

constexpr double kPi = std::numbers::pi;

// Requested accuracy of each adaptive Gauss-Kronrod panel, relative to the L1
// norm. The estimate is |K15 - G7|, so the returned K15 value is far more
// accurate than this; asking for much less hits roundoff and never terminates.
constexpr double kQuadratureTolerance = 1e-10;
constexpr unsigned kQuadratureMaxDepth = 10;
// Pieces of a path are split until angles vary by at most this much across a piece.
constexpr double kMaxAngleVariation = 0.1;

template <typename Integrand>
double adaptive_gauss_kronrod(Integrand&& f, double a, double b) {
  return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      f, a, b, kQuadratureMaxDepth, kQuadratureTolerance);
}

std::array<double, 3> lerp(const std::array<double, 3>& p, const std::array<double, 3>& q, double t) {
  return {p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1]), p[2] + t * (q[2] - p[2])};
}

double max_angle_change(const std::array<double, 3>& a, const std::array<double, 3>& b) {
  return std::max({std::abs(a[0] - b[0]), std::abs(a[1] - b[1]), std::abs(a[2] - b[2])});
}

// Splits [t0, t1] so that consecutive breakpoints differ in angles by at most
// kMaxAngleVariation.
template <typename AngleFn>
void subdivide(const AngleFn& angles, double t0, double t1, const std::array<double, 3>& a0,
               const std::array<double, 3>& a1, int depth, std::vector<double>& breaks) {
  if (depth < 12 && max_angle_change(a0, a1) > kMaxAngleVariation) {
    const double tm = 0.5 * (t0 + t1);
    const auto am = angles(tm);
    subdivide(angles, t0, tm, a0, am, depth + 1, breaks);
    subdivide(angles, tm, t1, am, a1, depth + 1, breaks);
    return;
  }
  breaks.push_back(t1);
}

// ln(1 - e^x) for x < 0, accurate at both ends.
double log_one_minus_exp(double x) {
  return x < -std::numbers::ln2 ? std::log1p(-std::exp(x)) : std::log(-std::expm1(x));
}

}  // namespace

UCoordinates::UCoordinates(Background background, std::vector<double> values)
    : values_(std::move(values)) {
  for (std::size_t v = 0; v < values_.size(); ++v) {
    if (!std::isfinite(values_[v]) || (background == Background::Hyperbolic && !(values_[v] < 0))) {
      throw Error(ErrorCode::DomainError,
                  "u-coordinate of vertex " + std::to_string(v) + " is outside the chart");
    }
  }
}

double radius_to_u(Background background, double r) {
  if (!(r > 0) || !std::isfinite(r)) {
    throw Error(ErrorCode::NonPositiveRadius, "radius must be finite and positive");
  }
  if (background == Background::Euclidean) return std::log(r);
  // ln tanh(r/2) = ln(1 - e^-r) - ln(1 + e^-r)
  return log_one_minus_exp(-r) - std::log1p(std::exp(-r));
}

double u_to_radius(Background background, double u) {
  if (background == Background::Euclidean) return std::exp(u);
  if (!(u < 0)) throw Error(ErrorCode::DomainError, "hyperbolic u-coordinate must be negative");
  // 2 artanh(e^u) = ln(1 + e^u) - ln(1 - e^u)
  return std::log1p(std::exp(u)) - log_one_minus_exp(u);
}

double radius_u_derivative(Background background, double r) {
  return background == Background::Euclidean ? r : std::sinh(r);
}

UCoordinates to_u(Background background, const RadiusVector& r) {
  std::vector<double> u(r.size());
  for (std::size_t v = 0; v < r.size(); ++v) u[v] = radius_to_u(background, r[static_cast<int>(v)]);
  return UCoordinates(background, std::move(u));
}

RadiusVector from_u(Background background, const UCoordinates& u) {
  std::vector<double> r(u.size());
  for (std::size_t v = 0; v < u.size(); ++v) r[v] = u_to_radius(background, u[static_cast<int>(v)]);
  return RadiusVector(std::move(r));
}

std::array<double, 3> angles_at_u(Background background, const std::array<double, 3>& u,
                                  const std::array<double, 3>& opposite_inversive) {
  const std::array<double, 3> r{u_to_radius(background, u[0]), u_to_radius(background, u[1]),
                                u_to_radius(background, u[2])};
  const auto l = face_lengths(background, r, opposite_inversive);
  return inner_angles(background, l[0], l[1], l[2]);
}

AngleJacobian angle_jacobian(Background background, const std::array<double, 3>& u,
                             const std::array<double, 3>& in) {
  const std::array<double, 3> r{u_to_radius(background, u[0]), u_to_radius(background, u[1]),
                                u_to_radius(background, u[2])};
  const auto l = face_lengths(background, r, in);
  const auto theta = inner_angles(background, l[0], l[1], l[2]);
  const bool euclid = background == Background::Euclidean;

  // Chain rule: d theta / d u = (d theta / d l) (d l / d u).
  auto sine_like = [&](double x) { return euclid ? x : std::sinh(x); };
  auto coth_like = [&](double x) { return euclid ? 1.0 / x : 1.0 / std::tanh(x); };

  Eigen::Matrix3d dtheta_dl;
  for (int a = 0; a < 3; ++a) {
    const double sin_a = std::sin(theta[a]);
    const double cos_a = std::cos(theta[a]);
    for (int b = 0; b < 3; ++b) {
      if (a == b) {
        const int p = (a + 1) % 3, q = (a + 2) % 3;
        dtheta_dl(a, b) = sine_like(l[a]) / (sine_like(l[p]) * sine_like(l[q]) * sin_a);
      } else {
        const int c = 3 - a - b;
        dtheta_dl(a, b) = -(coth_like(l[c]) - cos_a * coth_like(l[b])) / sin_a;
      }
    }
  }

  // l_a joins the vertices in slots b, c (a's opposite edge).
  Eigen::Matrix3d dl_du = Eigen::Matrix3d::Zero();
  for (int a = 0; a < 3; ++a) {
    for (int k = 1; k <= 2; ++k) {
      const int b = (a + k) % 3;
      const int c = 3 - a - b;
      if (euclid) {
        dl_du(a, b) = (r[b] * r[b] + r[b] * r[c] * in[a]) / l[a];
      } else {
        const double sb = std::sinh(r[b]), cb = std::cosh(r[b]);
        const double sc = std::sinh(r[c]), cc = std::cosh(r[c]);
        dl_du(a, b) = sb * (sb * cc + in[a] * cb * sc) / std::sinh(l[a]);
      }
    }
  }
  return dtheta_dl * dl_du;
}

AngleJacobian angle_jacobian(const WeightedSurface& surface, int face, const std::array<double, 3>& u) {
  return angle_jacobian(surface.background(), u, surface.face_inversive(face));
}

std::array<double, 3> energy_base_point(Background background) {
  const double b = radius_to_u(background, 1.0);
  return {b, b, b};
}

double integrate_angle_form(Background background, const std::array<double, 3>& in,
                            std::span<const std::array<double, 3>> path) {
  double total = 0;
  for (std::size_t k = 1; k < path.size(); ++k) {
    const auto& p = path[k - 1];
    const auto& q = path[k];
    const std::array<double, 3> d{q[0] - p[0], q[1] - p[1], q[2] - p[2]};
    auto angles = [&](double t) { return angles_at_u(background, lerp(p, q, t), in); };
    auto integrand = [&](double t) {
      const auto th = angles(t);
      return th[0] * d[0] + th[1] * d[1] + th[2] * d[2];
    };
    std::vector<double> breaks{0.0};
    subdivide(angles, 0.0, 1.0, angles(0.0), angles(1.0), 0, breaks);
    for (std::size_t b = 1; b < breaks.size(); ++b) {
      total += adaptive_gauss_kronrod(integrand, breaks[b - 1], breaks[b]);
    }
  }
  return total;
}

double face_energy(const WeightedSurface& surface, int face, const std::array<double, 3>& u) {
  const std::array<std::array<double, 3>, 2> path{energy_base_point(surface.background()), u};
  return integrate_angle_form(surface.background(), surface.face_inversive(face), path);
}

double total_energy(const WeightedSurface& surface, const UCoordinates& u) {
  return kernels::total_energy(surface, u);
}

std::vector<double> energy_gradient(const WeightedSurface& surface, const UCoordinates& u) {
  auto k = kernels::curvature(surface, from_u(surface.background(), u));
  for (double& value : k) value = 2 * kPi - value;
  return k;
}

// ---------------------------------------------------------------------------
// Prescribed curvature solver

namespace {

// Any J ⊆ A whose summed target does not exceed its degeneration limit
// cannot be realized by a packing metric.
void check_degeneration_bounds(const WeightedSurface& surface, const std::vector<int>& a,
                               const std::map<int, double>& target) {
  const int n = surface.vertex_count();
  auto check = [&](const std::vector<int>& members) {
    const VertexSubset j(members, n);
    double sum = 0;
    for (int v : members) sum += target.at(v);
    const double limit = degeneration_limit(surface, j);
    if (sum <= limit) {
      std::string label;
      for (int v : members) label += (label.empty() ? "" : ",") + std::to_string(v);
      throw Error(ErrorCode::InfeasibleTarget, "summed target " + std::to_string(sum) +
                                                   " over J = {" + label +
                                                   "} does not exceed its degeneration limit " +
                                                   std::to_string(limit));
    }
  };
  constexpr std::size_t kExhaustiveLimit = 14;
  if (a.size() <= kExhaustiveLimit) {
    const std::uint32_t count = 1u << a.size();
    std::vector<int> members;
    for (std::uint32_t mask = 1; mask < count; ++mask) {
      members.clear();
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (mask & (1u << i)) members.push_back(a[i]);
      }
      check(members);
    }
  } else {
    for (int v : a) check({v});
    check(a);
  }
}

}  // namespace

SolveOutcome solve_prescribed_curvature(const WeightedSurface& surface,
                                        const std::map<int, double>& fixed,
                                        const std::map<int, double>& target,
                                        const SolverOptions& options) {
  const Background bg = surface.background();
  const int n = surface.vertex_count();

  std::vector<int> role(n, -1);  // 0 = fixed, 1 = free
  for (const auto& [v, radius] : fixed) {
    if (v < 0 || v >= n) throw Error(ErrorCode::InvalidPartition, "fixed vertex out of range");
    if (!(radius > 0) || !std::isfinite(radius)) {
      throw Error(ErrorCode::NonPositiveRadius, "fixed radius of vertex " + std::to_string(v));
    }
    role[v] = 0;
  }
  for (const auto& [v, k] : target) {
    if (v < 0 || v >= n) throw Error(ErrorCode::InvalidPartition, "target vertex out of range");
    if (role[v] == 0) {
      throw Error(ErrorCode::InvalidPartition,
                  "vertex " + std::to_string(v) + " is both fixed and targeted");
    }
    if (!std::isfinite(k)) throw Error(ErrorCode::InfeasibleTarget, "non-finite target");
    role[v] = 1;
  }
  for (int v = 0; v < n; ++v) {
    if (role[v] < 0) {
      throw Error(ErrorCode::InvalidPartition,
                  "vertex " + std::to_string(v) + " is neither fixed nor targeted");
    }
  }
  if (target.empty()) throw Error(ErrorCode::InvalidPartition, "no free vertices");
  if (bg == Background::Euclidean && fixed.empty()) {
    throw Error(ErrorCode::InvalidPartition, "Euclidean background needs at least one fixed vertex");
  }
  if (!in_concave_regime(surface)) {
    throw Error(ErrorCode::NotConcaveRegion,
                "solver requires I in (-1, 1] and nonnegative gamma weights on every face");
  }
  for (const auto& [v, k] : target) {
    if (k >= 2 * kPi) {
      throw Error(ErrorCode::InfeasibleTarget,
                  "target curvature at vertex " + std::to_string(v) + " is not below 2 pi");
    }
  }

  std::vector<int> free_vertices;
  for (const auto& [v, k] : target) free_vertices.push_back(v);
  check_degeneration_bounds(surface, free_vertices, target);

  const int m = static_cast<int>(free_vertices.size());
  std::vector<double> goal(m);
  for (int i = 0; i < m; ++i) goal[i] = target.at(free_vertices[i]);

  // Initial point.
  std::vector<double> u(n);
  double reference_u = radius_to_u(bg, 1.0);
  if (!fixed.empty()) {
    double sum = 0;
    for (const auto& [v, radius] : fixed) sum += std::log(radius);
    reference_u = radius_to_u(bg, bg == Background::Euclidean
                                      ? std::exp(sum / static_cast<double>(fixed.size()))
                                      : 1.0);
  }
  if (options.initial && static_cast<int>(options.initial->size()) != n) {
    throw Error(ErrorCode::DimensionMismatch, "initial radius vector has wrong length");
  }
  for (int v = 0; v < n; ++v) {
    if (role[v] == 0) {
      u[v] = radius_to_u(bg, fixed.at(v));
    } else {
      u[v] = options.initial ? radius_to_u(bg, (*options.initial)[v]) : reference_u;
    }
  }

  // Gradient of F(x_A) = W - sum_A (2 pi - target) x: target - K on A.
  auto free_gradient = [&](const std::vector<double>& at) {
    const RadiusVector r = from_u(bg, UCoordinates(bg, at));
    const auto k = kernels::curvature(surface, r);
    Eigen::VectorXd g(m);
    for (int i = 0; i < m; ++i) g[i] = goal[i] - k[free_vertices[i]];
    return g;
  };
  auto moved = [&](const std::vector<double>& at, const Eigen::VectorXd& d, double alpha) {
    std::vector<double> out = at;
    for (int i = 0; i < m; ++i) out[free_vertices[i]] += alpha * d[i];
    return out;
  };
  // F(x + alpha d) - F(x): line integral of the gradient along the step.
  // Fixed order, since near the optimum the integrand is mostly cancellation.
  auto energy_gain = [&](const std::vector<double>& at, const Eigen::VectorXd& d, double alpha) {
    auto integrand = [&](double s) { return free_gradient(moved(at, d, s)).dot(d); };
    return boost::math::quadrature::gauss<double, 20>::integrate(integrand, 0.0, alpha);
  };

  std::vector<int> free_slot(n, -1);
  for (int i = 0; i < m; ++i) free_slot[free_vertices[i]] = i;

  SolveOutcome outcome;
  const double damping = std::clamp(options.damping, 1e-6, 1.0);
  for (int iter = 0;; ++iter) {
    const Eigen::VectorXd g = free_gradient(u);
    const double residual = g.cwiseAbs().maxCoeff();
    outcome.iterations = iter;
    outcome.residual = residual;
    if (residual <= options.tolerance) {
      outcome.log.push_back({iter, residual, 0.0});
      outcome.converged = true;
      outcome.radii = from_u(bg, UCoordinates(bg, u));
      return outcome;
    }
    if (iter >= options.max_iterations) {
      throw Error(ErrorCode::MaxIterations, "no convergence after " + std::to_string(iter) +
                                                " iterations (residual " +
                                                std::to_string(residual) + ")");
    }

    // Newton direction from the angle Hessian restricted to A.
    const Eigen::SparseMatrix<double> hessian = kernels::angle_hessian(surface, UCoordinates(bg, u));
    std::vector<Eigen::Triplet<double>> triplets;
    for (int col = 0; col < hessian.outerSize(); ++col) {
      for (Eigen::SparseMatrix<double>::InnerIterator it(hessian, col); it; ++it) {
        const int i = free_slot[it.row()];
        const int j = free_slot[it.col()];
        if (i >= 0 && j >= 0) triplets.emplace_back(i, j, -it.value());
      }
    }
    Eigen::SparseMatrix<double> neg_h(m, m);
    neg_h.setFromTriplets(triplets.begin(), triplets.end());
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(neg_h);
    Eigen::VectorXd d = ldlt.info() == Eigen::Success ? Eigen::VectorXd(ldlt.solve(g)) : g;
    if (!d.allFinite() || d.dot(g) <= 0) d = g;

    double alpha = damping;
    const double largest = d.cwiseAbs().maxCoeff();
    if (alpha * largest > 2.0) alpha = 2.0 / largest;
    if (bg == Background::Hyperbolic) {
      for (int i = 0; i < m; ++i) {
        if (d[i] > 0) alpha = std::min(alpha, -0.5 * u[free_vertices[i]] / d[i]);
      }
    }

    const double initial_alpha = alpha;
    const double slope = g.dot(d);
    bool accepted = false;
    for (int tries = 0; tries < 60 && !accepted; ++tries) {
      try {
        if (energy_gain(u, d, alpha) >= 1e-4 * alpha * slope) {
          accepted = true;
          break;
        }
      } catch (const Error& e) {
        if (e.code() != ErrorCode::DegenerateTriangle && e.code() != ErrorCode::DomainError) throw;
      }
      alpha *= 0.5;
    }
    if (!accepted) {
      // At the resolution floor the gain test is meaningless; take the
      // initial step if it still lowers the residual.
      alpha = initial_alpha;
      const auto trial = moved(u, d, alpha);
      if (free_gradient(trial).cwiseAbs().maxCoeff() >= residual) {
        throw Error(ErrorCode::MaxIterations, "line search stalled at residual " +
                                                  std::to_string(residual));
      }
    }
    u = moved(u, d, alpha);
    outcome.log.push_back({iter, residual, alpha});

    // Runaway radii: the target is not attained by any metric in this slice.
    std::vector<int> collapsing;
    for (int v : free_vertices) {
      const bool too_small = u[v] < reference_u - 60.0;
      const bool too_large = bg == Background::Euclidean ? u[v] > reference_u + 60.0 : u[v] > -1e-12;
      if (too_large) {
        throw Error(ErrorCode::InfeasibleTarget,
                    "radius of vertex " + std::to_string(v) + " diverges to infinity");
      }
      if (too_small) collapsing.push_back(v);
    }
    if (!collapsing.empty()) {
      std::string label;
      for (int v : collapsing) label += (label.empty() ? "" : ",") + std::to_string(v);
      throw Error(ErrorCode::InfeasibleTarget, "radii collapse to zero on J = {" + label + "}");
    }
  }
}

}  // namespace ipack
