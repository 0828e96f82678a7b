// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include <Eigen/Eigenvalues>

#include "ipack/comparison.hpp"
#include "ipack/error.hpp"
#include "ipack/standard_surfaces.hpp"
#include "ipack/variational.hpp"
#include "oracles.hpp"

using namespace ipack;
using oracle::kPi;

namespace {

const std::array<Background, 2> kBackgrounds{Background::Euclidean, Background::Hyperbolic};

const char* name(Background bg) { return bg == Background::Euclidean ? "euclidean" : "hyperbolic"; }

struct Outcome {
  bool pass = true;
  std::string detail;
};

template <typename... Args>
std::string format(const char* fmt, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

std::array<double, 3> random_u(std::mt19937_64& rng, Background bg) {
  std::uniform_real_distribution<double> logr(-1.5, 1.0);
  return {radius_to_u(bg, std::exp(logr(rng))), radius_to_u(bg, std::exp(logr(rng))),
          radius_to_u(bg, std::exp(logr(rng)))};
}

// Random inversive distances in (-1, 1] with nonnegative gamma on every face.
WeightedSurface random_concave(const Triangulation& t, Background bg, std::mt19937_64& rng) {
  static constexpr std::array<double, 4> kLower{-0.9, -0.5, -0.2, 0.0};
  for (double lower : kLower) {
    std::uniform_real_distribution<double> dist(lower, 1.0);
    for (int attempt = 0; attempt < 2000; ++attempt) {
      std::vector<double> in(t.edge_count());
      for (double& x : in) x = dist(rng);
      WeightedSurface s(t, bg, in);
      if (in_concave_regime(s)) return s;
    }
  }
  return surfaces::with_constant_inversive(t, bg, 0.5);
}

std::vector<double> random_radii(std::mt19937_64& rng, int n, Background bg) {
  std::uniform_real_distribution<double> logr(bg == Background::Euclidean ? -1.0 : -1.5, 0.8);
  std::vector<double> r(n);
  for (double& x : r) x = std::exp(logr(rng));
  return r;
}

// ---------------------------------------------------------------------------

Outcome ac1_edge_lengths() {
  const ComparisonInstance ce = build_counterexample();
  const Triangulation& t = ce.surface.triangulation();
  // Edges in lexicographic order: {1,2} {1,3} {1,4} {2,3} {2,4} {3,4} (1-based).
  const std::array<double, 6> small{200.0, 200.0, 255.0, 200.0, 397.52358, 356.40567};
  const std::array<double, 6> big{350.0, 330.0, 260.0, 460.0, 606.71245, 518.55569};
  const MetricReport a = metric_report(ce.surface, ce.r);
  const MetricReport b = metric_report(ce.surface, ce.big_r);
  double worst = 0;
  for (int e = 0; e < t.edge_count(); ++e) {
    worst = std::max({worst, std::abs(a.edge_lengths[e] - small[e]), std::abs(b.edge_lengths[e] - big[e])});
  }
  return {worst <= 5e-6, format("max |l - table| = %.2e over 12 lengths", worst)};
}

Outcome ac2_curvatures() {
  const ComparisonInstance ce = build_counterexample();
  const std::array<double, 4> k_r{2.37781, 4.59519, 4.00207, 4.73289};
  const std::array<double, 4> k_big{1.21223, 5.21346, 4.51403, 4.76824};
  const MetricReport a = metric_report(ce.surface, ce.r);
  const MetricReport b = metric_report(ce.surface, ce.big_r);
  double worst = 0;
  for (int v = 0; v < 4; ++v) {
    worst = std::max({worst, std::abs(*a.curvature[v] - k_r[v]), std::abs(*b.curvature[v] - k_big[v])});
  }
  const ComparisonVerdict verdict = check_comparison(ce.surface, ce.partition, ce.r, ce.big_r);
  const bool verdict_ok = verdict.hypotheses_hold() && !verdict.conclusion_ok &&
                          verdict.violations.size() == 1 && verdict.violations[0].vertex == 3;
  return {worst <= 5e-6 && verdict_ok,
          format("max |K - table| = %.2e; hypotheses %s, conclusion violated at vertex %s", worst,
                 verdict.hypotheses_hold() ? "hold" : "FAIL",
                 verdict.violations.empty() ? "none" : std::to_string(verdict.violations[0].vertex + 1).c_str())};
}

Outcome ac3_validity_oracle() {
  std::mt19937_64 rng(3003);
  std::uniform_real_distribution<double> logr(-3.0, 2.0), inv(-0.99, 5.0);
  constexpr int kSamples = 10000;
  int disagreements = 0, invalid = 0;
  for (Background bg : kBackgrounds) {
    for (int i = 0; i < kSamples; ++i) {
      const std::array<double, 3> r{std::exp(logr(rng)), std::exp(logr(rng)), std::exp(logr(rng))};
      std::array<double, 3> in{inv(rng), inv(rng), inv(rng)};
      if (i % 10 == 0) in[i % 3] = 5.0;  // include the closed end of the range
      const std::array<double, 3> l{oracle::length(bg, r[1], r[2], in[0]), oracle::length(bg, r[0], r[2], in[1]),
                                    oracle::length(bg, r[0], r[1], in[2])};
      const bool direct = triangle_valid_direct(l[0], l[1], l[2]);
      invalid += direct ? 0 : 1;
      disagreements += triangle_valid_polynomial(bg, r, in) != direct;
    }
  }
  return {disagreements == 0 && invalid > 0,
          format("%d samples (%d invalid), %d disagreements", 2 * kSamples, invalid, disagreements)};
}

Outcome ac4_jacobian() {
  constexpr int kFaces = 500;
  double sym = 0, null_res = 0, fd = 0, max_eig = -1e300;
  int sign_bad = 0;
  for (Background bg : kBackgrounds) {
    std::mt19937_64 rng(bg == Background::Euclidean ? 4004 : 4005);
    for (int i = 0; i < kFaces; ++i) {
      const auto in = oracle::concave_inversive(rng, -0.999);
      const auto u = random_u(rng, bg);
      const AngleJacobian jac = angle_jacobian(bg, u, in);
      sym = std::max(sym, (jac - jac.transpose()).cwiseAbs().maxCoeff());
      for (int a = 0; a < 3; ++a) {
        sign_bad += !(jac(a, a) < 0);
        for (int b = 0; b < 3; ++b) sign_bad += a != b && !(jac(a, b) > 0);
      }
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(0.5 * (jac + jac.transpose()));
      max_eig = std::max(max_eig, eig.eigenvalues().maxCoeff());
      if (bg == Background::Euclidean) null_res = std::max(null_res, (jac * Eigen::Vector3d::Ones()).cwiseAbs().maxCoeff());
      for (int b = 0; b < 3; ++b) {
        auto plus = u, minus = u;
        plus[b] += 1e-6;
        minus[b] -= 1e-6;
        const auto tp = oracle::face_angles_u(bg, plus, in), tm = oracle::face_angles_u(bg, minus, in);
        for (int a = 0; a < 3; ++a) fd = std::max(fd, std::abs(jac(a, b) - (tp[a] - tm[a]) / 2e-6));
      }
    }
  }
  const bool pass = sym <= 1e-8 && sign_bad == 0 && max_eig <= 1e-9 && null_res <= 1e-8 && fd <= 1e-5;
  return {pass, format("%d faces/background: asym %.1e, sign errors %d, max eig %.1e, null residual %.1e, fd %.1e",
                       kFaces, sym, sign_bad, max_eig, null_res, fd)};
}

Outcome ac5_energy() {
  double grad_k = 0, grad_fd = 0, path = 0, concavity = 0;
  int segments = 0;
  for (Background bg : kBackgrounds) {
    std::mt19937_64 rng(bg == Background::Euclidean ? 5005 : 5006);
    for (int trial = 0; trial < 5; ++trial) {
      const auto s = random_concave(surfaces::octahedron(), bg, rng);
      const auto r = random_radii(rng, 6, bg);
      const UCoordinates u = to_u(bg, RadiusVector(r));
      const auto grad = energy_gradient(s, u);
      const auto k = oracle::curvature(s, r);
      for (int v = 0; v < 6; ++v) {
        grad_k = std::max(grad_k, std::abs(grad[v] - (2 * kPi - k[v])));
        const double d = oracle::central_difference(
            [&](double x) {
              std::vector<double> w(u.values().begin(), u.values().end());
              w[v] = x;
              return total_energy(s, UCoordinates(bg, w));
            },
            u[v], 1e-5);
        grad_fd = std::max(grad_fd, std::abs(d - grad[v]));
      }
    }
    for (int trial = 0; trial < 100; ++trial) {
      const auto in = oracle::concave_inversive(rng, -0.999);
      const auto base = energy_base_point(bg);
      const auto end = random_u(rng, bg);
      const std::array<std::array<double, 3>, 2> direct{base, end};
      const std::array<std::array<double, 3>, 4> detour{base, random_u(rng, bg), random_u(rng, bg), end};
      path = std::max(path, std::abs(integrate_angle_form(bg, in, direct) - integrate_angle_form(bg, in, detour)));
    }
    const auto s = random_concave(surfaces::octahedron(), bg, rng);
    for (int trial = 0; trial < 500; ++trial, ++segments) {
      const UCoordinates p = to_u(bg, RadiusVector(random_radii(rng, 6, bg)));
      const UCoordinates q = to_u(bg, RadiusVector(random_radii(rng, 6, bg)));
      std::vector<double> m(6);
      for (int v = 0; v < 6; ++v) m[v] = 0.5 * (p[v] + q[v]);
      const double gap = total_energy(s, UCoordinates(bg, m)) - 0.5 * (total_energy(s, p) + total_energy(s, q));
      concavity = std::max(concavity, -gap);
    }
  }
  const bool pass = grad_k <= 1e-6 && grad_fd <= 1e-6 && path <= 1e-8 && concavity <= 1e-9;
  return {pass, format("|grad - (2pi - K)| %.1e, fd %.1e, path %.1e, worst midpoint deficit %.1e over %d segments",
                       grad_k, grad_fd, path, std::max(concavity, 0.0), segments)};
}

Outcome ac6_degeneration() {
  bool pass = true;
  std::ostringstream detail;
  for (Background bg : kBackgrounds) {
    const auto s = surfaces::with_constant_inversive(surfaces::tetrahedron(), bg, 0.0);
    const VertexSubset j({0}, 4);
    double previous = std::numeric_limits<double>::infinity(), gap = 0;
    for (double eps : {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6}) {
      const auto check = curvature_lower_bound_check(s, RadiusVector({eps, 1, 1, 1}), j);
      pass = pass && check.holds && check.lhs < previous && std::abs(check.rhs - kPi / 2) < 1e-14;
      previous = check.lhs;
      gap = check.lhs - check.rhs;
    }
    pass = pass && gap > 0 && gap < 1e-3;
    detail << name(bg) << " gap at 1e-6 = " << format("%.2e", gap) << (bg == Background::Euclidean ? "; " : "");
  }
  return {pass, detail.str() + " (monotone, from above)"};
}

// One randomized comparison pair or rigidity round trip.
struct PairResult {
  double margin = 0;        // min over v of R(v) - r(v)
  double rigidity = 0;      // max relative radius error of a round trip
  std::string failure;
};

PairResult run_pair(int index, bool round_trip) {
  std::mt19937_64 rng(7000 + static_cast<unsigned>(index));
  const Background bg = kBackgrounds[index % 2];
  const int shape = (index / 2) % 3;
  WeightedSurface s = [&] {
    if (shape == 0) return random_concave(surfaces::tetrahedron(), bg, rng);
    if (shape == 1) return random_concave(surfaces::octahedron(), bg, rng);
    return double_surface(random_concave(surfaces::three_face_disk(), bg, rng)).surface;
  }();
  const int n = s.vertex_count();

  // Random nontrivial partition; Euclidean needs B nonempty.
  std::vector<int> a_members;
  for (int v = 0; v < n; ++v) {
    if (rng() % 3 != 0) a_members.push_back(v);
  }
  if (a_members.empty()) a_members.push_back(static_cast<int>(rng() % n));
  if (bg == Background::Euclidean && static_cast<int>(a_members.size()) == n) a_members.pop_back();
  const PartitionAB part = PartitionAB::from_a(VertexSubset(a_members, n), n);
  const RadiusVector r(random_radii(rng, n, bg));

  PairResult out;
  try {
    if (round_trip) {
      const auto k = oracle::curvature(s, std::vector<double>(r.values().begin(), r.values().end()));
      std::map<int, double> fixed, target;
      for (int v : part.b().members()) fixed[v] = r[v];
      for (int v : part.a().members()) target[v] = k[v];
      const SolveOutcome solved = solve_prescribed_curvature(s, fixed, target);
      for (int v = 0; v < n; ++v) out.rigidity = std::max(out.rigidity, std::abs(solved.radii[v] - r[v]) / r[v]);
      return out;
    }
    const auto k = oracle::curvature(s, std::vector<double>(r.values().begin(), r.values().end()));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::map<int, double> radius_bumps, curvature_bumps;
    for (int v : part.b().members()) radius_bumps[v] = 0.3 * r[v] * unit(rng);
    for (int v : part.a().members()) curvature_bumps[v] = std::min(0.3, 0.5 * (2 * kPi - k[v])) * unit(rng);
    const RadiusVector big = generate_comparison_pair(s, part, r, radius_bumps, curvature_bumps);
    const ComparisonVerdict verdict = check_comparison(s, part, r, big);
    if (!verdict.hypotheses_hold()) out.failure = "generated pair misses its hypotheses";
    out.margin = *std::min_element(verdict.radius_margins.begin(), verdict.radius_margins.end());
  } catch (const Error& e) {
    out.failure = e.what();
  }
  return out;
}

Outcome ac7_schwarz_pick() {
  constexpr int kPairs = 240;
  constexpr int kRoundTrips = 60;
  std::vector<PairResult> results(kPairs + kRoundTrips);
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < kPairs + kRoundTrips; ++i) results[i] = run_pair(i, i >= kPairs);

  double margin = std::numeric_limits<double>::infinity(), rigidity = 0;
  int failures = 0;
  std::string first_failure;
  for (int i = 0; i < kPairs + kRoundTrips; ++i) {
    const PairResult& p = results[i];
    if (!p.failure.empty()) {
      if (failures++ == 0) first_failure = format(" (instance %d: %s)", i, p.failure.c_str());
      continue;
    }
    if (i < kPairs) margin = std::min(margin, p.margin);
    rigidity = std::max(rigidity, p.rigidity);
  }
  const bool pass = failures == 0 && margin >= -1e-8 && rigidity <= 1e-8;
  return {pass, format("%d pairs: min margin %.2e; %d round trips: max rel error %.1e; %d solver failures",
                       kPairs, margin, kRoundTrips, rigidity, failures) +
                    first_failure};
}

Outcome ac8_doubling() {
  const ComparisonInstance d = doubled_counterexample();
  const Triangulation& t = d.surface.triangulation();
  const ComparisonVerdict v = check_comparison(d.surface, d.partition, d.r, d.big_r);
  std::vector<int> flagged;
  for (const Violation& x : v.violations) flagged.push_back(x.vertex);
  const bool pass = t.is_closed() && t.euler_characteristic() == 2 && v.hypotheses_hold() && !v.conclusion_ok &&
                    flagged == std::vector<int>{3, 4};
  return {pass, format("closed %s, chi = %d, violations at vertices %s", t.is_closed() ? "yes" : "no",
                       t.euler_characteristic(), flagged.size() == 2 ? "4 and 5" : "other")};
}

}  // namespace

int main() {
  struct Criterion {
    const char* id;
    double budget_seconds;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"AC1 counterexample edge lengths", 1, ac1_edge_lengths},
      {"AC2 counterexample curvatures and verdict", 1, ac2_curvatures},
      {"AC3 validity polynomial vs direct test", 10, ac3_validity_oracle},
      {"AC4 angle Jacobian", 30, ac4_jacobian},
      {"AC5 energy", 60, ac5_energy},
      {"AC6 degeneration scan", 5, ac6_degeneration},
      {"AC7 Schwarz-Pick comparison", 300, ac7_schwarz_pick},
      {"AC8 doubling", 1, ac8_doubling},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool pass = o.pass && seconds < c.budget_seconds;
    failed += !pass;
    std::printf("%s  %-42s %8.3f s / %g s  %s\n", pass ? "PASS" : "FAIL", c.id, seconds, c.budget_seconds,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
