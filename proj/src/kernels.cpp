#include "ipack/kernels.hpp"

#include <atomic>
#include <numbers>
#include <string>

#include <omp.h>

#include "ipack/error.hpp"

namespace ipack::kernels {

namespace {

constexpr double kPi = std::numbers::pi;

void check_size(const WeightedSurface& s, std::size_t n) {
  if (static_cast<int>(n) != s.vertex_count()) {
    throw Error(ErrorCode::DimensionMismatch, "per-vertex vector has " + std::to_string(n) +
                                                  " entries for " + std::to_string(s.vertex_count()) +
                                                  " vertices");
  }
}

[[noreturn]] void throw_degenerate(const WeightedSurface& s, int f) {
  const Face& face = s.triangulation().face(f);
  throw Error(ErrorCode::DegenerateTriangle,
              "face " + std::to_string(f) + " {" + std::to_string(face[0]) + "," +
                  std::to_string(face[1]) + "," + std::to_string(face[2]) +
                  "} violates the triangle inequality");
}

// Angles of one face, or false if the face is degenerate.
bool face_angles_at(const WeightedSurface& s, const RadiusVector& r, int f, std::array<double, 3>& out) {
  const auto l = face_lengths(s.background(), r.on_face(s.triangulation().face(f)), s.face_inversive(f));
  if (!triangle_valid_direct(l[0], l[1], l[2])) return false;
  out = inner_angles(s.background(), l[0], l[1], l[2]);
  return true;
}

Eigen::SparseMatrix<double> assemble(const WeightedSurface& s, const std::vector<AngleJacobian>& blocks) {
  const Triangulation& t = s.triangulation();
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(9 * blocks.size());
  for (int f = 0; f < t.face_count(); ++f) {
    const Face& face = t.face(f);
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) triplets.emplace_back(face[a], face[b], blocks[f](a, b));
    }
  }
  Eigen::SparseMatrix<double> h(t.vertex_count(), t.vertex_count());
  h.setFromTriplets(triplets.begin(), triplets.end());
  return h;
}

}  // namespace

namespace serial {

std::vector<std::array<double, 3>> face_angles(const WeightedSurface& s, const RadiusVector& r) {
  check_size(s, r.size());
  std::vector<std::array<double, 3>> angles(s.triangulation().face_count());
  for (int f = 0; f < s.triangulation().face_count(); ++f) {
    if (!face_angles_at(s, r, f, angles[f])) throw_degenerate(s, f);
  }
  return angles;
}

std::vector<double> curvature(const WeightedSurface& s, const RadiusVector& r) {
  const auto angles = face_angles(s, r);
  return curvature_from_angles(s.triangulation(), angles);
}

double total_energy(const WeightedSurface& s, const UCoordinates& u) {
  check_size(s, u.size());
  double sum = 0;
  for (int f = 0; f < s.triangulation().face_count(); ++f) {
    sum += face_energy(s, f, u.on_face(s.triangulation().face(f)));
  }
  return sum;
}

Eigen::SparseMatrix<double> angle_hessian(const WeightedSurface& s, const UCoordinates& u) {
  check_size(s, u.size());
  const Triangulation& t = s.triangulation();
  std::vector<AngleJacobian> blocks(t.face_count());
  for (int f = 0; f < t.face_count(); ++f) blocks[f] = angle_jacobian(s, f, u.on_face(t.face(f)));
  return assemble(s, blocks);
}

}  // namespace serial

namespace parallel {

// Exceptions must not cross an OpenMP region: each loop records the lowest
// failing face and rethrows afterwards.

std::vector<std::array<double, 3>> face_angles(const WeightedSurface& s, const RadiusVector& r) {
  check_size(s, r.size());
  const int faces = s.triangulation().face_count();
  std::vector<std::array<double, 3>> angles(faces);
  int bad = faces;
#pragma omp parallel for if (faces >= kParallelFaceThreshold) reduction(min : bad) schedule(static)
  for (int f = 0; f < faces; ++f) {
    if (!face_angles_at(s, r, f, angles[f])) bad = std::min(bad, f);
  }
  if (bad < faces) throw_degenerate(s, bad);
  return angles;
}

std::vector<double> curvature(const WeightedSurface& s, const RadiusVector& r) {
  const auto angles = face_angles(s, r);
  const Triangulation& t = s.triangulation();
  const int n = t.vertex_count();
  std::vector<double> k(n);
  // Gather per vertex so no two threads write the same entry.
#pragma omp parallel for if (t.face_count() >= kParallelFaceThreshold) schedule(static)
  for (int v = 0; v < n; ++v) {
    double sum = 0;
    for (int f : t.vertex_faces(v)) sum += angles[f][t.slot_of(f, v)];
    k[v] = 2 * kPi - sum;
  }
  return k;
}

double total_energy(const WeightedSurface& s, const UCoordinates& u) {
  check_size(s, u.size());
  const Triangulation& t = s.triangulation();
  const int faces = t.face_count();
  std::vector<double> energies(faces, 0.0);
  std::atomic<int> bad{faces};
#pragma omp parallel for if (faces >= kParallelFaceThreshold) schedule(dynamic, 16)
  for (int f = 0; f < faces; ++f) {
    try {
      energies[f] = face_energy(s, f, u.on_face(t.face(f)));
    } catch (const Error&) {
      int seen = bad.load();
      while (f < seen && !bad.compare_exchange_weak(seen, f)) {
      }
    }
  }
  if (bad.load() < faces) throw_degenerate(s, bad.load());
  // Fixed-order sum keeps the result independent of the thread count.
  double sum = 0;
  for (double e : energies) sum += e;
  return sum;
}

Eigen::SparseMatrix<double> angle_hessian(const WeightedSurface& s, const UCoordinates& u) {
  check_size(s, u.size());
  const Triangulation& t = s.triangulation();
  const int faces = t.face_count();
  std::vector<AngleJacobian> blocks(faces);
  std::atomic<int> bad{faces};
#pragma omp parallel for if (faces >= kParallelFaceThreshold) schedule(static)
  for (int f = 0; f < faces; ++f) {
    try {
      blocks[f] = angle_jacobian(s, f, u.on_face(t.face(f)));
    } catch (const Error&) {
      int seen = bad.load();
      while (f < seen && !bad.compare_exchange_weak(seen, f)) {
      }
    }
  }
  if (bad.load() < faces) throw_degenerate(s, bad.load());
  return assemble(s, blocks);
}

}  // namespace parallel

}  // namespace ipack::kernels
