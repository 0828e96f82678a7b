#include <gtest/gtest.h>

#include <random>

#include "ipack/complex.hpp"
#include "ipack/error.hpp"
#include "ipack/standard_surfaces.hpp"
#include "oracles.hpp"

using namespace ipack;

namespace {

ErrorCode build_error(const std::vector<Face>& faces) {
  try {
    Triangulation::build(faces);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorCode::Parse;
}

std::vector<Triangulation> test_complexes() {
  return {surfaces::tetrahedron(), surfaces::octahedron(), surfaces::three_face_disk(),
          surfaces::torus_grid(3, 4), Triangulation::build(std::vector<Face>{{0, 1, 2}})};
}

}  // namespace

TEST(Triangulation, CounterexampleDisk) {
  const Triangulation t = surfaces::three_face_disk();
  EXPECT_EQ(t.vertex_count(), 4);
  EXPECT_EQ(t.edge_count(), 6);
  EXPECT_EQ(t.face_count(), 3);
  EXPECT_FALSE(t.is_closed());
  std::vector<Edge> boundary;
  for (int e : t.boundary_edges()) boundary.push_back(t.edge(e));
  EXPECT_EQ(boundary, (std::vector<Edge>{{0, 1}, {0, 2}, {1, 2}}));
  EXPECT_EQ(t.boundary_vertices(), (std::vector<int>{0, 1, 2}));
  EXPECT_FALSE(t.is_boundary_vertex(3));
}

TEST(Triangulation, TetrahedralSphereIsClosed) {
  const Triangulation t = surfaces::tetrahedron();
  EXPECT_EQ(t.edge_count(), 6);
  EXPECT_TRUE(t.is_closed());
  EXPECT_TRUE(t.boundary_vertices().empty());
  EXPECT_EQ(t.euler_characteristic(), 2);
}

TEST(Triangulation, TorusHasEulerCharacteristicZero) {
  EXPECT_EQ(surfaces::torus_grid(5, 7).euler_characteristic(), 0);
  EXPECT_EQ(surfaces::octahedron().euler_characteristic(), 2);
}

TEST(Triangulation, RejectsMalformedComplexes) {
  EXPECT_EQ(build_error({{0, 1, 2}, {0, 1, 2}}), ErrorCode::NonSimplicial);
  EXPECT_EQ(build_error({{0, 1, 2}, {2, 1, 0}}), ErrorCode::NonSimplicial);
  EXPECT_EQ(build_error({{0, 0, 1}}), ErrorCode::NonSimplicial);
  EXPECT_EQ(build_error({{0, -1, 2}}), ErrorCode::NonSimplicial);
  EXPECT_EQ(build_error({}), ErrorCode::NonSimplicial);
  EXPECT_EQ(build_error({{0, 1, 2}, {0, 1, 3}, {0, 1, 4}}), ErrorCode::EdgeInTooManyFaces);
  EXPECT_EQ(build_error({{0, 1, 2}, {3, 4, 5}}), ErrorCode::Disconnected);
  EXPECT_EQ(build_error({{0, 1, 3}}), ErrorCode::Disconnected);  // vertex 2 unused
  // Two triangles sharing only a vertex: a bowtie, not a surface.
  EXPECT_EQ(build_error({{0, 1, 2}, {0, 3, 4}}), ErrorCode::NonManifoldVertex);
}

TEST(Triangulation, EdgeFaceIncidenceSumsToThreeFaces) {
  for (const Triangulation& t : test_complexes()) {
    int sum = 0;
    for (int e = 0; e < t.edge_count(); ++e) sum += t.edge_face_count(e);
    EXPECT_EQ(sum, 3 * t.face_count());
  }
}

TEST(Triangulation, OppositeEdgesAreOpposite) {
  const Triangulation t = surfaces::octahedron();
  for (int f = 0; f < t.face_count(); ++f) {
    for (int s = 0; s < 3; ++s) {
      const Edge& e = t.edge(t.opposite_edge(f, s));
      EXPECT_NE(e.a, t.face(f)[s]);
      EXPECT_NE(e.b, t.face(f)[s]);
    }
  }
}

TEST(WeightedSurface, RejectsBadInversive) {
  const Triangulation t = surfaces::tetrahedron();
  EXPECT_THROW(WeightedSurface(t, Background::Euclidean, std::vector<double>(6, -1.0)), Error);
  EXPECT_THROW(WeightedSurface(t, Background::Euclidean, std::vector<double>(5, 0.5)), Error);
  std::map<Edge, double> partial{{{0, 1}, 1.0}};
  try {
    WeightedSurface::from_edge_map(t, Background::Euclidean, partial);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MissingInversive);
  }
}

TEST(Subcomplex, EulerCharacteristicExamples) {
  const Triangulation disk = surfaces::three_face_disk();
  EXPECT_EQ(euler_characteristic_of_subcomplex(disk, VertexSubset({3}, 4)), 1);
  EXPECT_EQ(euler_characteristic_of_subcomplex(disk, VertexSubset({0, 1}, 4)), 1);
  EXPECT_EQ(euler_characteristic_of_subcomplex(disk, VertexSubset::all(4)), 1);
  const Triangulation sphere = surfaces::tetrahedron();
  EXPECT_EQ(euler_characteristic_of_subcomplex(sphere, VertexSubset::all(4)), 2);
  EXPECT_EQ(euler_characteristic_of_subcomplex(sphere, VertexSubset()), 0);
}

TEST(Subcomplex, LinkExamples) {
  const Triangulation disk = surfaces::three_face_disk();
  const auto lk = link(disk, VertexSubset({3}, 4));
  ASSERT_EQ(lk.size(), 3u);
  for (const LinkPair& p : lk) EXPECT_EQ(p.vertex, 3);
  EXPECT_TRUE(link(disk, VertexSubset()).empty());
  EXPECT_TRUE(link(surfaces::tetrahedron(), VertexSubset::all(4)).empty());
}

TEST(Subcomplex, AgreesWithBruteForceOnRandomSubsets) {
  std::mt19937_64 rng(7);
  for (const Triangulation& t : test_complexes()) {
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<int> members;
      for (int v = 0; v < t.vertex_count(); ++v) {
        if (rng() % 2) members.push_back(v);
      }
      const VertexSubset j(members, t.vertex_count());
      EXPECT_EQ(euler_characteristic_of_subcomplex(t, j), oracle::euler_characteristic(t.faces(), members));
      std::set<std::pair<std::array<int, 3>, int>> got;
      for (const LinkPair& p : link(t, j)) got.insert({t.face(p.face), p.vertex});
      EXPECT_EQ(got, oracle::link(t.faces(), members));
    }
  }
}

TEST(Doubling, CounterexampleDiskDoublesToSphere) {
  const WeightedSurface disk = WeightedSurface::from_edge_map(
      surfaces::three_face_disk(), Background::Euclidean,
      {{{0, 1}, 1.0}, {{0, 2}, 1.0}, {{1, 2}, 1.0}, {{0, 3}, 1.0}, {{1, 3}, 4.0}, {{2, 3}, 3.0}});
  const DoubledSurface d = double_surface(disk);
  const Triangulation& t = d.surface.triangulation();
  EXPECT_EQ(t.vertex_count(), 5);
  EXPECT_EQ(t.edge_count(), 9);
  EXPECT_EQ(t.face_count(), 6);
  EXPECT_TRUE(t.is_closed());
  EXPECT_EQ(t.euler_characteristic(), 2);
  EXPECT_EQ(d.first_copy, (std::vector<int>{0, 1, 2, 3}));
  EXPECT_EQ(d.second_copy, (std::vector<int>{0, 1, 2, 4}));
  // Interior edges copied edge for edge.
  EXPECT_EQ(d.surface.inversive(1, 4), 4.0);
  EXPECT_EQ(d.surface.inversive(2, 4), 3.0);
  EXPECT_EQ(d.surface.inversive(0, 4), 1.0);
  EXPECT_EQ(d.surface.inversive(1, 3), 4.0);
}

TEST(Doubling, EulerCharacteristicOfDouble) {
  // chi(double) = 2 chi(disk) - chi(boundary circle) = 2.
  std::vector<Face> fan;
  for (int i = 1; i <= 6; ++i) fan.push_back({0, i, i % 6 + 1});
  const Triangulation hexagon = Triangulation::build(fan);
  const DoubledSurface d = double_surface(surfaces::with_constant_inversive(hexagon, Background::Hyperbolic, 0.5));
  EXPECT_EQ(d.surface.vertex_count(), 8);
  EXPECT_EQ(d.surface.triangulation().euler_characteristic(), 2 * hexagon.euler_characteristic() - 0);
  EXPECT_TRUE(d.surface.triangulation().is_closed());
}

TEST(Doubling, ClosedSurfaceIsRejected) {
  try {
    double_surface(surfaces::with_constant_inversive(surfaces::tetrahedron(), Background::Euclidean, 1.0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::AlreadyClosed);
  }
}
