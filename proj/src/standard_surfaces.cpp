#include "ipack/standard_surfaces.hpp"

#include <vector>

#include "ipack/error.hpp"

namespace ipack::surfaces {

Triangulation tetrahedron() {
  const std::vector<Face> faces{{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
  return Triangulation::build(faces);
}

Triangulation octahedron() {
  // Poles 0 and 5 around the equator 1-2-3-4.
  const std::vector<Face> faces{{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 1},
                                {5, 1, 2}, {5, 2, 3}, {5, 3, 4}, {5, 4, 1}};
  return Triangulation::build(faces);
}

Triangulation three_face_disk() {
  const std::vector<Face> faces{{0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
  return Triangulation::build(faces);
}

Triangulation torus_grid(int n, int m) {
  if (n < 3 || m < 3) throw Error(ErrorCode::NonSimplicial, "torus grid needs n, m >= 3");
  auto id = [&](int i, int j) { return ((i % n + n) % n) * m + ((j % m + m) % m); };
  std::vector<Face> faces;
  faces.reserve(2 * static_cast<std::size_t>(n) * m);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      faces.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      faces.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  }
  return Triangulation::build(faces);
}

WeightedSurface with_constant_inversive(const Triangulation& t, Background background, double inversive) {
  return WeightedSurface(t, background, std::vector<double>(t.edge_count(), inversive));
}

}  // namespace ipack::surfaces
