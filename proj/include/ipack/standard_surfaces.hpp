#pragma once

#include "ipack/complex.hpp"

namespace ipack::surfaces {

// Boundary of the 3-simplex: 4 vertices, 6 edges, 4 faces.
Triangulation tetrahedron();
// Octahedral sphere: 6 vertices, 12 edges, 8 faces.
Triangulation octahedron();
// The four-vertex disk {0,1,3},{0,2,3},{1,2,3}.
Triangulation three_face_disk();
// Torus from an n x m grid (n, m >= 3), two triangles per cell.
Triangulation torus_grid(int n, int m);

WeightedSurface with_constant_inversive(const Triangulation& t, Background background,
                                        double inversive);

}  // namespace ipack::surfaces
