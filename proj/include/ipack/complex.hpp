#pragma once

// Simplicial data model for weighted triangulated surfaces.
//
// Vertices are 0-based everywhere in this library and in its file formats.
// Labels printed by the CLI are 1-based (vertex v is printed as v + 1).

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

namespace ipack {

using Face = std::array<int, 3>;

struct Edge {
  int a = 0;  // a < b
  int b = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline Edge make_edge(int i, int j) { return i < j ? Edge{i, j} : Edge{j, i}; }

// An immutable finite simplicial triangulation of a connected surface
// (closed or with boundary). Faces are stored with sorted vertex triples;
// orientation is not tracked.
class Triangulation {
 public:
  // Validates and derives edges/boundary. Throws ipack::Error with
  // NonSimplicial, EdgeInTooManyFaces, Disconnected or NonManifoldVertex.
  static Triangulation build(std::span<const Face> faces);

  int vertex_count() const { return vertex_count_; }
  int face_count() const { return static_cast<int>(faces_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  const std::vector<Face>& faces() const { return faces_; }
  const Face& face(int f) const { return faces_[f]; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int e) const { return edges_[e]; }

  // Index of edge {i, j}, or -1 when it is not an edge.
  int edge_index(int i, int j) const;

  // Edge of face f opposite its local vertex slot (0, 1, 2).
  int opposite_edge(int f, int slot) const { return face_edges_[f][slot]; }

  // Number of faces containing edge e (1 or 2).
  int edge_face_count(int e) const { return edge_face_count_[e]; }

  const std::vector<int>& vertex_faces(int v) const { return vertex_faces_[v]; }

  // Slot of vertex v within face f, or -1.
  int slot_of(int f, int v) const;

  bool is_closed() const { return boundary_edges_.empty(); }
  const std::vector<int>& boundary_edges() const { return boundary_edges_; }
  const std::vector<int>& boundary_vertices() const { return boundary_vertices_; }
  bool is_boundary_vertex(int v) const { return on_boundary_[v] != 0; }

  int euler_characteristic() const { return vertex_count_ - edge_count() + face_count(); }

 private:
  int vertex_count_ = 0;
  std::vector<Face> faces_;
  std::vector<Edge> edges_;
  std::vector<std::array<int, 3>> face_edges_;
  std::vector<int> edge_face_count_;
  std::vector<std::vector<int>> vertex_faces_;
  std::vector<int> boundary_edges_;
  std::vector<int> boundary_vertices_;
  std::vector<char> on_boundary_;
  std::unordered_map<std::uint64_t, int> edge_lookup_;
};

enum class Background { Euclidean, Hyperbolic };

// Triangulation + background geometry + inversive distance per edge.
class WeightedSurface {
 public:
  // `inversive` is indexed by edge index; every value must lie in (-1, inf).
  WeightedSurface(Triangulation triangulation, Background background,
                  std::vector<double> inversive);

  // Builds from an edge-keyed map. Every edge must be present exactly once;
  // keys that are not edges are rejected.
  static WeightedSurface from_edge_map(Triangulation triangulation, Background background,
                                       const std::map<Edge, double>& inversive);

  const Triangulation& triangulation() const { return triangulation_; }
  Background background() const { return background_; }
  const std::vector<double>& inversive() const { return inversive_; }
  double inversive(int e) const { return inversive_[e]; }
  double inversive(int i, int j) const;

  // Inversive distance of the edge opposite each slot of face f.
  std::array<double, 3> face_inversive(int f) const;

  int vertex_count() const { return triangulation_.vertex_count(); }

 private:
  Triangulation triangulation_;
  Background background_;
  std::vector<double> inversive_;
};

// Sorted set of distinct vertex indices.
class VertexSubset {
 public:
  VertexSubset() = default;
  // Throws InvalidSubset if any member lies outside [0, vertex_count).
  VertexSubset(std::vector<int> members, int vertex_count);

  static VertexSubset all(int vertex_count);

  const std::vector<int>& members() const { return members_; }
  bool contains(int v) const;
  bool empty() const { return members_.empty(); }
  std::size_t size() const { return members_.size(); }

 private:
  std::vector<int> members_;
};

// chi(F_J) = V_J - E_J + F_J for the full subcomplex spanned by J.
int euler_characteristic_of_subcomplex(const Triangulation& t, const VertexSubset& j);

struct LinkPair {
  int face = 0;
  int vertex = 0;

  friend bool operator==(const LinkPair&, const LinkPair&) = default;
  friend auto operator<=>(const LinkPair&, const LinkPair&) = default;
};

// All (face, v) with v in J and face ∩ J = {v}, ordered by face index.
std::vector<LinkPair> link(const Triangulation& t, const VertexSubset& j);

struct DoubledSurface {
  WeightedSurface surface;
  // Where each vertex of the original disk lands in the first / second copy.
  // Boundary vertices map to the same index in both.
  std::vector<int> first_copy;
  std::vector<int> second_copy;
};

// Glues two copies of a surface with boundary along the identity map of the
// boundary. Original vertex indices are kept for the first copy; interior
// vertices of the second copy are appended in increasing order.
// Throws AlreadyClosed for a closed input.
DoubledSurface double_surface(const WeightedSurface& disk);

}  // namespace ipack
