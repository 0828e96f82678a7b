#include "ipack/complex.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <sstream>
#include <string>

#include "ipack/error.hpp"

namespace ipack {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonSimplicial: return "NonSimplicial";
    case ErrorCode::EdgeInTooManyFaces: return "EdgeInTooManyFaces";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::NonManifoldVertex: return "NonManifoldVertex";
    case ErrorCode::AlreadyClosed: return "AlreadyClosed";
    case ErrorCode::InvalidInversive: return "InvalidInversive";
    case ErrorCode::MissingInversive: return "MissingInversive";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonPositiveRadius: return "NonPositiveRadius";
    case ErrorCode::InvalidSubset: return "InvalidSubset";
    case ErrorCode::InvalidPartition: return "InvalidPartition";
    case ErrorCode::DegenerateTriangle: return "DegenerateTriangle";
    case ErrorCode::InversiveOutOfRange: return "InversiveOutOfRange";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::NotAPackingMetric: return "NotAPackingMetric";
    case ErrorCode::NotConcaveRegion: return "NotConcaveRegion";
    case ErrorCode::InfeasibleTarget: return "InfeasibleTarget";
    case ErrorCode::MaxIterations: return "MaxIterations";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

namespace {

std::uint64_t edge_key(int i, int j) {
  const Edge e = make_edge(i, j);
  return (static_cast<std::uint64_t>(e.a) << 32) | static_cast<std::uint32_t>(e.b);
}

std::string face_str(const Face& f) {
  std::ostringstream os;
  os << "{" << f[0] << "," << f[1] << "," << f[2] << "}";
  return os.str();
}

// The faces around v must form a single fan: their opposite edges make one
// path (boundary vertex) or one cycle (interior vertex).
bool fan_is_connected(const Triangulation& t, int v) {
  const auto& incident = t.vertex_faces(v);
  std::vector<std::pair<int, int>> link_edges;
  link_edges.reserve(incident.size());
  for (int f : incident) {
    const Face& face = t.face(f);
    int others[2];
    int n = 0;
    for (int w : face) {
      if (w != v) others[n++] = w;
    }
    link_edges.emplace_back(others[0], others[1]);
  }
  std::vector<char> seen(link_edges.size(), 0);
  std::queue<std::size_t> todo;
  todo.push(0);
  seen[0] = 1;
  std::size_t reached = 1;
  while (!todo.empty()) {
    const auto [x, y] = link_edges[todo.front()];
    todo.pop();
    for (std::size_t k = 0; k < link_edges.size(); ++k) {
      if (seen[k]) continue;
      const auto [p, q] = link_edges[k];
      if (p == x || p == y || q == x || q == y) {
        seen[k] = 1;
        ++reached;
        todo.push(k);
      }
    }
  }
  return reached == link_edges.size();
}

}  // namespace

Triangulation Triangulation::build(std::span<const Face> faces) {
  if (faces.empty()) throw Error(ErrorCode::NonSimplicial, "face list is empty");

  Triangulation t;
  t.faces_.reserve(faces.size());
  int max_index = -1;
  for (const Face& raw : faces) {
    Face f = raw;
    for (int v : f) {
      if (v < 0) throw Error(ErrorCode::NonSimplicial, "negative vertex index in face " + face_str(raw));
      max_index = std::max(max_index, v);
    }
    std::sort(f.begin(), f.end());
    if (f[0] == f[1] || f[1] == f[2]) {
      throw Error(ErrorCode::NonSimplicial, "repeated vertex in face " + face_str(raw));
    }
    t.faces_.push_back(f);
  }
  {
    auto sorted = t.faces_;
    std::sort(sorted.begin(), sorted.end());
    auto dup = std::adjacent_find(sorted.begin(), sorted.end());
    if (dup != sorted.end()) throw Error(ErrorCode::NonSimplicial, "duplicate face " + face_str(*dup));
  }

  t.vertex_count_ = max_index + 1;
  t.vertex_faces_.assign(t.vertex_count_, {});
  for (int f = 0; f < t.face_count(); ++f) {
    for (int v : t.faces_[f]) t.vertex_faces_[v].push_back(f);
  }
  for (int v = 0; v < t.vertex_count_; ++v) {
    if (t.vertex_faces_[v].empty()) {
      throw Error(ErrorCode::Disconnected, "vertex " + std::to_string(v) + " lies in no face");
    }
  }

  // Edges in lexicographic order.
  std::vector<Edge> all;
  all.reserve(3 * faces.size());
  for (const Face& f : t.faces_) {
    all.push_back({f[0], f[1]});
    all.push_back({f[0], f[2]});
    all.push_back({f[1], f[2]});
  }
  std::sort(all.begin(), all.end());
  for (std::size_t k = 0; k < all.size();) {
    std::size_t run = k;
    while (run < all.size() && all[run] == all[k]) ++run;
    const int count = static_cast<int>(run - k);
    if (count > 2) {
      throw Error(ErrorCode::EdgeInTooManyFaces, "edge {" + std::to_string(all[k].a) + "," +
                                                     std::to_string(all[k].b) + "} lies in " +
                                                     std::to_string(count) + " faces");
    }
    t.edge_lookup_.emplace(edge_key(all[k].a, all[k].b), static_cast<int>(t.edges_.size()));
    t.edges_.push_back(all[k]);
    t.edge_face_count_.push_back(count);
    k = run;
  }

  t.face_edges_.resize(t.faces_.size());
  for (int f = 0; f < t.face_count(); ++f) {
    const Face& face = t.faces_[f];
    t.face_edges_[f] = {t.edge_index(face[1], face[2]), t.edge_index(face[0], face[2]),
                        t.edge_index(face[0], face[1])};
  }

  // Connectivity of the 1-skeleton.
  {
    std::vector<int> parent(t.vertex_count_);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    int components = t.vertex_count_;
    for (const Edge& e : t.edges_) {
      const int ra = find(e.a);
      const int rb = find(e.b);
      if (ra != rb) {
        parent[ra] = rb;
        --components;
      }
    }
    if (components != 1) {
      throw Error(ErrorCode::Disconnected,
                  "1-skeleton has " + std::to_string(components) + " components");
    }
  }

  t.on_boundary_.assign(t.vertex_count_, 0);
  for (int e = 0; e < t.edge_count(); ++e) {
    if (t.edge_face_count_[e] == 1) {
      t.boundary_edges_.push_back(e);
      t.on_boundary_[t.edges_[e].a] = 1;
      t.on_boundary_[t.edges_[e].b] = 1;
    }
  }
  for (int v = 0; v < t.vertex_count_; ++v) {
    if (t.on_boundary_[v]) t.boundary_vertices_.push_back(v);
    if (!fan_is_connected(t, v)) {
      throw Error(ErrorCode::NonManifoldVertex,
                  "faces around vertex " + std::to_string(v) + " do not form a single fan");
    }
  }
  return t;
}

int Triangulation::edge_index(int i, int j) const {
  auto it = edge_lookup_.find(edge_key(i, j));
  return it == edge_lookup_.end() ? -1 : it->second;
}

int Triangulation::slot_of(int f, int v) const {
  const Face& face = faces_[f];
  for (int s = 0; s < 3; ++s) {
    if (face[s] == v) return s;
  }
  return -1;
}

WeightedSurface::WeightedSurface(Triangulation triangulation, Background background,
                                 std::vector<double> inversive)
    : triangulation_(std::move(triangulation)),
      background_(background),
      inversive_(std::move(inversive)) {
  if (static_cast<int>(inversive_.size()) != triangulation_.edge_count()) {
    throw Error(ErrorCode::MissingInversive,
                "expected " + std::to_string(triangulation_.edge_count()) +
                    " inversive distances, got " + std::to_string(inversive_.size()));
  }
  for (int e = 0; e < triangulation_.edge_count(); ++e) {
    const double value = inversive_[e];
    if (!std::isfinite(value) || !(value > -1.0)) {
      const Edge& edge = triangulation_.edge(e);
      throw Error(ErrorCode::InvalidInversive, "inversive distance on edge {" +
                                                   std::to_string(edge.a) + "," +
                                                   std::to_string(edge.b) + "} must exceed -1");
    }
  }
}

WeightedSurface WeightedSurface::from_edge_map(Triangulation triangulation, Background background,
                                               const std::map<Edge, double>& inversive) {
  std::vector<double> values(triangulation.edge_count(), 0.0);
  std::vector<char> assigned(triangulation.edge_count(), 0);
  for (const auto& [edge, value] : inversive) {
    const int e = triangulation.edge_index(edge.a, edge.b);
    if (e < 0) {
      throw Error(ErrorCode::InvalidInversive, "{" + std::to_string(edge.a) + "," +
                                                   std::to_string(edge.b) + "} is not an edge");
    }
    values[e] = value;
    assigned[e] = 1;
  }
  for (int e = 0; e < triangulation.edge_count(); ++e) {
    if (!assigned[e]) {
      const Edge& edge = triangulation.edge(e);
      throw Error(ErrorCode::MissingInversive, "no inversive distance for edge {" +
                                                   std::to_string(edge.a) + "," +
                                                   std::to_string(edge.b) + "}");
    }
  }
  return WeightedSurface(std::move(triangulation), background, std::move(values));
}

double WeightedSurface::inversive(int i, int j) const {
  const int e = triangulation_.edge_index(i, j);
  if (e < 0) {
    throw Error(ErrorCode::InvalidInversive,
                "{" + std::to_string(i) + "," + std::to_string(j) + "} is not an edge");
  }
  return inversive_[e];
}

std::array<double, 3> WeightedSurface::face_inversive(int f) const {
  return {inversive_[triangulation_.opposite_edge(f, 0)],
          inversive_[triangulation_.opposite_edge(f, 1)],
          inversive_[triangulation_.opposite_edge(f, 2)]};
}

VertexSubset::VertexSubset(std::vector<int> members, int vertex_count) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  if (!members_.empty() && (members_.front() < 0 || members_.back() >= vertex_count)) {
    throw Error(ErrorCode::InvalidSubset, "vertex subset member outside [0, " +
                                              std::to_string(vertex_count) + ")");
  }
}

VertexSubset VertexSubset::all(int vertex_count) {
  std::vector<int> v(vertex_count);
  std::iota(v.begin(), v.end(), 0);
  return VertexSubset(std::move(v), vertex_count);
}

bool VertexSubset::contains(int v) const {
  return std::binary_search(members_.begin(), members_.end(), v);
}

int euler_characteristic_of_subcomplex(const Triangulation& t, const VertexSubset& j) {
  int edges = 0;
  for (const Edge& e : t.edges()) {
    if (j.contains(e.a) && j.contains(e.b)) ++edges;
  }
  int faces = 0;
  for (const Face& f : t.faces()) {
    if (j.contains(f[0]) && j.contains(f[1]) && j.contains(f[2])) ++faces;
  }
  return static_cast<int>(j.size()) - edges + faces;
}

std::vector<LinkPair> link(const Triangulation& t, const VertexSubset& j) {
  std::vector<LinkPair> pairs;
  for (int f = 0; f < t.face_count(); ++f) {
    int hits = 0;
    int hit = -1;
    for (int v : t.face(f)) {
      if (j.contains(v)) {
        ++hits;
        hit = v;
      }
    }
    if (hits == 1) pairs.push_back({f, hit});
  }
  return pairs;
}

DoubledSurface double_surface(const WeightedSurface& disk) {
  const Triangulation& t = disk.triangulation();
  if (t.is_closed()) throw Error(ErrorCode::AlreadyClosed, "surface has no boundary to glue");

  const int n = t.vertex_count();
  std::vector<int> first(n);
  std::iota(first.begin(), first.end(), 0);
  std::vector<int> second(n);
  int next = n;
  for (int v = 0; v < n; ++v) second[v] = t.is_boundary_vertex(v) ? v : next++;

  std::vector<Face> faces = t.faces();
  for (const Face& f : t.faces()) faces.push_back({second[f[0]], second[f[1]], second[f[2]]});
  Triangulation doubled = Triangulation::build(faces);

  std::vector<double> inversive(doubled.edge_count(), 0.0);
  for (int e = 0; e < t.edge_count(); ++e) {
    const Edge& edge = t.edge(e);
    inversive[doubled.edge_index(edge.a, edge.b)] = disk.inversive(e);
    inversive[doubled.edge_index(second[edge.a], second[edge.b])] = disk.inversive(e);
  }
  return DoubledSurface{WeightedSurface(std::move(doubled), disk.background(), std::move(inversive)),
                        std::move(first), std::move(second)};
}

}  // namespace ipack
