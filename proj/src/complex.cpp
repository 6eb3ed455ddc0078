#include "deform/complex.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <string>
#include <tuple>

#include "deform/error.hpp"

namespace deform {

namespace {

// Key of an undirected edge. For torus complexes the lift is part of the
// identity, so parallel edges and loops stay distinct.
using EdgeKey = std::tuple<int, int, int, int>;

Lift negate(Lift l) { return {-l[0], -l[1]}; }

// Normalizes a directed edge (a -> b, lift) to its undirected key and reports
// whether the given direction agrees with the key's direction.
std::pair<EdgeKey, bool> undirected_key(int a, int b, Lift l) {
  const auto forward = std::make_tuple(a, b, l[0], l[1]);
  const auto backward = std::make_tuple(b, a, -l[0], -l[1]);
  if (forward <= backward) return {forward, true};
  return {backward, false};
}

struct DisjointSets {
  std::vector<int> parent;
  explicit DisjointSets(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

const char* to_string(SurfaceKind kind) {
  switch (kind) {
    case SurfaceKind::Disk: return "disk";
    case SurfaceKind::Sphere: return "sphere";
    case SurfaceKind::Torus: return "torus";
  }
  return "unknown";
}

TriComplex TriComplex::build(std::vector<std::array<int, 3>> faces, std::optional<SurfaceKind> kind,
                             std::vector<std::array<Lift, 3>> lifts) {
  if (faces.empty()) throw Error(ErrorCode::NonManifold, "empty face list");
  const bool with_lifts = !lifts.empty();
  if (with_lifts && lifts.size() != faces.size())
    throw Error(ErrorCode::NonManifold, "lift list does not match the face list");
  if (with_lifts && kind && *kind != SurfaceKind::Torus)
    throw Error(ErrorCode::WrongSurfaceKind, "lifts are only meaningful on torus complexes");
  if (!with_lifts) lifts.assign(faces.size(), {Lift{0, 0}, Lift{0, 0}, Lift{0, 0}});

  int vertex_count = 0;
  for (std::size_t f = 0; f < faces.size(); ++f) {
    for (int v : faces[f]) {
      if (v < 0) throw Error(ErrorCode::NonManifold, "negative vertex index in face " + std::to_string(f));
      vertex_count = std::max(vertex_count, v + 1);
    }
    const Lift total{lifts[f][0][0] + lifts[f][1][0] + lifts[f][2][0], lifts[f][0][1] + lifts[f][1][1] + lifts[f][2][1]};
    if (total != Lift{0, 0})
      throw Error(ErrorCode::NonManifold, "lifts around face " + std::to_string(f) + " do not sum to zero");
    for (int k = 0; k < 3; ++k) {
      const int a = faces[f][k], b = faces[f][(k + 1) % 3];
      if (a == b && lifts[f][k] == Lift{0, 0})
        throw Error(ErrorCode::NonManifold, "degenerate edge in face " + std::to_string(f));
    }
  }
  std::vector<char> used(vertex_count, 0);
  for (const auto& face : faces)
    for (int v : face) used[v] = 1;
  for (int v = 0; v < vertex_count; ++v)
    if (!used[v]) throw Error(ErrorCode::NonManifold, "vertex " + std::to_string(v) + " is not used by any face");

  // Group face edges by undirected key.
  const int n_faces = static_cast<int>(faces.size());
  std::map<EdgeKey, std::vector<std::pair<int, bool>>> incidences;  // key -> (half-edge, agrees)
  for (int f = 0; f < n_faces; ++f) {
    for (int k = 0; k < 3; ++k) {
      auto [key, agrees] = undirected_key(faces[f][k], faces[f][(k + 1) % 3], lifts[f][k]);
      incidences[key].push_back({3 * f + k, agrees});
    }
  }
  for (const auto& [key, list] : incidences) {
    if (list.size() > 2)
      throw Error(ErrorCode::NonManifold, "edge (" + std::to_string(std::get<0>(key)) + "," +
                                              std::to_string(std::get<1>(key)) + ") is shared by more than two faces");
  }

  // Propagate a coherent orientation from face 0.
  std::vector<int> sign(n_faces, 0);
  sign[0] = 1;
  std::queue<int> queue;
  queue.push(0);
  while (!queue.empty()) {
    const int f = queue.front();
    queue.pop();
    for (int k = 0; k < 3; ++k) {
      auto [key, agrees] = undirected_key(faces[f][k], faces[f][(k + 1) % 3], lifts[f][k]);
      const int here = (agrees ? 1 : -1) * sign[f];
      for (const auto& [h, other_agrees] : incidences[key]) {
        if (h == 3 * f + k) continue;
        const int g = h / 3;
        const int needed = -here * (other_agrees ? 1 : -1);
        if (sign[g] == 0) {
          sign[g] = needed;
          queue.push(g);
        } else if (sign[g] != needed) {
          throw Error(ErrorCode::NonOrientable, "face orientations cannot be made consistent");
        }
      }
    }
  }
  if (std::find(sign.begin(), sign.end(), 0) != sign.end())
    throw Error(ErrorCode::NonManifold, "face list is not connected");
  for (int f = 0; f < n_faces; ++f) {
    if (sign[f] > 0) continue;
    const auto [a, b, c] = faces[f];
    const auto old = lifts[f];
    faces[f] = {a, c, b};
    lifts[f] = {negate(old[2]), negate(old[1]), negate(old[0])};
  }

  TriComplex t;
  t.vertex_count_ = vertex_count;
  t.faces_ = std::move(faces);

  // Twins: directed key lookup.
  std::map<EdgeKey, int> directed;
  for (int h = 0; h < 3 * n_faces; ++h) {
    const int f = h / 3, k = h % 3;
    const auto key = std::make_tuple(t.faces_[f][k], t.faces_[f][(k + 1) % 3], lifts[f][k][0], lifts[f][k][1]);
    if (!directed.emplace(key, h).second)
      throw Error(ErrorCode::NonOrientable, "a directed edge occurs twice after orientation");
  }
  t.twin_.assign(3 * n_faces, -1);
  for (const auto& [key, h] : directed) {
    const auto [a, b, lx, ly] = key;
    auto it = directed.find(std::make_tuple(b, a, -lx, -ly));
    if (it != directed.end()) t.twin_[h] = it->second;
  }

  t.halfedge_edge_.assign(3 * n_faces, -1);
  for (int h = 0; h < 3 * n_faces; ++h) {
    if (t.halfedge_edge_[h] >= 0) continue;
    Edge e;
    e.v0 = t.tail(h);
    e.v1 = t.head(h);
    e.lift = lifts[h / 3][h % 3];
    e.halfedges = {h, t.twin_[h]};
    const int id = static_cast<int>(t.edges_.size());
    t.halfedge_edge_[h] = id;
    if (t.twin_[h] >= 0) t.halfedge_edge_[t.twin_[h]] = id;
    t.edges_.push_back(e);
  }

  // Boundary vertices.
  t.boundary_index_.assign(vertex_count, -1);
  std::vector<char> on_boundary(vertex_count, 0);
  bool has_boundary = false;
  for (const Edge& e : t.edges_) {
    if (!e.is_boundary()) continue;
    has_boundary = true;
    on_boundary[e.v0] = on_boundary[e.v1] = 1;
  }
  for (int v = 0; v < vertex_count; ++v) {
    if (!on_boundary[v]) continue;
    t.boundary_index_[v] = static_cast<int>(t.boundary_vertices_.size());
    t.boundary_vertices_.push_back(v);
  }

  // Vertex links must be a single fan.
  DisjointSets fans(3 * n_faces);
  for (int c = 0; c < 3 * n_faces; ++c) {
    const int f = c / 3, k = c % 3;
    const int incoming = 3 * f + (k + 2) % 3;
    const int out = t.twin_[incoming];
    if (out >= 0) fans.unite(c, out);
  }
  std::vector<int> fan_of(vertex_count, -1);
  for (int c = 0; c < 3 * n_faces; ++c) {
    const int v = t.corner_vertex(c);
    const int root = fans.find(c);
    if (fan_of[v] < 0) fan_of[v] = root;
    else if (fan_of[v] != root)
      throw Error(ErrorCode::NonManifold, "link of vertex " + std::to_string(v) + " is disconnected");
  }

  // Corners in counterclockwise order around each vertex.
  t.vertex_corners_.assign(vertex_count, {});
  std::vector<int> start(vertex_count, -1);
  for (int c = 0; c < 3 * n_faces; ++c) {
    const int v = t.corner_vertex(c);
    if (start[v] < 0) start[v] = c;
    if (t.twin_[c] < 0) start[v] = c;  // outgoing half-edge c lies on the boundary
  }
  for (int v = 0; v < vertex_count; ++v) {
    int c = start[v];
    auto& ring = t.vertex_corners_[v];
    do {
      ring.push_back(CornerIndex::from_id(c));
      const int incoming = 3 * (c / 3) + (c % 3 + 2) % 3;
      c = t.twin_[incoming];
    } while (c >= 0 && c != start[v]);
  }

  const int chi = t.euler_characteristic();
  SurfaceKind inferred;
  if (has_boundary) {
    if (chi != 1) throw Error(ErrorCode::WrongSurfaceKind, "surface with boundary has Euler characteristic " + std::to_string(chi));
    inferred = SurfaceKind::Disk;
  } else if (chi == 2) {
    inferred = SurfaceKind::Sphere;
  } else if (chi == 0) {
    inferred = SurfaceKind::Torus;
  } else {
    throw Error(ErrorCode::WrongSurfaceKind, "closed surface with Euler characteristic " + std::to_string(chi));
  }
  if (kind && *kind != inferred)
    throw Error(ErrorCode::WrongSurfaceKind,
                std::string("declared ") + to_string(*kind) + " but the faces form a " + to_string(inferred));
  if (with_lifts && inferred != SurfaceKind::Torus)
    throw Error(ErrorCode::WrongSurfaceKind, "lifts are only meaningful on torus complexes");
  t.kind_ = inferred;
  if (with_lifts) t.lifts_ = std::move(lifts);

  if (inferred != SurfaceKind::Torus) {
    std::map<std::pair<int, int>, int> seen;
    for (const Edge& e : t.edges_) {
      if (e.v0 == e.v1) throw Error(ErrorCode::NonManifold, "loop edge in a non-torus complex");
      if (++seen[std::minmax(e.v0, e.v1)] > 1)
        throw Error(ErrorCode::NonManifold, "multi-edge in a non-torus complex");
    }
  }
  return t;
}

Lift TriComplex::halfedge_lift(int h) const {
  if (lifts_.empty()) return {0, 0};
  return lifts_[h / 3][h % 3];
}

std::vector<int> TriComplex::boundary_edges() const {
  std::vector<int> out;
  for (int e = 0; e < edge_count(); ++e)
    if (edges_[e].is_boundary()) out.push_back(e);
  return out;
}

std::vector<int> TriComplex::interior_edges() const {
  std::vector<int> out;
  for (int e = 0; e < edge_count(); ++e)
    if (!edges_[e].is_boundary()) out.push_back(e);
  return out;
}

std::vector<int> TriComplex::interior_vertices() const {
  std::vector<int> out;
  for (int v = 0; v < vertex_count_; ++v)
    if (boundary_index_[v] < 0) out.push_back(v);
  return out;
}

std::vector<int> TriComplex::boundary_cycle() const {
  std::vector<int> cycle;
  int first = -1;
  for (int h = 0; h < halfedge_count(); ++h)
    if (twin_[h] < 0) {
      first = h;
      break;
    }
  if (first < 0) return cycle;
  std::vector<int> next_boundary(vertex_count_, -1);
  for (int h = 0; h < halfedge_count(); ++h)
    if (twin_[h] < 0) next_boundary[tail(h)] = h;
  int h = first;
  do {
    cycle.push_back(tail(h));
    h = next_boundary[head(h)];
  } while (h >= 0 && h != first && cycle.size() <= boundary_vertices_.size());
  return cycle;
}

CornerIndex TriComplex::corner_at(int v, int f) const {
  if (f < 0 || f >= face_count()) throw Error(ErrorCode::NotIncident, "face index out of range");
  for (int k = 0; k < 3; ++k)
    if (faces_[f][k] == v) return {f, k};
  throw Error(ErrorCode::NotIncident, "vertex " + std::to_string(v) + " is not in face " + std::to_string(f));
}

const std::vector<CornerIndex>& TriComplex::corners_around(int v) const {
  if (v < 0 || v >= vertex_count_) throw Error(ErrorCode::NotIncident, "vertex index out of range");
  return vertex_corners_[v];
}

std::vector<int> TriComplex::outgoing_halfedges(int v) const {
  std::vector<int> out;
  for (const CornerIndex& c : corners_around(v)) out.push_back(c.id());
  return out;
}

int TriComplex::find_edge(int u, int v) const {
  const int h = find_halfedge(u, v);
  if (h >= 0) return halfedge_edge_[h];
  const int g = find_halfedge(v, u);
  return g >= 0 ? halfedge_edge_[g] : -1;
}

int TriComplex::find_halfedge(int u, int v) const {
  if (u < 0 || u >= vertex_count_) return -1;
  for (const CornerIndex& c : vertex_corners_[u])
    if (head(c.id()) == v) return c.id();
  return -1;
}

StarRemoval remove_open_star(const TriComplex& sphere, int v0) {
  if (sphere.kind() != SurfaceKind::Sphere)
    throw Error(ErrorCode::WrongSurfaceKind, "open-star removal needs a sphere complex");
  if (v0 < 0 || v0 >= sphere.vertex_count()) throw Error(ErrorCode::NotIncident, "vertex index out of range");

  StarRemoval out;
  out.parent = sphere;
  out.removed_vertex = v0;
  out.child_vertex.assign(sphere.vertex_count(), -1);
  for (int v = 0; v < sphere.vertex_count(); ++v) {
    if (v == v0) continue;
    out.child_vertex[v] = static_cast<int>(out.parent_vertex.size());
    out.parent_vertex.push_back(v);
  }
  std::vector<std::array<int, 3>> faces;
  for (int f = 0; f < sphere.face_count(); ++f) {
    const auto& face = sphere.face(f);
    if (face[0] == v0 || face[1] == v0 || face[2] == v0) continue;
    faces.push_back({out.child_vertex[face[0]], out.child_vertex[face[1]], out.child_vertex[face[2]]});
    out.parent_face.push_back(f);
  }
  out.complex = TriComplex::build(std::move(faces), SurfaceKind::Disk);
  return out;
}

StarRemoval cone_over_boundary(const TriComplex& disk) {
  if (disk.kind() != SurfaceKind::Disk) throw Error(ErrorCode::WrongSurfaceKind, "coning needs a disk complex");
  const int apex = disk.vertex_count();
  std::vector<std::array<int, 3>> faces = disk.faces();
  for (int h = 0; h < disk.halfedge_count(); ++h)
    if (disk.twin(h) < 0) faces.push_back({disk.head(h), disk.tail(h), apex});
  StarRemoval out;
  out.parent = TriComplex::build(std::move(faces), SurfaceKind::Sphere);
  out.complex = disk;
  out.removed_vertex = apex;
  out.parent_vertex.resize(apex);
  std::iota(out.parent_vertex.begin(), out.parent_vertex.end(), 0);
  out.child_vertex = out.parent_vertex;
  out.child_vertex.push_back(-1);
  out.parent_face.resize(disk.face_count());
  std::iota(out.parent_face.begin(), out.parent_face.end(), 0);
  return out;
}

}  // namespace deform
