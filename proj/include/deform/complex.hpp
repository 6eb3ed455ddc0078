#pragma once

#include <array>
#include <optional>
#include <vector>

namespace deform {

enum class SurfaceKind { Disk, Sphere, Torus };

const char* to_string(SurfaceKind kind);

/// Deck translation (in lattice coordinates) carried by a directed torus edge.
using Lift = std::array<int, 2>;

/// Vertex-face incidence; the corner id is 3 * face + slot.
struct CornerIndex {
  int face = -1;
  int slot = -1;

  int id() const { return 3 * face + slot; }
  static CornerIndex from_id(int id) { return {id / 3, id % 3}; }
  friend bool operator==(const CornerIndex&, const CornerIndex&) = default;
};

struct Edge {
  int v0 = -1;
  int v1 = -1;
  Lift lift{0, 0};                   // translation from v0 to v1 (torus only)
  std::array<int, 2> halfedges{-1, -1};  // second entry is -1 on the boundary

  bool is_boundary() const { return halfedges[1] < 0; }
};

/// Oriented simplicial surface T = (V, E, F) for disk, sphere and torus topologies.
///
/// Half-edge h = 3 f + k runs from faces()[f][k] to faces()[f][(k + 1) % 3] and
/// is opposite the corner (f, (k + 2) % 3). Faces are stored with a globally
/// consistent orientation propagated from face 0. Instances are immutable.
class TriComplex {
 public:
  /// Builds the complex and all derived structure. `lifts`, when given, holds
  /// the deck translation of each directed face edge (k -> k+1) and is only
  /// accepted for torus complexes. Throws Error{NonManifold, NonOrientable,
  /// WrongSurfaceKind}.
  static TriComplex build(std::vector<std::array<int, 3>> faces,
                          std::optional<SurfaceKind> kind = std::nullopt,
                          std::vector<std::array<Lift, 3>> lifts = {});

  TriComplex() = default;

  SurfaceKind kind() const { return kind_; }
  int vertex_count() const { return vertex_count_; }
  int face_count() const { return static_cast<int>(faces_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int corner_count() const { return 3 * face_count(); }
  int halfedge_count() const { return 3 * face_count(); }
  int euler_characteristic() const { return vertex_count() - edge_count() + face_count(); }
  bool has_lifts() const { return !lifts_.empty(); }

  const std::vector<std::array<int, 3>>& faces() const { return faces_; }
  const std::array<int, 3>& face(int f) const { return faces_[f]; }
  const std::vector<std::array<Lift, 3>>& lifts() const { return lifts_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int e) const { return edges_[e]; }

  int corner_vertex(CornerIndex c) const { return faces_[c.face][c.slot]; }
  int corner_vertex(int corner_id) const { return corner_vertex(CornerIndex::from_id(corner_id)); }

  int tail(int h) const { return faces_[h / 3][h % 3]; }
  int head(int h) const { return faces_[h / 3][(h % 3 + 1) % 3]; }
  int twin(int h) const { return twin_[h]; }
  int edge_of(int h) const { return halfedge_edge_[h]; }
  Lift halfedge_lift(int h) const;
  CornerIndex opposite_corner(int h) const { return {h / 3, (h % 3 + 2) % 3}; }

  /// Sorted boundary vertices; EdgeInvariant indexes them after the edges.
  const std::vector<int>& boundary_vertices() const { return boundary_vertices_; }
  int boundary_index(int v) const { return boundary_index_[v]; }
  bool is_boundary_vertex(int v) const { return boundary_index_[v] >= 0; }
  std::vector<int> boundary_edges() const;
  std::vector<int> interior_edges() const;
  std::vector<int> interior_vertices() const;

  /// Boundary vertices in the cyclic order of the boundary half-edges (disk only).
  std::vector<int> boundary_cycle() const;

  CornerIndex corner_at(int v, int f) const;
  /// Corners at v in counterclockwise link order; for a boundary vertex the
  /// sequence starts at the face whose outgoing half-edge lies on the boundary.
  const std::vector<CornerIndex>& corners_around(int v) const;
  /// Half-edges with tail v (a loop contributes both of its half-edges).
  std::vector<int> outgoing_halfedges(int v) const;
  int degree(int v) const { return static_cast<int>(outgoing_halfedges(v).size()); }

  /// Edge joining u and v (first match); -1 if absent.
  int find_edge(int u, int v) const;
  /// Half-edge u -> v (first match); -1 if absent.
  int find_halfedge(int u, int v) const;

 private:
  SurfaceKind kind_ = SurfaceKind::Disk;
  int vertex_count_ = 0;
  std::vector<std::array<int, 3>> faces_;
  std::vector<std::array<Lift, 3>> lifts_;
  std::vector<int> twin_;
  std::vector<int> halfedge_edge_;
  std::vector<Edge> edges_;
  std::vector<int> boundary_vertices_;
  std::vector<int> boundary_index_;
  std::vector<std::vector<CornerIndex>> vertex_corners_;
};

/// T0 = T minus the open star of a vertex, with vertex and face maps back to T.
struct StarRemoval {
  TriComplex parent;
  TriComplex complex;
  int removed_vertex = -1;
  std::vector<int> parent_vertex;  // T0 vertex -> T vertex
  std::vector<int> child_vertex;   // T vertex -> T0 vertex, -1 for the removed one
  std::vector<int> parent_face;    // T0 face -> T face
};

/// Throws Error{WrongSurfaceKind} unless T is a sphere complex.
StarRemoval remove_open_star(const TriComplex& sphere, int v0);

/// Inverse of remove_open_star for a disk: cones the boundary cycle to a new
/// vertex (index vertex_count()). Returns the chart relating the two.
StarRemoval cone_over_boundary(const TriComplex& disk);

}  // namespace deform
