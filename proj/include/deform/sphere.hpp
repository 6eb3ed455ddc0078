#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "deform/complex.hpp"
#include "deform/layout.hpp"

namespace deform {

using Point3 = Eigen::Vector3d;

/// (x, y, z) -> (x, y) / (1 - z). Throws Error{AtNorthPole}.
Point2 stereo(const Point3& p);
Point3 stereo_inv(const Point2& p);

/// Element of SO(3).
class Rotation {
 public:
  Rotation() = default;
  /// Throws Error{OutOfRange} unless RᵀR = I and det R = 1 within 1e-12.
  static Rotation make(const Eigen::Matrix3d& m);
  static Rotation identity() { return Rotation(Eigen::Matrix3d::Identity()); }
  static Rotation about_axis(const Point3& axis, double angle);

  const Eigen::Matrix3d& matrix() const { return m_; }
  Rotation inverse() const { return Rotation(m_.transpose()); }
  Point3 operator*(const Point3& p) const { return m_ * p; }
  Rotation operator*(const Rotation& r) const { return Rotation(m_ * r.m_); }

 private:
  explicit Rotation(const Eigen::Matrix3d& m) : m_(m) {}
  Eigen::Matrix3d m_ = Eigen::Matrix3d::Identity();
};

/// Point of the shortest SO(3) geodesic from a (t = 0) to b (t = 1). For a
/// half-turn the axis is chosen with its first nonzero coordinate positive.
Rotation interpolate(const Rotation& a, const Rotation& b, double t);

/// Convex polyhedron with vertices on the unit sphere and triangular faces.
/// orientation() is +1 when faces are counterclockwise seen from outside.
class InscribedPolyhedron {
 public:
  static constexpr double kConvexityMargin = 1e-10;

  /// Throws Error{WrongSurfaceKind, MismatchedComplex, InvalidRealization}.
  static InscribedPolyhedron make(TriComplex t, std::vector<Point3> positions);

  InscribedPolyhedron() = default;

  const TriComplex& complex() const { return complex_; }
  const std::vector<Point3>& positions() const { return positions_; }
  const Point3& position(int v) const { return positions_[v]; }
  int orientation() const { return orientation_; }
  /// Unit outward normal of face f.
  Point3 normal(int f) const;

 private:
  TriComplex complex_;
  std::vector<Point3> positions_;
  int orientation_ = 1;
};

/// Convex geodesic triangulation of the sphere (the radial image of an
/// inscribed polyhedron containing the origin).
class SphericalTriangulation {
 public:
  /// Throws Error{WrongSurfaceKind, MismatchedComplex, InvalidRealization}.
  static SphericalTriangulation make(TriComplex t, std::vector<Point3> positions);

  SphericalTriangulation() = default;

  const TriComplex& complex() const { return complex_; }
  const std::vector<Point3>& positions() const { return positions_; }
  const Point3& position(int v) const { return positions_[v]; }
  int orientation() const { return orientation_; }

 private:
  TriComplex complex_;
  std::vector<Point3> positions_;
  int orientation_ = 1;
};

InscribedPolyhedron rotated(const InscribedPolyhedron& p, const Rotation& g);
/// Throws Error{OriginNotInside} when the radial projection is not a triangulation.
SphericalTriangulation radial_projection(const InscribedPolyhedron& p);

/// Angle at a between the great-circle arcs to b and c.
double spherical_corner_angle(const Point3& a, const Point3& b, const Point3& c);
/// Corner angles (face sums exceed π by the spherical area). Throws Error{DegenerateFace}.
std::vector<double> spherical_angles(const SphericalTriangulation& phi);
double spherical_area(const Point3& a, const Point3& b, const Point3& c);

/// b + c + b' + c' - a - a' for the two faces on edge e. Throws Error{BoundaryEdge}.
double spherical_delaunay_defect(const SphericalTriangulation& phi, int e);
/// Same quantity for the edge (p, q) with opposite vertices r and s.
double spherical_delaunay_defect(const Point3& p, const Point3& q, const Point3& r, const Point3& s);
std::pair<double, int> min_spherical_delaunay_defect(const SphericalTriangulation& phi);

/// Signed distance of the vertex opposite edge e (in its second face) below the
/// plane of its first face; positive iff it is strictly outside the first
/// face's circumcircle on the sphere.
double empty_circle_margin(const InscribedPolyhedron& p, int e);
std::pair<double, int> min_empty_circle_margin(const InscribedPolyhedron& p);
/// Smallest distance from a face plane to a vertex not on that face.
double convexity_margin(const InscribedPolyhedron& p);

bool origin_inside(const InscribedPolyhedron& p);
/// Planar criterion for the lift of φ0 to contain the origin: (0,0) inside
/// φ0 and power of (0,0) w.r.t. the containing circumcircle greater than -1.
bool planar_origin_criterion(const PlanarTriangulation& phi0);
bool same_orientation(const InscribedPolyhedron& a, const InscribedPolyhedron& b);

/// The disk T0 and its stereographic image.
struct PlanarChart {
  StarRemoval removal;
  PlanarTriangulation planar;
};

/// π̃: requires φ(v0) at the north pole. Throws Error{VertexNotAtPole, NotDelaunay}.
PlanarChart project_to_plane(const InscribedPolyhedron& p, int v0);
/// η̃: lifts φ0 through stereo_inv and puts the removed vertex at the pole.
/// Throws Error{NotStrictlyDelaunay}.
InscribedPolyhedron lift_to_sphere(const PlanarTriangulation& phi0, const StarRemoval& removal);

struct Normalization {
  Rotation g;
  InscribedPolyhedron normalized;  // g · normalized = input
};

/// Rotates φ(v0) to the north pole and the projected edge from -> to onto the
/// positive x-direction. Throws Error{NotIncident, DegenerateEdge}.
Normalization normalize(const InscribedPolyhedron& p, int v0, int from, int to);

}  // namespace deform
