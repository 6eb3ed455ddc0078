#pragma once

#include <limits>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "deform/angles.hpp"
#include "deform/complex.hpp"

namespace deform {

using Point2 = Eigen::Vector2d;

/// Straight-line realization of a disk complex as a triangulation of a convex
/// polygon. All faces share one orientation sign (+1 counterclockwise).
class PlanarTriangulation {
 public:
  /// Throws Error{WrongSurfaceKind, DegenerateFace, InvalidRealization}.
  static PlanarTriangulation make(TriComplex t, std::vector<Point2> positions);

  PlanarTriangulation() = default;

  const TriComplex& complex() const { return complex_; }
  const std::vector<Point2>& positions() const { return positions_; }
  const Point2& position(int v) const { return positions_[v]; }
  int orientation() const { return orientation_; }

 private:
  TriComplex complex_;
  std::vector<Point2> positions_;
  int orientation_ = 1;
};

/// Normalization φ(i) = base, φ(j) - φ(i) = (scale, 0).
struct Anchor {
  int from = 0;
  int to = 1;
  Point2 base = Point2::Zero();
  double scale = 1.0;
};

/// Unsigned angle at p between the rays to q and r.
double corner_angle(const Point2& p, const Point2& q, const Point2& r);
/// Twice the signed area of (a, b, c).
double orient2d(const Point2& a, const Point2& b, const Point2& c);

AngleStructure angles_of(const PlanarTriangulation& phi);

/// π - a - a' for an inner edge. Throws Error{BoundaryEdge}.
double delaunay_defect(const PlanarTriangulation& phi, int e);
/// Minimum defect over inner edges (+inf when there are none), with the edge attaining it.
std::pair<double, int> min_delaunay_defect(const PlanarTriangulation& phi);
bool is_strictly_delaunay(const PlanarTriangulation& phi, double margin = 0.0);

struct Development {
  std::vector<Point2> positions;
  double closure_error = 0.0;
  double diameter = 0.0;

  /// Relative closure tolerance 1e-7 · diameter.
  double tolerance() const { return 1e-7 * diameter; }
  bool closed() const { return closure_error <= tolerance(); }
};

/// Lays faces out breadth-first over the dual graph from a face containing the
/// anchor edge, using the law of sines. `orientation` selects counterclockwise
/// (+1) or clockwise (-1) faces. Throws Error{NotInA0, NotIncident}.
Development develop_positions(const TriComplex& t, const AngleStructure& theta, const Anchor& anchor, int orientation = 1);

/// As develop_positions, and realizes the result. Throws
/// Error{InvalidRealization} when the closure error exceeds the tolerance.
std::pair<PlanarTriangulation, double> develop(const TriComplex& t, const AngleStructure& theta, const Anchor& anchor,
                                               int orientation = 1);

/// θ ∈ A_E(T): in A0 and develops with closure error at most `tol`
/// (a negative `tol` selects 1e-7 · diameter).
bool in_AE(const TriComplex& t, const AngleStructure& theta, double tol = -1.0);

/// Π sin(θ_next) / sin(θ_prev) over the corners at an interior vertex; 1 on A_E.
double sine_product(const TriComplex& t, const AngleStructure& theta, int v);

double diameter(const std::vector<Point2>& points);
double diameter(const PlanarTriangulation& phi);

struct Circle {
  Point2 center = Point2::Zero();
  double radius = 0.0;
};

/// Throws Error{DegenerateFace} when the area is below 1e-14 · scale².
Circle circumcircle(const Point2& a, const Point2& b, const Point2& c, double scale = -1.0);
Circle circumcircle(const PlanarTriangulation& phi, int f);

double power_of_point(const Point2& p, const Circle& c);

struct PointLocation {
  int face = -1;
  std::array<double, 3> barycentric{};  // weights of the face slots
};

/// Face containing p by a visibility walk. Throws Error{PointOutside}.
PointLocation locate_point(const PlanarTriangulation& phi, const Point2& p);

struct ScaleBound {
  int face = -1;
  double power = 0.0;    // power of q w.r.t. the containing circumcircle (< 0)
  double s_max = 0.0;    // (-power)^(-1/2)
  double d_max = 0.0;    // s_max · diameter
};

/// Largest diameter for which the lift keeps the origin inside, with q moved to
/// the origin. Throws Error{PointOutside}.
ScaleBound max_scale(const PlanarTriangulation& phi, const Point2& q);

/// arctan(d) / arctan(d_max); d_max = +inf maps to π/2. Throws Error{OutOfRange}.
double fiber_rescale(double d, double d_max = std::numeric_limits<double>::infinity());
/// Inverse of fiber_rescale in d. Throws Error{OutOfRange}.
double fiber_rescale_inverse(double r, double d_max = std::numeric_limits<double>::infinity());

/// Applies the rigid motion that puts φ(from) at `base` and φ(to) - φ(from) on
/// the positive x-axis. Throws Error{NotIncident} if (from, to) is not an edge.
PlanarTriangulation anchored(const PlanarTriangulation& phi, int from, int to, const Point2& base = Point2::Zero());

/// Anchor read off from φ (base φ(from), scale |φ(to) - φ(from)|).
Anchor anchor_of(const PlanarTriangulation& phi, int from, int to);

/// Applies x -> s·x + offset to every vertex.
PlanarTriangulation transformed(const PlanarTriangulation& phi, double s, const Point2& offset);

}  // namespace deform
