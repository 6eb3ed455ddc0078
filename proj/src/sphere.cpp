#include "deform/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <Eigen/Geometry>

#include "deform/error.hpp"

namespace deform {

namespace {

constexpr double kPi = std::numbers::pi;

void check_unit_positions(const TriComplex& t, const std::vector<Point3>& positions) {
  if (t.kind() != SurfaceKind::Sphere) throw Error(ErrorCode::WrongSurfaceKind, "spherical realizations need a sphere complex");
  if (positions.size() != static_cast<std::size_t>(t.vertex_count()))
    throw Error(ErrorCode::MismatchedComplex, "position count does not match the vertex count");
  for (std::size_t v = 0; v < positions.size(); ++v) {
    if (!positions[v].allFinite()) throw Error(ErrorCode::NonFinite, "non-finite vertex position");
    if (std::abs(positions[v].norm() - 1.0) > 1e-12)
      throw Error(ErrorCode::InvalidRealization, "vertex " + std::to_string(v) + " is not on the unit sphere");
  }
}

Point3 face_cross(const std::vector<Point3>& pos, const std::array<int, 3>& f) {
  return (pos[f[1]] - pos[f[0]]).cross(pos[f[2]] - pos[f[0]]);
}

}  // namespace

Point2 stereo(const Point3& p) {
  if (!(p.z() < 1.0)) throw Error(ErrorCode::AtNorthPole, "stereographic projection of the north pole");
  const double w = 1.0 - p.z();
  return {p.x() / w, p.y() / w};
}

Point3 stereo_inv(const Point2& p) {
  const double r2 = p.squaredNorm();
  return Point3(2.0 * p.x(), 2.0 * p.y(), r2 - 1.0) / (r2 + 1.0);
}

Rotation Rotation::make(const Eigen::Matrix3d& m) {
  if (!m.allFinite() || (m.transpose() * m - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() > 1e-12 ||
      std::abs(m.determinant() - 1.0) > 1e-12)
    throw Error(ErrorCode::OutOfRange, "matrix is not a rotation");
  return Rotation(m);
}

Rotation Rotation::about_axis(const Point3& axis, double angle) {
  return Rotation(Eigen::AngleAxisd(angle, axis.normalized()).toRotationMatrix());
}

Rotation interpolate(const Rotation& a, const Rotation& b, double t) {
  Eigen::AngleAxisd rel((b.matrix() * a.matrix().transpose()).eval());
  Point3 axis = rel.axis();
  if (rel.angle() > kPi - 1e-9) {
    for (int i = 0; i < 3; ++i) {
      if (std::abs(axis(i)) > 1e-12) {
        if (axis(i) < 0.0) axis = -axis;
        break;
      }
    }
  }
  return Rotation::about_axis(axis, t * rel.angle()) * a;
}

InscribedPolyhedron InscribedPolyhedron::make(TriComplex t, std::vector<Point3> positions) {
  check_unit_positions(t, positions);
  int sign = 0;
  for (int f = 0; f < t.face_count(); ++f) {
    const auto& face = t.face(f);
    const Point3 n = face_cross(positions, face);
    if (n.norm() < 1e-14) throw Error(ErrorCode::DegenerateFace, "face " + std::to_string(f) + " is degenerate");
    const Point3 unit = n.normalized();
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (int v = 0; v < t.vertex_count(); ++v) {
      if (v == face[0] || v == face[1] || v == face[2]) continue;
      const double s = unit.dot(positions[v] - positions[face[0]]);
      lo = std::min(lo, s);
      hi = std::max(hi, s);
    }
    int s;
    if (hi < -kConvexityMargin) {
      s = 1;
    } else if (lo > kConvexityMargin) {
      s = -1;
    } else {
      throw Error(ErrorCode::InvalidRealization, "face " + std::to_string(f) + " is not a strict face of the convex hull");
    }
    if (sign == 0) sign = s;
    if (s != sign) throw Error(ErrorCode::InvalidRealization, "face orientations disagree at face " + std::to_string(f));
  }
  InscribedPolyhedron p;
  p.complex_ = std::move(t);
  p.positions_ = std::move(positions);
  p.orientation_ = sign;
  return p;
}

Point3 InscribedPolyhedron::normal(int f) const {
  return orientation_ * face_cross(positions_, complex_.face(f)).normalized();
}

SphericalTriangulation SphericalTriangulation::make(TriComplex t, std::vector<Point3> positions) {
  check_unit_positions(t, positions);
  int sign = 0;
  double area = 0.0;
  for (int f = 0; f < t.face_count(); ++f) {
    const auto& face = t.face(f);
    const Point3 &a = positions[face[0]], &b = positions[face[1]], &c = positions[face[2]];
    const double det = a.dot(b.cross(c));
    if (std::abs(det) < 1e-15) throw Error(ErrorCode::DegenerateFace, "face " + std::to_string(f) + " is degenerate");
    const int s = det > 0.0 ? 1 : -1;
    if (sign == 0) sign = s;
    if (s != sign) throw Error(ErrorCode::InvalidRealization, "face " + std::to_string(f) + " leaves its open hemisphere");
    area += spherical_area(a, b, c);
  }
  if (std::abs(area - 4.0 * kPi) > 1e-8)
    throw Error(ErrorCode::InvalidRealization, "faces do not cover the sphere exactly once");
  SphericalTriangulation phi;
  phi.complex_ = std::move(t);
  phi.positions_ = std::move(positions);
  phi.orientation_ = sign;
  return phi;
}

InscribedPolyhedron rotated(const InscribedPolyhedron& p, const Rotation& g) {
  std::vector<Point3> pos(p.positions().size());
  for (std::size_t v = 0; v < pos.size(); ++v) pos[v] = (g * p.positions()[v]).normalized();
  return InscribedPolyhedron::make(p.complex(), std::move(pos));
}

SphericalTriangulation radial_projection(const InscribedPolyhedron& p) {
  if (!origin_inside(p)) throw Error(ErrorCode::OriginNotInside, "origin is not inside the polyhedron");
  return SphericalTriangulation::make(p.complex(), p.positions());
}

double spherical_corner_angle(const Point3& a, const Point3& b, const Point3& c) {
  const Point3 tb = b - a.dot(b) * a;
  const Point3 tc = c - a.dot(c) * a;
  if (tb.norm() < 1e-15 || tc.norm() < 1e-15) throw Error(ErrorCode::DegenerateFace, "coincident vertices");
  return std::atan2(tb.cross(tc).norm(), tb.dot(tc));
}

std::vector<double> spherical_angles(const SphericalTriangulation& phi) {
  const TriComplex& t = phi.complex();
  std::vector<double> out(t.corner_count());
  for (int f = 0; f < t.face_count(); ++f) {
    const auto& v = t.face(f);
    for (int k = 0; k < 3; ++k)
      out[3 * f + k] = spherical_corner_angle(phi.position(v[k]), phi.position(v[(k + 1) % 3]), phi.position(v[(k + 2) % 3]));
  }
  return out;
}

double spherical_area(const Point3& a, const Point3& b, const Point3& c) {
  const double det = std::abs(a.dot(b.cross(c)));
  return 2.0 * std::atan2(det, 1.0 + a.dot(b) + b.dot(c) + c.dot(a));
}

double spherical_delaunay_defect(const Point3& p, const Point3& q, const Point3& r, const Point3& s) {
  const double a = spherical_corner_angle(r, p, q);
  const double b = spherical_corner_angle(p, q, r);
  const double c = spherical_corner_angle(q, r, p);
  const double a2 = spherical_corner_angle(s, q, p);
  const double b2 = spherical_corner_angle(p, s, q);
  const double c2 = spherical_corner_angle(q, p, s);
  return b + c + b2 + c2 - a - a2;
}

double spherical_delaunay_defect(const SphericalTriangulation& phi, int e) {
  const TriComplex& t = phi.complex();
  const Edge& edge = t.edge(e);
  if (edge.is_boundary()) throw Error(ErrorCode::BoundaryEdge, "edge " + std::to_string(e) + " is on the boundary");
  const int h = edge.halfedges[0];
  const int r = t.corner_vertex(t.opposite_corner(h));
  const int s = t.corner_vertex(t.opposite_corner(edge.halfedges[1]));
  return spherical_delaunay_defect(phi.position(t.tail(h)), phi.position(t.head(h)), phi.position(r), phi.position(s));
}

std::pair<double, int> min_spherical_delaunay_defect(const SphericalTriangulation& phi) {
  std::pair<double, int> best{std::numeric_limits<double>::infinity(), -1};
  for (int e = 0; e < phi.complex().edge_count(); ++e) {
    const double d = spherical_delaunay_defect(phi, e);
    if (d < best.first) best = {d, e};
  }
  return best;
}

double empty_circle_margin(const InscribedPolyhedron& p, int e) {
  const TriComplex& t = p.complex();
  const Edge& edge = t.edge(e);
  if (edge.is_boundary()) throw Error(ErrorCode::BoundaryEdge, "edge " + std::to_string(e) + " is on the boundary");
  const int f = edge.halfedges[0] / 3;
  const int d = t.corner_vertex(t.opposite_corner(edge.halfedges[1]));
  return p.normal(f).dot(p.position(t.face(f)[0]) - p.position(d));
}

std::pair<double, int> min_empty_circle_margin(const InscribedPolyhedron& p) {
  std::pair<double, int> best{std::numeric_limits<double>::infinity(), -1};
  for (int e = 0; e < p.complex().edge_count(); ++e) {
    const double m = empty_circle_margin(p, e);
    if (m < best.first) best = {m, e};
  }
  return best;
}

double convexity_margin(const InscribedPolyhedron& p) {
  const TriComplex& t = p.complex();
  double best = std::numeric_limits<double>::infinity();
  for (int f = 0; f < t.face_count(); ++f) {
    const auto& face = t.face(f);
    const Point3 n = p.normal(f);
    for (int v = 0; v < t.vertex_count(); ++v) {
      if (v == face[0] || v == face[1] || v == face[2]) continue;
      best = std::min(best, n.dot(p.position(face[0]) - p.position(v)));
    }
  }
  return best;
}

bool origin_inside(const InscribedPolyhedron& p) {
  for (int f = 0; f < p.complex().face_count(); ++f)
    if (!(p.normal(f).dot(p.position(p.complex().face(f)[0])) > 0.0)) return false;
  return true;
}

bool planar_origin_criterion(const PlanarTriangulation& phi0) {
  try {
    const PointLocation loc = locate_point(phi0, Point2::Zero());
    return power_of_point(Point2::Zero(), circumcircle(phi0, loc.face)) > -1.0;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::PointOutside) return false;
    throw;
  }
}

bool same_orientation(const InscribedPolyhedron& a, const InscribedPolyhedron& b) {
  if (a.complex().faces() != b.complex().faces())
    throw Error(ErrorCode::MismatchedComplex, "realizations of different complexes");
  return a.orientation() == b.orientation();
}

PlanarChart project_to_plane(const InscribedPolyhedron& p, int v0) {
  if (v0 < 0 || v0 >= p.complex().vertex_count()) throw Error(ErrorCode::NotIncident, "vertex index out of range");
  if ((p.position(v0) - Point3::UnitZ()).norm() > 1e-9)
    throw Error(ErrorCode::VertexNotAtPole, "vertex " + std::to_string(v0) + " is not at the north pole");
  PlanarChart chart;
  chart.removal = remove_open_star(p.complex(), v0);
  std::vector<Point2> pos;
  pos.reserve(chart.removal.parent_vertex.size());
  for (int v : chart.removal.parent_vertex) pos.push_back(stereo(p.position(v)));
  try {
    chart.planar = PlanarTriangulation::make(chart.removal.complex, std::move(pos));
  } catch (const Error& e) {
    throw Error(ErrorCode::NotDelaunay, std::string("projection is not a convex triangulation: ") + e.what());
  }
  const auto [defect, edge] = min_delaunay_defect(chart.planar);
  if (!(defect > 0.0)) throw Error(ErrorCode::NotDelaunay, "projected edge " + std::to_string(edge) + " is not strictly Delaunay");
  return chart;
}

InscribedPolyhedron lift_to_sphere(const PlanarTriangulation& phi0, const StarRemoval& removal) {
  if (phi0.complex().faces() != removal.complex.faces())
    throw Error(ErrorCode::MismatchedComplex, "planar triangulation is not on the chart's disk");
  const auto [defect, edge] = min_delaunay_defect(phi0);
  if (!(defect > 0.0)) throw Error(ErrorCode::NotStrictlyDelaunay, "edge " + std::to_string(edge) + " is not strictly Delaunay");
  std::vector<Point3> pos(removal.parent.vertex_count());
  for (std::size_t i = 0; i < removal.parent_vertex.size(); ++i) pos[removal.parent_vertex[i]] = stereo_inv(phi0.position(static_cast<int>(i)));
  pos[removal.removed_vertex] = Point3::UnitZ();
  try {
    return InscribedPolyhedron::make(removal.parent, std::move(pos));
  } catch (const Error& e) {
    throw Error(ErrorCode::NotStrictlyDelaunay, std::string("lift is not strictly convex: ") + e.what());
  }
}

Normalization normalize(const InscribedPolyhedron& p, int v0, int from, int to) {
  const TriComplex& t = p.complex();
  if (v0 < 0 || v0 >= t.vertex_count() || from == v0 || to == v0 || t.find_edge(from, to) < 0)
    throw Error(ErrorCode::NotIncident, "normalization edge must be an edge of T0");
  const Point3 a = p.position(v0);
  Eigen::Matrix3d r1 = Eigen::Matrix3d::Identity();
  const Point3 axis = a.cross(Point3::UnitZ());
  if (axis.norm() > 1e-15) {
    r1 = Eigen::AngleAxisd(std::atan2(axis.norm(), a.z()), axis.normalized()).toRotationMatrix();
  } else if (a.z() < 0.0) {
    r1 = Eigen::AngleAxisd(kPi, Point3::UnitX()).toRotationMatrix();
  }
  const Point2 w = stereo(r1 * p.position(to)) - stereo(r1 * p.position(from));
  if (w.norm() < 1e-14) throw Error(ErrorCode::DegenerateEdge, "projected edge has zero length");
  const Eigen::Matrix3d rz = Eigen::AngleAxisd(-std::atan2(w.y(), w.x()), Point3::UnitZ()).toRotationMatrix();
  const Eigen::Matrix3d r = rz * r1;
  std::vector<Point3> pos(p.positions().size());
  for (std::size_t v = 0; v < pos.size(); ++v) pos[v] = (r * p.positions()[v]).normalized();
  pos[v0] = Point3::UnitZ();
  return Normalization{Rotation::make(r.transpose()), InscribedPolyhedron::make(t, std::move(pos))};
}

}  // namespace deform
