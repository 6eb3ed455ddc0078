#include "deform/layout.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <string>

#include "deform/error.hpp"

namespace deform {

namespace {

constexpr double kPi = std::numbers::pi;

Point2 rotate(const Point2& v, double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  return {c * v.x() - s * v.y(), s * v.x() + c * v.y()};
}

std::array<double, 3> barycentric(const Point2& a, const Point2& b, const Point2& c, const Point2& p) {
  const double area = orient2d(a, b, c);
  return {orient2d(p, b, c) / area, orient2d(a, p, c) / area, orient2d(a, b, p) / area};
}

}  // namespace

double corner_angle(const Point2& p, const Point2& q, const Point2& r) {
  const Point2 u = q - p, v = r - p;
  return std::atan2(std::abs(u.x() * v.y() - u.y() * v.x()), u.dot(v));
}

double orient2d(const Point2& a, const Point2& b, const Point2& c) {
  return (b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x());
}

PlanarTriangulation PlanarTriangulation::make(TriComplex t, std::vector<Point2> positions) {
  if (t.kind() != SurfaceKind::Disk) throw Error(ErrorCode::WrongSurfaceKind, "planar triangulations need a disk complex");
  if (positions.size() != static_cast<std::size_t>(t.vertex_count()))
    throw Error(ErrorCode::MismatchedComplex, "position count does not match the vertex count");
  for (const Point2& p : positions)
    if (!p.allFinite()) throw Error(ErrorCode::NonFinite, "non-finite vertex position");

  const double diam = diameter(positions);
  int sign = 0;
  for (int f = 0; f < t.face_count(); ++f) {
    const auto& v = t.face(f);
    const double area2 = orient2d(positions[v[0]], positions[v[1]], positions[v[2]]);
    if (std::abs(area2) < 2e-14 * diam * diam) throw Error(ErrorCode::DegenerateFace, "face " + std::to_string(f) + " is degenerate");
    const int s = area2 > 0.0 ? 1 : -1;
    if (sign == 0) sign = s;
    if (s != sign) throw Error(ErrorCode::InvalidRealization, "face " + std::to_string(f) + " is folded over");
  }

  PlanarTriangulation phi;
  phi.complex_ = std::move(t);
  phi.positions_ = std::move(positions);
  phi.orientation_ = sign;
  const AngleStructure theta = angles_of(phi);
  for (int v = 0; v < phi.complex_.vertex_count(); ++v) {
    const double sum = vertex_angle_sum(phi.complex_, theta, v);
    if (phi.complex_.is_boundary_vertex(v)) {
      if (!(sum < kPi)) throw Error(ErrorCode::InvalidRealization, "boundary is not convex at vertex " + std::to_string(v));
    } else if (std::abs(sum - 2.0 * kPi) > 1e-9) {
      throw Error(ErrorCode::InvalidRealization, "faces overlap around vertex " + std::to_string(v));
    }
  }
  return phi;
}

AngleStructure angles_of(const PlanarTriangulation& phi) {
  const TriComplex& t = phi.complex();
  AngleStructure theta{std::vector<double>(t.corner_count())};
  for (int f = 0; f < t.face_count(); ++f) {
    const auto& v = t.face(f);
    for (int k = 0; k < 3; ++k)
      theta[3 * f + k] = corner_angle(phi.position(v[k]), phi.position(v[(k + 1) % 3]), phi.position(v[(k + 2) % 3]));
  }
  return theta;
}

double delaunay_defect(const PlanarTriangulation& phi, int e) {
  const TriComplex& t = phi.complex();
  const Edge& edge = t.edge(e);
  if (edge.is_boundary()) throw Error(ErrorCode::BoundaryEdge, "edge " + std::to_string(e) + " is on the boundary");
  double sum = 0.0;
  for (int h : edge.halfedges) {
    const CornerIndex c = t.opposite_corner(h);
    const auto& v = t.face(c.face);
    sum += corner_angle(phi.position(v[c.slot]), phi.position(v[(c.slot + 1) % 3]), phi.position(v[(c.slot + 2) % 3]));
  }
  return kPi - sum;
}

std::pair<double, int> min_delaunay_defect(const PlanarTriangulation& phi) {
  std::pair<double, int> best{std::numeric_limits<double>::infinity(), -1};
  for (int e : phi.complex().interior_edges()) {
    const double d = delaunay_defect(phi, e);
    if (d < best.first) best = {d, e};
  }
  return best;
}

bool is_strictly_delaunay(const PlanarTriangulation& phi, double margin) {
  return min_delaunay_defect(phi).first > margin;
}

Development develop_positions(const TriComplex& t, const AngleStructure& theta, const Anchor& anchor, int orientation) {
  if (t.kind() != SurfaceKind::Disk) throw Error(ErrorCode::WrongSurfaceKind, "development needs a disk complex");
  if (!in_A0(t, theta)) throw Error(ErrorCode::NotInA0, "angle structure is not in A0(T)");
  if (!(anchor.scale > 0.0) || !anchor.base.allFinite()) throw Error(ErrorCode::OutOfRange, "anchor scale must be positive");
  const double sigma = orientation >= 0 ? 1.0 : -1.0;

  int start = t.find_halfedge(anchor.from, anchor.to);
  bool reversed = false;
  if (start < 0) {
    start = t.find_halfedge(anchor.to, anchor.from);
    reversed = true;
  }
  if (start < 0) throw Error(ErrorCode::NotIncident, "anchor vertices do not span an edge");

  std::vector<std::array<Point2, 3>> local(t.face_count());
  std::vector<char> placed(t.face_count(), 0);
  const auto complete = [&](int f, int k) {
    const Point2& p = local[f][k];
    const Point2& q = local[f][(k + 1) % 3];
    const double ratio = std::sin(theta[3 * f + (k + 1) % 3]) / std::sin(theta[3 * f + (k + 2) % 3]);
    local[f][(k + 2) % 3] = p + ratio * rotate(q - p, sigma * theta[3 * f + k]);
    placed[f] = 1;
  };

  const Point2 tail = anchor.base;
  const Point2 head = anchor.base + Point2(anchor.scale, 0.0);
  const int f0 = start / 3, k0 = start % 3;
  local[f0][k0] = reversed ? head : tail;
  local[f0][(k0 + 1) % 3] = reversed ? tail : head;
  complete(f0, k0);

  // Vertex positions come from the first face in breadth-first order.
  std::vector<int> order;
  order.reserve(t.face_count());
  std::queue<int> queue;
  queue.push(f0);
  while (!queue.empty()) {
    const int f = queue.front();
    queue.pop();
    order.push_back(f);
    for (int k = 0; k < 3; ++k) {
      const int tw = t.twin(3 * f + k);
      if (tw < 0) continue;
      const int g = tw / 3, kg = tw % 3;
      if (placed[g]) continue;
      local[g][kg] = local[f][(k + 1) % 3];
      local[g][(kg + 1) % 3] = local[f][k];
      complete(g, kg);
      queue.push(g);
    }
  }

  Development dev;
  dev.positions.assign(t.vertex_count(), Point2::Constant(std::numeric_limits<double>::quiet_NaN()));
  std::vector<char> seen(t.vertex_count(), 0);
  for (int f : order) {
    for (int k = 0; k < 3; ++k) {
      const int v = t.face(f)[k];
      if (!seen[v]) {
        dev.positions[v] = local[f][k];
        seen[v] = 1;
      } else {
        dev.closure_error = std::max(dev.closure_error, (dev.positions[v] - local[f][k]).norm());
      }
    }
  }
  if (order.size() != static_cast<std::size_t>(t.face_count()))
    throw Error(ErrorCode::NonManifold, "dual graph is disconnected");
  dev.diameter = diameter(dev.positions);
  return dev;
}

std::pair<PlanarTriangulation, double> develop(const TriComplex& t, const AngleStructure& theta, const Anchor& anchor,
                                               int orientation) {
  Development dev = develop_positions(t, theta, anchor, orientation);
  if (!dev.closed())
    throw Error(ErrorCode::InvalidRealization, "development does not close (error " + std::to_string(dev.closure_error) + ")");
  return {PlanarTriangulation::make(t, std::move(dev.positions)), dev.closure_error};
}

bool in_AE(const TriComplex& t, const AngleStructure& theta, double tol) {
  if (t.kind() != SurfaceKind::Disk || !in_A0(t, theta)) return false;
  const Edge& e = t.edge(0);
  const Development dev = develop_positions(t, theta, Anchor{e.v0, e.v1, Point2::Zero(), 1.0});
  return dev.closure_error <= (tol < 0.0 ? dev.tolerance() : tol);
}

double sine_product(const TriComplex& t, const AngleStructure& theta, int v) {
  if (t.is_boundary_vertex(v)) throw Error(ErrorCode::BoundaryVertex, "vertex " + std::to_string(v) + " is on the boundary");
  double product = 1.0;
  for (const CornerIndex& c : t.corners_around(v))
    product *= std::sin(theta[3 * c.face + (c.slot + 1) % 3]) / std::sin(theta[3 * c.face + (c.slot + 2) % 3]);
  return product;
}

double diameter(const std::vector<Point2>& points) {
  double best = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j) best = std::max(best, (points[i] - points[j]).norm());
  return best;
}

double diameter(const PlanarTriangulation& phi) { return diameter(phi.positions()); }

Circle circumcircle(const Point2& a, const Point2& b, const Point2& c, double scale) {
  if (scale < 0.0) scale = std::max({(a - b).norm(), (b - c).norm(), (c - a).norm()});
  const double d = 2.0 * orient2d(a, b, c);
  if (std::abs(d) < 4e-14 * scale * scale || d == 0.0) throw Error(ErrorCode::DegenerateFace, "circumcircle of a degenerate triangle");
  // Perpendicular bisector system relative to a.
  const Point2 u = b - a, v = c - a;
  const double uu = u.squaredNorm(), vv = v.squaredNorm();
  const Point2 center(a.x() + (v.y() * uu - u.y() * vv) / d, a.y() + (u.x() * vv - v.x() * uu) / d);
  return {center, (center - a).norm()};
}

Circle circumcircle(const PlanarTriangulation& phi, int f) {
  const auto& v = phi.complex().face(f);
  return circumcircle(phi.position(v[0]), phi.position(v[1]), phi.position(v[2]), diameter(phi));
}

double power_of_point(const Point2& p, const Circle& c) { return (p - c.center).squaredNorm() - c.radius * c.radius; }

PointLocation locate_point(const PlanarTriangulation& phi, const Point2& p) {
  const TriComplex& t = phi.complex();
  const double eps = 1e-12;
  const auto coords = [&](int f) {
    const auto& v = t.face(f);
    return barycentric(phi.position(v[0]), phi.position(v[1]), phi.position(v[2]), p);
  };
  int f = 0;
  for (int steps = 0; steps < 4 * t.face_count() + 4; ++steps) {
    const auto w = coords(f);
    const int k = static_cast<int>(std::min_element(w.begin(), w.end()) - w.begin());
    if (w[k] >= -eps) return {f, w};
    // Cross the edge opposite the most negative weight: slots k+1 -> k+2.
    const int tw = t.twin(3 * f + (k + 1) % 3);
    if (tw < 0) break;
    f = tw / 3;
  }
  for (int g = 0; g < t.face_count(); ++g) {
    const auto w = coords(g);
    if (*std::min_element(w.begin(), w.end()) >= -eps) return {g, w};
  }
  throw Error(ErrorCode::PointOutside, "point lies outside the triangulated polygon");
}

ScaleBound max_scale(const PlanarTriangulation& phi, const Point2& q) {
  const PointLocation loc = locate_point(phi, q);
  ScaleBound bound;
  bound.face = loc.face;
  bound.power = power_of_point(q, circumcircle(phi, loc.face));
  bound.s_max = 1.0 / std::sqrt(-bound.power);
  bound.d_max = bound.s_max * diameter(phi);
  return bound;
}

double fiber_rescale(double d, double d_max) {
  if (!(d >= 0.0 && d < d_max)) throw Error(ErrorCode::OutOfRange, "fiber_rescale needs 0 <= d < d_max");
  const double top = std::isinf(d_max) ? kPi / 2.0 : std::atan(d_max);
  return std::atan(d) / top;
}

double fiber_rescale_inverse(double r, double d_max) {
  if (!(r >= 0.0 && r < 1.0) || !(d_max > 0.0)) throw Error(ErrorCode::OutOfRange, "fiber_rescale_inverse needs 0 <= r < 1");
  const double top = std::isinf(d_max) ? kPi / 2.0 : std::atan(d_max);
  return std::tan(r * top);
}

PlanarTriangulation anchored(const PlanarTriangulation& phi, int from, int to, const Point2& base) {
  if (phi.complex().find_edge(from, to) < 0) throw Error(ErrorCode::NotIncident, "anchor vertices do not span an edge");
  const Point2 d = phi.position(to) - phi.position(from);
  const double angle = -std::atan2(d.y(), d.x());
  std::vector<Point2> pos(phi.positions().size());
  for (std::size_t v = 0; v < pos.size(); ++v) pos[v] = base + rotate(phi.positions()[v] - phi.position(from), angle);
  pos[to].y() = base.y();
  return PlanarTriangulation::make(phi.complex(), std::move(pos));
}

Anchor anchor_of(const PlanarTriangulation& phi, int from, int to) {
  return Anchor{from, to, phi.position(from), (phi.position(to) - phi.position(from)).norm()};
}

PlanarTriangulation transformed(const PlanarTriangulation& phi, double s, const Point2& offset) {
  std::vector<Point2> pos(phi.positions().size());
  for (std::size_t v = 0; v < pos.size(); ++v) pos[v] = s * phi.positions()[v] + offset;
  return PlanarTriangulation::make(phi.complex(), std::move(pos));
}

}  // namespace deform
