#include "deform/generate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "deform/error.hpp"

namespace deform {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kAttempts = 10000;

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

// Faces of the Delaunay triangulation by the empty-circumcircle test on every triple.
std::vector<std::array<int, 3>> brute_force_delaunay(const std::vector<Point2>& p) {
  const int n = static_cast<int>(p.size());
  std::vector<std::array<int, 3>> faces;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        const double o = orient2d(p[i], p[j], p[k]);
        if (std::abs(o) < 1e-12) continue;
        const Circle c = circumcircle(p[i], p[j], p[k]);
        bool empty = true;
        for (int l = 0; l < n && empty; ++l)
          if (l != i && l != j && l != k && power_of_point(p[l], c) < 0.0) empty = false;
        if (empty) faces.push_back(o > 0.0 ? std::array<int, 3>{i, j, k} : std::array<int, 3>{i, k, j});
      }
  return faces;
}

bool acceptable(const PlanarTriangulation& phi, const DiskOptions& o) {
  if (min_delaunay_defect(phi).first < o.min_defect) return false;
  const AngleStructure theta = angles_of(phi);
  if (*std::min_element(theta.theta.begin(), theta.theta.end()) < o.min_angle) return false;
  for (int v : phi.complex().boundary_vertices())
    if (vertex_angle_sum(phi.complex(), theta, v) > kPi - o.boundary_slack) return false;
  return true;
}

Point3 random_unit(Rng& rng) {
  std::normal_distribution<double> normal;
  Point3 v;
  do {
    v = Point3(normal(rng), normal(rng), normal(rng));
  } while (v.norm() < 1e-8);
  return v.normalized();
}

}  // namespace

PlanarTriangulation random_delaunay_disk(int vertices, Rng& rng, const DiskOptions& options) {
  if (vertices < 3) throw Error(ErrorCode::OutOfRange, "a disk needs at least 3 vertices");
  const int boundary = std::max(3, (vertices + 2) / 3);
  const int interior = vertices - boundary;
  const double spacing = 0.5 / std::sqrt(static_cast<double>(vertices));
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    std::vector<Point2> p;
    // Boundary on a jittered circle, so its hull is all of it.
    for (int k = 0; k < boundary; ++k) {
      const double a = 2.0 * kPi * (k + uniform(rng, -0.2, 0.2)) / boundary;
      const double r = 1.0 + uniform(rng, -0.03, 0.03);
      p.emplace_back(r * std::cos(a), r * std::sin(a));
    }
    for (int k = 0, tries = 0; k < interior && tries < 1000 * vertices; ++tries) {
      const double a = uniform(rng, 0.0, 2.0 * kPi);
      const double r = 0.8 * std::sqrt(uniform(rng, 0.0, 1.0));
      const Point2 q(r * std::cos(a), r * std::sin(a));
      if (std::all_of(p.begin(), p.end(), [&](const Point2& x) { return (x - q).norm() >= spacing; })) {
        p.push_back(q);
        ++k;
      }
    }
    if (static_cast<int>(p.size()) != vertices) continue;
    try {
      PlanarTriangulation phi = PlanarTriangulation::make(TriComplex::build(brute_force_delaunay(p), SurfaceKind::Disk), p);
      if (static_cast<int>(phi.complex().boundary_vertices().size()) == boundary && acceptable(phi, options)) return phi;
    } catch (const Error&) {
    }
  }
  throw Error(ErrorCode::OutOfRange, "could not generate a Delaunay disk with the requested quality");
}

InscribedPolyhedron random_inscribed_polyhedron(int vertices, Rng& rng, const PolyhedronOptions& options) {
  if (vertices < 4) throw Error(ErrorCode::OutOfRange, "a polyhedron needs at least 4 vertices");
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    std::vector<Point3> p;
    for (int tries = 0; static_cast<int>(p.size()) < vertices && tries < 1000 * vertices; ++tries) {
      const Point3 q = random_unit(rng);
      if (q.z() < options.min_z) continue;
      p.push_back(q);
    }
    if (static_cast<int>(p.size()) != vertices) continue;
    std::vector<std::array<int, 3>> faces;
    bool strict = true;
    const int n = vertices;
    for (int i = 0; i < n && strict; ++i)
      for (int j = i + 1; j < n && strict; ++j)
        for (int k = j + 1; k < n && strict; ++k) {
          const Point3 normal = (p[j] - p[i]).cross(p[k] - p[i]).normalized();
          double lo = 1.0, hi = -1.0;
          for (int l = 0; l < n; ++l) {
            if (l == i || l == j || l == k) continue;
            const double s = normal.dot(p[l] - p[i]);
            lo = std::min(lo, s);
            hi = std::max(hi, s);
          }
          if (hi < 0.0) {
            faces.push_back({i, j, k});
          } else if (lo > 0.0) {
            faces.push_back({i, k, j});
          }
          if (hi < 0.0 || lo > 0.0) strict = std::min(std::abs(hi), std::abs(lo)) >= options.min_margin;
        }
    if (!strict) continue;
    try {
      InscribedPolyhedron poly = InscribedPolyhedron::make(TriComplex::build(faces, SurfaceKind::Sphere), p);
      if (convexity_margin(poly) < options.min_margin) continue;
      if (options.require_origin_inside && !origin_inside(poly)) continue;
      return poly;
    } catch (const Error&) {
    }
  }
  throw Error(ErrorCode::OutOfRange, "could not generate an inscribed polyhedron with the requested margin");
}

PlanarTriangulation jitter(const PlanarTriangulation& phi, double amplitude, Rng& rng, double min_defect) {
  for (int attempt = 0; attempt < 60; ++attempt, amplitude *= 0.7) {
    std::vector<Point2> p = phi.positions();
    for (Point2& x : p) x += Point2(uniform(rng, -amplitude, amplitude), uniform(rng, -amplitude, amplitude));
    try {
      PlanarTriangulation out = PlanarTriangulation::make(phi.complex(), std::move(p));
      if (out.orientation() == phi.orientation() && is_strictly_delaunay(out, min_defect)) return out;
    } catch (const Error&) {
    }
  }
  return phi;
}

InscribedPolyhedron jitter(const InscribedPolyhedron& poly, double amplitude, Rng& rng, double min_margin,
                           bool keep_origin_inside) {
  for (int attempt = 0; attempt < 60; ++attempt, amplitude *= 0.7) {
    std::vector<Point3> p = poly.positions();
    for (Point3& x : p) x = (x + amplitude * random_unit(rng) * uniform(rng, 0.0, 1.0)).normalized();
    try {
      InscribedPolyhedron out = InscribedPolyhedron::make(poly.complex(), std::move(p));
      if (out.orientation() == poly.orientation() && convexity_margin(out) >= min_margin &&
          (!keep_origin_inside || origin_inside(out)))
        return out;
    } catch (const Error&) {
    }
  }
  return poly;
}

Rotation random_rotation(Rng& rng) {
  std::normal_distribution<double> normal;
  Eigen::Vector4d q;
  do {
    q = Eigen::Vector4d(normal(rng), normal(rng), normal(rng), normal(rng));
  } while (q.norm() < 1e-8);
  q.normalize();
  const Eigen::Quaterniond quat(q(0), q(1), q(2), q(3));
  return Rotation::make(quat.toRotationMatrix());
}

AngleStructure random_angle_structure(const TriComplex& t, Rng& rng, double floor) {
  AngleStructure theta{std::vector<double>(t.corner_count())};
  const double free = kPi - 3.0 * floor;
  for (int f = 0; f < t.face_count(); ++f) {
    double u = uniform(rng, 0.0, 1.0), v = uniform(rng, 0.0, 1.0);
    if (u > v) std::swap(u, v);
    theta[3 * f] = floor + free * u;
    theta[3 * f + 1] = floor + free * (v - u);
    theta[3 * f + 2] = kPi - theta[3 * f] - theta[3 * f + 1];
  }
  return theta;
}

}  // namespace deform
