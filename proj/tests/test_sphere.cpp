#include <random>

#include <gtest/gtest.h>

#include "deform/generate.hpp"
#include "deform/layout.hpp"
#include "deform/sphere.hpp"
#include "expect_error.hpp"
#include "oracles.hpp"

using namespace deform;
using oracle::pi;

namespace {

using oracle::random_near;
using oracle::random_unit_vector;

std::pair<int, int> edge_away_from(const TriComplex& t, int v0) {
  for (const Edge& e : t.edges())
    if (e.v0 != v0 && e.v1 != v0) return {e.v0, e.v1};
  return {-1, -1};
}

}  // namespace

TEST(Stereo, Values) {
  EXPECT_NEAR((stereo({0, 0, -1}) - Point2(0, 0)).norm(), 0.0, 1e-15);
  EXPECT_NEAR((stereo({1, 0, 0}) - Point2(1, 0)).norm(), 0.0, 1e-15);
  EXPECT_ERROR(stereo({0, 0, 1}), AtNorthPole);
}

TEST(Stereo, RoundTrip) {
  std::mt19937_64 rng(131);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 1000; ++i) {
    const Point2 p(u(rng), u(rng));
    EXPECT_NEAR(stereo_inv(p).norm(), 1.0, 1e-15);
    EXPECT_NEAR((stereo(stereo_inv(p)) - p).norm(), 0.0, 1e-14);
  }
}

TEST(Stereo, PreservesCircles) {
  std::mt19937_64 rng(137);
  std::uniform_real_distribution<double> radius(0.1, 1.4);
  for (int trial = 0; trial < 20; ++trial) {
    const Point3 c = random_unit_vector(rng);
    const double rho = radius(rng);
    if (std::acos(c.z()) <= rho + 0.05) continue;
    const Point3 a = c.unitOrthogonal(), b = c.cross(a);
    std::vector<Point2> image;
    for (int k = 0; k < 200; ++k) {
      const double t = 2 * pi * k / 200;
      image.push_back(stereo(std::cos(rho) * c + std::sin(rho) * (std::cos(t) * a + std::sin(t) * b)));
    }
    const Circle fit = circumcircle(image[0], image[67], image[133]);
    for (const Point2& p : image) EXPECT_NEAR((p - fit.center).norm(), fit.radius, 1e-9 * std::max(1.0, fit.radius));
  }
}

TEST(Stereo, GreatCirclePowerIsMinusOne) {
  std::mt19937_64 rng(139);
  for (int trial = 0; trial < 100; ++trial) {
    const Point3 n = random_unit_vector(rng);
    if (std::abs(n.z()) > 0.95 || std::abs(n.z()) < 0.05) continue;
    const Point3 a = n.unitOrthogonal(), b = n.cross(a);
    const Circle image = circumcircle(stereo(a), stereo(b), stereo(-a));
    EXPECT_NEAR(power_of_point(Point2::Zero(), image), -1.0, 1e-12);
  }
}

TEST(Spherical, OctahedronAnglesAndDefects) {
  const SphericalTriangulation s =
      SphericalTriangulation::make(TriComplex::build(oracle::octahedron()), oracle::octahedron_positions());
  for (double a : spherical_angles(s)) EXPECT_NEAR(a, pi / 2, 1e-14);
  for (int e = 0; e < s.complex().edge_count(); ++e) EXPECT_NEAR(spherical_delaunay_defect(s, e), pi, 1e-14);
}

TEST(Spherical, TinyTriangleIsNearlyFlat) {
  const Point3 a = Point3(0.2, 0.3, 0.9).normalized();
  const Point3 u = a.unitOrthogonal(), v = a.cross(u);
  const Point3 b = (a + 1e-3 * u).normalized(), c = (a + 1e-3 * (0.3 * u + v)).normalized();
  const double excess = spherical_corner_angle(a, b, c) + spherical_corner_angle(b, c, a) + spherical_corner_angle(c, a, b) - pi;
  EXPECT_GT(excess, 0.0);
  EXPECT_LT(excess, 1e-5);
}

TEST(Spherical, GirardMatchesLhuilier) {
  std::mt19937_64 rng(149);
  for (int trial = 0; trial < 200; ++trial) {
    const Point3 c = random_unit_vector(rng);
    const Point3 a = random_near(c, 1.0, rng), b = random_near(c, 1.0, rng), d = random_near(c, 1.0, rng);
    if (std::abs(a.cross(b).dot(d)) < 1e-3) continue;
    const double excess = spherical_corner_angle(a, b, d) + spherical_corner_angle(b, d, a) + spherical_corner_angle(d, a, b) - pi;
    EXPECT_NEAR(excess, oracle::lhuilier_area(a, b, d), 1e-10);
    EXPECT_NEAR(spherical_area(a, b, d), oracle::lhuilier_area(a, b, d), 1e-10);
  }
}

TEST(Spherical, CocircularDefectIsZero) {
  const double z = 0.4, r = std::sqrt(1 - z * z);
  auto on = [&](double t) { return Point3(r * std::cos(t), r * std::sin(t), z); };
  EXPECT_NEAR(spherical_delaunay_defect(on(0.0), on(1.5), on(0.7), on(3.5)), 0.0, 1e-13);
}

TEST(Spherical, PredicatesAgree) {
  std::mt19937_64 rng(151);
  int checked = 0, disagreements = 0;
  oracle::PredicateTriple x;
  const auto defect = [](const Point3& p, const Point3& q, const Point3& r, const Point3& s) {
    return spherical_delaunay_defect(p, q, r, s);
  };
  while (checked < 10000) {
    if (!oracle::random_predicate_triple(rng, defect, x)) continue;
    if (std::abs(x.spherical) < 1e-8 || std::abs(x.planar) < 1e-8 || std::abs(x.height) < 1e-8) continue;
    ++checked;
    disagreements += (x.spherical > 0) != (x.planar > 0) || (x.planar > 0) != (x.height > 0);
  }
  EXPECT_EQ(disagreements, 0);
}

TEST(Projection, Octahedron) {
  const InscribedPolyhedron p = InscribedPolyhedron::make(TriComplex::build(oracle::octahedron()), oracle::octahedron_positions());
  const PlanarChart chart = project_to_plane(p, 4);
  const PlanarTriangulation& phi = chart.planar;
  EXPECT_EQ(phi.complex().boundary_vertices().size(), 4u);
  for (int v = 0; v < phi.complex().vertex_count(); ++v) {
    const int parent = chart.removal.parent_vertex[v];
    EXPECT_NEAR((phi.position(v) - stereo(p.position(parent))).norm(), 0.0, 1e-15);
    EXPECT_NEAR(phi.position(v).norm(), parent == 5 ? 0.0 : 1.0, 1e-15);
  }
}

TEST(Projection, TetrahedronGivesTriangle) {
  const double s = std::sqrt(8.0 / 9), t = std::sqrt(2.0 / 3);
  const std::vector<Point3> pos = {{s, 0, -1.0 / 3}, {-s / 2, t, -1.0 / 3}, {-s / 2, -t, -1.0 / 3}, {0, 0, 1}};
  auto faces = oracle::tetrahedron();
  const InscribedPolyhedron p = InscribedPolyhedron::make(TriComplex::build(faces), pos);
  const PlanarChart chart = project_to_plane(p, 3);
  EXPECT_EQ(chart.planar.complex().face_count(), 1);
  EXPECT_ERROR(project_to_plane(p, 0), VertexNotAtPole);
}

TEST(Projection, DefectsTransferToPlane) {
  Rng rng(157);
  for (int trial = 0; trial < 10; ++trial) {
    const InscribedPolyhedron raw = random_inscribed_polyhedron(12, rng);
    const auto [i, j] = edge_away_from(raw.complex(), 0);
    const InscribedPolyhedron p = normalize(raw, 0, i, j).normalized;
    const PlanarChart chart = project_to_plane(p, 0);
    for (int e0 : chart.planar.complex().interior_edges()) {
      const auto& edge = chart.planar.complex().edge(e0);
      const int pe = p.complex().find_edge(chart.removal.parent_vertex[edge.v0], chart.removal.parent_vertex[edge.v1]);
      EXPECT_EQ(empty_circle_margin(p, pe) > 0, delaunay_defect(chart.planar, e0) > 0);
    }
  }
}

TEST(Lift, SquareWithCenter) {
  const PlanarTriangulation phi = PlanarTriangulation::make(TriComplex::build(oracle::square_with_center()),
                                                            {{1, 0}, {0, 1}, {-1, 0}, {0, -1}, {0, 0}});
  const StarRemoval chart = cone_over_boundary(phi.complex());
  const InscribedPolyhedron p = lift_to_sphere(phi, chart);
  EXPECT_GT(convexity_margin(p), InscribedPolyhedron::kConvexityMargin);
  const std::vector<Point3> expected = {{1, 0, 0}, {0, 1, 0}, {-1, 0, 0}, {0, -1, 0}, {0, 0, -1}, {0, 0, 1}};
  EXPECT_LE(oracle::max_distance(p.positions(), expected), 1e-15);
  const PlanarChart back = project_to_plane(p, chart.removed_vertex);
  EXPECT_LE(oracle::max_distance(back.planar.positions(), phi.positions()), 1e-12);
}

TEST(Lift, RoundTripRandom) {
  Rng rng(163);
  for (int trial = 0; trial < 10; ++trial) {
    const PlanarTriangulation phi = random_delaunay_disk(15, rng);
    const StarRemoval chart = cone_over_boundary(phi.complex());
    const PlanarChart back = project_to_plane(lift_to_sphere(phi, chart), chart.removed_vertex);
    EXPECT_LE(oracle::max_distance(back.planar.positions(), phi.positions()), 1e-12);
  }
}

TEST(Lift, CocircularQuadIsFlat) {
  const TriComplex t = TriComplex::build(oracle::square_diagonal());
  const StarRemoval chart = cone_over_boundary(t);
  const Point2 centre(0.5, 0.5), out = Point2(-1, 1).normalized();
  auto at = [&](double rho) {
    return PlanarTriangulation::make(t, {{0, 0}, {1, 0}, {1, 1}, centre + rho * out});
  };
  auto defect = [&](double rho) {
    const PlanarTriangulation phi = at(rho);
    return delaunay_defect(phi, t.interior_edges().front());
  };
  double lo = 0.6, hi = 1.5;
  ASSERT_LT(defect(lo), 0.0);
  ASSERT_GT(defect(hi), 0.0);
  for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) (defect(0.5 * (lo + hi)) > 0 ? hi : lo) = 0.5 * (lo + hi);
  EXPECT_NEAR(hi, std::sqrt(0.5), 1e-12);
  EXPECT_ERROR(lift_to_sphere(at(lo), chart), NotStrictlyDelaunay);
  const InscribedPolyhedron p = lift_to_sphere(at(hi + 1e-3), chart);
  EXPECT_LT(min_empty_circle_margin(p).first, 1e-2);
}

TEST(OriginInside, Cases) {
  const InscribedPolyhedron oct = InscribedPolyhedron::make(TriComplex::build(oracle::octahedron()), oracle::octahedron_positions());
  EXPECT_TRUE(origin_inside(oct));
  Rng rng(167);
  const InscribedPolyhedron cap = random_inscribed_polyhedron(6, rng, PolyhedronOptions{0.9, 1e-7, false});
  double lowest = 1.0;
  for (const Point3& x : cap.positions()) lowest = std::min(lowest, x.z());
  ASSERT_GE(lowest, 0.9);
  EXPECT_FALSE(origin_inside(cap));
  EXPECT_ERROR(radial_projection(cap), OriginNotInside);
}

TEST(OriginInside, RadialProjectionCoversSphere) {
  Rng rng(173);
  const InscribedPolyhedron p = random_inscribed_polyhedron(20, rng, PolyhedronOptions{-1.0, 1e-3, true});
  const SphericalTriangulation s = radial_projection(p);
  double area = 0.0;
  for (const auto& f : s.complex().faces()) area += oracle::lhuilier_area(s.position(f[0]), s.position(f[1]), s.position(f[2]));
  EXPECT_NEAR(area, 4 * pi, 1e-9);
  EXPECT_GT(min_spherical_delaunay_defect(s).first, 0.0);
}

TEST(Orientation, SameOrientation) {
  Rng rng(179);
  const InscribedPolyhedron p = random_inscribed_polyhedron(10, rng);
  EXPECT_TRUE(same_orientation(p, p));
  std::vector<Point3> mirrored = p.positions();
  for (Point3& x : mirrored) x.x() = -x.x();
  const InscribedPolyhedron m = InscribedPolyhedron::make(p.complex(), mirrored);
  EXPECT_FALSE(same_orientation(p, m));
  for (int trial = 0; trial < 5; ++trial) {
    const Rotation g = random_rotation(rng);
    EXPECT_TRUE(same_orientation(p, rotated(p, g)));
    EXPECT_FALSE(same_orientation(m, rotated(p, g)));
  }
}

TEST(Normalize, AlreadyNormalizedIsIdentity) {
  Rng rng(181);
  const InscribedPolyhedron p = random_inscribed_polyhedron(10, rng);
  const auto [i, j] = edge_away_from(p.complex(), 0);
  const Normalization n = normalize(p, 0, i, j);
  const Normalization again = normalize(n.normalized, 0, i, j);
  EXPECT_LT((again.g.matrix() - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_NEAR((n.normalized.position(0) - Point3::UnitZ()).norm(), 0.0, 1e-14);
  const Point2 d = stereo(n.normalized.position(j)) - stereo(n.normalized.position(i));
  EXPECT_NEAR(d.y(), 0.0, 1e-12);
  EXPECT_GT(d.x(), 0.0);
}

TEST(Normalize, RecoversRotation) {
  Rng rng(191);
  for (int trial = 0; trial < 10; ++trial) {
    const InscribedPolyhedron p = random_inscribed_polyhedron(12, rng);
    const auto [i, j] = edge_away_from(p.complex(), 0);
    const Normalization n0 = normalize(p, 0, i, j);
    const Rotation g0 = random_rotation(rng);
    const Normalization n = normalize(rotated(n0.normalized, g0), 0, i, j);
    EXPECT_LT((n.g.matrix() - g0.matrix()).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_LT(oracle::max_distance(n.normalized.positions(), n0.normalized.positions()), 1e-10);
    const Normalization moved = normalize(rotated(p, g0), 0, i, j);
    EXPECT_LT((moved.g.matrix() - (g0 * n0.g).matrix()).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(Normalize, DifferentEdgesDifferByZRotation) {
  Rng rng(193);
  const InscribedPolyhedron p = random_inscribed_polyhedron(12, rng);
  std::vector<std::pair<int, int>> away;
  for (const Edge& e : p.complex().edges())
    if (e.v0 != 0 && e.v1 != 0) away.emplace_back(e.v0, e.v1);
  const Normalization a = normalize(p, 0, away[0].first, away[0].second);
  const Normalization b = normalize(p, 0, away[3].first, away[3].second);
  const Eigen::Matrix3d d = a.g.matrix().transpose() * b.g.matrix();
  const Eigen::AngleAxisd aa(d);
  if (aa.angle() > 1e-9) EXPECT_NEAR(std::abs(aa.axis().z()), 1.0, 1e-10);
  EXPECT_NEAR(d(2, 2), 1.0, 1e-12);
}

TEST(Rotation, Interpolate) {
  Rng rng(197);
  const Rotation a = random_rotation(rng), b = random_rotation(rng);
  EXPECT_LT((interpolate(a, b, 0.0).matrix() - a.matrix()).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LT((interpolate(a, b, 1.0).matrix() - b.matrix()).cwiseAbs().maxCoeff(), 1e-12);
  const double total = Eigen::AngleAxisd(Eigen::Matrix3d(b.matrix() * a.matrix().transpose())).angle();
  const double half = Eigen::AngleAxisd(Eigen::Matrix3d(interpolate(a, b, 0.5).matrix() * a.matrix().transpose())).angle();
  EXPECT_NEAR(half, total / 2, 1e-10);
  const Rotation turn = Rotation::about_axis({0, 0, 1}, pi);
  const Rotation mid = interpolate(Rotation::identity(), turn, 0.5);
  EXPECT_LT((mid.matrix() - Rotation::about_axis({0, 0, 1}, pi / 2).matrix()).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_ERROR(Rotation::make(2 * Eigen::Matrix3d::Identity()), OutOfRange);
}
