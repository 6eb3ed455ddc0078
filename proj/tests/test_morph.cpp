#include <random>

#include <gtest/gtest.h>

#include "deform/generate.hpp"
#include "deform/morph.hpp"
#include "expect_error.hpp"
#include "oracles.hpp"

using namespace deform;
using oracle::pi;

namespace {

const PlanarTriangulation& planar(const MorphSample& s) { return std::get<PlanarTriangulation>(s.realization); }
const InscribedPolyhedron& sphere(const MorphSample& s) { return std::get<InscribedPolyhedron>(s.realization); }

MorphOptions with_samples(int n) {
  MorphOptions o;
  o.samples = n;
  return o;
}

PlanarTriangulation square_with_center(double x) {
  return PlanarTriangulation::make(TriComplex::build(oracle::square_with_center()), {{1, 0}, {0, 1}, {-1, 0}, {0, -1}, {x, 0}});
}

std::pair<int, int> edge_away_from(const TriComplex& t, int v0) {
  for (const Edge& e : t.edges())
    if (e.v0 != v0 && e.v1 != v0) return {e.v0, e.v1};
  return {-1, -1};
}

}  // namespace

TEST(MorphPolygon, ConstantPath) {
  Rng rng(211);
  const PlanarTriangulation phi = random_delaunay_disk(12, rng);
  const MorphPath path = morph_polygon(phi, phi, 0, phi.complex().head(phi.complex().outgoing_halfedges(0)[0]), with_samples(9));
  const auto& first = planar(path.samples.front());
  for (const MorphSample& s : path.samples) EXPECT_LE(oracle::max_distance(planar(s).positions(), first.positions()), 1e-12);
}

TEST(MorphPolygon, SquareCenterMovesMonotonically) {
  const MorphPath path = morph_polygon(square_with_center(-0.2), square_with_center(0.2), 0, 1, with_samples(41));
  double previous = -1.0;
  for (const MorphSample& s : path.samples) {
    const PlanarTriangulation phi = anchored(planar(s), 0, 1, Point2(1, 0));
    EXPECT_GT(s.min_defect, 0.0);
    for (int e : phi.complex().interior_edges()) EXPECT_GT(delaunay_defect(phi, e), 0.0);
    const Point2 axis = (phi.position(0) - phi.position(2)).normalized();
    const double x = (phi.position(4) - 0.5 * (phi.position(0) + phi.position(2))).dot(axis);
    EXPECT_GT(x, previous - 1e-12);
    previous = x;
  }
}

TEST(MorphPolygon, RandomPairsStayDelaunay) {
  Rng rng(223);
  for (int trial = 0; trial < 3; ++trial) {
    const PlanarTriangulation a = random_delaunay_disk(12, rng);
    const PlanarTriangulation b = jitter(a, 0.15, rng);
    const auto& e = a.complex().edge(0);
    const MorphPath path = morph_polygon(a, b, e.v0, e.v1, with_samples(100));
    ASSERT_EQ(path.samples.size(), 100u);
    EXPECT_GT(path.min_defect(), 0.0);
    EXPECT_LE(oracle::max_distance(planar(path.samples.front()).positions(), anchored(a, e.v0, e.v1, a.position(e.v0)).positions()), 1e-6);
    EXPECT_LE(oracle::max_distance(planar(path.samples.back()).positions(), anchored(b, e.v0, e.v1, b.position(e.v0)).positions()), 1e-6);
  }
}

TEST(MorphPolygon, ReversalSymmetry) {
  Rng rng(227);
  const PlanarTriangulation a = random_delaunay_disk(14, rng);
  const PlanarTriangulation b = jitter(a, 0.1, rng);
  const auto& e = a.complex().edge(2);
  const MorphPath forward = morph_polygon(a, b, e.v0, e.v1, with_samples(11));
  const MorphPath backward = morph_polygon(b, a, e.v0, e.v1, with_samples(11));
  for (int k = 0; k < 11; ++k)
    EXPECT_LE(oracle::max_distance(planar(forward.samples[k]).positions(), planar(backward.samples[10 - k]).positions()), 1e-8);
}

TEST(MorphPolygon, RefinementKeepsSharedSamples) {
  Rng rng(229);
  const PlanarTriangulation a = random_delaunay_disk(14, rng);
  const PlanarTriangulation b = jitter(a, 0.1, rng);
  const auto& e = a.complex().edge(1);
  const MorphPath coarse = morph_polygon(a, b, e.v0, e.v1, with_samples(11));
  const MorphPath fine = morph_polygon(a, b, e.v0, e.v1, with_samples(21));
  for (int k = 0; k < 11; ++k) {
    EXPECT_EQ(coarse.samples[k].t, fine.samples[2 * k].t);
    EXPECT_LE(oracle::max_distance(planar(coarse.samples[k]).positions(), planar(fine.samples[2 * k]).positions()), 1e-10);
  }
}

TEST(MorphPolygon, WarmStartDoesNotChangeSamples) {
  Rng rng(233);
  const PlanarTriangulation a = random_delaunay_disk(12, rng);
  const PlanarTriangulation b = jitter(a, 0.1, rng);
  MorphOptions cold = with_samples(6);
  cold.warm_start = false;
  const MorphPath x = morph_polygon(a, b, a.complex().edge(0).v0, a.complex().edge(0).v1, with_samples(6));
  const MorphPath y = morph_polygon(a, b, a.complex().edge(0).v0, a.complex().edge(0).v1, cold);
  for (int k = 0; k < 6; ++k) EXPECT_LE(oracle::max_distance(planar(x.samples[k]).positions(), planar(y.samples[k]).positions()), 1e-9);
}

TEST(MorphPolygon, RejectsBadInputs) {
  Rng rng(239);
  const PlanarTriangulation a = random_delaunay_disk(12, rng);
  const PlanarTriangulation other = random_delaunay_disk(13, rng);
  EXPECT_ERROR(morph_polygon(a, other, 0, 1), MismatchedComplex);
  std::vector<Point2> mirrored = a.positions();
  for (Point2& p : mirrored) p.x() = -p.x();
  const PlanarTriangulation m = PlanarTriangulation::make(a.complex(), mirrored);
  const auto& e = a.complex().edge(0);
  EXPECT_ERROR(morph_polygon(a, m, e.v0, e.v1), OrientationMismatch);
  const PlanarTriangulation sq = PlanarTriangulation::make(TriComplex::build(oracle::square_diagonal()), {{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  EXPECT_ERROR(morph_polygon(sq, sq, 0, 1), NotDelaunayInput);
}

TEST(MorphSphere, RotatedCopyIsPureRotation) {
  Rng rng(241);
  const InscribedPolyhedron a = random_inscribed_polyhedron(10, rng);
  const Rotation g = random_rotation(rng);
  const InscribedPolyhedron b = rotated(a, g);
  const auto [i, j] = edge_away_from(a.complex(), 0);
  const SphereMorph m = morph_sphere(a, b, 0, i, j, with_samples(11));
  const Normalization na = normalize(a, 0, i, j);
  for (const MorphSample& s : m.path.samples) {
    const Rotation gt = interpolate(m.g_a, m.g_b, s.t);
    const InscribedPolyhedron back = rotated(sphere(s), gt.inverse());
    EXPECT_LE(oracle::max_distance(back.positions(), na.normalized.positions()), 1e-9);
  }
}

TEST(MorphSphere, PerturbedOctahedron) {
  Rng rng(251);
  const InscribedPolyhedron a = InscribedPolyhedron::make(TriComplex::build(oracle::octahedron()), oracle::octahedron_positions());
  const InscribedPolyhedron b = jitter(a, 0.05, rng);
  const SphereMorph m = morph_sphere(a, b, 4, 0, 2, with_samples(100));
  EXPECT_GT(m.path.min_defect(), 0.0);
  EXPECT_LE(oracle::max_distance(sphere(m.path.samples.front()).positions(), a.positions()), 1e-6);
  EXPECT_LE(oracle::max_distance(sphere(m.path.samples.back()).positions(), b.positions()), 1e-6);
}

TEST(MorphSphere, RandomPairs) {
  Rng rng(257);
  for (int trial = 0; trial < 3; ++trial) {
    const InscribedPolyhedron a = random_inscribed_polyhedron(12, rng);
    const InscribedPolyhedron b = rotated(jitter(a, 0.1, rng), random_rotation(rng));
    const auto [i, j] = edge_away_from(a.complex(), 3);
    const SphereMorph m = morph_sphere(a, b, 3, i, j, with_samples(50));
    EXPECT_GT(m.path.min_defect(), 0.0);
    EXPECT_LE(oracle::max_distance(sphere(m.path.samples.front()).positions(), a.positions()), 1e-6);
    EXPECT_LE(oracle::max_distance(sphere(m.path.samples.back()).positions(), b.positions()), 1e-6);
  }
}

TEST(MorphSphereOrigin, ConstantPair) {
  Rng rng(263);
  const InscribedPolyhedron a = random_inscribed_polyhedron(10, rng, PolyhedronOptions{-1.0, 1e-3, true});
  const auto [i, j] = edge_away_from(a.complex(), 0);
  const SphereMorph m = morph_sphere_origin(a, a, 0, i, j, with_samples(7));
  for (const MorphSample& s : m.path.samples) {
    EXPECT_TRUE(s.origin_inside);
    EXPECT_LE(oracle::max_distance(sphere(s).positions(), a.positions()), 1e-9);
  }
}

TEST(MorphSphereOrigin, ScaleOnly) {
  Rng rng(269);
  const InscribedPolyhedron a = random_inscribed_polyhedron(10, rng, PolyhedronOptions{-1.0, 1e-3, true});
  const auto [i, j] = edge_away_from(a.complex(), 0);
  const Normalization na = normalize(a, 0, i, j);
  const PlanarChart chart = project_to_plane(na.normalized, 0);
  const double s_max = max_scale(chart.planar, Point2::Zero()).s_max;
  const InscribedPolyhedron b = lift_to_sphere(transformed(chart.planar, 0.5 * s_max, Point2::Zero()), chart.removal);
  ASSERT_TRUE(origin_inside(b));
  const SphereMorph m = morph_sphere_origin(na.normalized, b, 0, i, j, with_samples(100));
  for (const MorphSample& s : m.path.samples) {
    EXPECT_TRUE(s.origin_inside);
    EXPECT_GT(s.min_defect, 0.0);
    const PlanarChart c = project_to_plane(sphere(s), 0);
    const double scale = (c.planar.position(c.removal.child_vertex[j]) - c.planar.position(c.removal.child_vertex[i])).norm() /
                         (chart.planar.position(chart.removal.child_vertex[j]) - chart.planar.position(chart.removal.child_vertex[i])).norm();
    EXPECT_LE(oracle::max_distance(transformed(chart.planar, scale, Point2::Zero()).positions(), c.planar.positions()), 1e-8);
  }
}

TEST(MorphSphereOrigin, RandomOctahedronPairs) {
  Rng rng(271);
  const InscribedPolyhedron oct = InscribedPolyhedron::make(TriComplex::build(oracle::octahedron()), oracle::octahedron_positions());
  for (int trial = 0; trial < 3; ++trial) {
    const InscribedPolyhedron a = rotated(jitter(oct, 0.2, rng, 1e-4, true), random_rotation(rng));
    const InscribedPolyhedron b = rotated(jitter(oct, 0.2, rng, 1e-4, true), random_rotation(rng));
    const SphereMorph m = morph_sphere_origin(a, b, 4, 0, 2, with_samples(50));
    for (const MorphSample& s : m.path.samples) {
      EXPECT_TRUE(s.origin_inside);
      EXPECT_GT(s.min_defect, 0.0);
      EXPECT_GT(s.min_angle_defect, 0.0);
    }
    EXPECT_LE(oracle::max_distance(sphere(m.path.samples.front()).positions(), a.positions()), 1e-6);
    EXPECT_LE(oracle::max_distance(sphere(m.path.samples.back()).positions(), b.positions()), 1e-6);
  }
}

TEST(MorphSphereOrigin, RejectsOriginOutside) {
  Rng rng(277);
  const InscribedPolyhedron cap = random_inscribed_polyhedron(6, rng, PolyhedronOptions{0.5, 1e-6, false});
  ASSERT_FALSE(origin_inside(cap));
  const auto [i, j] = edge_away_from(cap.complex(), 0);
  EXPECT_ERROR(morph_sphere_origin(cap, cap, 0, i, j), OriginNotInside);
}
