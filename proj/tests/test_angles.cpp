#include <random>

#include <gtest/gtest.h>

#include "deform/angles.hpp"
#include "deform/generate.hpp"
#include "deform/layout.hpp"
#include "oracles.hpp"

using namespace deform;
using oracle::pi;

TEST(EdgeInvariant, EquilateralValues) {
  const TriComplex t = TriComplex::build(oracle::wheel(6));
  const EdgeInvariant a = edge_invariant(t, equilateral(t));
  for (int e = 0; e < t.edge_count(); ++e) EXPECT_NEAR(a.edge(e), t.edge(e).is_boundary() ? pi / 3 : 2 * pi / 3, 1e-15);
}

TEST(EdgeInvariant, RightTriangle) {
  const TriComplex t = TriComplex::build({{0, 1, 2}});
  const AngleStructure theta{{pi / 2, pi / 3, pi / 6}};
  const EdgeInvariant a = edge_invariant(t, theta);
  EXPECT_NEAR(a.edge(t.find_edge(1, 2)), pi / 2, 1e-15);
  EXPECT_NEAR(a.boundary_vertex(t, 0), pi / 2, 1e-15);
  EXPECT_NEAR(a.boundary_vertex(t, 1), pi / 3, 1e-15);
}

TEST(EdgeInvariant, MatchesCornerScan) {
  const TriComplex t = TriComplex::build(oracle::tetrahedron());
  Rng rng(3);
  const AngleStructure theta = random_angle_structure(t, rng);
  const EdgeInvariant a = edge_invariant(t, theta);
  for (int e = 0; e < t.edge_count(); ++e) {
    const int u = t.edge(e).v0, v = t.edge(e).v1;
    double expected = 0.0;
    for (int f = 0; f < t.face_count(); ++f) {
      const auto& face = t.face(f);
      int hits = 0;
      for (int k = 0; k < 3; ++k) hits += face[k] == u || face[k] == v;
      if (hits != 2) continue;
      for (int k = 0; k < 3; ++k)
        if (face[k] != u && face[k] != v) expected += theta[3 * f + k];
    }
    EXPECT_NEAR(a.edge(e), expected, 1e-15);
  }
}

TEST(EdgeInvariant, MatrixAgreesWithMap) {
  Rng rng(5);
  const TriComplex t = random_delaunay_disk(12, rng).complex();
  const AngleStructure theta = random_angle_structure(t, rng);
  const Eigen::VectorXd v = edge_invariant_matrix(t) * Eigen::Map<const Eigen::VectorXd>(theta.theta.data(), theta.size());
  const EdgeInvariant a = edge_invariant(t, theta);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(v(i), a.values[i], 1e-14);
}

TEST(EdgeInvariant, Linearity) {
  Rng rng(7);
  const TriComplex t = random_delaunay_disk(15, rng).complex();
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const AngleStructure x = random_angle_structure(t, rng), y = random_angle_structure(t, rng);
    const double s = unit(rng);
    AngleStructure mix = x;
    for (std::size_t c = 0; c < x.size(); ++c) mix[c] = s * x[c] + (1 - s) * y[c];
    ASSERT_TRUE(is_angle_structure(t, mix));
    const EdgeInvariant ax = edge_invariant(t, x), ay = edge_invariant(t, y), am = edge_invariant(t, mix);
    for (std::size_t i = 0; i < am.size(); ++i) EXPECT_NEAR(am.values[i], s * ax.values[i] + (1 - s) * ay.values[i], 1e-13);
  }
}

TEST(Fiber, Membership) {
  Rng rng(9);
  const TriComplex t = random_delaunay_disk(10, rng).complex();
  const AngleStructure theta = random_angle_structure(t, rng);
  EdgeInvariant a = edge_invariant(t, theta);
  EXPECT_TRUE(in_fiber(t, theta, a, 1e-12));
  a.values[0] += 0.1;
  EXPECT_FALSE(in_fiber(t, theta, a, 1e-12));
}

TEST(Fiber, SquareFiberIsAPoint) {
  const TriComplex t = TriComplex::build(oracle::square_diagonal());
  Eigen::MatrixXd m(t.face_count() + t.edge_count() + static_cast<int>(t.boundary_vertices().size()), 6);
  m.setZero();
  for (int f = 0; f < 2; ++f) m.row(f).segment(3 * f, 3).setOnes();
  m.bottomRows(m.rows() - 2) = edge_invariant_matrix(t);
  EXPECT_EQ(oracle::svd_null_space(m).cols(), 0);
}

TEST(Fiber, WheelHasNontrivialKernel) {
  const TriComplex t = TriComplex::build(oracle::wheel(6));
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(t.face_count() + t.edge_count() + static_cast<int>(t.boundary_vertices().size()),
                                            t.corner_count());
  for (int f = 0; f < t.face_count(); ++f) m.row(f).segment(3 * f, 3).setOnes();
  m.bottomRows(m.rows() - t.face_count()) = edge_invariant_matrix(t);
  const Eigen::MatrixXd kernel = oracle::svd_null_space(m);
  ASSERT_GE(kernel.cols(), 1);
  const AngleStructure base = equilateral(t);
  const EdgeInvariant a = edge_invariant(t, base);
  for (int k = 0; k < kernel.cols(); ++k) {
    AngleStructure other = base;
    for (int c = 0; c < t.corner_count(); ++c) other[c] += 0.1 * kernel(c, k);
    EXPECT_TRUE(in_fiber(t, other, a));
    EXPECT_GT(oracle::max_abs_diff(other.theta, base.theta), 1e-3);
  }
}

TEST(Fiber, ConvexCombinationsStayInFiber) {
  Rng rng(13);
  const PlanarTriangulation phi = random_delaunay_disk(12, rng);
  const TriComplex& t = phi.complex();
  const AngleStructure x = angles_of(phi);
  const EdgeInvariant a = edge_invariant(t, x);
  Eigen::MatrixXd m(t.face_count() + a.size(), t.corner_count());
  m.setZero();
  for (int f = 0; f < t.face_count(); ++f) m.row(f).segment(3 * f, 3).setOnes();
  m.bottomRows(a.size()) = edge_invariant_matrix(t);
  const Eigen::MatrixXd kernel = oracle::svd_null_space(m);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::VectorXd dir = kernel * Eigen::VectorXd::NullaryExpr(kernel.cols(), [&] { return normal(rng); });
    dir *= 0.02 / dir.cwiseAbs().maxCoeff();
    AngleStructure y = x;
    for (int c = 0; c < t.corner_count(); ++c) y[c] += dir(c);
    ASSERT_TRUE(in_fiber(t, y, a));
    for (double s : {0.1, 0.5, 0.9}) {
      AngleStructure z = x;
      for (int c = 0; c < t.corner_count(); ++c) z[c] = s * x[c] + (1 - s) * y[c];
      EXPECT_TRUE(in_fiber(t, z, a));
    }
  }
}

TEST(A0, Wheels) {
  const TriComplex hex = TriComplex::build(oracle::wheel(6));
  const TriComplex pent = TriComplex::build(oracle::wheel(5));
  EXPECT_TRUE(in_A0(hex, equilateral(hex)));
  EXPECT_FALSE(in_A0(pent, equilateral(pent)));
}

TEST(A0, DelaunayAnglesBelong) {
  Rng rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    const PlanarTriangulation phi = random_delaunay_disk(10 + trial, rng);
    EXPECT_TRUE(in_A0(phi.complex(), angles_of(phi)));
  }
}

TEST(VertexAngleSum, FromAlpha) {
  const TriComplex hex = TriComplex::build(oracle::wheel(6));
  const TriComplex pent = TriComplex::build(oracle::wheel(5));
  EXPECT_NEAR(vertex_angle_sum_from_alpha(hex, edge_invariant(hex, equilateral(hex)), 0), 2 * pi, 1e-14);
  EXPECT_NEAR(vertex_angle_sum_from_alpha(pent, edge_invariant(pent, equilateral(pent)), 0), 5 * pi / 3, 1e-14);
}

TEST(VertexAngleSum, IdentityOnRandomStructures) {
  Rng rng(19);
  for (int trial = 0; trial < 10; ++trial) {
    const TriComplex t = random_delaunay_disk(20, rng).complex();
    const AngleStructure theta = random_angle_structure(t, rng);
    const EdgeInvariant a = edge_invariant(t, theta);
    for (int v : t.interior_vertices())
      EXPECT_NEAR(vertex_angle_sum_from_alpha(t, a, v), vertex_angle_sum(t, theta, v), 1e-12);
  }
}
