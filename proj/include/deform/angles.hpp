#pragma once

#include <Eigen/Dense>
#include <vector>

#include "deform/complex.hpp"

namespace deform {

inline constexpr double kAffineTolerance = 1e-9;

/// Corner angles indexed by corner id (3 * face + slot).
struct AngleStructure {
  std::vector<double> theta;

  double operator[](int corner) const { return theta[corner]; }
  double& operator[](int corner) { return theta[corner]; }
  std::size_t size() const { return theta.size(); }
};

/// Values on E ∪ V_b: entries [0, |E|) are edges, entry |E| + b is the b-th
/// boundary vertex of the complex.
struct EdgeInvariant {
  std::vector<double> values;

  double edge(int e) const { return values[e]; }
  double boundary_vertex(const TriComplex& t, int v) const {
    return values[t.edge_count() + t.boundary_index(v)];
  }
  std::size_t size() const { return values.size(); }
};

/// Positive, finite, face sums equal to pi within `tol`.
bool is_angle_structure(const TriComplex& t, const AngleStructure& theta, double tol = kAffineTolerance);

EdgeInvariant edge_invariant(const TriComplex& t, const AngleStructure& theta);

/// Linear map theta -> alpha(theta) as a (|E| + |V_b|) x 3|F| matrix.
Eigen::MatrixXd edge_invariant_matrix(const TriComplex& t);

/// Membership in A(T, alpha_bar).
bool in_fiber(const TriComplex& t, const AngleStructure& theta, const EdgeInvariant& target, double tol = kAffineTolerance);

/// Membership in A0(T): alpha in (0, pi) everywhere and interior angle sums 2 pi.
bool in_A0(const TriComplex& t, const AngleStructure& theta, double tol = kAffineTolerance);

double vertex_angle_sum(const TriComplex& t, const AngleStructure& theta, int v);

/// Angle sum at an interior vertex forced by the edge invariant:
/// sum over incident faces of pi minus the sum of alpha over incident edges.
double vertex_angle_sum_from_alpha(const TriComplex& t, const EdgeInvariant& alpha, int v);

AngleStructure equilateral(const TriComplex& t);

}  // namespace deform
