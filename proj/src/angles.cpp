#include "deform/angles.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "deform/error.hpp"

namespace deform {

namespace {

void require_size(const TriComplex& t, const AngleStructure& theta) {
  if (theta.size() != static_cast<std::size_t>(t.corner_count()))
    throw Error(ErrorCode::MismatchedComplex, "angle structure has " + std::to_string(theta.size()) +
                                                  " entries, complex has " + std::to_string(t.corner_count()) + " corners");
}

}  // namespace

bool is_angle_structure(const TriComplex& t, const AngleStructure& theta, double tol) {
  if (theta.size() != static_cast<std::size_t>(t.corner_count())) return false;
  for (int f = 0; f < t.face_count(); ++f) {
    double sum = 0.0;
    for (int k = 0; k < 3; ++k) {
      const double a = theta[3 * f + k];
      if (!std::isfinite(a) || a <= 0.0) return false;
      sum += a;
    }
    if (std::abs(sum - std::numbers::pi) > tol) return false;
  }
  return true;
}

EdgeInvariant edge_invariant(const TriComplex& t, const AngleStructure& theta) {
  require_size(t, theta);
  EdgeInvariant alpha;
  alpha.values.assign(t.edge_count() + t.boundary_vertices().size(), 0.0);
  for (int e = 0; e < t.edge_count(); ++e) {
    for (int h : t.edge(e).halfedges)
      if (h >= 0) alpha.values[e] += theta[t.opposite_corner(h).id()];
  }
  for (int c = 0; c < t.corner_count(); ++c) {
    const int b = t.boundary_index(t.corner_vertex(c));
    if (b >= 0) alpha.values[t.edge_count() + b] += theta[c];
  }
  return alpha;
}

Eigen::MatrixXd edge_invariant_matrix(const TriComplex& t) {
  const int rows = t.edge_count() + static_cast<int>(t.boundary_vertices().size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(rows, t.corner_count());
  for (int e = 0; e < t.edge_count(); ++e)
    for (int h : t.edge(e).halfedges)
      if (h >= 0) m(e, t.opposite_corner(h).id()) += 1.0;
  for (int c = 0; c < t.corner_count(); ++c) {
    const int b = t.boundary_index(t.corner_vertex(c));
    if (b >= 0) m(t.edge_count() + b, c) += 1.0;
  }
  return m;
}

bool in_fiber(const TriComplex& t, const AngleStructure& theta, const EdgeInvariant& target, double tol) {
  if (!is_angle_structure(t, theta, tol)) return false;
  if (target.size() != t.edge_count() + t.boundary_vertices().size()) return false;
  const EdgeInvariant alpha = edge_invariant(t, theta);
  for (std::size_t i = 0; i < alpha.size(); ++i)
    if (!(std::abs(alpha.values[i] - target.values[i]) <= tol)) return false;
  return true;
}

bool in_A0(const TriComplex& t, const AngleStructure& theta, double tol) {
  if (!is_angle_structure(t, theta, tol)) return false;
  const EdgeInvariant alpha = edge_invariant(t, theta);
  for (double a : alpha.values)
    if (!(a > 0.0 && a < std::numbers::pi)) return false;
  for (int v : t.interior_vertices())
    if (std::abs(vertex_angle_sum(t, theta, v) - 2.0 * std::numbers::pi) > tol) return false;
  return true;
}

double vertex_angle_sum(const TriComplex& t, const AngleStructure& theta, int v) {
  require_size(t, theta);
  double sum = 0.0;
  for (const CornerIndex& c : t.corners_around(v)) sum += theta[c.id()];
  return sum;
}

double vertex_angle_sum_from_alpha(const TriComplex& t, const EdgeInvariant& alpha, int v) {
  if (t.is_boundary_vertex(v))
    throw Error(ErrorCode::BoundaryVertex, "vertex " + std::to_string(v) + " is on the boundary");
  double sum = 0.0;
  for (const CornerIndex& c : t.corners_around(v)) {
    sum += std::numbers::pi;
    sum -= alpha.edge(t.edge_of(c.id()));  // outgoing half-edge of this corner
  }
  return sum;
}

AngleStructure equilateral(const TriComplex& t) {
  return AngleStructure{std::vector<double>(t.corner_count(), std::numbers::pi / 3.0)};
}

}  // namespace deform
