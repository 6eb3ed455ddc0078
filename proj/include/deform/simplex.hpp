#pragma once

#include <Eigen/Dense>

namespace deform {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Eigen::VectorXd x;
  double objective = 0.0;
};

/// Maximizes c'x subject to A x = b, x >= 0 with a dense two-phase simplex
/// (Bland's rule, so it terminates on degenerate problems). Redundant rows are
/// detected in phase one and dropped.
LpResult solve_standard_form(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const Eigen::VectorXd& c,
                             double eps = 1e-10);

}  // namespace deform
