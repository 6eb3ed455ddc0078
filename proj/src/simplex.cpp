#include "deform/simplex.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace deform {

namespace {

class Tableau {
 public:
  Tableau(Eigen::MatrixXd t, std::vector<int> basis, double eps) : t_(std::move(t)), basis_(std::move(basis)), eps_(eps) {}

  // Last row holds reduced costs of a minimization; last column holds the rhs.
  // Columns at or beyond `allowed` never enter.
  bool optimize(int allowed) {
    const int m = rows();
    for (;;) {
      int enter = -1;
      for (int j = 0; j < allowed; ++j) {
        if (t_(m, j) < -eps_) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (int i = 0; i < m; ++i) {
        if (t_(i, enter) > eps_) {
          const double ratio = t_(i, cols()) / t_(i, enter);
          if (ratio < best - eps_ || (ratio <= best + eps_ && leave >= 0 && basis_[i] < basis_[leave])) {
            best = ratio;
            leave = i;
          }
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }

  void pivot(int r, int c) {
    t_.row(r) /= t_(r, c);
    for (int i = 0; i < t_.rows(); ++i) {
      if (i != r && t_(i, c) != 0.0) t_.row(i) -= t_(i, c) * t_.row(r);
    }
    basis_[r] = c;
  }

  void drop_row(int r) {
    const int n = static_cast<int>(t_.rows());
    Eigen::MatrixXd next(n - 1, t_.cols());
    next.topRows(r) = t_.topRows(r);
    next.bottomRows(n - 1 - r) = t_.bottomRows(n - 1 - r);
    t_ = std::move(next);
    basis_.erase(basis_.begin() + r);
  }

  int rows() const { return static_cast<int>(t_.rows()) - 1; }
  int cols() const { return static_cast<int>(t_.cols()) - 1; }
  Eigen::MatrixXd& table() { return t_; }
  const std::vector<int>& basis() const { return basis_; }

 private:
  Eigen::MatrixXd t_;
  std::vector<int> basis_;
  double eps_;
};

}  // namespace

LpResult solve_standard_form(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const Eigen::VectorXd& c, double eps) {
  const int m = static_cast<int>(A.rows());
  const int n = static_cast<int>(A.cols());
  LpResult result;

  // Phase one: minimize the sum of artificials a in A x + a = b, b >= 0.
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m + 1, n + m + 1);
  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) {
    const double sign = b(i) < 0.0 ? -1.0 : 1.0;
    t.row(i).head(n) = sign * A.row(i);
    t(i, n + i) = 1.0;
    t(i, n + m) = sign * b(i);
    basis[i] = n + i;
  }
  for (int i = 0; i < m; ++i) t.row(m) -= t.row(i);
  for (int i = 0; i < m; ++i) t(m, n + i) = 0.0;

  Tableau tab(std::move(t), std::move(basis), eps);
  tab.optimize(n + m);
  const double scale = std::max(1.0, b.cwiseAbs().maxCoeff());
  if (-tab.table()(tab.rows(), n + m) > 1e-9 * scale) {
    result.status = LpStatus::Infeasible;
    return result;
  }

  // Drive artificials out of the basis; rows where that is impossible are redundant.
  for (int i = tab.rows() - 1; i >= 0; --i) {
    if (tab.basis()[i] < n) continue;
    int col = -1;
    for (int j = 0; j < n; ++j) {
      if (std::abs(tab.table()(i, j)) > 1e-8) {
        col = j;
        break;
      }
    }
    if (col >= 0) {
      tab.pivot(i, col);
    } else {
      tab.drop_row(i);
    }
  }

  // Phase two: minimize -c'x.
  Eigen::MatrixXd& table = tab.table();
  const int rows = tab.rows();
  table.row(rows).setZero();
  table.row(rows).head(n) = -c.transpose();
  for (int i = 0; i < rows; ++i) {
    const int j = tab.basis()[i];
    if (table(rows, j) != 0.0) table.row(rows) -= table(rows, j) * table.row(i);
  }
  if (!tab.optimize(n)) {
    result.status = LpStatus::Unbounded;
    return result;
  }

  result.x = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < rows; ++i) {
    if (tab.basis()[i] < n) result.x(tab.basis()[i]) = std::max(0.0, table(i, n + m));
  }
  result.objective = c.dot(result.x);
  result.status = LpStatus::Optimal;
  return result;
}

}  // namespace deform
