#include "deform/varopt.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "deform/error.hpp"
#include "deform/lobachevsky.hpp"
#include "deform/simplex.hpp"

namespace deform {

struct ConstraintSystem {
  TriComplex complex;
  Eigen::MatrixXd matrix;     // face rows, then edge-invariant rows
  Eigen::MatrixXd null_basis;
  Eigen::MatrixXd row_basis;  // orthonormal basis of the row space
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> projector;  // of matrix * row_basis
};

namespace {

std::shared_ptr<const ConstraintSystem> build_system(const TriComplex& t) {
  auto sys = std::make_shared<ConstraintSystem>();
  sys->complex = t;
  const int n = t.corner_count();
  const Eigen::MatrixXd alpha = edge_invariant_matrix(t);
  sys->matrix = Eigen::MatrixXd::Zero(t.face_count() + alpha.rows(), n);
  for (int f = 0; f < t.face_count(); ++f) sys->matrix.block(f, 3 * f, 1, 3).setOnes();
  sys->matrix.bottomRows(alpha.rows()) = alpha;

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(sys->matrix.transpose());
  qr.setThreshold(1e-10);
  const int rank = static_cast<int>(qr.rank());
  const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
  sys->row_basis = q.leftCols(rank);
  sys->null_basis = q.rightCols(n - rank);
  sys->projector.compute(sys->matrix * sys->row_basis);
  return sys;
}

Eigen::VectorXd to_vector(const AngleStructure& theta) {
  return Eigen::Map<const Eigen::VectorXd>(theta.theta.data(), static_cast<Eigen::Index>(theta.size()));
}

AngleStructure to_angles(const Eigen::VectorXd& v) { return AngleStructure{std::vector<double>(v.data(), v.data() + v.size())}; }

double energy_of(const Eigen::VectorXd& theta) { return energy_value({theta.data(), static_cast<std::size_t>(theta.size())}); }

Eigen::VectorXd ambient_gradient(const Eigen::VectorXd& theta) {
  return theta.unaryExpr([](double a) { return -std::log(std::abs(2.0 * std::sin(std::max(a, kAngleFloor)))); });
}

std::string format_line(int iteration, double value, double grad, double step) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "iter %3d  E=%.17g  |Zg|=%.3e  step=%.3e", iteration, value, grad, step);
  return buf;
}

}  // namespace

FiberProblem FiberProblem::make(const TriComplex& t, const EdgeInvariant& target, SolverOptions options) {
  FiberProblem p;
  p.system_ = build_system(t);
  p.options_ = options;
  return p.with_target(target);
}

FiberProblem FiberProblem::with_target(const EdgeInvariant& target) const {
  const TriComplex& t = system_->complex;
  if (target.size() != t.edge_count() + t.boundary_vertices().size())
    throw Error(ErrorCode::MismatchedComplex, "edge invariant does not match the complex");
  for (double a : target.values)
    if (!std::isfinite(a)) throw Error(ErrorCode::NonFinite, "edge invariant has a non-finite entry");
  FiberProblem p = *this;
  p.target_ = target;
  p.rhs_.resize(system_->matrix.rows());
  p.rhs_.head(t.face_count()).setConstant(std::numbers::pi);
  for (std::size_t i = 0; i < target.size(); ++i) p.rhs_(t.face_count() + static_cast<Eigen::Index>(i)) = target.values[i];
  return p;
}

const TriComplex& FiberProblem::complex() const { return system_->complex; }
const Eigen::MatrixXd& FiberProblem::constraint_matrix() const { return system_->matrix; }
const Eigen::MatrixXd& FiberProblem::null_space() const { return system_->null_basis; }

double FiberProblem::residual(const Eigen::VectorXd& theta) const {
  return (system_->matrix * theta - rhs_).cwiseAbs().maxCoeff();
}

Eigen::VectorXd FiberProblem::project(const Eigen::VectorXd& theta) const {
  const Eigen::VectorXd r = system_->matrix * theta - rhs_;
  const Eigen::VectorXd w = system_->projector.solve(r);
  return theta - system_->row_basis * w;
}

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Converged: return "converged";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::IterationLimit: return "iteration_limit";
  }
  return "unknown";
}

AngleStructure find_feasible(const FiberProblem& problem) {
  const Eigen::MatrixXd& m = problem.constraint_matrix();
  const int n = static_cast<int>(m.cols());
  // Variables (s, t) with θ = s + t·1; maximize t.
  Eigen::MatrixXd a(m.rows(), n + 1);
  a.leftCols(n) = m;
  a.col(n) = m.rowwise().sum();
  Eigen::VectorXd c = Eigen::VectorXd::Zero(n + 1);
  c(n) = 1.0;
  const LpResult lp = solve_standard_form(a, problem.rhs(), c);
  if (lp.status != LpStatus::Optimal || lp.x(n) <= 1e-12)
    throw Error(ErrorCode::Infeasible, "the fiber A(T, alpha) is empty");
  Eigen::VectorXd theta = lp.x.head(n).array() + lp.x(n);
  theta = problem.project(theta);
  if (theta.minCoeff() <= 0.0 || problem.residual(theta) > problem.options().feasibility_tol)
    throw Error(ErrorCode::Infeasible, "phase-one solution is not strictly feasible");
  return to_angles(theta);
}

SolveResult maximize(const FiberProblem& problem, const std::optional<AngleStructure>& start) {
  const SolverOptions& opt = problem.options();
  const Eigen::MatrixXd& z = problem.null_space();
  SolveResult result;

  Eigen::VectorXd theta;
  if (start && start->size() == static_cast<std::size_t>(problem.complex().corner_count())) {
    theta = problem.project(to_vector(*start));
    if (theta.minCoeff() <= 0.0 || problem.residual(theta) > opt.feasibility_tol) theta.resize(0);
  }
  if (theta.size() == 0) theta = to_vector(find_feasible(problem));

  double value = energy_of(theta);
  bool polished = false;
  int iter = 0;
  for (; iter < opt.max_iterations; ++iter) {
    const Eigen::VectorXd g = ambient_gradient(theta);
    const Eigen::VectorXd gz = z.transpose() * g;
    const double gnorm = z.cols() == 0 ? 0.0 : gz.cwiseAbs().maxCoeff();
    if (gnorm <= opt.gradient_tol) {
      if (polished) break;
      polished = true;
    }
    if (z.cols() == 0) break;

    const Eigen::VectorXd cot = theta.unaryExpr([](double a) { return 1.0 / std::tan(a); });
    const Eigen::MatrixXd neg_h = z.transpose() * cot.asDiagonal() * z;
    Eigen::VectorXd p;
    Eigen::LLT<Eigen::MatrixXd> llt(neg_h);
    if (llt.info() == Eigen::Success) {
      p = llt.solve(gz);
      if (!p.allFinite() || gz.dot(p) <= 0.0) p = gz;
    } else {
      p = gz;
    }
    const Eigen::VectorXd d = z * p;
    const double slope = g.dot(d);
    const double decrement = gz.dot(p);

    double step = 1.0;
    for (Eigen::Index c = 0; c < d.size(); ++c) {
      if (d(c) < 0.0) step = std::min(step, (1.0 - opt.boundary_fraction) * theta(c) / -d(c));
    }
    Eigen::VectorXd next;
    double next_value = value;
    bool accepted = false;
    while (step > 1e-20) {
      next = theta + step * d;
      next_value = energy_of(next);
      if (next_value >= value + opt.armijo * step * slope || (decrement < 1e-14 && step == 1.0)) {
        accepted = true;
        break;
      }
      step *= opt.shrink;
    }
    result.log.push_back(format_line(iter, value, gnorm, accepted ? step : 0.0));
    if (!accepted) break;
    theta = problem.project(next);
    value = energy_of(theta);
  }

  const Eigen::VectorXd gz = z.transpose() * ambient_gradient(theta);
  result.kkt_residual = z.cols() == 0 ? 0.0 : gz.cwiseAbs().maxCoeff();
  result.constraint_residual = problem.residual(theta);
  result.energy = value;
  result.iterations = iter;
  result.theta_star = to_angles(theta);
  result.status = result.kkt_residual <= opt.gradient_tol && theta.minCoeff() > 0.0 ? SolveStatus::Converged
                                                                                    : SolveStatus::IterationLimit;
  result.log.push_back(format_line(iter, value, result.kkt_residual, 0.0) + "  " + to_string(result.status));
  return result;
}

int numerical_rank(const Eigen::MatrixXd& m, double rel_tol) {
  if (m.size() == 0) return 0;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(m);
  qr.setThreshold(rel_tol);
  return static_cast<int>(qr.rank());
}

int fiber_dimension(const TriComplex& t) {
  if (t.kind() != SurfaceKind::Disk) throw Error(ErrorCode::WrongSurfaceKind, "fiber_dimension needs a disk complex");
  const int n = t.corner_count();
  const std::vector<int> interior = t.interior_vertices();
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(t.face_count() + static_cast<int>(interior.size()), n);
  for (int f = 0; f < t.face_count(); ++f) c.block(f, 3 * f, 1, 3).setOnes();
  for (std::size_t i = 0; i < interior.size(); ++i)
    for (const CornerIndex& k : t.corners_around(interior[i])) c(t.face_count() + static_cast<int>(i), k.id()) = 1.0;

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(c.transpose());
  qr.setThreshold(1e-10);
  const int rank = static_cast<int>(qr.rank());
  const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd null = q.rightCols(n - rank);
  return numerical_rank(edge_invariant_matrix(t) * null);
}

}  // namespace deform
