#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "deform/angles.hpp"
#include "deform/complex.hpp"

namespace deform {

struct SolverOptions {
  double gradient_tol = 1e-10;
  int max_iterations = 200;
  double armijo = 1e-4;
  double shrink = 0.5;
  double boundary_fraction = 0.01;  // accepted steps keep θ+ >= boundary_fraction * θ
  double feasibility_tol = 1e-10;
};

/// Face-sum and edge-invariant rows of a complex with their factorizations.
/// Shared between problems on the same complex so that a morph factors once.
struct ConstraintSystem;

/// The fiber A(T, ᾱ) as the set {θ > 0 : M θ = b}.
class FiberProblem {
 public:
  static FiberProblem make(const TriComplex& t, const EdgeInvariant& target, SolverOptions options = {});

  /// Same complex and factorization, new target.
  FiberProblem with_target(const EdgeInvariant& target) const;

  const TriComplex& complex() const;
  const EdgeInvariant& target() const { return target_; }
  const SolverOptions& options() const { return options_; }
  const Eigen::MatrixXd& constraint_matrix() const;
  const Eigen::VectorXd& rhs() const { return rhs_; }
  /// Orthonormal basis of the null space of the constraint matrix.
  const Eigen::MatrixXd& null_space() const;

  double residual(const Eigen::VectorXd& theta) const;
  /// Minimal-norm correction of θ onto the affine set M θ = b.
  Eigen::VectorXd project(const Eigen::VectorXd& theta) const;

 private:
  std::shared_ptr<const ConstraintSystem> system_;
  EdgeInvariant target_;
  Eigen::VectorXd rhs_;
  SolverOptions options_;
};

enum class SolveStatus { Converged, Infeasible, IterationLimit };

const char* to_string(SolveStatus status);

struct SolveResult {
  AngleStructure theta_star;
  double kkt_residual = 0.0;         // ∞-norm of the reduced gradient
  double constraint_residual = 0.0;  // ∞-norm of M θ - b
  double energy = 0.0;
  int iterations = 0;
  SolveStatus status = SolveStatus::Infeasible;
  std::vector<std::string> log;
};

/// Strictly positive point of the fiber from a phase-one LP that maximizes the
/// smallest corner angle. Throws Error{Infeasible}.
AngleStructure find_feasible(const FiberProblem& problem);

/// Θ(ᾱ): Newton ascent of the energy on the fiber. Starts from `start` when it
/// is a strictly feasible point, otherwise from find_feasible. Throws
/// Error{Infeasible}; IterationLimit is reported in the result.
SolveResult maximize(const FiberProblem& problem, const std::optional<AngleStructure>& start = std::nullopt);

/// Dimension of α(A0(T)) for a disk complex. Throws Error{WrongSurfaceKind}.
int fiber_dimension(const TriComplex& t);

/// Numerical rank with a relative threshold.
int numerical_rank(const Eigen::MatrixXd& m, double rel_tol = 1e-10);

}  // namespace deform
