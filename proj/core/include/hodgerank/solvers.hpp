#pragma once

#include <functional>

#include <Eigen/Core>

namespace hodgerank {

struct SolverOptions {
  /// Stop once ||b - A x|| <= relative_tolerance * ||b||.
  double relative_tolerance = 1e-10;
  /// Also stop once ||b - A x|| <= absolute_tolerance; a rounding floor for
  /// right-hand sides that are numerically zero.
  double absolute_tolerance = 0.0;
  /// 0 selects 10 * dim + 50.
  int max_iterations = 0;
};

struct SolverDiagnostics {
  int iterations = 0;
  double relative_residual = 0.0;
  bool converged = false;
};

using LinearOperator = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

struct SolveResult {
  Eigen::VectorXd x;
  SolverDiagnostics diagnostics;
};

/**
 * Conjugate gradients for a symmetric positive semidefinite system A x = b
 * whose right-hand side lies in range(A).
 *
 * Starting from zero keeps every iterate in the Krylov space of b, which is
 * contained in range(A); the result is therefore the minimum-norm solution up
 * to rounding. Callers that know ker(A) explicitly should still project it
 * out afterwards. Never throws; check diagnostics.converged.
 */
SolveResult conjugate_gradient(const LinearOperator& apply, const Eigen::VectorXd& rhs,
                               const SolverOptions& options = {});

}  // namespace hodgerank
