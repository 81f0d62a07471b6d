#pragma once

#include <string_view>

#include <Eigen/Core>

namespace hodgerank {

/// minimize cost . x  subject to  constraints * x = rhs,  lower <= x <= upper.
/// Lower bounds must be finite; upper bounds may be +infinity.
struct LinearProgram {
  Eigen::VectorXd cost;
  Eigen::MatrixXd constraints;
  Eigen::VectorXd rhs;
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;
};

enum class LpStatus { optimal, infeasible, unbounded, iteration_limit };

std::string_view to_string(LpStatus status);

struct LpResult {
  LpStatus status = LpStatus::iteration_limit;
  Eigen::VectorXd x;
  double objective = 0.0;
  /// Equality-row multipliers y with cost - A^T y the reduced costs. Together
  /// with rhs they certify optimality when every variable is only bounded
  /// below, since then b . y equals the optimum.
  Eigen::VectorXd duals;
  int iterations = 0;
};

struct SimplexOptions {
  /// 0 selects 50 * (rows + columns) + 1000.
  int max_iterations = 0;
  double tolerance = 1e-9;
};

/**
 * Two-phase bounded-variable primal simplex on a dense tableau with Bland's
 * smallest-index rule for both the entering and the leaving variable.
 *
 * Redundant equality rows are tolerated: their artificial variable is fixed
 * at zero in phase II and stays basic. The final basis is refactorized with
 * LU to clean the basic values and compute the multipliers.
 */
LpResult solve_lp(const LinearProgram& lp, const SimplexOptions& options = {});

}  // namespace hodgerank
