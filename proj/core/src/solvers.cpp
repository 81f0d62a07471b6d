#include "hodgerank/solvers.hpp"

#include <algorithm>
#include <cmath>

namespace hodgerank {

SolveResult conjugate_gradient(const LinearOperator& apply, const Eigen::VectorXd& rhs,
                               const SolverOptions& options) {
  const Eigen::Index n = rhs.size();
  SolveResult out{Eigen::VectorXd::Zero(n), {}};
  const double bnorm = rhs.norm();
  if (bnorm == 0.0) {
    out.diagnostics.converged = true;
    return out;
  }
  const int cap = options.max_iterations > 0 ? options.max_iterations
                                             : static_cast<int>(10 * n + 50);
  const double target = std::max(options.relative_tolerance * bnorm, options.absolute_tolerance);

  int it = 0;
  Eigen::VectorXd r = rhs;
  double true_norm = bnorm;
  // Restarts from the true residual whenever the recurrence claims
  // convergence that the true residual does not confirm.
  for (int restart = 0; restart < 8 && it < cap && true_norm > target; ++restart) {
    Eigen::VectorXd p = r;
    double rr = r.squaredNorm();
    while (it < cap && std::sqrt(rr) > target) {
      const Eigen::VectorXd ap = apply(p);
      const double pap = p.dot(ap);
      if (!(pap > 0.0)) break;  // p fell into ker(A)
      const double alpha = rr / pap;
      out.x += alpha * p;
      r -= alpha * ap;
      ++it;
      const double rr_next = r.squaredNorm();
      p = r + (rr_next / rr) * p;
      rr = rr_next;
    }
    r = rhs - apply(out.x);
    const double previous = true_norm;
    true_norm = r.norm();
    if (true_norm >= previous) break;
  }
  out.diagnostics.iterations = it;
  out.diagnostics.relative_residual = true_norm / bnorm;
  out.diagnostics.converged = true_norm <= target;
  return out;
}

}  // namespace hodgerank
