#include "hodgerank/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/LU>

#include "hodgerank/errors.hpp"

namespace hodgerank {

std::string_view to_string(LpStatus status) {
  switch (status) {
    case LpStatus::optimal: return "optimal";
    case LpStatus::infeasible: return "infeasible";
    case LpStatus::unbounded: return "unbounded";
    case LpStatus::iteration_limit: return "iteration_limit";
  }
  return "unknown";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Variables are shifted so every lower bound is zero. Nonbasic variables sit
// at zero or at their (finite) upper bound.
struct Tableau {
  Eigen::MatrixXd t;
  Eigen::VectorXd beta;
  Eigen::VectorXd upper;
  Eigen::RowVectorXd reduced;
  std::vector<int> basic;
  std::vector<char> is_basic;
  std::vector<char> at_upper;

  Eigen::Index rows() const { return t.rows(); }
  Eigen::Index cols() const { return t.cols(); }

  void price(const Eigen::VectorXd& cost) {
    reduced = cost.transpose();
    for (Eigen::Index i = 0; i < rows(); ++i) {
      const double cb = cost[basic[static_cast<std::size_t>(i)]];
      if (cb != 0.0) reduced -= cb * t.row(i);
    }
  }

  void pivot(Eigen::Index r, Eigen::Index j) {
    t.row(r) /= t(r, j);
    for (Eigen::Index i = 0; i < rows(); ++i) {
      if (i != r && t(i, j) != 0.0) t.row(i) -= t(i, j) * t.row(r);
    }
    if (reduced[j] != 0.0) reduced -= reduced[j] * t.row(r);
    const int leaving = basic[static_cast<std::size_t>(r)];
    is_basic[static_cast<std::size_t>(leaving)] = 0;
    is_basic[static_cast<std::size_t>(j)] = 1;
    basic[static_cast<std::size_t>(r)] = static_cast<int>(j);
  }

  enum class Outcome { optimal, unbounded, limit };

  Outcome run(int& iterations, int cap, double tol) {
    while (true) {
      // Bland: smallest eligible index enters.
      Eigen::Index enter = -1;
      for (Eigen::Index j = 0; j < cols(); ++j) {
        if (is_basic[static_cast<std::size_t>(j)] || upper[j] <= tol) continue;
        const bool up = at_upper[static_cast<std::size_t>(j)];
        if ((!up && reduced[j] < -tol) || (up && reduced[j] > tol)) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return Outcome::optimal;
      if (iterations >= cap) return Outcome::limit;
      ++iterations;

      const bool from_upper = at_upper[static_cast<std::size_t>(enter)];
      const double dir = from_upper ? -1.0 : 1.0;

      double step = upper[enter];  // bound flip distance, possibly +inf
      Eigen::Index leave_row = -1;
      bool leave_to_upper = false;
      int leave_var = std::numeric_limits<int>::max();
      for (Eigen::Index i = 0; i < rows(); ++i) {
        const double alpha = t(i, enter);
        if (std::abs(alpha) <= tol) continue;
        const double rate = -dir * alpha;  // d x_B(i) / d step
        const int var = basic[static_cast<std::size_t>(i)];
        double limit = kInf;
        bool to_upper = false;
        if (rate < 0.0) {
          limit = std::max(beta[i], 0.0) / -rate;
        } else if (std::isfinite(upper[var])) {
          limit = std::max(upper[var] - beta[i], 0.0) / rate;
          to_upper = true;
        }
        const bool take = limit < step - tol ||
                          (leave_row >= 0 && std::abs(limit - step) <= tol && var < leave_var) ||
                          (leave_row < 0 && limit <= step);
        if (take) {
          step = limit;
          leave_row = i;
          leave_to_upper = to_upper;
          leave_var = var;
        }
      }
      if (!std::isfinite(step)) return Outcome::unbounded;

      beta -= (dir * step) * t.col(enter);
      if (leave_row < 0) {
        at_upper[static_cast<std::size_t>(enter)] = !from_upper;
        continue;
      }
      const double entering_value = from_upper ? upper[enter] - step : step;
      at_upper[static_cast<std::size_t>(leave_var)] = leave_to_upper;
      pivot(leave_row, enter);
      beta[leave_row] = entering_value;
      at_upper[static_cast<std::size_t>(enter)] = 0;
      for (Eigen::Index i = 0; i < rows(); ++i) {
        if (beta[i] < 0.0 && beta[i] > -tol) beta[i] = 0.0;
      }
    }
  }
};

}  // namespace

LpResult solve_lp(const LinearProgram& lp, const SimplexOptions& options) {
  const Eigen::Index m = lp.constraints.rows();
  const Eigen::Index n = lp.constraints.cols();
  if (lp.cost.size() != n || lp.rhs.size() != m || lp.lower.size() != n || lp.upper.size() != n) {
    throw InputError("linear program dimensions are inconsistent");
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    if (!std::isfinite(lp.lower[j]) || lp.upper[j] < lp.lower[j]) {
      throw InputError("linear program bounds must be finite below and ordered");
    }
  }
  const double tol = options.tolerance;
  const int cap = options.max_iterations > 0 ? options.max_iterations
                                             : static_cast<int>(50 * (m + n) + 1000);

  Eigen::VectorXd b = lp.rhs - lp.constraints * lp.lower;
  Eigen::VectorXd sign = Eigen::VectorXd::Ones(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    if (b[i] < 0.0) sign[i] = -1.0;
  }

  Tableau tab;
  tab.t.resize(m, n + m);
  tab.t.leftCols(n) = sign.asDiagonal() * lp.constraints;
  tab.t.rightCols(m).setIdentity();
  tab.beta = sign.cwiseProduct(b);
  tab.upper.resize(n + m);
  tab.upper.head(n) = lp.upper - lp.lower;
  tab.upper.tail(m).setConstant(kInf);
  tab.basic.resize(static_cast<std::size_t>(m));
  tab.is_basic.assign(static_cast<std::size_t>(n + m), 0);
  tab.at_upper.assign(static_cast<std::size_t>(n + m), 0);
  for (Eigen::Index i = 0; i < m; ++i) {
    tab.basic[static_cast<std::size_t>(i)] = static_cast<int>(n + i);
    tab.is_basic[static_cast<std::size_t>(n + i)] = 1;
  }

  LpResult result;
  int iterations = 0;

  // Phase I: minimize the sum of artificials.
  Eigen::VectorXd phase1 = Eigen::VectorXd::Zero(n + m);
  phase1.tail(m).setOnes();
  tab.price(phase1);
  auto outcome = tab.run(iterations, cap, tol);
  result.iterations = iterations;
  if (outcome == Tableau::Outcome::limit) {
    result.status = LpStatus::iteration_limit;
    return result;
  }
  double infeasibility = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    if (tab.basic[static_cast<std::size_t>(i)] >= n) infeasibility += tab.beta[i];
  }
  const double scale = std::max(1.0, m > 0 ? b.cwiseAbs().maxCoeff() : 0.0);
  if (m > 0 && infeasibility > 1e-7 * scale) {
    result.status = LpStatus::infeasible;
    return result;
  }

  // Phase II: artificials are pinned to zero.
  tab.upper.tail(m).setZero();
  for (Eigen::Index i = 0; i < m; ++i) {
    if (tab.basic[static_cast<std::size_t>(i)] >= n) tab.beta[i] = 0.0;
  }
  Eigen::VectorXd phase2 = Eigen::VectorXd::Zero(n + m);
  phase2.head(n) = lp.cost;
  tab.price(phase2);
  outcome = tab.run(iterations, cap, tol);
  result.iterations = iterations;
  if (outcome == Tableau::Outcome::limit) {
    result.status = LpStatus::iteration_limit;
    return result;
  }
  if (outcome == Tableau::Outcome::unbounded) {
    result.status = LpStatus::unbounded;
    return result;
  }

  // Refactorize the final basis: x_B = B^{-1}(b - N x_N), y = B^{-T} c_B.
  Eigen::VectorXd shifted = Eigen::VectorXd::Zero(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    if (!tab.is_basic[static_cast<std::size_t>(j)] && tab.at_upper[static_cast<std::size_t>(j)]) {
      shifted[j] = tab.upper[j];
    }
  }
  if (m > 0) {
    Eigen::MatrixXd basis(m, m);
    Eigen::VectorXd cb(m);
    for (Eigen::Index i = 0; i < m; ++i) {
      const int var = tab.basic[static_cast<std::size_t>(i)];
      if (var < n) {
        basis.col(i) = sign.asDiagonal() * lp.constraints.col(var);
        cb[i] = lp.cost[var];
      } else {
        basis.col(i).setZero();
        basis(var - n, i) = 1.0;
        cb[i] = 0.0;
      }
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(basis);
    const Eigen::VectorXd rhs = sign.cwiseProduct(b) - sign.asDiagonal() * (lp.constraints * shifted);
    const Eigen::VectorXd xb = lu.solve(rhs);
    for (Eigen::Index i = 0; i < m; ++i) {
      const int var = tab.basic[static_cast<std::size_t>(i)];
      if (var < n) shifted[var] = std::clamp(xb[i], 0.0, tab.upper[var]);
    }
    const Eigen::VectorXd y = lu.transpose().solve(cb);
    result.duals = sign.cwiseProduct(y);
  } else {
    result.duals.resize(0);
  }

  result.x = shifted + lp.lower;
  result.objective = lp.cost.dot(result.x);
  result.status = LpStatus::optimal;
  return result;
}

}  // namespace hodgerank
