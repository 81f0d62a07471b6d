#include <gtest/gtest.h>

#include <random>

#include "hodgerank/simplex.hpp"

using namespace hodgerank;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

LinearProgram make(Eigen::VectorXd cost, Eigen::MatrixXd a, Eigen::VectorXd b, Eigen::VectorXd lower,
                   Eigen::VectorXd upper) {
  return {std::move(cost), std::move(a), std::move(b), std::move(lower), std::move(upper)};
}

// Verifies primal feasibility and the reduced-cost sign conditions, which
// together certify optimality without a second solver.
void expect_certified(const LinearProgram& lp, const LpResult& r, double tol = 1e-9) {
  ASSERT_EQ(r.status, LpStatus::optimal);
  EXPECT_LE((lp.constraints * r.x - lp.rhs).cwiseAbs().maxCoeff(), tol);
  const Eigen::VectorXd d = lp.cost - lp.constraints.transpose() * r.duals;
  for (Eigen::Index j = 0; j < r.x.size(); ++j) {
    EXPECT_GE(r.x[j], lp.lower[j] - tol);
    EXPECT_LE(r.x[j], lp.upper[j] + tol);
    const bool at_lower = r.x[j] <= lp.lower[j] + tol;
    const bool at_upper = r.x[j] >= lp.upper[j] - tol;
    if (!at_lower) {
      EXPECT_LE(d[j], tol) << "column " << j;
    }
    if (!at_upper) {
      EXPECT_GE(d[j], -tol) << "column " << j;
    }
  }
  EXPECT_NEAR(r.objective, lp.cost.dot(r.x), tol);
}

}  // namespace

TEST(Simplex, BoundedProductionProblem) {
  const auto lp = make(Eigen::Vector4d(-3, -2, 0, 0),
                       (Eigen::MatrixXd(2, 4) << 1, 1, 1, 0, 1, 3, 0, 1).finished(),
                       Eigen::Vector2d(4, 6), Eigen::Vector4d::Zero(),
                       Eigen::Vector4d(3, kInf, kInf, kInf));
  const auto r = solve_lp(lp);
  expect_certified(lp, r);
  EXPECT_NEAR(r.objective, -11.0, 1e-12);
  EXPECT_NEAR(r.x[0], 3.0, 1e-12);
  EXPECT_NEAR(r.x[1], 1.0, 1e-12);
}

TEST(Simplex, NonzeroLowerBounds) {
  const auto lp = make(Eigen::Vector3d(1, 2, -1), (Eigen::MatrixXd(2, 3) << 1, 1, 1, 2, -1, 0).finished(),
                       Eigen::Vector2d(5, 1), Eigen::Vector3d(1, -2, 0), Eigen::Vector3d(4, 3, kInf));
  const auto r = solve_lp(lp);
  expect_certified(lp, r);
  EXPECT_NEAR(r.objective, 0.0, 1e-12);
}

TEST(Simplex, DegenerateCyclingExampleTerminates) {
  Eigen::MatrixXd a(3, 7);
  a << 1, 0, 0, 0.25, -8, -1, 9, 0, 1, 0, 0.5, -12, -0.5, 3, 0, 0, 1, 0, 0, 1, 0;
  Eigen::VectorXd c(7);
  c << 0, 0, 0, -0.75, 20, -0.5, 6;
  const auto lp = make(c, a, Eigen::Vector3d(0, 0, 1), Eigen::VectorXd::Zero(7),
                       Eigen::VectorXd::Constant(7, kInf));
  const auto r = solve_lp(lp);
  expect_certified(lp, r);
  EXPECT_NEAR(r.objective, -1.25, 1e-12);
}

TEST(Simplex, DetectsInfeasibility) {
  const auto lp = make(Eigen::Vector2d(1, 1), (Eigen::MatrixXd(1, 2) << 1, 1).finished(),
                       Eigen::VectorXd::Constant(1, -1.0), Eigen::Vector2d::Zero(),
                       Eigen::Vector2d(kInf, kInf));
  EXPECT_EQ(solve_lp(lp).status, LpStatus::infeasible);

  const auto boxed = make(Eigen::Vector2d(1, 1), (Eigen::MatrixXd(1, 2) << 1, 1).finished(),
                          Eigen::VectorXd::Constant(1, 3.0), Eigen::Vector2d::Zero(),
                          Eigen::Vector2d(1, 1));
  EXPECT_EQ(solve_lp(boxed).status, LpStatus::infeasible);
}

TEST(Simplex, DetectsUnboundedness) {
  const auto lp = make(Eigen::Vector2d(-1, 0), (Eigen::MatrixXd(1, 2) << 1, -1).finished(),
                       Eigen::VectorXd::Zero(1), Eigen::Vector2d::Zero(), Eigen::Vector2d(kInf, kInf));
  EXPECT_EQ(solve_lp(lp).status, LpStatus::unbounded);
}

TEST(Simplex, ToleratesRedundantRows) {
  const auto lp = make(Eigen::Vector3d(1, 2, 3),
                       (Eigen::MatrixXd(3, 3) << 1, 1, 1, 2, 2, 2, 1, 0, -1).finished(),
                       Eigen::Vector3d(3, 6, 0), Eigen::Vector3d::Zero(),
                       Eigen::Vector3d(kInf, kInf, kInf));
  const auto r = solve_lp(lp);
  expect_certified(lp, r);
  EXPECT_NEAR(r.objective, 6.0, 1e-12);
}

TEST(Simplex, EmptyConstraintMatrix) {
  const auto lp = make(Eigen::Vector2d(1, -1), Eigen::MatrixXd(0, 2), Eigen::VectorXd(0),
                       Eigen::Vector2d(-1, -1), Eigen::Vector2d(2, 5));
  const auto r = solve_lp(lp);
  ASSERT_EQ(r.status, LpStatus::optimal);
  EXPECT_NEAR(r.objective, -6.0, 1e-12);
}

TEST(Simplex, IterationCapIsReported) {
  Eigen::MatrixXd a(3, 7);
  a << 1, 0, 0, 0.25, -8, -1, 9, 0, 1, 0, 0.5, -12, -0.5, 3, 0, 0, 1, 0, 0, 1, 0;
  Eigen::VectorXd c(7);
  c << 0, 0, 0, -0.75, 20, -0.5, 6;
  SimplexOptions options;
  options.max_iterations = 1;
  const auto r = solve_lp(make(c, a, Eigen::Vector3d(0, 0, 1), Eigen::VectorXd::Zero(7),
                               Eigen::VectorXd::Constant(7, kInf)),
                          options);
  EXPECT_EQ(r.status, LpStatus::iteration_limit);
  EXPECT_EQ(to_string(r.status), "iteration_limit");
}

TEST(Simplex, RandomFeasibleBoxedProblemsAreCertified) {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> rows(1, 6);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  std::uniform_real_distribution<double> box(0.2, 3.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = rows(rng);
    const int n = m + rows(rng);
    LinearProgram lp;
    lp.constraints = Eigen::MatrixXd(m, n);
    for (Eigen::Index i = 0; i < lp.constraints.size(); ++i) lp.constraints.data()[i] = std::round(4 * coef(rng)) / 4;
    lp.cost = Eigen::VectorXd(n);
    lp.lower = Eigen::VectorXd(n);
    lp.upper = Eigen::VectorXd(n);
    Eigen::VectorXd inside(n);
    for (int j = 0; j < n; ++j) {
      lp.cost[j] = coef(rng);
      lp.lower[j] = -box(rng);
      lp.upper[j] = trial % 3 == 0 ? kInf : box(rng);
      inside[j] = lp.lower[j] + 0.1;
    }
    if (trial % 3 == 0) lp.cost = lp.cost.cwiseAbs();  // keeps infinite boxes bounded
    lp.rhs = lp.constraints * inside;
    expect_certified(lp, solve_lp(lp), 1e-8);
  }
}
