#pragma once

#include <vector>

#include <Eigen/Core>

#include "hodgerank/flows.hpp"
#include "hodgerank/graph.hpp"
#include "hodgerank/hodge.hpp"
#include "hodgerank/social_choice.hpp"

namespace hodgerank {

/// Square matrix of nonnegative link counts, L(i, j) links from i to j.
class LinkMatrix {
 public:
  LinkMatrix() = default;
  /// Throws InputError unless square with finite nonnegative entries.
  explicit LinkMatrix(Eigen::MatrixXd counts);

  std::size_t size() const { return static_cast<std::size_t>(counts_.rows()); }
  const Eigen::MatrixXd& counts() const { return counts_; }

 private:
  Eigen::MatrixXd counts_;
};

/// Row-stochastic matrix.
class TransitionMatrix {
 public:
  TransitionMatrix() = default;
  /// Throws InputError unless entries lie in [0, 1] and rows sum to 1 (1e-12).
  explicit TransitionMatrix(Eigen::MatrixXd p);

  std::size_t size() const { return static_cast<std::size_t>(p_.rows()); }
  const Eigen::MatrixXd& matrix() const { return p_; }
  double operator()(std::size_t i, std::size_t j) const {
    return p_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }

  /// P^k by repeated squaring, k >= 1.
  Eigen::MatrixXd power(int k) const;

 private:
  Eigen::MatrixXd p_;
};

/// P_ij = alpha L_ij / sum_j L_ij + (1 - alpha) / n. Rows without links are
/// replaced by the uniform row before damping. Throws unless alpha in [0, 1].
TransitionMatrix pagerank_transition(const LinkMatrix& links, double alpha);

struct LogRatioFlow {
  /// Complete graph on the pairs where both P^k_ij and P^k_ji are positive;
  /// unit weights.
  ComparisonGraph graph;
  EdgeFlow flow;
  /// Pairs left out because a transition probability vanished.
  std::vector<Edge> omitted;
};

/// Y_ij = log(P^k_ij / P^k_ji).
LogRatioFlow log_ratio_flow(const TransitionMatrix& p, int k);

struct ReversibleRank {
  Potential scores;
  /// exp(s_i) / sum_k exp(s_k).
  Eigen::VectorXd distribution;
  std::vector<Edge> omitted;
  SolverDiagnostics diagnostics;
};

/// Hodge global ranking of the log-ratio flow of P^k and its Gibbs distribution.
ReversibleRank reversible_rank(const TransitionMatrix& p, int k, const HodgeOptions& options = {});

struct StationaryOptions {
  double tolerance = 1e-12;
  int max_iterations = 100000;
};

struct StationaryDistribution {
  Eigen::VectorXd pi;
  int iterations = 0;
  /// max_j |(pi P)_j - pi_j| at exit.
  double residual = 0.0;
  bool converged = false;
};

/// Power iteration from the uniform distribution.
StationaryDistribution stationary_distribution(const TransitionMatrix& p,
                                               const StationaryOptions& options = {});

/// Kemeny distance, divided by n(n-1)/2 when normalized.
double kendall_tau_distance(const RankOrder& a, const RankOrder& b, bool normalized);

/// Order by decreasing value; equal values keep index order.
RankOrder order_by_scores(const Eigen::VectorXd& values);

}  // namespace hodgerank
