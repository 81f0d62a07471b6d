#include "hodgerank/markov.hpp"

#include <cmath>

#include "hodgerank/errors.hpp"

namespace hodgerank {

LinkMatrix::LinkMatrix(Eigen::MatrixXd counts) : counts_(std::move(counts)) {
  if (counts_.rows() != counts_.cols()) throw InputError("link matrix must be square");
  if (!counts_.allFinite() || (counts_.size() > 0 && counts_.minCoeff() < 0.0)) {
    throw InputError("link counts must be finite and nonnegative");
  }
}

TransitionMatrix::TransitionMatrix(Eigen::MatrixXd p) : p_(std::move(p)) {
  if (p_.rows() != p_.cols()) throw InputError("transition matrix must be square");
  if (!p_.allFinite()) throw InputError("transition probabilities must be finite");
  for (Eigen::Index i = 0; i < p_.rows(); ++i) {
    if (p_.row(i).minCoeff() < 0.0 || p_.row(i).maxCoeff() > 1.0) {
      throw InputError("transition probabilities must lie in [0, 1]");
    }
    if (std::abs(p_.row(i).sum() - 1.0) > 1e-12) {
      throw InputError("transition matrix row " + std::to_string(i) + " does not sum to 1");
    }
  }
}

Eigen::MatrixXd TransitionMatrix::power(int k) const {
  if (k < 1) throw InputError("matrix power must be at least 1");
  Eigen::MatrixXd result = Eigen::MatrixXd::Identity(p_.rows(), p_.cols());
  Eigen::MatrixXd base = p_;
  bool first = true;
  for (unsigned e = static_cast<unsigned>(k); e > 0; e >>= 1U) {
    if (e & 1U) {
      result = first ? base : Eigen::MatrixXd(result * base);
      first = false;
    }
    if (e > 1U) base = base * base;
  }
  return result;
}

TransitionMatrix pagerank_transition(const LinkMatrix& links, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw InputError("alpha must lie in [0, 1]");
  const auto n = static_cast<Eigen::Index>(links.size());
  if (n == 0) return TransitionMatrix(Eigen::MatrixXd(0, 0));
  const double uniform = 1.0 / static_cast<double>(n);
  Eigen::MatrixXd p(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double total = links.counts().row(i).sum();
    if (total > 0.0) {
      p.row(i) = alpha * links.counts().row(i) / total;
      p.row(i).array() += (1.0 - alpha) * uniform;
    } else {
      p.row(i).setConstant(uniform);
    }
    // Absorb rounding so the row sums to 1 within the stochasticity check.
    p.row(i) /= p.row(i).sum();
  }
  return TransitionMatrix(std::move(p));
}

LogRatioFlow log_ratio_flow(const TransitionMatrix& p, int k) {
  const Eigen::MatrixXd pk = p.power(k);
  const auto n = static_cast<Vertex>(p.size());
  std::vector<Edge> edges;
  std::vector<double> values;
  LogRatioFlow out;
  for (Vertex i = 0; i < n; ++i) {
    for (Vertex j = i + 1; j < n; ++j) {
      const double forward = pk(i, j);
      const double backward = pk(j, i);
      if (forward > 0.0 && backward > 0.0) {
        edges.push_back({i, j});
        values.push_back(std::log(forward / backward));
      } else {
        out.omitted.push_back({i, j});
      }
    }
  }
  out.graph = ComparisonGraph::from_edges(p.size(), edges);
  out.flow = EdgeFlow(Eigen::Map<const Eigen::VectorXd>(values.data(),
                                                        static_cast<Eigen::Index>(values.size())));
  return out;
}

ReversibleRank reversible_rank(const TransitionMatrix& p, int k, const HodgeOptions& options) {
  LogRatioFlow lr = log_ratio_flow(p, k);
  GlobalRanking ranking = global_rank(lr.flow, lr.graph, InnerProducts::unit(lr.graph), options);
  ReversibleRank out;
  out.scores = std::move(ranking.scores);
  out.diagnostics = ranking.diagnostics;
  out.omitted = std::move(lr.omitted);
  const Eigen::VectorXd& s = out.scores.values;
  out.distribution = (s.array() - s.maxCoeff()).exp().matrix();
  out.distribution /= out.distribution.sum();
  return out;
}

StationaryDistribution stationary_distribution(const TransitionMatrix& p,
                                               const StationaryOptions& options) {
  const auto n = static_cast<Eigen::Index>(p.size());
  StationaryDistribution out;
  if (n == 0) {
    out.converged = true;
    return out;
  }
  const Eigen::MatrixXd pt = p.matrix().transpose();
  Eigen::VectorXd pi = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
  for (out.iterations = 0; out.iterations < options.max_iterations; ++out.iterations) {
    Eigen::VectorXd next = pt * pi;
    next /= next.sum();
    out.residual = (next - pi).cwiseAbs().maxCoeff();
    pi = std::move(next);
    if (out.residual <= options.tolerance) {
      out.converged = true;
      ++out.iterations;
      break;
    }
  }
  out.residual = (pt * pi - pi).cwiseAbs().maxCoeff();
  out.pi = std::move(pi);
  return out;
}

double kendall_tau_distance(const RankOrder& a, const RankOrder& b, bool normalized) {
  const auto count = static_cast<double>(kemeny_distance(a, b));
  if (!normalized) return count;
  const auto n = static_cast<double>(a.size());
  const double pairs = n * (n - 1.0) / 2.0;
  return pairs > 0.0 ? count / pairs : 0.0;
}

RankOrder order_by_scores(const Eigen::VectorXd& values) {
  return RankOrder::from_scores(Potential{values});
}

}  // namespace hodgerank
