#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hodgerank/flows.hpp"
#include "hodgerank/graph.hpp"

namespace hodgerank {

/// Largest n accepted by the n!-enumeration routines.
inline constexpr std::size_t kMaxEnumeration = 10;
/// Largest n accepted by order_equivalence_crosscheck.
inline constexpr std::size_t kMaxCrosscheck = 6;

/// A total order on alternatives 0..n-1, best first.
class RankOrder {
 public:
  RankOrder() = default;
  /// Throws InputError unless `best_first` is a permutation of 0..n-1.
  explicit RankOrder(std::vector<Vertex> best_first);

  static RankOrder identity(std::size_t n);
  /// Descending score; equal scores keep index order.
  static RankOrder from_scores(const Potential& scores);

  std::size_t size() const { return items_.size(); }
  const std::vector<Vertex>& items() const { return items_; }
  Vertex operator[](std::size_t k) const { return items_[k]; }
  /// 0 for the best alternative.
  std::size_t position(Vertex v) const { return positions_[static_cast<std::size_t>(v)]; }

  /// Binary pairwise ranking on the graph's edges: +1 on (i, j) when j is
  /// ranked above i, -1 otherwise.
  EdgeFlow pairwise(const ComparisonGraph& graph) const;

  friend bool operator==(const RankOrder& a, const RankOrder& b) { return a.items_ == b.items_; }

 private:
  std::vector<Vertex> items_;
  std::vector<std::size_t> positions_;
};

/// One total order per voter over a common alternative set.
class VotingProfile {
 public:
  VotingProfile() = default;
  /// Labels default to "0", "1", ...; throws InputError on mismatched sizes.
  explicit VotingProfile(std::vector<RankOrder> orders, std::vector<std::string> labels = {});

  std::size_t alternatives() const { return labels_.size(); }
  std::size_t voters() const { return orders_.size(); }
  const std::vector<RankOrder>& orders() const { return orders_; }
  const std::vector<std::string>& labels() const { return labels_; }

  /// wins(a, b): number of voters ranking a above b.
  std::int64_t wins(Vertex a, Vertex b) const;

  /// Complete binary pairwise data: w_ij = voters, Ybar_ij = mean of Y^alpha_ij.
  PairwiseData pairwise() const;

 private:
  std::vector<RankOrder> orders_;
  std::vector<std::string> labels_;
  std::vector<std::int64_t> wins_;
};

/// Number of unordered pairs on which the two orders disagree.
std::int64_t kemeny_distance(const RankOrder& a, const RankOrder& b);

struct KemenyResult {
  /// Every minimizer, in lexicographic order of the best-first sequence.
  std::vector<RankOrder> optima;
  double cost = 0.0;
};

/// min over orders of the summed Kemeny distance to the profile (n <= 10).
KemenyResult kemeny_optimize(const VotingProfile& profile);

/// min over orders of (1/2) sum_ij w_ij |Y^sigma_ij - Ybar_ij| (n <= 10).
/// For aggregated binary profiles this equals the profile objective.
KemenyResult kemeny_optimize(const PairwiseData& pairwise);

/// Positional scores: n-1 for a first place, 0 for a last place, summed.
Potential borda_count(const VotingProfile& profile);

struct CircularTriads {
  std::int64_t direct = 0;
  std::int64_t closed_form = 0;

  bool agree() const { return direct == closed_form; }
};

/// Counts cyclic triangles of a binary flow on a complete graph both directly
/// and by n(n^2-1)/24 - (1/8) sum_i (sum_j X_ij)^2. Throws InputError unless
/// the graph is complete and every value is +1 or -1.
CircularTriads circular_triads(const EdgeFlow& flow, const ComparisonGraph& graph);

struct Arc {
  Vertex from = 0;
  Vertex to = 0;
  double weight = 0.0;

  friend bool operator==(const Arc&, const Arc&) = default;
};

/// Directed graph with positive arc weights and no self loops.
class WeightedDigraph {
 public:
  WeightedDigraph() = default;
  WeightedDigraph(std::size_t vertex_count, std::vector<Arc> arcs);

  /// Arc i -> j of weight w_ij Ybar_ij whenever Ybar_ij > 0 (and the reverse
  /// arc of weight w_ij |Ybar_ij| when Ybar_ij < 0).
  static WeightedDigraph from_pairwise(const PairwiseData& pairwise);

  std::size_t vertex_count() const { return n_; }
  const std::vector<Arc>& arcs() const { return arcs_; }

  /// Weight of the arcs pointing from a later to an earlier vertex of `order`.
  double backward_weight(const RankOrder& order) const;

 private:
  std::size_t n_ = 0;
  std::vector<Arc> arcs_;
};

struct FeedbackArcSet {
  /// Arcs removed; what remains is acyclic with `order` as a topological order.
  std::vector<Arc> arcs;
  double cost = 0.0;
  RankOrder order;
};

/// Exhaustive minimum-weight feedback arc set (n <= 10); the lexicographically
/// smallest optimal vertex order is reported.
FeedbackArcSet min_feedback_arc(const WeightedDigraph& digraph);

/**
 * Evaluates the four equivalent formulations for a binary profile on every
 * total order and reports their optima.
 *
 *   (i)   least squares over sign matrices, summed over unordered pairs and
 *         voters: LS(sigma) = c - 2 corr(sigma) and LS = 4 * Kemeny cost
 *   (ii)  corr(sigma) = sum_ij w_ij Y^sigma_ij Ybar_ij at the vertices of the
 *         convex hull only
 *   (iii) weighted l1 distance to the transitive cone of sigma
 *   (iv)  minimum feedback arc set of the digraph W o Ybar
 *
 * and Kemeny cost = (iii) + kemeny_offset. n <= 6.
 */
struct OrderEquivalenceReport {
  std::size_t alternatives = 0;
  std::size_t voters = 0;
  double least_squares_min = 0.0;
  double correlation_max = 0.0;
  double l1_min = 0.0;
  double feedback_arc_min = 0.0;
  double kemeny_min = 0.0;
  /// c in LS = c - 2 corr.
  double least_squares_constant = 0.0;
  /// sum over pairs of the minority vote count.
  double kemeny_offset = 0.0;
  std::vector<RankOrder> least_squares_argmin;
  std::vector<RankOrder> correlation_argmax;
  std::vector<RankOrder> l1_argmin;
  std::vector<RankOrder> feedback_arc_argmin;
  std::vector<RankOrder> kemeny_argmin;
  /// Worst per-order violation of the affine identities above.
  double max_identity_error = 0.0;

  bool consistent() const;
};

OrderEquivalenceReport order_equivalence_crosscheck(const VotingProfile& profile);

}  // namespace hodgerank
