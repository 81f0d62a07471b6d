#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hodgerank/graph.hpp"

namespace hodgerank {

struct RatingRecord {
  std::string voter;
  std::string item;
  double score = 0.0;
  std::optional<std::string> period;
  /// Per-record capacity; a co-rating event weighs min(m_i, m_j).
  double multiplicity = 1.0;
};

/// Voter x item cardinal scores with missing entries. At most one record per
/// (voter, item, period); scores finite; multiplicities positive.
class RatingTable {
 public:
  RatingTable() = default;
  /// Throws InputError on duplicates or non-finite values.
  explicit RatingTable(std::vector<RatingRecord> records);

  const std::vector<RatingRecord>& records() const { return records_; }
  bool empty() const { return records_.empty(); }

 private:
  std::vector<RatingRecord> records_;
};

enum class Statistic { difference, ratio, binary, logodds };

std::optional<Statistic> parse_statistic(std::string_view name);
std::string_view to_string(Statistic statistic);

struct AggregationOptions {
  Statistic statistic = Statistic::difference;
  /// Only co-ratings sharing a period tag form a comparison.
  bool group_by_period = false;
};

struct RejectedRecord {
  std::size_t index = 0;  // position in RatingTable::records()
  std::string reason;
};

struct AggregationResult {
  /// Labels sorted lexicographically; entries canonical i < j in order.
  PairwiseData pairwise;
  /// Records excluded because they violate the statistic's precondition.
  std::vector<RejectedRecord> rejected;
  /// Log-odds pairs where one side had zero mass and add-one smoothing applied.
  std::vector<std::pair<Vertex, Vertex>> smoothed_pairs;
};

/**
 * Aggregates per-voter score comparisons into (w_ij, Ybar_ij).
 *
 * A comparison event is a voter (or a voter-period when grouping) that rated
 * both items. Without grouping, a voter's scores for the same item in
 * different periods are averaged first. Per event the statistics are
 *   difference: a_j - a_i
 *   ratio:      log a_j - log a_i           (nonpositive scores rejected)
 *   binary:     sign(a_j - a_i), ties 0
 *   logodds:    log(#{a_j >= a_i} / #{a_j <= a_i}), weighted counts
 * and Ybar is their weighted mean; w_ij is the total event weight.
 */
AggregationResult aggregate(const RatingTable& table, const AggregationOptions& options);

enum class TransformKind { translation, scaling, monotone };

struct ScoreTransform {
  TransformKind kind = TransformKind::translation;
  std::function<double(double)> apply;
};

struct InvarianceReport {
  bool invariant = false;
  double max_deviation = 0.0;
};

/// Re-aggregates with every score mapped through the transform and compares
/// the resulting flows against the original ones (tolerance 1e-12 relative).
InvarianceReport invariance_check(const RatingTable& table, const AggregationOptions& options,
                                  const ScoreTransform& transform);

}  // namespace hodgerank
