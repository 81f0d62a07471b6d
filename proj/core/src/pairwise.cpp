#include "hodgerank/pairwise.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <tuple>

#include "hodgerank/errors.hpp"

namespace hodgerank {

RatingTable::RatingTable(std::vector<RatingRecord> records) : records_(std::move(records)) {
  std::set<std::tuple<std::string, std::string, std::string, bool>> seen;
  for (std::size_t r = 0; r < records_.size(); ++r) {
    const auto& rec = records_[r];
    if (!std::isfinite(rec.score)) {
      throw InputError("record " + std::to_string(r) + ": score is not finite");
    }
    if (!(rec.multiplicity > 0.0) || !std::isfinite(rec.multiplicity)) {
      throw InputError("record " + std::to_string(r) + ": multiplicity must be positive");
    }
    auto key = std::make_tuple(rec.voter, rec.item, rec.period.value_or(""), rec.period.has_value());
    if (!seen.insert(std::move(key)).second) {
      throw InputError("record " + std::to_string(r) + ": duplicate (voter, item, period) " +
                       rec.voter + "," + rec.item);
    }
  }
}

std::optional<Statistic> parse_statistic(std::string_view name) {
  if (name == "difference") return Statistic::difference;
  if (name == "ratio") return Statistic::ratio;
  if (name == "binary") return Statistic::binary;
  if (name == "logodds") return Statistic::logodds;
  return std::nullopt;
}

std::string_view to_string(Statistic statistic) {
  switch (statistic) {
    case Statistic::difference: return "difference";
    case Statistic::ratio: return "ratio";
    case Statistic::binary: return "binary";
    case Statistic::logodds: return "logodds";
  }
  return "unknown";
}

namespace {

struct Rating {
  Vertex item;
  double score;
  double multiplicity;
};

struct PairAccumulator {
  double weight = 0.0;
  double sum = 0.0;      // weighted sum of per-event statistics
  double at_least = 0.0; // log-odds: weight of events with a_j >= a_i
  double at_most = 0.0;  // log-odds: weight of events with a_j <= a_i
};

}  // namespace

AggregationResult aggregate(const RatingTable& table, const AggregationOptions& options) {
  AggregationResult out;
  const auto& records = table.records();

  std::vector<bool> usable(records.size(), true);
  if (options.statistic == Statistic::ratio) {
    for (std::size_t r = 0; r < records.size(); ++r) {
      if (!(records[r].score > 0.0)) {
        usable[r] = false;
        out.rejected.push_back({r, "ratio statistic requires a positive score"});
      }
    }
  }

  std::set<std::string> label_set;
  for (std::size_t r = 0; r < records.size(); ++r) {
    if (usable[r]) label_set.insert(records[r].item);
  }
  out.pairwise.labels.assign(label_set.begin(), label_set.end());
  auto index_of = [&](const std::string& label) {
    auto it = std::lower_bound(out.pairwise.labels.begin(), out.pairwise.labels.end(), label);
    return static_cast<Vertex>(it - out.pairwise.labels.begin());
  };

  // Event key -> item -> (score sum, multiplicity sum, count). Without period
  // grouping the key is the voter alone and repeated items get averaged.
  using EventKey = std::pair<std::string, std::string>;
  std::map<EventKey, std::map<Vertex, std::tuple<double, double, int>>> events;
  for (std::size_t r = 0; r < records.size(); ++r) {
    if (!usable[r]) continue;
    const auto& rec = records[r];
    EventKey key{rec.voter, options.group_by_period ? rec.period.value_or("") : std::string{}};
    auto& [score_sum, mult_sum, count] = events[key][index_of(rec.item)];
    score_sum += rec.score;
    mult_sum += rec.multiplicity;
    ++count;
  }

  std::map<std::pair<Vertex, Vertex>, PairAccumulator> pairs;
  std::vector<Rating> ratings;
  for (const auto& [key, items] : events) {
    ratings.clear();
    for (const auto& [item, acc] : items) {
      const auto& [score_sum, mult_sum, count] = acc;
      ratings.push_back({item, score_sum / count, mult_sum / count});
    }
    // `items` is ordered by vertex, so ratings[a].item < ratings[b].item for a < b.
    for (std::size_t a = 0; a < ratings.size(); ++a) {
      for (std::size_t b = a + 1; b < ratings.size(); ++b) {
        const Rating& ri = ratings[a];
        const Rating& rj = ratings[b];
        const double w = std::min(ri.multiplicity, rj.multiplicity);
        auto& acc = pairs[{ri.item, rj.item}];
        acc.weight += w;
        switch (options.statistic) {
          case Statistic::difference:
            acc.sum += w * (rj.score - ri.score);
            break;
          case Statistic::ratio:
            acc.sum += w * (std::log(rj.score) - std::log(ri.score));
            break;
          case Statistic::binary:
            acc.sum += w * static_cast<double>((rj.score > ri.score) - (rj.score < ri.score));
            break;
          case Statistic::logodds:
            if (rj.score >= ri.score) acc.at_least += w;
            if (rj.score <= ri.score) acc.at_most += w;
            break;
        }
      }
    }
  }

  out.pairwise.entries.reserve(pairs.size());
  for (const auto& [ij, acc] : pairs) {
    double flow = 0.0;
    if (options.statistic == Statistic::logodds) {
      double up = acc.at_least;
      double down = acc.at_most;
      if (up == 0.0 || down == 0.0) {
        up += 1.0;
        down += 1.0;
        out.smoothed_pairs.push_back(ij);
      }
      flow = std::log(up) - std::log(down);
    } else {
      flow = acc.sum / acc.weight;
    }
    out.pairwise.entries.push_back({ij.first, ij.second, acc.weight, flow});
  }
  return out;
}

InvarianceReport invariance_check(const RatingTable& table, const AggregationOptions& options,
                                  const ScoreTransform& transform) {
  std::vector<RatingRecord> mapped = table.records();
  for (auto& rec : mapped) rec.score = transform.apply(rec.score);
  const AggregationResult before = aggregate(table, options);
  const AggregationResult after = aggregate(RatingTable(std::move(mapped)), options);

  InvarianceReport report;
  if (before.pairwise.labels != after.pairwise.labels ||
      before.pairwise.entries.size() != after.pairwise.entries.size()) {
    report.max_deviation = std::numeric_limits<double>::infinity();
    return report;
  }
  double worst = 0.0;
  bool ok = true;
  for (std::size_t k = 0; k < before.pairwise.entries.size(); ++k) {
    const auto& x = before.pairwise.entries[k];
    const auto& y = after.pairwise.entries[k];
    if (x.i != y.i || x.j != y.j || x.weight != y.weight) {
      ok = false;
      worst = std::numeric_limits<double>::infinity();
      break;
    }
    const double d = std::abs(x.flow - y.flow);
    worst = std::max(worst, d);
    if (d > 1e-12 * std::max(1.0, std::abs(x.flow))) ok = false;
  }
  report.invariant = ok;
  report.max_deviation = worst;
  return report;
}

}  // namespace hodgerank
