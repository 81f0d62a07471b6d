#include "hodgerank/social_choice.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hodgerank/errors.hpp"

namespace hodgerank {

namespace {

template <typename Visit>
void for_each_order(std::size_t n, Visit&& visit) {
  std::vector<Vertex> items(n);
  std::iota(items.begin(), items.end(), 0);
  do {
    visit(items);
  } while (std::next_permutation(items.begin(), items.end()));
}

void check_cap(std::size_t n, std::size_t cap, const char* what) {
  if (n > cap) {
    throw InputError(std::string(what) + ": " + std::to_string(n) +
                     " alternatives exceed the exhaustive-search cap of " + std::to_string(cap));
  }
}

bool close(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b)) return a == b;
  return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
}

// Tracks the minimizers of a cost over orders visited in lexicographic order.
struct ArgminTracker {
  double best = std::numeric_limits<double>::infinity();
  std::vector<RankOrder> optima;

  void offer(double cost, const std::vector<Vertex>& items) {
    if (cost < best && !close(cost, best)) {
      best = cost;
      optima.clear();
      optima.emplace_back(items);
    } else if (close(cost, best)) {
      optima.emplace_back(items);
    }
  }
};

std::vector<std::string> default_labels(std::size_t n) {
  std::vector<std::string> labels(n);
  for (std::size_t v = 0; v < n; ++v) labels[v] = std::to_string(v);
  return labels;
}

}  // namespace

RankOrder::RankOrder(std::vector<Vertex> best_first) : items_(std::move(best_first)) {
  const std::size_t n = items_.size();
  positions_.assign(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const Vertex v = items_[k];
    if (v < 0 || static_cast<std::size_t>(v) >= n || positions_[static_cast<std::size_t>(v)] != n) {
      throw InputError("rank order is not a permutation of 0.." + std::to_string(n - 1));
    }
    positions_[static_cast<std::size_t>(v)] = k;
  }
}

RankOrder RankOrder::identity(std::size_t n) {
  std::vector<Vertex> items(n);
  std::iota(items.begin(), items.end(), 0);
  return RankOrder(std::move(items));
}

RankOrder RankOrder::from_scores(const Potential& scores) {
  std::vector<Vertex> items(scores.size());
  std::iota(items.begin(), items.end(), 0);
  std::stable_sort(items.begin(), items.end(),
                   [&](Vertex a, Vertex b) { return scores[a] > scores[b]; });
  return RankOrder(std::move(items));
}

EdgeFlow RankOrder::pairwise(const ComparisonGraph& graph) const {
  if (graph.vertex_count() != size()) throw InputError("order and graph sizes differ");
  EdgeFlow out = EdgeFlow::zero(graph);
  const auto edges = graph.edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    out.values[static_cast<Eigen::Index>(e)] =
        position(edges[e].j) < position(edges[e].i) ? 1.0 : -1.0;
  }
  return out;
}

VotingProfile::VotingProfile(std::vector<RankOrder> orders, std::vector<std::string> labels)
    : orders_(std::move(orders)), labels_(std::move(labels)) {
  if (labels_.empty() && !orders_.empty()) labels_ = default_labels(orders_.front().size());
  const std::size_t n = labels_.size();
  for (const auto& order : orders_) {
    if (order.size() != n) throw InputError("voting profile orders cover different alternative sets");
  }
  wins_.assign(n * n, 0);
  for (const auto& order : orders_) {
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        ++wins_[static_cast<std::size_t>(order[a]) * n + static_cast<std::size_t>(order[b])];
      }
    }
  }
}

std::int64_t VotingProfile::wins(Vertex a, Vertex b) const {
  return wins_[static_cast<std::size_t>(a) * alternatives() + static_cast<std::size_t>(b)];
}

PairwiseData VotingProfile::pairwise() const {
  PairwiseData out;
  out.labels = labels_;
  if (voters() == 0) return out;
  const auto m = static_cast<double>(voters());
  const auto n = static_cast<Vertex>(alternatives());
  for (Vertex i = 0; i < n; ++i) {
    for (Vertex j = i + 1; j < n; ++j) {
      // Y_ij = +1 for a voter who ranks j above i.
      const double net = static_cast<double>(wins(j, i) - wins(i, j));
      out.entries.push_back({i, j, m, net / m});
    }
  }
  return out;
}

std::int64_t kemeny_distance(const RankOrder& a, const RankOrder& b) {
  if (a.size() != b.size()) throw InputError("orders cover different alternative sets");
  std::int64_t count = 0;
  const std::size_t n = a.size();
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x + 1; y < n; ++y) {
      const Vertex u = a[x];
      const Vertex v = a[y];
      if (b.position(u) > b.position(v)) ++count;
    }
  }
  return count;
}

KemenyResult kemeny_optimize(const VotingProfile& profile) {
  const std::size_t n = profile.alternatives();
  check_cap(n, kMaxEnumeration, "Kemeny optimization");
  ArgminTracker tracker;
  for_each_order(n, [&](const std::vector<Vertex>& items) {
    std::int64_t cost = 0;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) cost += profile.wins(items[b], items[a]);
    }
    tracker.offer(static_cast<double>(cost), items);
  });
  return {std::move(tracker.optima), tracker.best};
}

KemenyResult kemeny_optimize(const PairwiseData& pairwise) {
  const std::size_t n = pairwise.labels.size();
  check_cap(n, kMaxEnumeration, "Kemeny optimization");
  for (const auto& entry : pairwise.entries) {
    if (entry.i < 0 || entry.j < 0 || static_cast<std::size_t>(entry.i) >= n ||
        static_cast<std::size_t>(entry.j) >= n || entry.i == entry.j) {
      throw InputError("pairwise entry refers to an unknown alternative");
    }
  }
  ArgminTracker tracker;
  std::vector<std::size_t> position(n);
  for_each_order(n, [&](const std::vector<Vertex>& items) {
    for (std::size_t k = 0; k < n; ++k) position[static_cast<std::size_t>(items[k])] = k;
    double cost = 0.0;
    for (const auto& entry : pairwise.entries) {
      const double sigma = position[static_cast<std::size_t>(entry.j)] <
                                   position[static_cast<std::size_t>(entry.i)]
                               ? 1.0
                               : -1.0;
      cost += 0.5 * entry.weight * std::abs(sigma - entry.flow);
    }
    tracker.offer(cost, items);
  });
  return {std::move(tracker.optima), tracker.best};
}

Potential borda_count(const VotingProfile& profile) {
  const std::size_t n = profile.alternatives();
  Potential out{Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n))};
  for (const auto& order : profile.orders()) {
    for (std::size_t k = 0; k < n; ++k) {
      out.values[order[k]] += static_cast<double>(n - 1 - k);
    }
  }
  return out;
}

CircularTriads circular_triads(const EdgeFlow& flow, const ComparisonGraph& graph) {
  if (!graph.is_complete()) throw InputError("circular triads need a complete graph");
  if (static_cast<std::size_t>(flow.values.size()) != graph.edge_count()) {
    throw InputError("flow size does not match the graph");
  }
  for (Eigen::Index e = 0; e < flow.values.size(); ++e) {
    if (flow.values[e] != 1.0 && flow.values[e] != -1.0) {
      throw InputError("circular triads need a binary flow with values +1 or -1");
    }
  }
  CircularTriads out;
  const CliqueComplex complex = triangles(graph);
  const TriangleFlow c = curl(flow, complex);
  for (Eigen::Index t = 0; t < c.values.size(); ++t) {
    if (std::abs(c.values[t]) == 3.0) ++out.direct;
  }

  const auto n = static_cast<std::int64_t>(graph.vertex_count());
  std::int64_t squares = 0;
  for (Vertex i = 0; i < static_cast<Vertex>(n); ++i) {
    std::int64_t row = 0;
    for (const Neighbor& nb : graph.neighbors(i)) {
      row += static_cast<std::int64_t>(flow.at(graph, i, nb.vertex));
    }
    squares += row * row;
  }
  // n(n^2-1)/24 - squares/8 over a common denominator.
  out.closed_form = (n * (n * n - 1) - 3 * squares) / 24;
  return out;
}

WeightedDigraph::WeightedDigraph(std::size_t vertex_count, std::vector<Arc> arcs)
    : n_(vertex_count), arcs_(std::move(arcs)) {
  for (const Arc& arc : arcs_) {
    if (arc.from < 0 || arc.to < 0 || static_cast<std::size_t>(arc.from) >= n_ ||
        static_cast<std::size_t>(arc.to) >= n_ || arc.from == arc.to) {
      throw InputError("arc endpoints must be distinct vertices of the digraph");
    }
    if (!(arc.weight > 0.0) || !std::isfinite(arc.weight)) {
      throw InputError("arc weights must be positive");
    }
  }
}

WeightedDigraph WeightedDigraph::from_pairwise(const PairwiseData& pairwise) {
  std::vector<Arc> arcs;
  for (const auto& entry : pairwise.entries) {
    const double w = entry.weight * entry.flow;
    if (w > 0.0) arcs.push_back({entry.i, entry.j, w});
    if (w < 0.0) arcs.push_back({entry.j, entry.i, -w});
  }
  return WeightedDigraph(pairwise.labels.size(), std::move(arcs));
}

double WeightedDigraph::backward_weight(const RankOrder& order) const {
  if (order.size() != n_) throw InputError("order and digraph sizes differ");
  double total = 0.0;
  for (const Arc& arc : arcs_) {
    if (order.position(arc.from) > order.position(arc.to)) total += arc.weight;
  }
  return total;
}

FeedbackArcSet min_feedback_arc(const WeightedDigraph& digraph) {
  const std::size_t n = digraph.vertex_count();
  check_cap(n, kMaxEnumeration, "minimum feedback arc set");
  double best = std::numeric_limits<double>::infinity();
  std::vector<Vertex> best_items;
  std::vector<std::size_t> position(n);
  for_each_order(n, [&](const std::vector<Vertex>& items) {
    for (std::size_t k = 0; k < n; ++k) position[static_cast<std::size_t>(items[k])] = k;
    double cost = 0.0;
    for (const Arc& arc : digraph.arcs()) {
      if (position[static_cast<std::size_t>(arc.from)] > position[static_cast<std::size_t>(arc.to)]) {
        cost += arc.weight;
      }
    }
    if (cost < best && !close(cost, best)) {
      best = cost;
      best_items = items;
    }
  });
  FeedbackArcSet out;
  out.order = RankOrder(std::move(best_items));
  for (const Arc& arc : digraph.arcs()) {
    if (out.order.position(arc.from) > out.order.position(arc.to)) {
      out.arcs.push_back(arc);
      out.cost += arc.weight;
    }
  }
  return out;
}

bool OrderEquivalenceReport::consistent() const {
  return max_identity_error <= 1e-9 * std::max(1.0, least_squares_constant) &&
         least_squares_argmin == kemeny_argmin && correlation_argmax == kemeny_argmin &&
         l1_argmin == kemeny_argmin && feedback_arc_argmin == kemeny_argmin &&
         close(l1_min, feedback_arc_min) && close(kemeny_min, feedback_arc_min + kemeny_offset) &&
         close(least_squares_min, 4.0 * kemeny_min) &&
         close(least_squares_min, least_squares_constant - 2.0 * correlation_max);
}

OrderEquivalenceReport order_equivalence_crosscheck(const VotingProfile& profile) {
  const std::size_t n = profile.alternatives();
  check_cap(n, kMaxCrosscheck, "order-equivalence cross-check");
  OrderEquivalenceReport report;
  report.alternatives = n;
  report.voters = profile.voters();

  const PairwiseData data = profile.pairwise();
  const ComparisonGraph graph = ComparisonGraph::complete(n);
  const WeightedDigraph digraph = WeightedDigraph::from_pairwise(data);
  std::vector<EdgeFlow> votes;
  for (const auto& order : profile.orders()) votes.push_back(order.pairwise(graph));
  const std::size_t pairs = n * (n - 1) / 2;

  // X^2 + Y^2 = 2 on every pair for every voter.
  report.least_squares_constant = 2.0 * static_cast<double>(profile.voters() * pairs);
  for (Vertex i = 0; i < static_cast<Vertex>(n); ++i) {
    for (Vertex j = i + 1; j < static_cast<Vertex>(n); ++j) {
      report.kemeny_offset += static_cast<double>(std::min(profile.wins(i, j), profile.wins(j, i)));
    }
  }

  ArgminTracker least_squares;
  ArgminTracker negated_correlation;
  ArgminTracker l1;
  ArgminTracker feedback;
  ArgminTracker kemeny;
  for_each_order(n, [&](const std::vector<Vertex>& items) {
    const RankOrder sigma(items);
    const EdgeFlow x = sigma.pairwise(graph);

    double ls = 0.0;
    for (const auto& y : votes) ls += (x.values - y.values).squaredNorm();

    double corr = 0.0;
    double cone = 0.0;
    for (const auto& entry : data.entries) {
      const auto e = static_cast<Eigen::Index>(*graph.find_edge(entry.i, entry.j));
      corr += entry.weight * x.values[e] * entry.flow;
      // Nearest point of the cone {X : X_ij has the sign of sigma}.
      const double nearest = x.values[e] * entry.flow > 0.0 ? entry.flow : 0.0;
      cone += entry.weight * std::abs(nearest - entry.flow);
    }

    // Arcs point from loser to winner, so the acyclic order is worst first.
    std::vector<Vertex> worst_first(items.rbegin(), items.rend());
    const double fas = digraph.backward_weight(RankOrder(std::move(worst_first)));

    std::int64_t mismatches = 0;
    for (const auto& tau : profile.orders()) mismatches += kemeny_distance(sigma, tau);
    const auto k = static_cast<double>(mismatches);

    least_squares.offer(ls, items);
    negated_correlation.offer(-corr, items);
    l1.offer(cone, items);
    feedback.offer(fas, items);
    kemeny.offer(k, items);

    const double errors[] = {
        std::abs(ls - (report.least_squares_constant - 2.0 * corr)),
        std::abs(ls - 4.0 * k),
        std::abs(cone - fas),
        std::abs(k - (fas + report.kemeny_offset)),
    };
    for (double err : errors) report.max_identity_error = std::max(report.max_identity_error, err);
  });

  report.least_squares_min = least_squares.best;
  report.correlation_max = -negated_correlation.best;
  report.l1_min = l1.best;
  report.kemeny_min = kemeny.best;
  report.feedback_arc_min = min_feedback_arc(digraph).cost;
  report.least_squares_argmin = std::move(least_squares.optima);
  report.correlation_argmax = std::move(negated_correlation.optima);
  report.l1_argmin = std::move(l1.optima);
  report.feedback_arc_argmin = std::move(feedback.optima);
  report.kemeny_argmin = std::move(kemeny.optima);
  return report;
}

}  // namespace hodgerank
