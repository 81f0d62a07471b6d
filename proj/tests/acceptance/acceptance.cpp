// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hodgerank/flows.hpp"
#include "hodgerank/graph.hpp"
#include "hodgerank/hodge.hpp"
#include "hodgerank/l1.hpp"
#include "hodgerank/markov.hpp"
#include "hodgerank/social_choice.hpp"
#include "oracles.hpp"

#ifdef HODGERANK_HAVE_CLI
#include "cli/io.hpp"
#include "hodgerank/pairwise.hpp"
#endif

namespace {

using namespace hodgerank;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

/// Collects failed checks and a running summary for one criterion.
class Checker {
 public:
  void require(bool ok, const std::string& what) {
    if (!ok) {
      ++failures_;
      if (failures_ <= 3) first_failures_ += (first_failures_.empty() ? "" : "; ") + what;
    }
  }
  void note(const std::string& text) { notes_ += (notes_.empty() ? "" : ", ") + text; }
  Outcome outcome() const {
    Outcome o;
    o.pass = failures_ == 0;
    o.detail = notes_;
    if (failures_ > 0) {
      o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(failures_) +
                  " failed checks: " + first_failures_;
    }
    return o;
  }

 private:
  int failures_ = 0;
  std::string first_failures_;
  std::string notes_;
};

std::string sci(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.3g", v);
  return buffer;
}

double max_abs(const Eigen::VectorXd& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

Eigen::VectorXd uniform_vector(std::mt19937_64& rng, std::size_t n, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  Eigen::VectorXd v(static_cast<Eigen::Index>(n));
  for (Eigen::Index k = 0; k < v.size(); ++k) v[k] = u(rng);
  return v;
}

double weighted_norm(const EdgeFlow& x, const InnerProducts& ip) { return std::sqrt(norm_squared(x, ip)); }

// ---------------------------------------------------------------------------

Outcome currency() {
  Checker check;
  const std::array<const char*, 7> labels{"USD", "JPY", "EUR", "CAD", "GBP", "AUD", "CHF"};
  const double rates[7][7] = {
      {1.0000, 114.6700, 0.6869, 0.9187, 0.4790, 1.0768, 1.1439},
      {0.0087, 1.0000, 0.0060, 0.0080, 0.0042, 0.0094, 0.0100},
      {1.4558, 166.9365, 1.0000, 1.3374, 0.6974, 1.5676, 1.6653},
      {1.0885, 124.8177, 0.7477, 1.0000, 0.5214, 1.1721, 1.2451},
      {2.0875, 239.3791, 1.4340, 1.9178, 1.0000, 2.2478, 2.3879},
      {0.9287, 106.4940, 0.6379, 0.8532, 0.4449, 1.0000, 1.0623},
      {0.8742, 100.2448, 0.6005, 0.8031, 0.4188, 0.9413, 1.0000}};
  const std::array<double, 7> published{1.7097, 0.0149, 2.4890, 1.8610, 3.5691, 1.5878, 1.4946};

  const auto start = Clock::now();
  const ComparisonGraph g(std::vector<std::string>(labels.begin(), labels.end()), [] {
    std::vector<Edge> edges;
    for (Vertex i = 0; i < 7; ++i) {
      for (Vertex j = i + 1; j < 7; ++j) edges.push_back({i, j});
    }
    return edges;
  }(), std::vector<double>(21, 1.0));
  EdgeFlow flow = EdgeFlow::zero(g);
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.edge_count()); ++e) {
    const Edge& ed = g.edge(e);
    flow.values[e] = 0.5 * (std::log(rates[ed.i][ed.j]) - std::log(rates[ed.j][ed.i]));
  }
  const GlobalRanking rank = global_rank(flow, g, InnerProducts::unit(g));
  double worst = 0.0;
  double product = 1.0;
  for (Vertex v = 0; v < 7; ++v) {
    const double equivalent = std::exp(-rank.scores[v]);
    product *= equivalent;
    worst = std::max(worst, std::abs(equivalent - published[static_cast<std::size_t>(v)]));
  }
  const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
  check.require(worst <= 5e-3, "max |equivalent - published| = " + sci(worst));
  check.require(std::abs(product - 1.0) <= 1e-3, "product = " + sci(product));
  check.require(seconds < 1.0, "runtime " + sci(seconds) + " s");
  check.note("max abs error " + sci(worst));
  check.note("|product - 1| " + sci(std::abs(product - 1.0)));
  check.note("runtime " + sci(seconds) + " s");
  return check.outcome();
}

Outcome orthogonality() {
  Checker check;
  std::mt19937_64 rng(20241);
  std::uniform_int_distribution<int> size(2, 12);
  std::uniform_real_distribution<double> density(0.1, 1.0);
  const auto start = Clock::now();
  double worst_pythagoras = 0.0;
  double worst_curl_grad = 0.0;
  double worst_div_curl = 0.0;
  double worst_divergence = 0.0;
  for (int instance = 0; instance < 200; ++instance) {
    ComparisonGraph g;
    do {
      g = oracle::random_graph(rng, size(rng), density(rng), 0.1, 10.0);
    } while (g.edge_count() == 0);
    const CliqueComplex c = triangles(g);
    const InnerProducts ip = InnerProducts::from_graph(g);
    const EdgeFlow y(uniform_vector(rng, g.edge_count(), -5.0, 5.0));
    const HodgeReport r = decompose(y, c, ip);

    const double total = norm_squared(y, ip);
    const double parts = norm_squared(r.gradient_component, ip) + norm_squared(r.curl_component, ip) +
                         norm_squared(r.harmonic_component, ip);
    const double pythagoras = std::abs(total - parts) / total;
    worst_pythagoras = std::max(worst_pythagoras, pythagoras);
    check.require(pythagoras <= 1e-8, "Pythagoras " + sci(pythagoras) + " on instance " + std::to_string(instance));

    const Potential s{uniform_vector(rng, g.vertex_count(), -1.0, 1.0)};
    const double cg = max_abs(curl(grad(s, g), c).values);
    worst_curl_grad = std::max(worst_curl_grad, cg);
    check.require(cg <= 1e-12, "curl grad " + sci(cg));

    const TriangleFlow phi(uniform_vector(rng, c.triangle_count(), -1.0, 1.0));
    const double dc = max_abs(div(curl_adjoint(phi, c, ip), g, ip).values);
    worst_div_curl = std::max(worst_div_curl, dc);
    check.require(dc <= 1e-12, "div curl* " + sci(dc));

    const double rdiv = max_abs(div(residual(y, r.global_scores, g), g, ip).values);
    const double bound = 1e-8 * std::sqrt(total);
    worst_divergence = std::max(worst_divergence, rdiv / std::sqrt(total));
    check.require(rdiv <= bound, "residual divergence " + sci(rdiv));
  }
  const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
  check.require(seconds < 30.0, "runtime " + sci(seconds) + " s");
  check.note("200 instances");
  check.note("Pythagoras " + sci(worst_pythagoras));
  check.note("curl grad " + sci(worst_curl_grad));
  check.note("div curl* " + sci(worst_div_curl));
  check.note("residual div / |Y|_w " + sci(worst_divergence));
  check.note("runtime " + sci(seconds) + " s");
  return check.outcome();
}

Outcome borda() {
  Checker check;
  std::mt19937_64 rng(20242);
  double worst = 0.0;
  int instances = 0;
  for (std::size_t n = 3; n <= 8; ++n) {
    const ComparisonGraph g = ComparisonGraph::complete(n);
    for (int trial = 0; trial < 20; ++trial) {
      const EdgeFlow y(uniform_vector(rng, g.edge_count(), -3.0, 3.0));
      const GlobalRanking r = global_rank(y, g, InnerProducts::unit(g));
      for (Vertex i = 0; i < static_cast<Vertex>(n); ++i) {
        double row = 0.0;
        for (Vertex j = 0; j < static_cast<Vertex>(n); ++j) {
          if (j != i) row += y.at(g, i, j);
        }
        const double gap = std::abs(r.scores[i] + row / static_cast<double>(n));
        worst = std::max(worst, gap);
        check.require(gap <= 1e-10, "n=" + std::to_string(n) + " gap " + sci(gap));
      }
      ++instances;
    }
  }
  check.note(std::to_string(instances) + " instances");
  check.note("max gap " + sci(worst));
  return check.outcome();
}

EdgeFlow cycle_flow(const ComparisonGraph& g, std::size_t n) {
  EdgeFlow x = EdgeFlow::zero(g);
  for (Vertex v = 0; v < static_cast<Vertex>(n); ++v) {
    x.set(g, v, static_cast<Vertex>((static_cast<std::size_t>(v) + 1) % n), 1.0);
  }
  return x;
}

Outcome harmonic_fixtures() {
  Checker check;
  std::vector<Edge> ring;
  for (Vertex v = 0; v < 6; ++v) ring.push_back({std::min<Vertex>(v, (v + 1) % 6), std::max<Vertex>(v, (v + 1) % 6)});
  const ComparisonGraph hexagon = ComparisonGraph::from_edges(6, ring);
  const EdgeFlow hy = cycle_flow(hexagon, 6);
  const InnerProducts hip = InnerProducts::unit(hexagon);
  const HodgeReport h = decompose(hy, triangles(hexagon), hip);
  const double hex_error = weighted_norm(EdgeFlow(h.harmonic_component.values - hy.values), hip);
  check.require(hex_error <= 1e-10, "hexagon not pure harmonic: " + sci(hex_error));
  check.require(h.betti1.value == 1, "hexagon betti1 = " + std::to_string(h.betti1.value));
  check.require(h.cyclicity_ratio && std::abs(*h.cyclicity_ratio - 1.0) <= 1e-10, "hexagon cyclicity ratio");
  check.note("hexagon betti1 " + std::to_string(h.betti1.value) + ", ratio " +
             (h.cyclicity_ratio ? sci(*h.cyclicity_ratio) : std::string("undefined")));

  const ComparisonGraph k3 = ComparisonGraph::complete(3);
  const EdgeFlow ky = cycle_flow(k3, 3);
  const InnerProducts kip = InnerProducts::unit(k3);
  const HodgeReport k = decompose(ky, triangles(k3), kip);
  const double k3_error = weighted_norm(EdgeFlow(k.curl_component.values - ky.values), kip);
  check.require(k3_error <= 1e-10, "K3 not pure curl: " + sci(k3_error));
  check.note("K3 |Y - curl part| " + sci(k3_error));

  std::mt19937_64 rng(20244);
  std::uniform_real_distribution<double> weight(0.1, 10.0);
  double worst = 0.0;
  for (std::size_t n = 3; n <= 10; ++n) {
    for (int trial = 0; trial < 10; ++trial) {
      const ComparisonGraph base = ComparisonGraph::complete(n);
      std::vector<Edge> edges;
      std::vector<double> weights;
      for (EdgeId e = 0; e < static_cast<EdgeId>(base.edge_count()); ++e) {
        edges.push_back(base.edge(e));
        weights.push_back(weight(rng));
      }
      const ComparisonGraph g = ComparisonGraph::from_edges(n, edges, weights);
      const InnerProducts ip = InnerProducts::from_graph(g);
      const EdgeFlow y(uniform_vector(rng, g.edge_count(), -5.0, 5.0));
      const HodgeReport r = decompose(y, triangles(g), ip);
      const double ratio = weighted_norm(r.harmonic_component, ip) / weighted_norm(y, ip);
      worst = std::max(worst, ratio);
      check.require(ratio <= 1e-8, "complete graph harmonic ratio " + sci(ratio));
    }
  }
  check.note("complete graphs |harmonic|/|Y| " + sci(worst));
  return check.outcome();
}

Outcome local_implies_global() {
  Checker check;
  std::mt19937_64 rng(20245);
  std::uniform_int_distribution<int> size(3, 10);
  std::uniform_real_distribution<double> density(0.3, 1.0);
  double worst = 0.0;
  double worst_harmonic = 0.0;
  int built = 0;
  while (built < 50) {
    const ComparisonGraph g = oracle::random_connected_graph(rng, size(rng), density(rng), 0.1, 10.0);
    const CliqueComplex c = triangles(g);
    const auto tris = oracle::brute_force_triangles(g);
    const Eigen::VectorXd zero = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(g.edge_count()));
    if (oracle::dense_hodge(g, tris, zero).betti1 != 0) continue;
    ++built;
    const InnerProducts ip = InnerProducts::from_graph(g);
    const Potential s{uniform_vector(rng, g.vertex_count(), -3.0, 3.0)};
    const EdgeFlow gradient = grad(s, g);
    // Harmonic part of a random flow, by the dense oracle; zero when betti1 = 0.
    const EdgeFlow noise(uniform_vector(rng, g.edge_count(), -1.0, 1.0));
    const Eigen::VectorXd harmonic = oracle::dense_hodge(g, tris, noise.values).harmonic;
    worst_harmonic = std::max(worst_harmonic, max_abs(harmonic));
    check.require(max_abs(harmonic) <= 1e-12, "nonzero harmonic part " + sci(max_abs(harmonic)));
    const EdgeFlow y(gradient.values + harmonic);
    check.require(max_abs(curl(y, c).values) <= 1e-12 * std::max(1.0, max_abs(y.values)), "flow is not curl-free");

    const HodgeReport r = decompose(y, c, ip);
    check.require(r.betti1.value == 0, "library betti1 disagrees with the oracle");
    const double mass = weighted_norm(EdgeFlow(y.values - r.gradient_component.values), ip) / weighted_norm(y, ip);
    worst = std::max(worst, mass);
    check.require(mass <= 1e-8, "non-gradient mass " + sci(mass));
  }
  check.note("50 complexes with betti1 = 0");
  check.note("max harmonic " + sci(worst_harmonic));
  check.note("max non-gradient mass " + sci(worst));
  return check.outcome();
}

Outcome lp_duality() {
  Checker check;
  std::mt19937_64 rng(20246);
  std::uniform_int_distribution<int> size(2, 10);
  std::uniform_real_distribution<double> density(0.3, 1.0);
  double worst_gap = 0.0;
  double worst_feasibility = 0.0;
  for (int instance = 0; instance < 100; ++instance) {
    ComparisonGraph g;
    do {
      g = oracle::random_graph(rng, size(rng), density(rng), 0.1, 10.0);
    } while (g.edge_count() == 0);
    const InnerProducts ip = InnerProducts::from_graph(g);
    const EdgeFlow y(uniform_vector(rng, g.edge_count(), -5.0, 5.0));
    const std::string tag = " on instance " + std::to_string(instance);

    const LpSolution primal = l1_project_gradient(y, g, ip);
    const LpSolution dual = l1_dual_gradient(y, g, ip);
    check.require(primal.optimal() && dual.optimal(), "projection LP not optimal" + tag);
    if (primal.optimal() && dual.optimal()) {
      const double scale = std::max(1.0, std::abs(primal.primal_objective));
      const double gap = std::abs(primal.primal_objective - dual.dual_objective) / scale;
      const double feasibility = std::max(dual.dual_box_violation, dual.dual_equality_residual);
      worst_gap = std::max(worst_gap, gap);
      worst_feasibility = std::max(worst_feasibility, feasibility);
      check.require(gap <= 1e-6, "projection gap " + sci(gap) + tag);
      check.require(feasibility <= 1e-8, "projection dual feasibility " + sci(feasibility) + tag);
    }

    const CliqueComplex c = triangles(g);
    const HodgeReport report = decompose(y, c, ip);
    const EdgeFlow r = residual(y, report.global_scores, g);
    const LpSolution sparse = l1_sparse_cyclic(r, c, ip);
    const LpSolution sparse_dual = l1_dual_sparse(r, c, ip);
    check.require(sparse.optimal() && sparse_dual.optimal(), "sparse LP not optimal" + tag);
    if (sparse.optimal() && sparse_dual.optimal()) {
      const double scale = std::max(1.0, std::abs(sparse.primal_objective));
      const double gap = std::abs(sparse.primal_objective - sparse_dual.dual_objective) / scale;
      const double feasibility = std::max(sparse_dual.dual_box_violation, sparse_dual.dual_equality_residual);
      worst_gap = std::max(worst_gap, gap);
      worst_feasibility = std::max(worst_feasibility, feasibility);
      check.require(gap <= 1e-6, "sparse gap " + sci(gap) + tag);
      check.require(feasibility <= 1e-8, "sparse dual feasibility " + sci(feasibility) + tag);
    }
  }

  const ComparisonGraph k3 = ComparisonGraph::complete(3);
  const EdgeFlow cyclic = cycle_flow(k3, 3);
  const InnerProducts unit = InnerProducts::unit(k3);
  const LpSolution p = l1_project_gradient(cyclic, k3, unit);
  const LpSolution d = l1_dual_gradient(cyclic, k3, unit);
  check.require(p.optimal() && p.primal_objective == 3.0, "K3 primal " + sci(p.primal_objective));
  check.require(d.optimal() && d.dual_objective == 3.0, "K3 dual " + sci(d.dual_objective));
  check.note("100 instances, both LP pairs");
  check.note("max relative gap " + sci(worst_gap));
  check.note("max dual residual " + sci(worst_feasibility));
  check.note("K3 primal " + sci(p.primal_objective) + " dual " + sci(d.dual_objective));
  return check.outcome();
}

// Sum of Kendall distances from `order` to every voter, counted pair by pair.
std::int64_t kemeny_cost_direct(const std::vector<Vertex>& order, const VotingProfile& profile) {
  const std::size_t n = order.size();
  std::vector<std::size_t> pos(n);
  for (std::size_t k = 0; k < n; ++k) pos[static_cast<std::size_t>(order[k])] = k;
  std::int64_t cost = 0;
  for (const RankOrder& voter : profile.orders()) {
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        const Vertex x = voter[a];
        const Vertex y = voter[b];
        if (pos[static_cast<std::size_t>(x)] > pos[static_cast<std::size_t>(y)]) ++cost;
      }
    }
  }
  return cost;
}

Outcome order_equivalences() {
  Checker check;
  std::mt19937_64 rng(20247);
  int instances = 0;
  double worst_identity = 0.0;
  for (std::size_t n = 2; n <= 5; ++n) {
    for (std::size_t m = 1; m <= 4; ++m) {
      for (int trial = 0; trial < 5; ++trial) {
        std::vector<RankOrder> voters;
        for (std::size_t k = 0; k < m; ++k) {
          std::vector<Vertex> items(n);
          std::iota(items.begin(), items.end(), 0);
          std::shuffle(items.begin(), items.end(), rng);
          voters.emplace_back(items);
        }
        const VotingProfile profile(voters);
        const OrderEquivalenceReport t = order_equivalence_crosscheck(profile);
        const std::string tag = " (n=" + std::to_string(n) + ", m=" + std::to_string(m) + ")";

        std::vector<Vertex> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::int64_t best = std::numeric_limits<std::int64_t>::max();
        std::vector<RankOrder> argmin;
        do {
          const std::int64_t cost = kemeny_cost_direct(perm, profile);
          if (cost < best) {
            best = cost;
            argmin.clear();
          }
          if (cost == best) argmin.emplace_back(perm);
        } while (std::next_permutation(perm.begin(), perm.end()));

        const double fas = min_feedback_arc(WeightedDigraph::from_pairwise(profile.pairwise())).cost;
        check.require(t.kemeny_min == static_cast<double>(best), "Kemeny cost vs enumeration" + tag);
        check.require(t.kemeny_argmin == argmin, "Kemeny optima vs enumeration" + tag);
        check.require(std::abs(t.kemeny_min - (t.l1_min + t.kemeny_offset)) <= 1e-9, "Kemeny vs l1 over orders" + tag);
        check.require(std::abs(t.l1_min - t.feedback_arc_min) <= 1e-9, "l1 vs feedback arc" + tag);
        check.require(std::abs(t.feedback_arc_min - fas) <= 1e-9, "feedback arc vs digraph search" + tag);
        check.require(std::abs(t.least_squares_min - 4.0 * t.kemeny_min) <= 1e-9, "least squares vs Kemeny" + tag);
        check.require(t.kemeny_argmin == t.least_squares_argmin && t.kemeny_argmin == t.feedback_arc_argmin,
                      "argmin sets differ" + tag);
        check.require(t.consistent(), "cross-check reports inconsistency" + tag);
        worst_identity = std::max(worst_identity, t.max_identity_error);
        ++instances;
      }
    }
  }
  check.require(instances >= 50, "only " + std::to_string(instances) + " profiles");

  const ComparisonGraph k4 = ComparisonGraph::complete(4);
  int flows = 0;
  for (unsigned bits = 0; bits < 64U; ++bits) {
    EdgeFlow x = EdgeFlow::zero(k4);
    for (Eigen::Index e = 0; e < 6; ++e) x.values[e] = (bits >> e) & 1U ? 1.0 : -1.0;
    std::int64_t direct = 0;
    for (Vertex i = 0; i < 4; ++i) {
      for (Vertex j = i + 1; j < 4; ++j) {
        for (Vertex k = j + 1; k < 4; ++k) {
          const double a = x.at(k4, i, j);
          if (a == x.at(k4, j, k) && a == x.at(k4, k, i)) ++direct;
        }
      }
    }
    const CircularTriads triads = circular_triads(x, k4);
    check.require(triads.closed_form == direct && triads.direct == direct,
                  "circular triads for bits " + std::to_string(bits));
    ++flows;
  }
  check.note(std::to_string(instances) + " profiles (n <= 5, m <= 4)");
  check.note("max identity error " + sci(worst_identity));
  check.note(std::to_string(flows) + " binary K4 flows");
  return check.outcome();
}

Outcome markov() {
  Checker check;
  std::mt19937_64 rng(20248);
  std::uniform_real_distribution<double> u(0.05, 3.0);
  double worst_relative = 0.0;
  int chains = 0;
  for (int n = 2; n <= 8; ++n) {
    for (int trial = 0; trial < 6; ++trial) {
      Eigen::MatrixXd c(n, n);
      for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) c(i, j) = c(j, i) = u(rng);
      }
      const Eigen::VectorXd rows = c.rowwise().sum();
      const Eigen::VectorXd pi = rows / rows.sum();
      const TransitionMatrix p(rows.cwiseInverse().asDiagonal() * c);
      const ReversibleRank rank = reversible_rank(p, 1);
      const double relative = ((rank.distribution - pi).array() / pi.array()).abs().maxCoeff();
      const double tau = kendall_tau_distance(order_by_scores(rank.distribution), order_by_scores(pi), true);
      worst_relative = std::max(worst_relative, relative);
      check.require(relative <= 1e-6, "relative error " + sci(relative) + " at n=" + std::to_string(n));
      check.require(tau == 0.0, "tau " + sci(tau) + " at n=" + std::to_string(n));
      ++chains;
    }
  }

  const std::vector<Eigen::MatrixXd> links{
      (Eigen::MatrixXd(5, 5) << 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1, 1, 1, 0, 0, 0).finished(),
      (Eigen::MatrixXd(5, 5) << 0, 3, 1, 0, 0, 0, 0, 2, 0, 1, 1, 0, 0, 4, 0, 2, 0, 0, 0, 1, 0, 0, 5, 1, 0).finished(),
      (Eigen::MatrixXd(5, 5) << 0, 2, 1, 0, 1, 1, 0, 0, 3, 0, 0, 1, 0, 0, 2, 1, 0, 1, 0, 0, 0, 0, 3, 1, 0).finished()};
  std::string profile;
  for (std::size_t chain = 0; chain < links.size(); ++chain) {
    const TransitionMatrix p = pagerank_transition(LinkMatrix(links[chain]), 0.85);
    const StationaryDistribution pagerank = stationary_distribution(p);
    check.require(pagerank.converged, "power iteration did not converge on chain " + std::to_string(chain));
    const Eigen::MatrixXd balance = pagerank.pi.asDiagonal() * p.matrix();
    check.require((balance - balance.transpose()).cwiseAbs().maxCoeff() > 1e-3,
                  "chain " + std::to_string(chain) + " is reversible");
    const RankOrder target = order_by_scores(pagerank.pi);
    profile += (profile.empty() ? "" : " | ") + std::string("chain ") + std::to_string(chain) + ":";
    double at64 = -1.0;
    for (int k = 1; k <= 64; k *= 2) {
      const double tau = kendall_tau_distance(order_by_scores(reversible_rank(p, k).scores.values), target, true);
      profile += " " + sci(tau);
      if (k == 64) at64 = tau;
    }
    check.require(at64 == 0.0, "chain " + std::to_string(chain) + " tau at k=64 is " + sci(at64));
  }
  check.note(std::to_string(chains) + " reversible chains, max relative error " + sci(worst_relative));
  check.note("tau at k = 1,2,...,64: " + profile);
  return check.outcome();
}

Outcome substitution(const std::vector<Outcome>& backing) {
  Checker check;
  for (std::size_t k = 1; k < backing.size(); ++k) {
    check.require(backing[k].pass, "criterion " + std::to_string(k + 1) + " failed");
  }
#ifdef HODGERANK_HAVE_CLI
  // Synthetic rating tables in the ingestion schema, one with periods.
  std::mt19937_64 rng(20249);
  std::uniform_real_distribution<double> score(1.0, 5.0);
  std::bernoulli_distribution rated(0.5);
  int tables = 0;
  for (int instance = 0; instance < 20; ++instance) {
    const bool periods = instance % 2 == 1;
    std::string text = periods ? "voter,item,score,period\n" : "voter,item,score\n";
    for (int voter = 0; voter < 30; ++voter) {
      for (int item = 0; item < 8; ++item) {
        if (!rated(rng)) continue;
        text += "u" + std::to_string(voter) + ",movie" + std::to_string(item) + "," +
                cli::format_double(std::round(score(rng))) + (periods ? (voter % 3 == 0 ? ",2005\n" : ",2006\n") : "\n");
      }
    }
    const cli::RatingsFile file = cli::parse_ratings_csv(text);
    for (const Statistic s : {Statistic::difference, Statistic::ratio, Statistic::binary, Statistic::logodds}) {
      const AggregationResult result = aggregate(file.table, {s, periods});
      check.require(result.rejected.empty(), "rejected records in a positive table");
      const std::string csv = cli::write_pairwise_csv(result.pairwise);
      const PairwiseData back = cli::parse_pairwise_csv(csv);
      check.require(cli::write_pairwise_csv(back) == csv, "pairwise CSV does not round-trip");
      bool identical = back.entries.size() == result.pairwise.entries.size();
      for (std::size_t k = 0; identical && k < back.entries.size(); ++k) {
        const auto& a = back.entries[k];
        const auto& b = result.pairwise.entries[k];
        identical = back.labels[static_cast<std::size_t>(a.i)] == result.pairwise.labels[static_cast<std::size_t>(b.i)] &&
                    back.labels[static_cast<std::size_t>(a.j)] == result.pairwise.labels[static_cast<std::size_t>(b.j)] &&
                    std::memcmp(&a.weight, &b.weight, sizeof(double)) == 0 &&
                    std::memcmp(&a.flow, &b.flow, sizeof(double)) == 0;
      }
      check.require(identical, "round-trip is not bit-identical");
      const ComparisonGraph g = build_graph(back);
      EdgeFlow y = EdgeFlow::zero(g);
      for (const auto& entry : back.entries) {
        if (entry.weight > 0.0) y.set(g, entry.i, entry.j, entry.flow);
      }
      const HodgeReport r = decompose(y, triangles(g), InnerProducts::from_graph(g));
      check.require(r.checks.pythagoras_relative_error <= 1e-8, "decomposition of ingested data");
    }
    ++tables;
  }
  check.note("dataset tables unavailable; substituted by criteria 2-8 and " + std::to_string(tables) +
             " synthetic rating tables round-tripped bit-identically");
#else
  check.require(false, "ingestion round-trip needs the CLI module, which is not built");
#endif
  return check.outcome();
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"currency universal equivalents", currency},
      {"orthogonality suite", orthogonality},
      {"Borda equivalence on complete graphs", borda},
      {"harmonic fixtures", harmonic_fixtures},
      {"locally consistent implies globally consistent", local_implies_global},
      {"l1 LP duality", lp_duality},
      {"Kemeny, feedback arc and l1 order equivalences", order_equivalences},
      {"Markov chain rankings", markov},
  };
  std::vector<Outcome> outcomes;
  bool all = true;
  auto report = [&](std::size_t index, const char* name, const Outcome& o) {
    std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", index, name, o.detail.c_str());
    std::fflush(stdout);
    all = all && o.pass;
  };
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k].run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    outcomes.push_back(o);
    report(k + 1, criteria[k].name, o);
  }
  Outcome substituted;
  try {
    substituted = substitution(outcomes);
  } catch (const std::exception& e) {
    substituted.pass = false;
    substituted.detail = std::string("exception: ") + e.what();
  }
  report(9, "dataset tables (substituted)", substituted);
  return all ? 0 : 1;
}
