#include "cli/commands.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <set>

#include "cli/io.hpp"
#include "cli/report.hpp"
#include "hodgerank/errors.hpp"
#include "hodgerank/hodge.hpp"
#include "hodgerank/l1.hpp"
#include "hodgerank/markov.hpp"
#include "hodgerank/social_choice.hpp"

namespace hodgerank::cli {

namespace {

// Exchange rates as published by a currency converter (one unit of the row
// currency in units of the column currency), four decimals.
constexpr std::string_view kCurrencyRates =
    ",USD,JPY,EUR,CAD,GBP,AUD,CHF\n"
    "USD,1.0000,114.6700,0.6869,0.9187,0.4790,1.0768,1.1439\n"
    "JPY,0.0087,1.0000,0.0060,0.0080,0.0042,0.0094,0.0100\n"
    "EUR,1.4558,166.9365,1.0000,1.3374,0.6974,1.5676,1.6653\n"
    "CAD,1.0885,124.8177,0.7477,1.0000,0.5214,1.1721,1.2451\n"
    "GBP,2.0875,239.3791,1.4340,1.9178,1.0000,2.2478,2.3879\n"
    "AUD,0.9287,106.4940,0.6379,0.8532,0.4449,1.0000,1.0623\n"
    "CHF,0.8742,100.2448,0.6005,0.8031,0.4188,0.9413,1.0000\n";

constexpr std::array<double, 7> kReferenceEquivalents{1.7097, 0.0149, 2.4890, 1.8610,
                                                      3.5691, 1.5878, 1.4946};

struct LoadedFlow {
  ComparisonGraph graph;
  EdgeFlow flow;
};

LoadedFlow load_pairwise(const PairwiseData& data) {
  LoadedFlow out;
  out.graph = build_graph(data);
  if (out.graph.vertex_count() == 0) throw InputError("no comparisons in the pairwise file");
  out.flow = EdgeFlow::zero(out.graph);
  for (const auto& entry : data.entries) {
    if (entry.weight > 0.0) out.flow.set(out.graph, entry.i, entry.j, entry.flow);
  }
  return out;
}

HodgeOptions hodge_options(const Limits& limits) {
  HodgeOptions options;
  options.solver.max_iterations = limits.max_iterations;
  return options;
}

SimplexOptions simplex_options(const Limits& limits) {
  SimplexOptions options;
  options.max_iterations = limits.max_iterations;
  return options;
}

Json gamma_json(double gamma) {
  if (std::isinf(gamma)) return nullptr;
  return gamma;
}

void require_optimal(const LpSolution& solution, const char* what) {
  if (!solution.optimal()) {
    throw SolverError(std::string(what) + " linear program ended with status " +
                          std::string(to_string(solution.status)),
                      solution.iterations, 0.0);
  }
}

std::vector<std::string> label_sequence(const RankOrder& order,
                                        const std::vector<std::string>& labels) {
  std::vector<std::string> out;
  for (Vertex v : order.items()) out.push_back(labels[static_cast<std::size_t>(v)]);
  return out;
}

Json orders_json(const std::vector<RankOrder>& orders, const std::vector<std::string>& labels) {
  Json out = Json::array();
  for (const auto& order : orders) out.push_back(label_sequence(order, labels));
  return out;
}

void warn_components(const HodgeReport& report, std::vector<std::string>& warnings) {
  if (report.multi_component()) {
    warnings.push_back("comparison graph has " + std::to_string(report.components.count()) +
                       " connected components; scores are comparable only within a component");
  }
  if (report.betti1.rank_ambiguous) {
    warnings.push_back("curl matrix rank is numerically ambiguous; betti1 may be off by one");
  }
}

}  // namespace

Limits limits_from_environment() {
  Limits limits;
  if (const char* raw = std::getenv("HODGERANK_MAX_ITER"); raw != nullptr && *raw != '\0') {
    const double value = parse_double(raw, "HODGERANK_MAX_ITER");
    if (value < 1.0 || value > 1e9 || value != std::floor(value)) {
      throw InputError("HODGERANK_MAX_ITER must be a positive integer");
    }
    limits.max_iterations = static_cast<int>(value);
  }
  return limits;
}

CommandOutput cmd_aggregate(const std::string& ratings_text, const AggregateOptions& options) {
  CommandOutput out;
  const RatingsFile file = parse_ratings_csv(ratings_text);
  if (file.table.empty()) {
    out.warnings.push_back("no ratings in input; wrote an empty pairwise file");
    out.document = write_pairwise_csv({});
    return out;
  }
  AggregationResult result = aggregate(file.table, {options.statistic, options.group_by_period});
  if (!result.rejected.empty()) {
    std::string message = "records violate the " + std::string(to_string(options.statistic)) +
                          " statistic's precondition:";
    for (const auto& rejected : result.rejected) {
      message += "\n  line " + std::to_string(file.lines[rejected.index]) + ": " + rejected.reason;
    }
    throw InputError(message);
  }

  // Items that were never compared do not appear in the pairwise file.
  PairwiseData& data = result.pairwise;
  std::vector<bool> used(data.labels.size(), false);
  for (const auto& entry : data.entries) {
    used[static_cast<std::size_t>(entry.i)] = true;
    used[static_cast<std::size_t>(entry.j)] = true;
  }
  std::vector<Vertex> remap(data.labels.size(), -1);
  std::vector<std::string> kept;
  for (std::size_t v = 0; v < data.labels.size(); ++v) {
    if (used[v]) {
      remap[v] = static_cast<Vertex>(kept.size());
      kept.push_back(data.labels[v]);
    } else {
      out.warnings.push_back("item '" + data.labels[v] + "' has no comparisons and is omitted");
    }
  }
  for (auto& entry : data.entries) {
    entry.i = remap[static_cast<std::size_t>(entry.i)];
    entry.j = remap[static_cast<std::size_t>(entry.j)];
  }
  data.labels = std::move(kept);
  if (!result.smoothed_pairs.empty()) {
    out.warnings.push_back(std::to_string(result.smoothed_pairs.size()) +
                           " pairs needed add-one smoothing for the log-odds statistic");
  }
  if (data.entries.empty()) out.warnings.push_back("no item pair was co-rated; pairwise file is empty");
  out.document = write_pairwise_csv(data);
  return out;
}

CommandOutput cmd_decompose(const std::string& pairwise_text, const DecomposeOptions& options) {
  CommandOutput out;
  const LoadedFlow loaded = load_pairwise(parse_pairwise_csv(pairwise_text));
  const CliqueComplex complex =
      gamma_subcomplex(triangles(loaded.graph), loaded.flow, options.gamma);
  const InnerProducts ip = InnerProducts::from_graph(loaded.graph);
  const HodgeReport report = decompose(loaded.flow, complex, ip, hodge_options(options.limits));

  Json doc = envelope("decompose", pairwise_text);
  doc["parameters"] = {{"gamma", gamma_json(options.gamma)}, {"topk_curls", options.topk_curls}};
  doc.update(decomposition_json(report, loaded.flow, complex, ip, options.topk_curls));
  warn_components(report, out.warnings);
  doc["warnings"] = out.warnings;
  out.document = render(doc);
  return out;
}

CommandOutput cmd_l1(const std::string& pairwise_text, const L1Options& options) {
  CommandOutput out;
  const LoadedFlow loaded = load_pairwise(parse_pairwise_csv(pairwise_text));
  const auto& graph = loaded.graph;
  const InnerProducts ip = InnerProducts::from_graph(graph);
  const SimplexOptions lp_options = simplex_options(options.limits);

  Json doc = envelope("l1", pairwise_text);
  doc["labels"] = graph.labels();
  if (options.mode == L1Mode::project) {
    doc["parameters"] = {{"mode", "project"}};
    const LpSolution primal = l1_project_gradient(loaded.flow, graph, ip, lp_options);
    require_optimal(primal, "l1 projection");
    const LpSolution dual = l1_dual_gradient(loaded.flow, graph, ip, lp_options);
    require_optimal(dual, "l1 projection dual");
    doc["global_scores"] = ranked_scores(graph.labels(), primal.potential.values);
    doc["primal"] = lp_json(primal);
    doc["dual"] = lp_json(dual);
    doc["cross_route_gap"] = std::abs(primal.primal_objective - dual.dual_objective);
    std::vector<EdgeId> all(graph.edge_count());
    std::iota(all.begin(), all.end(), 0);
    doc["dual_flow"] = edge_list(graph, dual.dual, all);
    doc["residual_support"] = edge_list(graph, primal.generator, primal.support);
  } else {
    const CliqueComplex complex = gamma_subcomplex(triangles(graph), loaded.flow, options.gamma);
    doc["parameters"] = {{"mode", "sparse-cycles"}, {"gamma", gamma_json(options.gamma)}};
    const HodgeReport report = decompose(loaded.flow, complex, ip, hodge_options(options.limits));
    const EdgeFlow r = residual(loaded.flow, report.global_scores, graph);
    const LpSolution primal = l1_sparse_cyclic(r, complex, ip, lp_options);
    require_optimal(primal, "sparse cycle");
    const LpSolution dual = l1_dual_sparse(r, complex, ip, lp_options);
    require_optimal(dual, "sparse cycle dual");
    const double scale = r.values.size() == 0 ? 0.0 : r.values.cwiseAbs().maxCoeff();
    std::size_t harmonic_support = 0;
    for (Eigen::Index e = 0; e < report.harmonic_component.values.size(); ++e) {
      if (std::abs(report.harmonic_component.values[e]) > 1e-9 * std::max(1.0, scale)) {
        ++harmonic_support;
      }
    }
    doc["complex"] = {{"vertices", graph.vertex_count()},
                      {"edges", graph.edge_count()},
                      {"triangles", complex.triangle_count()}};
    doc["primal"] = lp_json(primal);
    doc["dual"] = lp_json(dual);
    doc["cross_route_gap"] = std::abs(primal.primal_objective - dual.dual_objective);
    doc["generator"] = {{"support_size", primal.support.size()},
                        {"harmonic_support_size", harmonic_support},
                        {"edges", edge_list(graph, primal.generator, primal.support)}};
    warn_components(report, out.warnings);
  }
  doc["warnings"] = out.warnings;
  out.document = render(doc);
  return out;
}

CommandOutput cmd_kemeny(const std::string& text, const Limits& limits) {
  CommandOutput out;
  Json doc = envelope("kemeny", text);
  if (header_line(text) == "voter,order") {
    const VotingProfile profile = parse_profile_csv(text);
    const auto& labels = profile.labels();
    if (profile.alternatives() > kMaxEnumeration) {
      throw InputError("refusing Kemeny optimization over " + std::to_string(profile.alternatives()) +
                       " alternatives; the exhaustive search is capped at " +
                       std::to_string(kMaxEnumeration));
    }
    doc["input_kind"] = "profile";
    doc["labels"] = labels;
    doc["voters"] = profile.voters();
    if (profile.voters() == 0) throw InputError("profile has no voters");
    const KemenyResult kemeny = kemeny_optimize(profile);
    doc["kemeny"] = {{"cost", kemeny.cost}, {"optima", orders_json(kemeny.optima, labels)}};
    doc["borda"] = ranked_scores(labels, borda_count(profile).values);

    const LoadedFlow loaded = load_pairwise(profile.pairwise());
    const GlobalRanking hodge = global_rank(loaded.flow, loaded.graph,
                                            InnerProducts::from_graph(loaded.graph),
                                            hodge_options(limits));
    doc["hodge"] = ranked_scores(labels, hodge.scores.values);

    if (profile.alternatives() <= kMaxCrosscheck) {
      const OrderEquivalenceReport equivalence = order_equivalence_crosscheck(profile);
      doc["equivalences"] = {{"least_squares_min", equivalence.least_squares_min},
                             {"least_squares_constant", equivalence.least_squares_constant},
                             {"correlation_max", equivalence.correlation_max},
                             {"l1_transitive_min", equivalence.l1_min},
                             {"feedback_arc_min", equivalence.feedback_arc_min},
                             {"kemeny_min", equivalence.kemeny_min},
                             {"kemeny_offset", equivalence.kemeny_offset},
                             {"max_identity_error", equivalence.max_identity_error},
                             {"consistent", equivalence.consistent()}};
      if (!equivalence.consistent()) out.warnings.push_back("equivalence cross-check disagrees");
    } else {
      out.warnings.push_back("equivalence cross-check skipped above " +
                             std::to_string(kMaxCrosscheck) + " alternatives");
    }
  } else {
    const PairwiseData data = parse_pairwise_csv(text);
    if (data.labels.size() > kMaxEnumeration) {
      throw InputError("refusing Kemeny optimization over " + std::to_string(data.labels.size()) +
                       " alternatives; the exhaustive search is capped at " +
                       std::to_string(kMaxEnumeration));
    }
    doc["input_kind"] = "pairwise";
    doc["labels"] = data.labels;
    const KemenyResult kemeny = kemeny_optimize(data);
    doc["kemeny"] = {{"cost", kemeny.cost}, {"optima", orders_json(kemeny.optima, data.labels)}};
    const FeedbackArcSet fas = min_feedback_arc(WeightedDigraph::from_pairwise(data));
    Json arcs = Json::array();
    for (const Arc& arc : fas.arcs) {
      arcs.push_back({{"from", data.labels[static_cast<std::size_t>(arc.from)]},
                      {"to", data.labels[static_cast<std::size_t>(arc.to)]},
                      {"weight", arc.weight}});
    }
    doc["feedback_arc_set"] = {{"cost", fas.cost}, {"arcs", std::move(arcs)}};
  }
  doc["warnings"] = out.warnings;
  out.document = render(doc);
  return out;
}

CommandOutput cmd_markov(const std::string& links_text, const MarkovOptions& options) {
  CommandOutput out;
  const LinkFile file = parse_links_csv(links_text);
  const auto& labels = file.labels;
  if (labels.empty()) throw InputError("link file names no sites");
  const TransitionMatrix p = pagerank_transition(file.links, options.alpha);

  StationaryOptions stationary_options;
  if (options.limits.max_iterations > 0) stationary_options.max_iterations = options.limits.max_iterations;
  const StationaryDistribution pagerank = stationary_distribution(p, stationary_options);
  if (!pagerank.converged) {
    throw SolverError("power iteration did not converge", pagerank.iterations, pagerank.residual);
  }

  std::string digest_input = links_text;
  for (const auto& [name, text] : options.external) digest_input += "\n" + name + "\n" + text;
  Json doc = envelope("markov", digest_input);
  doc["parameters"] = {{"alpha", options.alpha}, {"power_k", options.power_k}};
  doc["labels"] = labels;
  doc["pagerank"] = {{"iterations", pagerank.iterations},
                     {"residual", pagerank.residual},
                     {"distribution", ranked_scores(labels, pagerank.pi)}};

  std::vector<std::pair<std::string, RankOrder>> rankings;
  rankings.emplace_back("pagerank", order_by_scores(pagerank.pi));

  Json hodge = Json::array();
  for (int k : options.power_k) {
    if (k < 1) throw InputError("--power-k values must be positive");
    const ReversibleRank rr = reversible_rank(p, k, hodge_options(options.limits));
    Json omitted = Json::array();
    for (const Edge& e : rr.omitted) {
      omitted.push_back({labels[static_cast<std::size_t>(e.i)], labels[static_cast<std::size_t>(e.j)]});
    }
    if (!rr.omitted.empty()) {
      out.warnings.push_back("k=" + std::to_string(k) + ": " + std::to_string(rr.omitted.size()) +
                             " pairs omitted because a transition probability is zero");
    }
    hodge.push_back({{"k", k},
                     {"scores", ranked_scores(labels, rr.scores.values)},
                     {"distribution", ranked_scores(labels, rr.distribution)},
                     {"omitted_pairs", std::move(omitted)},
                     {"solve", diagnostics_json(rr.diagnostics)}});
    rankings.emplace_back("hodge_k" + std::to_string(k), order_by_scores(rr.distribution));
  }
  doc["hodge"] = std::move(hodge);

  for (const auto& [name, text] : options.external) {
    const auto scores = parse_scores_csv(text);
    Eigen::VectorXd values = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(labels.size()),
                                                       std::numeric_limits<double>::quiet_NaN());
    for (const auto& [item, score] : scores) {
      const auto it = std::lower_bound(labels.begin(), labels.end(), item);
      if (it == labels.end() || *it != item) {
        throw InputError("external ranking '" + name + "' names unknown site '" + item + "'");
      }
      values[it - labels.begin()] = score;
    }
    if (static_cast<std::size_t>(scores.size()) != labels.size()) {
      throw InputError("external ranking '" + name + "' does not cover every site");
    }
    rankings.emplace_back(name, order_by_scores(values));
  }

  Json names = Json::array();
  Json matrix = Json::array();
  for (const auto& [name_a, order_a] : rankings) {
    names.push_back(name_a);
    Json row = Json::array();
    for (const auto& entry : rankings) row.push_back(kendall_tau_distance(order_a, entry.second, true));
    matrix.push_back(std::move(row));
  }
  doc["kendall_tau"] = {{"rankings", std::move(names)}, {"normalized", std::move(matrix)}};
  doc["warnings"] = out.warnings;
  out.document = render(doc);
  return out;
}

CommandOutput cmd_demo(const std::string& name, const std::optional<std::string>& rates_text,
                       const Limits& limits) {
  if (name != "currency") throw InputError("unknown demo '" + name + "'; available: currency");
  CommandOutput out;
  const std::string text = rates_text ? *rates_text : std::string(kCurrencyRates);
  const RateTable table = parse_rate_matrix_csv(text);
  const std::size_t n = table.labels.size();
  if (n < 2) throw InputError("rate table needs at least two currencies");

  // The published table is only approximately reciprocal; the flow takes the
  // skew part of the log rates.
  const ComparisonGraph graph(table.labels, [&] {
    std::vector<Edge> edges;
    for (Vertex i = 0; i < static_cast<Vertex>(n); ++i) {
      for (Vertex j = i + 1; j < static_cast<Vertex>(n); ++j) edges.push_back({i, j});
    }
    return edges;
  }(), std::vector<double>(n * (n - 1) / 2, 1.0));
  EdgeFlow flow = EdgeFlow::zero(graph);
  for (EdgeId e = 0; e < static_cast<EdgeId>(graph.edge_count()); ++e) {
    const Edge& ed = graph.edge(e);
    flow.values[e] = 0.5 * (std::log(table.rates(ed.i, ed.j)) - std::log(table.rates(ed.j, ed.i)));
  }
  const CliqueComplex complex = triangles(graph);
  const InnerProducts ip = InnerProducts::unit(graph);
  const HodgeReport report = decompose(flow, complex, ip, hodge_options(limits));

  Json doc = envelope("demo", text);
  doc["demo"] = "currency";
  doc["labels"] = table.labels;
  Json rows = Json::array();
  double product = 1.0;
  const bool bundled = table.labels == std::vector<std::string>{"USD", "JPY", "EUR", "CAD", "GBP", "AUD", "CHF"};
  double max_error = 0.0;
  for (std::size_t v = 0; v < n; ++v) {
    const double equivalent = std::exp(-report.global_scores[static_cast<Vertex>(v)]);
    product *= equivalent;
    Json row = {{"currency", table.labels[v]}, {"universal_equivalent", equivalent}};
    if (bundled) {
      row["reference"] = kReferenceEquivalents[v];
      max_error = std::max(max_error, std::abs(equivalent - kReferenceEquivalents[v]));
    }
    rows.push_back(std::move(row));
  }
  doc["universal_equivalents"] = std::move(rows);
  doc["product_of_equivalents"] = product;
  if (bundled) doc["max_abs_error_vs_reference"] = max_error;
  const TriangleFlow c = curl(flow, complex);
  doc["max_abs_curl"] = c.values.size() == 0 ? 0.0 : c.values.cwiseAbs().maxCoeff();
  doc["cyclicity_ratio"] = maybe_number(report.cyclicity_ratio);
  doc["squared_norms"] = {{"input", report.norms.input},
                          {"gradient", report.norms.gradient},
                          {"curl", report.norms.curl},
                          {"harmonic", report.norms.harmonic}};
  doc["warnings"] = out.warnings;
  out.document = render(doc);
  return out;
}

std::string_view bundled_currency_rates() { return kCurrencyRates; }

}  // namespace hodgerank::cli
