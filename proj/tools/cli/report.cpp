#include "cli/report.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <ctime>
#include <numeric>

#include <openssl/evp.h>

#include "cli/commands.hpp"
#include "hodgerank/errors.hpp"

namespace hodgerank::cli {

std::string sha256_hex(std::string_view bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &length, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * length);
  for (unsigned int k = 0; k < length; ++k) {
    out += kHex[digest[k] >> 4U];
    out += kHex[digest[k] & 0xFU];
  }
  return out;
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buffer[32];
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buffer;
}

Json envelope(std::string_view command, std::string_view input_bytes) {
  Json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
  doc["command"] = command;
  doc["generated_at"] = utc_timestamp();
  doc["input_digest"] = {{"algorithm", "sha256"}, {"value", sha256_hex(input_bytes)}};
  return doc;
}

Json maybe_number(const std::optional<double>& value) {
  if (value && std::isfinite(*value)) return {{"defined", true}, {"value", *value}};
  return {{"defined", false}, {"value", nullptr}};
}

Json diagnostics_json(const SolverDiagnostics& d) {
  return {{"iterations", d.iterations},
          {"relative_residual", d.relative_residual},
          {"converged", d.converged}};
}

Json ranked_scores(const std::vector<std::string>& labels, const Eigen::VectorXd& scores) {
  std::vector<std::size_t> order(labels.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double sa = scores[static_cast<Eigen::Index>(a)];
    const double sb = scores[static_cast<Eigen::Index>(b)];
    if (sa != sb) return sa > sb;
    return labels[a] < labels[b];
  });
  Json out = Json::array();
  for (std::size_t v : order) {
    out.push_back({{"label", labels[v]}, {"score", scores[static_cast<Eigen::Index>(v)]}});
  }
  return out;
}

Json edge_list(const ComparisonGraph& graph, const EdgeFlow& flow,
               const std::vector<EdgeId>& edges) {
  Json out = Json::array();
  const auto& labels = graph.labels();
  for (EdgeId e : edges) {
    const Edge& ed = graph.edge(e);
    out.push_back({{"i", labels[static_cast<std::size_t>(ed.i)]},
                   {"j", labels[static_cast<std::size_t>(ed.j)]},
                   {"value", flow.values[e]}});
  }
  return out;
}

Json decomposition_json(const HodgeReport& report, const EdgeFlow& flow,
                        const CliqueComplex& complex, const InnerProducts& ip,
                        std::size_t topk_curls) {
  const auto& graph = complex.graph();
  const auto& labels = graph.labels();
  Json doc;
  doc["labels"] = labels;
  doc["complex"] = {{"vertices", graph.vertex_count()},
                    {"edges", graph.edge_count()},
                    {"triangles", complex.triangle_count()}};
  doc["global_scores"] = ranked_scores(labels, report.global_scores.values);
  doc["squared_norms"] = {{"input", report.norms.input},
                          {"gradient", report.norms.gradient},
                          {"curl", report.norms.curl},
                          {"harmonic", report.norms.harmonic}};
  doc["cyclicity_ratio"] = maybe_number(report.cyclicity_ratio);
  doc["betti1"] = {{"value", report.betti1.value},
                   {"curl_rank", report.betti1.curl_rank},
                   {"connected_components", report.betti1.component_count},
                   {"rank_ambiguous", report.betti1.rank_ambiguous}};

  const auto curls = relative_curl(flow, report.global_scores, complex);
  Json top = Json::array();
  for (std::size_t k = 0; k < std::min(topk_curls, curls.size()); ++k) {
    const auto& rc = curls[k];
    Json entry = {{"edge", {labels[static_cast<std::size_t>(rc.edge.i)],
                            labels[static_cast<std::size_t>(rc.edge.j)]}},
                  {"triangle", {labels[static_cast<std::size_t>(rc.triangle[0])],
                                labels[static_cast<std::size_t>(rc.triangle[1])],
                                labels[static_cast<std::size_t>(rc.triangle[2])]}}};
    const Json value = maybe_number(rc.value);
    entry["defined"] = value["defined"];
    entry["value"] = value["value"];
    entry["unreliable"] = rc.unreliable;
    top.push_back(std::move(entry));
  }
  doc["relative_curls"] = {{"total", curls.size()}, {"top", std::move(top)}};

  const auto& c = report.checks;
  doc["diagnostics"] = {
      {"gradient_solve", diagnostics_json(report.gradient_solve)},
      {"curl_solve", diagnostics_json(report.curl_solve)},
      {"invariants",
       {{"pythagoras_relative_error", c.pythagoras_relative_error},
        {"reconstruction_relative_error", c.reconstruction_relative_error},
        {"max_residual_divergence", c.max_residual_divergence},
        {"max_harmonic_curl", c.max_harmonic_curl},
        {"max_harmonic_divergence", c.max_harmonic_divergence}}}};

  Json components = Json::array();
  const EdgeFlow r = residual(flow, report.global_scores, graph);
  for (std::size_t k = 0; k < report.components.count(); ++k) {
    const auto& members = report.components.members[k];
    double total = 0.0;
    double unexplained = 0.0;
    for (EdgeId e = 0; e < static_cast<EdgeId>(graph.edge_count()); ++e) {
      if (report.components.component_of[static_cast<std::size_t>(graph.edge(e).i)] !=
          static_cast<int>(k)) {
        continue;
      }
      total += ip.edge_weights[e] * flow.values[e] * flow.values[e];
      unexplained += ip.edge_weights[e] * r.values[e] * r.values[e];
    }
    std::vector<std::string> names;
    Eigen::VectorXd scores(static_cast<Eigen::Index>(members.size()));
    for (std::size_t m = 0; m < members.size(); ++m) {
      names.push_back(labels[static_cast<std::size_t>(members[m])]);
      scores[static_cast<Eigen::Index>(m)] = report.global_scores[members[m]];
    }
    components.push_back(
        {{"size", members.size()},
         {"global_scores", ranked_scores(names, scores)},
         {"cyclicity_ratio",
          maybe_number(total > 0.0 ? std::optional<double>(unexplained / total) : std::nullopt)}});
  }
  doc["components"] = std::move(components);
  return doc;
}

Json lp_json(const LpSolution& solution) {
  return {{"status", std::string(to_string(solution.status))},
          {"iterations", solution.iterations},
          {"primal_objective", solution.primal_objective},
          {"dual_objective", solution.dual_objective},
          {"duality_gap", solution.duality_gap},
          {"dual_box_violation", solution.dual_box_violation},
          {"dual_equality_residual", solution.dual_equality_residual}};
}

std::string render(const Json& document) { return document.dump(2) + "\n"; }

}  // namespace hodgerank::cli
