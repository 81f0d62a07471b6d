#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "hodgerank/hodge.hpp"
#include "hodgerank/l1.hpp"
#include "hodgerank/solvers.hpp"

namespace hodgerank::cli {

using Json = nlohmann::ordered_json;

std::string sha256_hex(std::string_view bytes);
/// Current UTC time as 2026-01-31T12:00:00Z.
std::string utc_timestamp();

/// Common header: schema, tool, command, timestamp and input digest.
Json envelope(std::string_view command, std::string_view input_bytes);

/// {"defined": true, "value": x} or {"defined": false, "value": null}.
Json maybe_number(const std::optional<double>& value);

Json diagnostics_json(const SolverDiagnostics& d);

/// Vertex scores sorted descending (ties by label) as label/score objects.
Json ranked_scores(const std::vector<std::string>& labels, const Eigen::VectorXd& scores);

/// Scores, norms, cyclicity, betti1, the top-k relative curls and solver
/// diagnostics; per-component summaries when the graph is disconnected.
Json decomposition_json(const HodgeReport& report, const EdgeFlow& flow,
                        const CliqueComplex& complex, const InnerProducts& ip,
                        std::size_t topk_curls);

/// Nonzero entries of an edge flow as {"i", "j", "value"} objects.
Json edge_list(const ComparisonGraph& graph, const EdgeFlow& flow,
               const std::vector<EdgeId>& edges);

Json lp_json(const LpSolution& solution);

/// Pretty-printed document with a trailing newline.
std::string render(const Json& document);

}  // namespace hodgerank::cli
