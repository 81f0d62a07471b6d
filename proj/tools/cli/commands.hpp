#pragma once

#include <limits>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hodgerank/pairwise.hpp"

namespace hodgerank::cli {

inline constexpr const char* kToolName = "hodgerank";
inline constexpr const char* kToolVersion = "0.3.0";
inline constexpr int kSchemaVersion = 1;

enum ExitCode : int { kSuccess = 0, kInternalError = 1, kInputError = 2, kSolverError = 3 };

/// Text written to the output plus messages meant for stderr.
struct CommandOutput {
  std::string document;
  std::vector<std::string> warnings;
};

/// Iteration caps shared by the CG and simplex solvers; 0 keeps the defaults.
struct Limits {
  int max_iterations = 0;
};

/// Reads HODGERANK_MAX_ITER; throws InputError on a malformed value.
Limits limits_from_environment();

struct AggregateOptions {
  Statistic statistic = Statistic::difference;
  bool group_by_period = false;
};

/// Ratings CSV in, pairwise CSV out. Records violating the statistic's
/// precondition make the command fail with their line numbers.
CommandOutput cmd_aggregate(const std::string& ratings_text, const AggregateOptions& options);

struct DecomposeOptions {
  double gamma = std::numeric_limits<double>::infinity();
  std::size_t topk_curls = 10;
  Limits limits;
};

CommandOutput cmd_decompose(const std::string& pairwise_text, const DecomposeOptions& options);

enum class L1Mode { project, sparse_cycles };

struct L1Options {
  L1Mode mode = L1Mode::project;
  double gamma = std::numeric_limits<double>::infinity();
  Limits limits;
};

CommandOutput cmd_l1(const std::string& pairwise_text, const L1Options& options);

/// Accepts either a `voter,order` profile or an `i,j,weight,flow` file.
CommandOutput cmd_kemeny(const std::string& text, const Limits& limits);

struct MarkovOptions {
  double alpha = 0.85;
  std::vector<int> power_k{1};
  /// Name -> `item,score` text of an externally supplied ranking.
  std::map<std::string, std::string> external;
  Limits limits;
};

CommandOutput cmd_markov(const std::string& links_text, const MarkovOptions& options);

/// `currency`: the bundled exchange-rate table, or `rates_text` if given.
CommandOutput cmd_demo(const std::string& name, const std::optional<std::string>& rates_text,
                       const Limits& limits);

/// The exchange-rate table shipped with the currency demo, as CSV.
std::string_view bundled_currency_rates();

}  // namespace hodgerank::cli
