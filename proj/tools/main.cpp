#include <exception>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cli/commands.hpp"
#include "cli/io.hpp"
#include "hodgerank/errors.hpp"

namespace {

using namespace hodgerank;
using namespace hodgerank::cli;

int finish(const CommandOutput& result, const std::optional<std::string>& out) {
  for (const auto& warning : result.warnings) std::cerr << "warning: " << warning << '\n';
  write_output(out, result.document);
  return kSuccess;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hodge-theoretic rank aggregation from pairwise comparisons", "hodgerank"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  std::optional<std::string> out;
  std::string input;

  auto* aggregate = app.add_subcommand("aggregate", "Ratings CSV to pairwise comparison CSV");
  std::string statistic = "difference";
  bool group_by_period = false;
  aggregate->add_option("ratings", input, "voter,item,score[,period[,multiplicity]] CSV")->required();
  aggregate->add_option("--statistic", statistic, "difference, ratio, binary or logodds")
      ->check(CLI::IsMember({"difference", "ratio", "binary", "logodds"}));
  aggregate->add_flag("--group-by-period", group_by_period, "Only compare ratings sharing a period");
  aggregate->add_option("--out", out, "Output path (default stdout)");

  auto* decompose = app.add_subcommand("decompose", "Hodge decomposition report of a pairwise CSV");
  DecomposeOptions decompose_options;
  decompose->add_option("pairwise", input, "i,j,weight,flow CSV")->required();
  decompose->add_option("--gamma", decompose_options.gamma, "Fill only triangles with |curl| <= gamma")
      ->check(CLI::NonNegativeNumber);
  decompose->add_option("--topk-curls", decompose_options.topk_curls, "Relative curls to report");
  decompose->add_option("--out", out, "Output path (default stdout)");

  auto* l1 = app.add_subcommand("l1", "l1 projection or sparse cyclic generator");
  std::string mode = "project";
  double l1_gamma = std::numeric_limits<double>::infinity();
  l1->add_option("pairwise", input, "i,j,weight,flow CSV")->required();
  l1->add_option("--mode", mode, "project or sparse-cycles")
      ->check(CLI::IsMember({"project", "sparse-cycles"}));
  l1->add_option("--gamma", l1_gamma, "Triangle threshold for sparse-cycles")->check(CLI::NonNegativeNumber);
  l1->add_option("--out", out, "Output path (default stdout)");

  auto* kemeny = app.add_subcommand("kemeny", "Exhaustive Kemeny optimization (n <= 10)");
  kemeny->add_option("input", input, "voter,order profile CSV or i,j,weight,flow CSV")->required();
  kemeny->add_option("--out", out, "Output path (default stdout)");

  auto* markov = app.add_subcommand("markov", "PageRank chain and its reversible Hodge ranking");
  MarkovOptions markov_options;
  std::vector<std::string> external;
  markov->add_option("links", input, "i,j,count CSV")->required();
  markov->add_option("--alpha", markov_options.alpha, "Link-following probability")
      ->check(CLI::Range(0.0, 1.0));
  markov->add_option("--power-k", markov_options.power_k, "Powers of the transition matrix")
      ->expected(1, -1);
  markov->add_option("--external", external, "name=path of an item,score ranking to compare");
  markov->add_option("--out", out, "Output path (default stdout)");

  auto* demo = app.add_subcommand("demo", "Bundled demonstrations");
  std::string demo_name = "currency";
  std::optional<std::string> rates_path;
  demo->add_option("name", demo_name, "Demo to run")->check(CLI::IsMember({"currency"}));
  demo->add_option("--rates", rates_path, "Exchange-rate matrix CSV instead of the bundled one");
  demo->add_option("--out", out, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    const Limits limits = limits_from_environment();
    if (*aggregate) {
      AggregateOptions options;
      options.statistic = *parse_statistic(statistic);
      options.group_by_period = group_by_period;
      return finish(cmd_aggregate(read_file(input), options), out);
    }
    if (*decompose) {
      decompose_options.limits = limits;
      return finish(cmd_decompose(read_file(input), decompose_options), out);
    }
    if (*l1) {
      L1Options options;
      options.mode = mode == "project" ? L1Mode::project : L1Mode::sparse_cycles;
      options.gamma = l1_gamma;
      options.limits = limits;
      return finish(cmd_l1(read_file(input), options), out);
    }
    if (*kemeny) return finish(cmd_kemeny(read_file(input), limits), out);
    if (*markov) {
      markov_options.limits = limits;
      for (const auto& spec : external) {
        const auto eq = spec.find('=');
        if (eq == std::string::npos || eq == 0) {
          throw InputError("--external expects name=path, got '" + spec + "'");
        }
        markov_options.external[spec.substr(0, eq)] = read_file(spec.substr(eq + 1));
      }
      return finish(cmd_markov(read_file(input), markov_options), out);
    }
    if (*demo) {
      std::optional<std::string> rates;
      if (rates_path) rates = read_file(*rates_path);
      return finish(cmd_demo(demo_name, rates, limits), out);
    }
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const SolverError& e) {
    std::cerr << "solver error: " << e.what() << " (iterations " << e.iterations()
              << ", relative residual " << e.residual() << ")\n";
    return kSolverError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternalError;
  }
  return kInternalError;
}
