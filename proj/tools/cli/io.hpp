#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "hodgerank/graph.hpp"
#include "hodgerank/markov.hpp"
#include "hodgerank/pairwise.hpp"
#include "hodgerank/social_choice.hpp"

namespace hodgerank::cli {

/// Shortest decimal text that parses back to the same double.
std::string format_double(double value);
/// Strict decimal parse of a whole field; throws InputError with the context.
double parse_double(std::string_view text, std::string_view context);

struct RatingsFile {
  RatingTable table;
  /// 1-based line number of each record in the source text.
  std::vector<std::size_t> lines;
};

/// `voter,item,score[,period[,multiplicity]]` with a header row.
RatingsFile parse_ratings_csv(std::string_view text);

/// `i,j,weight,flow`, labels in lexicographic order with i < j.
std::string write_pairwise_csv(const PairwiseData& data);
PairwiseData parse_pairwise_csv(std::string_view text);

struct LinkFile {
  std::vector<std::string> labels;
  LinkMatrix links;
};

/// `i,j,count` with sites labelled by the sorted union of the label columns.
LinkFile parse_links_csv(std::string_view text);

/// `voter,order` where order lists labels best first separated by '>'.
VotingProfile parse_profile_csv(std::string_view text);

/// `item,score`.
std::vector<std::pair<std::string, double>> parse_scores_csv(std::string_view text);

struct RateTable {
  std::vector<std::string> labels;
  /// rates(i, j): one unit of i buys rates(i, j) units of j.
  Eigen::MatrixXd rates;
};

/// Header `,A,B,...` followed by one row per label in the same order.
RateTable parse_rate_matrix_csv(std::string_view text);

/// First line of a CSV text, without the line terminator.
std::string_view header_line(std::string_view text);

std::string read_file(const std::string& path);
/// Writes to the path, or to stdout when none is given.
void write_output(const std::optional<std::string>& path, std::string_view content);

}  // namespace hodgerank::cli
