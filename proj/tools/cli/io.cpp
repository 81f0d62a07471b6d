#include "cli/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include <boost/algorithm/string/trim.hpp>
#include <boost/tokenizer.hpp>

#include "hodgerank/errors.hpp"

namespace hodgerank::cli {

namespace {

struct Row {
  std::size_t line = 0;
  std::vector<std::string> fields;
};

std::string at_line(std::size_t line, const std::string& message) {
  return "line " + std::to_string(line) + ": " + message;
}

std::vector<Row> split_rows(std::string_view text) {
  using Separator = boost::escaped_list_separator<char>;
  std::vector<Row> rows;
  std::size_t line = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string raw(text.substr(start, end - start));
    start = end + 1;
    ++line;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (line == 1 && raw.rfind("\xEF\xBB\xBF", 0) == 0) raw.erase(0, 3);
    if (boost::algorithm::trim_copy(raw).empty()) continue;
    Row row{line, {}};
    try {
      boost::tokenizer<Separator> tokens(raw, Separator('\\', ',', '"'));
      for (const auto& token : tokens) row.fields.push_back(boost::algorithm::trim_copy(token));
    } catch (const boost::escaped_list_error& e) {
      throw InputError(at_line(line, std::string("malformed CSV field: ") + e.what()));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string join(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t k = 0; k < fields.size(); ++k) {
    if (k > 0) out += ',';
    out += fields[k];
  }
  return out;
}

// Validates the header against the expected column names; returns the rows
// after it. `required` leading columns must be present, the rest optional.
std::vector<Row> body(std::string_view text, const std::vector<std::string>& columns,
                      std::size_t required) {
  std::vector<Row> rows = split_rows(text);
  if (rows.empty()) throw InputError("empty file: expected header " + join(columns));
  const auto& header = rows.front().fields;
  const bool ok = header.size() >= required && header.size() <= columns.size() &&
                  std::equal(header.begin(), header.end(), columns.begin());
  if (!ok) {
    throw InputError(at_line(rows.front().line, "expected header " + join(columns) + ", got " +
                                                    join(header)));
  }
  const std::size_t width = header.size();
  rows.erase(rows.begin());
  for (const auto& row : rows) {
    if (row.fields.size() != width) {
      throw InputError(at_line(row.line, "expected " + std::to_string(width) + " fields, got " +
                                             std::to_string(row.fields.size())));
    }
  }
  return rows;
}

void require_label(const Row& row, std::size_t k, const char* name) {
  if (row.fields[k].empty()) throw InputError(at_line(row.line, std::string(name) + " is empty"));
}

std::string quote_if_needed(const std::string& field) {
  if (field.find_first_of(",\"\\\n") == std::string::npos && field == boost::algorithm::trim_copy(field)) {
    return field;
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string format_double(double value) {
  char buffer[64];
  const auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  if (ec != std::errc{}) throw InputError("cannot format number");
  return std::string(buffer, end);
}

double parse_double(std::string_view text, std::string_view context) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (text.empty() || ec != std::errc{} || ptr != last || !std::isfinite(value)) {
    throw InputError(std::string(context) + ": not a finite number: '" + std::string(text) + "'");
  }
  return value;
}

RatingsFile parse_ratings_csv(std::string_view text) {
  const auto rows = body(text, {"voter", "item", "score", "period", "multiplicity"}, 3);
  std::vector<RatingRecord> records;
  RatingsFile out;
  std::map<std::tuple<std::string, std::string, std::optional<std::string>>, std::size_t> seen;
  for (const auto& row : rows) {
    require_label(row, 0, "voter");
    require_label(row, 1, "item");
    RatingRecord rec;
    rec.voter = row.fields[0];
    rec.item = row.fields[1];
    rec.score = parse_double(row.fields[2], at_line(row.line, "score"));
    if (row.fields.size() > 3 && !row.fields[3].empty()) rec.period = row.fields[3];
    if (row.fields.size() > 4 && !row.fields[4].empty()) {
      rec.multiplicity = parse_double(row.fields[4], at_line(row.line, "multiplicity"));
      if (!(rec.multiplicity > 0.0)) {
        throw InputError(at_line(row.line, "multiplicity must be positive"));
      }
    }
    auto [it, fresh] = seen.emplace(std::make_tuple(rec.voter, rec.item, rec.period), row.line);
    if (!fresh) {
      throw InputError(at_line(row.line, "duplicate rating of '" + rec.item + "' by '" + rec.voter +
                                             "' (first on line " + std::to_string(it->second) + ")"));
    }
    records.push_back(std::move(rec));
    out.lines.push_back(row.line);
  }
  out.table = RatingTable(std::move(records));
  return out;
}

std::string write_pairwise_csv(const PairwiseData& data) {
  std::string out = "i,j,weight,flow\n";
  for (const auto& entry : data.entries) {
    const auto& a = data.labels[static_cast<std::size_t>(entry.i)];
    const auto& b = data.labels[static_cast<std::size_t>(entry.j)];
    // Rows are written with the lexicographically smaller label first.
    const bool flip = b < a;
    out += quote_if_needed(flip ? b : a) + ',' + quote_if_needed(flip ? a : b) + ',' +
           format_double(entry.weight) + ',' + format_double(flip ? -entry.flow : entry.flow) +
           '\n';
  }
  return out;
}

PairwiseData parse_pairwise_csv(std::string_view text) {
  const auto rows = body(text, {"i", "j", "weight", "flow"}, 4);
  std::set<std::string> names;
  for (const auto& row : rows) {
    require_label(row, 0, "i");
    require_label(row, 1, "j");
    if (row.fields[0] == row.fields[1]) throw InputError(at_line(row.line, "self comparison"));
    names.insert(row.fields[0]);
    names.insert(row.fields[1]);
  }
  PairwiseData out;
  out.labels.assign(names.begin(), names.end());
  auto index_of = [&](const std::string& label) {
    return static_cast<Vertex>(std::lower_bound(out.labels.begin(), out.labels.end(), label) -
                               out.labels.begin());
  };
  std::set<std::pair<Vertex, Vertex>> seen;
  for (const auto& row : rows) {
    Vertex i = index_of(row.fields[0]);
    Vertex j = index_of(row.fields[1]);
    const double weight = parse_double(row.fields[2], at_line(row.line, "weight"));
    double flow = parse_double(row.fields[3], at_line(row.line, "flow"));
    if (weight < 0.0) throw InputError(at_line(row.line, "weight must be nonnegative"));
    if (j < i) {
      std::swap(i, j);
      flow = -flow;
    }
    if (!seen.insert({i, j}).second) {
      throw InputError(at_line(row.line, "duplicate pair " + row.fields[0] + "," + row.fields[1]));
    }
    out.entries.push_back({i, j, weight, flow});
  }
  std::sort(out.entries.begin(), out.entries.end(),
            [](const PairwiseEntry& a, const PairwiseEntry& b) {
              return std::tie(a.i, a.j) < std::tie(b.i, b.j);
            });
  return out;
}

LinkFile parse_links_csv(std::string_view text) {
  const auto rows = body(text, {"i", "j", "count"}, 3);
  std::set<std::string> names;
  for (const auto& row : rows) {
    require_label(row, 0, "i");
    require_label(row, 1, "j");
    names.insert(row.fields[0]);
    names.insert(row.fields[1]);
  }
  LinkFile out;
  out.labels.assign(names.begin(), names.end());
  const auto n = static_cast<Eigen::Index>(out.labels.size());
  auto index_of = [&](const std::string& label) {
    return static_cast<Eigen::Index>(
        std::lower_bound(out.labels.begin(), out.labels.end(), label) - out.labels.begin());
  };
  Eigen::MatrixXd counts = Eigen::MatrixXd::Zero(n, n);
  std::set<std::pair<Eigen::Index, Eigen::Index>> seen;
  for (const auto& row : rows) {
    const auto i = index_of(row.fields[0]);
    const auto j = index_of(row.fields[1]);
    const double count = parse_double(row.fields[2], at_line(row.line, "count"));
    if (count < 0.0) throw InputError(at_line(row.line, "link count must be nonnegative"));
    if (!seen.insert({i, j}).second) {
      throw InputError(at_line(row.line, "duplicate link " + row.fields[0] + "," + row.fields[1]));
    }
    counts(i, j) = count;
  }
  out.links = LinkMatrix(std::move(counts));
  return out;
}

VotingProfile parse_profile_csv(std::string_view text) {
  const auto rows = body(text, {"voter", "order"}, 2);
  std::vector<std::vector<std::string>> ballots;
  std::set<std::string> voters;
  for (const auto& row : rows) {
    require_label(row, 0, "voter");
    if (!voters.insert(row.fields[0]).second) {
      throw InputError(at_line(row.line, "duplicate voter '" + row.fields[0] + "'"));
    }
    std::vector<std::string> ballot;
    std::stringstream ss(row.fields[1]);
    std::string item;
    while (std::getline(ss, item, '>')) {
      boost::algorithm::trim(item);
      if (item.empty()) throw InputError(at_line(row.line, "empty alternative in order"));
      ballot.push_back(item);
    }
    if (ballot.empty()) throw InputError(at_line(row.line, "empty order"));
    std::vector<std::string> sorted = ballot;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw InputError(at_line(row.line, "an alternative appears twice; ties are not allowed"));
    }
    if (!ballots.empty()) {
      std::vector<std::string> reference = ballots.front();
      std::sort(reference.begin(), reference.end());
      if (reference != sorted) {
        throw InputError(at_line(row.line, "order covers a different alternative set"));
      }
    }
    ballots.push_back(std::move(ballot));
  }
  std::vector<std::string> labels;
  if (!ballots.empty()) {
    labels = ballots.front();
    std::sort(labels.begin(), labels.end());
  }
  std::vector<RankOrder> orders;
  for (const auto& ballot : ballots) {
    std::vector<Vertex> items;
    for (const auto& item : ballot) {
      items.push_back(static_cast<Vertex>(std::lower_bound(labels.begin(), labels.end(), item) -
                                          labels.begin()));
    }
    orders.emplace_back(std::move(items));
  }
  return VotingProfile(std::move(orders), std::move(labels));
}

std::vector<std::pair<std::string, double>> parse_scores_csv(std::string_view text) {
  const auto rows = body(text, {"item", "score"}, 2);
  std::vector<std::pair<std::string, double>> out;
  std::set<std::string> seen;
  for (const auto& row : rows) {
    require_label(row, 0, "item");
    if (!seen.insert(row.fields[0]).second) {
      throw InputError(at_line(row.line, "duplicate item '" + row.fields[0] + "'"));
    }
    out.emplace_back(row.fields[0], parse_double(row.fields[1], at_line(row.line, "score")));
  }
  return out;
}

RateTable parse_rate_matrix_csv(std::string_view text) {
  const auto rows = split_rows(text);
  if (rows.empty()) throw InputError("empty rate table");
  RateTable out;
  out.labels.assign(rows.front().fields.begin() + 1, rows.front().fields.end());
  const auto n = static_cast<Eigen::Index>(out.labels.size());
  if (static_cast<Eigen::Index>(rows.size()) != n + 1) {
    throw InputError("rate table needs one row per currency in the header");
  }
  out.rates.resize(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const Row& row = rows[static_cast<std::size_t>(r + 1)];
    if (static_cast<Eigen::Index>(row.fields.size()) != n + 1) {
      throw InputError(at_line(row.line, "expected " + std::to_string(n + 1) + " fields"));
    }
    if (row.fields[0] != out.labels[static_cast<std::size_t>(r)]) {
      throw InputError(at_line(row.line, "row label '" + row.fields[0] + "' does not match header"));
    }
    for (Eigen::Index c = 0; c < n; ++c) {
      const double rate = parse_double(row.fields[static_cast<std::size_t>(c + 1)], at_line(row.line, "rate"));
      if (!(rate > 0.0)) throw InputError(at_line(row.line, "exchange rates must be positive"));
      out.rates(r, c) = rate;
    }
  }
  return out;
}

std::string_view header_line(std::string_view text) {
  std::string_view line = text.substr(0, text.find('\n'));
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  if (line.rfind("\xEF\xBB\xBF", 0) == 0) line.remove_prefix(3);
  return line;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::optional<std::string>& path, std::string_view content) {
  if (!path || *path == "-") {
    std::cout << content;
    std::cout.flush();
    return;
  }
  std::ofstream out(*path, std::ios::binary);
  if (!out) throw InputError("cannot write " + *path);
  out << content;
  if (!out) throw InputError("failed writing " + *path);
}

}  // namespace hodgerank::cli
