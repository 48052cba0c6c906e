#pragma once

// Text formats. Blank lines and lines starting with '#' are ignored
// everywhere; every parse error is a FormatError naming the line.
//
//   table    "X : value" (disjoint form) or "I | X : value"
//   graph    header "n m [directed]", then m lines "u v w"
//   matrix   header "k n", then k lines of n whitespace-separated entries
//   scores   lines "X : score"

#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "dsum/apps.hpp"
#include "dsum/errors.hpp"
#include "dsum/summation.hpp"

namespace dsum {

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view text);

namespace detail {

struct TableLine {
  std::size_t number = 0;
  std::optional<std::string> individualized;  // text before '|'
  std::string support;
  std::string value;
};

// Splits "I | X : value" / "X : value" lines; values are trimmed text.
std::vector<TableLine> split_table(std::string_view text);

// Non-comment, non-blank lines with their 1-based numbers.
std::vector<std::pair<std::size_t, std::string>> content_lines(std::string_view text);

[[noreturn]] void fail_line(std::size_t line, const std::string& what);

}  // namespace detail

// Intersection-form table; disjoint-form lines become (∅, X). Keys are
// leaves of Universe(n). Duplicate keys are an error.
template <Semigroup S>
LabelTable<value_t<S>> parse_label_table(std::string_view text, std::uint64_t n, const S& s) {
  const int level = Universe(n).b();
  LabelTable<value_t<S>> table;
  for (const auto& line : detail::split_table(text)) {
    try {
      const Subset x = parse_subset(line.support, level);
      const Subset i = line.individualized ? parse_subset(*line.individualized, level) : Subset::empty(level);
      if (!table.emplace(InputLabel{i, x}, s.parse(line.value)).second) detail::fail_line(line.number, "duplicate key");
    } catch (const FormatError& e) {
      if (std::string_view(e.what()).starts_with("line ")) throw;
      detail::fail_line(line.number, e.what());
    }
  }
  return table;
}

// Disjoint-form table "X : value".
template <Semigroup S>
SubsetTable<value_t<S>> parse_subset_table(std::string_view text, std::uint64_t n, const S& s) {
  const int level = Universe(n).b();
  SubsetTable<value_t<S>> table;
  for (const auto& line : detail::split_table(text)) {
    try {
      if (line.individualized) detail::fail_line(line.number, "expected 'X : value'");
      if (!table.emplace(parse_subset(line.support, level), s.parse(line.value)).second) {
        detail::fail_line(line.number, "duplicate key");
      }
    } catch (const FormatError& e) {
      if (std::string_view(e.what()).starts_with("line ")) throw;
      detail::fail_line(line.number, e.what());
    }
  }
  return table;
}

// "A : value" per output in canonical order; empty sums print "empty".
template <Semigroup S>
std::string format_output_table(const OutputTable<value_t<S>>& table, const S& s) {
  std::string out;
  for (const auto& [a, value] : table) out += format_subset(a) + " : " + format_adjoined(s, value) + "\n";
  return out;
}

Graph parse_graph(std::string_view text, bool force_directed = false);

template <Semiring S>
RectMatrix<value_t<S>> parse_matrix(std::string_view text, const S& s) {
  const auto lines = detail::content_lines(text);
  if (lines.empty()) throw FormatError("matrix file is empty");
  std::size_t k = 0;
  std::size_t n = 0;
  {
    std::istringstream header(lines[0].second);
    std::string extra;
    if (!(header >> k >> n) || (header >> extra)) detail::fail_line(lines[0].first, "expected header 'k n'");
  }
  if (lines.size() != k + 1) throw FormatError("matrix file: expected " + std::to_string(k) + " rows");
  std::vector<std::vector<value_t<S>>> rows;
  for (std::size_t r = 0; r < k; ++r) {
    const auto& [number, content] = lines[r + 1];
    std::istringstream row(content);
    std::vector<value_t<S>> entries;
    for (std::string item; row >> item;) {
      try {
        entries.push_back(s.parse(item));
      } catch (const FormatError& e) {
        detail::fail_line(number, e.what());
      }
    }
    if (entries.size() != n) detail::fail_line(number, "expected " + std::to_string(n) + " entries");
    rows.push_back(std::move(entries));
  }
  try {
    return RectMatrix<value_t<S>>(std::move(rows));
  } catch (const InvalidArgument& e) {
    throw FormatError(std::string("matrix file: ") + e.what());
  }
}

// Scores "X : score". The feature count is `n` when given, otherwise one
// more than the largest feature mentioned.
ScoreTable parse_scores(std::string_view text, std::optional<std::uint64_t> n = std::nullopt);

}  // namespace dsum
