#include "dsum/io.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>

namespace dsum {

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot read " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path);
  out << text;
  if (!out) throw FormatError("cannot write " + path);
}

namespace detail {

namespace {

std::string_view trim(std::string_view v) {
  while (!v.empty() && std::isspace(static_cast<unsigned char>(v.front()))) v.remove_prefix(1);
  while (!v.empty() && std::isspace(static_cast<unsigned char>(v.back()))) v.remove_suffix(1);
  return v;
}

}  // namespace

void fail_line(std::size_t line, const std::string& what) {
  throw FormatError("line " + std::to_string(line) + ": " + what);
}

std::vector<std::pair<std::size_t, std::string>> content_lines(std::string_view text) {
  std::vector<std::pair<std::size_t, std::string>> lines;
  std::size_t number = 0;
  while (!text.empty()) {
    const auto end = text.find('\n');
    const auto line = trim(text.substr(0, end));
    ++number;
    if (!line.empty() && line.front() != '#') lines.emplace_back(number, std::string(line));
    if (end == std::string_view::npos) break;
    text.remove_prefix(end + 1);
  }
  return lines;
}

std::vector<TableLine> split_table(std::string_view text) {
  std::vector<TableLine> out;
  for (const auto& [number, content] : content_lines(text)) {
    const std::string_view line = content;
    const auto colon = line.find(':');
    if (colon == std::string_view::npos) fail_line(number, "expected 'X : value' or 'I | X : value'");
    TableLine entry;
    entry.number = number;
    const auto key = line.substr(0, colon);
    entry.value = std::string(trim(line.substr(colon + 1)));
    if (entry.value.empty()) fail_line(number, "missing value");
    if (const auto bar = key.find('|'); bar != std::string_view::npos) {
      entry.individualized = std::string(trim(key.substr(0, bar)));
      entry.support = std::string(trim(key.substr(bar + 1)));
    } else {
      entry.support = std::string(trim(key));
    }
    out.push_back(std::move(entry));
  }
  return out;
}

}  // namespace detail

Graph parse_graph(std::string_view text, bool force_directed) {
  const auto lines = detail::content_lines(text);
  if (lines.empty()) throw FormatError("graph file is empty");
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  bool directed = force_directed;
  {
    std::istringstream header(lines[0].second);
    std::string flag;
    std::string extra;
    if (!(header >> n >> m)) detail::fail_line(lines[0].first, "expected header 'n m [directed]'");
    if (header >> flag) {
      if (flag != "directed" && flag != "undirected") detail::fail_line(lines[0].first, "unknown graph flag '" + flag + "'");
      directed = directed || flag == "directed";
    }
    if (header >> extra) detail::fail_line(lines[0].first, "trailing text in header");
  }
  if (lines.size() != m + 1) throw FormatError("graph file: expected " + std::to_string(m) + " edge lines");
  try {
    Graph g(n, directed);
    for (std::size_t i = 1; i < lines.size(); ++i) {
      std::istringstream row(lines[i].second);
      std::uint64_t u = 0;
      std::uint64_t v = 0;
      std::string w;
      std::string extra;
      if (!(row >> u >> v >> w) || (row >> extra)) detail::fail_line(lines[i].first, "expected 'u v w'");
      double weight = 0;
      try {
        weight = parse_real(w);
      } catch (const FormatError& e) {
        detail::fail_line(lines[i].first, e.what());
      }
      try {
        g.add_edge(u, v, weight);
      } catch (const InvalidArgument& e) {
        detail::fail_line(lines[i].first, e.what());
      }
    }
    return g;
  } catch (const InvalidArgument& e) {
    throw FormatError(std::string("graph file: ") + e.what());
  }
}

ScoreTable parse_scores(std::string_view text, std::optional<std::uint64_t> n) {
  struct Raw {
    std::size_t line;
    std::vector<std::uint64_t> members;
    double score;
  };
  std::vector<Raw> raw;
  std::uint64_t needed = 1;
  for (const auto& line : detail::split_table(text)) {
    if (line.individualized) detail::fail_line(line.number, "expected 'X : score'");
    try {
      // Parse on the widest level, re-level once the feature count is known.
      const Subset x = parse_subset(line.support, kMaxLevel);
      if (!x.empty()) needed = std::max(needed, x.members().back() + 1);
      raw.push_back({line.number, x.members(), parse_real(line.value)});
    } catch (const FormatError& e) {
      detail::fail_line(line.number, e.what());
    }
  }
  ScoreTable table;
  table.n = n.value_or(needed);
  if (table.n < needed) throw FormatError("scores mention feature " + std::to_string(needed - 1) + " but n = " + std::to_string(table.n));
  const int level = Universe(table.n).b();
  for (auto& r : raw) {
    if (!table.scores.emplace(Subset::from_sorted(level, std::move(r.members)), r.score).second) {
      detail::fail_line(r.line, "duplicate key");
    }
  }
  return table;
}

}  // namespace dsum
