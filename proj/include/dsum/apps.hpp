#pragma once

// Applications of disjoint summation: heaviest k-path counting, the
// permanent of a rectangular matrix, and precomputed feature-selection
// queries.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dsum/algebra.hpp"
#include "dsum/errors.hpp"
#include "dsum/summation.hpp"

namespace dsum {

// ---------------------------------------------------------------- graphs

struct Edge {
  std::uint64_t u = 0;
  std::uint64_t v = 0;
  double weight = 0;
};

// Simple edge-weighted graph on vertices 0..n-1. Undirected edges are
// stored once and usable in both directions.
class Graph {
 public:
  explicit Graph(std::uint64_t vertices, bool directed = false);

  // Throws InvalidArgument on self-loops, duplicate edges and bad vertices.
  void add_edge(std::uint64_t u, std::uint64_t v, double weight);

  std::uint64_t vertex_count() const { return vertices_; }
  bool directed() const { return directed_; }
  const std::vector<Edge>& edges() const { return edges_; }
  // Arcs leaving u as (head, weight), in insertion order.
  const std::vector<std::pair<std::uint64_t, double>>& out(std::uint64_t u) const { return out_.at(u); }
  // Same graph with every arc reversed (undirected graphs are unchanged).
  Graph reversed() const;

 private:
  std::uint64_t vertices_;
  bool directed_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::pair<std::uint64_t, double>>> out_;
};

// Largest graph the half-path tables support (vertex sets are bit masks).
inline constexpr std::uint64_t kMaxGraphVertices = 64;

// For each m-subset X with source ∈ X and anchor ∉ X: the number and
// weight of the heaviest m-edge paths from source to anchor whose vertex
// set is exactly X ∪ {anchor}. Keys live on the leaf level of
// Universe(vertex_count); subsets with no such path are left out.
SubsetTable<CountWeight> half_path_table(const Graph& g, std::uint64_t source, std::uint64_t anchor, int m);

struct KPathOptions {
  SumOptions sum{Mode::direct, 1};
};

// (number of heaviest simple k-edge s-t paths, their weight); (0, -inf)
// when there is none. Splits every path at its middle vertex into a
// floor(k/2)-edge half from s and a ceil(k/2)-edge half from t.
CountWeight kpath_count(const Graph& g, std::uint64_t s, std::uint64_t t, int k, KPathOptions options = {});

// Exhaustive enumeration of simple k-edge s-t paths (vertex_count <= 10,
// k <= 6).
CountWeight oracle_kpath(const Graph& g, std::uint64_t s, std::uint64_t t, int k);

// ---------------------------------------------------------------- permanent

template <class V>
struct RectMatrix {
  std::size_t rows = 0;  // k
  std::size_t cols = 0;  // n
  std::vector<std::vector<V>> entries;

  RectMatrix() = default;
  explicit RectMatrix(std::vector<std::vector<V>> e) : entries(std::move(e)) {
    rows = entries.size();
    cols = rows ? entries.front().size() : 0;
    for (const auto& row : entries) {
      if (row.size() != cols) throw InvalidArgument("matrix rows have different lengths");
    }
    if (rows == 0 || cols == 0) throw InvalidArgument("matrix dimensions must be positive");
    if (rows > cols) throw InvalidArgument("matrix must have at most as many rows as columns");
  }
  const V& at(std::size_t r, std::size_t c) const { return entries.at(r).at(c); }
};

namespace detail {

// table(S) = ⊕ over bijections σ from rows first..first+|S|-1 onto S of
// a[first][σ(first)] ⊙ ... in row order, for every |S| = count.
template <Semiring S>
SubsetTable<value_t<S>> row_block_sums(const RectMatrix<value_t<S>>& m, std::size_t first, std::size_t count, const S& s) {
  const Universe u(m.cols);
  SubsetTable<value_t<S>> table{{Subset::empty(u.b()), s.one()}};
  for (std::size_t r = 0; r < count; ++r) {
    SubsetTable<value_t<S>> next;
    for (const auto& [set, value] : table) {
      for (std::uint64_t c = 0; c < m.cols; ++c) {
        if (set.contains(c)) continue;
        auto term = s.times(value.value(), m.at(first + r, c));
        const auto key = set_union(set, Subset::from_sorted(u.b(), {c}));
        auto [it, fresh] = next.try_emplace(key, term);
        if (!fresh) it->second = s.plus(it->second.value(), term);
      }
    }
    table = std::move(next);
  }
  return table;
}

void check_permanent_shape(std::size_t rows, std::size_t cols);
void check_permanent_oracle_budget(std::size_t rows, std::size_t cols);

}  // namespace detail

// Σ over injective σ:[k]→[n] of a[0][σ(0)] ⊙ ... ⊙ a[k-1][σ(k-1)], factors
// in row order. The first floor(k/2) rows and the remaining rows are
// tabulated separately and joined by disjoint summation.
template <Semiring S>
value_t<S> permanent(const RectMatrix<value_t<S>>& m, const S& s, SumOptions options = {}) {
  detail::check_permanent_shape(m.rows, m.cols);
  const std::size_t p = m.rows / 2;
  const std::size_t q = m.rows - p;
  const auto f = detail::row_block_sums(m, 0, p, s);
  const auto g = detail::row_block_sums(m, p, q, s);
  return pair_sum(m.cols, static_cast<int>(p), static_cast<int>(q), f, g, s, options);
}

// Literal enumeration of all injections; requires n!/(n-k)! <= 10^7.
template <Semiring S>
value_t<S> oracle_permanent(const RectMatrix<value_t<S>>& m, const S& s) {
  detail::check_permanent_shape(m.rows, m.cols);
  detail::check_permanent_oracle_budget(m.rows, m.cols);
  auto total = s.zero();
  std::vector<bool> used(m.cols, false);
  std::vector<value_t<S>> prefix{s.one()};
  auto recurse = [&](auto&& self, std::size_t row) -> void {
    if (row == m.rows) {
      total = s.plus(total, prefix.back());
      return;
    }
    for (std::size_t c = 0; c < m.cols; ++c) {
      if (used[c]) continue;
      used[c] = true;
      prefix.push_back(s.times(prefix.back(), m.at(row, c)));
      self(self, row + 1);
      prefix.pop_back();
      used[c] = false;
    }
  };
  recurse(recurse, 0);
  return total;
}

// ---------------------------------------------------------------- features

// Score of each candidate feature set X (|X| <= p) over features 0..n-1.
struct ScoreTable {
  std::uint64_t n = 1;
  std::map<Subset, double> scores;  // keys on the leaf level of Universe(n)
};

struct FeatselIndex {
  std::uint64_t n = 1;
  int p = 0;
  int q = 0;
  // For every excluded set E (|E| <= q), the best X with X ∩ E = ∅.
  OutputTable<Witnessed> best;
  // ⊕ operations spent building `best`.
  std::uint64_t plus_operations = 0;
};

// Runs one intersection summation with g(∅, X) = (score(X), X).
FeatselIndex featsel_precompute(const ScoreTable& scores, int p, int q, SumOptions options = {});

// Best scored X avoiding E; identity when no scored X avoids E. Throws
// InvalidArgument if |E| > q.
Adjoined<Witnessed> featsel_query(const FeatselIndex& index, const Subset& excluded);

// Direct scan of the score table: best X with X ∩ E = ∅ and I ⊆ X. Counts
// its ⊕ operations into `plus_operations` when given.
Adjoined<Witnessed> featsel_brute_force(const ScoreTable& scores, const Subset& excluded, const Subset& included,
                                        std::uint64_t* plus_operations = nullptr);

}  // namespace dsum
