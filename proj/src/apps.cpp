#include "dsum/apps.hpp"

#include <bit>
#include <map>
#include <string>

namespace dsum {

Graph::Graph(std::uint64_t vertices, bool directed) : vertices_(vertices), directed_(directed), out_(vertices) {
  if (vertices == 0) throw InvalidArgument("graph must have at least one vertex");
  if (vertices > kMaxGraphVertices) throw InvalidArgument("graphs are limited to 64 vertices");
}

void Graph::add_edge(std::uint64_t u, std::uint64_t v, double weight) {
  if (u >= vertices_ || v >= vertices_) {
    throw InvalidArgument("edge " + std::to_string(u) + "-" + std::to_string(v) + " mentions a missing vertex");
  }
  if (u == v) throw InvalidArgument("self-loop at vertex " + std::to_string(u));
  for (const auto& [head, w] : out_[u]) {
    if (head == v) throw InvalidArgument("duplicate edge " + std::to_string(u) + "-" + std::to_string(v));
  }
  edges_.push_back({u, v, weight});
  out_[u].emplace_back(v, weight);
  if (!directed_) out_[v].emplace_back(u, weight);
}

Graph Graph::reversed() const {
  if (!directed_) return *this;
  Graph r(vertices_, true);
  for (const auto& e : edges_) r.add_edge(e.v, e.u, e.weight);
  return r;
}

namespace {

void check_vertex(const Graph& g, std::uint64_t v, const char* what) {
  if (v >= g.vertex_count()) throw InvalidArgument(std::string(what) + " vertex " + std::to_string(v) + " out of range");
}

Subset mask_to_subset(std::uint64_t mask, int level) {
  std::vector<std::uint64_t> members;
  for (; mask != 0; mask &= mask - 1) members.push_back(static_cast<std::uint64_t>(std::countr_zero(mask)));
  return Subset::from_sorted(level, std::move(members));
}

}  // namespace

SubsetTable<CountWeight> half_path_table(const Graph& g, std::uint64_t source, std::uint64_t anchor, int m) {
  check_vertex(g, source, "source");
  check_vertex(g, anchor, "anchor");
  if (source == anchor) throw InvalidArgument("half paths need distinct source and anchor");
  if (m < 1) throw InvalidArgument("half paths need at least one edge");
  if (static_cast<std::uint64_t>(m) + 1 > g.vertex_count()) throw InvalidArgument("half path longer than the graph");

  const CountWeightSemiring s;
  const std::uint64_t anchor_bit = std::uint64_t{1} << anchor;
  // (visited vertices, endpoint) -> heaviest paths from source; the anchor
  // is only entered on the last step.
  std::map<std::pair<std::uint64_t, std::uint64_t>, CountWeight> layer{{{std::uint64_t{1} << source, source}, s.one()}};
  for (int step = 1; step <= m; ++step) {
    const bool last = step == m;
    std::map<std::pair<std::uint64_t, std::uint64_t>, CountWeight> next;
    for (const auto& [state, value] : layer) {
      const auto [mask, end] = state;
      for (const auto& [head, weight] : g.out(end)) {
        const std::uint64_t bit = std::uint64_t{1} << head;
        if ((mask & bit) != 0 || (head == anchor) != last) continue;
        const auto extended = s.times(value, CountWeight{1, weight});
        auto [it, fresh] = next.try_emplace({mask | bit, head}, extended);
        if (!fresh) it->second = s.plus(it->second, extended);
      }
    }
    layer = std::move(next);
  }

  const int level = Universe(g.vertex_count()).b();
  SubsetTable<CountWeight> table;
  for (const auto& [state, value] : layer) table.emplace(mask_to_subset(state.first & ~anchor_bit, level), value);
  return table;
}

CountWeight kpath_count(const Graph& g, std::uint64_t s, std::uint64_t t, int k, KPathOptions options) {
  check_vertex(g, s, "start");
  check_vertex(g, t, "end");
  if (s == t) throw InvalidArgument("k-paths need distinct end points");
  if (k < 2) throw InvalidArgument("k-path counting needs k >= 2");
  const CountWeightSemiring cw;
  if (static_cast<std::uint64_t>(k) + 1 > g.vertex_count()) return cw.zero();

  const int p = k / 2;
  const int q = k - p;
  const Graph back = g.reversed();
  CountWeight total = cw.zero();
  for (std::uint64_t v = 0; v < g.vertex_count(); ++v) {
    if (v == s || v == t) continue;
    const auto f = half_path_table(g, s, v, p);
    const auto h = half_path_table(back, t, v, q);
    if (f.empty() || h.empty()) continue;
    total = cw.plus(total, pair_sum(g.vertex_count(), p, q, f, h, cw, options.sum));
  }
  return total;
}

CountWeight oracle_kpath(const Graph& g, std::uint64_t s, std::uint64_t t, int k) {
  check_vertex(g, s, "start");
  check_vertex(g, t, "end");
  if (s == t) throw InvalidArgument("k-paths need distinct end points");
  if (k < 1) throw InvalidArgument("k must be positive");
  if (g.vertex_count() > 10 || k > 6) throw ScaleGuardError("path oracle is limited to 10 vertices and k <= 6");

  const CountWeightSemiring cw;
  CountWeight total = cw.zero();
  std::vector<bool> used(g.vertex_count(), false);
  used[s] = true;
  auto walk = [&](auto&& self, std::uint64_t at, int edges, double weight) -> void {
    if (edges == k) {
      if (at == t) total = cw.plus(total, CountWeight{1, weight});
      return;
    }
    if (at == t) return;
    for (const auto& [head, w] : g.out(at)) {
      if (used[head]) continue;
      used[head] = true;
      self(self, head, edges + 1, weight + w);
      used[head] = false;
    }
  };
  walk(walk, s, 0, 0.0);
  return total;
}

namespace detail {

void check_permanent_shape(std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0) throw InvalidArgument("matrix dimensions must be positive");
  if (rows > cols) throw InvalidArgument("permanent needs k <= n");
}

void check_permanent_oracle_budget(std::size_t rows, std::size_t cols) {
  double injections = 1;
  for (std::size_t i = 0; i < rows; ++i) injections *= static_cast<double>(cols - i);
  if (injections > static_cast<double>(kOracleBudget)) throw ScaleGuardError("permanent oracle exceeds 10^7 injections");
}

}  // namespace detail

FeatselIndex featsel_precompute(const ScoreTable& scores, int p, int q, SumOptions options) {
  const CountingSemigroup<WitnessMax> s(WitnessMax{Universe(scores.n).b()});
  LabelTable<Witnessed> g;
  for (const auto& [x, score] : scores.scores) g.emplace(InputLabel{Subset::empty(x.level()), x}, Witnessed{score, x});
  FeatselIndex index{scores.n, p, q, intersection_sum(scores.n, p, q, g, s, options), 0};
  index.plus_operations = s.count();
  return index;
}

Adjoined<Witnessed> featsel_query(const FeatselIndex& index, const Subset& excluded) {
  if (excluded.size() > static_cast<std::size_t>(index.q)) {
    throw InvalidArgument("query excludes more than q = " + std::to_string(index.q) + " features");
  }
  const auto it = index.best.find(excluded);
  if (it == index.best.end()) throw InvalidArgument("query " + format_subset(excluded) + " is outside the feature set");
  return it->second;
}

Adjoined<Witnessed> featsel_brute_force(const ScoreTable& scores, const Subset& excluded, const Subset& included,
                                        std::uint64_t* plus_operations) {
  const WitnessMax s{Universe(scores.n).b()};
  Adjoined<Witnessed> best;
  for (const auto& [x, score] : scores.scores) {
    if (!disjoint(x, excluded) || !is_subset(included, x)) continue;
    if (!best.is_identity() && plus_operations != nullptr) ++*plus_operations;
    best = oplus(s, best, Adjoined<Witnessed>(Witnessed{score, x}));
  }
  return best;
}

}  // namespace dsum
