#pragma once

// Circuit constructions for disjoint and intersection summation.

#include <cstdint>
#include <map>
#include <optional>
#include <thread>
#include <vector>

#include "dsum/circuit.hpp"
#include "dsum/errors.hpp"
#include "dsum/universe.hpp"

namespace dsum {

struct BuildParams {
  int b = 1;  // tree height; the circuit has 2^b leaves
  int p = 0;  // bound on |X|
  int q = 0;  // bound on |A|
};

struct PredictedCounts {
  std::uint64_t inputs = 0;
  std::uint64_t adds = 0;
  std::uint64_t outputs = 0;
};

// Exact gate counts of build_pq(b, p, q), from the closed-form sums.
// Throws OverflowError if a count does not fit in 64 bits.
PredictedCounts predicted_gate_count(int b, int p, int q);

// Largest circuit the builders will materialize.
inline constexpr std::uint64_t kMaxCircuitGates = std::uint64_t{1} << 27;

// (p,q)-intersection summation by tree projection: output A computes
// ⊕_{|X|<=p} g(A ∩ X, X) over the 2^b leaves.
Circuit build_pq(int b, int p, int q);
inline Circuit build_pq(const BuildParams& params) { return build_pq(params.b, params.p, params.q); }

// Classic p = q = 1 construction with 3*2^b - 6 ⊕ gates. Inputs are the
// singletons ({x}); output {y} sums every input but {y}.
Circuit build_valiant(int b);

// p = 1: inputs are singletons, output Y (|Y| <= q) sums the inputs
// outside Y.
Circuit build_p1(int b, int q);

// q = 1: inputs are all X with |X| <= p (including ∅), output {y} sums
// the inputs with y ∉ X.
Circuit build_q1(int b, int p);

// Prefix-suffix nucleation (Yates). Inputs are all X with |X| <= p,
// output Y (|Y| <= q) sums the inputs disjoint from Y. With p = q = 2^b
// this is the unrestricted process.
Circuit build_yates(int b, int p, int q);

namespace detail {

struct Cell {
  Subset support;  // W
  Subset active;   // A
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

// Bottom-up tree-projection recursion shared by the circuit builder and
// direct evaluation. Leaves >= live_leaves are never visited; cells that
// would only see them are left out of the store and read as absent.
//
// leaf(I, X) -> std::optional<Value>   (absent = formal identity)
// combine(Value, Value) -> Value
//
// Returns the output value for every A ⊆ live leaves with |A| <= q whose
// sum is nonempty. Cells within a level are independent, so with
// threads > 1 they are split across workers; `combine` must then be
// thread-safe. Fold order is the same either way.
template <class Value, class Leaf, class Combine>
std::map<Subset, Value> nucleate(int b, int p, int q, std::uint64_t live_leaves, Leaf&& leaf, Combine&& combine,
                                 unsigned threads = 1) {
  if (b < 1 || b > kMaxLevel) throw InvalidArgument("tree height must be in [1, 62]");
  if (p < 0 || q < 0) throw InvalidArgument("p and q must be nonnegative");
  using Store = std::map<Cell, Value>;

  const Subset leaves = level_prefix(b, live_leaves);
  auto live_nodes = [&](int level) {
    const int shift = b - level;
    return level_prefix(level, (live_leaves + (std::uint64_t{1} << shift) - 1) >> shift);
  };

  Store below;
  for (const auto& x : subsets_up_to(leaves, p)) {
    for (const auto& i : subsets_up_to(x, q)) {
      if (auto v = leaf(i, x)) below.emplace(Cell{.support = x, .active = i}, std::move(*v));
    }
  }

  for (int level = b - 1; level >= 0; --level) {
    std::vector<std::pair<Cell, const std::vector<Subset>*>> cells;
    std::vector<std::vector<Subset>> children_of;
    const auto ws = all_subsets_up_to(live_nodes(level), p);
    children_of.reserve(ws.size());
    for (const auto& w : ws) {
      children_of.push_back(child_families(w, p));
      const Subset reach = intersection(span(w, b), leaves);
      for (const auto& a : subsets_up_to(reach, q)) cells.push_back({Cell{.support = w, .active = a}, &children_of.back()});
    }

    auto compute = [&](std::size_t idx) -> std::optional<Value> {
      const auto& [cell, children] = cells[idx];
      std::optional<Value> acc;
      for (const auto& z : *children) {
        auto it = below.find(Cell{.support = z, .active = restrict_to_span(cell.active, z)});
        if (it == below.end()) continue;
        acc = acc ? combine(*acc, it->second) : it->second;
      }
      return acc;
    };

    std::vector<std::optional<Value>> results(cells.size());
    const std::size_t workers = std::min<std::size_t>(std::max(1U, threads), cells.size() / 64 + 1);
    if (workers <= 1) {
      for (std::size_t i = 0; i < cells.size(); ++i) results[i] = compute(i);
    } else {
      std::vector<std::jthread> pool;
      for (std::size_t t = 0; t < workers; ++t) {
        pool.emplace_back([&, t] {
          for (std::size_t i = t; i < cells.size(); i += workers) results[i] = compute(i);
        });
      }
    }

    Store current;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (results[i]) current.emplace_hint(current.end(), std::move(cells[i].first), std::move(*results[i]));
    }
    below = std::move(current);
  }

  // h(A) = h_0(A, {ε}) ⊕ h_0(∅, ∅); an absent side is the identity.
  std::map<Subset, Value> outputs;
  const Subset root = Subset::from_sorted(0, {0});
  const Subset none = Subset::empty(0);
  const auto empty_part = below.find(Cell{.support = none, .active = Subset::empty(b)});
  for (const auto& a : subsets_up_to(leaves, q)) {
    const auto rooted = below.find(Cell{.support = root, .active = a});
    std::optional<Value> v;
    if (rooted != below.end()) v = rooted->second;
    if (empty_part != below.end()) v = v ? combine(*v, empty_part->second) : empty_part->second;
    if (v) outputs.emplace_hint(outputs.end(), a, std::move(*v));
  }
  return outputs;
}

}  // namespace detail

}  // namespace dsum
