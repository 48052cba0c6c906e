#pragma once

// Summation over a logical ground set [n]: subsets are stored as leaves of
// the padded tree (level Universe(n).b), and padding leaves never appear in
// inputs or outputs.

#include <map>

#include "dsum/algebra.hpp"
#include "dsum/builders.hpp"
#include "dsum/circuit.hpp"
#include "dsum/errors.hpp"
#include "dsum/universe.hpp"

namespace dsum {

// g(I, X) for the intersection form.
template <class V>
using LabelTable = std::map<InputLabel, Adjoined<V>>;

// f(X) for the disjoint form, and every output table.
template <class V>
using SubsetTable = std::map<Subset, Adjoined<V>>;

template <class V>
using OutputTable = SubsetTable<V>;

enum class Mode { circuit, direct };

struct SumOptions {
  Mode mode = Mode::circuit;
  unsigned threads = 1;  // direct mode only
};

// Oracles refuse instances above this many summand evaluations.
inline constexpr std::uint64_t kOracleBudget = 10'000'000;

namespace detail {

void check_sum_params(std::uint64_t n, int p, int q);
void check_label_key(const Universe& u, int p, int q, const InputLabel& label);
void check_subset_key(const Universe& u, std::size_t size, const Subset& x, const char* what);
void check_oracle_budget(std::uint64_t n, int p, int q);

}  // namespace detail

// h(A) for every A ⊆ [n] with |A| <= q, evaluated by an already built
// circuit over the padded universe (b must match). Outputs the circuit does
// not list are empty sums.
template <Semigroup S>
OutputTable<value_t<S>> evaluate_intersection(const Circuit& circuit, std::uint64_t n, const LabelTable<value_t<S>>& g,
                                              const S& s) {
  const Universe u(n);
  if (circuit.b() != u.b()) throw InvalidArgument("circuit tree height does not match the ground set");
  using V = value_t<S>;
  const auto values = evaluate_gates_with(circuit, s, [&](const InputLabel& label) {
    const auto it = g.find(label);
    return it == g.end() ? Adjoined<V>{} : it->second;
  });
  OutputTable<V> out;
  for (const auto& a : subsets_up_to(u.elements(), circuit.q())) {
    const auto it = circuit.outputs().find(a);
    out.emplace_hint(out.end(), a, it == circuit.outputs().end() ? Adjoined<V>{} : values[it->second]);
  }
  return out;
}

// (p,q)-intersection summation: h(A) = ⊕_{X ⊆ [n], |X| <= p} g(A ∩ X, X)
// for every A ⊆ [n] with |A| <= q. Missing g entries are the identity.
template <Semigroup S>
OutputTable<value_t<S>> intersection_sum(std::uint64_t n, int p, int q, const LabelTable<value_t<S>>& g, const S& s,
                                         SumOptions options = {}) {
  using V = value_t<S>;
  detail::check_sum_params(n, p, q);
  const Universe u(n);
  for (const auto& [label, value] : g) detail::check_label_key(u, p, q, label);

  if (options.mode == Mode::circuit) return evaluate_intersection(build_pq(u.b(), p, q), n, g, s);

  auto found = detail::nucleate<V>(
      u.b(), p, q, n,
      [&](const Subset& i, const Subset& x) -> std::optional<V> {
        const auto it = g.find(InputLabel{i, x});
        if (it == g.end() || it->second.is_identity()) return std::nullopt;
        return it->second.value();
      },
      [&](const V& l, const V& r) { return s.plus(l, r); }, options.threads);
  OutputTable<V> out;
  for (const auto& a : subsets_up_to(u.elements(), q)) {
    auto it = found.find(a);
    out.emplace_hint(out.end(), a, it == found.end() ? Adjoined<V>{} : Adjoined<V>(std::move(it->second)));
  }
  return out;
}

// Intersection-form table that carries f(X) on (∅, X) and nothing else.
template <class V>
LabelTable<V> disjoint_to_labels(const SubsetTable<V>& f) {
  LabelTable<V> g;
  for (const auto& [x, value] : f) g.emplace(InputLabel{Subset::empty(x.level()), x}, value);
  return g;
}

// (p,q)-disjoint summation: e(Y) = ⊕_{|X| = p, X ∩ Y = ∅} f(X) for every
// Y ⊆ [n] with |Y| = q. Outputs without a qualifying X are the identity.
template <Semigroup S>
OutputTable<value_t<S>> disjoint_sum(std::uint64_t n, int p, int q, const SubsetTable<value_t<S>>& f, const S& s,
                                     SumOptions options = {}) {
  detail::check_sum_params(n, p, q);
  const Universe u(n);
  for (const auto& [x, value] : f) detail::check_subset_key(u, static_cast<std::size_t>(p), x, "f");
  auto all = intersection_sum(n, p, q, disjoint_to_labels(f), s, options);
  std::erase_if(all, [q](const auto& entry) { return entry.first.size() != static_cast<std::size_t>(q); });
  return all;
}

// ⊕_{X ∩ Y = ∅} f(X) ⊙ g(Y) over p-subsets X and q-subsets Y, as
// ⊕_Y e(Y) ⊙ g(Y). The f factor is always on the left.
template <Semiring S>
value_t<S> pair_sum(std::uint64_t n, int p, int q, const SubsetTable<value_t<S>>& f, const SubsetTable<value_t<S>>& g,
                    const S& s, SumOptions options = {}) {
  detail::check_sum_params(n, p, q);
  const Universe u(n);
  for (const auto& [y, value] : g) detail::check_subset_key(u, static_cast<std::size_t>(q), y, "g");
  const auto e = disjoint_sum(n, p, q, f, s, options);
  auto total = s.zero();
  for (const auto& [y, ey] : e) {
    if (ey.is_identity()) continue;
    const auto it = g.find(y);
    if (it == g.end() || it->second.is_identity()) continue;
    total = s.plus(total, s.times(ey.value(), it->second.value()));
  }
  return total;
}

// Literal double enumeration of h(A) = ⊕_X g(A ∩ X, X) over [n] only.
template <Semigroup S>
OutputTable<value_t<S>> oracle_intersection(std::uint64_t n, int p, int q, const LabelTable<value_t<S>>& g, const S& s) {
  using V = value_t<S>;
  detail::check_sum_params(n, p, q);
  detail::check_oracle_budget(n, p, q);
  const Universe u(n);
  const auto xs = all_subsets_up_to(u.elements(), p);
  OutputTable<V> out;
  for (const auto& a : subsets_up_to(u.elements(), q)) {
    Adjoined<V> acc;
    for (const auto& x : xs) {
      const auto it = g.find(InputLabel{intersection(a, x), x});
      if (it != g.end()) acc = oplus(s, acc, it->second);
    }
    out.emplace_hint(out.end(), a, std::move(acc));
  }
  return out;
}

// Literal double enumeration of e(Y) = ⊕_{|X| = p, X ∩ Y = ∅} f(X).
template <Semigroup S>
OutputTable<value_t<S>> oracle_disjoint(std::uint64_t n, int p, int q, const SubsetTable<value_t<S>>& f, const S& s) {
  using V = value_t<S>;
  detail::check_sum_params(n, p, q);
  detail::check_oracle_budget(n, p, q);
  const Universe u(n);
  const auto xs = all_subsets_of_size(u.elements(), p);
  OutputTable<V> out;
  for (const auto& y : all_subsets_of_size(u.elements(), q)) {
    Adjoined<V> acc;
    for (const auto& x : xs) {
      if (!disjoint(x, y)) continue;
      const auto it = f.find(x);
      if (it != f.end()) acc = oplus(s, acc, it->second);
    }
    out.emplace_hint(out.end(), y, std::move(acc));
  }
  return out;
}

}  // namespace dsum
