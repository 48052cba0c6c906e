#pragma once

// Algebraic contracts and the shipped instances.
//
// A contract is a small immutable object exposing `plus` (and for
// semirings `times`, `zero`, `one`) over its `value_type`. Sums that may be
// empty are carried as `Adjoined<T>`, which extends any semigroup with a
// formal identity; evaluation code only ever calls `plus` on two carrier
// values.

#include <concepts>
#include <functional>
#include <memory>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dsum/universe.hpp"

namespace dsum {

template <class S>
using value_t = typename S::value_type;

template <class S>
concept Semigroup = requires(const S& s, const typename S::value_type& a) {
  { s.plus(a, a) } -> std::same_as<typename S::value_type>;
  { s.format(a) } -> std::convertible_to<std::string>;
  { a == a } -> std::convertible_to<bool>;
};

template <class S>
concept Semiring = Semigroup<S> && requires(const S& s, const typename S::value_type& a) {
  { s.times(a, a) } -> std::same_as<typename S::value_type>;
  { s.zero() } -> std::same_as<typename S::value_type>;
  { s.one() } -> std::same_as<typename S::value_type>;
  { S::commutative_product } -> std::convertible_to<bool>;
};

// A semigroup value or the formal identity.
template <class T>
class Adjoined {
 public:
  Adjoined() = default;
  Adjoined(T value) : value_(std::move(value)) {}  // NOLINT(google-explicit-constructor)

  static Adjoined identity() { return {}; }

  bool is_identity() const { return !value_.has_value(); }
  const T& value() const { return *value_; }
  const std::optional<T>& optional() const { return value_; }

  friend bool operator==(const Adjoined&, const Adjoined&) = default;

 private:
  std::optional<T> value_;
};

template <Semigroup S>
Adjoined<value_t<S>> oplus(const S& s, const Adjoined<value_t<S>>& a, const Adjoined<value_t<S>>& b) {
  if (a.is_identity()) return b;
  if (b.is_identity()) return a;
  return s.plus(a.value(), b.value());
}

template <Semigroup S>
std::string format_adjoined(const S& s, const Adjoined<value_t<S>>& a) {
  return a.is_identity() ? std::string("empty") : std::string(s.format(a.value()));
}

// Shortest round-trip text for a double; infinities as "inf"/"-inf".
std::string format_real(double x);
double parse_real(std::string_view text);

// (N, +, *) with checked 64-bit arithmetic.
struct NatSum {
  using value_type = std::uint64_t;
  static constexpr std::string_view name = "nat-sum";
  static constexpr bool commutative_product = true;

  value_type plus(value_type a, value_type b) const;
  value_type times(value_type a, value_type b) const;
  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  std::string format(value_type a) const { return std::to_string(a); }
  value_type parse(std::string_view text) const;
};

// Max-plus on R ∪ {-inf}.
struct MaxWeight {
  using value_type = double;
  static constexpr std::string_view name = "max";
  static constexpr bool commutative_product = true;

  value_type plus(value_type a, value_type b) const { return a < b ? b : a; }
  value_type times(value_type a, value_type b) const { return a + b; }
  value_type zero() const { return -std::numeric_limits<double>::infinity(); }
  value_type one() const { return 0.0; }
  std::string format(value_type a) const { return format_real(a); }
  value_type parse(std::string_view text) const;
};

// Min-plus on R ∪ {+inf}.
struct MinPlus {
  using value_type = double;
  static constexpr std::string_view name = "min-plus";
  static constexpr bool commutative_product = true;

  value_type plus(value_type a, value_type b) const { return b < a ? b : a; }
  value_type times(value_type a, value_type b) const { return a + b; }
  value_type zero() const { return std::numeric_limits<double>::infinity(); }
  value_type one() const { return 0.0; }
  std::string format(value_type a) const { return format_real(a); }
  value_type parse(std::string_view text) const;
};

// Number of optimal objects together with the optimal weight.
struct CountWeight {
  std::uint64_t count = 0;
  double weight = -std::numeric_limits<double>::infinity();

  friend bool operator==(const CountWeight&, const CountWeight&) = default;
};

// Max-weight semiring that also counts how often the maximum is attained.
// Weights compare exactly; counts overflow with an error.
struct CountWeightSemiring {
  using value_type = CountWeight;
  static constexpr std::string_view name = "count-weight";
  static constexpr bool commutative_product = true;

  value_type plus(const value_type& a, const value_type& b) const;
  value_type times(const value_type& a, const value_type& b) const;
  value_type zero() const { return {0, -std::numeric_limits<double>::infinity()}; }
  value_type one() const { return {1, 0.0}; }
  std::string format(const value_type& a) const;
  value_type parse(std::string_view text) const;
};

using Token = std::uint64_t;

// Finite multiset of opaque tokens, stored sorted.
class Multiset {
 public:
  Multiset() = default;
  explicit Multiset(std::vector<Token> tokens);
  static Multiset singleton(Token t) { return Multiset(std::vector<Token>{t}); }

  const std::vector<Token>& tokens() const { return tokens_; }
  std::size_t size() const { return tokens_.size(); }
  std::size_t max_multiplicity() const;

  friend bool operator==(const Multiset&, const Multiset&) = default;

 private:
  friend struct FreeMultiset;
  std::vector<Token> tokens_;
};

// Multiset union. Every token that enters a sum survives it exactly once
// per occurrence, which makes this the instrument for checking which
// summands reach which output.
struct FreeMultiset {
  using value_type = Multiset;
  static constexpr std::string_view name = "multiset";

  value_type plus(const value_type& a, const value_type& b) const;
  std::string format(const value_type& a) const;
  value_type parse(std::string_view text) const;
};

// Finite formal sums of words with natural multiplicities.
using Words = std::map<std::string, std::uint64_t>;

// The free semiring over words: + merges sums, * concatenates pairwise
// (left operand first). Not commutative.
struct WordSum {
  using value_type = Words;
  static constexpr std::string_view name = "word-sum";
  static constexpr bool commutative_product = false;

  value_type plus(const value_type& a, const value_type& b) const;
  value_type times(const value_type& a, const value_type& b) const;
  value_type zero() const { return {}; }
  value_type one() const { return {{std::string(), 1}}; }
  // "ad + 2*bc"; the empty word is "()", the empty sum "{}".
  std::string format(const value_type& a) const;
  value_type parse(std::string_view text) const;

  static value_type word(std::string w) { return {{std::move(w), 1}}; }
};

struct Witnessed {
  double weight = -std::numeric_limits<double>::infinity();
  Subset witness;

  friend bool operator==(const Witnessed&, const Witnessed&) = default;
};

// Maximum weight with an argmax; ties go to the lexicographically smallest
// witness so the result does not depend on summation order.
struct WitnessMax {
  using value_type = Witnessed;
  static constexpr std::string_view name = "witness-max";

  int level = 0;  // level of witnesses produced by parse()

  value_type plus(const value_type& a, const value_type& b) const;
  // "4 [2,3]"
  std::string format(const value_type& a) const;
  value_type parse(std::string_view text) const;
};

// Wraps a contract and counts calls to plus. The counter is shared by
// copies of the wrapper.
template <Semigroup S>
class CountingSemigroup {
 public:
  using value_type = value_t<S>;

  explicit CountingSemigroup(S inner = {}) : inner_(std::move(inner)) {}

  value_type plus(const value_type& a, const value_type& b) const {
    ++*count_;
    return inner_.plus(a, b);
  }
  std::string format(const value_type& a) const { return inner_.format(a); }

  std::uint64_t count() const { return *count_; }
  void reset() const { *count_ = 0; }

 private:
  S inner_;
  std::shared_ptr<std::uint64_t> count_ = std::make_shared<std::uint64_t>(0);
};

struct AxiomResult {
  std::string axiom;
  bool passed = true;
  std::string counterexample;
};

struct AxiomReport {
  std::vector<AxiomResult> results;

  bool all_passed() const;
  const AxiomResult* find(std::string_view axiom) const;
};

// Checks the semigroup laws, and for semirings the semiring laws, on
// `trials` sampled triples. `sample(rng)` must return a value of the
// contract's domain. Failures are reported with the first counterexample.
template <Semigroup S, class Sampler>
AxiomReport check_axioms(const S& s, Sampler&& sample, int trials, std::uint64_t seed) {
  using V = value_t<S>;
  std::mt19937_64 rng(seed);

  std::vector<std::pair<std::string, std::function<std::optional<std::string>(const V&, const V&, const V&)>>> laws;
  auto show = [&s](std::initializer_list<const V*> vs) {
    std::string out;
    for (const V* v : vs) {
      if (!out.empty()) out += ", ";
      out += s.format(*v);
    }
    return out;
  };
  auto law = [&](std::string name, auto lhs, auto rhs, auto args) {
    laws.emplace_back(std::move(name), [=](const V& x, const V& y, const V& z) -> std::optional<std::string> {
      V l = lhs(x, y, z);
      V r = rhs(x, y, z);
      if (l == r) return std::nullopt;
      return args(x, y, z) + " -> " + s.format(l) + " vs " + s.format(r);
    });
  };
  auto x1 = [&](const V& x, const V&, const V&) { return show({&x}); };
  auto x2 = [&](const V& x, const V& y, const V&) { return show({&x, &y}); };
  auto x3 = [&](const V& x, const V& y, const V& z) { return show({&x, &y, &z}); };

  law("plus-associative", [&](const V& x, const V& y, const V& z) { return s.plus(s.plus(x, y), z); },
      [&](const V& x, const V& y, const V& z) { return s.plus(x, s.plus(y, z)); }, x3);
  law("plus-commutative", [&](const V& x, const V& y, const V&) { return s.plus(x, y); },
      [&](const V& x, const V& y, const V&) { return s.plus(y, x); }, x2);

  if constexpr (Semiring<S>) {
    law("plus-identity", [&](const V& x, const V&, const V&) { return s.plus(x, s.zero()); },
        [&](const V& x, const V&, const V&) { return x; }, x1);
    law("times-associative", [&](const V& x, const V& y, const V& z) { return s.times(s.times(x, y), z); },
        [&](const V& x, const V& y, const V& z) { return s.times(x, s.times(y, z)); }, x3);
    law("left-distributive", [&](const V& x, const V& y, const V& z) { return s.times(x, s.plus(y, z)); },
        [&](const V& x, const V& y, const V& z) { return s.plus(s.times(x, y), s.times(x, z)); }, x3);
    law("right-distributive", [&](const V& x, const V& y, const V& z) { return s.times(s.plus(y, z), x); },
        [&](const V& x, const V& y, const V& z) { return s.plus(s.times(y, x), s.times(z, x)); }, x3);
    law("zero-annihilates-left", [&](const V& x, const V&, const V&) { return s.times(s.zero(), x); },
        [&](const V&, const V&, const V&) { return s.zero(); }, x1);
    law("zero-annihilates-right", [&](const V& x, const V&, const V&) { return s.times(x, s.zero()); },
        [&](const V&, const V&, const V&) { return s.zero(); }, x1);
    law("times-identity-left", [&](const V& x, const V&, const V&) { return s.times(s.one(), x); },
        [&](const V& x, const V&, const V&) { return x; }, x1);
    law("times-identity-right", [&](const V& x, const V&, const V&) { return s.times(x, s.one()); },
        [&](const V& x, const V&, const V&) { return x; }, x1);
    if constexpr (S::commutative_product) {
      law("times-commutative", [&](const V& x, const V& y, const V&) { return s.times(x, y); },
          [&](const V& x, const V& y, const V&) { return s.times(y, x); }, x2);
    }
  }

  AxiomReport report;
  for (const auto& [name, check] : laws) report.results.push_back({name, true, {}});

  for (int t = 0; t < trials; ++t) {
    const V x = sample(rng);
    const V y = sample(rng);
    const V z = sample(rng);
    for (std::size_t i = 0; i < laws.size(); ++i) {
      auto& result = report.results[i];
      if (!result.passed) continue;
      try {
        if (auto failure = laws[i].second(x, y, z)) {
          result.passed = false;
          result.counterexample = *failure;
        }
      } catch (const std::exception& e) {
        result.passed = false;
        result.counterexample = show({&x, &y, &z}) + " -> " + e.what();
      }
    }
  }
  return report;
}

}  // namespace dsum
