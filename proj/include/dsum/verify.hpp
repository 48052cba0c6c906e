#pragma once

// Randomized cross-checks between circuit evaluation, direct evaluation,
// the alternative builders and the brute-force oracles.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "dsum/algebra.hpp"
#include "dsum/builders.hpp"
#include "dsum/summation.hpp"

namespace dsum {

// Random values that keep every ⊕ and ⊙ exact.
struct Samplers {
  static std::uint64_t nat(std::mt19937_64& rng) { return rng() % 1000; }
  static double real(std::mt19937_64& rng) { return static_cast<double>(static_cast<int>(rng() % 41) - 20); }
  static CountWeight count_weight(std::mt19937_64& rng) {
    return {1 + rng() % 3, static_cast<double>(static_cast<int>(rng() % 7) - 3)};
  }
  static Multiset multiset(std::mt19937_64& rng) { return Multiset({rng() % 50, rng() % 50}); }
};

// Roughly four in five valid labels of [n] get a value.
template <class V, class Gen>
LabelTable<V> random_label_table(std::uint64_t n, int p, int q, std::mt19937_64& rng, Gen&& gen) {
  const Universe u(n);
  LabelTable<V> g;
  for (const auto& x : subsets_up_to(u.elements(), p)) {
    for (const auto& i : subsets_up_to(x, q)) {
      if (rng() % 5 == 0) continue;
      g.emplace(InputLabel{i, x}, gen(rng));
    }
  }
  return g;
}

struct CheckResult {
  std::string name;
  int passed = 0;
  int trials = 0;
  std::string first_failure;

  bool ok() const { return passed == trials; }
};

// Circuit mode (with the given prebuilt circuit), direct mode and the
// oracle must agree exactly on `trials` random tables.
template <Semigroup S, class Gen>
CheckResult check_modes(const Circuit& circuit, std::uint64_t n, int p, int q, const S& s, Gen&& gen, int trials,
                        std::mt19937_64& rng) {
  CheckResult r{std::string(S::name), 0, trials, {}};
  for (int t = 0; t < trials; ++t) {
    const auto g = random_label_table<value_t<S>>(n, p, q, rng, gen);
    const auto oracle = oracle_intersection(n, p, q, g, s);
    const auto via_circuit = evaluate_intersection(circuit, n, g, s);
    const auto direct = intersection_sum(n, p, q, g, s, {Mode::direct, 1});
    if (via_circuit == oracle && direct == oracle) {
      ++r.passed;
    } else if (r.first_failure.empty()) {
      r.first_failure = "trial " + std::to_string(t) + ": " + (via_circuit == oracle ? "direct" : "circuit") + " differs from oracle";
    }
  }
  return r;
}

struct DisjointnessReport {
  std::uint64_t gates = 0;
  std::uint64_t bad_gates = 0;    // gates whose multiset has a repeated token
  std::uint64_t outputs = 0;
  std::uint64_t exact_outputs = 0;  // outputs carrying exactly the expected tokens

  bool ok() const { return bad_gates == 0 && exact_outputs == outputs; }
};

// Feeds one distinct token to every input gate of `c` and checks that every
// gate is a disjoint union and that output A receives exactly the inputs
// (I, X) with I = A ∩ X, X inside [n]. Inputs on padding leaves get no token.
DisjointnessReport check_disjointness(const Circuit& c, std::uint64_t n);

// Compares a disjoint-summation builder ("valiant", "p1", "q1", "yates")
// against the oracle on random NatSum tables supported on its inputs.
CheckResult check_builder(const std::string& builder, std::uint64_t n, int p, int q, int trials, std::mt19937_64& rng);

// Builds the named construction over the padded universe of [n].
// Throws InvalidArgument when (p, q) does not fit the construction.
Circuit build_named(const std::string& builder, std::uint64_t n, int p, int q);

}  // namespace dsum
