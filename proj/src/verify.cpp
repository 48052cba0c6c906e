#include "dsum/verify.hpp"

#include <algorithm>

namespace dsum {

Circuit build_named(const std::string& builder, std::uint64_t n, int p, int q) {
  const int b = Universe(n).b();
  auto need = [&](bool ok, const char* what) {
    if (!ok) throw InvalidArgument("builder " + builder + " requires " + what);
  };
  if (builder == "pq") return build_pq(b, p, q);
  if (builder == "valiant") {
    need(p == 1 && q == 1, "p = q = 1");
    return build_valiant(b);
  }
  if (builder == "p1") {
    need(p == 1 && q >= 1, "p = 1 and q >= 1");
    return build_p1(b, q);
  }
  if (builder == "q1") {
    need(q == 1 && p >= 1, "q = 1 and p >= 1");
    return build_q1(b, p);
  }
  if (builder == "yates") return build_yates(b, p, q);
  throw InvalidArgument("unknown builder '" + builder + "' (pq, valiant, p1, q1, yates)");
}

namespace {

// Output labels a construction defines: the one-sided q = 1 circuits only
// compute singleton outputs.
std::vector<Subset> output_domain(const Circuit& c, const Universe& u) {
  if (c.builder() == "valiant" || c.builder() == "q1") return all_subsets_of_size(u.elements(), 1);
  return all_subsets_up_to(u.elements(), c.q());
}

}  // namespace

DisjointnessReport check_disjointness(const Circuit& c, std::uint64_t n) {
  const Universe u(n);
  if (u.b() != c.b()) throw InvalidArgument("circuit tree height does not match the ground set");
  Assignment<Multiset> assignment;
  std::vector<InputLabel> labels;
  for (const auto& gate : c.gates()) {
    const auto* in = std::get_if<InputGate>(&gate);
    if (in == nullptr || u.has_phantom(in->label.support)) continue;
    assignment.emplace(in->label, Multiset::singleton(labels.size()));
    labels.push_back(in->label);
  }
  const auto values = evaluate_gates(c, assignment, FreeMultiset{});

  DisjointnessReport report;
  report.gates = values.size();
  for (const auto& v : values) {
    if (!v.is_identity() && v.value().max_multiplicity() > 1) ++report.bad_gates;
  }
  for (const auto& a : output_domain(c, u)) {
    ++report.outputs;
    std::vector<Token> expected;
    for (Token t = 0; t < labels.size(); ++t) {
      if (labels[t].individualized == intersection(a, labels[t].support)) expected.push_back(t);
    }
    const auto it = c.outputs().find(a);
    const bool exact = it == c.outputs().end() ? expected.empty()
                                              : !values[it->second].is_identity() && values[it->second].value() == Multiset(expected);
    if (exact) ++report.exact_outputs;
  }
  return report;
}

CheckResult check_builder(const std::string& builder, std::uint64_t n, int p, int q, int trials, std::mt19937_64& rng) {
  const Universe u(n);
  const auto c = build_named(builder, n, p, q);
  CheckResult r{builder, 0, trials, {}};
  for (int t = 0; t < trials; ++t) {
    LabelTable<std::uint64_t> g;
    for (const auto& gate : c.gates()) {
      const auto* in = std::get_if<InputGate>(&gate);
      if (in == nullptr || u.has_phantom(in->label.support) || rng() % 5 == 0) continue;
      g.emplace(in->label, Samplers::nat(rng));
    }
    const auto got = evaluate_intersection(c, n, g, NatSum{});
    const auto want = oracle_intersection(n, c.p(), c.q(), g, NatSum{});
    const auto domain = output_domain(c, u);
    if (std::all_of(domain.begin(), domain.end(), [&](const Subset& a) { return got.at(a) == want.at(a); })) {
      ++r.passed;
    } else if (r.first_failure.empty()) {
      r.first_failure = "trial " + std::to_string(t) + ": " + builder + " differs from oracle";
    }
  }
  return r;
}

}  // namespace dsum
