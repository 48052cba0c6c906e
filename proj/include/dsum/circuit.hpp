#pragma once

// Monotone arithmetic circuits: a topologically ordered list of input
// gates, labelled by pairs (I, X), and binary ⊕ gates, with output gates
// labelled by subsets A.

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "dsum/algebra.hpp"
#include "dsum/universe.hpp"

namespace dsum {

using GateIndex = std::uint32_t;

struct InputLabel {
  Subset individualized;  // I
  Subset support;         // X

  friend auto operator<=>(const InputLabel&, const InputLabel&) = default;
  friend bool operator==(const InputLabel&, const InputLabel&) = default;
};

struct InputGate {
  InputLabel label;
  friend bool operator==(const InputGate&, const InputGate&) = default;
};

struct AddGate {
  GateIndex left = 0;
  GateIndex right = 0;
  friend bool operator==(const AddGate&, const AddGate&) = default;
};

using Gate = std::variant<InputGate, AddGate>;

// Immutable once constructed. The constructor does not check structure;
// `validate` does.
class Circuit {
 public:
  Circuit() = default;
  Circuit(int b, int p, int q, std::string builder, std::vector<Gate> gates, std::map<Subset, GateIndex> outputs)
      : b_(b), p_(p), q_(q), builder_(std::move(builder)), gates_(std::move(gates)), outputs_(std::move(outputs)) {}

  int b() const { return b_; }
  int p() const { return p_; }
  int q() const { return q_; }
  // Name of the construction that produced the circuit ("pq", "valiant", ...).
  const std::string& builder() const { return builder_; }
  const std::vector<Gate>& gates() const { return gates_; }
  // Output label A -> gate. Outputs whose sum is empty are not listed.
  const std::map<Subset, GateIndex>& outputs() const { return outputs_; }

  friend bool operator==(const Circuit&, const Circuit&) = default;

 private:
  int b_ = 0;
  int p_ = 0;
  int q_ = 0;
  std::string builder_;
  std::vector<Gate> gates_;
  std::map<Subset, GateIndex> outputs_;
};

template <class V>
using Assignment = std::map<InputLabel, Adjoined<V>>;

// Values of every gate, in gate order. `input(label)` supplies the value of
// an input gate.
template <Semigroup S, class InputFn>
std::vector<Adjoined<value_t<S>>> evaluate_gates_with(const Circuit& c, const S& s, InputFn&& input) {
  std::vector<Adjoined<value_t<S>>> values;
  values.reserve(c.gates().size());
  for (const auto& gate : c.gates()) {
    if (const auto* in = std::get_if<InputGate>(&gate)) {
      values.push_back(input(in->label));
    } else {
      const auto& add = std::get<AddGate>(gate);
      values.push_back(oplus(s, values[add.left], values[add.right]));
    }
  }
  return values;
}

template <Semigroup S>
std::vector<Adjoined<value_t<S>>> evaluate_gates(const Circuit& c, const Assignment<value_t<S>>& assignment, const S& s) {
  return evaluate_gates_with(c, s, [&](const InputLabel& label) {
    const auto it = assignment.find(label);
    return it == assignment.end() ? Adjoined<value_t<S>>{} : it->second;
  });
}

// Output label -> value. Labels missing from the assignment are the formal
// identity.
template <Semigroup S>
std::map<Subset, Adjoined<value_t<S>>> evaluate(const Circuit& c, const Assignment<value_t<S>>& assignment, const S& s) {
  const auto values = evaluate_gates(c, assignment, s);
  std::map<Subset, Adjoined<value_t<S>>> out;
  for (const auto& [label, gate] : c.outputs()) out.emplace(label, values[gate]);
  return out;
}

struct ValidationReport {
  bool ok = true;
  std::string violation;  // first violation found; empty when ok
  explicit operator bool() const { return ok; }
};

// Checks operand order, input label uniqueness, label bounds
// (|X| <= p, |I| <= q, I ⊆ X, level b) and the output map.
ValidationReport validate(const Circuit& c);

struct GateCounts {
  std::uint64_t inputs = 0;
  std::uint64_t adds = 0;             // ⊕ gates present in the gate list
  std::uint64_t outputs = 0;          // distinct output labels
  std::uint64_t aliased_outputs = 0;  // output labels without an ⊕ gate of their own

  // Every output label accounted as one output ⊕ gate, whether or not it
  // aliases an existing gate. Equals `adds` whenever no output aliases.
  std::uint64_t accounted_adds() const { return adds + aliased_outputs; }
};

GateCounts gate_counts(const Circuit& c);

// JSON document; the same circuit always gives the same bytes.
std::string serialize(const Circuit& c);
// Throws FormatError on malformed or structurally invalid input.
Circuit deserialize(std::string_view text);

// Graphviz rendering, one node per gate.
std::string to_dot(const Circuit& c);

}  // namespace dsum
