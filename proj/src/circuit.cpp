#include "dsum/circuit.hpp"

#include <set>
#include <sstream>

#include <json.hpp>

#include "dsum/errors.hpp"

namespace dsum {

namespace {

constexpr std::string_view kFormatTag = "dsum-circuit";
constexpr int kFormatVersion = 1;

std::string label_text(const InputLabel& label) {
  return format_subset(label.individualized) + " | " + format_subset(label.support);
}

}  // namespace

ValidationReport validate(const Circuit& c) {
  auto fail = [](std::string what) { return ValidationReport{false, std::move(what)}; };
  if (c.b() < 0 || c.b() > kMaxLevel || c.p() < 0 || c.q() < 0) return fail("parameters out of range");

  std::set<InputLabel> seen;
  const auto p = static_cast<std::size_t>(c.p());
  const auto q = static_cast<std::size_t>(c.q());
  for (std::size_t i = 0; i < c.gates().size(); ++i) {
    const auto& gate = c.gates()[i];
    if (const auto* in = std::get_if<InputGate>(&gate)) {
      const auto& [ind, sup] = in->label;
      if (ind.level() != c.b() || sup.level() != c.b()) return fail("label bounds: gate " + std::to_string(i) + " not on leaf level");
      if (sup.size() > p || ind.size() > q || !is_subset(ind, sup)) {
        return fail("label bounds: gate " + std::to_string(i) + " (" + label_text(in->label) + ")");
      }
      if (!seen.insert(in->label).second) return fail("duplicate input: " + label_text(in->label));
    } else {
      const auto& add = std::get<AddGate>(gate);
      if (add.left >= i || add.right >= i) return fail("operand order: gate " + std::to_string(i));
    }
  }
  for (const auto& [label, gate] : c.outputs()) {
    if (gate >= c.gates().size()) return fail("output index: " + format_subset(label));
    if (label.level() != c.b() || label.size() > q) return fail("output label bounds: " + format_subset(label));
  }
  return {};
}

GateCounts gate_counts(const Circuit& c) {
  GateCounts counts;
  for (const auto& gate : c.gates()) {
    if (std::holds_alternative<InputGate>(gate)) {
      ++counts.inputs;
    } else {
      ++counts.adds;
    }
  }
  counts.outputs = c.outputs().size();
  std::set<GateIndex> claimed;
  for (const auto& [label, gate] : c.outputs()) {
    const bool is_add = std::holds_alternative<AddGate>(c.gates().at(gate));
    if (!is_add || !claimed.insert(gate).second) ++counts.aliased_outputs;
  }
  return counts;
}

std::string serialize(const Circuit& c) {
  using nlohmann::json;
  std::ostringstream out;
  out << "{\n"
      << "  \"format\": " << json(kFormatTag).dump() << ",\n"
      << "  \"version\": " << kFormatVersion << ",\n"
      << "  \"builder\": " << json(c.builder()).dump() << ",\n"
      << "  \"b\": " << c.b() << ",\n"
      << "  \"p\": " << c.p() << ",\n"
      << "  \"q\": " << c.q() << ",\n"
      << "  \"gates\": [";
  for (std::size_t i = 0; i < c.gates().size(); ++i) {
    json g;
    if (const auto* in = std::get_if<InputGate>(&c.gates()[i])) {
      g = json::array({"in", format_subset(in->label.individualized), format_subset(in->label.support)});
    } else {
      const auto& add = std::get<AddGate>(c.gates()[i]);
      g = json::array({"add", add.left, add.right});
    }
    out << (i ? ",\n    " : "\n    ") << g.dump();
  }
  out << (c.gates().empty() ? "],\n" : "\n  ],\n");
  out << "  \"outputs\": {";
  bool first = true;
  for (const auto& [label, gate] : c.outputs()) {
    out << (first ? "\n    " : ",\n    ") << json(format_subset(label)).dump() << ": " << gate;
    first = false;
  }
  out << (first ? "}\n" : "\n  }\n") << "}\n";
  return out.str();
}

Circuit deserialize(std::string_view text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::exception& e) {
    throw FormatError(std::string("circuit file: ") + e.what());
  }
  try {
    if (doc.at("format").get<std::string>() != kFormatTag) throw FormatError("circuit file: wrong format tag");
    if (doc.at("version").get<int>() != kFormatVersion) throw FormatError("circuit file: unsupported version");
    const int b = doc.at("b").get<int>();
    const int p = doc.at("p").get<int>();
    const int q = doc.at("q").get<int>();
    if (b < 0 || b > kMaxLevel) throw FormatError("circuit file: bad tree height");
    std::vector<Gate> gates;
    for (const auto& g : doc.at("gates")) {
      const auto kind = g.at(0).get<std::string>();
      if (kind == "in" && g.size() == 3) {
        gates.emplace_back(InputGate{{parse_subset(g.at(1).get<std::string>(), b), parse_subset(g.at(2).get<std::string>(), b)}});
      } else if (kind == "add" && g.size() == 3) {
        gates.emplace_back(AddGate{g.at(1).get<GateIndex>(), g.at(2).get<GateIndex>()});
      } else {
        throw FormatError("circuit file: bad gate entry " + g.dump());
      }
    }
    std::map<Subset, GateIndex> outputs;
    for (const auto& [key, value] : doc.at("outputs").items()) {
      if (!outputs.emplace(parse_subset(key, b), value.get<GateIndex>()).second) {
        throw FormatError("circuit file: duplicate output " + key);
      }
    }
    Circuit c(b, p, q, doc.value("builder", std::string()), std::move(gates), std::move(outputs));
    if (auto report = validate(c); !report) throw FormatError("circuit file: " + report.violation);
    return c;
  } catch (const json::exception& e) {
    throw FormatError(std::string("circuit file: ") + e.what());
  }
}

std::string to_dot(const Circuit& c) {
  std::map<GateIndex, std::string> output_names;
  for (const auto& [label, gate] : c.outputs()) {
    auto& name = output_names[gate];
    name += (name.empty() ? "" : " ") + format_subset(label);
  }
  std::ostringstream out;
  out << "digraph circuit {\n";
  for (std::size_t i = 0; i < c.gates().size(); ++i) {
    const auto gi = static_cast<GateIndex>(i);
    std::string text;
    std::string attrs;
    if (const auto* in = std::get_if<InputGate>(&c.gates()[i])) {
      text = "(" + label_text(in->label) + ")";
      attrs = "shape=box, ";
    } else {
      text = "+";
    }
    if (auto it = output_names.find(gi); it != output_names.end()) {
      text += "\\nout " + it->second;
      attrs += "peripheries=2, ";
    }
    out << "  g" << i << " [" << attrs << "label=\"" << text << "\"];\n";
  }
  for (std::size_t i = 0; i < c.gates().size(); ++i) {
    if (const auto* add = std::get_if<AddGate>(&c.gates()[i])) {
      out << "  g" << add->left << " -> g" << i << ";\n";
      out << "  g" << add->right << " -> g" << i << ";\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace dsum
