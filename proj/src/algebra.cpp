#include "dsum/algebra.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "dsum/errors.hpp"

namespace dsum {

namespace {

std::string_view trim(std::string_view v) {
  while (!v.empty() && (v.front() == ' ' || v.front() == '\t')) v.remove_prefix(1);
  while (!v.empty() && (v.back() == ' ' || v.back() == '\t' || v.back() == '\r' || v.back() == '\n')) v.remove_suffix(1);
  return v;
}

std::uint64_t parse_count(std::string_view text) {
  text = trim(text);
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec == std::errc::result_out_of_range) throw OverflowError("integer '" + std::string(text) + "' exceeds 64 bits");
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw FormatError("expected a nonnegative integer, got '" + std::string(text) + "'");
  }
  return value;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("count overflow in addition");
  return r;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("count overflow in multiplication");
  return r;
}

}  // namespace

std::string format_real(double x) {
  if (std::isinf(x)) return x < 0 ? "-inf" : "inf";
  if (std::isnan(x)) return "nan";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

double parse_real(std::string_view text) {
  text = trim(text);
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  if (text == "inf" || text == "+inf") return std::numeric_limits<double>::infinity();
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size() || std::isnan(value)) {
    throw FormatError("expected a real number, got '" + std::string(text) + "'");
  }
  return value;
}

NatSum::value_type NatSum::plus(value_type a, value_type b) const { return checked_add(a, b); }
NatSum::value_type NatSum::times(value_type a, value_type b) const { return checked_mul(a, b); }
NatSum::value_type NatSum::parse(std::string_view text) const { return parse_count(text); }

MaxWeight::value_type MaxWeight::parse(std::string_view text) const {
  const double v = parse_real(text);
  if (v == std::numeric_limits<double>::infinity()) throw FormatError("max weights live in R ∪ {-inf}");
  return v;
}

MinPlus::value_type MinPlus::parse(std::string_view text) const {
  const double v = parse_real(text);
  if (v == -std::numeric_limits<double>::infinity()) throw FormatError("min-plus weights live in R ∪ {+inf}");
  return v;
}

CountWeight CountWeightSemiring::plus(const CountWeight& a, const CountWeight& b) const {
  if (a.weight > b.weight) return a;
  if (a.weight < b.weight) return b;
  return {checked_add(a.count, b.count), a.weight};
}

CountWeight CountWeightSemiring::times(const CountWeight& a, const CountWeight& b) const {
  return {checked_mul(a.count, b.count), a.weight + b.weight};
}

std::string CountWeightSemiring::format(const CountWeight& a) const {
  return std::to_string(a.count) + "," + format_real(a.weight);
}

CountWeight CountWeightSemiring::parse(std::string_view text) const {
  const auto comma = text.find(',');
  if (comma == std::string_view::npos) throw FormatError("count-weight values are written 'count,weight'");
  CountWeight v{parse_count(text.substr(0, comma)), parse_real(text.substr(comma + 1))};
  if (v.weight == std::numeric_limits<double>::infinity()) throw FormatError("count-weight weights live in R ∪ {-inf}");
  return v;
}

Multiset::Multiset(std::vector<Token> tokens) : tokens_(std::move(tokens)) { std::sort(tokens_.begin(), tokens_.end()); }

std::size_t Multiset::max_multiplicity() const {
  std::size_t best = 0;
  for (std::size_t i = 0; i < tokens_.size();) {
    std::size_t j = i;
    while (j < tokens_.size() && tokens_[j] == tokens_[i]) ++j;
    best = std::max(best, j - i);
    i = j;
  }
  return best;
}

Multiset FreeMultiset::plus(const Multiset& a, const Multiset& b) const {
  Multiset out;
  out.tokens_.reserve(a.size() + b.size());
  std::merge(a.tokens_.begin(), a.tokens_.end(), b.tokens_.begin(), b.tokens_.end(), std::back_inserter(out.tokens_));
  return out;
}

std::string FreeMultiset::format(const Multiset& a) const {
  std::string out = "{";
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(a.tokens()[i]);
  }
  return out + "}";
}

Multiset FreeMultiset::parse(std::string_view text) const {
  text = trim(text);
  if (text.size() >= 2 && text.front() == '{' && text.back() == '}') text = trim(text.substr(1, text.size() - 2));
  std::vector<Token> tokens;
  while (!text.empty()) {
    const auto comma = text.find(',');
    tokens.push_back(parse_count(text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return Multiset(std::move(tokens));
}

Words WordSum::plus(const Words& a, const Words& b) const {
  Words out = a;
  for (const auto& [w, m] : b) {
    auto& slot = out[w];
    slot = checked_add(slot, m);
  }
  return out;
}

Words WordSum::times(const Words& a, const Words& b) const {
  Words out;
  for (const auto& [u, m] : a) {
    for (const auto& [v, k] : b) {
      auto& slot = out[u + v];
      slot = checked_add(slot, checked_mul(m, k));
    }
  }
  return out;
}

std::string WordSum::format(const Words& a) const {
  if (a.empty()) return "{}";
  std::string out;
  for (const auto& [w, m] : a) {
    if (!out.empty()) out += " + ";
    if (m != 1) out += std::to_string(m) + "*";
    out += w.empty() ? "()" : w;
  }
  return out;
}

Words WordSum::parse(std::string_view text) const {
  text = trim(text);
  Words out;
  if (text == "{}") return out;
  while (true) {
    const auto plus_at = text.find('+');
    auto term = trim(text.substr(0, plus_at));
    std::uint64_t mult = 1;
    if (const auto star = term.find('*'); star != std::string_view::npos) {
      mult = parse_count(term.substr(0, star));
      term = trim(term.substr(star + 1));
    }
    if (term.empty()) throw FormatError("empty term in word sum (write the empty word as '()')");
    std::string word = term == "()" ? std::string() : std::string(term);
    if (word.find_first_of(" \t*(){}") != std::string::npos) throw FormatError("bad word '" + word + "'");
    auto& slot = out[word];
    slot = checked_add(slot, mult);
    if (plus_at == std::string_view::npos) break;
    text.remove_prefix(plus_at + 1);
  }
  return out;
}

Witnessed WitnessMax::plus(const Witnessed& a, const Witnessed& b) const {
  if (a.weight > b.weight) return a;
  if (a.weight < b.weight) return b;
  return b.witness < a.witness ? b : a;
}

std::string WitnessMax::format(const Witnessed& a) const {
  return format_real(a.weight) + " [" + format_subset(a.witness) + "]";
}

Witnessed WitnessMax::parse(std::string_view text) const {
  text = trim(text);
  Witnessed v;
  const auto open = text.find('[');
  if (open == std::string_view::npos) {
    v.weight = parse_real(text);
    v.witness = Subset::empty(level);
  } else {
    const auto close = text.find(']', open);
    if (close == std::string_view::npos || !trim(text.substr(close + 1)).empty()) {
      throw FormatError("witness-max values are written 'weight [X]'");
    }
    v.weight = parse_real(text.substr(0, open));
    v.witness = parse_subset(text.substr(open + 1, close - open - 1), level);
  }
  if (v.weight == std::numeric_limits<double>::infinity()) throw FormatError("witness weights live in R ∪ {-inf}");
  return v;
}

bool AxiomReport::all_passed() const {
  return std::all_of(results.begin(), results.end(), [](const AxiomResult& r) { return r.passed; });
}

const AxiomResult* AxiomReport::find(std::string_view axiom) const {
  for (const auto& r : results) {
    if (r.axiom == axiom) return &r;
  }
  return nullptr;
}

}  // namespace dsum
