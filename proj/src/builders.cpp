#include "dsum/builders.hpp"

#include <cmath>

namespace dsum {

namespace {

std::uint64_t add_checked(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("gate count overflow");
  return r;
}

std::uint64_t mul_checked(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("gate count overflow");
  return r;
}

// Gate list under construction. An absent operand stands for the formal
// identity, so adding it costs no gate.
class GateList {
 public:
  GateIndex input(Subset individualized, Subset support) {
    return push(InputGate{{std::move(individualized), std::move(support)}});
  }

  GateIndex add(GateIndex left, GateIndex right) { return push(AddGate{left, right}); }

  std::optional<GateIndex> add(std::optional<GateIndex> left, std::optional<GateIndex> right) {
    if (!left) return right;
    if (!right) return left;
    return add(*left, *right);
  }

  std::vector<Gate> take() { return std::move(gates_); }

 private:
  GateIndex push(Gate g) {
    if (gates_.size() >= kMaxCircuitGates) throw ScaleGuardError("circuit exceeds the gate limit");
    gates_.push_back(std::move(g));
    return static_cast<GateIndex>(gates_.size() - 1);
  }

  std::vector<Gate> gates_;
};

void require_height(int b, int minimum, const char* who) {
  if (b < minimum || b > kMaxLevel) {
    throw InvalidArgument(std::string(who) + ": tree height must be in [" + std::to_string(minimum) + ", 62]");
  }
}

void require_materializable(double estimate, const char* who) {
  if (!(estimate <= static_cast<double>(kMaxCircuitGates))) {
    throw ScaleGuardError(std::string(who) + ": instance exceeds the gate limit");
  }
}

// Subtree sums h+_l(w) for every node on levels 1..b of a tree whose
// leaves carry singleton inputs. plus[l][w] is the gate of node w.
std::vector<std::vector<GateIndex>> singleton_subtree_sums(GateList& gl, int b) {
  std::vector<std::vector<GateIndex>> plus(static_cast<std::size_t>(b) + 1);
  const std::uint64_t n = std::uint64_t{1} << b;
  for (std::uint64_t x = 0; x < n; ++x) plus[b].push_back(gl.input(Subset::empty(b), Subset::from_sorted(b, {x})));
  for (int level = b - 1; level >= 1; --level) {
    const auto& next = plus[static_cast<std::size_t>(level) + 1];
    for (std::uint64_t w = 0; w < (std::uint64_t{1} << level); ++w) {
      plus[static_cast<std::size_t>(level)].push_back(gl.add(next[2 * w], next[2 * w + 1]));
    }
  }
  return plus;
}

}  // namespace

PredictedCounts predicted_gate_count(int b, int p, int q) {
  if (b < 0 || b > kMaxLevel || p < 0 || q < 0) throw InvalidArgument("predicted_gate_count: bad parameters");
  PredictedCounts out;
  const std::uint64_t n = std::uint64_t{1} << b;

  for (int i = 0; i <= p; ++i) {
    const auto ci = binomial(n, static_cast<std::uint64_t>(i));
    if (ci == 0) break;
    for (int j = 0; j <= std::min(q, i); ++j) {
      out.inputs = add_checked(out.inputs, mul_checked(ci, binomial(static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(j))));
    }
  }

  for (int level = 0; level < b; ++level) {
    const std::uint64_t nodes = std::uint64_t{1} << level;
    const std::uint64_t leaves_below = std::uint64_t{1} << (b - level);
    for (int i = 0; i <= p; ++i) {
      const auto supports = binomial(nodes, static_cast<std::uint64_t>(i));
      if (supports == 0) break;
      const auto fold = child_count(i, p) - 1;
      if (fold == 0) continue;
      const auto reach = mul_checked(static_cast<std::uint64_t>(i), leaves_below);
      for (int j = 0; j <= q; ++j) {
        const auto actives = binomial(reach, static_cast<std::uint64_t>(j));
        if (actives == 0) break;
        out.adds = add_checked(out.adds, mul_checked(mul_checked(supports, actives), fold));
      }
    }
  }

  out.outputs = binomial_up_to(n, static_cast<std::uint64_t>(q));
  out.adds = add_checked(out.adds, out.outputs);
  return out;
}

Circuit build_pq(int b, int p, int q) {
  require_height(b, 1, "build_pq");
  if (p < 0 || q < 0) throw InvalidArgument("build_pq: p and q must be nonnegative");
  const auto predicted = predicted_gate_count(b, p, q);
  require_materializable(static_cast<double>(predicted.inputs) + static_cast<double>(predicted.adds), "build_pq");

  GateList gl;
  auto outputs = detail::nucleate<GateIndex>(
      b, p, q, std::uint64_t{1} << b,
      [&](const Subset& i, const Subset& x) -> std::optional<GateIndex> { return gl.input(i, x); },
      [&](GateIndex l, GateIndex r) { return gl.add(l, r); });
  return Circuit(b, p, q, "pq", gl.take(), std::move(outputs));
}

Circuit build_valiant(int b) {
  require_height(b, 2, "build_valiant");
  require_materializable(std::ldexp(4.0, b), "build_valiant");
  GateList gl;
  const auto plus = singleton_subtree_sums(gl, b);

  // minus[w] = sum of every leaf outside the subtree of w.
  std::vector<GateIndex> minus = {plus[1][1], plus[1][0]};
  for (int level = 2; level <= b; ++level) {
    std::vector<GateIndex> next;
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << level); ++v) {
      next.push_back(gl.add(minus[v >> 1], plus[static_cast<std::size_t>(level)][v ^ 1]));
    }
    minus = std::move(next);
  }

  std::map<Subset, GateIndex> outputs;
  for (std::uint64_t y = 0; y < minus.size(); ++y) outputs.emplace(Subset::from_sorted(b, {y}), minus[y]);
  return Circuit(b, 1, 1, "valiant", gl.take(), std::move(outputs));
}

Circuit build_p1(int b, int q) {
  require_height(b, 2, "build_p1");
  if (q < 1) throw InvalidArgument("build_p1: q must be at least 1");
  require_materializable(static_cast<double>(q + 1) * static_cast<double>(binomial_up_to(std::uint64_t{1} << b, static_cast<std::uint64_t>(q))) * 2.0,
                         "build_p1");
  GateList gl;
  const auto plus = singleton_subtree_sums(gl, b);

  // minus[U] = sum of every leaf outside span(U); absent = empty sum.
  std::map<Subset, std::optional<GateIndex>> minus;
  minus.emplace(Subset::empty(0), gl.add(plus[1][0], plus[1][1]));
  minus.emplace(Subset::from_sorted(0, {0}), std::nullopt);

  for (int level = 1; level <= b; ++level) {
    std::map<Subset, std::optional<GateIndex>> next;
    for (const auto& u : subsets_up_to(level_prefix(level, std::uint64_t{1} << level), q)) {
      auto acc = minus.at(project(u, level - 1));
      // Siblings of members of U that are not themselves in U.
      std::vector<std::uint64_t> hat;
      for (auto v : u) {
        if (!u.contains(v ^ 1)) hat.push_back(v ^ 1);
      }
      std::sort(hat.begin(), hat.end());
      for (auto x : hat) acc = gl.add(acc, std::optional<GateIndex>(plus[static_cast<std::size_t>(level)][x]));
      next.emplace_hint(next.end(), u, acc);
    }
    minus = std::move(next);
  }

  std::map<Subset, GateIndex> outputs;
  for (const auto& [y, gate] : minus) {
    if (gate) outputs.emplace_hint(outputs.end(), y, *gate);
  }
  return Circuit(b, 1, q, "p1", gl.take(), std::move(outputs));
}

Circuit build_q1(int b, int p) {
  require_height(b, 2, "build_q1");
  if (p < 1) throw InvalidArgument("build_q1: p must be at least 1");
  const double leaves = std::ldexp(1.0, b);
  require_materializable(static_cast<double>(p + 2) * std::pow(leaves + 1.0, p) * 4.0, "build_q1");
  GateList gl;

  // plus[l][W] = sum of f(X) over X projecting to W, for nonempty W.
  std::vector<std::map<Subset, GateIndex>> plus(static_cast<std::size_t>(b) + 1);
  std::optional<GateIndex> empty_input;
  for (const auto& x : subsets_up_to(level_prefix(b, std::uint64_t{1} << b), p)) {
    const auto g = gl.input(Subset::empty(b), x);
    if (x.empty()) {
      empty_input = g;
    } else {
      plus[static_cast<std::size_t>(b)].emplace_hint(plus[static_cast<std::size_t>(b)].end(), x, g);
    }
  }
  for (int level = b - 1; level >= 1; --level) {
    const auto& below = plus[static_cast<std::size_t>(level) + 1];
    auto& here = plus[static_cast<std::size_t>(level)];
    for (const auto& w : subsets_up_to(level_prefix(level, std::uint64_t{1} << level), p)) {
      if (w.empty()) continue;
      std::optional<GateIndex> acc;
      for (const auto& z : child_families(w, p)) acc = gl.add(acc, std::optional<GateIndex>(below.at(z)));
      here.emplace_hint(here.end(), w, *acc);
    }
  }

  // minus[u] = sum of f(X) over X avoiding span(u). At the root only X = ∅ qualifies.
  std::vector<GateIndex> minus = {*empty_input};
  for (int level = 1; level <= b; ++level) {
    const std::uint64_t nodes = std::uint64_t{1} << level;
    const auto& here = plus[static_cast<std::size_t>(level)];
    std::vector<GateIndex> next;
    next.reserve(nodes);
    for (std::uint64_t v = 0; v < nodes; ++v) {
      const std::uint64_t parent = v >> 1;
      std::vector<std::uint64_t> others;
      for (std::uint64_t u = 0; u < nodes; ++u) {
        if ((u >> 1) != parent) others.push_back(u);
      }
      GateIndex acc = minus[parent];
      for (const auto& w : subsets_up_to(Subset::from_sorted(level, std::move(others)), p - 1)) {
        acc = gl.add(acc, here.at(set_union(Subset::from_sorted(level, {v ^ 1}), w)));
      }
      next.push_back(acc);
    }
    minus = std::move(next);
  }

  std::map<Subset, GateIndex> outputs;
  for (std::uint64_t y = 0; y < minus.size(); ++y) outputs.emplace(Subset::from_sorted(b, {y}), minus[y]);
  return Circuit(b, p, 1, "q1", gl.take(), std::move(outputs));
}

Circuit build_yates(int b, int p, int q) {
  require_height(b, 1, "build_yates");
  if (p < 0 || q < 0) throw InvalidArgument("build_yates: p and q must be nonnegative");
  const std::uint64_t n = std::uint64_t{1} << b;
  if (b > 20) throw ScaleGuardError("build_yates: ground set too large");
  // Cells per step: C(n-i, <=p) * C(i, <=q), in floating point to avoid overflow.
  auto up_to = [](std::uint64_t m, int k) {
    double term = 1;
    double total = 1;
    for (int j = 1; j <= k && static_cast<std::uint64_t>(j) <= m; ++j) {
      term = term * static_cast<double>(m - static_cast<std::uint64_t>(j) + 1) / j;
      total += term;
    }
    return total;
  };
  double cells = 0;
  for (std::uint64_t i = 0; i <= n; ++i) cells += up_to(n - i, p) * up_to(i, q);
  require_materializable(cells, "build_yates");

  GateList gl;
  // a[Z] at step i: the X with X ∩ [0, n-i) = Z ∩ [0, n-i) and X disjoint
  // from Z ∩ [n-i, n). Absent when that family is empty.
  std::map<Subset, GateIndex> a;
  const Subset all = level_prefix(b, n);
  for (const auto& x : subsets_up_to(all, p)) a.emplace_hint(a.end(), x, gl.input(Subset::empty(b), x));

  for (std::uint64_t i = 1; i <= n; ++i) {
    const std::uint64_t e = n - i;
    std::vector<std::uint64_t> head;
    std::vector<std::uint64_t> tail;
    for (std::uint64_t x = 0; x < n; ++x) (x < e ? head : tail).push_back(x);
    const Subset agree_ground = Subset::from_sorted(b, std::move(head));
    const Subset avoid_ground = Subset::from_sorted(b, std::move(tail));
    const Subset element = Subset::from_sorted(b, {e});

    std::map<Subset, GateIndex> next;
    for (const auto& agree : subsets_up_to(agree_ground, p)) {
      for (const auto& avoid : subsets_up_to(avoid_ground, q)) {
        const Subset z = set_union(agree, avoid);
        GateIndex g;
        if (avoid.contains(e)) {
          g = a.at(difference(z, element));
        } else if (auto with = a.find(set_union(z, element)); with != a.end()) {
          g = gl.add(with->second, a.at(z));
        } else {
          g = a.at(z);
        }
        next.emplace(z, g);
      }
    }
    a = std::move(next);
  }

  std::map<Subset, GateIndex> outputs;
  for (const auto& y : subsets_up_to(all, q)) outputs.emplace_hint(outputs.end(), y, a.at(y));
  return Circuit(b, p, q, "yates", gl.take(), std::move(outputs));
}

}  // namespace dsum
