#include "dsum/universe.hpp"

#include <algorithm>
#include <charconv>

#include "dsum/errors.hpp"

namespace dsum {

namespace {

void check_level(int level) {
  if (level < 0 || level > kMaxLevel) {
    throw InvalidArgument("level " + std::to_string(level) + " outside [0, " + std::to_string(kMaxLevel) + "]");
  }
}

}  // namespace

std::string PrefixString::to_string() const {
  if (level == 0) return "e";
  std::string out(static_cast<std::size_t>(level), '0');
  for (int i = 0; i < level; ++i) {
    if ((bits >> (level - 1 - i)) & 1U) out[static_cast<std::size_t>(i)] = '1';
  }
  return out;
}

Subset::Subset(int level, std::vector<std::uint64_t> members) : level_(level), members_(std::move(members)) {
  check_level(level);
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  if (!members_.empty() && (members_.back() >> level) != 0) {
    throw InvalidArgument("node " + std::to_string(members_.back()) + " does not fit on level " + std::to_string(level));
  }
}

Subset Subset::empty(int level) {
  check_level(level);
  Subset s;
  s.level_ = level;
  return s;
}

Subset Subset::from_sorted(int level, std::vector<std::uint64_t> members) {
  Subset s;
  s.level_ = level;
  s.members_ = std::move(members);
  return s;
}

bool Subset::contains(std::uint64_t x) const { return std::binary_search(members_.begin(), members_.end(), x); }

int tree_height(std::uint64_t n) {
  int b = 1;
  while (b < kMaxLevel && (std::uint64_t{1} << b) < n) ++b;
  if ((std::uint64_t{1} << b) < n) throw InvalidArgument("ground set too large");
  return b;
}

Universe::Universe(std::uint64_t n) : n_(n), b_(0) {
  if (n == 0) throw InvalidArgument("ground set must be nonempty");
  b_ = tree_height(n);
}

bool Universe::has_phantom(const Subset& leaves) const { return !leaves.empty() && leaves.members().back() >= n_; }

Subset Universe::elements() const { return level_prefix(b_, n_); }

Subset project(const Subset& x, int level) {
  if (level < 0 || level > x.level()) {
    throw InvalidArgument("cannot project level " + std::to_string(x.level()) + " to level " + std::to_string(level));
  }
  const int shift = x.level() - level;
  std::vector<std::uint64_t> out;
  out.reserve(x.size());
  for (auto m : x) {
    auto v = m >> shift;
    if (out.empty() || out.back() != v) out.push_back(v);
  }
  return Subset::from_sorted(level, std::move(out));
}

Subset span(const Subset& w, int b) {
  if (b < w.level() || b > kMaxLevel) throw InvalidArgument("span target level below the set's level");
  const int shift = b - w.level();
  if (shift >= 40) throw ScaleGuardError("span too large to materialize");
  std::vector<std::uint64_t> out;
  out.reserve(w.size() << shift);
  for (auto m : w) {
    const auto first = m << shift;
    for (std::uint64_t i = 0; i < (std::uint64_t{1} << shift); ++i) out.push_back(first + i);
  }
  return Subset::from_sorted(b, std::move(out));
}

Subset restrict_to_span(const Subset& leaves, const Subset& w) {
  const int shift = leaves.level() - w.level();
  if (shift < 0) throw InvalidArgument("restrict_to_span: node level above leaf level");
  std::vector<std::uint64_t> out;
  for (auto a : leaves) {
    if (w.contains(a >> shift)) out.push_back(a);
  }
  return Subset::from_sorted(leaves.level(), std::move(out));
}

std::vector<Subset> child_families(const Subset& w, int p) {
  if (w.level() >= kMaxLevel) throw InvalidArgument("no level below " + std::to_string(w.level()));
  if (static_cast<std::size_t>(std::max(p, 0)) < w.size()) {
    throw InvalidArgument("child_families: |W| exceeds p");
  }
  const int level = w.level() + 1;
  const std::size_t doubles = static_cast<std::size_t>(p) - w.size();
  std::vector<Subset> out;
  std::vector<std::uint64_t> current;
  const auto& ws = w.members();

  // Per parent node pick {w0}, {w1} or {w0,w1}; at most `doubles` of the last kind.
  auto recurse = [&](auto&& self, std::size_t pos, std::size_t used) -> void {
    if (pos == ws.size()) {
      out.push_back(Subset::from_sorted(level, current));
      return;
    }
    const auto left = ws[pos] << 1;
    current.push_back(left);
    self(self, pos + 1, used);
    current.back() = left + 1;
    self(self, pos + 1, used);
    current.pop_back();
    if (used < doubles) {
      current.push_back(left);
      current.push_back(left + 1);
      self(self, pos + 1, used + 1);
      current.pop_back();
      current.pop_back();
    }
  };
  recurse(recurse, 0, 0);
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t child_count(int i, int p) {
  if (i < 0 || i > p) throw InvalidArgument("child_count requires 0 <= i <= p");
  std::uint64_t total = 0;
  for (int k = 0; k <= p - i; ++k) {
    if (k > i) break;
    const std::uint64_t term = binomial(static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(k));
    const int exponent = i - k;
    if (exponent >= 64) throw OverflowError("child_count overflow");
    std::uint64_t value = 0;
    if (__builtin_mul_overflow(term, std::uint64_t{1} << exponent, &value) ||
        __builtin_add_overflow(total, value, &total)) {
      throw OverflowError("child_count overflow");
    }
  }
  return total;
}

Subset level_prefix(int level, std::uint64_t count) {
  check_level(level);
  count = std::min(count, std::uint64_t{1} << level);
  std::vector<std::uint64_t> out(count);
  for (std::uint64_t i = 0; i < count; ++i) out[i] = i;
  return Subset::from_sorted(level, std::move(out));
}

bool is_subset(const Subset& a, const Subset& b) {
  return a.level() == b.level() && std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool disjoint(const Subset& a, const Subset& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return false;
    if (*i < *j) {
      ++i;
    } else {
      ++j;
    }
  }
  return true;
}

Subset intersection(const Subset& a, const Subset& b) {
  std::vector<std::uint64_t> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return Subset::from_sorted(a.level(), std::move(out));
}

Subset set_union(const Subset& a, const Subset& b) {
  std::vector<std::uint64_t> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return Subset::from_sorted(a.level(), std::move(out));
}

Subset difference(const Subset& a, const Subset& b) {
  std::vector<std::uint64_t> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return Subset::from_sorted(a.level(), std::move(out));
}

SubsetsUpTo::iterator::iterator(const SubsetsUpTo* owner) : owner_(owner), done_(false) { refresh(); }

void SubsetsUpTo::iterator::refresh() {
  std::vector<std::uint64_t> members;
  members.reserve(index_.size());
  const auto& ground = owner_->ground_.members();
  for (auto i : index_) members.push_back(ground[i]);
  current_ = Subset::from_sorted(owner_->ground_.level(), std::move(members));
}

SubsetsUpTo::iterator& SubsetsUpTo::iterator::operator++() {
  const std::size_t m = owner_->ground_.size();
  if (index_.size() < owner_->size_) {
    const std::size_t next = index_.empty() ? 0 : index_.back() + 1;
    if (next < m) {
      index_.push_back(next);
      refresh();
      return *this;
    }
  }
  while (!index_.empty()) {
    if (++index_.back() < m) {
      refresh();
      return *this;
    }
    index_.pop_back();
  }
  done_ = true;
  return *this;
}

std::vector<Subset> all_subsets_up_to(const Subset& ground, int size) {
  std::vector<Subset> out;
  for (const auto& s : subsets_up_to(ground, size)) out.push_back(s);
  return out;
}

std::vector<Subset> all_subsets_of_size(const Subset& ground, int size) {
  std::vector<Subset> out;
  for (const auto& s : subsets_up_to(ground, size)) {
    if (static_cast<int>(s.size()) == size) out.push_back(s);
  }
  return out;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    r = r * (n - i) / (i + 1);
    if (r > static_cast<unsigned __int128>(UINT64_MAX)) throw OverflowError("binomial coefficient overflow");
  }
  return static_cast<std::uint64_t>(r);
}

std::uint64_t binomial_up_to(std::uint64_t n, std::uint64_t k) {
  std::uint64_t total = 0;
  for (std::uint64_t i = 0; i <= std::min(k, n); ++i) {
    if (__builtin_add_overflow(total, binomial(n, i), &total)) throw OverflowError("binomial sum overflow");
  }
  return total;
}

std::string format_subset(const Subset& s) {
  if (s.empty()) return "-";
  std::string out;
  for (auto m : s) {
    if (!out.empty()) out += ',';
    out += std::to_string(m);
  }
  return out;
}

Subset parse_subset(std::string_view text, int level) {
  auto trim = [](std::string_view v) {
    while (!v.empty() && (v.front() == ' ' || v.front() == '\t')) v.remove_prefix(1);
    while (!v.empty() && (v.back() == ' ' || v.back() == '\t' || v.back() == '\r')) v.remove_suffix(1);
    return v;
  };
  text = trim(text);
  if (text == "-") return Subset::empty(level);
  if (text.empty()) throw FormatError("empty subset text (use '-' for the empty set)");
  std::vector<std::uint64_t> members;
  while (true) {
    const auto comma = text.find(',');
    const auto item = trim(text.substr(0, comma));
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (item.empty() || ec != std::errc{} || ptr != item.data() + item.size()) {
      throw FormatError("bad element '" + std::string(item) + "' in subset");
    }
    if (std::find(members.begin(), members.end(), value) != members.end()) {
      throw FormatError("duplicate element " + std::to_string(value) + " in subset");
    }
    members.push_back(value);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  try {
    return Subset(level, std::move(members));
  } catch (const InvalidArgument& e) {
    throw FormatError(e.what());
  }
}

}  // namespace dsum
