#pragma once

// Elements of the ground set as leaves of a perfect binary tree.
//
// An element x of [n] is the length-b binary string of its index, read
// most-significant bit first, so the tree node at level l above x is
// x >> (b - l). A node at level l is stored as that integer; sets of
// nodes on one level are `Subset`s.

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <string>
#include <vector>

namespace dsum {

// Largest supported tree height.
inline constexpr int kMaxLevel = 62;

struct PrefixString {
  int level = 0;
  std::uint64_t bits = 0;

  PrefixString child(int bit) const { return {level + 1, (bits << 1) | static_cast<std::uint64_t>(bit & 1)}; }
  PrefixString prefix(int l) const { return {l, bits >> (level - l)}; }

  // "0110"; the root is rendered as "e".
  std::string to_string() const;

  friend auto operator<=>(const PrefixString&, const PrefixString&) = default;
};

// A set of tree nodes that all live on the same level, kept sorted.
//
// Ordering is (level, members lexicographically); this is the canonical
// order used for every enumeration and every associative store.
class Subset {
 public:
  Subset() = default;

  // Sorts and deduplicates `members`; throws InvalidArgument if a member
  // does not fit in `level` bits.
  Subset(int level, std::vector<std::uint64_t> members);
  Subset(int level, std::initializer_list<std::uint64_t> members)
      : Subset(level, std::vector<std::uint64_t>(members)) {}

  static Subset empty(int level);
  // Members must already be strictly increasing and in range.
  static Subset from_sorted(int level, std::vector<std::uint64_t> members);

  int level() const { return level_; }
  const std::vector<std::uint64_t>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool contains(std::uint64_t x) const;

  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  friend auto operator<=>(const Subset&, const Subset&) = default;
  friend bool operator==(const Subset&, const Subset&) = default;

 private:
  int level_ = 0;
  std::vector<std::uint64_t> members_;
};

// Logical ground set [n] padded up to 2^b leaves.
class Universe {
 public:
  explicit Universe(std::uint64_t n);

  std::uint64_t n() const { return n_; }
  int b() const { return b_; }
  std::uint64_t leaf_count() const { return std::uint64_t{1} << b_; }
  bool is_phantom(std::uint64_t leaf) const { return leaf >= n_; }
  bool has_phantom(const Subset& leaves) const;

  // Subset of leaves at level b.
  Subset subset(std::vector<std::uint64_t> elements) const { return Subset(b_, std::move(elements)); }
  Subset subset(std::initializer_list<std::uint64_t> elements) const { return Subset(b_, elements); }
  Subset elements() const;  // {0, ..., n-1}

 private:
  std::uint64_t n_;
  int b_;
};

// Tree height used for a ground set of n elements: ceil(log2(max(n, 2))).
int tree_height(std::uint64_t n);

Subset project(const Subset& x, int level);

// All leaves at level b below the nodes of w.
Subset span(const Subset& w, int b);

// a ∩ span(w) for a set of leaves a; w may sit on any level <= a.level().
Subset restrict_to_span(const Subset& leaves, const Subset& w);

// All Z on level w.level()+1 with |Z| <= p and project(Z, w.level()) == w,
// in canonical order. For w = ∅ this is [∅].
std::vector<Subset> child_families(const Subset& w, int p);

// Number of child families of a set of i nodes under the bound p.
std::uint64_t child_count(int i, int p);

// The first `count` nodes of a level: {0, ..., count-1}.
Subset level_prefix(int level, std::uint64_t count);

bool is_subset(const Subset& a, const Subset& b);
bool disjoint(const Subset& a, const Subset& b);
Subset intersection(const Subset& a, const Subset& b);
Subset set_union(const Subset& a, const Subset& b);
Subset difference(const Subset& a, const Subset& b);

// Enumerates all subsets of `ground` with at most `size` members, in
// canonical (lexicographic) order, each exactly once.
class SubsetsUpTo {
 public:
  SubsetsUpTo(Subset ground, int size) : ground_(std::move(ground)), size_(size < 0 ? 0 : static_cast<std::size_t>(size)) {}

  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = Subset;
    using difference_type = std::ptrdiff_t;
    using pointer = const Subset*;
    using reference = const Subset&;

    iterator() = default;
    reference operator*() const { return current_; }
    pointer operator->() const { return &current_; }
    iterator& operator++();
    void operator++(int) { ++*this; }
    friend bool operator==(const iterator& it, std::default_sentinel_t) { return it.done_; }

   private:
    friend class SubsetsUpTo;
    iterator(const SubsetsUpTo* owner);
    void refresh();

    const SubsetsUpTo* owner_ = nullptr;
    std::vector<std::size_t> index_;
    Subset current_;
    bool done_ = true;
  };

  iterator begin() const { return iterator(this); }
  std::default_sentinel_t end() const { return {}; }

 private:
  Subset ground_;
  std::size_t size_;
};

inline SubsetsUpTo subsets_up_to(Subset ground, int size) { return SubsetsUpTo(std::move(ground), size); }
std::vector<Subset> all_subsets_up_to(const Subset& ground, int size);
// Subsets of exactly `size` members, canonical order.
std::vector<Subset> all_subsets_of_size(const Subset& ground, int size);

// Sum_{i<=k} C(n, i), and C(n, k); both throw OverflowError past 2^64.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);
std::uint64_t binomial_up_to(std::uint64_t n, std::uint64_t k);

// Text encoding: comma-separated decimal members, "-" for the empty set.
std::string format_subset(const Subset& s);
Subset parse_subset(std::string_view text, int level);

}  // namespace dsum
