#include <gtest/gtest.h>

#include <random>

#include "dsum/errors.hpp"
#include "dsum/summation.hpp"

using namespace dsum;

namespace {

template <class V, class Gen>
LabelTable<V> random_labels(std::uint64_t n, int p, int q, std::mt19937_64& rng, Gen&& gen) {
  const Universe u(n);
  LabelTable<V> g;
  for (const auto& x : all_subsets_up_to(u.elements(), p)) {
    for (const auto& i : all_subsets_up_to(x, q)) {
      if (rng() % 5 == 0) continue;  // leave some entries absent
      g.emplace(InputLabel{i, x}, gen(rng));
    }
  }
  return g;
}

template <class V, class Gen>
SubsetTable<V> random_subsets(std::uint64_t n, int p, std::mt19937_64& rng, Gen&& gen) {
  const Universe u(n);
  SubsetTable<V> f;
  for (const auto& x : all_subsets_of_size(u.elements(), p)) {
    if (rng() % 5 == 0) continue;
    f.emplace(x, gen(rng));
  }
  return f;
}

}  // namespace

TEST(IntersectionSum, TwoElementMultisetByHand) {
  const Universe u(2);
  const Subset none = Subset::empty(u.b());
  const Subset zero = u.subset({0});
  const Subset one = u.subset({1});
  LabelTable<Multiset> g;
  g.emplace(InputLabel{none, none}, Multiset::singleton(0));
  g.emplace(InputLabel{none, zero}, Multiset::singleton(1));
  g.emplace(InputLabel{zero, zero}, Multiset::singleton(2));
  g.emplace(InputLabel{none, one}, Multiset::singleton(3));
  g.emplace(InputLabel{one, one}, Multiset::singleton(4));
  for (auto mode : {Mode::circuit, Mode::direct}) {
    const auto h = intersection_sum(2, 1, 1, g, FreeMultiset{}, {mode});
    EXPECT_EQ(h.at(zero).value(), Multiset({0, 2, 3}));
    EXPECT_EQ(h, oracle_intersection(2, 1, 1, g, FreeMultiset{}));
  }
}

TEST(IntersectionSum, AllIdentityInputsGiveIdentity) {
  const auto h = intersection_sum(5, 2, 2, LabelTable<std::uint64_t>{}, NatSum{});
  EXPECT_EQ(h.size(), binomial_up_to(5, 2));
  for (const auto& [a, v] : h) EXPECT_TRUE(v.is_identity());
}

TEST(IntersectionSum, QZeroHasOnlyTheEmptyOutput) {
  const Universe u(3);
  LabelTable<std::uint64_t> g;
  for (const auto& x : all_subsets_up_to(u.elements(), 2)) g.emplace(InputLabel{Subset::empty(u.b()), x}, x.size() + 1);
  const auto h = intersection_sum(3, 2, 0, g, NatSum{});
  ASSERT_EQ(h.size(), 1U);
  EXPECT_EQ(h.at(Subset::empty(u.b())).value(), 1U + 3 * 2 + 3 * 3);
}

TEST(IntersectionSum, RejectsInvalidKeys) {
  const Universe u(3);
  LabelTable<std::uint64_t> phantom{{InputLabel{Subset::empty(2), u.subset({3})}, 1}};
  EXPECT_THROW(intersection_sum(3, 1, 1, phantom, NatSum{}), InvalidArgument);
  LabelTable<std::uint64_t> too_big{{InputLabel{Subset::empty(2), u.subset({0, 1})}, 1}};
  EXPECT_THROW(intersection_sum(3, 1, 1, too_big, NatSum{}), InvalidArgument);
  LabelTable<std::uint64_t> not_inside{{InputLabel{u.subset({1}), u.subset({0})}, 1}};
  EXPECT_THROW(intersection_sum(3, 1, 1, not_inside, NatSum{}), InvalidArgument);
  EXPECT_THROW(intersection_sum(0, 1, 1, LabelTable<std::uint64_t>{}, NatSum{}), InvalidArgument);
}

TEST(IntersectionSum, OverflowPropagates) {
  const Universe u(2);
  const auto big = std::numeric_limits<std::uint64_t>::max();
  LabelTable<std::uint64_t> g{{InputLabel{Subset::empty(1), Subset::empty(1)}, big},
                              {InputLabel{Subset::empty(1), u.subset({0})}, big}};
  EXPECT_THROW(intersection_sum(2, 1, 1, g, NatSum{}), OverflowError);
  EXPECT_THROW(intersection_sum(2, 1, 1, g, NatSum{}, {Mode::direct}), OverflowError);
}

TEST(IntersectionSum, ModesAndOracleAgreeOnRandomNatSum) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const std::uint64_t n = 1 + rng() % 8;
    const int p = static_cast<int>(rng() % 3);
    const int q = static_cast<int>(rng() % 3);
    const auto g = random_labels<std::uint64_t>(n, p, q, rng, [](auto& r) { return r() % 1000; });
    const auto oracle = oracle_intersection(n, p, q, g, NatSum{});
    EXPECT_EQ(intersection_sum(n, p, q, g, NatSum{}), oracle) << n << p << q;
    EXPECT_EQ(intersection_sum(n, p, q, g, NatSum{}, {Mode::direct}), oracle) << n << p << q;
  }
}

TEST(IntersectionSum, ThreadedDirectModeIsIdentical) {
  std::mt19937_64 rng(99);
  const auto g = random_labels<Multiset>(8, 2, 2, rng, [](auto& r) { return Multiset::singleton(r() % 1000); });
  const auto sequential = intersection_sum(8, 2, 2, g, FreeMultiset{}, {Mode::direct, 1});
  EXPECT_EQ(intersection_sum(8, 2, 2, g, FreeMultiset{}, {Mode::direct, 4}), sequential);
  EXPECT_EQ(sequential, oracle_intersection(8, 2, 2, g, FreeMultiset{}));
}

TEST(IntersectionSum, PaddingNeverLeaksIntoResults) {
  std::mt19937_64 rng(7);
  for (std::uint64_t n = 5; n <= 7; ++n) {
    const Universe u(n);
    const auto g = random_labels<std::uint64_t>(n, 2, 2, rng, [](auto& r) { return r() % 100; });
    const auto h = intersection_sum(n, 2, 2, g, NatSum{});
    EXPECT_EQ(h.size(), binomial_up_to(n, 2));
    for (const auto& [a, v] : h) EXPECT_FALSE(u.has_phantom(a));
    EXPECT_EQ(h, oracle_intersection(n, 2, 2, g, NatSum{}));
  }
}

TEST(IntersectionSum, PrebuiltCircuitMustMatchHeight) {
  EXPECT_THROW(evaluate_intersection(build_pq(2, 1, 1), 8, LabelTable<std::uint64_t>{}, NatSum{}), InvalidArgument);
}

TEST(DisjointSum, ValiantCase) {
  const Universe u(2);
  SubsetTable<Words> f{{u.subset({0}), WordSum::word("a")}, {u.subset({1}), WordSum::word("b")}};
  const auto e = disjoint_sum(2, 1, 1, f, WordSum{});
  ASSERT_EQ(e.size(), 2U);
  EXPECT_EQ(e.at(u.subset({0})).value(), WordSum::word("b"));
  EXPECT_EQ(e.at(u.subset({1})).value(), WordSum::word("a"));
}

TEST(DisjointSum, UniqueComplement) {
  const Universe u(4);
  SubsetTable<double> f;
  double w = 1;
  for (const auto& x : all_subsets_of_size(u.elements(), 2)) f.emplace(x, w++);
  const auto e = disjoint_sum(4, 2, 2, f, MaxWeight{});
  EXPECT_EQ(e.at(u.subset({0, 1})).value(), f.at(u.subset({2, 3})).value());
  EXPECT_EQ(e.size(), 6U);
}

TEST(DisjointSum, NoQualifyingSetIsAnEmptySum) {
  const Universe u(2);
  SubsetTable<std::uint64_t> f{{u.subset({0, 1}), 4}};
  const auto e = disjoint_sum(2, 2, 1, f, NatSum{});
  EXPECT_TRUE(e.at(u.subset({0})).is_identity());
  EXPECT_TRUE(e.at(u.subset({1})).is_identity());
}

TEST(DisjointSum, KeysMustHaveSizeP) {
  const Universe u(4);
  SubsetTable<std::uint64_t> f{{u.subset({0}), 4}};
  EXPECT_THROW(disjoint_sum(4, 2, 1, f, NatSum{}), InvalidArgument);
}

TEST(DisjointSum, EqualsIntersectionFormRestrictedToQSubsets) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const std::uint64_t n = 2 + rng() % 7;
    const int p = static_cast<int>(rng() % 3);
    const int q = static_cast<int>(rng() % 3);
    const auto f = random_subsets<std::uint64_t>(n, p, rng, [](auto& r) { return r() % 100; });
    const auto e = disjoint_sum(n, p, q, f, NatSum{});
    EXPECT_EQ(e, oracle_disjoint(n, p, q, f, NatSum{}));
    const auto h = intersection_sum(n, p, q, disjoint_to_labels(f), NatSum{});
    for (const auto& [y, v] : e) EXPECT_EQ(h.at(y), v);
    EXPECT_EQ(e.size(), binomial(n, static_cast<std::uint64_t>(q)));
  }
}

TEST(PairSum, TwoByTwoNatural) {
  const Universe u(2);
  SubsetTable<std::uint64_t> f{{u.subset({0}), 2}, {u.subset({1}), 3}};
  SubsetTable<std::uint64_t> g{{u.subset({0}), 5}, {u.subset({1}), 7}};
  EXPECT_EQ(pair_sum(2, 1, 1, f, g, NatSum{}), 29U);
}

TEST(PairSum, UnitRightFactorSumsTheDisjointTable) {
  const Universe u(5);
  std::mt19937_64 rng(8);
  const auto f = random_subsets<std::uint64_t>(5, 2, rng, [](auto& r) { return r() % 10; });
  SubsetTable<std::uint64_t> ones;
  for (const auto& y : all_subsets_of_size(u.elements(), 1)) ones.emplace(y, 1);
  std::uint64_t expected = 0;
  for (const auto& [y, v] : disjoint_sum(5, 2, 1, f, NatSum{})) expected += v.is_identity() ? 0 : v.value();
  EXPECT_EQ(pair_sum(5, 2, 1, f, ones, NatSum{}), expected);
}

TEST(PairSum, ZeroFactorsAnnihilate) {
  const Universe u(4);
  SubsetTable<CountWeight> zeros;
  SubsetTable<CountWeight> some;
  for (const auto& x : all_subsets_of_size(u.elements(), 1)) {
    zeros.emplace(x, CountWeightSemiring{}.zero());
    some.emplace(x, CountWeight{1, 2});
  }
  EXPECT_EQ(pair_sum(4, 1, 1, zeros, some, CountWeightSemiring{}), CountWeightSemiring{}.zero());
  EXPECT_EQ(pair_sum(4, 1, 1, some, zeros, CountWeightSemiring{}), CountWeightSemiring{}.zero());
  EXPECT_EQ(pair_sum(4, 1, 1, some, some, CountWeightSemiring{}), (CountWeight{12, 4}));
}

TEST(PairSum, LeftFactorComesFirst) {
  const Universe u(2);
  SubsetTable<Words> f{{u.subset({0}), WordSum::word("a")}, {u.subset({1}), WordSum::word("b")}};
  SubsetTable<Words> g{{u.subset({0}), WordSum::word("c")}, {u.subset({1}), WordSum::word("d")}};
  EXPECT_EQ(pair_sum(2, 1, 1, f, g, WordSum{}), WordSum{}.parse("ad + bc"));
}

TEST(Oracles, EmptyTableGivesIdentity) {
  for (const auto& [y, v] : oracle_disjoint(4, 2, 1, SubsetTable<std::uint64_t>{}, NatSum{})) EXPECT_TRUE(v.is_identity());
}

TEST(Oracles, ScaleGuard) {
  EXPECT_THROW(oracle_disjoint(1000, 3, 3, SubsetTable<std::uint64_t>{}, NatSum{}), ScaleGuardError);
  EXPECT_THROW(oracle_intersection(1000, 3, 3, LabelTable<std::uint64_t>{}, NatSum{}), ScaleGuardError);
}
