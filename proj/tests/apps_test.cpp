#include <gtest/gtest.h>

#include <random>

#include "dsum/apps.hpp"
#include "dsum/errors.hpp"

using namespace dsum;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Graph cycle4() {
  Graph g(4);
  g.add_edge(0, 1, 1);
  g.add_edge(1, 2, 1);
  g.add_edge(2, 3, 1);
  g.add_edge(3, 0, 1);
  return g;
}

Graph complete(std::uint64_t n) {
  Graph g(n);
  for (std::uint64_t u = 0; u < n; ++u) {
    for (std::uint64_t v = u + 1; v < n; ++v) g.add_edge(u, v, 1);
  }
  return g;
}

// Integer weights keep every comparison exact.
Graph random_graph(std::uint64_t n, bool directed, std::mt19937_64& rng) {
  Graph g(n, directed);
  for (std::uint64_t u = 0; u < n; ++u) {
    for (std::uint64_t v = directed ? 0 : u + 1; v < n; ++v) {
      if (u == v || rng() % 2 == 0) continue;
      g.add_edge(u, v, static_cast<double>(rng() % 4));
    }
  }
  return g;
}

RectMatrix<std::uint64_t> nat_matrix(std::vector<std::vector<std::uint64_t>> rows) { return RectMatrix<std::uint64_t>(std::move(rows)); }

}  // namespace

TEST(Graph, RejectsSelfLoopsAndDuplicates) {
  Graph g(3);
  g.add_edge(0, 1, 1);
  EXPECT_THROW(g.add_edge(1, 0, 2), InvalidArgument);
  EXPECT_THROW(g.add_edge(2, 2, 1), InvalidArgument);
  EXPECT_THROW(g.add_edge(0, 3, 1), InvalidArgument);
  Graph d(3, true);
  d.add_edge(0, 1, 1);
  d.add_edge(1, 0, 2);
  EXPECT_THROW(d.add_edge(0, 1, 3), InvalidArgument);
  EXPECT_EQ(d.reversed().out(1).size(), 1U);
}

TEST(HalfPath, UniquePathOnAPathGraph) {
  Graph g(3);
  g.add_edge(0, 1, 2);
  g.add_edge(1, 2, 5);
  const auto table = half_path_table(g, 0, 2, 2);
  const int b = Universe(3).b();
  ASSERT_EQ(table.size(), 1U);
  EXPECT_EQ(table.at(Subset(b, {0, 1})).value(), (CountWeight{1, 7}));
}

TEST(HalfPath, KeysContainSourceButNotAnchor) {
  const auto g = complete(6);
  const auto table = half_path_table(g, 2, 4, 3);
  for (const auto& [x, value] : table) {
    EXPECT_TRUE(x.contains(2));
    EXPECT_FALSE(x.contains(4));
    EXPECT_EQ(x.size(), 3U);
    EXPECT_EQ(value.value(), (CountWeight{2, 3}));  // the two orders of the middle vertices
  }
  EXPECT_EQ(table.size(), binomial(4, 2));
}

TEST(HalfPath, SingleEdge) {
  const auto table = half_path_table(complete(3), 0, 1, 1);
  ASSERT_EQ(table.size(), 1U);
  EXPECT_EQ(table.at(Subset(2, {0})).value(), (CountWeight{1, 1}));
}

TEST(HalfPath, Errors) {
  EXPECT_THROW(half_path_table(complete(3), 0, 0, 1), InvalidArgument);
  EXPECT_THROW(half_path_table(complete(3), 0, 1, 3), InvalidArgument);
}

TEST(KPath, FourCycle) {
  EXPECT_EQ(kpath_count(cycle4(), 0, 2, 2), (CountWeight{2, 2}));
  EXPECT_EQ(oracle_kpath(cycle4(), 0, 2, 2), (CountWeight{2, 2}));
}

TEST(KPath, CompleteGraphOnFour) {
  EXPECT_EQ(kpath_count(complete(4), 0, 1, 3), (CountWeight{2, 3}));
  EXPECT_EQ(oracle_kpath(complete(4), 0, 1, 3), (CountWeight{2, 3}));
}

TEST(KPath, DisconnectedEndpoints) {
  Graph g(5);
  g.add_edge(0, 1, 1);
  g.add_edge(2, 3, 1);
  g.add_edge(3, 4, 1);
  EXPECT_EQ(kpath_count(g, 0, 4, 2), (CountWeight{0, -kInf}));
  EXPECT_EQ(kpath_count(g, 0, 4, 4), (CountWeight{0, -kInf}));
}

TEST(KPath, OracleSingleEdge) {
  Graph g(3);
  g.add_edge(0, 1, 2.5);
  EXPECT_EQ(oracle_kpath(g, 0, 1, 1), (CountWeight{1, 2.5}));
  EXPECT_EQ(oracle_kpath(g, 0, 2, 1), (CountWeight{0, -kInf}));
}

TEST(KPath, Errors) {
  EXPECT_THROW(kpath_count(cycle4(), 0, 2, 1), InvalidArgument);
  EXPECT_THROW(kpath_count(cycle4(), 1, 1, 2), InvalidArgument);
  EXPECT_THROW(oracle_kpath(complete(11), 0, 1, 2), ScaleGuardError);
  EXPECT_EQ(kpath_count(cycle4(), 0, 2, 4), (CountWeight{0, -kInf}));
}

TEST(KPath, MatchesOracleOnRandomGraphs) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const std::uint64_t n = 3 + rng() % 6;
    const bool directed = trial % 2 == 1;
    const auto g = random_graph(n, directed, rng);
    for (int k = 2; k <= 4; ++k) EXPECT_EQ(kpath_count(g, 0, n - 1, k), oracle_kpath(g, 0, n - 1, k)) << trial << " k=" << k;
  }
}

TEST(KPath, CircuitAndThreadedModesAgree) {
  std::mt19937_64 rng(4);
  const auto g = random_graph(8, false, rng);
  const auto expected = oracle_kpath(g, 1, 6, 4);
  EXPECT_EQ(kpath_count(g, 1, 6, 4, {SumOptions{Mode::circuit, 1}}), expected);
  EXPECT_EQ(kpath_count(g, 1, 6, 4, {SumOptions{Mode::direct, 3}}), expected);
}

TEST(KPath, HalvesOnlyMeetAtTheMiddle) {
  // Tag each half by its vertex set and check every combined pair is disjoint.
  std::mt19937_64 rng(12);
  const auto g = random_graph(7, false, rng);
  const int p = 2;
  const int q = 2;
  for (std::uint64_t v = 1; v < 6; ++v) {
    const auto f = half_path_table(g, 0, v, p);
    const auto h = half_path_table(g, 6, v, q);
    std::vector<Subset> ids;
    SubsetTable<Multiset> tagged;
    for (const auto& [x, value] : f) {
      tagged.emplace(x, Multiset::singleton(ids.size()));
      ids.push_back(x);
    }
    const auto e = disjoint_sum(7, p, q, tagged, FreeMultiset{});
    for (const auto& [y, tokens] : e) {
      if (tokens.is_identity() || !h.contains(y)) continue;
      for (auto t : tokens.value().tokens()) {
        EXPECT_TRUE(disjoint(ids[t], y));
        EXPECT_FALSE(ids[t].contains(v));
        EXPECT_FALSE(y.contains(v));
      }
    }
  }
}

TEST(Permanent, TwoByTwo) {
  const auto m = nat_matrix({{1, 2}, {3, 4}});
  EXPECT_EQ(permanent(m, NatSum{}), 10U);
  EXPECT_EQ(oracle_permanent(m, NatSum{}), 10U);
}

TEST(Permanent, SingleRowSumsEntries) {
  const auto m = nat_matrix({{4, 5, 6, 7}});
  EXPECT_EQ(permanent(m, NatSum{}), 22U);
}

TEST(Permanent, SymbolicTwoByTwoKeepsRowOrder) {
  const WordSum s;
  RectMatrix<Words> m({{WordSum::word("a"), WordSum::word("b")}, {WordSum::word("c"), WordSum::word("d")}});
  EXPECT_EQ(permanent(m, s), s.parse("ad + bc"));
  EXPECT_EQ(oracle_permanent(m, s), s.parse("ad + bc"));
}

TEST(Permanent, IdentityIsOne) {
  const auto m = nat_matrix({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  EXPECT_EQ(permanent(m, NatSum{}), 1U);
}

TEST(Permanent, ShapeErrors) {
  EXPECT_THROW(nat_matrix({{1}, {2}}), InvalidArgument);
  EXPECT_THROW(nat_matrix({{1, 2}, {3}}), InvalidArgument);
  EXPECT_THROW(oracle_permanent(RectMatrix<std::uint64_t>(std::vector<std::vector<std::uint64_t>>(5, std::vector<std::uint64_t>(40, 1))), NatSum{}),
               ScaleGuardError);
}

TEST(Permanent, MatchesOracleOverWordsAndNaturals) {
  std::mt19937_64 rng(77);
  const WordSum ws;
  for (std::size_t n = 1; n <= 5; ++n) {
    for (std::size_t k = 1; k <= std::min<std::size_t>(3, n); ++k) {
      std::vector<std::vector<std::uint64_t>> nat(k, std::vector<std::uint64_t>(n));
      std::vector<std::vector<Words>> words(k, std::vector<Words>(n));
      for (std::size_t r = 0; r < k; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
          nat[r][c] = rng() % 10;
          words[r][c] = WordSum::word(std::string(1, static_cast<char>('a' + r * n + c)));
        }
      }
      EXPECT_EQ(permanent(nat_matrix(nat), NatSum{}), oracle_permanent(nat_matrix(nat), NatSum{}));
      const RectMatrix<Words> wm(words);
      EXPECT_EQ(permanent(wm, ws), oracle_permanent(wm, ws));
    }
  }
}

TEST(Featsel, ExcludingOneFeature) {
  ScoreTable scores{4, {}};
  const int b = Universe(4).b();
  for (const auto& x : all_subsets_up_to(Universe(4).elements(), 2)) {
    if (!x.empty()) scores.scores.emplace(x, 1);
  }
  scores.scores[Subset(b, {0, 1})] = 5;
  scores.scores[Subset(b, {2, 3})] = 4;
  const auto index = featsel_precompute(scores, 2, 2);
  EXPECT_EQ(featsel_query(index, Subset(b, {0})).value(), (Witnessed{4, Subset(b, {2, 3})}));
  EXPECT_EQ(featsel_query(index, Subset::empty(b)).value(), (Witnessed{5, Subset(b, {0, 1})}));
  EXPECT_THROW(featsel_query(index, Subset(b, {0, 1, 2})), InvalidArgument);
}

TEST(Featsel, SparseScoresFallBackOrEmpty) {
  const int b = Universe(4).b();
  ScoreTable only{4, {{Subset(b, {0, 1}), 3}}};
  const auto index = featsel_precompute(only, 2, 2);
  EXPECT_TRUE(featsel_query(index, Subset(b, {1})).is_identity());
  EXPECT_EQ(featsel_query(index, Subset(b, {2})).value().weight, 3);

  ScoreTable two{4, {{Subset(b, {0, 1}), 3}, {Subset(b, {2}), 1}}};
  EXPECT_EQ(featsel_query(featsel_precompute(two, 2, 2), Subset(b, {1})).value(), (Witnessed{1, Subset(b, {2})}));
}

TEST(Featsel, TiesPickSmallestWitness) {
  const int b = Universe(4).b();
  ScoreTable scores{4, {{Subset(b, {2, 3}), 2}, {Subset(b, {1, 3}), 2}, {Subset(b, {0}), 1}}};
  const auto index = featsel_precompute(scores, 2, 1);
  EXPECT_EQ(featsel_query(index, Subset::empty(b)).value().witness, Subset(b, {1, 3}));
  EXPECT_EQ(featsel_query(index, Subset(b, {1})).value().witness, Subset(b, {2, 3}));
}

TEST(Featsel, MatchesBruteForceEverywhere) {
  std::mt19937_64 rng(10);
  const Universe u(10);
  ScoreTable scores{10, {}};
  for (const auto& x : all_subsets_up_to(u.elements(), 2)) scores.scores.emplace(x, static_cast<double>(rng() % 20));
  for (auto mode : {Mode::circuit, Mode::direct}) {
    const auto index = featsel_precompute(scores, 2, 2, {mode, 1});
    for (const auto& e : all_subsets_up_to(u.elements(), 2)) {
      EXPECT_EQ(featsel_query(index, e), featsel_brute_force(scores, e, Subset::empty(u.b())));
    }
  }
}

TEST(Featsel, ForcedInclusionByBruteForce) {
  const int b = Universe(4).b();
  ScoreTable scores{4, {{Subset(b, {0, 1}), 5}, {Subset(b, {1, 2}), 3}, {Subset(b, {2}), 4}}};
  std::uint64_t ops = 0;
  const auto r = featsel_brute_force(scores, Subset(b, {0}), Subset(b, {1}), &ops);
  EXPECT_EQ(r.value(), (Witnessed{3, Subset(b, {1, 2})}));
  EXPECT_EQ(ops, 0U);
  featsel_brute_force(scores, Subset::empty(b), Subset::empty(b), &ops);
  EXPECT_EQ(ops, 2U);
}
