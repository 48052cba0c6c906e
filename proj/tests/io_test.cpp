#include <gtest/gtest.h>

#include "dsum/errors.hpp"
#include "dsum/io.hpp"

using namespace dsum;

TEST(TableText, BothFormsParse) {
  const auto g = parse_label_table("# comment\n0 | 0,1 : 4\n\n2 : 7\n- : 1\n", 3, NatSum{});
  const int b = Universe(3).b();
  ASSERT_EQ(g.size(), 3U);
  EXPECT_EQ(g.at(InputLabel{Subset(b, {0}), Subset(b, {0, 1})}).value(), 4U);
  EXPECT_EQ(g.at(InputLabel{Subset::empty(b), Subset(b, {2})}).value(), 7U);
  EXPECT_EQ(g.at(InputLabel{Subset::empty(b), Subset::empty(b)}).value(), 1U);
}

TEST(TableText, ValuesFollowTheDomain) {
  const auto g = parse_subset_table("0 : 2,1.5\n1 : 0,-inf\n", 2, CountWeightSemiring{});
  EXPECT_EQ(g.at(Subset(1, {0})).value(), (CountWeight{2, 1.5}));
  const auto w = parse_subset_table("0 : ad + 2*bc\n", 2, WordSum{});
  EXPECT_EQ(w.at(Subset(1, {0})).value(), WordSum{}.parse("2*bc + ad"));
}

TEST(TableText, ErrorsNameTheLine) {
  try {
    parse_label_table("0 : 1\n1 : x\n", 2, NatSum{});
    FAIL();
  } catch (const FormatError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
  EXPECT_THROW(parse_label_table("0 : 1\n0 : 2\n", 2, NatSum{}), FormatError);
  EXPECT_THROW(parse_label_table("0 1\n", 2, NatSum{}), FormatError);
  EXPECT_THROW(parse_label_table("0 :\n", 2, NatSum{}), FormatError);
  EXPECT_THROW(parse_subset_table("0 | 0 : 1\n", 2, NatSum{}), FormatError);
}

TEST(TableText, OutputFormat) {
  OutputTable<std::uint64_t> h{{Subset::empty(1), 3}, {Subset(1, {1}), {}}};
  EXPECT_EQ(format_output_table(h, NatSum{}), "- : 3\n1 : empty\n");
}

TEST(GraphText, HeaderAndEdges) {
  const auto g = parse_graph("3 2\n0 1 1.5\n1 2 2\n");
  EXPECT_EQ(g.vertex_count(), 3U);
  EXPECT_FALSE(g.directed());
  EXPECT_EQ(g.out(1).size(), 2U);
  EXPECT_TRUE(parse_graph("2 1 directed\n0 1 1\n").directed());
  EXPECT_TRUE(parse_graph("2 1\n0 1 1\n", true).directed());
}

TEST(GraphText, Rejections) {
  EXPECT_THROW(parse_graph("3 2\n0 1 1\n1 0 1\n"), FormatError);
  EXPECT_THROW(parse_graph("3 1\n1 1 1\n"), FormatError);
  EXPECT_THROW(parse_graph("3 2\n0 1 1\n"), FormatError);
  EXPECT_THROW(parse_graph("3 1 sideways\n0 1 1\n"), FormatError);
  EXPECT_THROW(parse_graph("3 1\n0 1 heavy\n"), FormatError);
  EXPECT_THROW(parse_graph(""), FormatError);
}

TEST(MatrixText, Parse) {
  const auto m = parse_matrix("2 3\n1 2 3\n4 5 6\n", NatSum{});
  EXPECT_EQ(m.rows, 2U);
  EXPECT_EQ(m.cols, 3U);
  EXPECT_EQ(m.at(1, 2), 6U);
  const auto w = parse_matrix("1 2\na b\n", WordSum{});
  EXPECT_EQ(w.at(0, 1), WordSum::word("b"));
  EXPECT_THROW(parse_matrix("2 2\n1 2\n", NatSum{}), FormatError);
  EXPECT_THROW(parse_matrix("1 2\n1 2 3\n", NatSum{}), FormatError);
  EXPECT_THROW(parse_matrix("2 1\n1\n2\n", NatSum{}), FormatError);
}

TEST(ScoresText, InfersFeatureCount) {
  const auto s = parse_scores("0,1 : 5\n2,3 : 4\n- : 0\n");
  EXPECT_EQ(s.n, 4U);
  const int b = Universe(4).b();
  EXPECT_EQ(s.scores.at(Subset(b, {2, 3})), 4);
  EXPECT_EQ(parse_scores("1 : 1\n", 10).n, 10U);
  EXPECT_THROW(parse_scores("9 : 1\n", 4), FormatError);
  EXPECT_THROW(parse_scores("1 : 1\n1 : 2\n"), FormatError);
}

TEST(Files, MissingFileIsAFormatError) { EXPECT_THROW(read_text_file("/nonexistent/dsum-file"), FormatError); }
