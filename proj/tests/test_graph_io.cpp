#include <gtest/gtest.h>

#include <random>

#include "circlekit/graph_io.hpp"

using namespace circlekit;

TEST(Graph6, KnownStrings) {
  EXPECT_EQ(parse_graph6("@").size(), 1);
  EXPECT_EQ(to_graph6(complete_graph(1)), "@");
  EXPECT_EQ(to_graph6(complete_graph(2)), "A_");
  EXPECT_EQ(to_graph6(empty_graph(2)), "A?");
  EXPECT_EQ(to_graph6(cycle_graph(5)), "Dhc");
  EXPECT_EQ(to_graph6(complete_graph(4)), "C~");
  EXPECT_EQ(parse_graph6("Dhc"), cycle_graph(5));
  EXPECT_EQ(parse_graph6(">>graph6<<C~\n"), complete_graph(4));
}

TEST(Graph6, RoundTripCorpus) {
  std::mt19937_64 rng(3);
  for (int n : {0, 1, 2, 5, 7, 13, 40, 62, 63, 64}) {
    for (int t = 0; t < 4; ++t) {
      LabeledGraph g(n);
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          if (rng() % 3 == 0) g.set_edge_at(i, j, true);
      const auto s = to_graph6(g);
      EXPECT_EQ(parse_graph6(s), g);
      EXPECT_EQ(to_graph6(parse_graph6(s)), s);
    }
  }
}

TEST(Graph6, ErrorsCarryOffsets) {
  try {
    parse_graph6("D h");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), 1u);
  }
  EXPECT_THROW(parse_graph6("Dh"), ParseError);
  EXPECT_THROW(parse_graph6("Dhcc"), ParseError);
  EXPECT_THROW(parse_graph6("A`"), ParseError);  // nonzero padding
  EXPECT_THROW(parse_graph6(""), ParseError);
}

TEST(GraphJson, ParsesAndEmitsBitExactly) {
  const auto g = parse_graph_json(R"({"n":2,"edges":[[0,1]]})");
  EXPECT_EQ(g, complete_graph(2));
  EXPECT_EQ(emit_graph(g, GraphFormat::Json), R"({"n":2,"edges":[[0,1]]})");
  const auto labeled = LabeledGraph::from_edges(std::vector<Vertex>{4, 9}, {{4, 9}});
  const auto text = emit_graph(labeled, GraphFormat::Json);
  EXPECT_EQ(parse_graph(text, GraphFormat::Json), labeled);
}

TEST(GraphJson, Errors) {
  EXPECT_THROW(parse_graph_json(R"({"edges":[]})"), ParseError);
  EXPECT_THROW(parse_graph_json(R"({"n":2,"edges":[[0,0]]})"), ParseError);
  EXPECT_THROW(parse_graph_json(R"({"n":2,"edges":[[0,5]]})"), ParseError);
  try {
    parse_graph_json(R"({"n":2,)");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_GT(e.offset(), 0u);
  }
  EXPECT_THROW(parse_format("dot"), ParseError);
}
