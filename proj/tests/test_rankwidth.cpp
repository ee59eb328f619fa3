#include <gtest/gtest.h>

#include <random>

#include "circlekit/rankwidth.hpp"
#include "oracles.hpp"

using namespace circlekit;

namespace {

std::vector<bool> membership(int n, Mask x) {
  std::vector<bool> in(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) in[static_cast<std::size_t>(i)] = (x >> i) & 1;
  return in;
}

LabeledGraph random_graph(std::mt19937_64& rng, int n) {
  return graph_from_code(n, rng() & ((std::uint64_t{1} << pair_count(n)) - 1));
}

// Inverse of graph_from_code.
std::uint64_t code_of(const LabeledGraph& g) {
  std::uint64_t code = 0;
  int b = 0;
  for (int i = 0; i < g.size(); ++i)
    for (int j = i + 1; j < g.size(); ++j, ++b)
      if (g.adjacent_at(i, j)) code |= 1ULL << b;
  return code;
}

LabeledGraph random_tree(std::mt19937_64& rng, int n) {
  LabeledGraph g(n);
  for (int v = 1; v < n; ++v) g.set_edge_at(v, static_cast<int>(rng() % static_cast<std::uint64_t>(v)), true);
  return g;
}

}  // namespace

TEST(CutRank, Examples) {
  const std::vector<Vertex> x{1, 2};
  EXPECT_EQ(cut_rank(cycle_graph(5), x), 2);
  EXPECT_EQ(cut_rank(complete_graph(5), x), 1);
  EXPECT_EQ(cut_rank(empty_graph(5), x), 0);
  EXPECT_EQ(cut_rank_at(complete_graph(4), 0), 0);
  EXPECT_EQ(cut_rank_at(complete_graph(4), 0b1111), 0);
}

TEST(CutRank, SymmetricAndMatchesOracleExhaustively) {
  for (int n = 1; n <= 6; ++n) {
    for (std::uint64_t code = 0; code < (1ULL << pair_count(n)); ++code) {
      const auto g = graph_from_code(n, code);
      for (Mask x = 0; x <= g.all(); ++x) {
        const int r = cut_rank_at(g, x);
        ASSERT_EQ(r, cut_rank_at(g, g.all() & ~x));
        if (code % 97 == 0) {
          ASSERT_EQ(r, oracle::cut_rank(g, membership(n, x)));
        }
      }
    }
  }
}

TEST(RankWidth, SmallCases) {
  EXPECT_EQ(rank_width_exact(LabeledGraph(0)).width, 0);
  EXPECT_EQ(rank_width_exact(complete_graph(1)).width, 0);
  EXPECT_EQ(rank_width_exact(complete_graph(2)).width, 1);
  EXPECT_EQ(rank_width_exact(empty_graph(2)).width, 0);
  EXPECT_EQ(rank_width_exact(complete_graph(7)).width, 1);
  EXPECT_EQ(rank_width_exact(cycle_graph(5)).width, 2);
  EXPECT_EQ(rank_width_exact(path_graph(5)).width, 1);
}

TEST(RankWidth, TreesHaveWidthAtMostOne) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 60; ++trial) {
    const auto t = random_tree(rng, 2 + static_cast<int>(rng() % 11));
    EXPECT_LE(rank_width_exact(t).width, 1);
  }
}

TEST(RankWidth, DecompositionIsValidAndTight) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 80; ++trial) {
    const auto g = random_graph(rng, 2 + static_cast<int>(rng() % 9));
    const auto d = rank_width_exact(g);
    ASSERT_EQ(check_decomposition(g, d), d.width);
    ASSERT_EQ(static_cast<int>(d.leaves.size()), g.size());
    ASSERT_EQ(d.node_count, std::max(1, 2 * g.size() - 2));
    ASSERT_FALSE(d.text.empty());
  }
}

TEST(RankWidth, MatchesTreeEnumerationOracle) {
  for (int n = 1; n <= 5; ++n)
    for (std::uint64_t code = 0; code < (1ULL << pair_count(n)); ++code) {
      const auto g = graph_from_code(n, code);
      ASSERT_EQ(rank_width_exact(g).width, oracle::rank_width_by_trees(g));
    }
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 40; ++trial) {
    const auto g = random_graph(rng, 6 + trial % 2);
    ASSERT_EQ(rank_width_exact(g).width, oracle::rank_width_by_trees(g));
  }
}

TEST(RankWidth, LocalComplementationInvariantExhaustively) {
  for (int n = 2; n <= 6; ++n) {
    const std::uint64_t count = 1ULL << pair_count(n);
    std::vector<int> width(count);
    for (std::uint64_t code = 0; code < count; ++code) width[code] = rank_width_exact(graph_from_code(n, code)).width;
    for (std::uint64_t code = 0; code < count; ++code) {
      const auto g = graph_from_code(n, code);
      for (Vertex u : g.labels()) ASSERT_EQ(width[code_of(local_complement(g, u))], width[code]);
    }
  }
}

TEST(RankWidth, DeletionNeverIncreasesWidth) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 80; ++trial) {
    const auto g = random_graph(rng, 3 + static_cast<int>(rng() % 7));
    const int w = rank_width_exact(g).width;
    for (Vertex u : g.labels()) ASSERT_LE(rank_width_exact(delete_vertex(g, u)).width, w);
  }
}

TEST(RankWidth, BoundsAreEnforced) {
  EXPECT_THROW(rank_width_exact(empty_graph(kDefaultRankWidthBound + 1)), BoundExceededError);
  EXPECT_THROW(rank_width_exact(empty_graph(kRankWidthHardLimit + 1), 64), BoundExceededError);
  EXPECT_NO_THROW(rank_width_exact(empty_graph(kDefaultRankWidthBound + 1), kDefaultRankWidthBound + 1));
}

TEST(RankWidth, JsonShape) {
  const auto d = rank_width_exact(path_graph(3));
  const auto j = decomposition_to_json(d);
  EXPECT_EQ(j["width"], 1);
  EXPECT_EQ(j["nodes"], 4);
  EXPECT_EQ(j["leaves"].size(), 3u);
  EXPECT_EQ(j["edges"].size(), 3u);
}

TEST(ComparabilityGrid, Adjacency) {
  const auto g = comparability_grid(3, 3);
  EXPECT_TRUE(g.adjacent(grid_label(3, 1, 1), grid_label(3, 2, 2)));
  EXPECT_FALSE(g.adjacent(grid_label(3, 1, 2), grid_label(3, 2, 1)));
  EXPECT_TRUE(g.adjacent(grid_label(3, 1, 1), grid_label(3, 1, 3)));
  EXPECT_EQ(comparability_grid(1, 5), complete_graph(5));
  EXPECT_EQ(comparability_grid(5, 1), complete_graph(5));
  EXPECT_THROW(comparability_grid(0, 2), PreconditionError);
}

TEST(ComparabilityGrid, DiagramsRealizeTheGrid) {
  EXPECT_EQ(comparability_grid_diagram(1).chord_count(), 1);
  for (int n = 1; n <= 5; ++n) {
    const auto d = comparability_grid_diagram(n);
    ASSERT_EQ(oracle::interlacement(d.word()), oracle::edge_set(comparability_grid(n, n)));
  }
}

TEST(ComparabilityGrid, RankWidthLowerBound) {
  for (int n = 2; n <= 3; ++n) {
    const auto g = comparability_grid(n, n);
    const int w = rank_width_exact(g).width;
    EXPECT_GE(4 * w, n);
    EXPECT_EQ(w, oracle::rank_width_by_trees(g));
  }
}

TEST(OneThird, SmallGridsHaveNoViolations) {
  const auto two = verify_one_third_lemma(2);
  EXPECT_EQ(two.subsets, 16u);
  EXPECT_TRUE(two.ok());
  const auto three = verify_one_third_lemma(3);
  EXPECT_EQ(three.subsets, 512u);
  EXPECT_TRUE(three.ok());
  EXPECT_GT(three.small_cuts, 0u);
  EXPECT_THROW(verify_one_third_lemma(kOneThirdMaxN + 1), BoundExceededError);
}
