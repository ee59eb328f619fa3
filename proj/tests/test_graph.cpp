#include <gtest/gtest.h>

#include <random>

#include "circlekit/graph.hpp"
#include "circlekit/multigraph.hpp"
#include "oracles.hpp"

using namespace circlekit;

namespace {

std::vector<LabeledGraph> all_graphs(int n) {
  std::vector<LabeledGraph> out;
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << pair_count(n)); ++code) out.push_back(graph_from_code(n, code));
  return out;
}

}  // namespace

TEST(LabeledGraph, RejectsDuplicateLabelsAndSelfLoops) {
  EXPECT_THROW(LabeledGraph(std::vector<Vertex>{1, 2, 1}), InvalidVertexError);
  LabeledGraph g(3);
  EXPECT_THROW(g.add_edge(1, 1), Error);
  EXPECT_THROW(g.add_edge(1, 7), InvalidVertexError);
  EXPECT_THROW(LabeledGraph(65), BoundExceededError);
}

TEST(LabeledGraph, SameAsIgnoresLabelOrder) {
  const auto a = LabeledGraph::from_edges(std::vector<Vertex>{1, 2, 3}, {{1, 2}});
  const auto b = LabeledGraph::from_edges(std::vector<Vertex>{3, 2, 1}, {{2, 1}});
  EXPECT_TRUE(a.same_as(b));
  EXPECT_FALSE(a == b);
}

TEST(LocalComplement, IsolatedVertexIsFixed) {
  const auto g = LabeledGraph::from_edges(4, {{0, 1}, {1, 2}});
  EXPECT_EQ(local_complement(g, 3), g);
}

TEST(LocalComplement, StarCenterGivesComplete) {
  EXPECT_EQ(local_complement(star_graph(3), 0), complete_graph(4));
}

TEST(LocalComplement, UnknownVertexThrows) {
  EXPECT_THROW(local_complement(path_graph(3), 9), InvalidVertexError);
}

TEST(LocalComplement, MatchesEdgeSetOracleAndIsInvolution) {
  for (int n = 1; n <= 6; ++n) {
    for (const auto& g : all_graphs(n)) {
      for (Vertex u : g.labels()) {
        const auto h = local_complement(g, u);
        ASSERT_EQ(oracle::edge_set(h), oracle::lc(oracle::edge_set(g), u));
        ASSERT_EQ(local_complement(h, u), g);
      }
    }
  }
}

TEST(Pivot, SmallCases) {
  EXPECT_EQ(pivot(complete_graph(2, 1), 1, 2), complete_graph(2, 1));
  const auto c4 = LabeledGraph::from_edges(std::vector<Vertex>{1, 2, 3, 4}, {{1, 2}, {2, 3}, {3, 4}, {4, 1}});
  const auto p = pivot(c4, 1, 2);
  EXPECT_EQ(oracle::edge_set(p), (oracle::EdgeSet{{1, 2}, {1, 3}, {2, 4}}));
  EXPECT_EQ(pivot(c4, 2, 1), p);
  EXPECT_THROW(pivot(c4, 1, 3), NotAnEdgeError);
}

TEST(Pivot, OrderSymmetryExhaustive) {
  for (int n = 2; n <= 6; ++n) {
    for (const auto& g : all_graphs(n)) {
      for (auto [u, v] : g.edges()) {
        const auto a = local_complement(local_complement(local_complement(g, u), v), u);
        const auto b = local_complement(local_complement(local_complement(g, v), u), v);
        ASSERT_EQ(a, b);
        ASSERT_EQ(pivot(g, u, v), a);
      }
    }
  }
}

TEST(Pivot, PreservesBipartiteness) {
  for (int n = 2; n <= 6; ++n) {
    for (const auto& g : all_graphs(n)) {
      if (!g.is_bipartite()) continue;
      for (auto [u, v] : g.edges()) ASSERT_TRUE(pivot(g, u, v).is_bipartite());
      for (Vertex u : g.labels()) ASSERT_TRUE(delete_vertex(g, u).is_bipartite());
    }
  }
}

TEST(DeleteVertex, Examples) {
  EXPECT_EQ(delete_vertex(complete_graph(1), 0).size(), 0);
  EXPECT_TRUE(delete_vertex(complete_graph(3), 1).same_as(LabeledGraph::from_edges(std::vector<Vertex>{0, 2}, {{0, 2}})));
  const auto p = delete_vertex(cycle_graph(5), 0);
  EXPECT_EQ(oracle::edge_set(p), (oracle::EdgeSet{{1, 2}, {2, 3}, {3, 4}}));
  EXPECT_THROW(delete_vertex(cycle_graph(5), 5), InvalidVertexError);
}

TEST(Orbit, SmallSizes) {
  EXPECT_EQ(count_lc_orbit(complete_graph(1)), 1u);
  EXPECT_EQ(count_lc_orbit(complete_graph(2)), 1u);
  EXPECT_EQ(count_lc_orbit(complete_graph(3)), 4u);
  const auto orbit = lc_orbit(complete_graph(3));
  for (const auto& g : orbit) EXPECT_TRUE(g.edge_count() == 3 || g.edge_count() == 2);
}

TEST(Orbit, AgreesWithOracleExhaustively) {
  for (int n = 1; n <= 5; ++n)
    for (const auto& g : all_graphs(n)) ASSERT_EQ(count_lc_orbit(g), oracle::lc_orbit_size(g));
  EXPECT_EQ(count_lc_orbit(cycle_graph(5)), oracle::lc_orbit_size(cycle_graph(5)));
}

TEST(Orbit, SeedIndependent) {
  const auto g = cycle_graph(5);
  const auto orbit = lc_orbit(g);
  for (std::size_t i = 0; i < orbit.size(); i += 7) EXPECT_EQ(count_lc_orbit(orbit[i]), orbit.size());
}

TEST(Orbit, CapOverflowSignals) {
  EXPECT_THROW(lc_orbit(complete_graph(3), 2), OrbitOverflowError);
  EXPECT_THROW(lc_orbit(complete_graph(3), 0), PreconditionError);
}

TEST(Minor, VertexAndPivotExamples) {
  const auto c4 = cycle_graph(4, 1);
  const auto tri = complete_graph(3, 1);
  EXPECT_TRUE(is_vertex_minor(tri, c4));
  EXPECT_FALSE(is_pivot_minor(tri, c4));
  EXPECT_TRUE(is_pivot_minor(tri, cycle_graph(5, 1)));
  EXPECT_FALSE(is_vertex_minor(empty_graph(2), complete_graph(2)));
  EXPECT_TRUE(is_vertex_minor(c4, c4));
  EXPECT_TRUE(is_pivot_minor(c4, c4));
  EXPECT_FALSE(is_vertex_minor(complete_graph(2, 10), c4));
  EXPECT_THROW(is_vertex_minor(tri, complete_graph(11)), BoundExceededError);
}

// Brute force over every interleaving of local complementations and
// deletions, for small graphs only.
namespace {

bool vertex_minor_brute(const oracle::EdgeSet& h, const std::vector<int>& keep, oracle::EdgeSet g,
                        std::vector<int> alive, std::set<std::pair<oracle::EdgeSet, std::vector<int>>>& seen) {
  if (!seen.insert({g, alive}).second) return false;
  if (alive == keep) return g == h;
  for (int u : alive) {
    if (!std::binary_search(keep.begin(), keep.end(), u)) {
      oracle::EdgeSet d;
      for (auto e : g)
        if (e.first != u && e.second != u) d.insert(e);
      std::vector<int> rest;
      for (int w : alive)
        if (w != u) rest.push_back(w);
      if (vertex_minor_brute(h, keep, d, rest, seen)) return true;
    }
    if (vertex_minor_brute(h, keep, oracle::lc(g, u), alive, seen)) return true;
  }
  return false;
}

}  // namespace

TEST(Minor, OrbitReductionMatchesInterleavedSearch) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 4 + static_cast<int>(rng() % 2);
    const auto g = graph_from_code(n, rng() & ((1ULL << pair_count(n)) - 1));
    std::vector<int> keep;
    for (int v = 0; v < n; ++v)
      if (rng() % 3 != 0) keep.push_back(v);
    const int k = static_cast<int>(keep.size());
    const auto h0 = graph_from_code(k, rng() & ((1ULL << pair_count(k)) - 1));
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (auto [a, b] : h0.edges()) edges.emplace_back(keep[static_cast<std::size_t>(a)], keep[static_cast<std::size_t>(b)]);
    const auto h = LabeledGraph::from_edges(keep, edges);
    std::set<std::pair<oracle::EdgeSet, std::vector<int>>> seen;
    const bool brute = vertex_minor_brute(oracle::edge_set(h), keep, oracle::edge_set(g), g.labels(), seen);
    ASSERT_EQ(is_vertex_minor(h, g), brute) << "trial " << trial;
    if (is_pivot_minor(h, g)) {
      ASSERT_TRUE(brute);
    }
  }
}

TEST(Graph, TwinsBipartitionComponents) {
  const auto g = LabeledGraph::from_edges(5, {{0, 2}, {1, 2}, {3, 4}});
  EXPECT_TRUE(g.twins_at(0, 1));
  EXPECT_FALSE(g.twins_at(0, 2));
  EXPECT_TRUE(g.is_bipartite());
  EXPECT_EQ(g.components().size(), 2u);
  EXPECT_FALSE(complete_graph(3).is_bipartite());
}

TEST(Multigraph, LoopsAndParallelEdges) {
  LabeledMultigraph m(std::vector<Vertex>{0, 1});
  const int a = m.add_edge(0, 1);
  const int b = m.add_edge(0, 1);
  const int c = m.add_edge(1, 1);
  EXPECT_NE(a, b);
  EXPECT_EQ(m.edge_count(), 3);
  EXPECT_TRUE(m.edge(c).is_loop());
  EXPECT_EQ(m.loop_count(), 1);
  EXPECT_THROW(m.add_edge(0, 1, a), Error);
}
