#include <gtest/gtest.h>

#include "circlekit/planar.hpp"
#include "oracles.hpp"

using namespace circlekit;

namespace {

PlaneMultigraph triangle() {
  return plane_from_coordinates({0, 1, 2}, {{0, {0.0, 0.0}}, {1, {1.0, 0.0}}, {2, {0.0, 1.0}}},
                                {{0, 1}, {1, 2}, {2, 0}});
}

PlaneMultigraph path3() {
  return plane_from_coordinates({0, 1, 2}, {{0, {0.0, 0.0}}, {1, {1.0, 0.0}}, {2, {2.0, 0.5}}},
                                {{0, 1}, {1, 2}});
}

// Kirchhoff: spanning-tree count of a connected loopless multigraph as a
// cofactor of its Laplacian, by fraction-free (Bareiss) elimination.
long long kirchhoff(const LabeledMultigraph& m) {
  const auto& vs = m.vertices();
  const int n = static_cast<int>(vs.size()) - 1;
  std::vector<std::vector<long long>> a(static_cast<std::size_t>(n), std::vector<long long>(static_cast<std::size_t>(n), 0));
  auto idx = [&](Vertex v) { return static_cast<int>(std::find(vs.begin(), vs.end(), v) - vs.begin()); };
  for (const auto& e : m.edges()) {
    if (e.is_loop()) continue;
    const int i = idx(e.u), j = idx(e.v);
    for (int x : {i, j})
      if (x < n) ++a[static_cast<std::size_t>(x)][static_cast<std::size_t>(x)];
    if (i < n && j < n) {
      --a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      --a[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
    }
  }
  long long prev = 1;
  for (int k = 0; k < n - 1; ++k) {
    const auto K = static_cast<std::size_t>(k);
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        const auto I = static_cast<std::size_t>(i), J = static_cast<std::size_t>(j);
        a[I][J] = (a[I][J] * a[K][K] - a[I][K] * a[K][J]) / prev;
      }
    prev = a[K][K];
  }
  return n == 0 ? 1 : a[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(n - 1)];
}

}  // namespace

TEST(Faces, SmallCounts) {
  EXPECT_EQ(faces(theta_plane_graph(1)).size(), 1u);
  EXPECT_EQ(faces(theta_plane_graph(3)).size(), 3u);
  EXPECT_EQ(faces(triangle()).size(), 2u);
  EXPECT_EQ(faces(grid_plane_graph(4, 4)).size(), 10u);
  const auto tree_faces = faces(path3());
  ASSERT_EQ(tree_faces.size(), 1u);
  EXPECT_TRUE(tree_faces[0].operator_edges().empty());
  EXPECT_EQ(tree_faces[0].boundary().size(), 4u);
}

TEST(Faces, EulerHoldsOnRandomMaps) {
  for (int e = 1; e <= 14; ++e) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto p = random_plane_multigraph(e, seed);
      const auto fs = faces(p);
      ASSERT_EQ(static_cast<int>(p.base().vertices().size()) - e + static_cast<int>(fs.size()), 2);
      // Every dart lies on exactly one face.
      std::set<Dart> darts;
      for (const auto& f : fs)
        for (const auto& d : f.walk) ASSERT_TRUE(darts.insert(d).second);
      ASSERT_EQ(static_cast<int>(darts.size()), 2 * e);
    }
  }
}

TEST(Faces, RejectsNonSphericalRotation) {
  LabeledMultigraph m({0, 1});
  std::map<Vertex, std::vector<Dart>> rotation;
  for (int e = 0; e < 3; ++e) {
    m.add_edge(0, 1, e);
    rotation[0].push_back(Dart{e, 0});
    rotation[1].push_back(Dart{e, 1});
  }
  const PlaneMultigraph torus(m, rotation);
  EXPECT_THROW(faces(torus), EmbeddingError);
  auto missing = rotation;
  missing[1].pop_back();
  EXPECT_THROW(PlaneMultigraph(m, missing), EmbeddingError);
  auto wrong = rotation;
  wrong[0][0] = Dart{0, 1};
  EXPECT_THROW(PlaneMultigraph(m, wrong), EmbeddingError);
}

TEST(PlanarCode, GridGeneratorCounts) {
  const auto p = grid_plane_graph(4, 4);
  const auto gens = planar_code_stabilizers(p);
  EXPECT_EQ(gens.size(), 26u);
  EXPECT_EQ(pauli_rank(gens, 24), 24);
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j) EXPECT_TRUE(gens[i].commutes_with(gens[j]));
}

TEST(PlanarCode, TreeHasTrivialFaceOperators) {
  const auto gens = planar_code_stabilizers(path3());
  ASSERT_EQ(gens.size(), 4u);
  EXPECT_EQ(gens[0].x | gens[0].z, 0u);
  EXPECT_EQ(gens[2].x, 0b11u);
}

TEST(SpanningTree, DeterministicChoice) {
  EXPECT_EQ(spanning_tree(theta_plane_graph(3)), std::vector<int>{0});
  EXPECT_EQ(spanning_tree(triangle()), (std::vector<int>{0, 2}));
  EXPECT_THROW(fundamental_graph(triangle(), {0}), PreconditionError);
  EXPECT_THROW(fundamental_graph(triangle(), {0, 1, 2}), PreconditionError);
}

TEST(SpanningTree, EnumerationMatchesKirchhoff) {
  EXPECT_EQ(all_spanning_trees(grid_plane_graph(3, 3)).size(), 192u);
  EXPECT_EQ(kirchhoff(grid_plane_graph(3, 3).base()), 192);
  for (int e = 1; e <= 9; ++e) {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
      const auto p = random_plane_multigraph(e, seed);
      ASSERT_EQ(static_cast<long long>(all_spanning_trees(p).size()), kirchhoff(p.base()));
    }
  }
}

TEST(FundamentalGraph, ThetaGivesStar) {
  const auto g = fundamental_graph(theta_plane_graph(3), {0});
  EXPECT_EQ(oracle::edge_set(g), (oracle::EdgeSet{{0, 1}, {0, 2}}));
  EXPECT_TRUE(fundamental_graph(theta_plane_graph(3), {1}).same_as(LabeledGraph::from_edges(3, {{1, 0}, {1, 2}})));
}

TEST(FundamentalGraph, ContourWordRealizesIt) {
  for (int e = 1; e <= 10; ++e) {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
      const auto p = random_plane_multigraph(e, seed);
      for (const auto& tree : all_spanning_trees(p, 2000)) {
        const auto g = fundamental_graph(p, tree);
        ASSERT_TRUE(g.is_bipartite());
        ASSERT_EQ(interlacement_graph(contour_diagram(p, tree)), g);
      }
    }
  }
}

TEST(PlanarCodeCorrespondence, GridAndRandomMaps) {
  const auto grid = check_theorem2(grid_plane_graph(4, 4));
  EXPECT_TRUE(grid.ok());
  EXPECT_EQ(grid.graph.size(), 24);
  EXPECT_EQ(grid.hadamards.size(), 9u);
  EXPECT_EQ(grid.redundancies, 2);
  for (int e = 1; e <= 10; ++e) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto p = random_plane_multigraph(e, seed);
      for (const auto& tree : all_spanning_trees(p, 20)) {
        const auto r = check_theorem2(p, tree);
        ASSERT_TRUE(r.ok()) << (r.failures.empty() ? "group mismatch" : r.failures.front());
      }
    }
  }
  EXPECT_EQ(theorem2_forward(theta_plane_graph(2)).hadamards, std::vector<int>{1});
}

TEST(PlanarCodeCorrespondence, ConverseRoundTrips) {
  // Star with center a; b and c cross a but not each other.
  const auto star = ChordDiagram::parse("abcacb");
  const std::vector<Vertex> center{0};
  const auto p = theorem2_converse(star, center);
  EXPECT_EQ(p.base().vertices().size(), 2u);
  EXPECT_EQ(fundamental_graph(p, center), interlacement_graph(star));
  const std::vector<Vertex> both{0, 1};
  EXPECT_THROW(theorem2_converse(star, both), PreconditionError);

  for (int n = 1; n <= 5; ++n) {
    for_each_matching_word(n, [&](const std::vector<Vertex>& w) {
      const ChordDiagram d(w);
      const auto c = interlacement_graph(d);
      const auto side = c.bipartition();
      if (!side) return;
      const auto k = c.labels_of(*side);
      const auto q = theorem2_converse(d, k);
      ASSERT_EQ(fundamental_graph(q, k), c);
    });
  }
}

TEST(PlaneJson, RoundTripAndErrors) {
  const auto p = random_plane_multigraph(8, 3);
  EXPECT_EQ(plane_from_json(plane_to_json(p)), p);
  const auto j = plane_to_json(theta_plane_graph(1));
  EXPECT_EQ(j.dump(), R"({"vertices":[0,1],"edges":[{"id":0,"ends":[0,1]}],"rotation":{"0":[[0,0]],"1":[[0,1]]}})");
  EXPECT_THROW(plane_from_json(nlohmann::ordered_json::parse(R"({"vertices":[0]})")), ParseError);
  EXPECT_THROW(plane_from_json(nlohmann::ordered_json::parse(
                   R"({"vertices":[0,1],"edges":[{"id":0,"ends":[0,1]}],"rotation":{"x":[]}})")),
               ParseError);
  EXPECT_THROW(plane_from_json(nlohmann::ordered_json::parse(
                   R"({"vertices":[0,1],"edges":[{"id":0,"ends":[0,1]}],"rotation":{"0":[[0,0]]}})")),
               EmbeddingError);
}
