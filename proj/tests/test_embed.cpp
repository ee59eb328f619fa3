#include <gtest/gtest.h>

#include "circlekit/embed.hpp"

using namespace circlekit;

namespace {

const char* const kFiveCycle = "aebacbdced";

}  // namespace

TEST(Planarize, KnownCrossingCounts) {
  EXPECT_EQ(planarize_word(ChordDiagram::parse("abab")).crossings.size(), 0u);
  EXPECT_EQ(planarize_word(ChordDiagram::parse("aabb")).crossings.size(), 0u);
  EXPECT_EQ(planarize_word(ChordDiagram::parse(kFiveCycle)).crossings.size(), 1u);
}

TEST(Planarize, ResultIsFourRegularAndSpherical) {
  for (int n = 1; n <= 4; ++n) {
    for_each_matching_word(n, [&](const std::vector<Vertex>& w) {
      const ChordDiagram d(w);
      const auto plan = planarize_word(d);
      const auto& p = plan.map;
      for (Vertex v : p.base().vertices()) ASSERT_EQ(p.rotation_at(v).size(), 4u);
      ASSERT_EQ(p.base().vertices().size(), static_cast<std::size_t>(n) + plan.crossings.size());
      ASSERT_EQ(plan.crossing_pairs.size(), plan.crossings.size());
      const auto fs = faces(p);
      ASSERT_EQ(static_cast<int>(p.base().vertices().size()) - p.base().edge_count() + static_cast<int>(fs.size()), 2);
    });
  }
}

TEST(Planarize, GreenFacesAlternate) {
  const auto plan = planarize_word(ChordDiagram::parse(kFiveCycle));
  const auto fs = faces(plan.map);
  const auto green = green_faces(plan.map, fs);
  const std::set<int> g(green.begin(), green.end());
  std::map<Dart, int> face_of;
  for (int i = 0; i < static_cast<int>(fs.size()); ++i)
    for (const auto& d : fs[static_cast<std::size_t>(i)].walk) face_of[d] = i;
  for (const auto& [d, f] : face_of) EXPECT_NE(g.count(f), g.count(face_of.at(d.reversed())));
  // Green faces become the vertices of P and every map vertex an edge of P.
  const auto p = green_face_graph(plan.map);
  EXPECT_EQ(p.base().vertices().size(), green.size());
  EXPECT_EQ(p.base().edge_count(), static_cast<int>(plan.map.base().vertices().size()));
}

TEST(BipartiteEmbedding, FiveCycleInstance) {
  const auto d = ChordDiagram::parse(kFiveCycle);
  const auto c = interlacement_graph(d);
  const auto r = prop5_embed(c, d);
  EXPECT_EQ(r.crossings, 1);
  EXPECT_EQ(r.bipartite.size(), 6);
  const auto k = check_prop5(c, r);
  EXPECT_TRUE(k.bipartite);
  EXPECT_TRUE(k.circle);
  EXPECT_TRUE(k.recognized);
  EXPECT_TRUE(k.size_bound);
  EXPECT_TRUE(k.crossing_bound);
  EXPECT_TRUE(k.recovered);
  EXPECT_EQ(k.recovered_graph.labels(), c.labels());
  // Deleting the crossing vertex instead leaves a bipartite graph, which is
  // not locally equivalent to the odd cycle here.
  const auto deleted = delete_vertices(r.bipartite, r.added);
  EXPECT_FALSE(lc_equivalent(c, deleted));
}

TEST(BipartiteEmbedding, AllWordsUpToFourChords) {
  for (int n = 0; n <= 4; ++n) {
    for_each_matching_word(n, [&](const std::vector<Vertex>& w) {
      const ChordDiagram d(w);
      const auto c = interlacement_graph(d);
      const auto r = prop5_embed(c, d);
      const auto k = check_prop5(c, r);
      ASSERT_TRUE(k.bipartite && k.circle && k.size_bound && k.crossing_bound && k.recovered) << d.to_string();
      ASSERT_TRUE(is_vertex_minor(c, r.bipartite, 12));
    });
  }
}

TEST(BipartiteEmbedding, DeterministicForFixedSeed) {
  const auto d = ChordDiagram::parse("abcadbcd");
  const auto c = interlacement_graph(d);
  const auto a = prop5_embed(c, d, 16, 7);
  const auto b = prop5_embed(c, d, 16, 7);
  EXPECT_EQ(a.bipartite, b.bipartite);
  EXPECT_EQ(a.added, b.added);
  EXPECT_EQ(a.certificate, b.certificate);
}

TEST(BipartiteEmbedding, RejectsMismatchedDiagram) {
  EXPECT_THROW(prop5_embed(complete_graph(2), ChordDiagram::parse("aabb")), PreconditionError);
}
