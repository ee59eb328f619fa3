#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "circlekit/chord.hpp"
#include "circlekit/embed.hpp"
#include "circlekit/errors.hpp"
#include "circlekit/graph.hpp"
#include "circlekit/parallel.hpp"
#include "circlekit/planar.hpp"
#include "circlekit/rankwidth.hpp"
#include "circlekit/rlc.hpp"
#include "circlekit/stabilizer.hpp"

namespace circlekit {

/// Outcome of an exhaustive check. Violations are capped in the list but
/// always counted.
struct VerifyReport {
  std::string name;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  std::uint64_t checked = 0;
  std::uint64_t violation_count = 0;
  std::vector<std::string> violations;
  nlohmann::ordered_json details = nlohmann::ordered_json::object();

  static constexpr std::size_t kMaxListed = 50;

  bool ok() const { return violation_count == 0; }

  void violation(std::string what) {
    ++violation_count;
    if (violations.size() < kMaxListed) violations.push_back(std::move(what));
  }

  void merge(VerifyReport&& other) {
    checked += other.checked;
    for (auto& v : other.violations)
      if (violations.size() < kMaxListed) violations.push_back(std::move(v));
    violation_count += other.violation_count;
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["name"] = name;
    j["params"] = params;
    j["checked"] = checked;
    j["violation_count"] = violation_count;
    j["violations"] = violations;
    j["details"] = details;
    return j;
  }
};

namespace detail {

// Runs f(i, report) in parallel and merges the per-item reports in index
// order, so output does not depend on scheduling.
template <class F>
void for_each_item(VerifyReport& total, std::size_t count, F&& f) {
  std::vector<VerifyReport> parts(count);
  parallel_for(count, [&](std::size_t i) { f(i, parts[i]); });
  for (auto& p : parts) total.merge(std::move(p));
}

inline std::string graph_text(const LabeledGraph& g) {
  std::string s = "n=" + std::to_string(g.size()) + " edges=";
  for (const auto& [u, v] : g.edges()) s += std::to_string(u) + "-" + std::to_string(v) + " ";
  return s;
}

inline std::vector<ChordDiagram> shapes_up_to(int max_chords) {
  std::vector<ChordDiagram> all;
  for (int n = 1; n <= max_chords; ++n) {
    auto s = enumerate_diagram_shapes(n);
    all.insert(all.end(), std::make_move_iterator(s.begin()), std::make_move_iterator(s.end()));
  }
  return all;
}

}  // namespace detail

/// Circle graphs are closed under r-local complementation: on every diagram
/// shape with at most max_chords chords, no r-incident multiset survives
/// normalization and every valid image lies in the LC orbit.
inline VerifyReport verify_theorem1(int max_chords = 6, std::vector<int> rs = {2, 3}) {
  VerifyReport rep;
  rep.name = "theorem1";
  rep.params = {{"max_n", max_chords}, {"r", rs}};
  const auto shapes = detail::shapes_up_to(max_chords);
  std::vector<std::uint64_t> images(shapes.size(), 0);
  detail::for_each_item(rep, shapes.size(), [&](std::size_t i, VerifyReport& part) {
    const auto g = interlacement_graph(shapes[i]);
    GraphKeySet orbit;
    for (const auto& h : lc_orbit(g)) orbit.insert(key_of(h));
    for (int r : rs) {
      ++part.checked;
      const auto bad = find_nontrivial_r_incident(g, r, std::max(kDefaultRlcBound, g.size()));
      if (!bad.empty()) {
        part.violation("word " + shapes[i].to_string() + " r=" + std::to_string(r) + ": " +
                       std::to_string(bad.size()) + " nontrivial multisets");
      }
      for_each_valid_multiset(g, r, [&](const VertexMultiset& s) {
        ++images[i];
        if (!orbit.count(key_of(r_local_complement(g, s, r)))) {
          part.violation("word " + shapes[i].to_string() + " r=" + std::to_string(r) +
                         ": image outside LC orbit for " + multiset_to_json(s).dump());
        }
      });
    }
  });
  std::uint64_t total_images = 0;
  for (auto x : images) total_images += x;
  rep.details = {{"diagrams", shapes.size()}, {"images", total_images}};
  return rep;
}

/// G *^r S = (G *^1 A) *^r S' for every valid S on the given graphs.
inline VerifyReport verify_lemma1(const std::vector<LabeledGraph>& graphs, std::vector<int> rs = {1, 2, 3}) {
  VerifyReport rep;
  rep.name = "lemma1";
  rep.params = {{"graphs", graphs.size()}, {"r", rs}};
  detail::for_each_item(rep, graphs.size(), [&](std::size_t i, VerifyReport& part) {
    const auto& g = graphs[i];
    for (int r : rs) {
      for_each_valid_multiset(g, r, [&](const VertexMultiset& s) {
        ++part.checked;
        const auto direct = r_local_complement(g, s, r);
        const auto norm = normalize_multiset(g, s, r);
        auto staged = apply_local_complements(g, norm.A);
        if (!norm.Sprime.empty()) staged = r_local_complement(staged, norm.Sprime, r);
        if (!(staged == direct)) {
          part.violation(detail::graph_text(g) + " r=" + std::to_string(r) + " S=" + multiset_to_json(s).dump());
        }
      });
    }
  });
  return rep;
}

/// Graphs for the normalization check: every graph on up to exhaustive_n
/// vertices, then seeded random graphs on sampled_n vertices.
inline std::vector<LabeledGraph> lemma1_suite(int exhaustive_n, int sampled_n, int samples, std::uint64_t seed) {
  std::vector<LabeledGraph> out;
  for (int n = 1; n <= exhaustive_n; ++n)
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << pair_count(n)); ++code) out.push_back(graph_from_code(n, code));
  std::mt19937_64 rng(seed);
  for (int i = 0; i < samples; ++i) {
    const int n = sampled_n - (i % 2);
    out.push_back(graph_from_code(n, rng() & ((std::uint64_t{1} << pair_count(n)) - 1)));
  }
  return out;
}

/// On every diagram shape with at most max_chords chords, each independent
/// twin-free K holding a vertex of degree >= 2 has a witness pair.
inline VerifyReport verify_lemma2(int max_chords = 7) {
  VerifyReport rep;
  rep.name = "lemma2";
  rep.params = {{"max_n", max_chords}};
  const auto shapes = detail::shapes_up_to(max_chords);
  detail::for_each_item(rep, shapes.size(), [&](std::size_t i, VerifyReport& part) {
    const auto c = interlacement_graph(shapes[i]);
    for (Mask k = 1; k <= c.all(); ++k) {
      if (!lemma2_applies(c, k)) continue;
      ++part.checked;
      const auto kl = c.labels_of(k);
      try {
        lemma2_witness(c, kl);
      } catch (const TheoremViolation&) {
        std::string ks;
        for (Vertex v : kl) ks += std::to_string(v) + " ";
        part.violation("word " + shapes[i].to_string() + " K={ " + ks + "}");
      }
    }
  });
  rep.details = {{"diagrams", shapes.size()}};
  return rep;
}

/// Plane multigraphs for the planar-code checks: grids up to 3x3, theta,
/// book and fan families, and seeded random rotation systems.
inline std::vector<std::pair<std::string, PlaneMultigraph>> plane_suite(int max_edges = 12, int random_count = 200,
                                                                        std::uint64_t seed = 1) {
  std::vector<std::pair<std::string, PlaneMultigraph>> out;
  auto add = [&](std::string name, PlaneMultigraph p) {
    if (p.base().edge_count() <= max_edges) out.emplace_back(std::move(name), std::move(p));
  };
  for (int m = 1; m <= 3; ++m)
    for (int n = 1; n <= 3; ++n) add("grid " + std::to_string(m) + "x" + std::to_string(n), grid_plane_graph(m, n));
  for (int k = 1; k <= 6; ++k) {
    add("theta " + std::to_string(k), theta_plane_graph(k));
    add("book " + std::to_string(k), book_plane_graph(k));
    add("fan " + std::to_string(k), fan_plane_graph(k));
  }
  std::mt19937_64 rng(seed);
  for (int i = 0; i < random_count; ++i) {
    const int edges = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(std::max(1, max_edges)));
    const std::uint64_t s = rng();
    add("random " + std::to_string(edges) + " seed " + std::to_string(s), random_plane_multigraph(edges, s));
  }
  return out;
}

/// Stabilizer identities of the planar code after Hadamards on the non-tree
/// edges, generator count and redundancy, and equality with the graph state.
inline VerifyReport verify_theorem2(int max_edges = 12, int random_count = 200, std::uint64_t seed = 1) {
  VerifyReport rep;
  rep.name = "theorem2";
  rep.params = {{"max_edges", max_edges}, {"random", random_count}, {"seed", seed}};
  const auto suite = plane_suite(max_edges, random_count, seed);
  detail::for_each_item(rep, suite.size(), [&](std::size_t i, VerifyReport& part) {
    const auto& [name, p] = suite[i];
    ++part.checked;
    const auto r = check_theorem2(p);
    const int e = p.base().edge_count();
    std::string why;
    if (!r.failures.empty()) why = r.failures.front();
    else if (!r.same_group) why = "stabilizer group differs from the graph state";
    else if (r.generator_count != e + 2) why = "generator count " + std::to_string(r.generator_count);
    else if (r.redundancies != 2) why = std::to_string(r.redundancies) + " redundancies";
    if (!why.empty()) part.violation(name + ": " + why);
  });
  rep.details = {{"plane_graphs", suite.size()}};
  return rep;
}

/// Converse round trip on bipartite circle graphs, and pivot equivalence of
/// the fundamental graphs of all spanning trees of each resulting P.
inline VerifyReport verify_remark(int max_chords = 6) {
  VerifyReport rep;
  rep.name = "remark";
  rep.params = {{"max_n", max_chords}};
  std::vector<std::pair<LabeledGraph, ChordDiagram>> cases;
  for (int n = 1; n <= max_chords; ++n) {
    for (auto& gd : enumerate_circle_graphs(n))
      if (gd.first.is_bipartite()) cases.push_back(std::move(gd));
  }
  std::vector<std::uint64_t> trees(cases.size(), 0);
  detail::for_each_item(rep, cases.size(), [&](std::size_t i, VerifyReport& part) {
    const auto& [g, d] = cases[i];
    ++part.checked;
    const auto side = g.labels_of(*g.bipartition());
    const auto p = theorem2_converse(d, side);
    const std::vector<int> t(side.begin(), side.end());
    if (!(fundamental_graph(p, t) == g)) part.violation("word " + d.to_string() + ": round trip differs");
    const auto all = all_spanning_trees(p);
    trees[i] = all.size();
    GraphKeySet orbit;
    for (const auto& h : pivot_orbit(fundamental_graph(p, all.front()))) orbit.insert(key_of(h));
    for (const auto& tree : all) {
      if (!orbit.count(key_of(fundamental_graph(p, tree)))) {
        part.violation("word " + d.to_string() + ": spanning trees give pivot-inequivalent graphs");
        break;
      }
    }
  });
  std::uint64_t total = 0;
  for (auto x : trees) total += x;
  rep.details = {{"bipartite_graphs", cases.size()}, {"spanning_trees", total}};
  return rep;
}

/// Bipartite circle embedding on every chord diagram (all matchings, not
/// just shapes, since the planarization depends on the word) with at most
/// max_chords chords.
inline VerifyReport verify_prop5(int max_chords = 5, int recognition_bound = kDefaultRecognitionBound) {
  VerifyReport rep;
  rep.name = "prop5";
  rep.params = {{"max_n", max_chords}, {"recognition_bound", recognition_bound}};
  std::vector<ChordDiagram> words;
  for (int n = 1; n <= max_chords; ++n)
    for_each_matching_word(n, [&](const std::vector<Vertex>& w) { words.emplace_back(w); });
  std::vector<int> crossings(words.size(), 0), sizes(words.size(), 0), recognized(words.size(), 0);
  detail::for_each_item(rep, words.size(), [&](std::size_t i, VerifyReport& part) {
    const auto c = interlacement_graph(words[i]);
    ++part.checked;
    const auto r = prop5_embed(c, words[i]);
    const auto k = check_prop5(c, r, recognition_bound);
    crossings[i] = r.crossings;
    sizes[i] = r.bipartite.size();
    recognized[i] = k.recognized;
    std::string why;
    if (!k.bipartite) why = "B not bipartite";
    else if (!k.circle) why = "B not certified circle";
    else if (!k.size_bound) why = "|V(B)| above 2n^2";
    else if (!k.crossing_bound) why = "crossings above 2n^2-n";
    else if (!k.recovered) why = "Y-measurements do not recover C up to LC";
    if (!why.empty()) part.violation("word " + words[i].to_string() + ": " + why);
  });
  rep.details = {{"diagrams", words.size()},
                 {"max_crossings", words.empty() ? 0 : *std::max_element(crossings.begin(), crossings.end())},
                 {"max_b_vertices", words.empty() ? 0 : *std::max_element(sizes.begin(), sizes.end())},
                 {"recognized_exhaustively", std::count(recognized.begin(), recognized.end(), 1)}};
  return rep;
}

inline VerifyReport verify_one_third(int n) {
  VerifyReport rep;
  rep.name = "onethird";
  rep.params = {{"n", n}};
  const auto r = verify_one_third_lemma(n);
  rep.checked = r.subsets;
  for (const auto& x : r.violations) {
    std::string s;
    for (Vertex v : x) s += std::to_string(v) + " ";
    rep.violation("X={ " + s + "}");
  }
  rep.details = {{"small_cut_subsets", r.small_cuts}};
  return rep;
}

/// Graph-rewrite measurement against the dense state for every graph on at
/// most max_n vertices, every vertex and basis.
inline VerifyReport verify_measurement(int max_n = 5) {
  VerifyReport rep;
  rep.name = "measurement";
  rep.params = {{"max_n", max_n}};
  std::vector<LabeledGraph> graphs;
  for (int n = 1; n <= max_n; ++n)
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << pair_count(n)); ++code) graphs.push_back(graph_from_code(n, code));
  detail::for_each_item(rep, graphs.size(), [&](std::size_t i, VerifyReport& part) {
    const auto& g = graphs[i];
    for (Vertex v : g.labels()) {
      for (Basis b : {Basis::X, Basis::Y, Basis::Z}) {
        ++part.checked;
        if (!measurement_matches_oracle(g, v, b)) {
          part.violation(detail::graph_text(g) + " v=" + std::to_string(v) + " basis=" + basis_name(b));
        }
      }
    }
  });
  return rep;
}

}  // namespace circlekit
