#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "circlekit/chord.hpp"
#include "circlekit/errors.hpp"
#include "circlekit/graph.hpp"
#include "circlekit/parallel.hpp"

namespace circlekit {

/// GF(2) rank of the adjacency block between index set x and its complement.
inline int cut_rank_at(const LabeledGraph& g, Mask x) {
  x &= g.all();
  const Mask rest = g.all() & ~x;
  Mask basis[64] = {};
  int rank = 0;
  for_each_bit(x, [&](int i) {
    Mask v = g.row(i) & rest;
    while (v) {
      const int top = 63 - __builtin_clzll(v);
      if (!basis[top]) {
        basis[top] = v;
        ++rank;
        return;
      }
      v ^= basis[top];
    }
  });
  return rank;
}

inline int cut_rank(const LabeledGraph& g, std::span<const Vertex> x) { return cut_rank_at(g, g.mask_of(x)); }

/// Unrooted tree with leaves on the graph's vertices and internal nodes of
/// degree 3.
struct RankDecomposition {
  int node_count = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::pair<int, Vertex>> leaves;  // node -> vertex label
  int width = 0;
  std::string text;                            // nested leaf partition
};

inline constexpr int kDefaultRankWidthBound = 12;
inline constexpr int kRankWidthHardLimit = 26;

namespace detail {

inline int node_degree(const RankDecomposition& d, int node) {
  int deg = 0;
  for (const auto& [a, b] : d.edges) deg += (a == node) + (b == node);
  return deg;
}

}  // namespace detail

/// Leaf index set on the side of tree edge `e` containing its second node.
inline Mask decomposition_side(const LabeledGraph& g, const RankDecomposition& d, std::size_t e) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(d.node_count));
  for (std::size_t i = 0; i < d.edges.size(); ++i) {
    if (i == e) continue;
    adj[static_cast<std::size_t>(d.edges[i].first)].push_back(d.edges[i].second);
    adj[static_cast<std::size_t>(d.edges[i].second)].push_back(d.edges[i].first);
  }
  std::vector<char> seen(static_cast<std::size_t>(d.node_count), 0);
  std::vector<int> stack{d.edges[e].second};
  seen[static_cast<std::size_t>(d.edges[e].second)] = 1;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (int v : adj[static_cast<std::size_t>(u)]) {
      if (!seen[static_cast<std::size_t>(v)]) {
        seen[static_cast<std::size_t>(v)] = 1;
        stack.push_back(v);
      }
    }
  }
  Mask side = 0;
  for (const auto& [node, label] : d.leaves)
    if (seen[static_cast<std::size_t>(node)]) side |= bit(g.index_of(label));
  return side;
}

/// Structural check plus recomputed width; returns the width or throws
/// ValidityError.
inline int check_decomposition(const LabeledGraph& g, const RankDecomposition& d) {
  if (static_cast<int>(d.leaves.size()) != g.size()) throw ValidityError("leaf count differs from vertex count");
  Mask covered = 0;
  std::vector<char> is_leaf(static_cast<std::size_t>(d.node_count), 0);
  for (const auto& [node, label] : d.leaves) {
    const Mask b = bit(g.index_of(label));
    if (covered & b) throw ValidityError("vertex mapped to two leaves");
    covered |= b;
    is_leaf[static_cast<std::size_t>(node)] = 1;
  }
  if (g.size() >= 2 && static_cast<int>(d.edges.size()) != d.node_count - 1) {
    throw ValidityError("decomposition is not a tree");
  }
  for (int node = 0; node < d.node_count; ++node) {
    const int deg = detail::node_degree(d, node);
    if (g.size() >= 2 && (is_leaf[static_cast<std::size_t>(node)] ? deg != 1 : deg != 3)) {
      throw ValidityError("node " + std::to_string(node) + " has degree " + std::to_string(deg));
    }
  }
  int width = 0;
  for (std::size_t e = 0; e < d.edges.size(); ++e) {
    const Mask side = decomposition_side(g, d, e);
    if (side == 0 || side == g.all()) throw ValidityError("decomposition is not a tree");
    width = std::max(width, cut_rank_at(g, side));
  }
  return width;
}

/// Exact rank-width by dynamic programming over vertex subsets. best[X] is the
/// least width of a rooted subcubic tree on X, counting the edge above X.
inline RankDecomposition rank_width_exact(const LabeledGraph& g, int bound = kDefaultRankWidthBound) {
  const int n = g.size();
  if (n > bound || n > kRankWidthHardLimit) {
    throw BoundExceededError("rank-width DP limited to " + std::to_string(std::min(bound, kRankWidthHardLimit)) +
                             " vertices, got " + std::to_string(n));
  }
  RankDecomposition d;
  if (n == 0) return d;
  if (n == 1) {
    d.node_count = 1;
    d.leaves = {{0, g.label(0)}};
    d.text = std::to_string(g.label(0));
    return d;
  }
  const std::size_t total = std::size_t{1} << n;
  std::vector<std::uint8_t> rank(total), best(total, 0xff);
  std::vector<Mask> split(total, 0);
  for (std::size_t x = 0; x < total; ++x) rank[x] = static_cast<std::uint8_t>(cut_rank_at(g, x));

  std::vector<std::vector<Mask>> layers(static_cast<std::size_t>(n) + 1);
  for (std::size_t x = 1; x + 1 < total; ++x) layers[static_cast<std::size_t>(popcount(x))].push_back(x);
  for (Mask x : layers[1]) best[x] = rank[x];

  auto best_split = [&](Mask x, int floor) {
    const Mask low = x & (~x + 1);
    const Mask rest = x ^ low;
    int value = 0xff;
    Mask choice = 0;
    // Submasks of rest other than rest itself.
    for (Mask sub = (rest - 1) & rest;; sub = (sub - 1) & rest) {
      const Mask a = low | sub;
      const int v = std::max(best[a], best[x ^ a]);
      if (v < value) {
        value = v;
        choice = a;
        if (value <= floor) break;
      }
      if (sub == 0) break;
    }
    return std::pair{value, choice};
  };

  for (int k = 2; k < n; ++k) {
    const auto& layer = layers[static_cast<std::size_t>(k)];
    parallel_for(layer.size(), [&](std::size_t i) {
      const Mask x = layer[i];
      const auto [value, choice] = best_split(x, rank[x]);
      best[x] = static_cast<std::uint8_t>(std::max<int>(rank[x], value));
      split[x] = choice;
    }, 512);
  }
  const auto [width, root_split] = best_split(g.all(), 0);
  d.width = width;

  // Rebuild the tree from the stored splits.
  auto new_node = [&](Mask x) {
    const int id = d.node_count++;
    if (popcount(x) == 1) d.leaves.emplace_back(id, g.label(__builtin_ctzll(x)));
    return id;
  };
  std::function<std::string(Mask, int)> grow = [&](Mask x, int node) -> std::string {
    if (popcount(x) == 1) return std::to_string(g.label(__builtin_ctzll(x)));
    const Mask a = split[x];
    const Mask b = x ^ a;
    const int na = new_node(a);
    const int nb = new_node(b);
    d.edges.emplace_back(node, na);
    d.edges.emplace_back(node, nb);
    return "(" + grow(a, na) + "," + grow(b, nb) + ")";
  };
  const Mask a = root_split;
  const Mask b = g.all() ^ a;
  const int na = new_node(a);
  const int nb = new_node(b);
  d.edges.emplace_back(na, nb);
  d.text = "(" + grow(a, na) + "," + grow(b, nb) + ")";
  std::sort(d.leaves.begin(), d.leaves.end());
  return d;
}

inline nlohmann::ordered_json decomposition_to_json(const RankDecomposition& d) {
  nlohmann::ordered_json j;
  j["width"] = d.width;
  j["text"] = d.text;
  j["nodes"] = d.node_count;
  j["leaves"] = nlohmann::ordered_json::array();
  for (const auto& [node, label] : d.leaves) j["leaves"].push_back({node, label});
  j["edges"] = nlohmann::ordered_json::array();
  for (const auto& [a, b] : d.edges) j["edges"].push_back({a, b});
  return j;
}

/// Label of grid point (i, j), 1-based, in an m x n grid.
inline Vertex grid_label(int n, int i, int j) { return (i - 1) * n + (j - 1); }

/// Vertices (i, j) and (i', j') are adjacent when the pairs are comparable
/// coordinatewise.
inline LabeledGraph comparability_grid(int m, int n) {
  if (m < 1 || n < 1) throw PreconditionError("grid sides must be positive");
  if (m * n > 64) throw BoundExceededError("grid has more than 64 vertices");
  LabeledGraph g(m * n);
  for (int i = 1; i <= m; ++i)
    for (int j = 1; j <= n; ++j)
      for (int a = 1; a <= m; ++a)
        for (int b = 1; b <= n; ++b) {
          if (grid_label(n, i, j) >= grid_label(n, a, b)) continue;
          if ((i <= a && j <= b) || (i >= a && j >= b)) g.add_edge(grid_label(n, i, j), grid_label(n, a, b));
        }
  return g;
}

/// Chord (i, j) runs from point i on one half of the circle to point j on the
/// other. Each shared point is split into adjacent copies, ordered so chords
/// through a common point cross.
inline ChordDiagram comparability_grid_diagram(int n) {
  if (n < 1) throw PreconditionError("grid side must be positive");
  if (n * n > 64) throw BoundExceededError("grid has more than 64 vertices");
  std::vector<Vertex> word;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) word.push_back(grid_label(n, i, j));
  for (int j = 1; j <= n; ++j)
    for (int i = 1; i <= n; ++i) word.push_back(grid_label(n, i, j));
  return ChordDiagram(std::move(word));
}

struct OneThirdReport {
  int n = 0;
  std::uint64_t subsets = 0;
  std::uint64_t small_cuts = 0;  // subsets meeting both hypotheses
  std::vector<std::vector<Vertex>> violations;
  bool ok() const { return violations.empty(); }
};

inline constexpr int kOneThirdMaxN = 4;

/// Scans every subset X of the n x n comparability grid: if |X| <= n^2/2 and
/// r(X) <= n/4 then |X| < n^2/3 must hold.
inline OneThirdReport verify_one_third_lemma(int n) {
  if (n < 1) throw PreconditionError("grid side must be positive");
  if (n > kOneThirdMaxN) throw BoundExceededError("one-third scan limited to n <= 4");
  const auto g = comparability_grid(n, n);
  const int v = n * n;
  OneThirdReport r;
  r.n = n;
  for (Mask x = 0; x < (Mask{1} << v); ++x) {
    ++r.subsets;
    const int size = popcount(x);
    if (2 * size > v) continue;
    if (4 * cut_rank_at(g, x) > n) continue;
    ++r.small_cuts;
    if (3 * size >= v) r.violations.push_back(g.labels_of(x));
  }
  return r;
}

}  // namespace circlekit
