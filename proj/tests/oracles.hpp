#pragma once
// Independent reference implementations used by the unit tests and the
// acceptance binary. None of them share code paths with the library beyond
// plain data types.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <queue>
#include <set>
#include <utility>
#include <vector>

#include "circlekit/graph.hpp"

namespace oracle {

using circlekit::LabeledGraph;
using circlekit::Vertex;

// Edge-set form: sorted pairs (u < v) over labels.
using EdgeSet = std::set<std::pair<int, int>>;

inline EdgeSet edge_set(const LabeledGraph& g) {
  EdgeSet s;
  for (auto [u, v] : g.edges()) s.insert({std::min(u, v), std::max(u, v)});
  return s;
}

inline std::vector<int> nbrs(const EdgeSet& e, int u) {
  std::vector<int> out;
  for (auto [a, b] : e) {
    if (a == u) out.push_back(b);
    if (b == u) out.push_back(a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline EdgeSet toggle(EdgeSet e, int a, int b) {
  const std::pair<int, int> p{std::min(a, b), std::max(a, b)};
  if (!e.erase(p)) e.insert(p);
  return e;
}

inline EdgeSet lc(const EdgeSet& e, int u) {
  const auto n = nbrs(e, u);
  EdgeSet out = e;
  for (std::size_t i = 0; i < n.size(); ++i)
    for (std::size_t j = i + 1; j < n.size(); ++j) out = toggle(out, n[i], n[j]);
  return out;
}

/// LC orbit size by BFS over edge sets, visiting vertices in reverse order.
inline std::size_t lc_orbit_size(const LabeledGraph& g) {
  std::vector<int> labels = g.labels();
  std::reverse(labels.begin(), labels.end());
  std::set<EdgeSet> seen{edge_set(g)};
  std::queue<EdgeSet> q;
  q.push(edge_set(g));
  while (!q.empty()) {
    const EdgeSet cur = q.front();
    q.pop();
    for (int u : labels) {
      EdgeSet next = lc(cur, u);
      if (seen.insert(next).second) q.push(std::move(next));
    }
  }
  return seen.size();
}

/// Chords x, y cross iff exactly one endpoint of y lies strictly between the
/// endpoints of x.
inline EdgeSet interlacement(const std::vector<int>& word) {
  std::map<int, std::vector<int>> pos;
  for (int i = 0; i < static_cast<int>(word.size()); ++i) pos[word[static_cast<std::size_t>(i)]].push_back(i);
  EdgeSet out;
  for (auto& [x, px] : pos) {
    for (auto& [y, py] : pos) {
      if (x >= y) continue;
      const int inside = (px[0] < py[0] && py[0] < px[1]) + (px[0] < py[1] && py[1] < px[1]);
      if (inside == 1) out.insert({x, y});
    }
  }
  return out;
}

/// GF(2) rank by elimination over a dense 0/1 matrix.
inline int gf2_rank(std::vector<std::vector<int>> m) {
  int rank = 0;
  const int rows = static_cast<int>(m.size());
  const int cols = rows ? static_cast<int>(m[0].size()) : 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int p = -1;
    for (int r = rank; r < rows; ++r)
      if (m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]) { p = r; break; }
    if (p < 0) continue;
    std::swap(m[static_cast<std::size_t>(p)], m[static_cast<std::size_t>(rank)]);
    for (int r = 0; r < rows; ++r) {
      if (r != rank && m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]) {
        for (int k = 0; k < cols; ++k)
          m[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)] ^= m[static_cast<std::size_t>(rank)][static_cast<std::size_t>(k)];
      }
    }
    ++rank;
  }
  return rank;
}

/// Cut rank over index sets given as a membership vector.
inline int cut_rank(const LabeledGraph& g, const std::vector<bool>& in_x) {
  std::vector<int> xs, ys;
  for (int i = 0; i < g.size(); ++i) (in_x[static_cast<std::size_t>(i)] ? xs : ys).push_back(i);
  std::vector<std::vector<int>> m;
  for (int a : xs) {
    std::vector<int> row;
    for (int b : ys) row.push_back(g.adjacent_at(a, b) ? 1 : 0);
    m.push_back(row);
  }
  return gf2_rank(m);
}

/// Rank-width by enumerating every unrooted tree whose internal nodes have
/// degree 3 and whose leaves are the vertices. Trees are grown by attaching
/// leaf k to the middle of any existing edge.
inline int rank_width_by_trees(const LabeledGraph& g) {
  const int n = g.size();
  if (n <= 1) return 0;
  if (n == 2) return cut_rank(g, {true, false});
  // Nodes 0..n-1 are leaves; internal nodes follow.
  std::vector<std::pair<int, int>> edges{{0, n}, {1, n}, {2, n}};
  int best = n;
  std::function<void(int, int)> grow = [&](int k, int next_internal) {
    if (k == n) {
      int width = 0;
      const int nodes = next_internal;
      for (std::size_t e = 0; e < edges.size() && width < best; ++e) {
        std::vector<std::vector<int>> adj(static_cast<std::size_t>(nodes));
        for (std::size_t f = 0; f < edges.size(); ++f) {
          if (f == e) continue;
          adj[static_cast<std::size_t>(edges[f].first)].push_back(edges[f].second);
          adj[static_cast<std::size_t>(edges[f].second)].push_back(edges[f].first);
        }
        std::vector<bool> seen(static_cast<std::size_t>(nodes), false);
        std::vector<int> stack{edges[e].first};
        seen[static_cast<std::size_t>(edges[e].first)] = true;
        while (!stack.empty()) {
          const int u = stack.back();
          stack.pop_back();
          for (int v : adj[static_cast<std::size_t>(u)])
            if (!seen[static_cast<std::size_t>(v)]) { seen[static_cast<std::size_t>(v)] = true; stack.push_back(v); }
        }
        std::vector<bool> side(seen.begin(), seen.begin() + n);
        width = std::max(width, cut_rank(g, side));
      }
      best = std::min(best, width);
      return;
    }
    const std::size_t count = edges.size();
    for (std::size_t e = 0; e < count; ++e) {
      const auto [a, b] = edges[e];
      const int mid = next_internal;
      edges[e] = {a, mid};
      edges.push_back({mid, b});
      edges.push_back({mid, k});
      grow(k + 1, next_internal + 1);
      edges.pop_back();
      edges.pop_back();
      edges[e] = {a, b};
    }
  };
  grow(3, n + 1);
  return best;
}

/// r-incidence straight from the definition: every K outside the support
/// with |K| = k + 2, k < r, has a common-neighbour weight divisible by
/// 2^(r - k - [k == 0]).
inline bool r_incident(const LabeledGraph& g, const std::map<int, long long>& s, int r) {
  std::vector<int> outside;
  for (int v : g.labels())
    if (!s.count(v) || s.at(v) == 0) outside.push_back(v);
  const int m = static_cast<int>(outside.size());
  for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << m); ++pick) {
    const int size = std::popcount(pick);
    const int k = size - 2;
    if (k < 0 || k >= r) continue;
    long long sum = 0;
    for (auto [u, mult] : s) {
      if (mult == 0) continue;
      bool common = true;
      for (int i = 0; i < m && common; ++i)
        if ((pick >> i) & 1) common = g.adjacent(u, outside[static_cast<std::size_t>(i)]);
      if (common) sum += mult;
    }
    const long long modulus = 1LL << (r - k - (k == 0 ? 1 : 0));
    if (sum % modulus != 0) return false;
  }
  return true;
}

/// r-local complementation from the definition, on edge sets.
inline EdgeSet r_lc(const LabeledGraph& g, const std::map<int, long long>& s, int r) {
  EdgeSet e = edge_set(g);
  const auto labels = g.labels();
  for (std::size_t i = 0; i < labels.size(); ++i) {
    for (std::size_t j = i + 1; j < labels.size(); ++j) {
      long long sum = 0;
      for (auto [u, mult] : s)
        if (g.adjacent(u, labels[i]) && g.adjacent(u, labels[j])) sum += mult;
      if (sum % (1LL << r) == (1LL << (r - 1))) e = toggle(e, labels[i], labels[j]);
    }
  }
  return e;
}

}  // namespace oracle
