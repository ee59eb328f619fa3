#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "circlekit/errors.hpp"

namespace circlekit {

using Vertex = int;
// Bit i stands for the vertex at index i of a graph.
using Mask = std::uint64_t;

inline constexpr Mask bit(int i) { return Mask{1} << i; }

inline int popcount(Mask m) { return std::popcount(m); }

// Calls f(i) for every set bit i of m, lowest first.
template <class F>
inline void for_each_bit(Mask m, F&& f) {
  while (m) {
    const int i = std::countr_zero(m);
    f(i);
    m &= m - 1;
  }
}

/// Simple undirected graph on an ordered list of distinct vertex labels.
///
/// Adjacency is a symmetric bit matrix with zero diagonal, one 64-bit row per
/// vertex, so graphs hold at most 64 vertices. Indices (0..size()-1) follow
/// the label order; all public operations taking a `Vertex` resolve it
/// through the label list.
class LabeledGraph {
 public:
  static constexpr int kMaxVertices = 64;

  LabeledGraph() = default;

  /// Edgeless graph labeled 0..n-1.
  explicit LabeledGraph(int n) : LabeledGraph(iota_labels(n, 0)) {}

  explicit LabeledGraph(std::vector<Vertex> labels)
      : labels_(std::move(labels)), rows_(labels_.size(), 0) {
    if (labels_.size() > static_cast<std::size_t>(kMaxVertices)) {
      throw BoundExceededError("graph has " + std::to_string(labels_.size()) +
                               " vertices; at most 64 are supported");
    }
    auto sorted = labels_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw InvalidVertexError("duplicate vertex label");
    }
  }

  static LabeledGraph from_edges(std::vector<Vertex> labels,
                                 std::span<const std::pair<Vertex, Vertex>> edges) {
    LabeledGraph g(std::move(labels));
    for (auto [u, v] : edges) g.add_edge(u, v);
    return g;
  }

  static LabeledGraph from_edges(int n,
                                 std::span<const std::pair<Vertex, Vertex>> edges) {
    return from_edges(iota_labels(n, 0), edges);
  }

  static LabeledGraph from_edges(
      int n, std::initializer_list<std::pair<Vertex, Vertex>> edges) {
    return from_edges(iota_labels(n, 0),
                      std::span<const std::pair<Vertex, Vertex>>(edges.begin(), edges.size()));
  }

  static LabeledGraph from_edges(
      std::vector<Vertex> labels,
      std::initializer_list<std::pair<Vertex, Vertex>> edges) {
    return from_edges(std::move(labels),
                      std::span<const std::pair<Vertex, Vertex>>(edges.begin(), edges.size()));
  }

  static std::vector<Vertex> iota_labels(int n, Vertex first) {
    std::vector<Vertex> labels(static_cast<std::size_t>(std::max(n, 0)));
    for (int i = 0; i < n; ++i) labels[static_cast<std::size_t>(i)] = first + i;
    return labels;
  }

  int size() const { return static_cast<int>(labels_.size()); }
  bool empty() const { return labels_.empty(); }
  const std::vector<Vertex>& labels() const { return labels_; }
  Vertex label(int index) const { return labels_[static_cast<std::size_t>(index)]; }
  Mask all() const { return size() == 64 ? ~Mask{0} : bit(size()) - 1; }

  std::optional<int> find(Vertex v) const {
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      if (labels_[i] == v) return static_cast<int>(i);
    }
    return std::nullopt;
  }

  bool contains(Vertex v) const { return find(v).has_value(); }

  int index_of(Vertex v) const {
    if (auto i = find(v)) return *i;
    throw InvalidVertexError("unknown vertex " + std::to_string(v));
  }

  // Index-level access used by the search code.
  Mask row(int i) const { return rows_[static_cast<std::size_t>(i)]; }
  const std::vector<Mask>& rows() const { return rows_; }
  bool adjacent_at(int i, int j) const { return (row(i) >> j) & 1U; }

  void set_edge_at(int i, int j, bool present) {
    if (i == j) throw InvalidVertexError("self-loops are not allowed");
    auto& ri = rows_[static_cast<std::size_t>(i)];
    auto& rj = rows_[static_cast<std::size_t>(j)];
    if (present) {
      ri |= bit(j);
      rj |= bit(i);
    } else {
      ri &= ~bit(j);
      rj &= ~bit(i);
    }
  }

  void toggle_edge_at(int i, int j) { set_edge_at(i, j, !adjacent_at(i, j)); }

  /// Toggles every edge inside the vertex set `m` (the K_m symmetric difference).
  void toggle_clique_at(Mask m) {
    for_each_bit(m, [&](int a) { rows_[static_cast<std::size_t>(a)] ^= m & ~bit(a); });
  }

  bool adjacent(Vertex u, Vertex v) const { return adjacent_at(index_of(u), index_of(v)); }
  void add_edge(Vertex u, Vertex v) { set_edge_at(index_of(u), index_of(v), true); }
  void remove_edge(Vertex u, Vertex v) { set_edge_at(index_of(u), index_of(v), false); }
  void toggle_edge(Vertex u, Vertex v) { toggle_edge_at(index_of(u), index_of(v)); }

  int degree(Vertex v) const { return popcount(row(index_of(v))); }

  std::vector<Vertex> neighbors(Vertex v) const { return labels_of(row(index_of(v))); }

  std::vector<Vertex> labels_of(Mask m) const {
    std::vector<Vertex> out;
    for_each_bit(m, [&](int i) { out.push_back(label(i)); });
    return out;
  }

  Mask mask_of(std::span<const Vertex> vs) const {
    Mask m = 0;
    for (Vertex v : vs) m |= bit(index_of(v));
    return m;
  }

  std::vector<std::pair<Vertex, Vertex>> edges() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    for (int i = 0; i < size(); ++i) {
      for_each_bit(row(i) & ~(bit(i + 1) - 1),
                   [&](int j) { out.emplace_back(label(i), label(j)); });
    }
    return out;
  }

  int edge_count() const {
    int twice = 0;
    for (Mask r : rows_) twice += popcount(r);
    return twice / 2;
  }

  /// Twins share their neighborhood outside the pair itself.
  bool twins_at(int i, int j) const {
    return (row(i) & ~bit(j)) == (row(j) & ~bit(i));
  }

  bool is_independent_at(Mask m) const {
    bool ok = true;
    for_each_bit(m, [&](int i) { ok = ok && (row(i) & m) == 0; });
    return ok;
  }

  /// One color class of a proper 2-coloring (the class holding the first
  /// vertex of each component), or nullopt when the graph has an odd cycle.
  std::optional<Mask> bipartition() const {
    Mask seen = 0, side = 0;
    for (int s = 0; s < size(); ++s) {
      if (seen & bit(s)) continue;
      std::vector<int> stack{s};
      seen |= bit(s);
      side |= bit(s);
      while (!stack.empty()) {
        const int u = stack.back();
        stack.pop_back();
        const bool u_side = (side >> u) & 1U;
        bool conflict = false;
        for_each_bit(row(u), [&](int w) {
          if (seen & bit(w)) {
            if (((side >> w) & 1U) == u_side) conflict = true;
            return;
          }
          seen |= bit(w);
          if (!u_side) side |= bit(w);
          stack.push_back(w);
        });
        if (conflict) return std::nullopt;
      }
    }
    return side;
  }

  bool is_bipartite() const { return bipartition().has_value(); }

  /// Masks of the connected components, ordered by lowest index.
  std::vector<Mask> components() const {
    std::vector<Mask> out;
    Mask seen = 0;
    for (int s = 0; s < size(); ++s) {
      if (seen & bit(s)) continue;
      Mask comp = bit(s), frontier = bit(s);
      while (frontier) {
        Mask next = 0;
        for_each_bit(frontier, [&](int u) { next |= row(u); });
        frontier = next & ~comp;
        comp |= next;
      }
      seen |= comp;
      out.push_back(comp);
    }
    return out;
  }

  /// Subgraph induced on the indices in `keep`, labels preserved.
  LabeledGraph induced_at(Mask keep) const {
    std::vector<int> idx;
    for_each_bit(keep, [&](int i) { idx.push_back(i); });
    std::vector<Vertex> labels;
    labels.reserve(idx.size());
    for (int i : idx) labels.push_back(label(i));
    LabeledGraph out;
    out.labels_ = std::move(labels);
    out.rows_.assign(idx.size(), 0);
    for (std::size_t a = 0; a < idx.size(); ++a) {
      for (std::size_t b = a + 1; b < idx.size(); ++b) {
        if (adjacent_at(idx[a], idx[b])) {
          out.rows_[a] |= bit(static_cast<int>(b));
          out.rows_[b] |= bit(static_cast<int>(a));
        }
      }
    }
    return out;
  }

  /// Same graph with the label list reordered to `order` (a permutation of
  /// the current labels).
  LabeledGraph reordered(std::span<const Vertex> order) const {
    if (order.size() != labels_.size()) {
      throw InvalidVertexError("reordering must list every vertex exactly once");
    }
    LabeledGraph out(std::vector<Vertex>(order.begin(), order.end()));
    std::vector<int> from(order.size());
    for (std::size_t a = 0; a < order.size(); ++a) from[a] = index_of(order[a]);
    for (std::size_t a = 0; a < order.size(); ++a) {
      for (std::size_t b = a + 1; b < order.size(); ++b) {
        if (adjacent_at(from[a], from[b])) {
          out.set_edge_at(static_cast<int>(a), static_cast<int>(b), true);
        }
      }
    }
    return out;
  }

  /// Same vertex set and edge set, regardless of label order.
  bool same_as(const LabeledGraph& other) const {
    if (size() != other.size()) return false;
    for (Vertex v : labels_) {
      if (!other.contains(v)) return false;
    }
    for (int i = 0; i < size(); ++i) {
      const int oi = other.index_of(label(i));
      for (int j = i + 1; j < size(); ++j) {
        if (adjacent_at(i, j) != other.adjacent_at(oi, other.index_of(label(j)))) {
          return false;
        }
      }
    }
    return true;
  }

  friend bool operator==(const LabeledGraph& a, const LabeledGraph& b) {
    return a.labels_ == b.labels_ && a.rows_ == b.rows_;
  }

 private:
  std::vector<Vertex> labels_;
  std::vector<Mask> rows_;
};

/// Row-major adjacency bits under the fixed label order. Two graphs on the
/// same label list are equal iff their keys are equal.
struct GraphKey {
  std::vector<Mask> rows;
  friend bool operator==(const GraphKey&, const GraphKey&) = default;
  friend auto operator<=>(const GraphKey&, const GraphKey&) = default;
};

inline GraphKey key_of(const LabeledGraph& g) { return GraphKey{g.rows()}; }

struct GraphKeyHash {
  std::size_t operator()(const GraphKey& k) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ k.rows.size();
    for (Mask r : k.rows) {
      h ^= r + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

using GraphKeySet = std::unordered_set<GraphKey, GraphKeyHash>;

// ---------------------------------------------------------------------------
// Rewrites

inline void local_complement_at(LabeledGraph& g, int i) { g.toggle_clique_at(g.row(i)); }

/// G * u: complements the subgraph induced by the neighborhood of u.
inline LabeledGraph local_complement(const LabeledGraph& g, Vertex u) {
  LabeledGraph out = g;
  local_complement_at(out, g.index_of(u));
  return out;
}

inline void pivot_at(LabeledGraph& g, int i, int j) {
  local_complement_at(g, i);
  local_complement_at(g, j);
  local_complement_at(g, i);
}

/// G * u * v * u for an edge uv.
inline LabeledGraph pivot(const LabeledGraph& g, Vertex u, Vertex v) {
  const int i = g.index_of(u), j = g.index_of(v);
  if (!g.adjacent_at(i, j)) {
    throw NotAnEdgeError("pivot requires adjacent vertices " + std::to_string(u) +
                         " and " + std::to_string(v));
  }
  LabeledGraph out = g;
  pivot_at(out, i, j);
  return out;
}

inline LabeledGraph delete_vertex(const LabeledGraph& g, Vertex u) {
  return g.induced_at(g.all() & ~bit(g.index_of(u)));
}

inline LabeledGraph delete_vertices(const LabeledGraph& g, std::span<const Vertex> vs) {
  return g.induced_at(g.all() & ~g.mask_of(vs));
}

// ---------------------------------------------------------------------------
// Orbits

inline constexpr std::size_t kDefaultOrbitCap = std::size_t{1} << 20;

namespace detail {

// Breadth-first closure of {seed} under the moves produced by `expand`.
template <class Expand>
std::vector<LabeledGraph> closure(const LabeledGraph& seed, std::size_t cap,
                                  Expand&& expand, const char* what) {
  if (cap < 1) throw PreconditionError("orbit cap must be at least 1");
  std::vector<LabeledGraph> order{seed};
  GraphKeySet seen{key_of(seed)};
  for (std::size_t head = 0; head < order.size(); ++head) {
    const LabeledGraph current = order[head];
    expand(current, [&](LabeledGraph&& next) {
      if (seen.insert(key_of(next)).second) {
        if (order.size() >= cap) {
          throw OrbitOverflowError(std::string(what) + " exceeds cap of " +
                                   std::to_string(cap) + " graphs");
        }
        order.push_back(std::move(next));
      }
    });
  }
  return order;
}

}  // namespace detail

/// All graphs reachable from g by local complementations, seed first, in
/// breadth-first order.
inline std::vector<LabeledGraph> lc_orbit(const LabeledGraph& g,
                                          std::size_t cap = kDefaultOrbitCap) {
  return detail::closure(
      g, cap,
      [](const LabeledGraph& cur, auto&& emit) {
        for (int u = 0; u < cur.size(); ++u) {
          if (popcount(cur.row(u)) < 2) continue;  // identity move
          LabeledGraph next = cur;
          local_complement_at(next, u);
          emit(std::move(next));
        }
      },
      "LC orbit");
}

/// All graphs reachable from g by pivoting on edges.
inline std::vector<LabeledGraph> pivot_orbit(const LabeledGraph& g,
                                             std::size_t cap = kDefaultOrbitCap) {
  return detail::closure(
      g, cap,
      [](const LabeledGraph& cur, auto&& emit) {
        for (int u = 0; u < cur.size(); ++u) {
          for_each_bit(cur.row(u) & ~(bit(u + 1) - 1), [&](int v) {
            LabeledGraph next = cur;
            pivot_at(next, u, v);
            emit(std::move(next));
          });
        }
      },
      "pivot orbit");
}

inline std::size_t count_lc_orbit(const LabeledGraph& g,
                                  std::size_t cap = kDefaultOrbitCap) {
  return lc_orbit(g, cap).size();
}

// ---------------------------------------------------------------------------
// Minors

inline constexpr int kDefaultMinorBound = 10;

namespace detail {

// Local complementations (and hence pivots) at kept vertices commute with
// deleting other vertices: (G * w) - X = (G - X) * w for w outside X. Every
// interleaved sequence can therefore be reordered into "rewrite first, delete
// last", and the search reduces to scanning the orbit of G.
template <class OrbitFn>
bool is_minor(const LabeledGraph& h, const LabeledGraph& g, int bound, std::size_t cap,
              OrbitFn&& orbit) {
  if (g.size() > bound) {
    throw BoundExceededError("minor search bound is " + std::to_string(bound) +
                             " vertices, graph has " + std::to_string(g.size()));
  }
  Mask keep = 0;
  for (Vertex v : h.labels()) {
    auto i = g.find(v);
    if (!i) return false;
    keep |= bit(*i);
  }
  // H relabeled into G's relative label order so rows can be compared.
  std::vector<Vertex> order;
  for_each_bit(keep, [&](int i) { order.push_back(g.label(i)); });
  const GraphKey target = key_of(h.reordered(order));
  for (const LabeledGraph& member : orbit(g, cap)) {
    if (key_of(member.induced_at(keep)) == target) return true;
  }
  return false;
}

}  // namespace detail

/// Whether h arises from g by local complementations and vertex deletions
/// (labeled; V(h) must be a subset of V(g)).
inline bool is_vertex_minor(const LabeledGraph& h, const LabeledGraph& g,
                            int bound = kDefaultMinorBound,
                            std::size_t cap = kDefaultOrbitCap) {
  return detail::is_minor(h, g, bound, cap,
                          [](const LabeledGraph& x, std::size_t c) { return lc_orbit(x, c); });
}

/// Whether h arises from g by pivots and vertex deletions.
inline bool is_pivot_minor(const LabeledGraph& h, const LabeledGraph& g,
                           int bound = kDefaultMinorBound,
                           std::size_t cap = kDefaultOrbitCap) {
  return detail::is_minor(h, g, bound, cap, [](const LabeledGraph& x, std::size_t c) {
    return pivot_orbit(x, c);
  });
}

// ---------------------------------------------------------------------------
// Small named graphs, labeled first..first+n-1.

inline LabeledGraph empty_graph(int n, Vertex first = 0) {
  return LabeledGraph(LabeledGraph::iota_labels(n, first));
}

inline LabeledGraph complete_graph(int n, Vertex first = 0) {
  LabeledGraph g = empty_graph(n, first);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.set_edge_at(i, j, true);
  return g;
}

inline LabeledGraph path_graph(int n, Vertex first = 0) {
  LabeledGraph g = empty_graph(n, first);
  for (int i = 0; i + 1 < n; ++i) g.set_edge_at(i, i + 1, true);
  return g;
}

inline LabeledGraph cycle_graph(int n, Vertex first = 0) {
  LabeledGraph g = path_graph(n, first);
  if (n >= 3) g.set_edge_at(0, n - 1, true);
  return g;
}

/// Star with center `first` and leaves first+1..first+leaves.
inline LabeledGraph star_graph(int leaves, Vertex first = 0) {
  LabeledGraph g = empty_graph(leaves + 1, first);
  for (int i = 1; i <= leaves; ++i) g.set_edge_at(0, i, true);
  return g;
}

/// Wheel: a rim cycle on first..first+rim-1 plus a hub first+rim.
inline LabeledGraph wheel_graph(int rim, Vertex first = 0) {
  LabeledGraph g = empty_graph(rim + 1, first);
  for (int i = 0; i < rim; ++i) {
    g.set_edge_at(i, (i + 1) % rim, true);
    g.set_edge_at(i, rim, true);
  }
  return g;
}

/// Labeled graph on n vertices whose edge (i,j), i<j, is present iff the
/// corresponding bit of `code` is set (pairs enumerated row by row).
inline LabeledGraph graph_from_code(int n, std::uint64_t code) {
  LabeledGraph g(n);
  int b = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++b)
      if ((code >> b) & 1U) g.set_edge_at(i, j, true);
  return g;
}

inline int pair_count(int n) { return n * (n - 1) / 2; }

}  // namespace circlekit
