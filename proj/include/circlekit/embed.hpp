#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "circlekit/chord.hpp"
#include "circlekit/errors.hpp"
#include "circlekit/graph.hpp"
#include "circlekit/planar.hpp"
#include "circlekit/stabilizer.hpp"

namespace circlekit {

namespace detail {

// Plane map under construction. Edge ids index `ends`; `orig` names the
// edge of the unplanarized multigraph each segment belongs to.
struct GrowingMap {
  std::vector<Vertex> vertices;
  std::vector<std::array<Vertex, 2>> ends;
  std::vector<int> orig;
  std::map<Vertex, std::vector<Dart>> rot;
  std::vector<std::pair<int, int>> crossing_pairs;  // original edge pairs
  std::vector<Vertex> crossing_vertices;

  Vertex origin(Dart d) const { return ends[static_cast<std::size_t>(d.edge)][static_cast<std::size_t>(d.side)]; }

  bool has_vertex(Vertex v) const { return rot.count(v) > 0; }

  void add_vertex(Vertex v) {
    vertices.push_back(v);
    rot[v];
  }

  Dart sigma(Dart d) const {
    const auto& r = rot.at(origin(d));
    auto it = std::find(r.begin(), r.end(), d);
    ++it;
    return it == r.end() ? r.front() : *it;
  }

  // Inserts d at v right after `after` (or as the only dart).
  void insert_after(Vertex v, std::optional<Dart> after, Dart d) {
    auto& r = rot[v];
    if (!after) {
      r.insert(r.begin(), d);
      return;
    }
    auto it = std::find(r.begin(), r.end(), *after);
    r.insert(it + 1, d);
  }

  int new_edge(Vertex u, Vertex v, int original) {
    ends.push_back({u, v});
    orig.push_back(original);
    return static_cast<int>(ends.size()) - 1;
  }

  // Face id of every dart, and each face's walk.
  struct FaceData {
    std::map<Dart, int> face_of;
    std::vector<std::vector<Dart>> walks;
  };

  FaceData trace_faces() const {
    FaceData fd;
    for (Vertex v : vertices) {
      for (const Dart start : rot.at(v)) {
        if (fd.face_of.count(start)) continue;
        const int id = static_cast<int>(fd.walks.size());
        fd.walks.emplace_back();
        Dart d = start;
        do {
          fd.face_of[d] = id;
          fd.walks.back().push_back(d);
          d = sigma(d.reversed());
        } while (!(d == start));
      }
    }
    return fd;
  }
};

struct Corner {
  Vertex v;
  std::optional<Dart> after;
};

// Corners of a face walk: corner i sits at origin(walk[i]), right after the
// reverse of walk[i-1].
inline std::vector<Corner> corners_of(const GrowingMap& m, const std::vector<Dart>& walk) {
  std::vector<Corner> out;
  for (std::size_t i = 0; i < walk.size(); ++i) {
    const Dart prev = walk[(i + walk.size() - 1) % walk.size()];
    out.push_back(Corner{m.origin(walk[i]), prev.reversed()});
  }
  return out;
}

// Routes a new edge s-t through the dual with the fewest crossings,
// subdividing every crossed segment with a fresh vertex.
inline void insert_routed_edge(GrowingMap& m, Vertex s, Vertex t, int original, Vertex& next_label,
                               std::mt19937_64* rng) {
  if (!m.has_vertex(s)) std::swap(s, t);
  if (!m.has_vertex(t)) {
    // Pendant edge into some corner of s.
    m.add_vertex(t);
    std::optional<Dart> after;
    const auto& r = m.rot.at(s);
    if (!r.empty()) {
      const std::size_t pick =
          rng ? std::uniform_int_distribution<std::size_t>(0, r.size() - 1)(*rng) : 0;
      after = r[pick];
    }
    const int e = m.new_edge(s, t, original);
    m.insert_after(s, after, Dart{e, 0});
    m.insert_after(t, std::nullopt, Dart{e, 1});
    return;
  }
  if (m.rot.at(s).empty()) {
    // Only a bare vertex so far, so s == t.
    const int e = m.new_edge(s, t, original);
    m.rot[s] = {Dart{e, 0}, Dart{e, 1}};
    return;
  }
  const auto fd = m.trace_faces();
  const int face_count = static_cast<int>(fd.walks.size());
  std::vector<std::vector<Corner>> corners(static_cast<std::size_t>(face_count));
  for (int f = 0; f < face_count; ++f) corners[static_cast<std::size_t>(f)] = corners_of(m, fd.walks[static_cast<std::size_t>(f)]);
  auto corner_at = [&](int f, Vertex v) -> std::optional<Corner> {
    for (const auto& c : corners[static_cast<std::size_t>(f)])
      if (c.v == v) return c;
    return std::nullopt;
  };
  // Multi-source BFS over faces.
  std::vector<int> dist(static_cast<std::size_t>(face_count), -1);
  std::vector<std::pair<int, Dart>> parent(static_cast<std::size_t>(face_count), {-1, Dart{-1, 0}});
  std::vector<int> queue;
  for (int f = 0; f < face_count; ++f) {
    if (corner_at(f, s)) {
      dist[static_cast<std::size_t>(f)] = 0;
      queue.push_back(f);
    }
  }
  int goal = -1;
  for (std::size_t h = 0; h < queue.size() && goal < 0; ++h) {
    const int f = queue[h];
    if (corner_at(f, t)) {
      goal = f;
      break;
    }
    for (const Dart d : fd.walks[static_cast<std::size_t>(f)]) {
      const int g = fd.face_of.at(d.reversed());
      if (dist[static_cast<std::size_t>(g)] >= 0) continue;
      dist[static_cast<std::size_t>(g)] = dist[static_cast<std::size_t>(f)] + 1;
      parent[static_cast<std::size_t>(g)] = {f, d};
      queue.push_back(g);
    }
  }
  if (goal < 0) throw EmbeddingError("no route between endpoints");
  std::vector<Dart> crossed;  // darts seen from the earlier face
  std::vector<int> route{goal};
  for (int f = goal; dist[static_cast<std::size_t>(f)] > 0; f = parent[static_cast<std::size_t>(f)].first) {
    crossed.push_back(parent[static_cast<std::size_t>(f)].second);
    route.push_back(parent[static_cast<std::size_t>(f)].first);
  }
  std::reverse(crossed.begin(), crossed.end());
  std::reverse(route.begin(), route.end());

  Corner pending = *corner_at(route.front(), s);
  Corner target = *corner_at(route.back(), t);
  if (s == t && crossed.empty()) target = pending;
  auto relabel = [&](Dart from, Dart to) {
    if (pending.after && *pending.after == from) pending.after = to;
    if (target.after && *target.after == from) target.after = to;
  };
  for (const Dart c : crossed) {
    const int e = c.edge;
    const Vertex u1 = m.ends[static_cast<std::size_t>(e)][1];
    const Vertex x = next_label++;
    m.add_vertex(x);
    m.crossing_vertices.push_back(x);
    m.crossing_pairs.emplace_back(std::min(m.orig[static_cast<std::size_t>(e)], original),
                                  std::max(m.orig[static_cast<std::size_t>(e)], original));
    // e becomes ends[0]-x, the new segment e2 is x-ends[1].
    const int e2 = m.new_edge(x, u1, m.orig[static_cast<std::size_t>(e)]);
    m.ends[static_cast<std::size_t>(e)][1] = x;
    auto& ru1 = m.rot[u1];
    *std::find(ru1.begin(), ru1.end(), Dart{e, 1}) = Dart{e2, 1};
    relabel(Dart{e, 1}, Dart{e2, 1});
    // Toward the origin of c, then toward its far end.
    const Dart toward_a = c.side == 0 ? Dart{e, 1} : Dart{e2, 0};
    const Dart toward_b = c.side == 0 ? Dart{e2, 0} : Dart{e, 1};
    m.rot[x] = {toward_a, toward_b};
    const int r = m.new_edge(pending.v, x, original);
    m.insert_after(pending.v, pending.after, Dart{r, 0});
    m.insert_after(x, toward_a, Dart{r, 1});
    pending = Corner{x, toward_b};
  }
  const int r = m.new_edge(pending.v, target.v, original);
  if (pending.v == target.v && pending.after == target.after) {
    m.insert_after(pending.v, pending.after, Dart{r, 0});
    m.insert_after(pending.v, Dart{r, 0}, Dart{r, 1});
  } else {
    m.insert_after(pending.v, pending.after, Dart{r, 0});
    m.insert_after(target.v, target.after, Dart{r, 1});
  }
}

inline PlaneMultigraph freeze(const GrowingMap& m) {
  LabeledMultigraph base(m.vertices);
  for (std::size_t e = 0; e < m.ends.size(); ++e) base.add_edge(m.ends[e][0], m.ends[e][1], static_cast<int>(e));
  std::map<Vertex, std::vector<Dart>> rot(m.rot.begin(), m.rot.end());
  return PlaneMultigraph(std::move(base), std::move(rot));
}

}  // namespace detail

/// The 4-regular multigraph of a word (consecutive letters joined, cyclically)
/// drawn in the plane with every crossing replaced by a new vertex.
struct Planarization {
  PlaneMultigraph map;
  std::vector<Vertex> crossings;              // new vertices, in creation order
  std::vector<std::pair<int, int>> crossing_pairs;  // word-edge pairs per crossing
  std::vector<std::pair<Vertex, Vertex>> word_edges;
};

inline constexpr int kDefaultPlanarizationTrials = 48;

/// Inserts the word edges one at a time along shortest dual routes and keeps
/// the insertion order (word rotations and reversals, then seeded shuffles)
/// giving the fewest crossings. Orders whose drawing lets two edges cross
/// twice are discarded.
inline Planarization planarize_word(const ChordDiagram& d, int shuffles = kDefaultPlanarizationTrials,
                                    std::uint64_t seed = 1) {
  const auto& w = d.word();
  const int len = static_cast<int>(w.size());
  Planarization best;
  if (len == 0) {
    best.map = PlaneMultigraph(LabeledMultigraph{}, {});
    return best;
  }
  std::vector<std::pair<Vertex, Vertex>> word_edges;
  for (int i = 0; i < len; ++i) word_edges.emplace_back(w[static_cast<std::size_t>(i)], w[static_cast<std::size_t>((i + 1) % len)]);
  const auto letters = d.letters();
  const Vertex first_new = letters.back() + 1;

  std::vector<std::vector<int>> orders;
  for (int dir = 0; dir < 2; ++dir) {
    for (int r = 0; r < len; ++r) {
      std::vector<int> o;
      for (int i = 0; i < len; ++i) o.push_back(dir == 0 ? (r + i) % len : (r - i + len) % len);
      orders.push_back(o);
    }
  }
  std::mt19937_64 rng(seed);
  for (int s = 0; s < shuffles; ++s) {
    std::vector<int> o(static_cast<std::size_t>(len));
    std::iota(o.begin(), o.end(), 0);
    std::shuffle(o.begin(), o.end(), rng);
    orders.push_back(o);
  }

  bool have = false;
  for (std::size_t trial = 0; trial < orders.size(); ++trial) {
    // Keep the map connected: take the first pending edge touching it.
    std::vector<int> pending = orders[trial];
    detail::GrowingMap m;
    Vertex next_label = first_new;
    std::mt19937_64 corner_rng(seed + trial);
    std::mt19937_64* crng = trial < static_cast<std::size_t>(2 * len) ? nullptr : &corner_rng;
    m.add_vertex(word_edges[static_cast<std::size_t>(pending.front())].first);
    while (!pending.empty()) {
      auto it = std::find_if(pending.begin(), pending.end(), [&](int e) {
        return m.has_vertex(word_edges[static_cast<std::size_t>(e)].first) ||
               m.has_vertex(word_edges[static_cast<std::size_t>(e)].second);
      });
      const int e = *it;
      pending.erase(it);
      detail::insert_routed_edge(m, word_edges[static_cast<std::size_t>(e)].first,
                                 word_edges[static_cast<std::size_t>(e)].second, e, next_label, crng);
    }
    auto pairs = m.crossing_pairs;
    std::sort(pairs.begin(), pairs.end());
    const bool good = std::adjacent_find(pairs.begin(), pairs.end()) == pairs.end() &&
                      std::none_of(pairs.begin(), pairs.end(), [](auto p) { return p.first == p.second; });
    if (!good) continue;
    if (!have || m.crossing_vertices.size() < best.crossings.size()) {
      best.map = detail::freeze(m);
      best.crossings = m.crossing_vertices;
      best.crossing_pairs = m.crossing_pairs;
      have = true;
      if (best.crossings.empty()) break;
    }
  }
  if (!have) throw EmbeddingError("every insertion order produced a drawing with a repeated crossing");
  best.word_edges = word_edges;
  faces(best.map);  // Euler check
  return best;
}

/// Two-coloring of the faces of a plane map with all degrees even; color 1
/// ("green") is the class not containing the outer face, taken to be the
/// longest face walk (first one on ties).
inline std::vector<int> green_faces(const PlaneMultigraph& p, const std::vector<Face>& fs) {
  std::map<Dart, int> face_of;
  for (std::size_t f = 0; f < fs.size(); ++f)
    for (const auto& d : fs[f].walk) face_of[d] = static_cast<int>(f);
  std::vector<int> color(fs.size(), -1);
  std::size_t outer = 0;
  for (std::size_t f = 1; f < fs.size(); ++f)
    if (fs[f].walk.size() > fs[outer].walk.size()) outer = f;
  color[outer] = 0;
  std::vector<std::size_t> queue{outer};
  for (std::size_t h = 0; h < queue.size(); ++h) {
    const std::size_t f = queue[h];
    for (const auto& d : fs[f].walk) {
      const auto g = static_cast<std::size_t>(face_of.at(d.reversed()));
      if (color[g] < 0) {
        color[g] = 1 - color[f];
        queue.push_back(g);
      } else if (color[g] == color[f]) {
        throw EmbeddingError("faces are not two-colorable");
      }
    }
  }
  (void)p;
  std::vector<int> green;
  for (std::size_t f = 0; f < fs.size(); ++f)
    if (color[f] == 1) green.push_back(static_cast<int>(f));
  return green;
}

/// Plane multigraph with a vertex per green face and an edge per vertex of
/// the 4-regular map (where two green faces touch); the edge id is the
/// vertex label. Rotations follow the face walks.
inline PlaneMultigraph green_face_graph(const PlaneMultigraph& m) {
  const auto fs = faces(m);
  const auto green = green_faces(m, fs);
  LabeledMultigraph base(LabeledGraph::iota_labels(static_cast<int>(green.size()), 0));
  std::map<Vertex, std::vector<std::pair<Vertex, int>>> touches;  // map vertex -> (green face, slot)
  std::map<Vertex, std::vector<Dart>> rotation;
  for (std::size_t gi = 0; gi < green.size(); ++gi) {
    for (const auto& d : fs[static_cast<std::size_t>(green[gi])].walk) {
      const Vertex w = m.origin(d);
      touches[w].emplace_back(static_cast<Vertex>(gi), static_cast<int>(rotation[static_cast<Vertex>(gi)].size()));
      rotation[static_cast<Vertex>(gi)].push_back(Dart{w, static_cast<int>(touches[w].size()) - 1});
    }
  }
  for (Vertex w : m.base().vertices()) {
    const auto& t = touches[w];
    if (t.size() != 2) {
      throw EmbeddingError("vertex " + std::to_string(w) + " touches green faces " +
                           std::to_string(t.size()) + " times");
    }
    base.add_edge(t[0].first, t[1].first, w);
  }
  return PlaneMultigraph(std::move(base), std::move(rotation));
}

struct Prop5Result {
  LabeledGraph bipartite;               // B
  std::vector<Vertex> added;            // crossing vertices
  PlaneMultigraph green_graph;          // P
  PlaneMultigraph four_regular;         // planarized word multigraph
  std::vector<int> tree;                // spanning tree of P
  ChordDiagram certificate;             // diagram of B
  int crossings = 0;
};

/// Builds a bipartite circle graph B containing C as a vertex-minor: the
/// word's 4-regular multigraph is planarized, its green faces form P, and B
/// is the fundamental graph of P. `certificate` realizes B.
inline Prop5Result prop5_embed(const LabeledGraph& c, const ChordDiagram& d,
                               int shuffles = kDefaultPlanarizationTrials, std::uint64_t seed = 1) {
  if (!word_realizes(d, c)) throw PreconditionError("diagram does not realize the graph");
  Prop5Result r;
  if (d.length() == 0) return r;
  auto plan = planarize_word(d, shuffles, seed);
  r.four_regular = plan.map;
  r.added = plan.crossings;
  r.crossings = static_cast<int>(plan.crossings.size());
  r.green_graph = green_face_graph(plan.map);
  r.tree = spanning_tree(r.green_graph);
  r.bipartite = fundamental_graph(r.green_graph, r.tree);
  r.certificate = contour_diagram(r.green_graph, r.tree);
  if (!word_realizes(r.certificate, r.bipartite)) {
    throw TheoremViolation("contour word does not realize the fundamental graph");
  }
  return r;
}

struct Prop5Check {
  bool bipartite = false;
  bool circle = false;          // certificate (and recognition when small)
  bool recognized = false;      // exhaustive recognition was run
  bool size_bound = false;
  bool crossing_bound = false;
  bool recovered = false;
  LabeledGraph recovered_graph;
};

/// Checks the guarantees of prop5_embed on one instance; Y-measurements of
/// the added vertices run with a tracked Clifford frame.
inline Prop5Check check_prop5(const LabeledGraph& c, const Prop5Result& r,
                              int recognition_bound = kDefaultRecognitionBound) {
  Prop5Check k;
  const int n = c.size();
  k.bipartite = r.bipartite.is_bipartite();
  k.circle = word_realizes(r.certificate, r.bipartite);
  if (r.bipartite.size() <= recognition_bound) {
    k.recognized = true;
    k.circle = k.circle && is_circle_graph(r.bipartite, recognition_bound).has_value();
  }
  k.size_bound = r.bipartite.size() <= 2 * n * n;
  k.crossing_bound = r.crossings <= 2 * n * n - n;
  if (n == 0) {
    k.recovered = true;
    return k;
  }
  auto seq = measure_sequence(r.bipartite, r.added, Basis::Y);
  k.recovered_graph = seq.graph;
  k.recovered = lc_equivalent(c, seq.graph);
  return k;
}

}  // namespace circlekit
