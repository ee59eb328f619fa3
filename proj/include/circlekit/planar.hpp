#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "circlekit/chord.hpp"
#include "circlekit/errors.hpp"
#include "circlekit/graph.hpp"
#include "circlekit/multigraph.hpp"
#include "circlekit/stabilizer.hpp"

namespace circlekit {

/// Multigraph plus a rotation system: for each vertex, the counterclockwise
/// cyclic order of the darts leaving it. Dart (e, s) leaves ends[s] of e
/// (ends[0] = u, ends[1] = v), so a loop contributes two darts at its vertex.
class PlaneMultigraph {
 public:
  PlaneMultigraph() = default;
  PlaneMultigraph(LabeledMultigraph base, std::map<Vertex, std::vector<Dart>> rotation)
      : base_(std::move(base)), rotation_(std::move(rotation)) {
    validate();
  }

  const LabeledMultigraph& base() const { return base_; }
  const std::map<Vertex, std::vector<Dart>>& rotation() const { return rotation_; }
  const std::vector<Dart>& rotation_at(Vertex v) const {
    static const std::vector<Dart> kEmpty;
    auto it = rotation_.find(v);
    return it == rotation_.end() ? kEmpty : it->second;
  }

  Vertex origin(Dart d) const {
    const auto& e = base_.edge(d.edge);
    return d.side == 0 ? e.u : e.v;
  }

  /// Next dart counterclockwise around the origin of d.
  Dart sigma(Dart d) const {
    const auto& rot = rotation_at(origin(d));
    const std::size_t i = slot_.at(d);
    return rot[(i + 1) % rot.size()];
  }

  /// Face successor: the dart after the reverse of d at its origin.
  Dart phi(Dart d) const { return sigma(d.reversed()); }

  /// Edge ids in increasing order; qubit q of every tableau is the q-th.
  std::vector<int> edge_order() const {
    auto ids = base_.edge_ids();
    std::sort(ids.begin(), ids.end());
    return ids;
  }

  int qubit_of(int edge_id) const {
    const auto ids = edge_order();
    auto it = std::lower_bound(ids.begin(), ids.end(), edge_id);
    if (it == ids.end() || *it != edge_id) throw InvalidVertexError("unknown edge " + std::to_string(edge_id));
    return static_cast<int>(it - ids.begin());
  }

  /// Vertex labels per connected component, sorted; components ordered by
  /// their lowest label.
  std::vector<std::vector<Vertex>> components() const {
    std::map<Vertex, Vertex> parent;
    for (Vertex v : base_.vertices()) parent[v] = v;
    auto find = [&](Vertex v) {
      while (parent[v] != v) v = parent[v] = parent[parent[v]];
      return v;
    };
    for (const auto& e : base_.edges()) parent[find(e.u)] = find(e.v);
    std::map<Vertex, std::vector<Vertex>> groups;
    for (Vertex v : base_.vertices()) groups[find(v)].push_back(v);
    std::vector<std::vector<Vertex>> out;
    for (auto& [root, vs] : groups) {
      std::sort(vs.begin(), vs.end());
      out.push_back(vs);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  friend bool operator==(const PlaneMultigraph& a, const PlaneMultigraph& b) {
    return a.base_ == b.base_ && a.rotation_ == b.rotation_;
  }

 private:
  void validate() {
    slot_.clear();
    for (const auto& [v, darts] : rotation_) {
      if (!base_.has_vertex(v)) throw EmbeddingError("rotation names unknown vertex " + std::to_string(v));
      for (std::size_t i = 0; i < darts.size(); ++i) {
        const Dart d = darts[i];
        if (!base_.has_edge(d.edge) || (d.side != 0 && d.side != 1)) {
          throw EmbeddingError("rotation at " + std::to_string(v) + " names unknown edge end");
        }
        if (origin(d) != v) {
          throw EmbeddingError("edge end " + std::to_string(d.edge) + "/" + std::to_string(d.side) +
                               " listed at the wrong vertex " + std::to_string(v));
        }
        if (!slot_.emplace(d, i).second) {
          throw EmbeddingError("edge end " + std::to_string(d.edge) + "/" + std::to_string(d.side) +
                               " listed twice");
        }
      }
    }
    if (slot_.size() != 2 * base_.edges().size()) {
      throw EmbeddingError("rotation system misses some edge ends");
    }
  }

  LabeledMultigraph base_;
  std::map<Vertex, std::vector<Dart>> rotation_;
  std::map<Dart, std::size_t> slot_;
};

struct Face {
  std::vector<Dart> walk;  // empty for the face around an isolated vertex
  Vertex anchor = 0;       // a vertex on the boundary

  /// Edges on the walk with multiplicity.
  std::vector<int> boundary() const {
    std::vector<int> out;
    for (const auto& d : walk) out.push_back(d.edge);
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Edges walked an odd number of times: the support of the face operator.
  std::vector<int> operator_edges() const {
    std::map<int, int> count;
    for (const auto& d : walk) ++count[d.edge];
    std::vector<int> out;
    for (auto [e, c] : count)
      if (c % 2) out.push_back(e);
    return out;
  }
};

/// All face walks. Each component must satisfy V - E + F = 2.
inline std::vector<Face> faces(const PlaneMultigraph& p) {
  std::vector<Face> out;
  std::set<Dart> seen;
  for (Vertex v : p.base().vertices()) {
    const auto& rot = p.rotation_at(v);
    if (rot.empty()) {
      out.push_back(Face{{}, v});
      continue;
    }
    for (const Dart start : rot) {
      if (seen.count(start)) continue;
      Face f;
      f.anchor = v;
      Dart d = start;
      do {
        seen.insert(d);
        f.walk.push_back(d);
        d = p.phi(d);
      } while (!(d == start));
      out.push_back(std::move(f));
    }
  }
  for (const auto& comp : p.components()) {
    const std::set<Vertex> vs(comp.begin(), comp.end());
    int e = 0, f = 0;
    for (const auto& edge : p.base().edges()) e += vs.count(edge.u) ? 1 : 0;
    for (const auto& face : out) f += vs.count(face.anchor) ? 1 : 0;
    const int chi = static_cast<int>(comp.size()) - e + f;
    if (chi != 2) {
      throw EmbeddingError("rotation system is not spherical: V - E + F = " + std::to_string(chi));
    }
  }
  return out;
}

/// Z-type operator per face, then X-type operator per vertex, on qubits in
/// edge_order(). Edges walked twice by a face and loops at a vertex cancel.
inline std::vector<PauliOperator> planar_code_stabilizers(const PlaneMultigraph& p) {
  const auto ids = p.edge_order();
  const int n = static_cast<int>(ids.size());
  if (n > 64) throw BoundExceededError("planar codes are limited to 64 edges");
  auto q = [&](int id) { return static_cast<int>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin()); };
  std::vector<PauliOperator> out;
  for (const auto& f : faces(p)) {
    PauliOperator op = PauliOperator::identity(n);
    for (int e : f.operator_edges()) op.z |= bit(q(e));
    out.push_back(op);
  }
  for (Vertex v : p.base().vertices()) {
    PauliOperator op = PauliOperator::identity(n);
    for (const auto& e : p.base().edges()) {
      if (e.is_loop()) continue;
      if (e.u == v || e.v == v) op.x |= bit(q(e.id));
    }
    out.push_back(op);
  }
  return out;
}

/// BFS tree per component, rooted at the lowest label; each vertex scans
/// its incident edges by increasing id. Loops are skipped. Sorted ids.
inline std::vector<int> spanning_tree(const PlaneMultigraph& p) {
  auto edges = p.base().edges();
  std::sort(edges.begin(), edges.end(), [](const MultiEdge& a, const MultiEdge& b) { return a.id < b.id; });
  std::vector<Vertex> order = p.base().vertices();
  std::sort(order.begin(), order.end());
  std::set<Vertex> seen;
  std::vector<int> tree;
  for (Vertex root : order) {
    if (seen.count(root)) continue;
    seen.insert(root);
    std::vector<Vertex> queue{root};
    for (std::size_t h = 0; h < queue.size(); ++h) {
      const Vertex x = queue[h];
      for (const auto& e : edges) {
        if (e.is_loop() || (e.u != x && e.v != x)) continue;
        const Vertex y = e.other(x);
        if (seen.insert(y).second) {
          tree.push_back(e.id);
          queue.push_back(y);
        }
      }
    }
  }
  std::sort(tree.begin(), tree.end());
  return tree;
}

namespace detail {

inline void check_spanning_tree(const LabeledMultigraph& m, const std::vector<int>& tree,
                                std::size_t component_count) {
  std::map<Vertex, Vertex> parent;
  for (Vertex v : m.vertices()) parent[v] = v;
  auto find = [&](Vertex v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  std::set<int> ids(tree.begin(), tree.end());
  if (ids.size() != tree.size()) throw PreconditionError("spanning tree lists an edge twice");
  for (int id : tree) {
    const auto& e = m.edge(id);
    if (e.is_loop()) throw PreconditionError("spanning tree contains loop " + std::to_string(id));
    const Vertex a = find(e.u), b = find(e.v);
    if (a == b) throw PreconditionError("edge set contains a cycle");
    parent[a] = b;
  }
  if (tree.size() + component_count != m.vertices().size()) {
    throw PreconditionError("edge set does not span every component");
  }
}

}  // namespace detail

/// Fundamental cycle F_e (edge ids, e included) of a non-tree edge.
inline std::vector<int> fundamental_cycle(const LabeledMultigraph& m, const std::vector<int>& tree, int e) {
  const auto& edge = m.edge(e);
  auto path = tree_path(m, tree, edge.u, edge.v);
  if (!path) throw PreconditionError("tree does not connect the ends of edge " + std::to_string(e));
  path->push_back(e);
  std::sort(path->begin(), path->end());
  return *path;
}

/// Bipartite graph on the edge ids: a non-tree edge r is adjacent to a tree
/// edge l iff l lies on the fundamental cycle of r. Loops stay isolated.
inline LabeledGraph fundamental_graph(const PlaneMultigraph& p, const std::vector<int>& tree) {
  detail::check_spanning_tree(p.base(), tree, p.components().size());
  const auto ids = p.edge_order();
  if (ids.size() > 64) throw BoundExceededError("fundamental graphs are limited to 64 edges");
  LabeledGraph g(std::vector<Vertex>(ids.begin(), ids.end()));
  const std::set<int> in_tree(tree.begin(), tree.end());
  for (int e : ids) {
    if (in_tree.count(e) || p.base().edge(e).is_loop()) continue;
    for (int t : fundamental_cycle(p.base(), tree, e)) {
      if (t != e) g.add_edge(e, t);
    }
  }
  return g;
}

/// Walk around the spanning tree: at a tree dart emit its edge and cross,
/// at any other dart emit its edge and turn to the next dart. Every edge id
/// occurs twice; the interlacement graph is the fundamental graph.
inline ChordDiagram contour_diagram(const PlaneMultigraph& p, const std::vector<int>& tree) {
  detail::check_spanning_tree(p.base(), tree, p.components().size());
  const std::set<int> in_tree(tree.begin(), tree.end());
  std::vector<Vertex> word;
  for (const auto& comp : p.components()) {
    const auto& rot = p.rotation_at(comp.front());
    if (rot.empty()) continue;
    const Dart start = rot.front();
    Dart d = start;
    do {
      word.push_back(d.edge);
      d = in_tree.count(d.edge) ? p.sigma(d.reversed()) : p.sigma(d);
    } while (!(d == start));
  }
  return ChordDiagram(std::move(word));
}

/// Every spanning forest of p with the component structure of p.
inline std::vector<std::vector<int>> all_spanning_trees(const PlaneMultigraph& p, std::size_t cap = 100000) {
  const auto ids = p.edge_order();
  const std::size_t need = p.base().vertices().size() - p.components().size();
  std::vector<std::vector<int>> out;
  std::vector<int> chosen;
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (chosen.size() == need) {
      try {
        detail::check_spanning_tree(p.base(), chosen, p.components().size());
        if (out.size() >= cap) throw BoundExceededError("more than " + std::to_string(cap) + " spanning trees");
        out.push_back(chosen);
      } catch (const PreconditionError&) {
      }
      return;
    }
    if (i == ids.size() || ids.size() - i < need - chosen.size()) return;
    if (!p.base().edge(ids[i]).is_loop()) {
      chosen.push_back(ids[i]);
      self(self, i + 1);
      chosen.pop_back();
    }
    self(self, i + 1);
  };
  rec(rec, 0);
  return out;
}

// ---------------------------------------------------------------------------
// Planar code to graph state

struct Theorem2Report {
  LabeledGraph graph;          // fundamental graph C
  std::vector<int> tree;       // T
  std::vector<int> hadamards;  // E(P) \ E(T)
  int generator_count = 0;     // |V| + |F|
  int generator_rank = 0;
  int redundancies = 0;
  std::vector<std::string> failures;
  bool same_group = false;

  bool ok() const { return failures.empty() && same_group; }
};

inline Theorem2Report check_theorem2(const PlaneMultigraph& p, std::optional<std::vector<int>> tree = std::nullopt) {
  Theorem2Report r;
  r.tree = tree ? *tree : spanning_tree(p);
  std::sort(r.tree.begin(), r.tree.end());
  r.graph = fundamental_graph(p, r.tree);
  const auto ids = p.edge_order();
  const int n = static_cast<int>(ids.size());
  const std::set<int> in_tree(r.tree.begin(), r.tree.end());
  Mask hmask = 0;
  for (int e : ids) {
    if (!in_tree.count(e)) {
      r.hadamards.push_back(e);
      hmask |= bit(p.qubit_of(e));
    }
  }
  const auto gens = planar_code_stabilizers(p);
  r.generator_count = static_cast<int>(gens.size());
  r.generator_rank = pauli_rank(gens, n);
  r.redundancies = r.generator_count - r.generator_rank;
  const auto code = tableau_from_generators(gens, n);
  if (static_cast<int>(code.rows().size()) != n) {
    r.failures.push_back("planar code generators have rank " + std::to_string(code.rows().size()) +
                         " on " + std::to_string(n) + " qubits");
    return r;
  }
  const auto conj = apply_hadamards(code, hmask);
  // X_a Z_{F_a \ a} for non-tree a, X_t Z_{F_t^-1} for tree t.
  for (int a : r.hadamards) {
    PauliOperator op = PauliOperator::identity(n);
    op.x |= bit(p.qubit_of(a));
    if (!p.base().edge(a).is_loop()) {
      for (int t : fundamental_cycle(p.base(), r.tree, a))
        if (t != a) op.z |= bit(p.qubit_of(t));
    }
    if (!is_stabilized(conj, op)) r.failures.push_back("X_a Z_{F_a\\a} fails for a=" + std::to_string(a));
  }
  for (int t : r.tree) {
    PauliOperator op = PauliOperator::identity(n);
    op.x |= bit(p.qubit_of(t));
    for (int a : r.hadamards) {
      if (p.base().edge(a).is_loop()) continue;
      const auto cyc = fundamental_cycle(p.base(), r.tree, a);
      if (std::binary_search(cyc.begin(), cyc.end(), t)) op.z |= bit(p.qubit_of(a));
    }
    if (!is_stabilized(conj, op)) r.failures.push_back("X_t Z_{F_t^-1} fails for t=" + std::to_string(t));
  }
  r.same_group = same_group(conj, graph_state_tableau(r.graph));
  return r;
}

struct Theorem2Result {
  LabeledGraph graph;
  std::vector<int> hadamards;
};

/// Fundamental graph of p and the Hadamard set turning the planar code state
/// into its graph state. Raises TheoremViolation if the stabilizer
/// identities fail.
inline Theorem2Result theorem2_forward(const PlaneMultigraph& p,
                                       std::optional<std::vector<int>> tree = std::nullopt) {
  auto r = check_theorem2(p, std::move(tree));
  if (!r.ok()) {
    std::string why = r.failures.empty() ? "stabilizer groups differ" : r.failures.front();
    throw TheoremViolation("planar code to graph state correspondence failed: " + why);
  }
  return Theorem2Result{std::move(r.graph), std::move(r.hadamards)};
}

// ---------------------------------------------------------------------------
// Graph state to planar code

/// Plane multigraph whose fundamental graph (w.r.t. the edges of side_k)
/// is the interlacement graph of d. Vertices are the regions cut by the
/// chords of side_k; edge ids are the letters.
inline PlaneMultigraph theorem2_converse(const ChordDiagram& d, std::span<const Vertex> side_k) {
  const auto c = interlacement_graph(d);
  const Mask k = c.mask_of(side_k);
  if (!c.is_independent_at(k) || !c.is_independent_at(c.all() & ~k)) {
    throw PreconditionError("interlacement graph is not bipartite with the given color class");
  }
  auto walk = walk_regions(d, side_k);
  std::map<Vertex, std::vector<Dart>> rotation;
  for (std::size_t r = 0; r < walk.rotation.size(); ++r) rotation[static_cast<Vertex>(r)] = walk.rotation[r];
  PlaneMultigraph p(std::move(walk.multigraph), std::move(rotation));
  faces(p);  // Euler check
  return p;
}

// ---------------------------------------------------------------------------
// Generators

/// Straight-line embedding: rotations sorted by angle. Simple graphs only.
inline PlaneMultigraph plane_from_coordinates(const std::vector<Vertex>& vertices,
                                              const std::map<Vertex, std::pair<double, double>>& at,
                                              const std::vector<std::pair<Vertex, Vertex>>& edges) {
  LabeledMultigraph m(vertices);
  for (auto [u, v] : edges) m.add_edge(u, v);
  std::map<Vertex, std::vector<std::pair<double, Dart>>> around;
  for (const auto& e : m.edges()) {
    const auto [ux, uy] = at.at(e.u);
    const auto [vx, vy] = at.at(e.v);
    around[e.u].emplace_back(std::atan2(vy - uy, vx - ux), Dart{e.id, 0});
    around[e.v].emplace_back(std::atan2(uy - vy, ux - vx), Dart{e.id, 1});
  }
  std::map<Vertex, std::vector<Dart>> rotation;
  for (auto& [v, list] : around) {
    std::sort(list.begin(), list.end());
    for (const auto& [angle, d] : list) rotation[v].push_back(d);
  }
  return PlaneMultigraph(std::move(m), std::move(rotation));
}

/// m x n grid; vertex (i, j) has label i * n + j.
inline PlaneMultigraph grid_plane_graph(int m, int n) {
  std::vector<Vertex> vs;
  std::map<Vertex, std::pair<double, double>> at;
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      vs.push_back(i * n + j);
      at[i * n + j] = {static_cast<double>(j), static_cast<double>(i)};
      if (j + 1 < n) edges.emplace_back(i * n + j, i * n + j + 1);
      if (i + 1 < m) edges.emplace_back(i * n + j, (i + 1) * n + j);
    }
  }
  return plane_from_coordinates(vs, at, edges);
}

/// Two vertices joined by k parallel edges.
inline PlaneMultigraph theta_plane_graph(int k) {
  LabeledMultigraph m({0, 1});
  std::map<Vertex, std::vector<Dart>> rotation;
  for (int e = 0; e < k; ++e) {
    m.add_edge(0, 1, e);
    rotation[0].push_back(Dart{e, 0});
  }
  for (int e = k - 1; e >= 0; --e) rotation[1].push_back(Dart{e, 1});
  return PlaneMultigraph(std::move(m), std::move(rotation));
}

/// k triangles sharing the spine 0-1; page i is vertex i + 2.
inline PlaneMultigraph book_plane_graph(int k) {
  std::vector<Vertex> vs{0, 1};
  std::map<Vertex, std::pair<double, double>> at{{0, {0.0, 0.0}}, {1, {0.0, 1.0}}};
  std::vector<std::pair<Vertex, Vertex>> edges{{0, 1}};
  for (int i = 1; i <= k; ++i) {
    vs.push_back(i + 1);
    at[i + 1] = {static_cast<double>(i), 0.5};
    edges.emplace_back(0, i + 1);
    edges.emplace_back(1, i + 1);
  }
  return plane_from_coordinates(vs, at, edges);
}

/// Path 1..k plus hub 0 adjacent to every path vertex.
inline PlaneMultigraph fan_plane_graph(int k) {
  std::vector<Vertex> vs{0};
  std::map<Vertex, std::pair<double, double>> at{{0, {(k + 1) / 2.0, 1.0}}};
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (int i = 1; i <= k; ++i) {
    vs.push_back(i);
    at[i] = {static_cast<double>(i), 0.0};
    edges.emplace_back(0, i);
    if (i > 1) edges.emplace_back(i - 1, i);
  }
  return plane_from_coordinates(vs, at, edges);
}

/// Random connected plane multigraph with `edge_count` edges, grown from a
/// single vertex by attaching pendant edges in corners and by splitting
/// faces with new edges (parallel edges and loops included).
inline PlaneMultigraph random_plane_multigraph(int edge_count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Vertex> vertices{0};
  std::vector<MultiEdge> edges;
  std::map<Vertex, std::vector<Dart>> rotation{{0, {}}};
  auto build = [&] {
    LabeledMultigraph m(vertices);
    for (const auto& e : edges) m.add_edge(e.u, e.v, e.id);
    return PlaneMultigraph(std::move(m), rotation);
  };
  // Inserts d at vertex v right after `after`, or at the front when absent.
  auto insert_after = [&](Vertex v, std::optional<Dart> after, Dart d) {
    auto& rot = rotation[v];
    if (!after) {
      rot.insert(rot.begin(), d);
      return;
    }
    auto it = std::find(rot.begin(), rot.end(), *after);
    rot.insert(it + 1, d);
  };
  while (static_cast<int>(edges.size()) < edge_count) {
    const PlaneMultigraph p = build();
    // Corners: (vertex, dart preceding the corner in rotation order).
    struct Corner {
      Vertex v;
      std::optional<Dart> after;
    };
    std::vector<std::vector<Corner>> face_corners;
    for (const auto& f : faces(p)) {
      std::vector<Corner> cs;
      if (f.walk.empty()) {
        cs.push_back({f.anchor, std::nullopt});
      } else {
        for (std::size_t i = 0; i < f.walk.size(); ++i) {
          const Dart prev = f.walk[(i + f.walk.size() - 1) % f.walk.size()];
          cs.push_back({p.origin(f.walk[i]), prev.reversed()});
        }
      }
      face_corners.push_back(std::move(cs));
    }
    const int id = static_cast<int>(edges.size());
    auto& corners = face_corners[std::uniform_int_distribution<std::size_t>(0, face_corners.size() - 1)(rng)];
    const int kind = static_cast<int>(std::uniform_int_distribution<int>(0, 9)(rng));
    if (edges.empty() || kind < 4) {
      const Corner c = corners[std::uniform_int_distribution<std::size_t>(0, corners.size() - 1)(rng)];
      const Vertex w = static_cast<Vertex>(vertices.size());
      vertices.push_back(w);
      edges.push_back(MultiEdge{id, c.v, w});
      insert_after(c.v, c.after, Dart{id, 0});
      rotation[w] = {Dart{id, 1}};
    } else {
      const std::size_t i = std::uniform_int_distribution<std::size_t>(0, corners.size() - 1)(rng);
      std::size_t j = std::uniform_int_distribution<std::size_t>(0, corners.size() - 1)(rng);
      // Loops are rarer than chords across the face.
      if (j == i && kind < 9) j = (i + 1) % corners.size();
      const Corner a = corners[i], b = corners[j];
      edges.push_back(MultiEdge{id, a.v, b.v});
      if (i == j) {
        insert_after(a.v, a.after, Dart{id, 0});
        insert_after(a.v, Dart{id, 0}, Dart{id, 1});
      } else {
        insert_after(a.v, a.after, Dart{id, 0});
        insert_after(b.v, b.after, Dart{id, 1});
      }
    }
  }
  return build();
}

// ---------------------------------------------------------------------------
// JSON

inline nlohmann::ordered_json plane_to_json(const PlaneMultigraph& p) {
  nlohmann::ordered_json j;
  j["vertices"] = p.base().vertices();
  auto edges = nlohmann::ordered_json::array();
  for (const auto& e : p.base().edges()) edges.push_back({{"id", e.id}, {"ends", {e.u, e.v}}});
  j["edges"] = edges;
  nlohmann::ordered_json rot = nlohmann::ordered_json::object();
  for (Vertex v : p.base().vertices()) {
    auto list = nlohmann::ordered_json::array();
    for (const auto& d : p.rotation_at(v)) list.push_back({d.edge, d.side});
    rot[std::to_string(v)] = list;
  }
  j["rotation"] = rot;
  return j;
}

inline PlaneMultigraph plane_from_json(const nlohmann::ordered_json& j) {
  try {
    LabeledMultigraph m(j.at("vertices").get<std::vector<Vertex>>());
    for (const auto& e : j.at("edges")) {
      const auto ends = e.at("ends");
      if (!ends.is_array() || ends.size() != 2) throw ParseError("edge \"ends\" must be a pair", 0);
      m.add_edge(ends[0].get<Vertex>(), ends[1].get<Vertex>(), e.at("id").get<int>());
    }
    std::map<Vertex, std::vector<Dart>> rotation;
    for (const auto& [key, list] : j.at("rotation").items()) {
      const Vertex v = std::stoi(key);
      for (const auto& d : list) {
        if (!d.is_array() || d.size() != 2) throw ParseError("rotation entries are [edgeId, side]", 0);
        rotation[v].push_back(Dart{d[0].get<int>(), d[1].get<int>()});
      }
    }
    return PlaneMultigraph(std::move(m), std::move(rotation));
  } catch (const nlohmann::ordered_json::exception& e) {
    throw ParseError(std::string("malformed plane multigraph JSON: ") + e.what(), 0);
  } catch (const std::invalid_argument&) {
    throw ParseError("rotation keys must be integer vertex labels", 0);
  } catch (const InvalidVertexError& e) {
    throw ParseError(e.what(), 0);
  }
}

}  // namespace circlekit
