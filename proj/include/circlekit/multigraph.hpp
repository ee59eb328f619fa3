#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "circlekit/errors.hpp"
#include "circlekit/graph.hpp"

namespace circlekit {

struct MultiEdge {
  int id;
  Vertex u;
  Vertex v;

  bool is_loop() const { return u == v; }
  Vertex other(Vertex w) const { return w == u ? v : u; }
  friend bool operator==(const MultiEdge&, const MultiEdge&) = default;
};

/// Multigraph with loops and parallel edges; every edge carries its own id.
class LabeledMultigraph {
 public:
  LabeledMultigraph() = default;
  explicit LabeledMultigraph(std::vector<Vertex> vertices) : vertices_(std::move(vertices)) {
    auto sorted = vertices_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw InvalidVertexError("duplicate vertex label");
    }
  }

  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<MultiEdge>& edges() const { return edges_; }
  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  bool has_vertex(Vertex v) const {
    return std::find(vertices_.begin(), vertices_.end(), v) != vertices_.end();
  }

  int vertex_index(Vertex v) const {
    auto it = std::find(vertices_.begin(), vertices_.end(), v);
    if (it == vertices_.end()) throw InvalidVertexError("unknown vertex " + std::to_string(v));
    return static_cast<int>(it - vertices_.begin());
  }

  void add_vertex(Vertex v) {
    if (has_vertex(v)) throw InvalidVertexError("duplicate vertex " + std::to_string(v));
    vertices_.push_back(v);
  }

  /// Adds an edge with the given id (or the next free id when id < 0) and
  /// returns the id.
  int add_edge(Vertex u, Vertex v, int id = -1) {
    vertex_index(u);
    vertex_index(v);
    if (id < 0) {
      id = 0;
      for (const auto& e : edges_) id = std::max(id, e.id + 1);
    } else if (has_edge(id)) {
      throw InvalidVertexError("duplicate edge id " + std::to_string(id));
    }
    edges_.push_back(MultiEdge{id, u, v});
    return id;
  }

  bool has_edge(int id) const {
    return std::any_of(edges_.begin(), edges_.end(), [&](const MultiEdge& e) { return e.id == id; });
  }

  const MultiEdge& edge(int id) const {
    for (const auto& e : edges_) {
      if (e.id == id) return e;
    }
    throw InvalidVertexError("unknown edge " + std::to_string(id));
  }

  std::vector<int> edge_ids() const {
    std::vector<int> ids;
    for (const auto& e : edges_) ids.push_back(e.id);
    return ids;
  }

  int loop_count() const {
    return static_cast<int>(
        std::count_if(edges_.begin(), edges_.end(), [](const MultiEdge& e) { return e.is_loop(); }));
  }

  friend bool operator==(const LabeledMultigraph&, const LabeledMultigraph&) = default;

 private:
  std::vector<Vertex> vertices_;
  std::vector<MultiEdge> edges_;
};

}  // namespace circlekit
