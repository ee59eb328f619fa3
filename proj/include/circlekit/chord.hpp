#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_set>
#include <utility>
#include <vector>

#include "circlekit/errors.hpp"
#include "circlekit/graph.hpp"
#include "circlekit/multigraph.hpp"

namespace circlekit {

/// A chord diagram stored as a double occurrence word read around the
/// circle. Letters are vertex labels; `names` optionally maps letters to the
/// tokens they were parsed from.
class ChordDiagram {
 public:
  ChordDiagram() = default;

  explicit ChordDiagram(std::vector<Vertex> word, std::map<Vertex, std::string> names = {})
      : word_(std::move(word)), names_(std::move(names)) {
    std::map<Vertex, int> count;
    for (Vertex v : word_) ++count[v];
    for (auto [v, c] : count) {
      if (c != 2) {
        throw ParseError("letter " + display(v) + " occurs " + std::to_string(c) +
                             " times; every letter must occur exactly twice",
                         0);
      }
    }
  }

  /// Parses a word. Tokens are single characters, or comma-separated when a
  /// comma is present. All-integer tokens are used as labels directly;
  /// otherwise distinct tokens are numbered 0,1,... in sorted order.
  static ChordDiagram parse(std::string_view text) {
    std::vector<std::string> tokens;
    std::vector<std::size_t> offsets;
    const bool comma = text.find(',') != std::string_view::npos;
    if (comma) {
      std::size_t start = 0;
      while (start <= text.size()) {
        std::size_t end = text.find(',', start);
        if (end == std::string_view::npos) end = text.size();
        std::string tok = trim(text.substr(start, end - start));
        if (tok.empty()) throw ParseError("empty token in chord word", start);
        tokens.push_back(tok);
        offsets.push_back(start);
        start = end + 1;
      }
    } else {
      for (std::size_t i = 0; i < text.size(); ++i) {
        if (std::isspace(static_cast<unsigned char>(text[i]))) continue;
        tokens.emplace_back(1, text[i]);
        offsets.push_back(i);
      }
    }
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      for (char ch : tokens[i]) {
        if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_')) {
          throw ParseError("chord word tokens use [a-z0-9_]", offsets[i]);
        }
      }
    }
    bool numeric = true;
    for (const auto& t : tokens) {
      numeric = numeric && std::all_of(t.begin(), t.end(), [](char ch) {
                  return std::isdigit(static_cast<unsigned char>(ch));
                }) && t.size() < 9;
    }
    std::vector<Vertex> word;
    std::map<Vertex, std::string> names;
    if (numeric) {
      for (const auto& t : tokens) word.push_back(std::stoi(t));
    } else {
      std::set<std::string> distinct(tokens.begin(), tokens.end());
      std::map<std::string, Vertex> id;
      for (const auto& t : distinct) {
        const Vertex v = static_cast<Vertex>(id.size());
        id[t] = v;
        names[v] = t;
      }
      for (const auto& t : tokens) word.push_back(id[t]);
    }
    std::map<Vertex, int> count;
    for (std::size_t i = 0; i < word.size(); ++i) {
      if (++count[word[i]] > 2) throw ParseError("letter '" + tokens[i] + "' occurs more than twice", offsets[i]);
    }
    for (std::size_t i = 0; i < word.size(); ++i) {
      if (count[word[i]] != 2) throw ParseError("letter '" + tokens[i] + "' occurs only once", offsets[i]);
    }
    return ChordDiagram(std::move(word), std::move(names));
  }

  const std::vector<Vertex>& word() const { return word_; }
  const std::map<Vertex, std::string>& names() const { return names_; }
  int chord_count() const { return static_cast<int>(word_.size() / 2); }
  int length() const { return static_cast<int>(word_.size()); }

  std::string display(Vertex v) const {
    auto it = names_.find(v);
    return it == names_.end() ? std::to_string(v) : it->second;
  }

  /// Letters in increasing label order.
  std::vector<Vertex> letters() const {
    std::vector<Vertex> out = word_;
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  /// Positions of the two occurrences of v, first < second.
  std::pair<int, int> positions(Vertex v) const {
    int first = -1;
    for (int i = 0; i < length(); ++i) {
      if (word_[static_cast<std::size_t>(i)] != v) continue;
      if (first < 0) {
        first = i;
      } else {
        return {first, i};
      }
    }
    throw InvalidVertexError("letter " + std::to_string(v) + " is not in the word");
  }

  /// Single characters when every display token is one character, otherwise
  /// comma-separated.
  std::string to_string() const {
    bool single = true;
    for (Vertex v : word_) single = single && display(v).size() == 1;
    std::string out;
    for (std::size_t i = 0; i < word_.size(); ++i) {
      if (!single && i > 0) out.push_back(',');
      out += display(word_[i]);
    }
    return out;
  }

  ChordDiagram rotated(int k) const {
    std::vector<Vertex> w = word_;
    if (!w.empty()) {
      k %= length();
      if (k < 0) k += length();
      std::rotate(w.begin(), w.begin() + k, w.end());
    }
    return ChordDiagram(std::move(w), names_);
  }

  ChordDiagram reflected() const {
    std::vector<Vertex> w(word_.rbegin(), word_.rend());
    return ChordDiagram(std::move(w), names_);
  }

  ChordDiagram without(Vertex v) const {
    positions(v);
    std::vector<Vertex> w;
    for (Vertex x : word_)
      if (x != v) w.push_back(x);
    auto names = names_;
    names.erase(v);
    return ChordDiagram(std::move(w), std::move(names));
  }

  /// Reverses the stretch strictly between the two occurrences of v; the
  /// interlacement graph changes by a local complementation at v.
  ChordDiagram local_complemented(Vertex v) const {
    auto [i, j] = positions(v);
    std::vector<Vertex> w = word_;
    std::reverse(w.begin() + i + 1, w.begin() + j);
    return ChordDiagram(std::move(w), names_);
  }

  /// Lexicographically least word over all rotations and reflections.
  ChordDiagram canonical() const {
    return ChordDiagram(min_over_symmetries(word_, false), names_);
  }

  /// As canonical(), but letters are renamed 0,1,... by first occurrence
  /// before comparing, so diagrams equal up to renaming share a shape.
  std::vector<Vertex> canonical_shape() const { return min_over_symmetries(word_, true); }

  friend bool operator==(const ChordDiagram& a, const ChordDiagram& b) { return a.word_ == b.word_; }

  static std::vector<Vertex> min_over_symmetries(const std::vector<Vertex>& word, bool rename) {
    if (word.empty()) return {};
    std::vector<Vertex> best;
    bool have = false;
    const std::size_t len = word.size();
    std::vector<Vertex> cand(len);
    for (int dir = 0; dir < 2; ++dir) {
      for (std::size_t start = 0; start < len; ++start) {
        for (std::size_t i = 0; i < len; ++i) {
          const std::size_t idx = dir == 0 ? (start + i) % len : (start + len - i) % len;
          cand[i] = word[idx];
        }
        if (rename) rename_by_first_occurrence(cand);
        if (!have || cand < best) {
          best = cand;
          have = true;
        }
      }
    }
    return best;
  }

  static void rename_by_first_occurrence(std::vector<Vertex>& w) {
    std::map<Vertex, Vertex> id;
    for (Vertex& v : w) {
      auto [it, inserted] = id.emplace(v, static_cast<Vertex>(id.size()));
      v = it->second;
    }
  }

 private:
  static std::string trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return std::string(s);
  }

  std::vector<Vertex> word_;
  std::map<Vertex, std::string> names_;
};

/// Graph on the letters (in increasing order) with x ~ y iff their
/// occurrences alternate around the circle.
inline LabeledGraph interlacement_graph(const ChordDiagram& d) {
  const auto letters = d.letters();
  LabeledGraph g(letters);
  std::map<Vertex, int> index;
  for (std::size_t i = 0; i < letters.size(); ++i) index[letters[i]] = static_cast<int>(i);
  // prefix[t]: letters seen an odd number of times in word[0..t).
  std::vector<Mask> prefix(d.word().size() + 1, 0);
  for (std::size_t t = 0; t < d.word().size(); ++t) {
    prefix[t + 1] = prefix[t] ^ bit(index[d.word()[t]]);
  }
  for (Vertex v : letters) {
    auto [i, j] = d.positions(v);
    const Mask between = prefix[static_cast<std::size_t>(j)] ^ prefix[static_cast<std::size_t>(i) + 1];
    for_each_bit(between, [&](int w) { g.set_edge_at(index[v], w, true); });
  }
  return g;
}

inline bool word_realizes(const ChordDiagram& d, const LabeledGraph& g) {
  return interlacement_graph(d).same_as(g);
}

// ---------------------------------------------------------------------------
// Enumeration

/// All double occurrence words on letters 0..n-1 named by first occurrence:
/// one word per perfect matching of 2n points, (2n-1)!! in total.
template <class F>
inline void for_each_matching_word(int n, F&& f) {
  std::vector<Vertex> w(static_cast<std::size_t>(2 * n), -1);
  auto rec = [&](auto&& self, int next_letter) -> void {
    int first = -1;
    for (int i = 0; i < 2 * n; ++i) {
      if (w[static_cast<std::size_t>(i)] < 0) {
        first = i;
        break;
      }
    }
    if (first < 0) {
      f(w);
      return;
    }
    w[static_cast<std::size_t>(first)] = next_letter;
    for (int j = first + 1; j < 2 * n; ++j) {
      if (w[static_cast<std::size_t>(j)] >= 0) continue;
      w[static_cast<std::size_t>(j)] = next_letter;
      self(self, next_letter + 1);
      w[static_cast<std::size_t>(j)] = -1;
    }
    w[static_cast<std::size_t>(first)] = -1;
  };
  rec(rec, 0);
}

/// One representative diagram per shape (rotation/reflection class) on n
/// chords, letters 0..n-1.
inline std::vector<ChordDiagram> enumerate_diagram_shapes(int n) {
  std::set<std::vector<Vertex>> shapes;
  for_each_matching_word(n, [&](const std::vector<Vertex>& w) {
    shapes.insert(ChordDiagram::min_over_symmetries(w, true));
  });
  std::vector<ChordDiagram> out;
  out.reserve(shapes.size());
  for (const auto& s : shapes) out.emplace_back(s);
  return out;
}

/// Distinct labeled circle graphs realized by diagrams on exactly n chords,
/// each with one realizing diagram.
inline std::vector<std::pair<LabeledGraph, ChordDiagram>> enumerate_circle_graphs(int n) {
  std::vector<std::pair<LabeledGraph, ChordDiagram>> out;
  GraphKeySet seen;
  for (auto& d : enumerate_diagram_shapes(n)) {
    LabeledGraph g = interlacement_graph(d);
    if (seen.insert(key_of(g)).second) out.emplace_back(std::move(g), std::move(d));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Recognition

inline constexpr int kDefaultRecognitionBound = 9;

namespace detail {

// Backtracking insertion of chords, one vertex at a time, inside a connected
// component. `order` lists component vertex indices so each prefix is
// connected. Failed partial words are memoized by their canonical form.
inline std::optional<std::vector<Vertex>> realize_component(const LabeledGraph& g,
                                                            const std::vector<int>& order) {
  std::vector<Vertex> word;
  std::vector<std::unordered_set<std::string>> failed(order.size() + 1);
  auto key = [&](const std::vector<Vertex>& w) {
    const auto c = ChordDiagram::min_over_symmetries(w, false);
    std::string s;
    s.reserve(c.size());
    for (Vertex v : c) s.push_back(static_cast<char>(g.index_of(v)));
    return s;
  };
  auto rec = [&](auto&& self, std::size_t step) -> bool {
    if (step == order.size()) return true;
    const std::string k = key(word);
    if (failed[step].count(k)) return false;
    const int v = order[step];
    Mask placed = 0;
    for (std::size_t s = 0; s < step; ++s) placed |= bit(order[s]);
    const Mask want = g.row(v) & placed;
    // prefix[t]: parity mask of letters among word[0..t).
    const std::size_t len = word.size();
    std::vector<Mask> prefix(len + 1, 0);
    for (std::size_t t = 0; t < len; ++t) {
      prefix[t + 1] = prefix[t] ^ bit(g.index_of(word[t]));
    }
    // Gap len coincides with gap 0 on the circle.
    const std::size_t i_limit = len == 0 ? 1 : len;
    for (std::size_t i = 0; i < i_limit; ++i) {
      for (std::size_t j = i; j <= len; ++j) {
        if ((prefix[j] ^ prefix[i]) != want) continue;
        std::vector<Vertex> next;
        next.reserve(len + 2);
        next.insert(next.end(), word.begin(), word.begin() + static_cast<std::ptrdiff_t>(i));
        next.push_back(g.label(v));
        next.insert(next.end(), word.begin() + static_cast<std::ptrdiff_t>(i),
                    word.begin() + static_cast<std::ptrdiff_t>(j));
        next.push_back(g.label(v));
        next.insert(next.end(), word.begin() + static_cast<std::ptrdiff_t>(j), word.end());
        std::swap(word, next);
        if (self(self, step + 1)) return true;
        std::swap(word, next);
      }
    }
    failed[step].insert(k);
    return false;
  };
  if (!rec(rec, 0)) return std::nullopt;
  return word;
}

}  // namespace detail

/// A diagram whose interlacement graph is exactly g (same labels), or
/// nullopt when g is not a circle graph.
inline std::optional<ChordDiagram> is_circle_graph(const LabeledGraph& g,
                                                   int bound = kDefaultRecognitionBound) {
  if (g.size() > bound) {
    throw BoundExceededError("circle recognition bound is " + std::to_string(bound) +
                             " vertices, graph has " + std::to_string(g.size()));
  }
  std::vector<Vertex> word;
  for (Mask comp : g.components()) {
    // BFS from a maximum-degree vertex of the component.
    int root = -1;
    for_each_bit(comp, [&](int i) {
      if (root < 0 || popcount(g.row(i)) > popcount(g.row(root))) root = i;
    });
    std::vector<int> order{root};
    Mask seen = bit(root);
    for (std::size_t h = 0; h < order.size(); ++h) {
      for_each_bit(g.row(order[h]) & ~seen, [&](int w) {
        seen |= bit(w);
        order.push_back(w);
      });
    }
    auto part = detail::realize_component(g, order);
    if (!part) return std::nullopt;
    word.insert(word.end(), part->begin(), part->end());
  }
  return ChordDiagram(std::move(word));
}

// ---------------------------------------------------------------------------
// Independent-set tree and fundamental-cycle multigraph

/// Dart of a plane multigraph: the end of `edge` at ends[side].
struct Dart {
  int edge;
  int side;
  Dart reversed() const { return Dart{edge, 1 - side}; }
  friend bool operator==(const Dart&, const Dart&) = default;
  friend auto operator<=>(const Dart&, const Dart&) = default;
};

/// The regions cut out by a noncrossing chord set K, walked around the
/// circle. Region 0 holds the start of the word. Every letter becomes an
/// edge with id equal to the letter: chords of K join the two regions they
/// separate (parent region first), other chords join the regions holding
/// their two endpoints. `rotation[r]` lists the darts at region r in the
/// order the walk meets them, which is a planar rotation system.
struct RegionWalk {
  LabeledMultigraph multigraph;
  std::vector<int> tree_edges;
  std::vector<std::vector<Dart>> rotation;
  std::vector<int> region_at;  // region of each word position
};

inline RegionWalk walk_regions(const ChordDiagram& d, std::span<const Vertex> k) {
  std::set<Vertex> kset(k.begin(), k.end());
  for (Vertex v : kset) d.positions(v);
  RegionWalk out;
  std::vector<std::pair<Vertex, int>> stack;  // open chord, parent region
  int current = 0, regions = 1;
  out.rotation.emplace_back();
  std::map<Vertex, int> first_region;
  std::vector<std::tuple<int, Vertex, Vertex>> edges;  // id, u, v (regions)
  std::map<Vertex, int> edge_slot;
  out.region_at.assign(static_cast<std::size_t>(d.length()), 0);
  // Darts are recorded with placeholder sides and fixed once ends are known.
  for (int pos = 0; pos < d.length(); ++pos) {
    const Vertex x = d.word()[static_cast<std::size_t>(pos)];
    if (kset.count(x)) {
      if (!first_region.count(x)) {
        const int child = regions++;
        out.rotation.emplace_back();
        first_region[x] = current;
        out.rotation[static_cast<std::size_t>(current)].push_back(Dart{x, 0});
        out.rotation[static_cast<std::size_t>(child)].push_back(Dart{x, 1});
        edge_slot[x] = static_cast<int>(edges.size());
        edges.emplace_back(x, current, child);
        stack.emplace_back(x, current);
        out.region_at[static_cast<std::size_t>(pos)] = current;
        current = child;
      } else {
        if (stack.empty() || stack.back().first != x) {
          throw PreconditionError("chords of K cross; K is not independent");
        }
        out.region_at[static_cast<std::size_t>(pos)] = current;
        current = stack.back().second;
        stack.pop_back();
      }
    } else {
      out.region_at[static_cast<std::size_t>(pos)] = current;
      auto it = first_region.find(x);
      if (it == first_region.end()) {
        first_region[x] = current;
        out.rotation[static_cast<std::size_t>(current)].push_back(Dart{x, 0});
        edge_slot[x] = static_cast<int>(edges.size());
        edges.emplace_back(x, current, -1);
      } else {
        std::get<2>(edges[static_cast<std::size_t>(edge_slot[x])]) = current;
        out.rotation[static_cast<std::size_t>(current)].push_back(Dart{x, 1});
      }
    }
  }
  LabeledMultigraph h(LabeledGraph::iota_labels(regions, 0));
  for (auto [id, u, v] : edges) h.add_edge(u, v, id);
  out.multigraph = std::move(h);
  for (Vertex x : d.letters())
    if (kset.count(x)) out.tree_edges.push_back(x);
  return out;
}

struct IndependentSetTree {
  LabeledMultigraph tree;  // vertices are regions; edge id = chord label
};

inline IndependentSetTree independent_set_tree(const ChordDiagram& d, std::span<const Vertex> k) {
  const auto c = interlacement_graph(d);
  if (!c.is_independent_at(c.mask_of(k))) throw PreconditionError("K is not independent");
  const RegionWalk walk = walk_regions(d, k);
  LabeledMultigraph t(walk.multigraph.vertices());
  for (const auto& e : walk.multigraph.edges()) {
    if (std::find(walk.tree_edges.begin(), walk.tree_edges.end(), e.id) != walk.tree_edges.end()) {
      t.add_edge(e.u, e.v, e.id);
    }
  }
  return IndependentSetTree{std::move(t)};
}

/// Tree of independent_set_tree plus one edge per letter outside K, whose
/// fundamental cycle runs through exactly the tree edges of the K chords it
/// crosses. Letters crossing no K chord become loops.
inline LabeledMultigraph fundamental_cycle_multigraph(const ChordDiagram& d,
                                                      std::span<const Vertex> k) {
  const auto c = interlacement_graph(d);
  if (!c.is_independent_at(c.mask_of(k))) throw PreconditionError("K is not independent");
  return walk_regions(d, k).multigraph;
}

/// Edge ids on the path between two vertices of a forest given as edges of
/// a multigraph (only edges listed in `tree` are used). Empty when u == v;
/// nullopt when disconnected.
inline std::optional<std::vector<int>> tree_path(const LabeledMultigraph& m,
                                                 const std::vector<int>& tree, Vertex u, Vertex v) {
  if (u == v) return std::vector<int>{};
  std::map<Vertex, std::pair<Vertex, int>> parent;  // vertex -> (prev, edge)
  std::vector<Vertex> queue{u};
  parent[u] = {u, -1};
  for (std::size_t h = 0; h < queue.size(); ++h) {
    const Vertex x = queue[h];
    for (int id : tree) {
      const auto& e = m.edge(id);
      if (e.is_loop() || (e.u != x && e.v != x)) continue;
      const Vertex y = e.other(x);
      if (parent.count(y)) continue;
      parent[y] = {x, id};
      if (y == v) {
        std::vector<int> path;
        for (Vertex z = v; z != u; z = parent[z].first) path.push_back(parent[z].second);
        std::reverse(path.begin(), path.end());
        return path;
      }
      queue.push_back(y);
    }
  }
  return std::nullopt;
}

}  // namespace circlekit
