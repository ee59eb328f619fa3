#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "circlekit/errors.hpp"
#include "circlekit/graph.hpp"

namespace circlekit {

/// Multiplicity function V -> N. Only nonzero multiplicities are stored.
class VertexMultiset {
 public:
  VertexMultiset() = default;
  VertexMultiset(std::initializer_list<std::pair<const Vertex, long long>> init) {
    for (auto [v, m] : init) set(v, m);
  }

  static VertexMultiset indicator(std::span<const Vertex> vs, long long m = 1) {
    VertexMultiset s;
    for (Vertex v : vs) s.set(v, m);
    return s;
  }

  long long operator()(Vertex v) const {
    auto it = mult_.find(v);
    return it == mult_.end() ? 0 : it->second;
  }

  void set(Vertex v, long long m) {
    if (m < 0) throw PreconditionError("multiplicities are nonnegative");
    if (m == 0) {
      mult_.erase(v);
    } else {
      mult_[v] = m;
    }
  }

  void add(Vertex v, long long m) { set(v, (*this)(v) + m); }

  bool empty() const { return mult_.empty(); }
  std::vector<Vertex> support() const {
    std::vector<Vertex> out;
    for (const auto& [v, m] : mult_) out.push_back(v);
    return out;
  }
  const std::map<Vertex, long long>& entries() const { return mult_; }

  friend bool operator==(const VertexMultiset&, const VertexMultiset&) = default;
  friend auto operator<=>(const VertexMultiset&, const VertexMultiset&) = default;

 private:
  std::map<Vertex, long long> mult_;
};

inline nlohmann::ordered_json multiset_to_json(const VertexMultiset& s) {
  nlohmann::ordered_json mult = nlohmann::ordered_json::object();
  for (const auto& [v, m] : s.entries()) mult[std::to_string(v)] = m;
  return nlohmann::ordered_json{{"mult", mult}};
}

inline VertexMultiset multiset_from_json(const nlohmann::ordered_json& j) {
  if (!j.is_object() || !j.contains("mult") || !j["mult"].is_object()) {
    throw ParseError("multiset JSON needs an object field \"mult\"", 0);
  }
  VertexMultiset s;
  for (const auto& [key, value] : j["mult"].items()) {
    if (!value.is_number_integer() || value.get<long long>() < 0) {
      throw ParseError("multiplicity of '" + key + "' must be a nonnegative integer", 0);
    }
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(key, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != key.size() || key.empty()) {
      throw ParseError("multiset key '" + key + "' is not an integer vertex", 0);
    }
    s.set(v, value.get<long long>());
  }
  return s;
}

namespace detail {

struct IndexedMultiset {
  Mask support = 0;
  std::vector<long long> weight;  // by vertex index
};

inline IndexedMultiset index_multiset(const LabeledGraph& g, const VertexMultiset& s) {
  IndexedMultiset out;
  out.weight.assign(static_cast<std::size_t>(g.size()), 0);
  for (const auto& [v, m] : s.entries()) {
    auto i = g.find(v);
    if (!i) throw InvalidVertexError("multiset names vertex " + std::to_string(v) + " not in the graph");
    out.weight[static_cast<std::size_t>(*i)] = m;
    out.support |= bit(*i);
  }
  return out;
}

inline long long weighted_sum(const std::vector<long long>& weight, Mask m) {
  long long total = 0;
  for_each_bit(m, [&](int i) { total += weight[static_cast<std::size_t>(i)]; });
  return total;
}

inline void check_r(int r) {
  if (r < 1) throw PreconditionError("r must be a positive integer");
  if (r > 60) throw PreconditionError("r above 60 is not supported");
}

// First K (as an index mask) violating r-incidence, or nullopt. Subsets of
// each size k+2 are scanned for increasing k; a partial K whose common
// neighborhood misses the support is pruned since every extension sums to 0.
inline std::optional<Mask> first_incidence_violation(const LabeledGraph& g,
                                                     const IndexedMultiset& s, int r) {
  const Mask outside = g.all() & ~s.support;
  for (int k = 0; k < r; ++k) {
    const int size = k + 2;
    if (size > popcount(outside)) break;
    const long long modulus = 1LL << (r - k - (k == 0 ? 1 : 0));
    std::optional<Mask> found;
    // DFS over index-increasing choices.
    auto dfs = [&](auto&& self, int next, int chosen, Mask picked, Mask common) -> void {
      if (found) return;
      if (chosen == size) {
        if (weighted_sum(s.weight, common & s.support) % modulus != 0) found = picked;
        return;
      }
      if ((common & s.support) == 0) return;
      for (int i = next; i < g.size(); ++i) {
        if (!(outside & bit(i))) continue;
        if (popcount(outside & ~(bit(i) - 1)) < size - chosen) break;
        self(self, i + 1, chosen + 1, picked | bit(i), common & g.row(i));
        if (found) return;
      }
    };
    dfs(dfs, 0, 0, 0, g.all());
    if (found) return found;
  }
  return std::nullopt;
}

}  // namespace detail

inline bool is_independent(const LabeledGraph& g, const VertexMultiset& s) {
  return g.is_independent_at(detail::index_multiset(g, s).support);
}

inline bool is_r_incident(const LabeledGraph& g, const VertexMultiset& s, int r) {
  detail::check_r(r);
  return !detail::first_incidence_violation(g, detail::index_multiset(g, s), r).has_value();
}

namespace detail {

inline LabeledGraph apply_rlc_unchecked(const LabeledGraph& g, const IndexedMultiset& s, int r) {
  const long long modulus = 1LL << r;
  const long long half = 1LL << (r - 1);
  LabeledGraph out = g;
  for (int a = 0; a < g.size(); ++a) {
    for (int b = a + 1; b < g.size(); ++b) {
      const long long sum = weighted_sum(s.weight, g.row(a) & g.row(b) & s.support);
      if (sum % modulus == half) out.toggle_edge_at(a, b);
    }
  }
  return out;
}

}  // namespace detail

/// G *^r S. Refuses unless S is independent and r-incident.
inline LabeledGraph r_local_complement(const LabeledGraph& g, const VertexMultiset& s, int r) {
  detail::check_r(r);
  const auto idx = detail::index_multiset(g, s);
  if (!g.is_independent_at(idx.support)) {
    throw ValidityError("multiset support is not independent");
  }
  if (auto bad = detail::first_incidence_violation(g, idx, r)) {
    std::string names;
    for (Vertex v : g.labels_of(*bad)) names += (names.empty() ? "" : ",") + std::to_string(v);
    throw ValidityError("multiset is not " + std::to_string(r) + "-incident (violated at K={" +
                        names + "})");
  }
  return detail::apply_rlc_unchecked(g, idx, r);
}

struct NormalizationResult {
  std::vector<Vertex> A;
  VertexMultiset Sprime;
};

/// Reduces (G, S, r) to an ordinary local complementation over A followed by
/// an r-local complementation over a twin-free S' of degree >= 2 with
/// multiplicities below 2^(r-1).
inline NormalizationResult normalize_multiset(const LabeledGraph& g, const VertexMultiset& s, int r) {
  detail::check_r(r);
  const auto idx = detail::index_multiset(g, s);
  if (!g.is_independent_at(idx.support)) {
    throw ValidityError("multiset support is not independent");
  }
  if (detail::first_incidence_violation(g, idx, r)) {
    throw ValidityError("multiset is not " + std::to_string(r) + "-incident");
  }
  std::vector<long long> s0 = idx.weight;
  Mask live = 0;
  for_each_bit(idx.support, [&](int u) {
    if (popcount(g.row(u)) <= 1) {
      s0[static_cast<std::size_t>(u)] = 0;
    } else {
      live |= bit(u);
    }
  });
  // Twin classes among the remaining support collapse onto their lowest index.
  for_each_bit(live, [&](int u) {
    if (s0[static_cast<std::size_t>(u)] == 0) return;
    for_each_bit(live & ~(bit(u + 1) - 1), [&](int w) {
      if (s0[static_cast<std::size_t>(w)] != 0 && g.twins_at(u, w)) {
        s0[static_cast<std::size_t>(u)] += s0[static_cast<std::size_t>(w)];
        s0[static_cast<std::size_t>(w)] = 0;
      }
    });
  });
  const long long modulus = 1LL << r;
  const long long half = 1LL << (r - 1);
  NormalizationResult out;
  for (int u = 0; u < g.size(); ++u) {
    const long long m = s0[static_cast<std::size_t>(u)];
    if (m % modulus >= half) out.A.push_back(g.label(u));
    out.Sprime.set(g.label(u), m % half);
  }
  return out;
}

/// Applies the local complementations of a normalization's A in order.
inline LabeledGraph apply_local_complements(LabeledGraph g, std::span<const Vertex> seq) {
  for (Vertex v : seq) local_complement_at(g, g.index_of(v));
  return g;
}

inline constexpr int kDefaultRlcBound = 8;

/// Every independent r-incident multiset with multiplicities in [0, 2^r - 1]
/// whose normalization keeps a nonempty S'. Sorted; empty means every valid
/// r-local complementation of g is a sequence of local complementations.
inline std::vector<VertexMultiset> find_nontrivial_r_incident(const LabeledGraph& g, int r,
                                                              int bound = kDefaultRlcBound) {
  detail::check_r(r);
  if (r > 3) throw PreconditionError("exhaustive r-incidence search supports r <= 3");
  if (g.size() > bound) {
    throw BoundExceededError("r-incidence search bound is " + std::to_string(bound) +
                             " vertices, graph has " + std::to_string(g.size()));
  }
  std::vector<VertexMultiset> found;
  const long long top = (1LL << r) - 1;
  detail::IndexedMultiset s;
  s.weight.assign(static_cast<std::size_t>(g.size()), 0);
  auto check = [&] {
    if (s.support == 0) return;
    if (detail::first_incidence_violation(g, s, r)) return;
    VertexMultiset ms;
    for_each_bit(s.support, [&](int i) { ms.set(g.label(i), s.weight[static_cast<std::size_t>(i)]); });
    if (!normalize_multiset(g, ms, r).Sprime.empty()) found.push_back(std::move(ms));
  };
  // Assign multiplicities vertex by vertex, keeping the support independent.
  auto dfs = [&](auto&& self, int i, Mask blocked) -> void {
    if (i == g.size()) {
      check();
      return;
    }
    self(self, i + 1, blocked);
    if (blocked & bit(i)) return;
    s.support |= bit(i);
    for (long long m = 1; m <= top; ++m) {
      s.weight[static_cast<std::size_t>(i)] = m;
      self(self, i + 1, blocked | g.row(i));
    }
    s.weight[static_cast<std::size_t>(i)] = 0;
    s.support &= ~bit(i);
  };
  dfs(dfs, 0, 0);
  std::sort(found.begin(), found.end());
  return found;
}

/// Calls f(S) for every independent r-incident multiset with multiplicities
/// in [1, 2^r - 1] on a nonempty support.
template <class F>
inline void for_each_valid_multiset(const LabeledGraph& g, int r, F&& f) {
  detail::check_r(r);
  const long long top = (1LL << r) - 1;
  detail::IndexedMultiset s;
  s.weight.assign(static_cast<std::size_t>(g.size()), 0);
  auto dfs = [&](auto&& self, int i, Mask blocked) -> void {
    if (i == g.size()) {
      if (s.support != 0 && !detail::first_incidence_violation(g, s, r)) {
        VertexMultiset ms;
        for_each_bit(s.support,
                     [&](int j) { ms.set(g.label(j), s.weight[static_cast<std::size_t>(j)]); });
        f(ms);
      }
      return;
    }
    self(self, i + 1, blocked);
    if (blocked & bit(i)) return;
    s.support |= bit(i);
    for (long long m = 1; m <= top; ++m) {
      s.weight[static_cast<std::size_t>(i)] = m;
      self(self, i + 1, blocked | g.row(i));
    }
    s.weight[static_cast<std::size_t>(i)] = 0;
    s.support &= ~bit(i);
  };
  dfs(dfs, 0, 0);
}

/// Distinct a, b outside K with exactly one common neighbor in K; the first
/// such pair in label-index order.
inline std::pair<Vertex, Vertex> lemma2_witness(const LabeledGraph& c, std::span<const Vertex> k) {
  const Mask km = c.mask_of(k);
  if (!c.is_independent_at(km)) throw PreconditionError("K is not independent");
  bool has_deg2 = false;
  for_each_bit(km, [&](int u) { has_deg2 = has_deg2 || popcount(c.row(u)) >= 2; });
  if (!has_deg2) throw PreconditionError("K has no vertex of degree two or more");
  for_each_bit(km, [&](int u) {
    for_each_bit(km & ~(bit(u + 1) - 1), [&](int w) {
      if (c.twins_at(u, w)) {
        throw PreconditionError("K contains twins " + std::to_string(c.label(u)) + " and " +
                                std::to_string(c.label(w)));
      }
    });
  });
  const Mask outside = c.all() & ~km;
  for (int a = 0; a < c.size(); ++a) {
    if (!(outside & bit(a))) continue;
    for (int b = a + 1; b < c.size(); ++b) {
      if (!(outside & bit(b))) continue;
      if (popcount(c.row(a) & c.row(b) & km) == 1) return {c.label(a), c.label(b)};
    }
  }
  throw TheoremViolation("no pair outside K has exactly one common neighbor in K");
}

/// Whether K qualifies for the witness search: independent, twin-free, and
/// holding a vertex of degree at least two.
inline bool lemma2_applies(const LabeledGraph& c, Mask km) {
  if (!c.is_independent_at(km)) return false;
  bool has_deg2 = false, twins = false;
  for_each_bit(km, [&](int u) {
    has_deg2 = has_deg2 || popcount(c.row(u)) >= 2;
    for_each_bit(km & ~(bit(u + 1) - 1), [&](int w) { twins = twins || c.twins_at(u, w); });
  });
  return has_deg2 && !twins;
}

}  // namespace circlekit
