#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include <json.hpp>

#include "circlekit/errors.hpp"
#include "circlekit/graph.hpp"

namespace circlekit {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// graph6

inline std::string to_graph6(const LabeledGraph& g) {
  const int n = g.size();
  std::string out;
  if (n <= 62) {
    out.push_back(static_cast<char>(n + 63));
  } else {
    out.push_back(static_cast<char>(126));
    out.push_back(static_cast<char>(((n >> 12) & 63) + 63));
    out.push_back(static_cast<char>(((n >> 6) & 63) + 63));
    out.push_back(static_cast<char>((n & 63) + 63));
  }
  int acc = 0, used = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.adjacent_at(i, j) ? 1 : 0);
      if (++used == 6) {
        out.push_back(static_cast<char>(acc + 63));
        acc = used = 0;
      }
    }
  }
  if (used > 0) out.push_back(static_cast<char>((acc << (6 - used)) + 63));
  return out;
}

/// Parses one graph6 line; an optional ">>graph6<<" header and trailing
/// newline are accepted. Vertices are labeled 0..n-1.
inline LabeledGraph parse_graph6(std::string_view text) {
  std::size_t pos = 0;
  constexpr std::string_view kHeader = ">>graph6<<";
  if (text.substr(0, kHeader.size()) == kHeader) pos = kHeader.size();
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.remove_suffix(1);

  auto byte = [&](std::size_t at) -> int {
    if (at >= text.size()) throw ParseError("graph6 string ends early", at);
    const int c = static_cast<unsigned char>(text[at]);
    if (c < 63 || c > 126) throw ParseError("invalid graph6 character", at);
    return c - 63;
  };

  int n = 0;
  if (pos < text.size() && text[pos] == '~') {
    if (pos + 1 < text.size() && text[pos + 1] == '~') {
      throw ParseError("graph6 order too large", pos);
    }
    n = (byte(pos + 1) << 12) | (byte(pos + 2) << 6) | byte(pos + 3);
    pos += 4;
  } else {
    n = byte(pos);
    pos += 1;
  }
  if (n > LabeledGraph::kMaxVertices) {
    throw ParseError("graph6 order " + std::to_string(n) + " exceeds 64", pos - 1);
  }
  LabeledGraph g(n);
  const std::size_t bits = static_cast<std::size_t>(pair_count(n));
  const std::size_t data_bytes = (bits + 5) / 6;
  if (text.size() - pos != data_bytes) {
    throw ParseError("graph6 payload has wrong length", std::min(text.size(), pos + data_bytes));
  }
  std::size_t k = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i, ++k) {
      const int chunk = byte(pos + k / 6);
      if ((chunk >> (5 - k % 6)) & 1) g.set_edge_at(i, j, true);
    }
  }
  if (bits % 6 != 0) {
    const int chunk = byte(pos + data_bytes - 1);
    if (chunk & ((1 << (6 - bits % 6)) - 1)) {
      throw ParseError("graph6 padding bits must be zero", pos + data_bytes - 1);
    }
  }
  return g;
}

// ---------------------------------------------------------------------------
// JSON edge list

inline json graph_to_json(const LabeledGraph& g) {
  json j;
  j["n"] = g.size();
  bool identity = true;
  for (int i = 0; i < g.size(); ++i) identity = identity && g.label(i) == i;
  if (!identity) j["labels"] = g.labels();
  json edges = json::array();
  for (auto [u, v] : g.edges()) edges.push_back({u, v});
  j["edges"] = std::move(edges);
  return j;
}

inline LabeledGraph graph_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j["n"].is_number_integer()) {
    throw ParseError("graph JSON needs an integer field \"n\"", 0);
  }
  const int n = j["n"].get<int>();
  if (n < 0) throw ParseError("graph JSON has negative \"n\"", 0);
  if (n > LabeledGraph::kMaxVertices) throw ParseError("graph JSON order exceeds 64", 0);
  std::vector<Vertex> labels = LabeledGraph::iota_labels(n, 0);
  if (j.contains("labels")) {
    const auto& l = j["labels"];
    if (!l.is_array() || static_cast<int>(l.size()) != n) {
      throw ParseError("graph JSON \"labels\" must list n vertices", 0);
    }
    for (int i = 0; i < n; ++i) {
      if (!l[static_cast<std::size_t>(i)].is_number_integer()) {
        throw ParseError("graph JSON labels must be integers", 0);
      }
      labels[static_cast<std::size_t>(i)] = l[static_cast<std::size_t>(i)].get<int>();
    }
  }
  LabeledGraph g(labels);
  if (!j.contains("edges")) return g;
  if (!j["edges"].is_array()) throw ParseError("graph JSON \"edges\" must be an array", 0);
  for (const auto& e : j["edges"]) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
        !e[1].is_number_integer()) {
      throw ParseError("graph JSON edge must be a pair of integers", 0);
    }
    const Vertex u = e[0].get<int>(), v = e[1].get<int>();
    if (u == v) throw ParseError("graph JSON edge is a self-loop", 0);
    if (!g.contains(u) || !g.contains(v)) throw ParseError("graph JSON edge names unknown vertex", 0);
    g.add_edge(u, v);
  }
  return g;
}

/// Parses JSON text, converting library errors into ParseError with the
/// reported byte position.
inline json parse_json_text(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what(), e.byte == 0 ? 0 : e.byte - 1);
  }
}

inline LabeledGraph parse_graph_json(std::string_view text) {
  return graph_from_json(parse_json_text(text));
}

enum class GraphFormat { Graph6, Json };

inline GraphFormat parse_format(std::string_view name) {
  if (name == "graph6" || name == "g6") return GraphFormat::Graph6;
  if (name == "json") return GraphFormat::Json;
  throw ParseError("unknown graph format '" + std::string(name) + "'", 0);
}

inline LabeledGraph parse_graph(std::string_view text, GraphFormat format) {
  return format == GraphFormat::Graph6 ? parse_graph6(text) : parse_graph_json(text);
}

inline std::string emit_graph(const LabeledGraph& g, GraphFormat format) {
  return format == GraphFormat::Graph6 ? to_graph6(g) : graph_to_json(g).dump();
}

}  // namespace circlekit
