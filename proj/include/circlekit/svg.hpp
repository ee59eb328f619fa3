#pragma once

#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "circlekit/chord.hpp"
#include "circlekit/planar.hpp"

namespace circlekit {

namespace detail {

inline constexpr double kCanvas = 500.0;
inline constexpr double kCenter = 250.0;
inline constexpr double kRadius = 190.0;
inline constexpr double kPi = 3.14159265358979323846;

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", std::abs(v) < 0.005 ? 0.0 : v);
  return buf;
}

struct Point {
  double x, y;
};

inline Point on_circle(int k, int count, double radius) {
  const double a = 2 * kPi * k / count - kPi / 2;
  return {kCenter + radius * std::cos(a), kCenter + radius * std::sin(a)};
}

inline std::string svg_open() {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"500\" height=\"500\" viewBox=\"0 0 500 500\">\n"
         "<rect width=\"500\" height=\"500\" fill=\"white\"/>\n";
}

inline std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (c == '&') out += "&amp;";
    else out += c;
  }
  return out;
}

}  // namespace detail

/// Circle with endpoints in word order, straight chords, and a dot at every
/// chord crossing.
inline std::string render_chord_svg(const ChordDiagram& d) {
  using detail::fmt;
  const auto& w = d.word();
  const int len = static_cast<int>(w.size());
  std::string out = detail::svg_open();
  out += "<circle cx=\"250\" cy=\"250\" r=\"190\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
  std::map<Vertex, std::vector<int>> ends;
  for (int i = 0; i < len; ++i) ends[w[static_cast<std::size_t>(i)]].push_back(i);
  struct Segment {
    detail::Point a, b;
  };
  std::vector<std::pair<Vertex, Segment>> chords;
  for (const auto& [v, pos] : ends) {
    const auto a = detail::on_circle(pos[0], len, detail::kRadius);
    const auto b = detail::on_circle(pos[1], len, detail::kRadius);
    chords.push_back({v, {a, b}});
    out += "<line x1=\"" + fmt(a.x) + "\" y1=\"" + fmt(a.y) + "\" x2=\"" + fmt(b.x) + "\" y2=\"" + fmt(b.y) +
           "\" stroke=\"#1f4e9c\" stroke-width=\"2\"/>\n";
  }
  const auto c = interlacement_graph(d);
  for (std::size_t i = 0; i < chords.size(); ++i) {
    for (std::size_t j = i + 1; j < chords.size(); ++j) {
      if (!c.adjacent(chords[i].first, chords[j].first)) continue;
      const auto& s = chords[i].second;
      const auto& t = chords[j].second;
      const double dx1 = s.b.x - s.a.x, dy1 = s.b.y - s.a.y;
      const double dx2 = t.b.x - t.a.x, dy2 = t.b.y - t.a.y;
      const double den = dx1 * dy2 - dy1 * dx2;
      if (std::abs(den) < 1e-12) continue;
      const double u = ((t.a.x - s.a.x) * dy2 - (t.a.y - s.a.y) * dx2) / den;
      out += "<circle cx=\"" + fmt(s.a.x + u * dx1) + "\" cy=\"" + fmt(s.a.y + u * dy1) +
             "\" r=\"4\" fill=\"#c0392b\"/>\n";
    }
  }
  for (int i = 0; i < len; ++i) {
    const auto p = detail::on_circle(i, len, detail::kRadius);
    const auto q = detail::on_circle(i, len, detail::kRadius + 18);
    out += "<circle cx=\"" + fmt(p.x) + "\" cy=\"" + fmt(p.y) + "\" r=\"3\" fill=\"black\"/>\n";
    out += "<text x=\"" + fmt(q.x) + "\" y=\"" + fmt(q.y + 5) +
           "\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\">" +
           detail::escape(d.display(w[static_cast<std::size_t>(i)])) + "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

/// Schematic drawing of a plane multigraph: vertices on a circle in label
/// order, parallel edges bowed apart, loops as small circles, edge ids at
/// the midpoints. The rotation system is not reproduced geometrically.
inline std::string render_plane_svg(const PlaneMultigraph& p) {
  using detail::fmt;
  const auto& verts = p.base().vertices();
  const int n = static_cast<int>(verts.size());
  std::map<Vertex, detail::Point> at;
  for (int i = 0; i < n; ++i) {
    at[verts[static_cast<std::size_t>(i)]] =
        n == 1 ? detail::Point{detail::kCenter, detail::kCenter} : detail::on_circle(i, n, 160);
  }
  std::string out = detail::svg_open();
  std::map<std::pair<Vertex, Vertex>, int> seen;
  for (int id : p.edge_order()) {
    const auto& e = p.base().edge(id);
    const auto a = at.at(e.u);
    const auto b = at.at(e.v);
    const int k = seen[{std::min(e.u, e.v), std::max(e.u, e.v)}]++;
    detail::Point mid;
    if (e.is_loop()) {
      const double dx = a.x - detail::kCenter, dy = a.y - detail::kCenter;
      const double len = std::hypot(dx, dy) < 1e-9 ? 1.0 : std::hypot(dx, dy);
      const double r = 18 + 10 * k;
      mid = {a.x + (n == 1 ? 0 : dx / len * r), a.y + (n == 1 ? -r : dy / len * r)};
      out += "<circle cx=\"" + fmt(mid.x) + "\" cy=\"" + fmt(mid.y) + "\" r=\"" + fmt(r) +
             "\" fill=\"none\" stroke=\"#555\" stroke-width=\"1.5\"/>\n";
      mid = {mid.x + (mid.x - a.x), mid.y + (mid.y - a.y)};
    } else {
      // Alternate sides for parallel copies: 0, +1, -1, +2, ...
      const double bow = (k % 2 == 0 ? -1 : 1) * 22.0 * ((k + 1) / 2);
      const double dx = b.x - a.x, dy = b.y - a.y;
      const double len = std::hypot(dx, dy);
      const detail::Point ctrl{(a.x + b.x) / 2 - dy / len * bow * 2, (a.y + b.y) / 2 + dx / len * bow * 2};
      out += "<path d=\"M " + fmt(a.x) + " " + fmt(a.y) + " Q " + fmt(ctrl.x) + " " + fmt(ctrl.y) + " " +
             fmt(b.x) + " " + fmt(b.y) + "\" fill=\"none\" stroke=\"#555\" stroke-width=\"1.5\"/>\n";
      mid = {(a.x + b.x) / 4 + ctrl.x / 2, (a.y + b.y) / 4 + ctrl.y / 2};
    }
    out += "<text x=\"" + fmt(mid.x) + "\" y=\"" + fmt(mid.y - 4) +
           "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#1f4e9c\" text-anchor=\"middle\">e" +
           std::to_string(id) + "</text>\n";
  }
  for (Vertex v : verts) {
    const auto a = at.at(v);
    out += "<circle cx=\"" + fmt(a.x) + "\" cy=\"" + fmt(a.y) + "\" r=\"10\" fill=\"white\" stroke=\"black\"/>\n";
    out += "<text x=\"" + fmt(a.x) + "\" y=\"" + fmt(a.y + 4) +
           "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">" + std::to_string(v) + "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace circlekit
