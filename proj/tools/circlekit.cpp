// circlekit: command-line front end. Structured JSON goes to stdout, a short
// human summary to stderr.

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "circlekit/chord.hpp"
#include "circlekit/embed.hpp"
#include "circlekit/errors.hpp"
#include "circlekit/graph.hpp"
#include "circlekit/graph_io.hpp"
#include "circlekit/planar.hpp"
#include "circlekit/rankwidth.hpp"
#include "circlekit/rlc.hpp"
#include "circlekit/stabilizer.hpp"
#include "circlekit/svg.hpp"
#include "circlekit/verify.hpp"

namespace ck = circlekit;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBound = 3;
constexpr int kExitViolation = 4;

// Raised for bad input while the command's inputs are being read.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string graph;
  std::string in_path;
  std::string format = "graph6";
  std::string r_list = "2,3";
  std::string word;
  std::string mult;
  std::string out;
  std::string tree;
  std::string what;
  std::string verifier;
  int max_n = -1;
  int grid = 0;
  int n = 3;
  int max_edges = 12;
  int random = 200;
  int trials = ck::kDefaultPlanarizationTrials;
  std::uint64_t seed = 1;
  std::size_t cap = ck::kDefaultOrbitCap;
  bool list = false;
};

std::string read_all(const std::string& path) {
  if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot read " + path);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

std::string input_text(const Options& o) {
  if (!o.in_path.empty()) return read_all(o.in_path);
  if (!o.graph.empty()) return o.graph;
  throw InputError("no input: pass a graph argument or --in FILE");
}

ck::LabeledGraph input_graph(const Options& o, json& inputs) {
  const auto g = ck::parse_graph(input_text(o), ck::parse_format(o.format));
  inputs["graph"] = ck::graph_to_json(g);
  return g;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream s(text);
  std::string item;
  while (std::getline(s, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) throw InputError("not an integer list: " + text);
    out.push_back(v);
  }
  return out;
}

int bound_or(const Options& o, int fallback) { return o.max_n >= 0 ? o.max_n : fallback; }

struct Outcome {
  json result = json::object();
  bool violation = false;
  std::string summary;
};

using Handler = std::function<Outcome(const Options&, json&)>;

Outcome run_recognize(const Options& o, json& inputs) {
  const auto g = input_graph(o, inputs);
  const int bound = bound_or(o, ck::kDefaultRecognitionBound);
  inputs["max_n"] = bound;
  Outcome out;
  const auto d = ck::is_circle_graph(g, bound);
  out.result["circle"] = d.has_value();
  out.result["word"] = d ? json(d->to_string()) : json(nullptr);
  out.summary = d ? "circle graph, word " + d->to_string() : "not a circle graph";
  return out;
}

Outcome run_orbit(const Options& o, json& inputs) {
  const auto g = input_graph(o, inputs);
  inputs["cap"] = o.cap;
  Outcome out;
  const auto orbit = ck::lc_orbit(g, o.cap);
  out.result["lc_orbit_size"] = orbit.size();
  // LU and LC orbits coincide for circle graph states.
  const int bound = bound_or(o, ck::kDefaultRecognitionBound);
  if (g.size() <= bound) {
    const bool circle = ck::is_circle_graph(g, bound).has_value();
    out.result["circle"] = circle;
    out.result["lu_orbit_size"] = circle ? json(orbit.size()) : json(nullptr);
  } else {
    out.result["circle"] = nullptr;
    out.result["lu_orbit_size"] = nullptr;
  }
  if (o.list) {
    auto all = json::array();
    for (const auto& h : orbit) all.push_back(ck::to_graph6(h));
    out.result["graphs"] = all;
  }
  out.summary = "LC orbit has " + std::to_string(orbit.size()) + " labeled graphs";
  return out;
}

Outcome run_rlc_verify(const Options& o, json& inputs) {
  const auto g = input_graph(o, inputs);
  const auto rs = parse_int_list(o.r_list);
  inputs["r"] = rs;
  Outcome out;
  if (!o.mult.empty()) {
    const auto s = ck::multiset_from_json(ck::parse_json_text(o.mult));
    inputs["multiset"] = ck::multiset_to_json(s);
    auto per_r = json::array();
    for (int r : rs) {
      json item{{"r", r}};
      const auto image = ck::r_local_complement(g, s, r);
      const auto norm = ck::normalize_multiset(g, s, r);
      auto staged = ck::apply_local_complements(g, norm.A);
      if (!norm.Sprime.empty()) staged = ck::r_local_complement(staged, norm.Sprime, r);
      item["image"] = ck::graph_to_json(image);
      item["A"] = norm.A;
      item["Sprime"] = ck::multiset_to_json(norm.Sprime);
      item["normalization_agrees"] = staged == image;
      out.violation = out.violation || !(staged == image);
      per_r.push_back(item);
    }
    out.result["applications"] = per_r;
    out.summary = out.violation ? "normalization disagrees with direct application" : "r-local complementation applied";
    return out;
  }
  const int bound = bound_or(o, ck::kDefaultRlcBound);
  const bool circle = g.size() <= ck::kDefaultRecognitionBound && ck::is_circle_graph(g).has_value();
  out.result["graph"] = ck::graph_to_json(g);
  out.result["circle"] = circle;
  auto per_r = json::array();
  std::size_t total = 0;
  for (int r : rs) {
    const auto found = ck::find_nontrivial_r_incident(g, r, bound);
    auto list = json::array();
    for (const auto& s : found) list.push_back(ck::multiset_to_json(s));
    per_r.push_back({{"r", r}, {"nontrivial", list}});
    total += found.size();
  }
  out.result["certificates"] = per_r;
  // Nontrivial multisets on a circle graph would contradict closure.
  out.violation = circle && total > 0;
  out.summary = std::to_string(total) + " nontrivial r-incident multisets";
  return out;
}

std::optional<std::vector<int>> parse_tree(const Options& o) {
  if (o.tree.empty()) return std::nullopt;
  return parse_int_list(o.tree);
}

ck::PlaneMultigraph input_plane(const Options& o, json& inputs) {
  auto p = ck::plane_from_json(ck::parse_json_text(input_text(o)));
  inputs["plane"] = ck::plane_to_json(p);
  return p;
}

Outcome run_planar2graph(const Options& o, json& inputs) {
  const auto p = input_plane(o, inputs);
  const auto tree = parse_tree(o);
  if (tree) inputs["tree"] = *tree;
  Outcome out;
  const auto r = ck::check_theorem2(p, tree);
  out.result["graph"] = ck::graph_to_json(r.graph);
  out.result["graph6"] = ck::to_graph6(r.graph);
  out.result["tree"] = r.tree;
  out.result["hadamards"] = r.hadamards;
  out.result["generator_count"] = r.generator_count;
  out.result["redundancies"] = r.redundancies;
  out.result["same_group"] = r.same_group;
  out.result["failures"] = r.failures;
  out.violation = !r.ok();
  out.summary = "fundamental graph on " + std::to_string(r.graph.size()) + " qubits, " +
                std::to_string(r.hadamards.size()) + " Hadamards";
  return out;
}

ck::ChordDiagram diagram_for(const Options& o, const ck::LabeledGraph* g, int bound) {
  if (!o.word.empty()) return ck::ChordDiagram::parse(o.word);
  const auto d = ck::is_circle_graph(*g, bound);
  if (!d) throw ck::PreconditionError("input is not a circle graph");
  return *d;
}

Outcome run_graph2planar(const Options& o, json& inputs) {
  Outcome out;
  std::optional<ck::LabeledGraph> g;
  if (o.word.empty()) g = input_graph(o, inputs);
  const int bound = bound_or(o, ck::kDefaultRecognitionBound);
  const auto d = diagram_for(o, g ? &*g : nullptr, bound);
  inputs["word"] = d.to_string();
  const auto c = ck::interlacement_graph(d);
  const auto side = c.bipartition();
  if (!side) throw ck::PreconditionError("graph is not bipartite");
  const auto k = c.labels_of(*side);
  const auto p = ck::theorem2_converse(d, k);
  out.result["plane"] = ck::plane_to_json(p);
  out.result["tree"] = k;
  out.result["word"] = d.to_string();
  const std::vector<int> t(k.begin(), k.end());
  const bool back = ck::fundamental_graph(p, t) == c;
  out.result["round_trip"] = back;
  out.violation = !back;
  out.summary = "plane multigraph with " + std::to_string(p.base().vertices().size()) + " vertices and " +
                std::to_string(p.base().edge_count()) + " edges";
  return out;
}

Outcome run_embed(const Options& o, json& inputs) {
  Outcome out;
  std::optional<ck::LabeledGraph> g;
  if (o.word.empty()) g = input_graph(o, inputs);
  const auto d = diagram_for(o, g ? &*g : nullptr, bound_or(o, ck::kDefaultRecognitionBound));
  inputs["word"] = d.to_string();
  inputs["trials"] = o.trials;
  inputs["seed"] = o.seed;
  const auto c = ck::interlacement_graph(d);
  const auto r = ck::prop5_embed(c, d, o.trials, o.seed);
  const auto k = ck::check_prop5(c, r);
  out.result["bipartite_graph"] = ck::graph_to_json(r.bipartite);
  out.result["graph6"] = ck::to_graph6(r.bipartite);
  out.result["added"] = r.added;
  out.result["crossings"] = r.crossings;
  out.result["certificate"] = r.certificate.to_string();
  out.result["green_face_graph"] = ck::plane_to_json(r.green_graph);
  out.result["tree"] = r.tree;
  out.result["checks"] = {{"bipartite", k.bipartite},
                          {"circle", k.circle},
                          {"recognized", k.recognized},
                          {"size_bound", k.size_bound},
                          {"crossing_bound", k.crossing_bound},
                          {"recovered", k.recovered}};
  out.result["recovered_graph"] = ck::graph_to_json(k.recovered_graph);
  out.violation = !(k.bipartite && k.circle && k.size_bound && k.crossing_bound && k.recovered);
  out.summary = "B has " + std::to_string(r.bipartite.size()) + " vertices, " + std::to_string(r.crossings) +
                " crossings";
  return out;
}

Outcome run_rankwidth(const Options& o, json& inputs) {
  Outcome out;
  ck::LabeledGraph g;
  if (o.grid > 0) {
    g = ck::comparability_grid(o.grid, o.grid);
    inputs["grid"] = o.grid;
  } else {
    g = input_graph(o, inputs);
  }
  const int bound = bound_or(o, ck::kDefaultRankWidthBound);
  inputs["max_n"] = bound;
  const auto d = ck::rank_width_exact(g, bound);
  out.result = ck::decomposition_to_json(d);
  out.result["n"] = g.size();
  out.summary = "rank-width " + std::to_string(d.width);
  return out;
}

Outcome run_render(const Options& o, json& inputs) {
  Outcome out;
  if (o.out.empty()) throw InputError("render needs --out");
  std::string svg;
  if (o.what == "chord") {
    if (o.word.empty()) throw InputError("render chord needs --word");
    const auto d = ck::ChordDiagram::parse(o.word);
    inputs["word"] = d.to_string();
    svg = ck::render_chord_svg(d);
  } else if (o.what == "plane") {
    svg = ck::render_plane_svg(input_plane(o, inputs));
  } else {
    throw InputError("render target must be chord or plane");
  }
  inputs["out"] = o.out;
  std::ofstream f(o.out, std::ios::binary);
  if (!f || !(f << svg)) throw std::runtime_error("cannot write " + o.out);
  out.result["bytes"] = svg.size();
  out.summary = "wrote " + o.out;
  return out;
}

Outcome run_verify(const Options& o, json& inputs) {
  Outcome out;
  ck::VerifyReport rep;
  const auto& v = o.verifier;
  if (v == "theorem1") {
    rep = ck::verify_theorem1(bound_or(o, 6), parse_int_list(o.r_list));
  } else if (v == "lemma1") {
    rep = ck::verify_lemma1(ck::lemma1_suite(4, bound_or(o, 6), 2000, o.seed), parse_int_list(o.r_list));
  } else if (v == "lemma2") {
    rep = ck::verify_lemma2(bound_or(o, 7));
  } else if (v == "theorem2") {
    rep = ck::verify_theorem2(o.max_edges, o.random, o.seed);
  } else if (v == "remark") {
    rep = ck::verify_remark(bound_or(o, 6));
  } else if (v == "prop5") {
    rep = ck::verify_prop5(bound_or(o, 5));
  } else if (v == "onethird") {
    rep = ck::verify_one_third(o.n);
  } else if (v == "measurement") {
    rep = ck::verify_measurement(bound_or(o, 5));
  } else {
    throw InputError("unknown verifier '" + v + "'");
  }
  inputs["verifier"] = v;
  inputs["params"] = rep.params;
  out.result = rep.to_json();
  out.violation = !rep.ok();
  out.summary = v + ": " + std::to_string(rep.checked) + " checked, " + std::to_string(rep.violation_count) +
                " violations";
  return out;
}

void emit(const std::string& command, const json& inputs, const json& result, double ms, const char* status) {
  json report;
  report["command"] = command;
  report["inputs"] = inputs;
  report["result"] = result;
  report["elapsed_ms"] = ms;
  report["status"] = status;
  std::cout << report.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"circlekit: circle graph states, planar codes and rank-width"};
  app.require_subcommand(1);
  Options o;
  std::string chosen;
  std::map<std::string, Handler> handlers;

  auto graph_args = [&](CLI::App* sub) {
    sub->add_option("graph", o.graph, "graph text (graph6 or JSON)");
    sub->add_option("--in", o.in_path, "read input from a file, '-' for stdin");
    sub->add_option("--format", o.format, "graph6 or json")->check(CLI::IsMember({"graph6", "g6", "json"}));
  };
  auto add = [&](const std::string& name, const std::string& help, Handler h) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->callback([&chosen, name] { chosen = name; });
    handlers[name] = std::move(h);
    return sub;
  };

  auto* recognize = add("recognize", "exhaustive circle graph recognition", run_recognize);
  graph_args(recognize);
  recognize->add_option("--max-n", o.max_n, "recognition bound");

  auto* orbit = add("orbit", "LC orbit size (and LU orbit size for circle graphs)", run_orbit);
  graph_args(orbit);
  orbit->add_option("--cap", o.cap, "orbit size cap");
  orbit->add_option("--max-n", o.max_n, "recognition bound");
  orbit->add_flag("--list", o.list, "list the orbit in graph6");

  auto* rlc = add("rlc-verify", "apply or certify r-local complementations", run_rlc_verify);
  graph_args(rlc);
  rlc->add_option("--r", o.r_list, "comma-separated r values");
  rlc->add_option("--mult", o.mult, "multiset JSON {\"mult\": {\"u\": m}}");
  rlc->add_option("--max-n", o.max_n, "search bound in vertices");

  auto* p2g = add("planar2graph", "planar code to graph state", run_planar2graph);
  p2g->add_option("plane", o.graph, "plane multigraph JSON");
  p2g->add_option("--in", o.in_path, "read the plane multigraph from a file");
  p2g->add_option("--tree", o.tree, "comma-separated spanning tree edge ids");

  auto* g2p = add("graph2planar", "bipartite circle graph to plane multigraph", run_graph2planar);
  graph_args(g2p);
  g2p->add_option("--word", o.word, "chord diagram instead of a graph");
  g2p->add_option("--max-n", o.max_n, "recognition bound");

  auto* embed = add("embed-bipartite", "bipartite circle graph with the input as a vertex-minor", run_embed);
  graph_args(embed);
  embed->add_option("--word", o.word, "chord diagram instead of a graph");
  embed->add_option("--max-n", o.max_n, "recognition bound");
  embed->add_option("--trials", o.trials, "shuffled insertion orders tried by the planarizer");
  embed->add_option("--seed", o.seed, "planarizer seed");

  auto* rw = add("rankwidth", "exact rank-width with a decomposition", run_rankwidth);
  graph_args(rw);
  rw->add_option("--grid", o.grid, "use the n x n comparability grid");
  rw->add_option("--max-n", o.max_n, "DP bound in vertices");

  auto* render = add("render", "deterministic SVG of a chord diagram or plane multigraph", run_render);
  render->add_option("what", o.what, "chord or plane")->required()->check(CLI::IsMember({"chord", "plane"}));
  render->add_option("--word", o.word, "chord diagram word");
  render->add_option("--in", o.in_path, "plane multigraph JSON file");
  render->add_option("--out", o.out, "SVG path")->required();

  auto* verify = add("verify", "run an exhaustive verifier", run_verify);
  verify->add_option("name", o.verifier,
                     "theorem1 | lemma1 | lemma2 | theorem2 | remark | prop5 | onethird | measurement")
      ->required();
  verify->add_option("--max-n", o.max_n, "size bound (chords or vertices)");
  verify->add_option("--r", o.r_list, "comma-separated r values");
  verify->add_option("--n", o.n, "grid side for onethird");
  verify->add_option("--max-edges", o.max_edges, "edge bound for the plane suite");
  verify->add_option("--random", o.random, "random plane multigraphs in the suite");
  verify->add_option("--seed", o.seed, "seed for randomized suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  json inputs = json::object();
  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  };
  auto fail = [&](const char* status, const std::string& kind, const std::string& what, int code) {
    emit(chosen, inputs, json{{"error", kind}, {"message", what}}, elapsed(), status);
    std::cerr << chosen << ": " << what << "\n";
    return code;
  };
  try {
    const auto out = handlers.at(chosen)(o, inputs);
    emit(chosen, inputs, out.result, elapsed(), out.violation ? "theorem-violation" : "ok");
    std::cerr << chosen << ": " << out.summary << "\n";
    return out.violation ? kExitViolation : kExitOk;
  } catch (const InputError& e) {
    return fail("error", "usage", e.what(), kExitUsage);
  } catch (const ck::ParseError& e) {
    return fail("error", "parse", e.what(), kExitUsage);
  } catch (const ck::BoundExceededError& e) {
    return fail("error", "bound-exceeded", e.what(), kExitBound);
  } catch (const ck::TheoremViolation& e) {
    return fail("theorem-violation", "theorem-violation", e.what(), kExitViolation);
  } catch (const std::exception& e) {
    return fail("error", "error", e.what(), kExitError);
  }
}
