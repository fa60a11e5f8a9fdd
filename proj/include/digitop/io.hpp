#pragma once

// File formats: graph JSON, plain edge lists, DOT, trace JSON, cover JSON and
// shape JSON, plus JSON renderings of every report type.

#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "digitop/catalog.hpp"
#include "digitop/classify.hpp"
#include "digitop/covers.hpp"
#include "digitop/digitizer.hpp"
#include "digitop/graph.hpp"
#include "digitop/homotopy.hpp"
#include "digitop/invariants.hpp"
#include "digitop/transform.hpp"

namespace digitop {

using Json = nlohmann::ordered_json;

/// Malformed input. The message carries a position where one is known.
class InputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) throw InputError(where + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw InputError(where + ": missing \"" + key + "\"");
  return *it;
}

inline std::string string_at(const Json& j, const std::string& where) {
  if (!j.is_string()) throw InputError(where + ": expected a string");
  return j.get<std::string>();
}

} // namespace detail

inline Json parse_json_text(const std::string& text, const std::string& source = "input") {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(source + ": byte " + std::to_string(e.byte) + ": malformed JSON");
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// --- rationals ----------------------------------------------------------------

/// Integers as JSON numbers, everything else as "p/q" strings.
inline Json rational_json(const Rational& r) {
  if (denominator(r) == 1 && abs(numerator(r)) < boost::multiprecision::cpp_int(1) << 53)
    return static_cast<std::int64_t>(numerator(r));
  return r.str();
}

inline Rational rational_from_json(const Json& j, const std::string& where) {
  std::optional<Rational> r;
  if (j.is_number_integer()) r = Rational(j.get<std::int64_t>());
  else if (j.is_number_float()) r = parse_rational(j.dump());
  else if (j.is_string()) r = parse_rational(j.get<std::string>());
  if (!r) throw InputError(where + ": expected a rational number (integer, decimal or \"p/q\"), got " + j.dump());
  return *r;
}

inline std::vector<Rational> rational_vector(const Json& j, const std::string& where) {
  if (!j.is_array()) throw InputError(where + ": expected an array");
  std::vector<Rational> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(rational_from_json(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

// --- graphs -------------------------------------------------------------------

inline Json graph_json(const Graph& g) {
  Json j;
  j["vertices"] = g.labels();
  Json edges = Json::array();
  for (auto [u, v] : g.edges()) edges.push_back({g.label(u), g.label(v)});
  j["edges"] = std::move(edges);
  return j;
}

inline Graph graph_from_json(const Json& j, const std::string& where = "graph") {
  const auto& vs = detail::field(j, "vertices", where);
  const auto& es = detail::field(j, "edges", where);
  if (!vs.is_array() || !es.is_array()) throw InputError(where + ": \"vertices\" and \"edges\" must be arrays");
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < vs.size(); ++i)
    labels.push_back(detail::string_at(vs[i], where + ".vertices[" + std::to_string(i) + "]"));
  std::vector<std::pair<std::string, std::string>> edges;
  std::set<std::pair<std::string, std::string>> seen;
  for (std::size_t i = 0; i < es.size(); ++i) {
    const auto at = where + ".edges[" + std::to_string(i) + "]";
    if (!es[i].is_array() || es[i].size() != 2) throw InputError(at + ": expected a pair of vertex labels");
    auto a = detail::string_at(es[i][0], at), b = detail::string_at(es[i][1], at);
    if (!seen.insert(std::minmax(a, b)).second) throw InputError(at + ": duplicate edge (" + a + ", " + b + ")");
    edges.emplace_back(std::move(a), std::move(b));
  }
  try {
    return build_graph(std::move(labels), edges);
  } catch (const GraphError& e) {
    throw InputError(where + ": " + e.what());
  }
}

/// Lines "u w" or "e u w" declare edges, "v u" declares a vertex; "#" starts
/// a comment.
inline Graph graph_from_edge_list(const std::string& text, const std::string& where = "edge list") {
  std::vector<std::string> labels;
  std::set<std::string> known;
  std::vector<std::pair<std::string, std::string>> edges;
  auto declare = [&](const std::string& l) {
    if (known.insert(l).second) labels.push_back(l);
  };
  std::istringstream in(text);
  std::string line;
  for (std::size_t no = 1; std::getline(in, line); ++no) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    const auto at = where + ":" + std::to_string(no);
    if (tok.size() == 2 && tok[0] == "v") {
      declare(tok[1]);
    } else if (tok.size() == 3 && tok[0] == "e") {
      declare(tok[1]);
      declare(tok[2]);
      edges.emplace_back(tok[1], tok[2]);
    } else if (tok.size() == 2) {
      declare(tok[0]);
      declare(tok[1]);
      edges.emplace_back(tok[0], tok[1]);
    } else {
      throw InputError(at + ": expected \"u w\", \"e u w\" or \"v u\"");
    }
  }
  try {
    return build_graph(std::move(labels), edges);
  } catch (const GraphError& e) {
    throw InputError(where + ": " + e.what());
  }
}

inline std::string graph_to_edge_list(const Graph& g) {
  std::string out;
  for (const auto& l : g.labels()) out += "v " + l + "\n";
  for (auto [u, v] : g.edges()) out += g.label(u) + " " + g.label(v) + "\n";
  return out;
}

namespace detail {

inline std::string dot_quote(const std::string& s) {
  std::string q = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') q += '\\';
    q += c;
  }
  return q + "\"";
}

} // namespace detail

inline std::string graph_to_dot(const Graph& g, const std::string& name = "G") {
  std::string out = "graph " + name + " {\n";
  for (const auto& l : g.labels()) out += "  " + detail::dot_quote(l) + ";\n";
  for (auto [u, v] : g.edges()) out += "  " + detail::dot_quote(g.label(u)) + " -- " + detail::dot_quote(g.label(v)) + ";\n";
  return out + "}\n";
}

/// Reads the subset of DOT written by graph_to_dot: node statements and
/// "a -- b" edge statements with quoted or bare identifiers.
inline Graph graph_from_dot(const std::string& text, const std::string& where = "dot") {
  std::size_t pos = 0;
  auto fail = [&](const std::string& what) { throw InputError(where + ": byte " + std::to_string(pos) + ": " + what); };
  auto skip = [&] {
    for (;;) {
      while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
      if (text.compare(pos, 2, "//") == 0 || (pos < text.size() && text[pos] == '#')) {
        while (pos < text.size() && text[pos] != '\n') ++pos;
      } else {
        return;
      }
    }
  };
  auto ident = [&]() -> std::string {
    skip();
    if (pos < text.size() && text[pos] == '"') {
      std::string s;
      for (++pos; pos < text.size() && text[pos] != '"'; ++pos) {
        if (text[pos] == '\\' && pos + 1 < text.size()) ++pos;
        s += text[pos];
      }
      if (pos == text.size()) fail("unterminated string");
      ++pos;
      return s;
    }
    const auto start = pos;
    while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_' || text[pos] == '.'))
      ++pos;
    if (start == pos) fail("expected an identifier");
    return text.substr(start, pos - start);
  };
  skip();
  if (text.compare(pos, 6, "strict") == 0) {
    pos += 6;
    skip();
  }
  if (text.compare(pos, 5, "graph") != 0) fail("expected \"graph\"");
  pos += 5;
  skip();
  if (pos < text.size() && text[pos] != '{') ident();
  skip();
  if (pos >= text.size() || text[pos] != '{') fail("expected '{'");
  ++pos;
  std::vector<std::string> labels;
  std::set<std::string> known;
  std::vector<std::pair<std::string, std::string>> edges;
  auto declare = [&](const std::string& l) {
    if (known.insert(l).second) labels.push_back(l);
  };
  for (;;) {
    skip();
    if (pos >= text.size()) fail("missing '}'");
    if (text[pos] == '}') break;
    if (text[pos] == ';') {
      ++pos;
      continue;
    }
    auto a = ident();
    declare(a);
    skip();
    while (text.compare(pos, 2, "--") == 0) {
      pos += 2;
      auto b = ident();
      declare(b);
      edges.emplace_back(a, b);
      a = b;
      skip();
    }
    if (pos < text.size() && text[pos] == '[') {
      while (pos < text.size() && text[pos] != ']') ++pos;
      if (pos == text.size()) fail("unterminated attribute list");
      ++pos;
    }
  }
  try {
    return build_graph(std::move(labels), edges);
  } catch (const GraphError& e) {
    throw InputError(where + ": " + e.what());
  }
}

/// Format chosen by extension: .json, .dot/.gv, anything else is an edge list.
inline Graph load_graph(const std::string& path) {
  const auto text = read_file(path);
  auto ends = [&](const char* ext) { return path.ends_with(ext); };
  if (ends(".json")) return graph_from_json(parse_json_text(text, path), path);
  if (ends(".dot") || ends(".gv")) return graph_from_dot(text, path);
  return graph_from_edge_list(text, path);
}

// --- traces ---------------------------------------------------------------------

using TraceOp = std::variant<Step, RStep>;

inline Json step_json(const Step& s) {
  return std::visit(
      [](const auto& st) -> Json {
        using T = std::decay_t<decltype(st)>;
        Json j;
        if constexpr (std::is_same_v<T, DeletePoint>) {
          j["op"] = "delete-point";
          j["v"] = st.vertex;
        } else if constexpr (std::is_same_v<T, AttachPoint>) {
          j["op"] = "attach-point";
          j["v"] = st.vertex;
          j["rim"] = st.rim;
        } else if constexpr (std::is_same_v<T, DeleteEdge>) {
          j["op"] = "delete-edge";
          j["u"] = st.u;
          j["v"] = st.v;
        } else {
          j["op"] = "attach-edge";
          j["u"] = st.u;
          j["v"] = st.v;
        }
        return j;
      },
      s);
}

inline Json trace_json(const HomotopyTrace& t) {
  Json j = Json::array();
  for (const auto& s : t.steps) j.push_back(step_json(s));
  return j;
}

inline Json rstep_json(const RStep& s) {
  return Json{{"op", "r-transform"}, {"u", s.u}, {"v", s.v}, {"x", s.x}};
}

inline std::vector<TraceOp> trace_ops_from_json(const Json& j, const std::string& where = "trace") {
  if (!j.is_array()) throw InputError(where + ": expected an array of steps");
  std::vector<TraceOp> ops;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto at = where + "[" + std::to_string(i) + "]";
    const auto op = detail::string_at(detail::field(j[i], "op", at), at + ".op");
    auto str = [&](const char* k) { return detail::string_at(detail::field(j[i], k, at), at + "." + k); };
    if (op == "delete-point") {
      ops.emplace_back(Step{DeletePoint{str("v")}});
    } else if (op == "attach-point") {
      AttachPoint a{str("v"), {}};
      const auto& rim_j = detail::field(j[i], "rim", at);
      if (!rim_j.is_array()) throw InputError(at + ".rim: expected an array");
      for (std::size_t k = 0; k < rim_j.size(); ++k)
        a.rim.push_back(detail::string_at(rim_j[k], at + ".rim[" + std::to_string(k) + "]"));
      ops.emplace_back(Step{std::move(a)});
    } else if (op == "delete-edge") {
      ops.emplace_back(Step{DeleteEdge{str("u"), str("v")}});
    } else if (op == "attach-edge") {
      ops.emplace_back(Step{AttachEdge{str("u"), str("v")}});
    } else if (op == "r-transform") {
      ops.emplace_back(RStep{str("u"), str("v"), str("x")});
    } else {
      throw InputError(at + ": unknown op \"" + op + "\"");
    }
  }
  return ops;
}

/// Replays ops from `source`, expanding each R-step against the graph it
/// applies to. Returns the final graph and the expanded trace.
inline std::pair<Graph, HomotopyTrace> replay_ops(const Graph& source, const std::vector<TraceOp>& ops,
                                                  TopologyCache& cache = default_cache()) {
  Graph cur = source;
  HomotopyTrace expanded;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    std::vector<Step> steps;
    if (auto* r = std::get_if<RStep>(&ops[i])) {
      try {
        steps = expand(cur, *r).steps;
      } catch (const std::invalid_argument& e) {
        throw RejectedStep("step " + std::to_string(i) + ": r-transform: " + e.what());
      }
    } else {
      steps.push_back(std::get<Step>(ops[i]));
    }
    for (const auto& s : steps) {
      try {
        cur = apply_transformation(cur, s, cache).graph;
      } catch (const RejectedStep& e) {
        throw RejectedStep("step " + std::to_string(i) + ": " + e.what());
      }
      expanded.steps.push_back(s);
    }
  }
  return {std::move(cur), std::move(expanded)};
}

// --- covers --------------------------------------------------------------------------

inline Json cell_json(const BoxCell& c) {
  Json lo = Json::array(), hi = Json::array();
  for (const auto& x : c.lo) lo.push_back(rational_json(x));
  for (const auto& x : c.hi) hi.push_back(rational_json(x));
  return Json{{"lo", std::move(lo)}, {"hi", std::move(hi)}};
}

inline BoxCell cell_from_json(const Json& j, const std::string& where) {
  return {rational_vector(detail::field(j, "lo", where), where + ".lo"),
          rational_vector(detail::field(j, "hi", where), where + ".hi")};
}

inline Json cover_json(const BoxCover& w) {
  Json periodic = Json::array();
  for (const auto& p : w.domain.period) periodic.push_back(p ? rational_json(*p) : Json(nullptr));
  Json cells = Json::array();
  for (const auto& c : w.cells) cells.push_back(cell_json(c));
  return Json{{"ambient", w.ambient}, {"n", w.n}, {"domain", Json{{"periodic", std::move(periodic)}}}, {"cells", std::move(cells)}};
}

inline BoxCover cover_from_json(const Json& j, const std::string& where = "cover") {
  const auto& amb = detail::field(j, "ambient", where);
  const auto& nj = detail::field(j, "n", where);
  if (!amb.is_number_unsigned() || !nj.is_number_integer()) throw InputError(where + ": \"ambient\" and \"n\" must be integers");
  const auto ambient = amb.get<std::size_t>();
  Domain domain = Domain::euclidean(ambient);
  if (auto d = j.find("domain"); d != j.end()) {
    if (!d->is_object()) throw InputError(where + ".domain: expected an object");
    for (const auto& [key, value] : d->items()) {
      static const std::set<std::string> reversing = {"glide", "twist", "twisted", "flip", "reflection", "antiperiodic",
                                                      "moebius", "klein", "projective"};
      if (reversing.contains(key))
        throw InputError(where + ".domain." + key +
                         ": orientation-reversing identifications are not supported for box covers; the catalog "
                         "provides klein16, moebius12 and rp11 as ready-made digital models");
      if (key != "periodic") throw InputError(where + ".domain: unknown key \"" + key + "\"");
      if (!value.is_array() || value.size() != ambient)
        throw InputError(where + ".domain.periodic: expected one entry per axis");
      for (std::size_t a = 0; a < ambient; ++a)
        if (!value[a].is_null())
          domain.period[a] = rational_from_json(value[a], where + ".domain.periodic[" + std::to_string(a) + "]");
    }
  }
  const auto& cj = detail::field(j, "cells", where);
  if (!cj.is_array()) throw InputError(where + ".cells: expected an array");
  std::vector<BoxCell> cells;
  for (std::size_t i = 0; i < cj.size(); ++i) cells.push_back(cell_from_json(cj[i], where + ".cells[" + std::to_string(i) + "]"));
  try {
    return make_cover(ambient, nj.get<int>(), std::move(domain), std::move(cells));
  } catch (const CoverError& e) {
    throw InputError(where + ": " + e.what());
  }
}

inline Json lcl_json(const LclReport& r) {
  Json v = Json::array();
  for (const auto& x : r.violations)
    v.push_back(Json{{"cells", x.cells}, {"clause", to_string(x.clause)}, {"detail", x.detail}});
  return Json{{"verdict", r.verdict}, {"violations", std::move(v)}};
}

inline Json trace_cover_json(const TraceCover& t) {
  return Json{{"neighbors", t.neighbors},
              {"cover", cover_json(t.cover)},
              {"trace_nerve", graph_json(t.trace_nerve)},
              {"neighbor_nerve", graph_json(t.neighbor_nerve)},
              {"identity_correspondence", t.identity_correspondence},
              {"isomorphic", t.isomorphic}};
}

// --- shapes --------------------------------------------------------------------------

struct ShapeFile {
  ShapeSpec shape;
  BoxCell window;
  std::optional<Rational> pitch;
};

inline ShapeFile shape_from_json(const Json& j, const std::string& where = "shape") {
  ShapeFile f;
  const auto kind = detail::string_at(detail::field(j, "kind", where), where + ".kind");
  if (kind == "region" || kind == "implicit-region") f.shape.kind = ShapeKind::Region;
  else if (kind == "hypersurface" || kind == "implicit-hypersurface") f.shape.kind = ShapeKind::Hypersurface;
  else if (kind == "curve" || kind == "parametric-curve") f.shape.kind = ShapeKind::Curve;
  else throw InputError(where + ".kind: unknown shape kind \"" + kind + "\"");
  f.window = cell_from_json(detail::field(j, "window", where), where + ".window");
  if (f.window.lo.size() != f.window.hi.size()) throw InputError(where + ".window: lo and hi differ in length");
  if (f.shape.kind == ShapeKind::Curve) {
    const auto& pts = detail::field(j, "points", where);
    if (!pts.is_array() || pts.empty()) throw InputError(where + ".points: expected a non-empty array");
    for (std::size_t i = 0; i < pts.size(); ++i)
      f.shape.points.push_back(rational_vector(pts[i], where + ".points[" + std::to_string(i) + "]"));
  } else {
    const auto text = detail::string_at(detail::field(j, "expr", where), where + ".expr");
    try {
      f.shape.f = parse_expr(text);
    } catch (const ExprError& e) {
      throw InputError(where + ".expr: " + e.what());
    }
  }
  if (auto p = j.find("pitch"); p != j.end()) f.pitch = rational_from_json(*p, where + ".pitch");
  return f;
}

// --- reports -------------------------------------------------------------------------

inline Json verdict_json(const ClassificationVerdict& v) {
  Json j{{"kind", to_string(v.kind)}};
  j["dimension"] = v.dimension ? Json(*v.dimension) : Json(nullptr);
  j["witness"] = v.witness ? Json(*v.witness) : Json(nullptr);
  return j;
}

inline Json invariants_json(const Graph& g) {
  const auto h = homology(g);
  return Json{{"euler", euler_characteristic(g)},
              {"betti_q", h.betti_rational},
              {"betti_z2", h.betti_mod2},
              {"torsion", h.torsion},
              {"cliques", clique_vector(g).counts}};
}

inline Json equivalence_json(const EquivalenceVerdict& v) {
  Json j{{"status", to_string(v.status)}};
  if (v.status == EquivalenceVerdict::Status::Equivalent) {
    j["left"] = trace_json(v.left);
    j["right"] = trace_json(v.right);
  } else if (v.status == EquivalenceVerdict::Status::Distinguished) {
    j["invariant"] = v.invariant;
    j["left_value"] = v.left_value;
    j["right_value"] = v.right_value;
  }
  return j;
}

inline Json digitize_json(const DigitizeReport& r) {
  Json cubes = Json::array();
  for (const auto& c : r.model.cubes) cubes.push_back(c);
  const auto& h = r.homology;
  return Json{{"pitch", rational_json(r.model.pitch)},
              {"model", Json{{"ambient", r.model.ambient}, {"cubes", std::move(cubes)}}},
              {"graph", graph_json(r.graph)},
              {"residue", graph_json(r.residue)},
              {"trace", trace_json(r.trace)},
              {"euler", r.euler},
              {"betti_q", h.betti_rational},
              {"betti_z2", h.betti_mod2},
              {"torsion", h.torsion}};
}

inline Json catalog_json(const CatalogEntry& e, const ValidationReport& rep) {
  const auto& x = e.expected;
  Json expected{{"kind", to_string(x.kind)},   {"dimension", x.dimension},      {"vertices", x.vertices},
                {"euler", x.euler},            {"betti_q", x.betti_rational}, {"betti_z2", x.betti_mod2}};
  if (x.torsion) expected["torsion"] = *x.torsion;
  Json checks = Json::array();
  for (const auto& c : rep.checks)
    checks.push_back(Json{{"check", c.check}, {"expected", c.expected}, {"actual", c.actual}, {"ok", c.ok}});
  Json j{{"name", e.name}, {"construction", e.construction}, {"expected", std::move(expected)}};
  if (!e.boundary.empty()) j["boundary"] = e.boundary;
  j["graph"] = graph_json(e.graph);
  j["validation"] = Json{{"ok", rep.ok}, {"checks", std::move(checks)}};
  return j;
}

} // namespace digitop
