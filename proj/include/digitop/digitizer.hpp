#pragma once

// Cubical models of shapes (implicit regions, implicit hypersurfaces and
// polylines) at a lattice pitch L, their intersection graphs, and the
// digitize -> reduce -> invariants pipeline.

#include <cctype>
#include <climits>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "digitop/covers.hpp"
#include "digitop/graph.hpp"
#include "digitop/homotopy.hpp"
#include "digitop/invariants.hpp"

namespace digitop {

// --- expressions ----------------------------------------------------------------

class ExprError : public std::invalid_argument {
public:
  ExprError(const std::string& what, std::size_t pos)
      : std::invalid_argument("at offset " + std::to_string(pos) + ": " + what), position(pos) {}
  std::size_t position;
};

/// Expression tree over x, y, z with rational constants.
struct Expr {
  enum class Op { Const, Var, Add, Sub, Mul, Abs, Min, Max, Sq, Neg };
  Op op = Op::Const;
  Rational value;  // Const
  int var = 0;     // Var: 0, 1, 2 for x, y, z
  std::vector<Expr> args;

  Rational eval(std::span<const Rational> point) const {
    switch (op) {
      case Op::Const: return value;
      case Op::Var: return point[static_cast<std::size_t>(var)];
      case Op::Add: {
        Rational s = 0;
        for (const auto& a : args) s += a.eval(point);
        return s;
      }
      case Op::Sub: {
        Rational s = args[0].eval(point);
        if (args.size() == 1) return -s;
        for (std::size_t i = 1; i < args.size(); ++i) s -= args[i].eval(point);
        return s;
      }
      case Op::Mul: {
        Rational s = 1;
        for (const auto& a : args) s *= a.eval(point);
        return s;
      }
      case Op::Abs: return abs(args[0].eval(point));
      case Op::Min:
      case Op::Max: {
        Rational s = args[0].eval(point);
        for (std::size_t i = 1; i < args.size(); ++i) {
          Rational t = args[i].eval(point);
          if (op == Op::Min ? t < s : t > s) s = t;
        }
        return s;
      }
      case Op::Sq: {
        Rational s = args[0].eval(point);
        return s * s;
      }
      case Op::Neg: return -args[0].eval(point);
    }
    return 0;
  }

  /// Highest variable index used, or -1.
  int max_var() const {
    int m = op == Op::Var ? var : -1;
    for (const auto& a : args) m = std::max(m, a.max_var());
    return m;
  }
};

namespace detail {

class ExprParser {
public:
  explicit ExprParser(std::string_view text) : s_(text) {}

  Expr parse() {
    auto e = term();
    skip();
    if (pos_ != s_.size()) throw ExprError("trailing input", pos_);
    return e;
  }

private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  std::pair<std::string_view, std::size_t> atom() {
    skip();
    const auto start = pos_;
    while (pos_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[pos_])) && s_[pos_] != '(' && s_[pos_] != ')')
      ++pos_;
    if (start == pos_) throw ExprError(pos_ == s_.size() ? "unexpected end of input" : "expected an atom", pos_);
    return {s_.substr(start, pos_ - start), start};
  }

  Expr term() {
    skip();
    if (pos_ == s_.size()) throw ExprError("unexpected end of input", pos_);
    if (s_[pos_] == ')') throw ExprError("unexpected ')'", pos_);
    if (s_[pos_] != '(') {
      auto [tok, at] = atom();
      Expr e;
      if (tok == "x" || tok == "y" || tok == "z") {
        e.op = Expr::Op::Var;
        e.var = tok[0] - 'x';
      } else if (auto r = parse_rational(tok)) {
        e.value = *r;
      } else {
        throw ExprError("unknown symbol '" + std::string(tok) + "'", at);
      }
      return e;
    }
    ++pos_;
    auto [name, at] = atom();
    static const std::map<std::string_view, std::pair<Expr::Op, std::pair<std::size_t, std::size_t>>> ops = {
        {"+", {Expr::Op::Add, {1, SIZE_MAX}}},   {"-", {Expr::Op::Sub, {1, SIZE_MAX}}},
        {"*", {Expr::Op::Mul, {1, SIZE_MAX}}},   {"abs", {Expr::Op::Abs, {1, 1}}},
        {"min", {Expr::Op::Min, {1, SIZE_MAX}}}, {"max", {Expr::Op::Max, {1, SIZE_MAX}}},
        {"sq", {Expr::Op::Sq, {1, 1}}},          {"neg", {Expr::Op::Neg, {1, 1}}}};
    auto it = ops.find(name);
    if (it == ops.end()) throw ExprError("unknown operator '" + std::string(name) + "'", at);
    Expr e;
    e.op = it->second.first;
    for (;;) {
      skip();
      if (pos_ == s_.size()) throw ExprError("missing ')'", pos_);
      if (s_[pos_] == ')') break;
      e.args.push_back(term());
    }
    const auto [lo, hi] = it->second.second;
    if (e.args.size() < lo || e.args.size() > hi)
      throw ExprError("wrong number of arguments to '" + std::string(name) + "'", at);
    ++pos_;
    return e;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

} // namespace detail

/// Prefix notation, e.g. "(- (+ (sq x) (sq y)) 1)".
inline Expr parse_expr(std::string_view text) { return detail::ExprParser(text).parse(); }

// --- shapes and cubical models -------------------------------------------------------

enum class ShapeKind { Region, Hypersurface, Curve };

inline const char* to_string(ShapeKind k) {
  switch (k) {
    case ShapeKind::Region: return "region";
    case ShapeKind::Hypersurface: return "hypersurface";
    default: return "curve";
  }
}

struct ShapeSpec {
  ShapeKind kind = ShapeKind::Region;
  Expr f;                                    // Region: f <= 0; Hypersurface: f = 0
  std::vector<std::vector<Rational>> points; // Curve: polyline vertices
};

using Cube = std::vector<std::int64_t>;

struct CubicalModel {
  Rational pitch;
  std::size_t ambient = 0;
  std::set<Cube> cubes;
};

/// Sample offsets per axis within a cube: 0, 1/2 and 1 of the pitch.
inline constexpr int kSamplesPerAxis = 3;

namespace detail {

inline std::int64_t floor_int(const Rational& r) {
  return static_cast<std::int64_t>(numerator(floor_div(r, Rational(1))));
}

inline std::int64_t ceil_int(const Rational& r) { return -floor_int(-r); }

} // namespace detail

/// Every cube [L x, L (x+1)] inside the window judged to meet the shape.
inline CubicalModel cubical_model(const ShapeSpec& shape, const BoxCell& window, const Rational& pitch) {
  if (pitch <= 0) throw std::invalid_argument("pitch must be positive");
  const auto p = window.ambient();
  if (p < 1 || p > 3) throw std::invalid_argument("ambient dimension must be 1, 2 or 3");
  for (std::size_t a = 0; a < p; ++a)
    if (window.hi[a] <= window.lo[a]) throw std::invalid_argument("window must have positive extent on every axis");
  if (shape.kind != ShapeKind::Curve && shape.f.max_var() >= static_cast<int>(p))
    throw std::invalid_argument("expression uses a coordinate beyond the window's dimension");
  CubicalModel model{pitch, p, {}};
  std::vector<std::int64_t> first(p), last(p);
  for (std::size_t a = 0; a < p; ++a) {
    first[a] = detail::floor_int(window.lo[a] / pitch);
    last[a] = detail::ceil_int(window.hi[a] / pitch) - 1;
  }

  if (shape.kind == ShapeKind::Curve) {
    for (const auto& pt : shape.points)
      if (pt.size() != p) throw std::invalid_argument("curve point of wrong dimension");
    auto mark = [&](const std::vector<Rational>& pt) {
      // every closed cube containing the point
      std::vector<std::vector<std::int64_t>> choices(p);
      for (std::size_t a = 0; a < p; ++a) {
        const Rational t = pt[a] / pitch;
        const auto f = detail::floor_int(t);
        if (Rational(f) == t) choices[a] = {f - 1, f};
        else choices[a] = {f};
      }
      Cube c(p);
      std::function<void(std::size_t)> go = [&](std::size_t a) {
        if (a == p) {
          model.cubes.insert(c);
          return;
        }
        for (auto v : choices[a]) {
          if (v < first[a] || v > last[a]) continue;
          c[a] = v;
          go(a + 1);
        }
      };
      go(0);
    };
    const Rational step = pitch / 4;
    for (std::size_t i = 0; i < shape.points.size(); ++i) {
      if (i + 1 == shape.points.size()) {
        mark(shape.points[i]);
        break;
      }
      const auto &a = shape.points[i], &b = shape.points[i + 1];
      Rational l1 = 0;  // the L1 length bounds the Euclidean one
      for (std::size_t t = 0; t < p; ++t) l1 += abs(b[t] - a[t]);
      const auto m = std::max<std::int64_t>(1, detail::ceil_int(l1 / step));
      for (std::int64_t s = 0; s < m; ++s) {
        std::vector<Rational> q(p);
        for (std::size_t t = 0; t < p; ++t) q[t] = a[t] + (b[t] - a[t]) * Rational(s, m);
        mark(q);
      }
    }
    return model;
  }

  Cube c(p);
  std::vector<Rational> point(p);
  std::function<void(std::size_t)> each_cube = [&](std::size_t a) {
    if (a < p) {
      for (auto v = first[a]; v <= last[a]; ++v) {
        c[a] = v;
        each_cube(a + 1);
      }
      return;
    }
    bool neg = false, pos = false, zero = false;
    std::vector<int> off(p, 0);
    for (;;) {
      for (std::size_t t = 0; t < p; ++t) point[t] = pitch * (Rational(c[t]) + Rational(off[t], 2));
      const auto v = shape.f.eval(point);
      if (v < 0) neg = true;
      else if (v > 0) pos = true;
      else zero = true;
      std::size_t t = 0;
      while (t < p && ++off[t] == kSamplesPerAxis) off[t++] = 0;
      if (t == p) break;
    }
    const bool hit = shape.kind == ShapeKind::Region ? (neg || zero) : (zero || (neg && pos));
    if (hit) model.cubes.insert(c);
  };
  each_cube(0);
  return model;
}

inline std::string cube_label(const Cube& c) {
  std::string s = "(";
  for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
  return s + ")";
}

/// Closed cubes meet iff their lattice coordinates differ by at most one on
/// every axis.
inline Graph model_graph(const CubicalModel& m) {
  std::vector<std::string> labels;
  std::map<Cube, VertexId> index;
  for (const auto& c : m.cubes) {
    index.emplace(c, static_cast<VertexId>(labels.size()));
    labels.push_back(cube_label(c));
  }
  std::vector<Edge> edges;
  const auto p = m.ambient;
  for (const auto& [c, i] : index) {
    std::vector<int> off(p, -1);
    Cube d(p);
    for (;;) {
      bool self = true;
      for (std::size_t t = 0; t < p; ++t) {
        d[t] = c[t] + off[t];
        self = self && off[t] == 0;
      }
      if (!self)
        if (auto it = index.find(d); it != index.end() && i < it->second) edges.push_back({i, it->second});
      std::size_t t = 0;
      while (t < p && ++off[t] == 2) off[t++] = -1;
      if (t == p) break;
    }
  }
  return Graph::from_indices(std::move(labels), edges);
}

struct DigitizeReport {
  CubicalModel model;
  Graph graph;
  Graph residue;
  HomotopyTrace trace;
  std::int64_t euler = 0;
  HomologyProfile homology;
};

inline DigitizeReport digitize_reduce(const ShapeSpec& shape, const BoxCell& window, const Rational& pitch,
                                      TopologyCache& cache = default_cache()) {
  DigitizeReport r;
  r.model = cubical_model(shape, window, pitch);
  r.graph = model_graph(r.model);
  auto red = reduce(r.graph, cache);
  r.residue = std::move(red.residue);
  r.trace = std::move(red.trace);
  r.euler = euler_characteristic(r.graph);
  r.homology = homology(r.graph);
  return r;
}

/// Binary PGM of a 2-dimensional model; occupied cubes are black, rows run
/// from high y to low y.
inline void write_pgm(std::ostream& os, const CubicalModel& m) {
  if (m.ambient != 2) throw std::invalid_argument("PGM export needs a 2-dimensional model");
  if (m.cubes.empty()) {
    os << "P5\n0 0\n255\n";
    return;
  }
  std::int64_t x0 = INT64_MAX, x1 = INT64_MIN, y0 = INT64_MAX, y1 = INT64_MIN;
  for (const auto& c : m.cubes) {
    x0 = std::min(x0, c[0]);
    x1 = std::max(x1, c[0]);
    y0 = std::min(y0, c[1]);
    y1 = std::max(y1, c[1]);
  }
  os << "P5\n" << (x1 - x0 + 1) << " " << (y1 - y0 + 1) << "\n255\n";
  for (auto y = y1; y >= y0; --y)
    for (auto x = x0; x <= x1; ++x) os.put(m.cubes.contains(Cube{x, y}) ? char(0) : char(255));
}

} // namespace digitop
