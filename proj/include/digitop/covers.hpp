#pragma once

// Covers by axis-aligned boxes with rational corners, in Euclidean space or a
// flat torus (some axes periodic). Provides exact intersections, the LCL
// validity check, the nerve, boundary-trace covers and merging of cells whose
// union is a box.

#include <algorithm>
#include <cctype>
#include <functional>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "digitop/canonical.hpp"
#include "digitop/graph.hpp"

namespace digitop {

using Rational = boost::multiprecision::cpp_rational;

class CoverError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

inline std::string to_string(const Rational& r) { return r.str(); }

inline Rational floor_div(const Rational& a, const Rational& p) {
  Rational q = a / p;
  boost::multiprecision::cpp_int f = numerator(q) / denominator(q);
  if (f * denominator(q) > numerator(q)) --f;  // truncation went up for negatives
  return Rational(f);
}

/// Parses an exact rational literal: integer, decimal or p/q.
inline std::optional<Rational> parse_rational(std::string_view s) {
  if (s.empty()) return std::nullopt;
  std::size_t i = 0;
  bool neg = false;
  if (s[0] == '-' || s[0] == '+') {
    neg = s[0] == '-';
    i = 1;
  }
  if (i == s.size()) return std::nullopt;
  boost::multiprecision::cpp_int num = 0, den = 1;
  bool digits = false, dot = false, slash = false;
  boost::multiprecision::cpp_int sden = 0;
  for (; i < s.size(); ++i) {
    const char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits = true;
      if (slash) sden = sden * 10 + (c - '0');
      else {
        num = num * 10 + (c - '0');
        if (dot) den *= 10;
      }
    } else if (c == '.' && !dot && !slash) {
      dot = true;
    } else if (c == '/' && !dot && !slash && digits) {
      slash = true;
    } else {
      return std::nullopt;
    }
  }
  if (!digits) return std::nullopt;
  if (slash) {
    if (sden == 0) return std::nullopt;
    den *= sden;
  }
  Rational r(num, den);
  return neg ? Rational(-r) : r;
}

/// a reduced into [0, p).
inline Rational wrap(const Rational& a, const Rational& p) { return a - floor_div(a, p) * p; }

struct BoxCell {
  std::vector<Rational> lo, hi;

  std::size_t ambient() const noexcept { return lo.size(); }
  /// Number of axes with positive extent.
  std::size_t dimension() const {
    std::size_t d = 0;
    for (std::size_t a = 0; a < lo.size(); ++a)
      if (hi[a] > lo[a]) ++d;
    return d;
  }
  friend bool operator==(const BoxCell&, const BoxCell&) = default;
};

inline std::string to_string(const BoxCell& c) {
  std::string s;
  for (std::size_t a = 0; a < c.ambient(); ++a) {
    if (a) s += "x";
    s += c.lo[a] == c.hi[a] ? "{" + to_string(c.lo[a]) + "}" : "[" + to_string(c.lo[a]) + "," + to_string(c.hi[a]) + "]";
  }
  return s;
}

struct Domain {
  /// period[a] set for periodic axes.
  std::vector<std::optional<Rational>> period;

  static Domain euclidean(std::size_t ambient) { return {std::vector<std::optional<Rational>>(ambient)}; }
  static Domain torus(std::vector<Rational> periods) {
    Domain d;
    for (auto& p : periods) d.period.emplace_back(std::move(p));
    return d;
  }
  bool periodic() const {
    return std::any_of(period.begin(), period.end(), [](const auto& p) { return p.has_value(); });
  }
  friend bool operator==(const Domain&, const Domain&) = default;
};

struct BoxCover {
  std::size_t ambient = 0;
  int n = 0;
  Domain domain;
  std::vector<BoxCell> cells;
};

/// Validates and normalises: every cell has dimension n, periodic extents are
/// below the period and periodic lower corners lie in [0, P).
inline BoxCover make_cover(std::size_t ambient, int n, Domain domain, std::vector<BoxCell> cells) {
  if (domain.period.size() != ambient)
    throw CoverError("domain has " + std::to_string(domain.period.size()) + " axes, ambient dimension is " +
                     std::to_string(ambient));
  if (n < 0 || static_cast<std::size_t>(n) > ambient)
    throw CoverError("cell dimension " + std::to_string(n) + " does not fit ambient dimension " + std::to_string(ambient));
  for (const auto& p : domain.period)
    if (p && *p <= 0) throw CoverError("periods must be positive");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    auto& c = cells[i];
    const auto where = "cell " + std::to_string(i) + ": ";
    if (c.lo.size() != ambient || c.hi.size() != ambient) throw CoverError(where + "wrong number of coordinates");
    for (std::size_t a = 0; a < ambient; ++a) {
      if (c.hi[a] < c.lo[a]) throw CoverError(where + "hi < lo on axis " + std::to_string(a));
      if (const auto& p = domain.period[a]) {
        if (c.hi[a] - c.lo[a] >= *p) throw CoverError(where + "extent reaches the period on axis " + std::to_string(a));
        const Rational shift = c.lo[a] - wrap(c.lo[a], *p);
        c.lo[a] -= shift;
        c.hi[a] -= shift;
      }
    }
    if (c.dimension() != static_cast<std::size_t>(n))
      throw CoverError(where + "has dimension " + std::to_string(c.dimension()) + ", expected " + std::to_string(n));
  }
  return BoxCover{ambient, n, std::move(domain), std::move(cells)};
}

// --- intersections --------------------------------------------------------------

using Interval = std::pair<Rational, Rational>;

/// Intersection of a family of cells, axis by axis. On a periodic axis the
/// result may consist of several pieces (lifts relative to the first cell).
struct IntersectionPieces {
  std::vector<std::vector<Interval>> axes;

  bool empty() const {
    return std::any_of(axes.begin(), axes.end(), [](const auto& a) { return a.empty(); });
  }
  bool connected() const {
    return !empty() && std::all_of(axes.begin(), axes.end(), [](const auto& a) { return a.size() == 1; });
  }
};

inline IntersectionPieces intersection_pieces(const Domain& domain, std::span<const BoxCell> family) {
  if (family.empty()) throw CoverError("intersection of an empty family");
  const auto p = family.front().ambient();
  for (const auto& c : family)
    if (c.ambient() != p) throw CoverError("cells of mixed ambient dimension");
  if (domain.period.size() != p) throw CoverError("domain and cells disagree on ambient dimension");
  IntersectionPieces out;
  out.axes.resize(p);
  for (std::size_t a = 0; a < p; ++a) {
    std::vector<Interval> cur{{family.front().lo[a], family.front().hi[a]}};
    for (std::size_t i = 1; i < family.size() && !cur.empty(); ++i) {
      const auto &lo = family[i].lo[a], &hi = family[i].hi[a];
      std::vector<Interval> next;
      for (const auto& [clo, chi] : cur) {
        if (const auto& per = domain.period[a]) {
          // shifts k with [lo + kP, hi + kP] meeting [clo, chi]
          auto k = floor_div(clo - hi, *per);
          for (; lo + k * *per <= chi; k += 1) {
            const Rational slo = lo + k * *per, shi = hi + k * *per;
            Rational l = std::max(clo, slo), h = std::min(chi, shi);
            if (l <= h) next.emplace_back(l, h);
          }
        } else {
          Rational l = std::max(clo, lo), h = std::min(chi, hi);
          if (l <= h) next.emplace_back(l, h);
        }
      }
      cur = std::move(next);
    }
    out.axes[a] = std::move(cur);
  }
  return out;
}

/// The common part of the family as a box, or nothing when empty. Throws when
/// the intersection wraps into several pieces on a periodic axis.
inline std::optional<BoxCell> intersect_cells(const Domain& domain, std::span<const BoxCell> family) {
  auto pieces = intersection_pieces(domain, family);
  if (pieces.empty()) return std::nullopt;
  if (!pieces.connected()) throw CoverError("intersection is disconnected on a periodic axis");
  BoxCell out;
  for (std::size_t a = 0; a < pieces.axes.size(); ++a) {
    auto [lo, hi] = pieces.axes[a].front();
    if (const auto& per = domain.period[a]) {
      const Rational shift = lo - wrap(lo, *per);
      lo -= shift;
      hi -= shift;
    }
    out.lo.push_back(lo);
    out.hi.push_back(hi);
  }
  return out;
}

inline std::optional<BoxCell> intersect_cells(const BoxCover& w, std::span<const std::size_t> idx) {
  std::vector<BoxCell> family;
  for (auto i : idx) family.push_back(w.cells.at(i));
  return intersect_cells(w.domain, family);
}

/// E lies in the boundary of D: some positive-extent axis of D on which E is
/// a single coordinate equal to D's lo or hi (modulo the period).
inline bool in_boundary(const Domain& domain, const BoxCell& e, const BoxCell& d) {
  for (std::size_t a = 0; a < d.ambient(); ++a) {
    if (d.hi[a] == d.lo[a] || e.hi[a] != e.lo[a]) continue;
    if (const auto& per = domain.period[a]) {
      if (wrap(e.lo[a] - d.lo[a], *per) == 0 || wrap(e.lo[a] - d.hi[a], *per) == 0) return true;
    } else if (e.lo[a] == d.lo[a] || e.lo[a] == d.hi[a]) {
      return true;
    }
  }
  return false;
}

// --- LCL validation -----------------------------------------------------------------

enum class Clause { LC, LLDimension, LLBoundary };

inline const char* to_string(Clause c) {
  switch (c) {
    case Clause::LC: return "LC";
    case Clause::LLDimension: return "LL-dimension";
    default: return "LL-boundary";
  }
}

struct Violation {
  std::vector<std::size_t> cells;
  Clause clause;
  std::string detail;
};

struct LclReport {
  bool verdict = true;
  std::vector<Violation> violations;
};

namespace detail {

inline std::vector<std::vector<bool>> meets(const BoxCover& w) {
  const auto m = w.cells.size();
  std::vector<std::vector<bool>> out(m, std::vector<bool>(m, false));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      const BoxCell pair[] = {w.cells[i], w.cells[j]};
      out[i][j] = out[j][i] = !intersection_pieces(w.domain, pair).empty();
    }
  return out;
}

inline std::string list(const std::vector<std::size_t>& idx) {
  std::string s = "{";
  for (std::size_t i = 0; i < idx.size(); ++i) s += (i ? "," : "") + std::to_string(idx[i]);
  return s + "}";
}

} // namespace detail

/// LC (pairwise-meeting subfamilies share a point) and LL (every k-wise
/// intersection, k >= 2, is an (n+1-k)-cell in the boundary of each member).
/// Subfamilies are the cliques of the pairwise-intersection graph, up to n+2
/// cells; a nonempty (n+2)-wise intersection is itself a violation.
inline LclReport validate_lcl(const BoxCover& w) {
  LclReport report;
  const auto m = w.cells.size();
  const auto meet = detail::meets(w);
  const std::size_t max_k = static_cast<std::size_t>(w.n) + 2;
  std::vector<std::size_t> family;
  std::vector<BoxCell> members;
  auto violate = [&](Clause c, std::string detail) {
    report.violations.push_back({family, c, std::move(detail)});
  };

  // returns whether the subfamily intersection is nonempty
  auto check = [&]() {
    const auto k = family.size();
    auto pieces = intersection_pieces(w.domain, members);
    if (pieces.empty()) {
      violate(Clause::LC, "cells " + detail::list(family) + " meet pairwise but have no common point");
      return false;
    }
    const auto need = static_cast<long>(w.n) + 1 - static_cast<long>(k);
    if (!pieces.connected()) {
      violate(Clause::LLDimension, "intersection of " + detail::list(family) + " is disconnected");
      return true;
    }
    auto e = intersect_cells(w.domain, members);
    const auto dim = static_cast<long>(e->dimension());
    if (dim != need)
      violate(Clause::LLDimension, "intersection " + to_string(*e) + " of " + detail::list(family) + " has dimension " +
                                       std::to_string(dim) + ", expected " + std::to_string(need));
    for (std::size_t t = 0; t < k; ++t)
      if (!in_boundary(w.domain, *e, members[t])) {
        violate(Clause::LLBoundary, "intersection " + to_string(*e) + " of " + detail::list(family) +
                                        " is not in the boundary of cell " + std::to_string(family[t]));
        break;
      }
    return true;
  };

  std::function<void(std::size_t)> grow = [&](std::size_t from) {
    if (family.size() >= 2 && !check()) return;
    if (family.size() >= max_k) return;
    for (std::size_t j = from; j < m; ++j) {
      if (!std::all_of(family.begin(), family.end(), [&](std::size_t i) { return meet[i][j]; })) continue;
      family.push_back(j);
      members.push_back(w.cells[j]);
      grow(j + 1);
      family.pop_back();
      members.pop_back();
    }
  };
  grow(0);
  report.verdict = report.violations.empty();
  return report;
}

// --- nerve --------------------------------------------------------------------------

inline std::string cell_label(std::size_t i) { return "D" + std::to_string(i); }

/// One vertex per cell; an edge whenever two cells meet.
inline Graph nerve(const BoxCover& w) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < w.cells.size(); ++i) labels.push_back(cell_label(i));
  const auto meet = detail::meets(w);
  std::vector<Edge> edges;
  for (VertexId i = 0; i < w.cells.size(); ++i)
    for (VertexId j = i + 1; j < w.cells.size(); ++j)
      if (meet[i][j]) edges.push_back({i, j});
  return Graph::from_indices(std::move(labels), edges);
}

// --- boundary traces ------------------------------------------------------------------

struct TraceCover {
  /// C_j = D_i meet D_j for each neighbour j, in index order.
  BoxCover cover;
  std::vector<std::size_t> neighbors;
  /// Nerve of the trace cover, vertices labelled by the neighbour cells.
  Graph trace_nerve;
  /// Rim of D_i in the nerve of W.
  Graph neighbor_nerve;
  /// The correspondence C_j <-> D_j preserves edges exactly.
  bool identity_correspondence = false;
  /// Canonical keys agree.
  bool isomorphic = false;
};

inline TraceCover boundary_trace_cover(const BoxCover& w, std::size_t i) {
  if (i >= w.cells.size()) throw CoverError("cell index " + std::to_string(i) + " out of range");
  if (w.n < 1) throw CoverError("boundary traces need cells of dimension at least 1");
  TraceCover out;
  std::vector<BoxCell> traces;
  for (std::size_t j = 0; j < w.cells.size(); ++j) {
    if (j == i) continue;
    const BoxCell pair[] = {w.cells[i], w.cells[j]};
    auto pieces = intersection_pieces(w.domain, pair);
    if (pieces.empty()) continue;
    auto c = intersect_cells(w.domain, pair);
    if (c->dimension() != static_cast<std::size_t>(w.n - 1))
      throw CoverError("trace of cell " + std::to_string(j) + " on cell " + std::to_string(i) + " is not an (n-1)-cell");
    out.neighbors.push_back(j);
    traces.push_back(std::move(*c));
  }
  if (out.neighbors.empty()) throw CoverError("cell " + std::to_string(i) + " has no neighbours");
  out.cover = make_cover(w.ambient, w.n - 1, w.domain, std::move(traces));
  auto plain = nerve(out.cover);
  std::vector<std::string> labels;
  for (auto j : out.neighbors) labels.push_back(cell_label(j));
  auto edges = plain.edges();
  out.trace_nerve = Graph::from_indices(std::move(labels), edges);
  out.neighbor_nerve = rim(nerve(w), static_cast<VertexId>(i));
  out.identity_correspondence = out.trace_nerve == out.neighbor_nerve;
  out.isomorphic = canonical_key(out.trace_nerve) == canonical_key(out.neighbor_nerve);
  return out;
}

// --- merging ------------------------------------------------------------------------

struct MergeResult {
  BoxCover cover;
  LclReport report;
};

namespace detail {

// Lifts of the chosen cells into one chart so that they form a connected
// union, or nothing when they cannot be connected.
inline std::optional<std::vector<BoxCell>> lift_connected(const Domain& domain, std::vector<BoxCell> cells) {
  std::vector<bool> placed(cells.size(), false);
  placed[0] = true;
  for (std::size_t round = 1; round < cells.size(); ++round) {
    bool found = false;
    for (std::size_t j = 0; j < cells.size() && !found; ++j) {
      if (placed[j]) continue;
      for (std::size_t p = 0; p < cells.size() && !found; ++p) {
        if (!placed[p]) continue;
        BoxCell lifted = cells[j];
        bool ok = true;
        for (std::size_t a = 0; a < lifted.ambient() && ok; ++a) {
          const auto& per = domain.period[a];
          if (!per) {
            ok = lifted.lo[a] <= cells[p].hi[a] && cells[p].lo[a] <= lifted.hi[a];
            continue;
          }
          // smallest shift whose lift reaches the placed cell
          const Rational k = -floor_div(lifted.hi[a] - cells[p].lo[a], *per);
          ok = lifted.lo[a] + k * *per <= cells[p].hi[a] && cells[p].lo[a] <= lifted.hi[a] + k * *per;
          lifted.lo[a] += k * *per;
          lifted.hi[a] += k * *per;
        }
        if (ok) {
          cells[j] = std::move(lifted);
          placed[j] = true;
          found = true;
        }
      }
    }
    if (!found) return std::nullopt;
  }
  return cells;
}

} // namespace detail

/// Replaces the chosen cells by their union, which must be a box; the result
/// must again be an LCL collection.
inline MergeResult merge_cells(const BoxCover& w, std::span<const std::size_t> subset) {
  std::set<std::size_t> chosen(subset.begin(), subset.end());
  if (chosen.empty()) throw CoverError("nothing to merge");
  if (chosen.size() != subset.size()) throw CoverError("duplicate cell index in merge");
  if (*chosen.rbegin() >= w.cells.size()) throw CoverError("cell index out of range in merge");
  std::vector<BoxCell> picked;
  for (auto i : chosen) picked.push_back(w.cells[i]);
  auto lifted = detail::lift_connected(w.domain, picked);
  if (!lifted) throw CoverError("union is not a box: cells are not connected");
  const auto p = w.ambient;
  BoxCell box = lifted->front();
  for (const auto& c : *lifted)
    for (std::size_t a = 0; a < p; ++a) {
      if ((c.hi[a] > c.lo[a]) != (box.hi[a] > box.lo[a]) || (c.hi[a] == c.lo[a] && c.lo[a] != box.lo[a]))
        throw CoverError("union is not a box: cells lie in different flats");
      box.lo[a] = std::min(box.lo[a], c.lo[a]);
      box.hi[a] = std::max(box.hi[a], c.hi[a]);
    }
  for (std::size_t a = 0; a < p; ++a)
    if (w.domain.period[a] && box.hi[a] - box.lo[a] >= *w.domain.period[a])
      throw CoverError("union is not a box: it wraps around a periodic axis");
  // every cell of the compressed grid inside the bounding box must be covered
  std::vector<std::size_t> axes;
  std::vector<std::vector<Rational>> cuts(p);
  for (std::size_t a = 0; a < p; ++a) {
    if (box.hi[a] == box.lo[a]) continue;
    axes.push_back(a);
    for (const auto& c : *lifted) {
      cuts[a].push_back(c.lo[a]);
      cuts[a].push_back(c.hi[a]);
    }
    std::sort(cuts[a].begin(), cuts[a].end());
    cuts[a].erase(std::unique(cuts[a].begin(), cuts[a].end()), cuts[a].end());
  }
  std::vector<std::size_t> at(axes.size(), 0);
  for (;;) {
    bool covered = false;
    for (const auto& c : *lifted) {
      bool inside = true;
      for (std::size_t t = 0; t < axes.size() && inside; ++t) {
        const auto a = axes[t];
        const Rational mid = (cuts[a][at[t]] + cuts[a][at[t] + 1]) / 2;
        inside = c.lo[a] < mid && mid < c.hi[a];
      }
      if (inside) {
        covered = true;
        break;
      }
    }
    if (!covered) throw CoverError("union is not a box: the bounding box is not covered");
    std::size_t t = 0;
    while (t < axes.size() && ++at[t] + 1 >= cuts[axes[t]].size()) at[t++] = 0;
    if (t == axes.size()) break;
  }
  std::vector<BoxCell> cells;
  for (std::size_t i = 0; i < w.cells.size(); ++i) {
    if (i == *chosen.begin()) cells.push_back(box);
    else if (!chosen.contains(i)) cells.push_back(w.cells[i]);
  }
  MergeResult out{make_cover(w.ambient, w.n, w.domain, std::move(cells)), {}};
  out.report = validate_lcl(out.cover);
  if (!out.report.verdict) {
    const auto& v = out.report.violations.front();
    throw CoverError(std::string("merged cover is not LCL: ") + to_string(v.clause) + " violation, " + v.detail);
  }
  return out;
}

// --- standard covers ------------------------------------------------------------------

/// m unit segments [i, i+1] on a line.
inline BoxCover segment_row_cover(std::size_t m) {
  std::vector<BoxCell> cells;
  for (std::size_t i = 0; i < m; ++i) cells.push_back({{Rational(i)}, {Rational(i + 1)}});
  return make_cover(1, 1, Domain::euclidean(1), std::move(cells));
}

/// m unit segments covering a circle of length m.
inline BoxCover periodic_segment_cover(std::size_t m) {
  std::vector<BoxCell> cells;
  for (std::size_t i = 0; i < m; ++i) cells.push_back({{Rational(i)}, {Rational(i + 1)}});
  return make_cover(1, 1, Domain::torus({Rational(m)}), std::move(cells));
}

/// The six faces of the unit cube, covering its boundary sphere.
inline BoxCover cube_boundary_cover() {
  std::vector<BoxCell> cells;
  for (std::size_t a = 0; a < 3; ++a)
    for (int side = 0; side < 2; ++side) {
      BoxCell c{{0, 0, 0}, {1, 1, 1}};
      c.lo[a] = c.hi[a] = side;
      cells.push_back(std::move(c));
    }
  return make_cover(3, 2, Domain::euclidean(3), std::move(cells));
}

/// 16 unit bricks on the flat 4x4 torus; row r is shifted by r/2.
/// Brick (c, r) is cell 4r + c.
inline BoxCover brick_wall_torus_cover() {
  std::vector<BoxCell> cells;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      const Rational x = Rational(c) + Rational(r, 2);
      cells.push_back({{x, Rational(r)}, {x + 1, Rational(r + 1)}});
    }
  return make_cover(2, 2, Domain::torus({4, 4}), std::move(cells));
}

/// m x m aligned unit squares on the flat m x m torus.
inline BoxCover aligned_grid_torus_cover(std::size_t m = 4) {
  std::vector<BoxCell> cells;
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < m; ++c) cells.push_back({{Rational(c), Rational(r)}, {Rational(c + 1), Rational(r + 1)}});
  return make_cover(2, 2, Domain::torus({Rational(m), Rational(m)}), std::move(cells));
}

} // namespace digitop
