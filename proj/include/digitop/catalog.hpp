#pragma once

// Named digital spheres, disks and closed/bordered surfaces. Each entry is
// validated from scratch (recognizer, Euler characteristic, homology) the
// first time it is requested.

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "digitop/classify.hpp"
#include "digitop/graph.hpp"
#include "digitop/invariants.hpp"

namespace digitop {

/// Which recognizer an entry must pass.
enum class Recognizer { Sphere, Manifold, Disk, Band };

inline const char* to_string(Recognizer r) {
  switch (r) {
    case Recognizer::Sphere: return "Sphere";
    case Recognizer::Manifold: return "Manifold";
    case Recognizer::Disk: return "Disk";
    default: return "Band";
  }
}

struct Expected {
  Recognizer kind = Recognizer::Manifold;
  int dimension = 0;
  std::size_t vertices = 0;
  std::int64_t euler = 0;
  std::vector<std::int64_t> betti_rational;
  std::vector<std::int64_t> betti_mod2;
  /// Checked when present.
  std::optional<std::vector<std::vector<std::int64_t>>> torsion;
};

struct CatalogEntry {
  std::string name;
  Graph graph;
  Expected expected;
  std::string construction;
  /// Boundary vertices, for disks.
  std::vector<std::string> boundary;
};

struct CheckResult {
  std::string check;
  std::string expected;
  std::string actual;
  bool ok = false;
};

struct ValidationReport {
  bool ok = true;
  std::vector<CheckResult> checks;
};

class CatalogError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline Graph indexed_graph(std::string_view prefix, std::size_t n,
                           std::initializer_list<std::pair<VertexId, VertexId>> edges) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::string(prefix) + std::to_string(i));
  std::vector<Edge> e(edges.begin(), edges.end());
  return Graph::from_indices(std::move(labels), e);
}

inline std::string torus_label(int c, int r) { return "(" + std::to_string(c) + "," + std::to_string(r) + ")"; }

// Triangular lattice Z^2 with neighbours (+-1,0), (0,+-1), (-1,+1), (+1,-1),
// modulo the lattice spanned by (4,0) and (-shift,4).
inline Graph torus_quotient(int shift) {
  std::vector<std::string> labels;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) labels.push_back(torus_label(c, r));
  auto id = [&](int c, int r) {
    const int wraps = (r >= 0 ? r : r - 3) / 4;
    c += wraps * shift;
    r -= 4 * wraps;
    return static_cast<VertexId>(4 * r + ((c % 4) + 4) % 4);
  };
  std::vector<Edge> edges;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      const auto v = id(c, r);
      for (auto [dc, dr] : {std::pair{1, 0}, {0, 1}, {-1, 1}}) edges.push_back({v, id(c + dc, r + dr)});
    }
  return Graph::from_indices(std::move(labels), edges);
}

inline Graph icosahedron() {
  // t, upper ring u0..u4, lower ring l0..l4, b
  std::vector<std::string> labels{"t"};
  for (int i = 0; i < 5; ++i) labels.push_back("u" + std::to_string(i));
  for (int i = 0; i < 5; ++i) labels.push_back("l" + std::to_string(i));
  labels.push_back("b");
  auto u = [](int i) { return static_cast<VertexId>(1 + (i % 5)); };
  auto l = [](int i) { return static_cast<VertexId>(6 + (i % 5)); };
  std::vector<Edge> edges;
  for (int i = 0; i < 5; ++i) {
    edges.push_back({0, u(i)});
    edges.push_back({u(i), u(i + 1)});
    edges.push_back({u(i), l(i)});
    edges.push_back({u(i), l(i + 1)});
    edges.push_back({l(i), l(i + 1)});
    edges.push_back({l(i), 11});
  }
  return Graph::from_indices(std::move(labels), edges);
}

inline std::vector<std::int64_t> sphere_betti(int n) {
  if (n == 0) return {2};
  std::vector<std::int64_t> b(static_cast<std::size_t>(n) + 1, 0);
  b.front() = 1;
  b.back() = 1;
  return b;
}

inline std::string canonical_name(std::string_view name) {
  // sphere_min(2) -> sphere_min2
  std::string s(name);
  if (auto open = s.find('('); open != std::string::npos && s.back() == ')')
    s = s.substr(0, open) + s.substr(open + 1, s.size() - open - 2);
  return s;
}

} // namespace detail

inline const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names = {
      "sphere_min0", "sphere_min1", "sphere_min2",   "sphere_min3", "sphere_min4",     "icosahedron", "torus16",
      "torus16_rhombic", "klein16", "rp11",          "moebius12",   "disk_min1",       "disk_min2",   "disk_icosahedron"};
  return names;
}

/// The entry as constructed, before validation.
inline CatalogEntry build_entry(std::string_view requested) {
  const auto name = detail::canonical_name(requested);
  CatalogEntry e;
  e.name = name;
  if (name.starts_with("sphere_min") && name.size() == 11 && name[10] >= '0' && name[10] <= '4') {
    const int n = name[10] - '0';
    e.graph = minimal_sphere(n);
    e.expected = {Recognizer::Sphere, n, 2 * static_cast<std::size_t>(n) + 2, n % 2 == 0 ? 2 : 0,
                  detail::sphere_betti(n), detail::sphere_betti(n), std::nullopt};
    e.construction = "join of " + std::to_string(n + 1) + " copies of the two-point sphere";
  } else if (name == "icosahedron") {
    e.graph = detail::icosahedron();
    e.expected = {Recognizer::Sphere, 2, 12, 2, {1, 0, 1}, {1, 0, 1}, std::nullopt};
    e.construction = "apex, two pentagonal rings, antipode; every rim is a 5-cycle";
  } else if (name == "torus16") {
    e.graph = detail::torus_quotient(2);
    e.expected = {Recognizer::Manifold, 2, 16, 0, {1, 2, 1}, {1, 2, 1}, std::vector<std::vector<std::int64_t>>{{}, {}, {}}};
    e.construction =
        "triangular lattice on Z4 x Z4, neighbours (+-1,0), (0,+-1), (-1,+1), (+1,-1), rows closed with a shift of 2; "
        "the nerve of the brick-wall cover of the flat 4 x 4 torus";
  } else if (name == "torus16_rhombic") {
    e.graph = detail::torus_quotient(0);
    e.expected = {Recognizer::Manifold, 2, 16, 0, {1, 2, 1}, {1, 2, 1}, std::vector<std::vector<std::int64_t>>{{}, {}, {}}};
    e.construction = "triangular lattice on Z4 x Z4 with neighbours (+-1,0), (0,+-1), (-1,+1), (+1,-1), no shift";
  } else if (name == "klein16") {
    e.graph = detail::indexed_graph(
        "k", 16,
        {{0, 1},   {0, 2},   {0, 3},   {0, 4},   {0, 13},  {0, 14},  {1, 4},   {1, 11},  {1, 12},  {1, 13},
         {1, 15},  {2, 3},   {2, 5},   {2, 6},   {2, 14},  {2, 15},  {3, 4},   {3, 6},   {3, 7},   {3, 8},
         {4, 5},   {4, 8},   {4, 15},  {5, 6},   {5, 8},   {5, 9},   {5, 15},  {6, 7},   {6, 9},   {6, 10},
         {7, 8},   {7, 10},  {7, 11},  {7, 12},  {8, 9},   {8, 12},  {9, 10},  {9, 12},  {9, 13},  {10, 11},
         {10, 13}, {10, 14}, {11, 12}, {11, 14}, {11, 15}, {12, 13}, {13, 14}, {14, 15}});
    e.expected = {Recognizer::Manifold, 2, 16, 0, {1, 1, 0}, {1, 2, 1},
                  std::vector<std::vector<std::int64_t>>{{}, {2}, {}}};
    e.construction = "triangular lattice modulo the glide (a,b) -> (a+b+4, -b) and the translation (-2, 4)";
  } else if (name == "rp11") {
    e.graph = detail::indexed_graph(
        "p", 11,
        {{0, 1}, {0, 2}, {0, 3}, {0, 5}, {0, 7},  {0, 9}, {1, 2}, {1, 6}, {1, 8},  {1, 9},
         {2, 3}, {2, 4}, {2, 6}, {2, 10}, {3, 4}, {3, 5}, {4, 5}, {4, 8}, {4, 9},  {4, 10},
         {5, 6}, {5, 7}, {5, 8}, {6, 7}, {6, 8},  {6, 10}, {7, 9}, {7, 10}, {8, 9}, {9, 10}});
    e.expected = {Recognizer::Manifold, 2, 11, 1, {1, 0, 0}, {1, 1, 1},
                  std::vector<std::vector<std::int64_t>>{{}, {2}, {}}};
    e.construction =
        "edge contractions of the barycentric subdivision of the 6-vertex projective plane, keeping every rim a "
        "cycle of length at least 4";
  } else if (name == "moebius12") {
    e.graph = detail::indexed_graph(
        "m", 12,
        {{0, 1}, {0, 2}, {0, 9}, {0, 10}, {1, 2}, {1, 3}, {1, 4}, {1, 10}, {1, 11}, {2, 4},
         {2, 5}, {3, 4}, {3, 6}, {3, 11}, {4, 5}, {4, 6}, {4, 7}, {5, 7},  {5, 8},  {6, 7},
         {6, 9}, {7, 8}, {7, 9}, {7, 10}, {8, 10}, {8, 11}, {9, 10}, {10, 11}});
    e.expected = {Recognizer::Band, 2, 12, 0, {1, 1, 0}, {1, 1, 0}, std::vector<std::vector<std::int64_t>>{{}, {}, {}}};
    e.construction = "strip of rows 0..2 of the triangular lattice, ends glued by (a,b) -> (a+b+3 mod 8, 2-b)";
  } else if (name == "disk_min1" || name == "disk_min2" || name == "disk_icosahedron") {
    const Graph sphere = name == "disk_min1" ? minimal_sphere(1) : name == "disk_min2" ? minimal_sphere(2) : detail::icosahedron();
    const int n = name == "disk_min1" ? 1 : 2;
    for (VertexId w : sphere.neighbors(0)) e.boundary.push_back(sphere.label(w));
    e.graph = remove_vertex(sphere, 0);
    std::vector<std::int64_t> point(static_cast<std::size_t>(n) + 1, 0);
    point[0] = 1;
    e.expected = {Recognizer::Disk, n, sphere.order() - 1, 1, point, point, std::nullopt};
    e.construction = "sphere minus the vertex " + sphere.label(0) + ", bounded by its rim";
  } else {
    throw CatalogError("unknown catalog entry '" + std::string(requested) + "'");
  }
  return e;
}

namespace detail {

template <class T>
std::string show(const T& v) {
  if constexpr (std::is_arithmetic_v<T>) return std::to_string(v);
  else return join_values(v);
}

// Interior rims must be cycles of length >= 4, boundary rims paths of at
// least 3 vertices, and the boundary vertices must induce a single cycle.
inline std::pair<bool, std::string> band_check(const Graph& g) {
  std::vector<VertexId> boundary;
  for (VertexId v = 0; v < g.order(); ++v) {
    const auto r = rim(g, v);
    std::size_t ones = 0, twos = 0;
    for (VertexId w = 0; w < r.order(); ++w) {
      if (r.degree(w) == 1) ++ones;
      else if (r.degree(w) == 2) ++twos;
    }
    const bool cycle = r.order() >= 4 && twos == r.order() && is_connected(r);
    const bool path = r.order() >= 3 && ones == 2 && ones + twos == r.order() && is_connected(r);
    if (path) boundary.push_back(v);
    else if (!cycle) return {false, "rim of " + g.label(v) + " is neither a cycle nor a path"};
  }
  const auto b = g.induced(boundary);
  for (VertexId v = 0; v < b.order(); ++v)
    if (b.degree(v) != 2) return {false, "boundary is not a union of cycles"};
  const auto circles = component_count(b);
  return {circles == 1, std::to_string(circles) + " boundary circle" + (circles == 1 ? "" : "s")};
}

} // namespace detail

inline ValidationReport validate(const CatalogEntry& e, TopologyCache& cache = default_cache()) {
  ValidationReport rep;
  auto add = [&](std::string check, std::string expected, std::string actual) {
    const bool ok = expected == actual;
    rep.ok = rep.ok && ok;
    rep.checks.push_back({std::move(check), std::move(expected), std::move(actual), ok});
  };
  const auto& x = e.expected;
  add("vertices", std::to_string(x.vertices), std::to_string(e.graph.order()));
  std::string kind = "fails";
  switch (x.kind) {
    case Recognizer::Sphere:
      if (is_n_sphere(e.graph, x.dimension, SphereCheck::AllVertices, cache)) kind = "Sphere";
      break;
    case Recognizer::Manifold:
      if (is_n_manifold(e.graph, x.dimension, cache)) kind = "Manifold";
      break;
    case Recognizer::Disk:
      if (is_n_disk(e.graph, e.boundary, x.dimension, cache)) kind = "Disk";
      break;
    case Recognizer::Band: {
      auto [ok, detail] = detail::band_check(e.graph);
      add("boundary", "1 boundary circle", detail);
      if (ok) kind = "Band";
      break;
    }
  }
  add("recognizer", std::string(to_string(x.kind)) + " " + std::to_string(x.dimension),
      kind == "fails" ? kind : kind + " " + std::to_string(x.dimension));
  add("euler", std::to_string(x.euler), std::to_string(euler_characteristic(e.graph)));
  const auto h = homology(e.graph);
  add("betti_q", detail::show(x.betti_rational), detail::show(h.betti_rational));
  add("betti_z2", detail::show(x.betti_mod2), detail::show(h.betti_mod2));
  if (x.torsion) add("torsion", detail::show(*x.torsion), detail::show(h.torsion));
  return rep;
}

/// Validated entry; validation runs once per name and is cached.
inline const CatalogEntry& get(std::string_view requested) {
  static std::mutex mu;
  static std::map<std::string, std::unique_ptr<CatalogEntry>> entries;
  const auto name = detail::canonical_name(requested);
  std::lock_guard lock(mu);
  if (auto it = entries.find(name); it != entries.end()) return *it->second;
  auto e = std::make_unique<CatalogEntry>(build_entry(requested));
  auto rep = validate(*e);
  if (!rep.ok) {
    std::string why;
    for (const auto& c : rep.checks)
      if (!c.ok) why += "; " + c.check + ": expected " + c.expected + ", got " + c.actual;
    throw CatalogError("catalog entry " + name + " failed validation" + why);
  }
  return *entries.emplace(name, std::move(e)).first->second;
}

} // namespace digitop
