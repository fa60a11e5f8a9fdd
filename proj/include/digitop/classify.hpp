#pragma once

// Recursive recognizers for digital n-surfaces, n-spheres, n-manifolds and
// n-disks, and the minimal n-sphere.

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "digitop/canonical.hpp"
#include "digitop/graph.hpp"
#include "digitop/homotopy.hpp"

namespace digitop {

enum class Kind { Surface, Sphere, Manifold, Disk, None };

inline const char* to_string(Kind k) {
  switch (k) {
    case Kind::Surface: return "Surface";
    case Kind::Sphere: return "Sphere";
    case Kind::Manifold: return "Manifold";
    case Kind::Disk: return "Disk";
    default: return "None";
  }
}

struct ClassificationVerdict {
  Kind kind = Kind::None;
  std::optional<int> dimension;
  /// The vertex whose rim (or deletion) breaks the recursion; set only for None.
  std::optional<std::string> witness;

  explicit operator bool() const noexcept { return kind != Kind::None; }
};

/// AllVertices reads "for any point v" literally. SingleVertex checks the
/// contractibility of G - v for the first vertex only (a heuristic).
enum class SphereCheck { AllVertices, SingleVertex };

namespace detail {

inline bool memoisable(const Graph& g) { return g.order() <= kMemoMaxOrder; }

// First vertex outside the component of vertex 0.
inline std::optional<VertexId> disconnected_witness(const Graph& g) {
  if (g.empty()) return std::nullopt;
  auto comp = components(g);
  for (VertexId v = 0; v < g.order(); ++v)
    if (comp[v] != comp[0]) return v;
  return std::nullopt;
}

} // namespace detail

/// 0 for two non-adjacent points; n > 0 when G is connected and every rim
/// has surface dimension n - 1; absent otherwise.
inline std::optional<int> surface_dimension(const Graph& g, TopologyCache& cache = default_cache()) {
  if (g.order() == 2 && g.size() == 0) return 0;
  if (g.order() < 2 || !is_connected(g)) return std::nullopt;
  CanonicalKey key;
  const bool memo = detail::memoisable(g);
  if (memo) {
    key = canonical_key(g);
    if (auto hit = cache.surface_dimension(key)) return *hit;
  }
  std::optional<int> result;
  auto first = surface_dimension(rim(g, 0), cache);
  if (first) {
    result = *first + 1;
    for (VertexId v = 1; v < g.order() && result; ++v)
      if (surface_dimension(rim(g, v), cache) != first) result.reset();
  }
  if (memo) cache.store_surface_dimension(key, result);
  return result;
}

namespace detail {

inline bool sphere_holds(const Graph& g, int n, SphereCheck mode, TopologyCache& cache);

// The first vertex violating the n-sphere conditions, or nothing when G is an
// n-sphere. `fails` is set whenever G is not a sphere, even without a witness.
inline std::optional<VertexId> sphere_failure(const Graph& g, int n, SphereCheck mode, TopologyCache& cache,
                                              bool& fails) {
  fails = true;
  if (n == 0) {
    if (g.order() == 2 && g.size() == 0) {
      fails = false;
      return std::nullopt;
    }
    if (g.empty()) return std::nullopt;
    return VertexId{0};
  }
  if (g.empty()) return std::nullopt;
  if (!is_connected(g)) return disconnected_witness(g);
  for (VertexId v = 0; v < g.order(); ++v)
    if (!sphere_holds(rim(g, v), n - 1, SphereCheck::AllVertices, cache)) return v;
  const VertexId checked = mode == SphereCheck::AllVertices ? static_cast<VertexId>(g.order()) : 1;
  for (VertexId v = 0; v < checked; ++v)
    if (!is_contractible(remove_vertex(g, v), cache)) return v;
  fails = false;
  return std::nullopt;
}

inline bool sphere_holds(const Graph& g, int n, SphereCheck mode, TopologyCache& cache) {
  if (n < 0) return false;
  if (n == 0) return g.order() == 2 && g.size() == 0;
  const bool memo = mode == SphereCheck::AllVertices && memoisable(g);
  CanonicalKey key;
  if (memo) {
    key = canonical_key(g);
    if (auto hit = cache.sphere(key, n)) return *hit;
  }
  bool fails = false;
  sphere_failure(g, n, mode, cache, fails);
  if (memo) cache.store_sphere(key, n, !fails);
  return !fails;
}

} // namespace detail

inline ClassificationVerdict is_n_sphere(const Graph& g, int n, SphereCheck mode = SphereCheck::AllVertices,
                                         TopologyCache& cache = default_cache()) {
  if (n < 0) throw std::invalid_argument("sphere dimension must be non-negative");
  ClassificationVerdict out;
  if (detail::sphere_holds(g, n, mode, cache)) {
    out.kind = Kind::Sphere;
    out.dimension = n;
    return out;
  }
  bool fails = true;
  if (auto w = detail::sphere_failure(g, n, mode, cache, fails)) out.witness = g.label(*w);
  return out;
}

inline ClassificationVerdict is_n_manifold(const Graph& g, int n, TopologyCache& cache = default_cache()) {
  if (n < 1) throw std::invalid_argument("manifold dimension must be at least 1");
  ClassificationVerdict out;
  if (g.empty()) return out;
  if (!is_connected(g)) {
    out.witness = g.label(*detail::disconnected_witness(g));
    return out;
  }
  for (VertexId v = 0; v < g.order(); ++v)
    if (!detail::sphere_holds(rim(g, v), n - 1, SphereCheck::AllVertices, cache)) {
      out.witness = g.label(v);
      return out;
    }
  out.kind = Kind::Manifold;
  out.dimension = n;
  return out;
}

namespace detail {

inline Graph cone_over(const Graph& g, std::span<const std::string> boundary) {
  std::vector<VertexId> nbrs;
  for (const auto& b : boundary) {
    auto v = g.find(b);
    if (!v) throw std::invalid_argument("boundary vertex '" + b + "' is not in the graph");
    nbrs.push_back(*v);
  }
  std::string apex_label = "apex";
  while (g.contains(apex_label)) apex_label += "'";
  return add_vertex(g, apex_label, nbrs);
}

} // namespace detail

/// Attaches a new apex adjacent to exactly `boundary` and tests for an
/// n-sphere. Disks exist only for n >= 1.
inline bool is_n_disk(const Graph& g, std::span<const std::string> boundary, int n,
                      TopologyCache& cache = default_cache()) {
  auto closed = detail::cone_over(g, boundary);
  if (n < 1) return false;
  return detail::sphere_holds(closed, n, SphereCheck::AllVertices, cache);
}

inline ClassificationVerdict disk_verdict(const Graph& g, std::span<const std::string> boundary, int n,
                                          TopologyCache& cache = default_cache()) {
  ClassificationVerdict out;
  auto closed = detail::cone_over(g, boundary);
  if (n >= 1 && detail::sphere_holds(closed, n, SphereCheck::AllVertices, cache)) {
    out.kind = Kind::Disk;
    out.dimension = n;
    return out;
  }
  if (g.empty()) return out;
  bool fails = true;
  auto w = n >= 1 ? detail::sphere_failure(closed, n, SphereCheck::AllVertices, cache, fails) : std::nullopt;
  // the apex is the last vertex; blame the first boundary point instead
  if (w && *w < g.order()) out.witness = g.label(*w);
  else out.witness = boundary.empty() ? g.label(0) : boundary.front();
  return out;
}

/// Join of n+1 copies of S0: parts {a_i, b_i}, every cross pair adjacent.
inline Graph minimal_sphere(int n) {
  if (n < 0) throw std::invalid_argument("sphere dimension must be non-negative");
  std::vector<std::string> labels;
  for (int i = 0; i <= n; ++i) {
    labels.push_back("a" + std::to_string(i));
    labels.push_back("b" + std::to_string(i));
  }
  std::vector<Edge> edges;
  for (VertexId u = 0; u < labels.size(); ++u)
    for (VertexId v = u + 1; v < labels.size(); ++v)
      if (u / 2 != v / 2) edges.push_back({u, v});
  return Graph::from_indices(std::move(labels), edges);
}

/// Classification without a target dimension: the surface dimension is
/// computed first, then sphere and manifold are tested at that dimension.
inline ClassificationVerdict classify(const Graph& g, TopologyCache& cache = default_cache()) {
  ClassificationVerdict out;
  auto d = surface_dimension(g, cache);
  if (!d) {
    if (g.empty()) return out;  // nothing to name as a witness
    if (auto w = detail::disconnected_witness(g)) {
      out.witness = g.label(*w);
      return out;
    }
    auto ref = surface_dimension(rim(g, 0), cache);
    VertexId w = 0;
    for (VertexId v = 0; v < g.order(); ++v) {
      auto dv = surface_dimension(rim(g, v), cache);
      if (!dv || dv != ref) {
        w = v;
        break;
      }
    }
    out.witness = g.label(w);
    return out;
  }
  if (auto s = is_n_sphere(g, *d, SphereCheck::AllVertices, cache)) return s;
  if (*d >= 1)
    if (auto m = is_n_manifold(g, *d, cache)) return m;
  out.kind = Kind::Surface;
  out.dimension = d;
  return out;
}

/// Classification at a given dimension: sphere, then manifold, then surface.
inline ClassificationVerdict classify(const Graph& g, int n, TopologyCache& cache = default_cache()) {
  auto s = is_n_sphere(g, n, SphereCheck::AllVertices, cache);
  if (s || n < 1) return s;
  auto m = is_n_manifold(g, n, cache);
  if (m) return m;
  if (surface_dimension(g, cache) == n) return {Kind::Surface, n, std::nullopt};
  return m;
}

} // namespace digitop
