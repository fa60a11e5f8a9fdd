#pragma once

// Finite simple undirected graphs: the carrier of every digital space in the
// library. Vertices carry opaque string labels; algorithms work on dense
// indices 0..order()-1 in construction order.

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace digitop {

using VertexId = std::uint32_t;
using Edge = std::pair<VertexId, VertexId>;

/// Raised when a graph cannot be built or a vertex/edge argument is invalid.
class GraphError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class Graph {
public:
  Graph() = default;

  /// Builds a graph over `labels` from index pairs. Duplicate edges collapse;
  /// self-loops, out-of-range endpoints and repeated labels are rejected.
  static Graph from_indices(std::vector<std::string> labels, std::span<const Edge> edges) {
    Graph g;
    const auto n = labels.size();
    g.labels_ = std::move(labels);
    g.index_.reserve(n);
    for (VertexId i = 0; i < n; ++i) {
      if (!g.index_.emplace(g.labels_[i], i).second)
        throw GraphError("duplicate vertex label '" + g.labels_[i] + "'");
    }
    g.adj_.assign(n, {});
    g.words_ = (n + 63) / 64;
    g.matrix_.assign(n * g.words_, 0);
    for (auto [u, v] : edges) {
      if (u >= n || v >= n) throw GraphError("edge endpoint out of range");
      if (u == v) throw GraphError("self-loop on '" + g.labels_[u] + "'");
      if (g.adjacent(u, v)) continue;
      g.set_bit(u, v);
      g.set_bit(v, u);
      g.adj_[u].push_back(v);
      g.adj_[v].push_back(u);
      ++g.edge_count_;
    }
    for (auto& row : g.adj_) std::sort(row.begin(), row.end());
    return g;
  }

  std::size_t order() const noexcept { return labels_.size(); }
  std::size_t size() const noexcept { return edge_count_; }
  bool empty() const noexcept { return labels_.empty(); }

  const std::string& label(VertexId v) const { return labels_.at(v); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  std::optional<VertexId> find(std::string_view label) const {
    auto it = index_.find(std::string(label));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  VertexId index_of(std::string_view label) const {
    if (auto v = find(label)) return *v;
    throw GraphError("unknown vertex '" + std::string(label) + "'");
  }

  bool contains(std::string_view label) const { return find(label).has_value(); }

  std::span<const VertexId> neighbors(VertexId v) const { return adj_.at(v); }
  std::size_t degree(VertexId v) const { return adj_.at(v).size(); }

  bool adjacent(VertexId u, VertexId v) const noexcept {
    return (matrix_[u * words_ + v / 64] >> (v % 64)) & 1U;
  }

  /// Bitset row of the adjacency matrix (order() bits, 64 per word).
  std::span<const std::uint64_t> row(VertexId v) const {
    return {matrix_.data() + v * words_, words_};
  }
  std::size_t words() const noexcept { return words_; }

  /// Edges as (u, v) with u < v, sorted.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (VertexId u = 0; u < order(); ++u)
      for (VertexId v : adj_[u])
        if (u < v) out.emplace_back(u, v);
    return out;
  }

  /// Induced subgraph on `vertices`, kept in the given order.
  Graph induced(std::span<const VertexId> vertices) const {
    std::vector<std::string> labels;
    labels.reserve(vertices.size());
    std::vector<std::int64_t> pos(order(), -1);
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      const auto v = vertices[i];
      if (v >= order()) throw GraphError("vertex index out of range");
      if (pos[v] >= 0) throw GraphError("vertex listed twice: '" + labels_[v] + "'");
      pos[v] = static_cast<std::int64_t>(i);
      labels.push_back(labels_[v]);
    }
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < vertices.size(); ++i)
      for (VertexId w : adj_[vertices[i]])
        if (pos[w] > static_cast<std::int64_t>(i))
          edges.emplace_back(static_cast<VertexId>(i), static_cast<VertexId>(pos[w]));
    return from_indices(std::move(labels), edges);
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.labels_ == b.labels_ && a.adj_ == b.adj_;
  }

private:
  void set_bit(VertexId u, VertexId v) { matrix_[u * words_ + v / 64] |= std::uint64_t{1} << (v % 64); }

  std::vector<std::string> labels_;
  std::unordered_map<std::string, VertexId> index_;
  std::vector<std::vector<VertexId>> adj_;
  std::vector<std::uint64_t> matrix_;
  std::size_t words_ = 0;
  std::size_t edge_count_ = 0;
};

/// Builds a graph from labelled vertices and edges. Duplicate edges are
/// collapsed; unknown endpoints and self-loops are rejected with the pair.
inline Graph build_graph(std::vector<std::string> vertices,
                         std::span<const std::pair<std::string, std::string>> edges) {
  std::unordered_map<std::string, VertexId> index;
  for (VertexId i = 0; i < vertices.size(); ++i)
    if (!index.emplace(vertices[i], i).second)
      throw GraphError("duplicate vertex label '" + vertices[i] + "'");
  std::vector<Edge> ids;
  ids.reserve(edges.size());
  for (const auto& [a, b] : edges) {
    const auto pair_text = "(" + a + ", " + b + ")";
    if (a == b) throw GraphError("self-loop " + pair_text);
    auto ia = index.find(a), ib = index.find(b);
    if (ia == index.end() || ib == index.end())
      throw GraphError("edge " + pair_text + " has an unknown endpoint");
    ids.emplace_back(ia->second, ib->second);
  }
  return Graph::from_indices(std::move(vertices), ids);
}

inline Graph build_graph(std::vector<std::string> vertices,
                         std::initializer_list<std::pair<std::string, std::string>> edges) {
  return build_graph(std::move(vertices), std::span(edges.begin(), edges.size()));
}

// --- primitive constructions -------------------------------------------------

inline std::vector<VertexId> all_vertices(const Graph& g) {
  std::vector<VertexId> out(g.order());
  std::iota(out.begin(), out.end(), VertexId{0});
  return out;
}

inline Graph rim(const Graph& g, VertexId v) {
  if (v >= g.order()) throw GraphError("vertex index out of range");
  auto nb = g.neighbors(v);
  return g.induced(std::vector<VertexId>(nb.begin(), nb.end()));
}
inline Graph rim(const Graph& g, std::string_view v) { return rim(g, g.index_of(v)); }

/// The vertex followed by its neighbours.
inline Graph ball(const Graph& g, VertexId v) {
  if (v >= g.order()) throw GraphError("vertex index out of range");
  std::vector<VertexId> vs{v};
  auto nb = g.neighbors(v);
  vs.insert(vs.end(), nb.begin(), nb.end());
  return g.induced(vs);
}
inline Graph ball(const Graph& g, std::string_view v) { return ball(g, g.index_of(v)); }

inline std::vector<VertexId> common_neighbors(const Graph& g, VertexId u, VertexId v) {
  std::vector<VertexId> out;
  auto a = g.neighbors(u), b = g.neighbors(v);
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline Graph edge_rim(const Graph& g, VertexId u, VertexId v) {
  if (u >= g.order() || v >= g.order() || !g.adjacent(u, v))
    throw GraphError("not an edge");
  return g.induced(common_neighbors(g, u, v));
}
inline Graph edge_rim(const Graph& g, std::string_view u, std::string_view v) {
  const auto a = g.index_of(u), b = g.index_of(v);
  if (!g.adjacent(a, b))
    throw GraphError("(" + std::string(u) + ", " + std::string(v) + ") is not an edge");
  return edge_rim(g, a, b);
}

inline Graph induced_subgraph(const Graph& g, std::span<const std::string> subset) {
  std::vector<VertexId> ids;
  ids.reserve(subset.size());
  for (const auto& s : subset) {
    auto v = g.find(s);
    if (!v) throw GraphError("vertex '" + s + "' is not in the graph");
    ids.push_back(*v);
  }
  return g.induced(ids);
}

struct JoinResult {
  Graph graph;
  /// Labels of the right operand that were renamed to avoid collisions.
  std::map<std::string, std::string> relabeled;
};

/// Disjoint union plus every cross edge. Colliding labels of `h` receive
/// trailing primes until unique.
inline JoinResult join(const Graph& g, const Graph& h) {
  std::vector<std::string> labels = g.labels();
  std::unordered_map<std::string, bool> used;
  for (const auto& l : labels) used[l] = true;
  for (const auto& l : h.labels()) used.try_emplace(l, false);
  JoinResult out;
  const auto offset = static_cast<VertexId>(g.order());
  for (const auto& l : h.labels()) {
    std::string name = l;
    if (g.contains(l)) {
      do name += '\'';
      while (used.contains(name));
      out.relabeled.emplace(l, name);
    }
    used[name] = true;
    labels.push_back(std::move(name));
  }
  std::vector<Edge> edges = g.edges();
  for (auto [u, v] : h.edges()) edges.emplace_back(u + offset, v + offset);
  for (VertexId u = 0; u < g.order(); ++u)
    for (VertexId v = 0; v < h.order(); ++v) edges.emplace_back(u, v + offset);
  out.graph = Graph::from_indices(std::move(labels), edges);
  return out;
}

// --- elementary edits (new graphs; inputs untouched) ------------------------

inline Graph remove_vertex(const Graph& g, VertexId v) {
  std::vector<VertexId> keep;
  keep.reserve(g.order());
  for (VertexId u = 0; u < g.order(); ++u)
    if (u != v) keep.push_back(u);
  return g.induced(keep);
}

/// Appends a vertex adjacent to `nbrs`.
inline Graph add_vertex(const Graph& g, std::string label, std::span<const VertexId> nbrs) {
  auto labels = g.labels();
  const auto x = static_cast<VertexId>(labels.size());
  labels.push_back(std::move(label));
  auto edges = g.edges();
  for (VertexId w : nbrs) edges.emplace_back(w, x);
  return Graph::from_indices(std::move(labels), edges);
}

inline Graph remove_edge(const Graph& g, VertexId u, VertexId v) {
  auto edges = g.edges();
  std::erase_if(edges, [&](const Edge& e) {
    return (e.first == u && e.second == v) || (e.first == v && e.second == u);
  });
  return Graph::from_indices(g.labels(), edges);
}

inline Graph add_edge(const Graph& g, VertexId u, VertexId v) {
  auto edges = g.edges();
  edges.emplace_back(u, v);
  return Graph::from_indices(g.labels(), edges);
}

// --- connectivity -----------------------------------------------------------

/// Component id per vertex, numbered by first appearance.
inline std::vector<std::uint32_t> components(const Graph& g, std::size_t* count = nullptr) {
  constexpr auto unset = static_cast<std::uint32_t>(-1);
  std::vector<std::uint32_t> comp(g.order(), unset);
  std::uint32_t next = 0;
  std::vector<VertexId> stack;
  for (VertexId s = 0; s < g.order(); ++s) {
    if (comp[s] != unset) continue;
    comp[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      for (VertexId w : g.neighbors(v))
        if (comp[w] == unset) {
          comp[w] = next;
          stack.push_back(w);
        }
    }
    ++next;
  }
  if (count) *count = next;
  return comp;
}

inline std::size_t component_count(const Graph& g) {
  std::size_t n = 0;
  components(g, &n);
  return n;
}

/// The empty graph is not connected.
inline bool is_connected(const Graph& g) { return !g.empty() && component_count(g) == 1; }

/// A vertex adjacent to every other vertex, if any.
inline std::optional<VertexId> apex(const Graph& g) {
  for (VertexId v = 0; v < g.order(); ++v)
    if (g.degree(v) + 1 == g.order()) return v;
  return std::nullopt;
}

// --- small named graphs -----------------------------------------------------

inline Graph cycle_graph(std::size_t n, std::string_view prefix = "v") {
  std::vector<std::string> labels;
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back(std::string(prefix) + std::to_string(i));
    edges.emplace_back(static_cast<VertexId>(i), static_cast<VertexId>((i + 1) % n));
  }
  return Graph::from_indices(std::move(labels), edges);
}

inline Graph path_graph(std::size_t n, std::string_view prefix = "v") {
  std::vector<std::string> labels;
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back(std::string(prefix) + std::to_string(i));
    if (i + 1 < n) edges.emplace_back(static_cast<VertexId>(i), static_cast<VertexId>(i + 1));
  }
  return Graph::from_indices(std::move(labels), edges);
}

inline Graph complete_graph(std::size_t n, std::string_view prefix = "v") {
  std::vector<std::string> labels;
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back(std::string(prefix) + std::to_string(i));
    for (std::size_t j = 0; j < i; ++j)
      edges.emplace_back(static_cast<VertexId>(j), static_cast<VertexId>(i));
  }
  return Graph::from_indices(std::move(labels), edges);
}

inline Graph edgeless_graph(std::size_t n, std::string_view prefix = "v") {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::string(prefix) + std::to_string(i));
  return Graph::from_indices(std::move(labels), {});
}

} // namespace digitop
