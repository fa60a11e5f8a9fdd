#pragma once

// Simple points and edges, contractibility, contractible transformations and
// reduction by simple-point deletion.
//
// A graph is contractible when some order of simple-point deletions takes it
// down to one point; a point is simple when its rim is contractible. The
// decision below is exact: a greedy pass answers most positive cases, and when
// it stalls a backtracking search over every simple point settles the
// question. Results are memoised on canonical keys.

#include <algorithm>
#include <cstdlib>
#include <mutex>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "digitop/canonical.hpp"
#include "digitop/graph.hpp"
#include "digitop/invariants.hpp"

namespace digitop {

// --- memo table ---------------------------------------------------------------

/// Thread-safe memo of topological decisions keyed on canonical form. When
/// the number of entries reaches the cap the table is cleared.
class TopologyCache {
public:
  explicit TopologyCache(std::size_t cap = default_cap()) : cap_(cap) {}

  /// Entry cap from DIGITOP_MEMO_CAP, default one million.
  static std::size_t default_cap() {
    if (const char* env = std::getenv("DIGITOP_MEMO_CAP")) {
      char* end = nullptr;
      auto v = std::strtoull(env, &end, 10);
      if (end != env && v > 0) return static_cast<std::size_t>(v);
    }
    return std::size_t{1} << 20;
  }

  std::optional<bool> contractible(const CanonicalKey& k) const {
    std::lock_guard lock(mu_);
    auto it = contractible_.find(k);
    if (it == contractible_.end()) return std::nullopt;
    return it->second;
  }
  void store_contractible(const CanonicalKey& k, bool v) {
    std::lock_guard lock(mu_);
    make_room();
    contractible_.emplace(k, v);
  }

  /// Outer optional: cached or not. Inner: the surface dimension, if any.
  std::optional<std::optional<int>> surface_dimension(const CanonicalKey& k) const {
    std::lock_guard lock(mu_);
    auto it = surface_.find(k);
    if (it == surface_.end()) return std::nullopt;
    return it->second;
  }
  void store_surface_dimension(const CanonicalKey& k, std::optional<int> d) {
    std::lock_guard lock(mu_);
    make_room();
    surface_.emplace(k, d);
  }

  std::optional<bool> sphere(const CanonicalKey& k, int n) const {
    std::lock_guard lock(mu_);
    auto it = sphere_.find(tagged(k, n));
    if (it == sphere_.end()) return std::nullopt;
    return it->second;
  }
  void store_sphere(const CanonicalKey& k, int n, bool v) {
    std::lock_guard lock(mu_);
    make_room();
    sphere_.emplace(tagged(k, n), v);
  }

  std::size_t entries() const {
    std::lock_guard lock(mu_);
    return contractible_.size() + surface_.size() + sphere_.size();
  }
  void clear() {
    std::lock_guard lock(mu_);
    contractible_.clear();
    surface_.clear();
    sphere_.clear();
  }

private:
  static CanonicalKey tagged(const CanonicalKey& k, int n) {
    CanonicalKey t = k;
    t.bytes.append(reinterpret_cast<const char*>(&n), sizeof n);
    return t;
  }
  void make_room() {
    if (contractible_.size() + surface_.size() + sphere_.size() >= cap_) {
      contractible_.clear();
      surface_.clear();
      sphere_.clear();
    }
  }

  std::size_t cap_;
  mutable std::mutex mu_;
  std::unordered_map<CanonicalKey, bool, CanonicalKeyHash> contractible_;
  std::unordered_map<CanonicalKey, std::optional<int>, CanonicalKeyHash> surface_;
  std::unordered_map<CanonicalKey, bool, CanonicalKeyHash> sphere_;
};

inline TopologyCache& default_cache() {
  static TopologyCache cache;
  return cache;
}

/// Graphs above this order are decided without memoisation.
inline constexpr std::size_t kMemoMaxOrder = 64;

// --- transformation steps -----------------------------------------------------

struct DeletePoint {
  std::string vertex;
  friend bool operator==(const DeletePoint&, const DeletePoint&) = default;
};
struct AttachPoint {
  std::string vertex;
  std::vector<std::string> rim;
  friend bool operator==(const AttachPoint&, const AttachPoint&) = default;
};
struct DeleteEdge {
  std::string u, v;
  friend bool operator==(const DeleteEdge&, const DeleteEdge&) = default;
};
struct AttachEdge {
  std::string u, v;
  friend bool operator==(const AttachEdge&, const AttachEdge&) = default;
};

using Step = std::variant<DeletePoint, AttachPoint, DeleteEdge, AttachEdge>;

struct HomotopyTrace {
  std::vector<Step> steps;

  void append(const HomotopyTrace& other) {
    steps.insert(steps.end(), other.steps.begin(), other.steps.end());
  }
  friend bool operator==(const HomotopyTrace&, const HomotopyTrace&) = default;
};

/// A transformation whose contractibility precondition does not hold.
class RejectedStep : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// --- contractibility ------------------------------------------------------------

bool is_contractible(const Graph& g, TopologyCache& cache = default_cache());

namespace detail {

inline Graph rim_among(const Graph& g, VertexId v, const std::vector<bool>& alive) {
  std::vector<VertexId> nb;
  for (VertexId w : g.neighbors(v))
    if (alive[w]) nb.push_back(w);
  return g.induced(nb);
}

struct GreedyRun {
  std::vector<VertexId> deleted;
  std::vector<bool> alive;
  std::size_t remaining = 0;
};

// Deletes simple points while any remain, smallest current degree first and
// ties broken by label order. Only neighbours of a deleted point can change
// status, so simplicity is recomputed just for them.
inline GreedyRun greedy_reduce(const Graph& g, TopologyCache& cache) {
  const auto n = g.order();
  GreedyRun run;
  run.alive.assign(n, true);
  run.remaining = n;
  std::vector<std::size_t> deg(n);
  std::vector<bool> simple(n, false);
  auto less = [&](const std::pair<std::size_t, VertexId>& a, const std::pair<std::size_t, VertexId>& b) {
    if (a.first != b.first) return a.first < b.first;
    const auto& la = g.label(a.second);
    const auto& lb = g.label(b.second);
    if (la != lb) return la < lb;
    return a.second < b.second;
  };
  std::set<std::pair<std::size_t, VertexId>, decltype(less)> queue(less);
  for (VertexId v = 0; v < n; ++v) {
    deg[v] = g.degree(v);
    simple[v] = is_contractible(rim_among(g, v, run.alive), cache);
    if (simple[v]) queue.emplace(deg[v], v);
  }
  while (!queue.empty()) {
    const auto v = queue.begin()->second;
    queue.erase(queue.begin());
    run.alive[v] = false;
    run.deleted.push_back(v);
    --run.remaining;
    for (VertexId w : g.neighbors(v)) {
      if (!run.alive[w]) continue;
      if (simple[w]) queue.erase({deg[w], w});
      --deg[w];
      simple[w] = is_contractible(rim_among(g, w, run.alive), cache);
      if (simple[w]) queue.emplace(deg[w], w);
    }
  }
  return run;
}

inline bool search_contractible(const Graph& g, TopologyCache& cache) {
  for (VertexId v = 0; v < g.order(); ++v)
    if (is_contractible(rim(g, v), cache) && is_contractible(remove_vertex(g, v), cache)) return true;
  return false;
}

} // namespace detail

/// One point is contractible; the empty graph is not.
inline bool is_contractible(const Graph& g, TopologyCache& cache) {
  const auto n = g.order();
  if (n == 0) return false;
  if (n == 1) return true;
  if (apex(g)) return true;  // cones reduce onto their apex
  if (!is_connected(g)) return false;
  const bool memo = n <= kMemoMaxOrder;
  CanonicalKey key;
  if (memo) {
    key = canonical_key(g);
    if (auto hit = cache.contractible(key)) return *hit;
  }
  bool result = detail::greedy_reduce(g, cache).remaining == 1;
  // Deleting a simple point keeps the Euler characteristic, so only graphs
  // with Euler characteristic 1 need the exhaustive search.
  if (!result && euler_characteristic(g, static_cast<int>(n)) == 1)
    result = detail::search_contractible(g, cache);
  if (memo) cache.store_contractible(key, result);
  return result;
}

/// A deletion sequence reducing `g` to one point, when `g` is contractible.
inline std::optional<HomotopyTrace> contraction_trace(const Graph& g, TopologyCache& cache = default_cache()) {
  if (!is_contractible(g, cache)) return std::nullopt;
  HomotopyTrace trace;
  Graph cur = g;
  while (cur.order() > 1) {
    std::optional<VertexId> pick;
    if (auto a = apex(cur)) {
      pick = (*a == 0) ? 1 : 0;
    } else {
      auto run = detail::greedy_reduce(cur, cache);
      if (run.remaining == 1) {
        for (VertexId v : run.deleted) trace.steps.push_back(DeletePoint{cur.label(v)});
        return trace;
      }
      for (VertexId v = 0; v < cur.order() && !pick; ++v)
        if (is_contractible(rim(cur, v), cache) && is_contractible(remove_vertex(cur, v), cache)) pick = v;
    }
    trace.steps.push_back(DeletePoint{cur.label(*pick)});
    cur = remove_vertex(cur, *pick);
  }
  return trace;
}

inline bool is_simple_point(const Graph& g, VertexId v, TopologyCache& cache = default_cache()) {
  return is_contractible(rim(g, v), cache);
}
inline bool is_simple_point(const Graph& g, std::string_view v, TopologyCache& cache = default_cache()) {
  return is_simple_point(g, g.index_of(v), cache);
}

inline bool is_simple_edge(const Graph& g, VertexId u, VertexId v, TopologyCache& cache = default_cache()) {
  return is_contractible(edge_rim(g, u, v), cache);
}
inline bool is_simple_edge(const Graph& g, std::string_view u, std::string_view v,
                           TopologyCache& cache = default_cache()) {
  return is_contractible(edge_rim(g, u, v), cache);
}

// --- applying transformations -----------------------------------------------------

struct AppliedStep {
  Graph graph;
  Step inverse;
};

inline std::string describe(const Step& s) {
  return std::visit(
      [](const auto& st) -> std::string {
        using T = std::decay_t<decltype(st)>;
        if constexpr (std::is_same_v<T, DeletePoint>) return "delete-point " + st.vertex;
        else if constexpr (std::is_same_v<T, AttachPoint>) return "attach-point " + st.vertex;
        else if constexpr (std::is_same_v<T, DeleteEdge>) return "delete-edge (" + st.u + ", " + st.v + ")";
        else return "attach-edge (" + st.u + ", " + st.v + ")";
      },
      s);
}

/// Applies one contractible transformation, checking its precondition.
inline AppliedStep apply_transformation(const Graph& g, const Step& step, TopologyCache& cache = default_cache()) {
  auto vertex = [&](const std::string& l) {
    auto v = g.find(l);
    if (!v) throw RejectedStep(describe(step) + ": unknown vertex '" + l + "'");
    return *v;
  };
  if (auto* s = std::get_if<DeletePoint>(&step)) {
    const auto v = vertex(s->vertex);
    if (!is_simple_point(g, v, cache))
      throw RejectedStep(describe(step) + ": rim of " + s->vertex + " is not contractible");
    AttachPoint inv{s->vertex, {}};
    for (VertexId w : g.neighbors(v)) inv.rim.push_back(g.label(w));
    return {remove_vertex(g, v), inv};
  }
  if (auto* s = std::get_if<AttachPoint>(&step)) {
    if (g.contains(s->vertex)) throw RejectedStep(describe(step) + ": vertex already present");
    std::vector<VertexId> nb;
    for (const auto& l : s->rim) nb.push_back(vertex(l));
    if (!is_contractible(g.induced(nb), cache))
      throw RejectedStep(describe(step) + ": rim set does not induce a contractible subgraph");
    return {add_vertex(g, s->vertex, nb), DeletePoint{s->vertex}};
  }
  if (auto* s = std::get_if<DeleteEdge>(&step)) {
    const auto u = vertex(s->u), v = vertex(s->v);
    if (!g.adjacent(u, v)) throw RejectedStep(describe(step) + ": not an edge");
    if (!is_simple_edge(g, u, v, cache))
      throw RejectedStep(describe(step) + ": edge rim is not contractible");
    return {remove_edge(g, u, v), AttachEdge{s->u, s->v}};
  }
  const auto& s = std::get<AttachEdge>(step);
  const auto u = vertex(s.u), v = vertex(s.v);
  if (u == v) throw RejectedStep(describe(step) + ": self-loop");
  if (g.adjacent(u, v)) throw RejectedStep(describe(step) + ": already an edge");
  if (!is_contractible(g.induced(common_neighbors(g, u, v)), cache))
    throw RejectedStep(describe(step) + ": common neighbourhood is not contractible");
  return {add_edge(g, u, v), DeleteEdge{s.u, s.v}};
}

/// Replays a trace; a rejected step reports its position.
inline Graph replay(const Graph& g, const HomotopyTrace& trace, TopologyCache& cache = default_cache()) {
  Graph cur = g;
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    try {
      cur = apply_transformation(cur, trace.steps[i], cache).graph;
    } catch (const RejectedStep& e) {
      throw RejectedStep("step " + std::to_string(i) + ": " + e.what());
    }
  }
  return cur;
}

/// Inverse trace: replaying it from the target restores the source.
inline HomotopyTrace invert(const Graph& source, const HomotopyTrace& trace, TopologyCache& cache = default_cache()) {
  HomotopyTrace inv;
  Graph cur = source;
  for (const auto& s : trace.steps) {
    auto applied = apply_transformation(cur, s, cache);
    inv.steps.push_back(std::move(applied.inverse));
    cur = std::move(applied.graph);
  }
  std::reverse(inv.steps.begin(), inv.steps.end());
  return inv;
}

// --- reduction ----------------------------------------------------------------------

struct Reduction {
  Graph residue;
  HomotopyTrace trace;
};

/// Greedy simple-point deletion (smallest degree first, ties by label) until
/// no simple point remains.
inline Reduction reduce(const Graph& g, TopologyCache& cache = default_cache()) {
  auto run = detail::greedy_reduce(g, cache);
  Reduction out;
  for (VertexId v : run.deleted) out.trace.steps.push_back(DeletePoint{g.label(v)});
  std::vector<VertexId> keep;
  for (VertexId v = 0; v < g.order(); ++v)
    if (run.alive[v]) keep.push_back(v);
  out.residue = g.induced(keep);
  return out;
}

// --- homotopy equivalence (semi-decision) -------------------------------------------

struct EquivalenceVerdict {
  enum class Status { Equivalent, Distinguished, Unknown };
  Status status = Status::Unknown;
  /// Equivalent: replay(g, left) and replay(h, right) are isomorphic.
  HomotopyTrace left, right;
  /// Distinguished: the invariant that differs and both values.
  std::string invariant;
  std::string left_value, right_value;
};

inline const char* to_string(EquivalenceVerdict::Status s) {
  switch (s) {
    case EquivalenceVerdict::Status::Equivalent: return "Equivalent";
    case EquivalenceVerdict::Status::Distinguished: return "Distinguished";
    default: return "Unknown";
  }
}

namespace detail {

template <class T>
std::string join_values(const std::vector<T>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    if constexpr (std::is_arithmetic_v<T>) s += std::to_string(v[i]);
    else s += join_values(v[i]);
  }
  return s + "]";
}

inline std::vector<Step> candidate_moves(const Graph& g, TopologyCache& cache) {
  std::vector<Step> moves;
  for (VertexId u = 0; u < g.order(); ++u)
    for (VertexId v = u + 1; v < g.order(); ++v) {
      if (g.adjacent(u, v)) {
        if (is_simple_edge(g, u, v, cache)) moves.push_back(DeleteEdge{g.label(u), g.label(v)});
      } else {
        auto common = common_neighbors(g, u, v);
        if (!common.empty() && is_contractible(g.induced(common), cache))
          moves.push_back(AttachEdge{g.label(u), g.label(v)});
      }
    }
  return moves;
}

} // namespace detail

/// Distinguished when Euler characteristic or homology differ; Equivalent
/// when the greedy residues are isomorphic or a best-first search over edge
/// attachments/deletions (each followed by greedy reduction) joins the two
/// sides within `budget` expansions; Unknown otherwise.
inline EquivalenceVerdict homotopy_equivalent(const Graph& g, const Graph& h, std::size_t budget = 64,
                                              TopologyCache& cache = default_cache()) {
  using Status = EquivalenceVerdict::Status;
  EquivalenceVerdict out;
  {
    const auto eg = euler_characteristic(g, static_cast<int>(std::max<std::size_t>(g.order(), 1)));
    const auto eh = euler_characteristic(h, static_cast<int>(std::max<std::size_t>(h.order(), 1)));
    if (eg != eh) {
      out.status = Status::Distinguished;
      out.invariant = "euler";
      out.left_value = std::to_string(eg);
      out.right_value = std::to_string(eh);
      return out;
    }
    const auto hg = homology(g, static_cast<int>(std::max<std::size_t>(g.order(), 1)));
    const auto hh = homology(h, static_cast<int>(std::max<std::size_t>(h.order(), 1)));
    auto differ = [&](const char* name, const auto& a, const auto& b) {
      if (a == b) return false;
      out.status = Status::Distinguished;
      out.invariant = name;
      out.left_value = detail::join_values(a);
      out.right_value = detail::join_values(b);
      return true;
    };
    if (differ("betti_q", hg.betti_rational, hh.betti_rational) ||
        differ("betti_z2", hg.betti_mod2, hh.betti_mod2) || differ("torsion", hg.torsion, hh.torsion))
      return out;
  }

  struct State {
    Graph graph;
    HomotopyTrace trace;
  };
  std::vector<State> states[2];
  std::unordered_map<CanonicalKey, std::size_t, CanonicalKeyHash> seen[2];
  using Entry = std::tuple<std::size_t, std::size_t, int, std::size_t>;  // order, size, side, index
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> frontier;

  auto meet = [&](int side, std::size_t idx, const CanonicalKey& key) {
    auto it = seen[1 - side].find(key);
    if (it == seen[1 - side].end()) return false;
    out.status = Status::Equivalent;
    const auto& mine = states[side][idx].trace;
    const auto& theirs = states[1 - side][it->second].trace;
    out.left = side == 0 ? mine : theirs;
    out.right = side == 0 ? theirs : mine;
    return true;
  };
  auto add = [&](int side, Graph graph, HomotopyTrace trace) {
    auto key = canonical_key(graph);
    if (seen[side].contains(key)) return false;
    const auto idx = states[side].size();
    frontier.emplace(graph.order(), graph.size(), side, idx);
    states[side].push_back({std::move(graph), std::move(trace)});
    seen[side].emplace(key, idx);
    return meet(side, idx, key);
  };

  const Graph* roots[2] = {&g, &h};
  for (int side = 0; side < 2; ++side) {
    auto r = reduce(*roots[side], cache);
    if (add(side, std::move(r.residue), std::move(r.trace))) return out;
  }
  while (budget-- > 0 && !frontier.empty()) {
    auto [ord, sz, side, idx] = frontier.top();
    frontier.pop();
    const Graph base = states[side][idx].graph;
    const HomotopyTrace base_trace = states[side][idx].trace;
    for (auto& move : detail::candidate_moves(base, cache)) {
      auto next = apply_transformation(base, move, cache).graph;
      auto r = reduce(next, cache);
      HomotopyTrace t = base_trace;
      t.steps.push_back(move);
      t.append(r.trace);
      if (add(side, std::move(r.residue), std::move(t))) return out;
    }
  }
  return out;
}

} // namespace digitop
