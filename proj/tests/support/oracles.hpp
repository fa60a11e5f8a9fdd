#pragma once

// Slow, independent reference implementations used to check the library.
// Nothing here shares code with the algorithms under test beyond the Graph
// container itself.

#include <algorithm>
#include <bitset>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "digitop/graph.hpp"

namespace oracle {

using digitop::Graph;
using digitop::VertexId;
using Q = boost::multiprecision::cpp_rational;

/// Clique counts by checking every vertex subset (n <= 20).
inline std::vector<std::uint64_t> clique_counts(const Graph& g) {
  const auto n = g.order();
  std::vector<std::uint64_t> counts;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    bool clique = true;
    for (VertexId u = 0; u < n && clique; ++u)
      for (VertexId v = u + 1; v < n && clique; ++v)
        if ((mask >> u & 1) && (mask >> v & 1) && !g.adjacent(u, v)) clique = false;
    if (!clique) continue;
    const auto k = static_cast<std::size_t>(__builtin_popcount(mask));
    if (counts.size() < k) counts.resize(k, 0);
    ++counts[k - 1];
  }
  return counts;
}

inline std::int64_t euler(const Graph& g) {
  std::int64_t chi = 0;
  auto c = clique_counts(g);
  for (std::size_t k = 0; k < c.size(); ++k) chi += (k % 2 ? -1 : 1) * static_cast<std::int64_t>(c[k]);
  return chi;
}

/// Simplices per dimension from subset enumeration, each as a sorted vertex list.
inline std::vector<std::vector<std::vector<VertexId>>> simplices(const Graph& g) {
  std::vector<std::vector<std::vector<VertexId>>> out;
  const auto n = g.order();
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::vector<VertexId> s;
    for (VertexId v = 0; v < n; ++v)
      if (mask >> v & 1) s.push_back(v);
    bool clique = true;
    for (std::size_t i = 0; i < s.size() && clique; ++i)
      for (std::size_t j = i + 1; j < s.size() && clique; ++j) clique = g.adjacent(s[i], s[j]);
    if (!clique) continue;
    if (out.size() < s.size()) out.resize(s.size());
    out[s.size() - 1].push_back(s);
  }
  return out;
}

/// Dense boundary matrix d_k with (-1)^i on the face that drops vertex i.
inline std::vector<std::vector<std::int64_t>> boundary(const std::vector<std::vector<VertexId>>& faces,
                                                      const std::vector<std::vector<VertexId>>& cells) {
  std::map<std::vector<VertexId>, std::size_t> index;
  for (std::size_t i = 0; i < faces.size(); ++i) index[faces[i]] = i;
  std::vector<std::vector<std::int64_t>> m(faces.size(), std::vector<std::int64_t>(cells.size(), 0));
  for (std::size_t j = 0; j < cells.size(); ++j)
    for (std::size_t drop = 0; drop < cells[j].size(); ++drop) {
      auto f = cells[j];
      f.erase(f.begin() + static_cast<long>(drop));
      m[index.at(f)][j] = drop % 2 ? -1 : 1;
    }
  return m;
}

/// Rank over the rationals by plain Gaussian elimination.
inline std::size_t rank_q(const std::vector<std::vector<std::int64_t>>& a) {
  if (a.empty()) return 0;
  std::vector<std::vector<Q>> m(a.size(), std::vector<Q>(a[0].size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) m[i][j] = a[i][j];
  std::size_t r = 0;
  for (std::size_t c = 0; c < m[0].size() && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      const Q f = m[i][c] / m[r][c];
      for (std::size_t j = c; j < m[i].size(); ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

/// Rank over GF(2).
inline std::size_t rank_2(const std::vector<std::vector<std::int64_t>>& a) {
  if (a.empty()) return 0;
  std::vector<std::vector<bool>> m(a.size(), std::vector<bool>(a[0].size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) m[i][j] = (a[i][j] % 2) != 0;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m[0].size() && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && !m[p][c]) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = 0; i < m.size(); ++i)
      if (i != r && m[i][c])
        for (std::size_t j = c; j < m[i].size(); ++j) m[i][j] = m[i][j] != m[r][j];
    ++r;
  }
  return r;
}

struct Betti {
  std::vector<std::int64_t> q, z2;
};

/// Drops trailing zeros so profiles of different clique dimension compare.
inline std::vector<std::int64_t> trimmed(std::vector<std::int64_t> v) {
  while (v.size() > 1 && v.back() == 0) v.pop_back();
  return v;
}

inline Betti betti(const Graph& g) {
  const auto s = simplices(g);
  Betti b;
  const auto top = s.size();
  std::vector<std::size_t> rq(top + 1, 0), r2(top + 1, 0);
  for (std::size_t k = 1; k < top; ++k) {
    auto d = boundary(s[k - 1], s[k]);
    rq[k] = rank_q(d);
    r2[k] = rank_2(d);
  }
  for (std::size_t k = 0; k < top; ++k) {
    const auto dim = static_cast<std::int64_t>(s[k].size());
    b.q.push_back(dim - static_cast<std::int64_t>(rq[k] + rq[k + 1]));
    b.z2.push_back(dim - static_cast<std::int64_t>(r2[k] + r2[k + 1]));
  }
  return b;
}

/// Contractibility straight from the definition: some simple point whose
/// deletion leaves a contractible graph. Exponential; small graphs only.
inline bool contractible(const Graph& g) {
  if (g.order() == 0) return false;
  if (g.order() == 1) return true;
  for (VertexId v = 0; v < g.order(); ++v)
    if (contractible(digitop::rim(g, v)) && contractible(digitop::remove_vertex(g, v))) return true;
  return false;
}

/// Isomorphism by trying every bijection (n <= 9).
inline bool isomorphic(const Graph& a, const Graph& b) {
  if (a.order() != b.order() || a.size() != b.size()) return false;
  std::vector<VertexId> p(a.order());
  std::iota(p.begin(), p.end(), 0);
  do {
    bool ok = true;
    for (VertexId u = 0; u < a.order() && ok; ++u)
      for (VertexId v = u + 1; v < a.order() && ok; ++v) ok = a.adjacent(u, v) == b.adjacent(p[u], p[v]);
    if (ok) return true;
  } while (std::next_permutation(p.begin(), p.end()));
  return false;
}

inline Graph random_graph(std::mt19937_64& rng, std::size_t n, double p, const std::string& prefix = "r") {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(prefix + std::to_string(i));
  std::vector<digitop::Edge> edges;
  std::bernoulli_distribution coin(p);
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = u + 1; v < n; ++v)
      if (coin(rng)) edges.push_back({u, v});
  return Graph::from_indices(std::move(labels), edges);
}

/// The same graph under a random relabeling and vertex order.
inline Graph shuffled(const Graph& g, std::mt19937_64& rng, const std::string& prefix = "s") {
  std::vector<VertexId> perm(g.order());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<std::string> labels(g.order());
  for (VertexId v = 0; v < g.order(); ++v) labels[perm[v]] = prefix + std::to_string(rng() % 1000000) + "_" + std::to_string(v);
  std::vector<digitop::Edge> edges;
  for (auto [u, v] : g.edges()) edges.push_back({perm[u], perm[v]});
  return Graph::from_indices(std::move(labels), edges);
}

} // namespace oracle
