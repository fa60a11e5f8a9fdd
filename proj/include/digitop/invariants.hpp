#pragma once

// Clique counts, Euler characteristic and homology of the clique complex: the
// quantities that contractible transformations leave unchanged.

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "digitop/graph.hpp"
#include "digitop/smith.hpp"

namespace digitop {

/// counts[k - 1] is the number of k-vertex cliques; trailing zeros trimmed.
struct CliqueVector {
  std::vector<std::uint64_t> counts;

  std::size_t clique_number() const noexcept { return counts.size(); }
  friend bool operator==(const CliqueVector&, const CliqueVector&) = default;
};

struct HomologyProfile {
  std::vector<std::int64_t> betti_rational;
  std::vector<std::int64_t> betti_mod2;
  /// torsion[k]: orders of the cyclic torsion summands of H_k, ascending.
  std::vector<std::vector<std::int64_t>> torsion;

  friend bool operator==(const HomologyProfile&, const HomologyProfile&) = default;
};

/// Largest simplex dimension enumerated before giving up on a graph.
inline constexpr int kMaxCliqueDimension = 8;

class CliqueLimitError : public std::length_error {
public:
  using std::length_error::length_error;
};

namespace detail {

// Visits every clique exactly once as an increasing vertex sequence.
inline void for_each_clique(const Graph& g, std::size_t max_size,
                            const std::function<void(const std::vector<VertexId>&)>& visit) {
  const std::size_t words = g.words();
  std::vector<VertexId> clique;
  std::function<void(const std::vector<std::uint64_t>&)> extend =
      [&](const std::vector<std::uint64_t>& cand) {
        visit(clique);
        bool any = false;
        for (auto w : cand) any = any || w != 0;
        if (!any) return;
        if (clique.size() >= max_size)
          throw CliqueLimitError("clique of size " + std::to_string(clique.size() + 1) +
                                 " exceeds the enumeration cap of " + std::to_string(max_size));
        for (std::size_t wi = 0; wi < words; ++wi) {
          auto bits = cand[wi];
          while (bits) {
            const auto b = static_cast<unsigned>(__builtin_ctzll(bits));
            bits &= bits - 1;
            const auto v = static_cast<VertexId>(wi * 64 + b);
            // candidates after v that are adjacent to v
            std::vector<std::uint64_t> next(words, 0);
            auto row = g.row(v);
            for (std::size_t k = wi; k < words; ++k) {
              auto mask = cand[k];
              if (k == wi) mask &= (b == 63) ? 0 : (~std::uint64_t{0} << (b + 1));
              next[k] = mask & row[k];
            }
            clique.push_back(v);
            extend(next);
            clique.pop_back();
          }
        }
      };
  for (VertexId v = 0; v < g.order(); ++v) {
    std::vector<std::uint64_t> cand(words, 0);
    auto row = g.row(v);
    for (std::size_t k = v / 64; k < words; ++k) {
      auto mask = ~std::uint64_t{0};
      if (k == v / 64) mask = (v % 64 == 63) ? 0 : (~std::uint64_t{0} << (v % 64 + 1));
      cand[k] = row[k] & mask;
    }
    clique.assign(1, v);
    extend(cand);
  }
}

} // namespace detail

inline CliqueVector clique_vector(const Graph& g, int max_dimension = kMaxCliqueDimension) {
  CliqueVector out;
  detail::for_each_clique(g, static_cast<std::size_t>(max_dimension) + 1,
                          [&](const std::vector<VertexId>& c) {
                            if (out.counts.size() < c.size()) out.counts.resize(c.size(), 0);
                            ++out.counts[c.size() - 1];
                          });
  return out;
}

inline std::int64_t euler_characteristic(const CliqueVector& c) {
  std::int64_t chi = 0;
  for (std::size_t k = 0; k < c.counts.size(); ++k)
    chi += (k % 2 == 0 ? 1 : -1) * static_cast<std::int64_t>(c.counts[k]);
  return chi;
}

inline std::int64_t euler_characteristic(const Graph& g, int max_dimension = kMaxCliqueDimension) {
  return euler_characteristic(clique_vector(g, max_dimension));
}

/// simplices[k] lists the k-dimensional simplices (k+1 sorted vertex indices),
/// in lexicographic order.
inline std::vector<std::vector<std::vector<VertexId>>> clique_simplices(const Graph& g,
                                                                        int max_dimension = kMaxCliqueDimension) {
  std::vector<std::vector<std::vector<VertexId>>> out;
  detail::for_each_clique(g, static_cast<std::size_t>(max_dimension) + 1,
                          [&](const std::vector<VertexId>& c) {
                            if (out.size() < c.size()) out.resize(c.size());
                            out[c.size() - 1].push_back(c);
                          });
  for (auto& level : out) std::sort(level.begin(), level.end());
  return out;
}

/// Boundary map from k-simplices to (k-1)-simplices with the alternating
/// orientation induced by the lexicographic vertex order. Rows index faces.
inline SparseMatrix boundary_matrix(const std::vector<std::vector<VertexId>>& faces,
                                    const std::vector<std::vector<VertexId>>& simplices) {
  SparseMatrix m;
  m.rows = faces.size();
  m.cols = simplices.size();
  m.data.assign(m.rows, {});
  std::vector<VertexId> face;
  for (std::uint32_t j = 0; j < simplices.size(); ++j) {
    const auto& s = simplices[j];
    for (std::size_t drop = 0; drop < s.size(); ++drop) {
      face.clear();
      for (std::size_t t = 0; t < s.size(); ++t)
        if (t != drop) face.push_back(s[t]);
      auto it = std::lower_bound(faces.begin(), faces.end(), face);
      const auto row = static_cast<std::size_t>(it - faces.begin());
      m.data[row].push_back({j, drop % 2 == 0 ? 1 : -1});
    }
  }
  return m;  // columns were visited in increasing order, so rows are sorted
}

inline HomologyProfile homology(const Graph& g, int max_dimension = kMaxCliqueDimension) {
  const auto simplices = clique_simplices(g, max_dimension);
  const std::size_t top = simplices.size();  // dimensions 0 .. top-1
  HomologyProfile out;
  if (top == 0) return out;
  // rank of boundary d_k : C_k -> C_{k-1}, k = 1 .. top-1
  std::vector<std::size_t> rank_q(top + 1, 0), rank_2(top + 1, 0);
  std::vector<std::vector<BigInt>> factors(top + 1);
  for (std::size_t k = 1; k < top; ++k) {
    auto d = boundary_matrix(simplices[k - 1], simplices[k]);
    rank_2[k] = rank_mod2(d);
    auto nf = integer_normal_form(d);
    rank_q[k] = nf.rank;
    factors[k] = std::move(nf.torsion);
  }
  out.betti_rational.resize(top);
  out.betti_mod2.resize(top);
  out.torsion.resize(top);
  for (std::size_t k = 0; k < top; ++k) {
    const auto dim = static_cast<std::int64_t>(simplices[k].size());
    out.betti_rational[k] = dim - static_cast<std::int64_t>(rank_q[k] + rank_q[k + 1]);
    out.betti_mod2[k] = dim - static_cast<std::int64_t>(rank_2[k] + rank_2[k + 1]);
    for (const auto& f : factors[k + 1]) out.torsion[k].push_back(static_cast<std::int64_t>(f));
  }
  return out;
}

} // namespace digitop
