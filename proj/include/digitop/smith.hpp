#pragma once

// Integer normal-form reduction of sparse matrices. Unit pivots are eliminated
// sparsely with checked 64-bit arithmetic; whatever remains (no unit entries,
// or an overflow) is finished densely in arbitrary precision. The result is the
// rank together with the invariant factors greater than one.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace digitop {

using BigInt = boost::multiprecision::cpp_int;

struct SparseEntry {
  std::uint32_t col;
  std::int64_t value;
};

/// Row-major sparse integer matrix; each row sorted by column, no zeros.
struct SparseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::vector<SparseEntry>> data;
};

struct NormalForm {
  std::size_t rank = 0;
  /// Invariant factors d > 1, ascending.
  std::vector<BigInt> torsion;
  /// Number of invariant factors that are odd (the rank over GF(2)).
  std::size_t rank_mod2() const {
    std::size_t even = 0;
    for (const auto& d : torsion)
      if ((d & 1) == 0) ++even;
    return rank - even;
  }
};

namespace detail {

inline bool checked_axpy(std::int64_t a, std::int64_t k, std::int64_t b, std::int64_t& out) {
  // out = a - k * b
  std::int64_t prod;
  if (__builtin_mul_overflow(k, b, &prod)) return false;
  return !__builtin_sub_overflow(a, prod, &out);
}

// Dense Smith normal form over arbitrary precision integers; returns the
// nonzero diagonal entries.
inline std::vector<BigInt> dense_smith(std::vector<std::vector<BigInt>> m) {
  std::vector<BigInt> diag;
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  std::size_t t = 0;
  while (t < rows && t < cols) {
    // pivot: smallest nonzero absolute value in the trailing block
    std::size_t pr = rows, pc = cols;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (m[i][j] != 0 && (pr == rows || abs(m[i][j]) < abs(m[pr][pc]))) {
          pr = i;
          pc = j;
        }
    if (pr == rows) break;
    std::swap(m[t], m[pr]);
    for (auto& r : m) std::swap(r[t], r[pc]);
    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (m[i][t] == 0) continue;
        BigInt q = m[i][t] / m[t][t];
        for (std::size_t j = t; j < cols; ++j) m[i][j] -= q * m[t][j];
        if (m[i][t] != 0) {
          clean = false;
          std::swap(m[t], m[i]);
        }
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (m[t][j] == 0) continue;
        BigInt q = m[t][j] / m[t][t];
        for (std::size_t i = t; i < rows; ++i) m[i][j] -= q * m[i][t];
        if (m[t][j] != 0) {
          clean = false;
          for (auto& r : m) std::swap(r[t], r[j]);
        }
      }
      if (!clean) continue;
      // the pivot must divide the whole trailing block
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (m[i][j] % m[t][t] != 0) {
            for (std::size_t k = t; k < cols; ++k) m[t][k] += m[i][k];
            divides = false;
            break;
          }
      if (divides) break;
    }
    diag.push_back(abs(m[t][t]));
    ++t;
  }
  // the diagonal is a divisibility chain only up to reordering of gcd/lcm;
  // normalise pairwise so the factors are canonical invariant factors
  for (std::size_t i = 0; i < diag.size(); ++i)
    for (std::size_t j = i + 1; j < diag.size(); ++j) {
      BigInt g = gcd(diag[i], diag[j]);
      BigInt l = diag[i] / g * diag[j];
      diag[i] = g;
      diag[j] = l;
    }
  return diag;
}

} // namespace detail

inline NormalForm dense_normal_form(const SparseMatrix& m) {
  NormalForm out;
  std::vector<std::vector<BigInt>> dense(m.rows, std::vector<BigInt>(m.cols));
  for (std::size_t r = 0; r < m.rows; ++r)
    for (const auto& e : m.data[r]) dense[r][e.col] = e.value;
  for (auto& d : detail::dense_smith(std::move(dense))) {
    ++out.rank;
    if (d > 1) out.torsion.push_back(d);
  }
  std::sort(out.torsion.begin(), out.torsion.end());
  return out;
}

inline NormalForm integer_normal_form(const SparseMatrix& input) {
  SparseMatrix m = input;
  NormalForm out;
  std::vector<std::set<std::uint32_t>> col_rows(m.cols);
  for (std::uint32_t r = 0; r < m.rows; ++r)
    for (const auto& e : m.data[r]) col_rows[e.col].insert(r);
  std::vector<bool> row_alive(m.rows, true), col_alive(m.cols, true);

  auto entry = [&](std::uint32_t r, std::uint32_t c) -> std::int64_t {
    const auto& row = m.data[r];
    auto it = std::lower_bound(row.begin(), row.end(), c,
                               [](const SparseEntry& e, std::uint32_t x) { return e.col < x; });
    return (it != row.end() && it->col == c) ? it->value : 0;
  };

  bool overflow = false;
  bool progress = true;
  std::vector<SparseEntry> merged;
  while (progress && !overflow) {
    progress = false;
    std::vector<std::uint32_t> order;
    for (std::uint32_t c = 0; c < m.cols; ++c)
      if (col_alive[c] && !col_rows[c].empty()) order.push_back(c);
    std::stable_sort(order.begin(), order.end(),
                     [&](auto a, auto b) { return col_rows[a].size() < col_rows[b].size(); });
    for (auto c : order) {
      if (!col_alive[c] || col_rows[c].empty()) continue;
      // unit entry in column c on the shortest row
      std::uint32_t pivot_row = 0;
      std::size_t best_len = SIZE_MAX;
      for (auto r : col_rows[c]) {
        auto v = entry(r, c);
        if ((v == 1 || v == -1) && m.data[r].size() < best_len) {
          best_len = m.data[r].size();
          pivot_row = r;
        }
      }
      if (best_len == SIZE_MAX) continue;
      const auto pv = entry(pivot_row, c);
      const auto& prow = m.data[pivot_row];
      std::vector<std::uint32_t> targets;
      for (auto r : col_rows[c])
        if (r != pivot_row) targets.push_back(r);
      for (auto r : targets) {
        const std::int64_t k = entry(r, c) * pv;  // pv = +-1, so k = a_rc / pv
        auto& row = m.data[r];
        merged.clear();
        std::size_t i = 0, j = 0;
        while (i < row.size() || j < prow.size()) {
          if (j == prow.size() || (i < row.size() && row[i].col < prow[j].col)) {
            merged.push_back(row[i++]);
          } else if (i == row.size() || prow[j].col < row[i].col) {
            std::int64_t v = 0;
            if (!detail::checked_axpy(0, k, prow[j].value, v)) overflow = true;
            merged.push_back({prow[j].col, v});
            col_rows[prow[j].col].insert(r);
            ++j;
          } else {
            std::int64_t v = 0;
            if (!detail::checked_axpy(row[i].value, k, prow[j].value, v)) overflow = true;
            if (v != 0) merged.push_back({row[i].col, v});
            else col_rows[row[i].col].erase(r);
            ++i;
            ++j;
          }
          if (overflow) break;
        }
        if (overflow) break;
        row.swap(merged);
      }
      if (overflow) break;
      for (const auto& e : prow) col_rows[e.col].erase(pivot_row);
      m.data[pivot_row].clear();
      row_alive[pivot_row] = false;
      col_alive[c] = false;
      ++out.rank;
      progress = true;
    }
  }

  // a row was left half-updated: redo everything in arbitrary precision
  if (overflow) return dense_normal_form(input);

  std::vector<std::uint32_t> live_rows, live_cols;
  for (std::uint32_t r = 0; r < m.rows; ++r)
    if (row_alive[r] && !m.data[r].empty()) live_rows.push_back(r);
  for (std::uint32_t c = 0; c < m.cols; ++c)
    if (col_alive[c] && !col_rows[c].empty()) live_cols.push_back(c);
  if (live_rows.empty() || live_cols.empty()) return out;
  std::map<std::uint32_t, std::size_t> col_pos;
  for (std::size_t j = 0; j < live_cols.size(); ++j) col_pos[live_cols[j]] = j;
  std::vector<std::vector<BigInt>> dense(live_rows.size(), std::vector<BigInt>(live_cols.size()));
  for (std::size_t i = 0; i < live_rows.size(); ++i)
    for (const auto& e : m.data[live_rows[i]]) dense[i][col_pos.at(e.col)] = e.value;
  for (auto& d : detail::dense_smith(std::move(dense))) {
    ++out.rank;
    if (d > 1) out.torsion.push_back(d);
  }
  std::sort(out.torsion.begin(), out.torsion.end());
  return out;
}

/// Rank over GF(2) by column reduction on sorted row-index lists.
inline std::size_t rank_mod2(const SparseMatrix& m) {
  std::vector<std::vector<std::uint32_t>> cols(m.cols);
  for (std::uint32_t r = 0; r < m.rows; ++r)
    for (const auto& e : m.data[r])
      if (e.value % 2 != 0) cols[e.col].push_back(r);
  std::vector<std::int64_t> owner(m.rows, -1);
  std::size_t rank = 0;
  std::vector<std::uint32_t> tmp;
  for (std::uint32_t c = 0; c < m.cols; ++c) {
    auto& col = cols[c];
    std::sort(col.begin(), col.end());
    while (!col.empty() && owner[col.back()] >= 0) {
      const auto& other = cols[static_cast<std::size_t>(owner[col.back()])];
      tmp.clear();
      std::set_symmetric_difference(col.begin(), col.end(), other.begin(), other.end(),
                                    std::back_inserter(tmp));
      col.swap(tmp);
    }
    if (!col.empty()) {
      owner[col.back()] = c;
      ++rank;
    }
  }
  return rank;
}

} // namespace digitop
