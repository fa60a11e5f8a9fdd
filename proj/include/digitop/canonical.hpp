#pragma once

// Exact canonical form of a graph by colour refinement plus an
// individualization search tree, pruned with the automorphisms discovered at
// equal leaves. The key is the vertex count followed by the upper triangle of
// the lexicographically least adjacency matrix found among the leaves, so equal
// keys imply isomorphic graphs.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "digitop/graph.hpp"

namespace digitop {

struct CanonicalKey {
  std::string bytes;

  friend bool operator==(const CanonicalKey&, const CanonicalKey&) = default;
  friend auto operator<=>(const CanonicalKey&, const CanonicalKey&) = default;

  std::string hex() const {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (unsigned char c : bytes) {
      out.push_back(digits[c >> 4]);
      out.push_back(digits[c & 15]);
    }
    return out;
  }
};

struct CanonicalKeyHash {
  std::size_t operator()(const CanonicalKey& k) const noexcept {
    return std::hash<std::string>{}(k.bytes);
  }
};

struct CanonicalForm {
  CanonicalKey key;
  /// order[i] is the vertex placed at canonical position i.
  std::vector<VertexId> order;
};

namespace detail {

using Cells = std::vector<std::vector<VertexId>>;

// Splits every cell by the multiset of neighbour counts into each cell until
// the partition is equitable. Sub-cells are ordered by signature, so the
// result depends only on the isomorphism class of (graph, input partition).
inline void refine(const Graph& g, Cells& cells) {
  std::vector<std::uint32_t> cell_of(g.order());
  std::vector<std::uint32_t> scratch;
  using Signature = std::vector<std::pair<std::uint32_t, std::uint32_t>>;
  for (;;) {
    for (std::uint32_t i = 0; i < cells.size(); ++i)
      for (VertexId v : cells[i]) cell_of[v] = i;
    Cells next;
    next.reserve(cells.size());
    bool split = false;
    for (auto& cell : cells) {
      if (cell.size() == 1) {
        next.push_back(std::move(cell));
        continue;
      }
      std::vector<std::pair<Signature, VertexId>> sigs;
      sigs.reserve(cell.size());
      for (VertexId v : cell) {
        scratch.clear();
        for (VertexId w : g.neighbors(v)) scratch.push_back(cell_of[w]);
        std::sort(scratch.begin(), scratch.end());
        Signature s;
        for (std::size_t i = 0; i < scratch.size();) {
          std::size_t j = i;
          while (j < scratch.size() && scratch[j] == scratch[i]) ++j;
          s.emplace_back(scratch[i], static_cast<std::uint32_t>(j - i));
          i = j;
        }
        sigs.emplace_back(std::move(s), v);
      }
      std::stable_sort(sigs.begin(), sigs.end(),
                       [](const auto& a, const auto& b) { return a.first < b.first; });
      std::size_t start = next.size();
      next.emplace_back();
      for (std::size_t i = 0; i < sigs.size(); ++i) {
        if (i > 0 && sigs[i].first != sigs[i - 1].first) next.emplace_back();
        next.back().push_back(sigs[i].second);
      }
      if (next.size() - start > 1) split = true;
    }
    cells = std::move(next);
    if (!split) return;
  }
}

class CanonicalSearch {
public:
  explicit CanonicalSearch(const Graph& g) : g_(g), n_(g.order()) {}

  CanonicalForm run() {
    Cells cells;
    if (n_ > 0) cells.push_back(all_vertices(g_));
    std::vector<VertexId> prefix;
    if (n_ > 0) search(std::move(cells), prefix);
    CanonicalForm out;
    out.order = best_lab_;
    auto& b = out.key.bytes;
    const auto n32 = static_cast<std::uint32_t>(n_);
    for (int i = 0; i < 4; ++i) b.push_back(static_cast<char>((n32 >> (8 * i)) & 0xff));
    for (auto w : best_cert_)
      for (int i = 0; i < 8; ++i) b.push_back(static_cast<char>((w >> (8 * i)) & 0xff));
    return out;
  }

private:
  void search(Cells cells, std::vector<VertexId>& prefix) {
    refine(g_, cells);
    std::size_t target = cells.size();
    for (std::size_t i = 0; i < cells.size(); ++i)
      if (cells[i].size() > 1 && (target == cells.size() || cells[i].size() < cells[target].size()))
        target = i;
    if (target == cells.size()) {
      leaf(cells);
      return;
    }
    std::vector<VertexId> explored;
    const auto candidates = cells[target];
    for (VertexId c : candidates) {
      if (!explored.empty() && in_explored_orbit(c, explored, prefix)) continue;
      Cells child;
      child.reserve(cells.size() + 1);
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i != target) {
          child.push_back(cells[i]);
          continue;
        }
        child.push_back({c});
        std::vector<VertexId> rest;
        for (VertexId v : cells[i])
          if (v != c) rest.push_back(v);
        child.push_back(std::move(rest));
      }
      prefix.push_back(c);
      search(std::move(child), prefix);
      prefix.pop_back();
      explored.push_back(c);
    }
  }

  bool in_explored_orbit(VertexId c, const std::vector<VertexId>& explored,
                         const std::vector<VertexId>& prefix) {
    if (autos_.empty()) return false;
    std::vector<VertexId> parent(n_);
    for (VertexId i = 0; i < n_; ++i) parent[i] = i;
    std::function<VertexId(VertexId)> find = [&](VertexId x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto& perm : autos_) {
      bool fixes = std::all_of(prefix.begin(), prefix.end(), [&](VertexId p) { return perm[p] == p; });
      if (!fixes) continue;
      for (VertexId i = 0; i < n_; ++i) {
        auto a = find(i), b = find(perm[i]);
        if (a != b) parent[a] = b;
      }
    }
    const auto rc = find(c);
    return std::any_of(explored.begin(), explored.end(), [&](VertexId e) { return find(e) == rc; });
  }

  std::vector<std::uint64_t> certificate(const std::vector<VertexId>& lab) const {
    std::vector<std::uint64_t> cert((n_ * (n_ - 1) / 2 + 63) / 64, 0);
    std::size_t bit = 0;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j, ++bit)
        if (g_.adjacent(lab[i], lab[j])) cert[bit / 64] |= std::uint64_t{1} << (63 - bit % 64);
    return cert;
  }

  void leaf(const Cells& cells) {
    std::vector<VertexId> lab;
    lab.reserve(n_);
    for (const auto& c : cells) lab.push_back(c.front());
    auto cert = certificate(lab);
    if (first_lab_.empty()) {
      first_lab_ = lab;
      first_cert_ = cert;
      best_lab_ = std::move(lab);
      best_cert_ = std::move(cert);
      return;
    }
    if (cert == first_cert_) record_automorphism(first_lab_, lab);
    if (cert == best_cert_) {
      record_automorphism(best_lab_, lab);
    } else if (cert < best_cert_) {
      best_cert_ = std::move(cert);
      best_lab_ = std::move(lab);
    }
  }

  void record_automorphism(const std::vector<VertexId>& from, const std::vector<VertexId>& to) {
    std::vector<VertexId> perm(n_);
    bool identity = true;
    for (std::size_t i = 0; i < n_; ++i) {
      perm[from[i]] = to[i];
      identity = identity && from[i] == to[i];
    }
    if (!identity) autos_.push_back(std::move(perm));
  }

  const Graph& g_;
  std::size_t n_;
  std::vector<VertexId> first_lab_, best_lab_;
  std::vector<std::uint64_t> first_cert_, best_cert_;
  std::vector<std::vector<VertexId>> autos_;
};

} // namespace detail

inline CanonicalForm canonical_form(const Graph& g) { return detail::CanonicalSearch(g).run(); }

inline CanonicalKey canonical_key(const Graph& g) { return canonical_form(g).key; }

inline bool isomorphic(const Graph& a, const Graph& b) {
  if (a.order() != b.order() || a.size() != b.size()) return false;
  return canonical_key(a) == canonical_key(b);
}

/// An isomorphism a -> b as a label map, when one exists.
inline std::optional<std::map<std::string, std::string>> find_isomorphism(const Graph& a, const Graph& b) {
  if (a.order() != b.order() || a.size() != b.size()) return std::nullopt;
  auto fa = canonical_form(a), fb = canonical_form(b);
  if (fa.key != fb.key) return std::nullopt;
  std::map<std::string, std::string> out;
  for (std::size_t i = 0; i < fa.order.size(); ++i) out.emplace(a.label(fa.order[i]), b.label(fb.order[i]));
  return out;
}

} // namespace digitop
