#pragma once

// Random box covers of a single box: segment partitions of an interval and
// brick rows of a rectangle in which adjacent rows never share a cut.

#include <random>
#include <set>
#include <vector>

#include "digitop/covers.hpp"

namespace covergen {

using digitop::BoxCell;
using digitop::BoxCover;
using digitop::Rational;

// k distinct cut positions strictly inside (0, width), on a grid of step 1/den.
inline std::set<Rational> cuts(std::mt19937_64& rng, int width, int den, std::size_t k,
                               const std::set<Rational>& avoid = {}) {
  std::set<Rational> out;
  std::uniform_int_distribution<int> pick(1, width * den - 1);
  for (std::size_t tries = 0; out.size() < k && tries < 1000; ++tries) {
    Rational c(pick(rng), den);
    if (!avoid.contains(c)) out.insert(c);
  }
  return out;
}

inline BoxCover interval_partition(std::mt19937_64& rng) {
  const int width = std::uniform_int_distribution<int>(2, 6)(rng);
  const int den = std::uniform_int_distribution<int>(1, 4)(rng);
  const auto k = std::uniform_int_distribution<std::size_t>(1, static_cast<std::size_t>(width * den - 1))(rng);
  auto c = cuts(rng, width, den, std::min<std::size_t>(k, 7));
  std::vector<Rational> pts{0};
  pts.insert(pts.end(), c.begin(), c.end());
  pts.push_back(width);
  std::vector<BoxCell> cells;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) cells.push_back({{pts[i]}, {pts[i + 1]}});
  return digitop::make_cover(1, 1, digitop::Domain::euclidean(1), std::move(cells));
}

inline BoxCover brick_rows(std::mt19937_64& rng) {
  const int width = std::uniform_int_distribution<int>(2, 5)(rng);
  const int rows = std::uniform_int_distribution<int>(1, 4)(rng);
  const int den = std::uniform_int_distribution<int>(2, 4)(rng);
  std::vector<BoxCell> cells;
  std::set<Rational> previous;
  for (int r = 0; r < rows; ++r) {
    const auto k = std::uniform_int_distribution<std::size_t>(0, 4)(rng);
    auto c = cuts(rng, width, den, k, previous);
    std::vector<Rational> pts{0};
    pts.insert(pts.end(), c.begin(), c.end());
    pts.push_back(width);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) cells.push_back({{pts[i], Rational(r)}, {pts[i + 1], Rational(r + 1)}});
    previous = std::move(c);
  }
  return digitop::make_cover(2, 2, digitop::Domain::euclidean(2), std::move(cells));
}

/// Covers of one box, alternating between the two families. Every member is
/// meant to be LCL; callers check that.
inline std::vector<BoxCover> single_box_suite(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<BoxCover> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(i % 2 ? brick_rows(rng) : interval_partition(rng));
  return out;
}

} // namespace covergen
