#include <catch_amalgamated.hpp>

#include <random>

#include "digitop/canonical.hpp"
#include "support/oracles.hpp"

using namespace digitop;

TEST_CASE("relabelled copies share a key", "[canonical]") {
  auto a = build_graph({"a", "b", "c", "d"}, {{"a", "b"}, {"b", "c"}, {"c", "d"}, {"d", "a"}});
  auto b = build_graph({"w", "x", "y", "z"}, {{"w", "y"}, {"y", "x"}, {"x", "z"}, {"z", "w"}});
  CHECK(canonical_key(a) == canonical_key(b));
}

TEST_CASE("C4 and P4 differ", "[canonical]") {
  CHECK_FALSE(canonical_key(cycle_graph(4)) == canonical_key(path_graph(4)));
}

TEST_CASE("empty graph has a stable key distinct from a point", "[canonical]") {
  CHECK(canonical_key(Graph{}) == canonical_key(Graph{}));
  CHECK_FALSE(canonical_key(Graph{}) == canonical_key(edgeless_graph(1)));
}

TEST_CASE("keys agree with brute-force isomorphism", "[canonical]") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 300; ++t) {
    const auto n = 1 + rng() % 7;
    auto a = oracle::random_graph(rng, n, 0.45, "a");
    auto b = rng() % 2 ? oracle::shuffled(a, rng) : oracle::random_graph(rng, n, 0.45, "b");
    CHECK((canonical_key(a) == canonical_key(b)) == oracle::isomorphic(a, b));
  }
}

TEST_CASE("keys are invariant under shuffling on larger graphs", "[canonical]") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 40; ++t) {
    auto a = oracle::random_graph(rng, 10 + rng() % 20, 0.3);
    CHECK(canonical_key(a) == canonical_key(oracle::shuffled(a, rng)));
  }
  // vertex-transitive graphs stress automorphism pruning
  auto c = cycle_graph(40);
  CHECK(canonical_key(c) == canonical_key(oracle::shuffled(c, rng)));
}

TEST_CASE("find_isomorphism returns an edge-preserving map", "[canonical]") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 30; ++t) {
    auto a = oracle::random_graph(rng, 8, 0.4);
    auto b = oracle::shuffled(a, rng);
    auto m = find_isomorphism(a, b);
    REQUIRE(m);
    for (auto [u, v] : a.edges())
      CHECK(b.adjacent(b.index_of(m->at(a.label(u))), b.index_of(m->at(a.label(v)))));
  }
  CHECK_FALSE(find_isomorphism(cycle_graph(4), path_graph(4)));
}
