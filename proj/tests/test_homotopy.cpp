#include <catch_amalgamated.hpp>

#include <random>

#include "digitop/catalog.hpp"
#include "digitop/canonical.hpp"
#include "digitop/classify.hpp"
#include "digitop/homotopy.hpp"
#include "digitop/invariants.hpp"
#include "support/oracles.hpp"

using namespace digitop;

namespace {

Graph c4() { return build_graph({"a", "b", "c", "d"}, {{"a", "b"}, {"b", "c"}, {"c", "d"}, {"d", "a"}}); }

Graph wheel(std::size_t n) {
  auto rimc = cycle_graph(n, "r");
  return join(build_graph({"hub"}, {}), rimc).graph;
}

} // namespace

TEST_CASE("simple points", "[homotopy]") {
  auto p3 = path_graph(3);
  CHECK(is_simple_point(p3, "v0"));
  CHECK_FALSE(is_simple_point(c4(), "a"));
  CHECK(is_simple_point(complete_graph(4), "v2"));
  CHECK_THROWS(is_simple_point(c4(), "z"));
}

TEST_CASE("simple edges", "[homotopy]") {
  CHECK(is_simple_edge(complete_graph(3), "v0", "v1"));
  CHECK_FALSE(is_simple_edge(c4(), "a", "b"));
  CHECK_FALSE(is_simple_edge(minimal_sphere(2), "a0", "a1"));
  CHECK_THROWS(is_simple_edge(c4(), "a", "c"));
}

TEST_CASE("contractibility examples", "[homotopy]") {
  CHECK(is_contractible(edgeless_graph(1)));
  CHECK_FALSE(is_contractible(Graph{}));
  CHECK_FALSE(is_contractible(c4()));
  CHECK(is_contractible(wheel(4)));
  CHECK_FALSE(is_contractible(minimal_sphere(2)));
}

TEST_CASE("contractibility agrees with the definition", "[homotopy][oracle]") {
  std::mt19937_64 rng(99);
  for (int t = 0; t < 150; ++t) {
    auto g = oracle::random_graph(rng, 1 + rng() % 7, 0.3 + 0.1 * (t % 5));
    TopologyCache cache;
    CHECK(is_contractible(g, cache) == oracle::contractible(g));
  }
}

TEST_CASE("contraction traces replay to a point", "[homotopy]") {
  std::mt19937_64 rng(8);
  int seen = 0;
  for (int t = 0; t < 200 && seen < 25; ++t) {
    auto g = oracle::random_graph(rng, 4 + rng() % 8, 0.5);
    auto trace = contraction_trace(g);
    if (!trace) continue;
    ++seen;
    CHECK(replay(g, *trace).order() == 1);
  }
  CHECK(seen > 0);
}

TEST_CASE("apply_transformation examples", "[homotopy]") {
  auto g = c4();
  auto pendant = apply_transformation(g, AttachPoint{"x", {"a"}});
  CHECK(pendant.graph.order() == 5);
  CHECK(pendant.graph.degree(pendant.graph.index_of("x")) == 1);
  CHECK(pendant.inverse == Step{DeletePoint{"x"}});

  auto w = wheel(4);
  CHECK_THROWS_AS(apply_transformation(w, DeletePoint{"hub"}), RejectedStep);
  CHECK_THROWS_WITH(apply_transformation(w, DeletePoint{"hub"}),
                    Catch::Matchers::ContainsSubstring("not contractible"));
  CHECK(apply_transformation(w, DeletePoint{"r0"}).graph.order() == 4);

  auto p = path_graph(3, "p");
  auto tri = apply_transformation(p, AttachEdge{"p0", "p2"});
  CHECK(isomorphic(tri.graph, complete_graph(3)));
  CHECK_THROWS_AS(apply_transformation(c4(), AttachEdge{"a", "c"}), RejectedStep);
  CHECK_THROWS_AS(apply_transformation(c4(), DeleteEdge{"a", "b"}), RejectedStep);
}

TEST_CASE("attach then delete is the identity", "[homotopy]") {
  auto g = minimal_sphere(2);
  auto grown = apply_transformation(g, AttachPoint{"x", {"a0", "a1"}});
  auto back = apply_transformation(grown.graph, grown.inverse);
  CHECK(canonical_key(back.graph) == canonical_key(g));
}

TEST_CASE("inverse traces restore the source", "[homotopy]") {
  auto g = get("disk_min2").graph;
  auto t = reduce(g).trace;
  auto target = replay(g, t);
  auto back = replay(target, invert(g, t));
  CHECK(canonical_key(back) == canonical_key(g));
}

TEST_CASE("reduce examples", "[homotopy]") {
  auto tree = build_graph({"a", "b", "c", "d", "e"}, {{"a", "b"}, {"b", "c"}, {"b", "d"}, {"d", "e"}});
  CHECK(reduce(tree).residue.order() == 1);
  CHECK(reduce(c4()).residue == c4());
  CHECK(reduce(minimal_sphere(2)).residue.order() == 6);
  CHECK(reduce(minimal_sphere(2)).trace.steps.empty());
}

TEST_CASE("reduce is deterministic and replays", "[homotopy]") {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 30; ++t) {
    auto g = oracle::random_graph(rng, 6 + rng() % 10, 0.35);
    auto a = reduce(g);
    auto b = reduce(g);
    CHECK(a.trace == b.trace);
    CHECK(replay(g, a.trace) == a.residue);
  }
}

TEST_CASE("accepted steps keep invariants", "[homotopy][oracle]") {
  std::mt19937_64 rng(17);
  int accepted = 0;
  for (int t = 0; t < 400; ++t) {
    auto g = oracle::random_graph(rng, 3 + rng() % 8, 0.45);
    const auto u = static_cast<VertexId>(rng() % g.order());
    const auto v = static_cast<VertexId>(rng() % g.order());
    Step s;
    switch (rng() % 4) {
      case 0: s = DeletePoint{g.label(u)}; break;
      case 1: s = AttachPoint{"new", {g.label(u), g.label(v)}}; break;
      case 2: s = DeleteEdge{g.label(u), g.label(v)}; break;
      default: s = AttachEdge{g.label(u), g.label(v)}; break;
    }
    if (std::holds_alternative<AttachPoint>(s) && u == v) s = AttachPoint{"new", {g.label(u)}};
    try {
      auto out = apply_transformation(g, s).graph;
      ++accepted;
      CHECK(oracle::euler(out) == oracle::euler(g));
      auto a = oracle::betti(out), b = oracle::betti(g);
      CHECK(oracle::trimmed(a.q) == oracle::trimmed(b.q));
      CHECK(oracle::trimmed(a.z2) == oracle::trimmed(b.z2));
    } catch (const RejectedStep&) {
    } catch (const GraphError&) {
    }
  }
  CHECK(accepted > 50);
}

TEST_CASE("homotopy equivalence verdicts", "[homotopy]") {
  auto same = homotopy_equivalent(c4(), cycle_graph(4, "q"));
  CHECK(same.status == EquivalenceVerdict::Status::Equivalent);

  auto diff = homotopy_equivalent(c4(), edgeless_graph(1));
  CHECK(diff.status == EquivalenceVerdict::Status::Distinguished);
  CHECK(diff.invariant == "euler");
  CHECK(diff.left_value == "0");
  CHECK(diff.right_value == "1");

  auto tor = homotopy_equivalent(get("torus16").graph, get("klein16").graph);
  CHECK(tor.status == EquivalenceVerdict::Status::Distinguished);
}

TEST_CASE("equivalent verdicts carry replayable witnesses", "[homotopy]") {
  auto g = cycle_graph(4), h = cycle_graph(5, "w");
  auto v = homotopy_equivalent(g, h);
  REQUIRE(v.status == EquivalenceVerdict::Status::Equivalent);
  CHECK(isomorphic(replay(g, v.left), replay(h, v.right)));
}

TEST_CASE("cache entries are keyed by isomorphism class", "[homotopy]") {
  auto strip = [](const std::string& p) {
    return build_graph({p + "a", p + "b", p + "c", p + "d", p + "e"},
                       {{p + "a", p + "b"}, {p + "b", p + "c"}, {p + "a", p + "c"}, {p + "b", p + "d"},
                        {p + "c", p + "d"}, {p + "d", p + "e"}});
  };
  TopologyCache cache;
  CHECK(is_contractible(strip("s"), cache));
  const auto n = cache.entries();
  CHECK(n > 0);
  CHECK(is_contractible(strip("t"), cache));
  CHECK(cache.entries() == n);
}
