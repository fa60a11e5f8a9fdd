#include <catch_amalgamated.hpp>

#include "digitop/canonical.hpp"
#include "digitop/catalog.hpp"
#include "digitop/io.hpp"

using namespace digitop;

TEST_CASE("graph JSON round trip", "[io]") {
  const auto& g = get("klein16").graph;
  auto back = graph_from_json(graph_json(g));
  CHECK(back == g);
}

TEST_CASE("graph JSON rejects malformed input", "[io]") {
  CHECK_THROWS_AS(graph_from_json(parse_json_text(R"({"vertices": ["a"]})")), InputError);
  CHECK_THROWS_AS(graph_from_json(parse_json_text(R"({"vertices": ["a"], "edges": [["a", "a"]]})")), InputError);
  CHECK_THROWS_AS(graph_from_json(parse_json_text(R"({"vertices": ["a", "b"], "edges": [["a", "b"], ["b", "a"]]})")), InputError);
  CHECK_THROWS_AS(graph_from_json(parse_json_text(R"({"vertices": [1], "edges": []})")), InputError);
  CHECK_THROWS_AS(parse_json_text("{not json"), InputError);
}

TEST_CASE("edge list round trip", "[io]") {
  auto g = build_graph({"a", "b", "c", "lone"}, {{"a", "b"}, {"b", "c"}});
  auto back = graph_from_edge_list(graph_to_edge_list(g));
  CHECK(back == g);
  auto h = graph_from_edge_list("# comment\na b\ne b c\nv d\n");
  CHECK(h.order() == 4);
  CHECK(h.size() == 2);
  CHECK_THROWS_AS(graph_from_edge_list("a b c d\n"), InputError);
}

TEST_CASE("DOT round trip keeps the canonical key", "[io]") {
  for (const char* name : {"icosahedron", "torus16", "moebius12"}) {
    const auto& g = get(name).graph;
    auto back = graph_from_dot(graph_to_dot(g));
    CHECK(canonical_key(back) == canonical_key(g));
    CHECK(back == g);
  }
  auto odd = build_graph({"with space", "quote\"d"}, {{"with space", "quote\"d"}});
  CHECK(graph_from_dot(graph_to_dot(odd)) == odd);
  auto bare = graph_from_dot("graph { a -- b; b -- c }");
  CHECK(bare.size() == 2);
  CHECK_THROWS_AS(graph_from_dot("digraph { a -> b }"), InputError);
}

TEST_CASE("trace JSON round trip", "[io]") {
  HomotopyTrace t{{DeletePoint{"a"}, AttachPoint{"x", {"b", "c"}}, DeleteEdge{"b", "c"}, AttachEdge{"a", "d"}}};
  auto ops = trace_ops_from_json(trace_json(t));
  REQUIRE(ops.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) CHECK(std::get<Step>(ops[i]) == t.steps[i]);
  CHECK_THROWS_AS(trace_ops_from_json(parse_json_text(R"([{"op": "teleport"}])")), InputError);
}

TEST_CASE("R-transform macros replay", "[io]") {
  auto ops = trace_ops_from_json(parse_json_text(R"([
    {"op": "r-transform", "u": "v0", "v": "v1", "x": "x1"},
    {"op": "r-transform", "u": "v2", "v": "v3", "x": "x2"}])"));
  auto [g, expanded] = replay_ops(cycle_graph(4), ops);
  CHECK(isomorphic(g, cycle_graph(6)));
  CHECK(expanded.steps.size() == 4);
  CHECK(replay(cycle_graph(4), expanded) == g);
}

TEST_CASE("rejected replay names the step", "[io]") {
  auto ops = trace_ops_from_json(parse_json_text(R"([{"op": "delete-point", "v": "v0"}])"));
  CHECK_THROWS_WITH(replay_ops(cycle_graph(4), ops), Catch::Matchers::StartsWith("step 0"));
}

TEST_CASE("cover JSON round trip", "[io]") {
  auto w = brick_wall_torus_cover();
  auto back = cover_from_json(cover_json(w));
  CHECK(back.cells == w.cells);
  CHECK(back.domain == w.domain);
  CHECK(back.n == w.n);
}

TEST_CASE("cover JSON refuses orientation-reversing domains", "[io]") {
  auto j = parse_json_text(R"({"ambient": 1, "n": 1, "domain": {"twist": [true]}, "cells": [{"lo": [0], "hi": [1]}]})");
  CHECK_THROWS_WITH(cover_from_json(j), Catch::Matchers::ContainsSubstring("catalog"));
}

TEST_CASE("rationals in JSON", "[io]") {
  CHECK(rational_from_json(parse_json_text("\"3/4\""), "x") == Rational(3, 4));
  CHECK(rational_from_json(parse_json_text("2"), "x") == 2);
  CHECK_THROWS_AS(rational_from_json(parse_json_text("\"x/2\""), "x"), InputError);
  CHECK(rational_json(Rational(1, 2)) == "1/2");
}

TEST_CASE("shape JSON", "[io]") {
  auto f = shape_from_json(parse_json_text(
      R"j({"kind": "region", "expr": "(- (sq x) 1)", "window": {"lo": [-2], "hi": [2]}, "pitch": "1/2"})j"));
  CHECK(f.shape.kind == ShapeKind::Region);
  CHECK(f.pitch == Rational(1, 2));
  CHECK_THROWS_AS(shape_from_json(parse_json_text(R"({"kind": "blob", "window": {"lo": [0], "hi": [1]}})")), InputError);
  CHECK_THROWS_AS(shape_from_json(parse_json_text(R"({"kind": "region", "expr": "(+ x", "window": {"lo": [0], "hi": [1]}})")),
                  InputError);
}

TEST_CASE("invariant report fields", "[io]") {
  auto j = invariants_json(get("torus16").graph);
  CHECK(j["euler"] == 0);
  CHECK(j["betti_q"] == Json::array({1, 2, 1}));
  CHECK(j.contains("betti_z2"));
  CHECK(j.contains("torsion"));
}
