#include <catch_amalgamated.hpp>

#include "digitop/canonical.hpp"
#include "digitop/catalog.hpp"
#include "digitop/classify.hpp"
#include "digitop/invariants.hpp"
#include "support/oracles.hpp"

using namespace digitop;

namespace {

Graph wheel(std::size_t n) { return join(build_graph({"hub"}, {}), cycle_graph(n, "p")).graph; }

std::vector<std::string> labels_of(const Graph& g) { return g.labels(); }

} // namespace

TEST_CASE("surface dimension examples", "[classify]") {
  CHECK(surface_dimension(edgeless_graph(2)) == 0);
  CHECK(surface_dimension(cycle_graph(5)) == 1);
  CHECK_FALSE(surface_dimension(complete_graph(3)));
  CHECK(surface_dimension(minimal_sphere(2)) == 2);
  CHECK(surface_dimension(get("torus16").graph) == 2);
  CHECK_FALSE(surface_dimension(Graph{}));
}

TEST_CASE("sphere recognition", "[classify]") {
  auto c4 = is_n_sphere(cycle_graph(4), 1);
  CHECK(c4.kind == Kind::Sphere);
  CHECK(c4.dimension == 1);
  CHECK(is_n_sphere(minimal_sphere(2), 2));
  auto s0 = edgeless_graph(2);
  auto four = join(join(join(s0, s0).graph, s0).graph, s0).graph;
  CHECK(four.order() == 8);
  CHECK(is_n_sphere(four, 3));
  CHECK(is_n_sphere(edgeless_graph(2), 0));
  CHECK_FALSE(is_n_sphere(complete_graph(2), 0));
  CHECK_FALSE(is_n_sphere(cycle_graph(4), 2));
  CHECK(is_n_sphere(cycle_graph(7), 1));
}

TEST_CASE("cycles of length three are not spheres", "[classify]") {
  // triangle rims are edges, and C3 minus a vertex is contractible, but the
  // rim condition fails
  auto v = is_n_sphere(cycle_graph(3), 1);
  CHECK(v.kind == Kind::None);
  CHECK(v.witness);
}

TEST_CASE("torus is a manifold and not a sphere", "[classify]") {
  const auto& t = get("torus16").graph;
  auto m = is_n_manifold(t, 2);
  CHECK(m.kind == Kind::Manifold);
  CHECK(m.dimension == 2);
  auto s = is_n_sphere(t, 2);
  CHECK(s.kind == Kind::None);
  CHECK(s.witness);
  CHECK(classify(t).kind == Kind::Manifold);
}

TEST_CASE("octahedron is a manifold and a sphere", "[classify]") {
  CHECK(is_n_manifold(minimal_sphere(2), 2));
  CHECK(classify(minimal_sphere(2)).kind == Kind::Sphere);
}

TEST_CASE("wheel fails at a rim vertex", "[classify]") {
  auto v = is_n_manifold(wheel(5), 2);
  CHECK(v.kind == Kind::None);
  REQUIRE(v.witness);
  // the hub's rim is C5, a 1-sphere; a rim vertex's rim is a path
  CHECK(*v.witness == "p0");
  CHECK(is_n_sphere(rim(wheel(5), "hub"), 1));
  CHECK_FALSE(is_n_sphere(rim(wheel(5), "p0"), 1));
}

TEST_CASE("witness present exactly for None", "[classify]") {
  std::vector<Graph> gs{cycle_graph(4), minimal_sphere(2), wheel(5), path_graph(4), edgeless_graph(3),
                        get("torus16").graph, get("klein16").graph};
  for (const auto& g : gs) {
    auto v = classify(g);
    CHECK(static_cast<bool>(v.witness) == (v.kind == Kind::None));
  }
}

TEST_CASE("empty graph classifies as None without a witness", "[classify]") {
  auto v = classify(Graph{});
  CHECK(v.kind == Kind::None);
  CHECK_FALSE(v.witness);
}

TEST_CASE("disk recognition", "[classify]") {
  auto p3 = path_graph(3);
  std::vector<std::string> ends{"v0", "v2"};
  CHECK(is_n_disk(p3, ends, 1));
  CHECK_FALSE(is_n_disk(edgeless_graph(1), std::vector<std::string>{}, 0));
  auto oct = minimal_sphere(2);
  auto punctured = remove_vertex(oct, oct.index_of("a0"));
  CHECK(is_n_disk(punctured, labels_of(rim(oct, "a0")), 2));
  std::vector<std::string> wrong{"b0"};
  CHECK_FALSE(is_n_disk(punctured, wrong, 2));
  std::vector<std::string> stray{"zz"};
  CHECK_THROWS(is_n_disk(p3, stray, 1));
}

TEST_CASE("minimal spheres", "[classify]") {
  CHECK(minimal_sphere(0).order() == 2);
  CHECK(minimal_sphere(0).size() == 0);
  CHECK(isomorphic(minimal_sphere(1), cycle_graph(4)));
  CHECK(minimal_sphere(2).order() == 6);
  CHECK(minimal_sphere(2).size() == 12);
  for (int n = 0; n <= 4; ++n) CHECK(minimal_sphere(n).order() == static_cast<std::size_t>(2 * n + 2));
  CHECK_THROWS(minimal_sphere(-1));
}

TEST_CASE("rims of minimal spheres are minimal spheres", "[classify]") {
  for (int n = 1; n <= 4; ++n) {
    auto s = minimal_sphere(n);
    for (VertexId v = 0; v < s.order(); ++v) CHECK(isomorphic(rim(s, v), minimal_sphere(n - 1)));
  }
}

TEST_CASE("minimal spheres pass the recognizer", "[classify]") {
  for (int n = 0; n <= 3; ++n) CHECK(is_n_sphere(minimal_sphere(n), n));
}

TEST_CASE("joins of minimal spheres are spheres", "[classify][join]") {
  for (int a = 0; a <= 2; ++a)
    for (int b = 0; a + b + 1 <= 3; ++b) {
      auto j = join(minimal_sphere(a), minimal_sphere(b)).graph;
      CHECK(is_n_sphere(j, a + b + 1));
    }
}

TEST_CASE("icosahedron is a 2-sphere", "[classify]") {
  CHECK(is_n_sphere(get("icosahedron").graph, 2));
}

TEST_CASE("single-vertex heuristic agrees on spheres", "[classify]") {
  CHECK(is_n_sphere(minimal_sphere(2), 2, SphereCheck::SingleVertex));
  CHECK(is_n_sphere(get("icosahedron").graph, 2, SphereCheck::SingleVertex));
}

TEST_CASE("punctured manifolds agree with contractible holes", "[classify]") {
  // M - v and M - H for a contractible H share Euler characteristic and homology
  for (const char* name : {"torus16", "icosahedron", "rp11"}) {
    const auto& m = get(name).graph;
    auto minus_v = remove_vertex(m, 0);
    std::vector<VertexId> keep;
    auto hole = ball(m, 0);
    REQUIRE(is_contractible(hole));
    for (VertexId v = 0; v < m.order(); ++v)
      if (!hole.contains(m.label(v))) keep.push_back(v);
    auto minus_h = m.induced(keep);
    CHECK(euler_characteristic(minus_v) == euler_characteristic(minus_h));
    CHECK(oracle::trimmed(homology(minus_v).betti_rational) == oracle::trimmed(homology(minus_h).betti_rational));
    CHECK(oracle::trimmed(homology(minus_v).betti_mod2) == oracle::trimmed(homology(minus_h).betti_mod2));
  }
}
