#include <catch_amalgamated.hpp>

#include "digitop/canonical.hpp"
#include "digitop/catalog.hpp"
#include "digitop/classify.hpp"
#include "digitop/covers.hpp"
#include "digitop/invariants.hpp"

using namespace digitop;

TEST_CASE("every catalog entry validates from scratch", "[catalog]") {
  for (const auto& name : catalog_names()) {
    INFO(name);
    auto rep = validate(build_entry(name));
    for (const auto& c : rep.checks) {
      INFO(c.check << ": expected " << c.expected << ", got " << c.actual);
      CHECK(c.ok);
    }
    CHECK(rep.ok);
  }
}

TEST_CASE("minimal sphere entries", "[catalog]") {
  const auto& e = get("sphere_min(2)");
  CHECK(e.name == "sphere_min2");
  CHECK(e.graph.order() == 6);
  CHECK(isomorphic(e.graph, minimal_sphere(2)));
  for (int n = 0; n <= 4; ++n) CHECK(get("sphere_min" + std::to_string(n)).graph.order() == static_cast<std::size_t>(2 * n + 2));
}

TEST_CASE("torus16", "[catalog]") {
  const auto& t = get("torus16").graph;
  CHECK(t.order() == 16);
  CHECK(t.size() == 48);
  CHECK(is_n_manifold(t, 2));
  CHECK(euler_characteristic(t) == 0);
  for (VertexId v = 0; v < t.order(); ++v) {
    auto r = rim(t, v);
    CHECK(r.order() == 6);
    CHECK(r.size() == 6);
    CHECK(isomorphic(r, cycle_graph(6)));
  }
}

TEST_CASE("torus16 looks the same from every vertex", "[catalog]") {
  const auto& t = get("torus16").graph;
  const auto key = canonical_key(remove_vertex(t, 0));
  for (VertexId v = 1; v < t.order(); ++v) CHECK(canonical_key(remove_vertex(t, v)) == key);
}

TEST_CASE("torus16 is the brick wall nerve", "[catalog]") {
  CHECK(isomorphic(get("torus16").graph, nerve(brick_wall_torus_cover())));
  CHECK_FALSE(isomorphic(get("torus16_rhombic").graph, get("torus16").graph));
}

TEST_CASE("projective plane", "[catalog]") {
  const auto& p = get("rp11").graph;
  CHECK(p.order() == 11);
  CHECK(is_n_manifold(p, 2));
  CHECK(euler_characteristic(p) == 1);
  auto h = homology(p);
  CHECK(h.betti_mod2 == std::vector<std::int64_t>{1, 1, 1});
  CHECK(h.betti_rational == std::vector<std::int64_t>{1, 0, 0});
}

TEST_CASE("Klein bottle", "[catalog]") {
  const auto& k = get("klein16").graph;
  CHECK(k.order() == 16);
  CHECK(is_n_manifold(k, 2));
  CHECK(euler_characteristic(k) == 0);
  CHECK_FALSE(isomorphic(k, get("torus16").graph));
}

TEST_CASE("Moebius band has one boundary circle", "[catalog]") {
  const auto& e = get("moebius12");
  CHECK(e.graph.order() == 12);
  CHECK(euler_characteristic(e.graph) == 0);
  auto [ok, why] = detail::band_check(e.graph);
  INFO(why);
  CHECK(ok);
  std::vector<VertexId> boundary;
  for (VertexId v = 0; v < e.graph.order(); ++v) {
    auto r = rim(e.graph, v);
    if (r.size() + 1 == r.order()) boundary.push_back(v);
  }
  auto b = e.graph.induced(boundary);
  CHECK(component_count(b) == 1);
  CHECK(surface_dimension(b) == 1);
}

TEST_CASE("icosahedron", "[catalog]") {
  const auto& g = get("icosahedron").graph;
  CHECK(g.order() == 12);
  CHECK(is_n_sphere(g, 2));
  CHECK(euler_characteristic(g) == 2);
}

TEST_CASE("disk entries pass the disk test", "[catalog]") {
  for (const char* name : {"disk_min1", "disk_min2", "disk_icosahedron"}) {
    const auto& e = get(name);
    CHECK(is_n_disk(e.graph, e.boundary, e.expected.dimension));
    CHECK(is_contractible(e.graph));
  }
}

TEST_CASE("punctured catalog spheres are disks", "[catalog]") {
  for (const char* name : {"sphere_min1", "sphere_min2", "sphere_min3", "icosahedron"}) {
    const auto& e = get(name);
    for (VertexId v = 0; v < e.graph.order(); ++v) {
      auto punctured = remove_vertex(e.graph, v);
      CHECK(is_contractible(punctured));
      CHECK(is_n_disk(punctured, rim(e.graph, v).labels(), e.expected.dimension));
    }
  }
}

TEST_CASE("unknown names are rejected", "[catalog]") {
  CHECK_THROWS_AS(get("dodecahedron"), CatalogError);
  CHECK_THROWS_AS(get("sphere_min9"), CatalogError);
}
