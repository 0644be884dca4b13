#include <catch_amalgamated.hpp>

#include "walkgauge/families.hpp"
#include "walkgauge/graph.hpp"

using namespace walkgauge;

TEST_CASE("graph rejects self-loops, out-of-range endpoints and n = 0") {
  CHECK_THROWS_AS(Graph(3, {{1, 1}}), InvalidArgument);
  CHECK_THROWS_AS(Graph(3, {{0, 3}}), InvalidArgument);
  CHECK_THROWS_AS(Graph(0, {}), InvalidArgument);
}

TEST_CASE("duplicate edges collapse and degrees are consistent") {
  const Graph g(4, {{0, 1}, {1, 0}, {1, 2}, {2, 1}, {2, 3}});
  CHECK(g.edge_count() == 3);
  CHECK(g.degrees() == std::vector<std::size_t>{1, 2, 2, 1});
  std::size_t total = 0;
  for (auto d : g.degrees()) total += d;
  CHECK(total == 2 * g.edge_count());
}

TEST_CASE("adjacency matrix is symmetric with zero trace") {
  const Graph g = generate(FamilySpec::petersen());
  const auto a = g.adjacency_matrix();
  CHECK(a.is_symmetric());
  CHECK(a.trace() == 0);
  for (const Edge& e : g.edges()) CHECK(a(e.u, e.v) == 1);
}

TEST_CASE("is_regular") {
  CHECK(is_regular(generate(FamilySpec::cycle(4))));
  CHECK_FALSE(is_regular(generate(FamilySpec::path(3))));
  const Graph petersen = generate(FamilySpec::petersen());
  CHECK(is_regular(petersen));
  CHECK(petersen.degree(0) == 3);
  CHECK(is_regular(Graph::edgeless(5)));
}

TEST_CASE("connected_components") {
  SECTION("path is one component") {
    const auto parts = connected_components(generate(FamilySpec::path(3)));
    REQUIRE(parts.size() == 1);
    CHECK(parts[0] == std::vector<Vertex>{0, 1, 2});
  }
  SECTION("two disjoint edges") {
    const auto parts = connected_components(Graph(4, {{0, 1}, {2, 3}}));
    REQUIRE(parts.size() == 2);
    CHECK(parts[0] == std::vector<Vertex>{0, 1});
    CHECK(parts[1] == std::vector<Vertex>{2, 3});
  }
  SECTION("edgeless graph gives singletons") {
    const auto parts = connected_components(Graph::edgeless(3));
    CHECK(parts.size() == 3);
  }
}

TEST_CASE("disjoint_union shifts the second graph") {
  const Graph u = disjoint_union(generate(FamilySpec::cycle(3)), generate(FamilySpec::cycle(4)));
  CHECK(u.vertex_count() == 7);
  CHECK(u.edge_count() == 7);
  CHECK(u.has_edge(3, 4));
  CHECK(u.has_edge(3, 6));
  CHECK_FALSE(is_connected(u));
}

TEST_CASE("dense size ceiling honours WALKGAUGE_MAX_N") {
  ::setenv("WALKGAUGE_MAX_N", "5", 1);
  CHECK(max_dense_n() == 5);
  CHECK_THROWS_AS(require_dense_size(6), InvalidArgument);
  CHECK_NOTHROW(require_dense_size(5));
  ::unsetenv("WALKGAUGE_MAX_N");
  CHECK(max_dense_n() == kDefaultMaxDenseN);
}
