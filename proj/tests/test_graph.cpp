#include <doctest.h>

#include <array>
#include <numeric>
#include <sstream>

#include "bhd/error.hpp"
#include "bhd/generators.hpp"
#include "bhd/graph.hpp"
#include "bhd/rwalk.hpp"

using namespace bhd;

namespace {

EdgeList parse(const std::string& text) {
  std::istringstream in(text);
  return parse_edge_list(in);
}

Graph from_text(const std::string& text) { return build_graph(parse(text)); }

}  // namespace

TEST_CASE("parse_edge_list reads pairs in file order") {
  auto e = parse("0 1\n1 2\n");
  REQUIRE(e.pairs.size() == 2);
  CHECK(e.pairs[0] == std::pair<OriginalId, OriginalId>{0, 1});
  CHECK(e.pairs[1] == std::pair<OriginalId, OriginalId>{1, 2});
}

TEST_CASE("parse_edge_list skips comments and blank lines") {
  auto e = parse("# c\n5 7\n% other\n\n  \n");
  REQUIRE(e.pairs.size() == 1);
  CHECK(e.pairs[0] == std::pair<OriginalId, OriginalId>{5, 7});
}

TEST_CASE("parse_edge_list reports the offending line") {
  try {
    parse("0 1\n1 x\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(parse("0 1 2\n"), ParseError);
  CHECK_THROWS_AS(parse("0\n"), ParseError);
  CHECK_THROWS_AS(parse("-1 2\n"), ParseError);
}

TEST_CASE("build_graph drops self-loops and duplicates") {
  Graph g = from_text("0 1\n1 0\n1 1\n");
  CHECK(g.num_nodes() == 2);
  CHECK(g.num_edges() == 1);
  CHECK(g.degree(0) == 1);
}

TEST_CASE("build_graph on a triangle") {
  Graph g = from_text("0 1\n1 2\n2 0\n");
  CHECK(g.num_nodes() == 3);
  CHECK(g.num_edges() == 3);
  for (NodeId v = 0; v < 3; ++v) CHECK(g.degree(v) == 2);
  CHECK_FALSE(g.bipartite());
  CHECK(g.connected());
}

TEST_CASE("build_graph remaps sparse ids densely") {
  Graph g = from_text("10 20\n");
  CHECK(g.num_nodes() == 2);
  CHECK(g.num_edges() == 1);
  CHECK(g.find(10) == NodeId{0});
  CHECK(g.find(20) == NodeId{1});
  CHECK(g.original_id(1) == 20);
  CHECK_FALSE(g.find(15).has_value());
}

TEST_CASE("build_graph never creates zero-degree nodes") {
  // Node 7 only has a self-loop.
  Graph g = from_text("7 7\n0 1\n");
  CHECK(g.num_nodes() == 2);
  CHECK_FALSE(g.find(7).has_value());
  CHECK_THROWS_AS(from_text("3 3\n"), DataError);
  CHECK_THROWS_AS(build_graph(EdgeList{}), DataError);
}

TEST_CASE("largest_connected_component") {
  SUBCASE("triangle plus isolated edge") {
    Graph g = from_text("0 1\n1 2\n2 0\n5 6\n");
    CHECK(g.num_components() == 2);
    Graph lcc = largest_connected_component(g);
    CHECK(lcc.num_nodes() == 3);
    CHECK(lcc.num_edges() == 3);
    CHECK(lcc.connected());
  }
  SUBCASE("connected graph is returned unchanged") {
    Graph g = gen::cycle(5);
    CHECK(largest_connected_component(g) == g);
  }
  SUBCASE("ties go to the component holding the smallest id") {
    Graph g = from_text("3 2\n1 0\n");
    Graph lcc = largest_connected_component(g);
    CHECK(lcc.num_nodes() == 2);
    CHECK(lcc.find(0).has_value());
    CHECK(lcc.find(1).has_value());
    CHECK_FALSE(lcc.find(2).has_value());
  }
}

TEST_CASE("is_bipartite") {
  CHECK_FALSE(is_bipartite(gen::complete(3)));
  CHECK(is_bipartite(gen::path(3)));
  CHECK_FALSE(is_bipartite(gen::cycle(5)));
  CHECK(is_bipartite(gen::cycle(6)));
  CHECK(gen::path(3).bipartite());
}

TEST_CASE("require_walkable rejects bipartite and disconnected graphs") {
  CHECK_THROWS_AS(gen::path(4).require_walkable(), DataError);
  CHECK_THROWS_AS(from_text("0 1\n1 2\n2 0\n5 6\n").require_walkable(), DataError);
  CHECK_NOTHROW(gen::complete(4).require_walkable());
}

TEST_CASE("graph invariants hold on random inputs") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Graph g = largest_connected_component(gen::erdos_renyi(40, 0.08, seed, false));
    std::uint64_t degree_sum = 0;
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
      auto nb = g.neighbors(v);
      degree_sum += nb.size();
      CHECK(g.degree(v) >= 1);
      CHECK(std::is_sorted(nb.begin(), nb.end()));
      CHECK(std::adjacent_find(nb.begin(), nb.end()) == nb.end());
      for (NodeId u : nb) {
        CHECK(u != v);
        CHECK(g.has_edge(u, v));
      }
    }
    CHECK(degree_sum == 2 * g.num_edges());
    CHECK(g.connected());
  }
}

TEST_CASE("writing and re-parsing reproduces the graph") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Graph g = gen::erdos_renyi(30, 0.15, seed);
    std::ostringstream out;
    write_edge_list(g, out);
    std::istringstream in(out.str());
    CHECK(build_graph(parse_edge_list(in)) == g);
  }
  // Sparse original ids survive as well.
  Graph g = from_text("100 7\n7 42\n42 100\n3 42\n");
  std::ostringstream out;
  write_edge_list(g, out);
  std::istringstream in(out.str());
  CHECK(build_graph(parse_edge_list(in)) == g);
}

TEST_CASE("a walk step is uniform over neighbors") {
  // Chi-square with one degree of freedom per start node; 10.828 is the
  // 0.999 quantile.
  Graph g = gen::complete(3);
  Rng rng(2024);
  const int trials = 100000;
  for (NodeId v = 0; v < 3; ++v) {
    std::array<int, 3> hits{};
    for (int i = 0; i < trials; ++i) ++hits[random_walk(g, v, 1, rng).nodes[1]];
    CHECK(hits[v] == 0);
    const double expected = trials / 2.0;
    double chi2 = 0.0;
    for (NodeId u = 0; u < 3; ++u) {
      if (u == v) continue;
      chi2 += (hits[u] - expected) * (hits[u] - expected) / expected;
    }
    CHECK(chi2 < 10.828);
  }
}
