#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "liars/distance.hpp"
#include "liars/graph.hpp"
#include "liars/rng.hpp"

using namespace liars;

namespace {

Graph p3() { return parse_graph("3 2\n0 1\n1 2\n"); }

Graph star(int leaves) {
  GenParams p;
  p.leaves = leaves;
  return generate_graph(GraphKind::star, p);
}

}  // namespace

TEST_CASE("parse_graph accepts minimal graphs") {
  Graph g = parse_graph("2 1\n0 1\n");
  REQUIRE(g.num_vertices() == 2);
  REQUIRE(g.num_edges() == 1);
  REQUIRE(g.edge_weight(0, 1) == 1.0);
  REQUIRE(g.unit_weights());

  Graph p = p3();
  REQUIRE(p.num_vertices() == 3);
  REQUIRE(p.neighbors(1) == std::vector<int>{0, 2});
}

TEST_CASE("parse_graph rejects malformed input with distinct diagnostics") {
  REQUIRE_THROWS_WITH(parse_graph("3 1\n0 1\n"),
                      Catch::Matchers::ContainsSubstring("disconnected"));
  REQUIRE_THROWS_WITH(parse_graph("2 2\n0 1\n0 1\n"),
                      Catch::Matchers::ContainsSubstring("duplicate"));
  REQUIRE_THROWS_WITH(parse_graph("2 1\n0 x\n"),
                      Catch::Matchers::ContainsSubstring("malformed"));
  REQUIRE_THROWS_WITH(parse_graph("2 1\n0 1 -2\n"),
                      Catch::Matchers::ContainsSubstring("nonpositive"));
  REQUIRE_THROWS_WITH(parse_graph("2 1\n1 1\n"),
                      Catch::Matchers::ContainsSubstring("self-loop"));
  REQUIRE_THROWS_WITH(parse_graph("2 2\n0 1\n"),
                      Catch::Matchers::ContainsSubstring("mismatch"));
}

TEST_CASE("edge list round trip") {
  Graph g = parse_graph("4 4\n0 1\n1 2\n2 3\n0 3 2.5\n");
  std::ostringstream out;
  write_edge_list(g, out);
  Graph h = parse_graph(out.str());
  REQUIRE(h.num_edges() == 4);
  REQUIRE(h.edge_weight(0, 3) == 2.5);
}

TEST_CASE("all pairs distances on small graphs") {
  DistanceMatrix d(p3());
  REQUIRE(d(0, 2) == 2.0);
  REQUIRE(d(2, 0) == 2.0);
  REQUIRE(d(1, 1) == 0.0);

  Graph s = star(3);
  DistanceMatrix ds(s);
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j)
      REQUIRE(ds(i, j) == (i == j ? 0.0 : 2.0));

  Graph w = parse_graph("3 2\n0 1 2.5\n1 2 1\n");
  DistanceMatrix dw(w);
  REQUIRE(dw(0, 2) == Catch::Approx(3.5));
  REQUIRE_FALSE(dw.exact());
}

TEST_CASE("distance matrix agrees with single-source recomputation") {
  Rng rng(99);
  for (int trial = 0; trial < 6; ++trial) {
    GenParams p;
    p.n = 3 + static_cast<int>(rng.next_below(40));
    p.extra_edges = static_cast<int>(rng.next_below(10));
    Graph g = generate_graph(GraphKind::random_connected, p, rng.next_u64());
    DistanceMatrix d(g);
    for (int k = 0; k < 5; ++k) {
      int s = static_cast<int>(rng.next_below(g.num_vertices()));
      auto dist = single_source_distances(g, s);
      for (int v = 0; v < g.num_vertices(); ++v)
        REQUIRE(d(s, v) == Catch::Approx(dist[v]).margin(1e-12));
    }
    for (const auto& e : g.edges()) REQUIRE(d(e.u, e.v) <= e.w);
  }
}

TEST_CASE("compatible sets on P3") {
  Graph g = p3();
  DistanceMatrix d(g);
  REQUIRE(compatible_set(g, d, Query::vertex(1), 0) == std::vector<int>{0});
  REQUIRE(compatible_set(g, d, Query::vertex(1), 1) == std::vector<int>{1});
  REQUIRE(compatible_set(g, d, Query::edge(0, 1), 0, true) ==
          std::vector<int>{0});
  REQUIRE(compatible_set(g, d, Query::edge(0, 1), 1) ==
          std::vector<int>{1, 2});
  REQUIRE_THROWS_AS(compatible_set(g, d, Query::vertex(0), 2), IllegalReply);
}

TEST_CASE("compatible set on a star: center reply keeps all other leaves") {
  Graph g = star(3);
  DistanceMatrix d(g);
  // Query leaf 1, reply center 0: every vertex except leaf 1 is compatible.
  REQUIRE(compatible_set(g, d, Query::vertex(1), 0) ==
          std::vector<int>{0, 2, 3});
}

TEST_CASE("compatible set respects non-unit weights") {
  // With w(0,1)=2.5, vertex 2 is reached from 0 through 1.
  Graph g = parse_graph("3 2\n0 1 2.5\n1 2 1\n");
  DistanceMatrix d(g);
  REQUIRE(compatible_set(g, d, Query::vertex(0), 1) == std::vector<int>{1, 2});
}

TEST_CASE("generators are deterministic families") {
  GenParams p;
  p.n = 4;
  Graph p4 = generate_graph(GraphKind::path, p, 12345);
  REQUIRE(p4.num_edges() == 3);
  REQUIRE(p4.has_edge(2, 3));

  Graph k15 = star(5);
  REQUIRE(k15.max_degree() == 5);
  REQUIRE(k15.num_vertices() == 6);

  GenParams t;
  t.n = 50;
  Graph a = generate_graph(GraphKind::random_tree, t, 7);
  Graph b = generate_graph(GraphKind::random_tree, t, 7);
  REQUIRE(a.num_edges() == 49);
  for (int i = 0; i < a.num_edges(); ++i) {
    REQUIRE(a.edges()[i].u == b.edges()[i].u);
    REQUIRE(a.edges()[i].v == b.edges()[i].v);
  }
  Graph c = generate_graph(GraphKind::random_tree, t, 8);
  bool same = true;
  for (int i = 0; i < a.num_edges() && same; ++i)
    same = a.edges()[i].u == c.edges()[i].u && a.edges()[i].v == c.edges()[i].v;
  REQUIRE_FALSE(same);

  GenParams gr;
  gr.rows = 3;
  gr.cols = 4;
  Graph grid = generate_graph(GraphKind::grid, gr);
  REQUIRE(grid.num_vertices() == 12);
  REQUIRE(grid.num_edges() == 3 * 3 + 2 * 4);
  REQUIRE(grid.max_degree() == 4);

  REQUIRE_THROWS_AS(generate_graph(GraphKind::cycle, GenParams{.n = 2}),
                    GraphError);
}

TEST_CASE("property: neighborhood sets cover the graph") {
  Rng rng(1234);
  for (int trial = 0; trial < 25; ++trial) {
    GenParams p;
    p.n = 2 + static_cast<int>(rng.next_below(24));
    p.extra_edges = static_cast<int>(rng.next_below(8));
    Graph g = generate_graph(GraphKind::random_connected, p, rng.next_u64());
    DistanceMatrix d(g);

    // Union over neighbors u of N(q,u), plus {q}, is all of V.
    int q = static_cast<int>(rng.next_below(g.num_vertices()));
    std::set<int> covered{q};
    for (int u : g.neighbors(q)) {
      auto mask = compatible_mask(g, d, Query::vertex(q), u);
      REQUIRE(mask[q] == 0);  // a no-answer never keeps the query vertex
      for (int x = 0; x < g.num_vertices(); ++x)
        if (mask[x]) covered.insert(x);
    }
    REQUIRE(static_cast<int>(covered.size()) == g.num_vertices());

    // For an edge {u,v}: strict sides are disjoint, loose sides cover V.
    const auto& e = g.edges()[rng.next_below(g.edges().size())];
    auto su = compatible_mask(g, d, Query::edge(e.u, e.v), e.u, true);
    auto sv = compatible_mask(g, d, Query::edge(e.u, e.v), e.v, true);
    auto lu = compatible_mask(g, d, Query::edge(e.u, e.v), e.u, false);
    auto lv = compatible_mask(g, d, Query::edge(e.u, e.v), e.v, false);
    for (int x = 0; x < g.num_vertices(); ++x) {
      REQUIRE_FALSE((su[x] && sv[x]));
      REQUIRE((lu[x] || lv[x]));
      REQUIRE(static_cast<bool>(su[x]) == !lv[x]);
    }
  }
}
