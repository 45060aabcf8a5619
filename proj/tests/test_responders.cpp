#include <catch2/catch_amalgamated.hpp>

#include <map>

#include "liars/oracle.hpp"
#include "liars/responders.hpp"

using namespace liars;

namespace {

Graph path(int n) {
  GenParams p;
  p.n = n;
  return generate_graph(GraphKind::path, p);
}

}  // namespace

TEST_CASE("truthful replies follow shortest paths") {
  Graph g = path(3);
  DistanceMatrix d(g);
  Rng rng(1);
  REQUIRE(truthful_reply(g, d, 2, Query::vertex(0), rng) == 1);
  REQUIRE(truthful_reply(g, d, 1, Query::edge(0, 1), rng) == 1);
  REQUIRE(truthful_reply(g, d, 1, Query::vertex(1), rng) == 1);
}

TEST_CASE("truthful tie sets are seeded and deterministic") {
  GenParams p;
  p.n = 4;
  Graph c4 = generate_graph(GraphKind::cycle, p);
  DistanceMatrix d(c4);
  // Query 0, target 2 (opposite): both neighbors 1 and 3 are truthful.
  auto set = truthful_replies(c4, d, 2, Query::vertex(0));
  REQUIRE(set == std::vector<int>{1, 3});
  TruthfulResponder a(c4, d, 2, 99);
  TruthfulResponder b(c4, d, 2, 99);
  for (int i = 0; i < 10; ++i) {
    int ra = a.reply(Query::vertex(0));
    REQUIRE(ra == b.reply(Query::vertex(0)));
    REQUIRE((ra == 1 || ra == 3));
  }
}

TEST_CASE("iid responder lies at the configured rate") {
  Graph g = path(3);
  DistanceMatrix d(g);

  IidResponder clean(g, d, 2, 0.0, 4);
  for (int i = 0; i < 20; ++i)
    REQUIRE(clean.reply(Query::vertex(0)) == 1);

  const int trials = 100000;
  int lies = 0;
  IidResponder noisy(g, d, 2, 0.3, 4);
  for (int i = 0; i < trials; ++i)
    if (noisy.reply(Query::vertex(0)) != 1) ++lies;
  REQUIRE(std::abs(lies / double(trials) - 0.3) < 0.01);
  REQUIRE(noisy.budget().lies_so_far == lies);

  // Tied edge endpoints leave no lie to tell.
  GenParams p;
  p.n = 4;
  Graph c4 = generate_graph(GraphKind::cycle, p);
  DistanceMatrix dc(c4);
  IidResponder tied(c4, dc, 2, 0.49, 7);
  for (int i = 0; i < 50; ++i) {
    int r = tied.reply(Query::edge(1, 3));  // both at distance 1 from 2
    REQUIRE((r == 1 || r == 3));
    REQUIRE(*tied.records().back().was_lie == false);
  }
}

TEST_CASE("greedy adversary picks the heavy side") {
  Graph g2 = path(2);
  DistanceMatrix d2(g2);
  {
    // Fresh P2, L=0: yes and no keep equal weight; tie goes to the
    // no-answer.
    LieState s(2, 2.0);
    Budget b;
    b.max_lies = 0;
    REQUIRE(adversary_reply(g2, d2, s, b, Query::vertex(0)) == 1);
    AdversaryResponder adv(g2, d2, 0, 2.0);
    REQUIRE(adv.reply(Query::vertex(0)) == 1);
  }
  Graph g4 = path(4);
  DistanceMatrix d4(g4);
  {
    // Query the median 1: keeping {2,3} (weight 2) beats keeping {0}.
    LieState s(4, 2.0);
    Budget b;
    b.max_lies = 1;
    REQUIRE(adversary_reply(g4, d4, s, b, Query::vertex(1)) == 2);
  }
}

TEST_CASE("exhausted adversary answers toward the last candidate") {
  Graph g = path(2);
  DistanceMatrix d(g);
  AdversaryResponder adv(g, d, 0, 2.0);
  // Round 1: no-answer pointing to 1 (charges vertex 0).
  REQUIRE(adv.reply(Query::vertex(0)) == 1);
  // Only vertex 1 survives at budget 0: replies must stay consistent.
  REQUIRE(adv.reply(Query::vertex(1)) == 1);
  REQUIRE(adv.reply(Query::vertex(0)) == 1);
  REQUIRE(adv.mirror().lies(1) == 0);
}

TEST_CASE("linear adversary requires a declared length") {
  Graph g = path(4);
  DistanceMatrix d(g);
  AdversaryResponder adv(g, d, BudgetKind::linear, 0.25, 2.0);
  REQUIRE_THROWS_AS(adv.reply(Query::vertex(1)), std::logic_error);
  adv.declare_length(8);
  REQUIRE(adv.budget().max_lies == 2);
  REQUIRE_NOTHROW(adv.reply(Query::vertex(1)));
}

TEST_CASE("prefix adversary keeps some candidate alive in every prefix") {
  Graph g = path(6);
  DistanceMatrix d(g);
  AdversaryResponder adv(g, d, BudgetKind::prefix, 0.25, 1.5);
  LieState mirror(6, 1.5);
  for (int round = 1; round <= 24; ++round) {
    Query q = find_median(mirror, g, d, QueryKind::vertex);
    int r = adv.reply(q);
    apply_reply(mirror, g, d, q, r);
    // Some vertex must have a counter history within floor(rate * i) for
    // every prefix i; checking the current prefix per round covers all.
    int allowed = static_cast<int>(std::floor(0.25 * round));
    bool ok = false;
    for (int v = 0; v < 6; ++v)
      if (static_cast<int>(adv.mirror().lies(v)) <= allowed) ok = true;
    REQUIRE(ok);
  }
}

TEST_CASE("minimax oracle on tiny instances") {
  REQUIRE(minimax_oracle(path(2), 0, QueryKind::vertex) == 1);
  REQUIRE(minimax_oracle(path(4), 0, QueryKind::edge) == 2);
  REQUIRE(minimax_oracle(path(2), 1, QueryKind::edge) == 3);
  GenParams p;
  p.n = 9;
  REQUIRE_THROWS_AS(
      minimax_oracle(generate_graph(GraphKind::path, p), 0, QueryKind::vertex),
      std::invalid_argument);
}
