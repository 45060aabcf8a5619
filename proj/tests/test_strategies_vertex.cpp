#include <catch2/catch_amalgamated.hpp>

#include "liars/strategies.hpp"

using namespace liars;

namespace {

Graph path(int n) {
  GenParams p;
  p.n = n;
  return generate_graph(GraphKind::path, p);
}

}  // namespace

TEST_CASE("vertex fixed on P2 finds the target in one round") {
  Graph g = path(2);
  DistanceMatrix d(g);
  TruthfulResponder r(g, d, 1, 3);
  auto res = run_vertex_fixed(g, d, 0, 3.0, r);
  REQUIRE(res.found == 1);
  REQUIRE(res.rounds == 1);
  REQUIRE(res.bound == Catch::Approx(1.7095112913514547));
  // The tie at Phi(0)=Phi(1) resolves to id 0, whose reply points at 1.
  REQUIRE(res.transcript[0].query == Query::vertex(0));
  REQUIRE(res.transcript[0].reply == 1);
}

TEST_CASE("error-less vertex search bisects a path") {
  Graph g = path(8);
  DistanceMatrix d(g);
  for (int target = 0; target < 8; ++target) {
    TruthfulResponder r(g, d, target, 17);
    auto res = run_vertex_fixed(g, d, 0, kInfGamma, r);
    REQUIRE(res.found == target);
    REQUIRE(res.rounds <= 3);
  }
}

TEST_CASE("single-vertex graphs need no queries") {
  Graph g = path(1);
  DistanceMatrix d(g);
  TruthfulResponder r(g, d, 0, 1);
  auto res = run_vertex_fixed(g, d, 2, 2.0, r);
  REQUIRE(res.found == 0);
  REQUIRE(res.rounds == 0);
}

TEST_CASE("vertex fixed respects its bound against the greedy adversary") {
  Rng rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    GenParams p;
    p.n = 2 + static_cast<int>(rng.next_below(24));
    p.extra_edges = static_cast<int>(rng.next_below(5));
    Graph g = generate_graph(GraphKind::random_connected, p, rng.next_u64());
    DistanceMatrix d(g);
    const double gammas[] = {1.5, 2.0, 3.0};
    const double gamma = gammas[trial % 3];
    const int lies = trial % 4;
    AdversaryResponder adv(g, d, lies, gamma);
    auto res = run_vertex_fixed(g, d, lies, gamma, adv);
    REQUIRE(res.rounds <= std::ceil(res.bound));
    // The found vertex is consistent with the adversary's budget.
    REQUIRE(lies_against(g, d, res.found, res.transcript) <= lies);
  }
}

TEST_CASE("transcript replay reproduces the query sequence") {
  Graph g = path(16);
  DistanceMatrix d(g);
  AdversaryResponder adv(g, d, 2, 2.0);
  auto res = run_vertex_fixed(g, d, 2, 2.0, adv);

  std::vector<int> replies;
  for (const auto& t : res.transcript) replies.push_back(t.reply);
  ReplayResponder replay(replies);
  auto res2 = run_vertex_fixed(g, d, 2, 2.0, replay);
  REQUIRE(res2.found == res.found);
  REQUIRE(res2.rounds == res.rounds);
  for (std::size_t i = 0; i < res.transcript.size(); ++i)
    REQUIRE(res2.transcript[i].query == res.transcript[i].query);
}

TEST_CASE("vertex linear declares the entropy length") {
  Graph g = path(1024);
  DistanceMatrix d(g);
  {
    AdversaryResponder adv(g, d, BudgetKind::linear, 0.25, 3.0);
    auto res = run_vertex_linear(g, d, 0.25, adv);
    REQUIRE(res.params.declared_length == 53);
    REQUIRE(res.params.lie_budget == 13);
    REQUIRE(res.rounds <= 53);
  }
  {
    TruthfulResponder r(g, d, 700, 5);
    auto res = run_vertex_linear(g, d, 0.0, r);
    REQUIRE(res.found == 700);
    REQUIRE(res.params.declared_length == 10);
    REQUIRE(res.params.gamma == kInfGamma);
  }
  REQUIRE_THROWS_AS(
      [&] {
        TruthfulResponder r(g, d, 0, 5);
        return run_vertex_linear(g, d, 0.5, r);
      }(),
      std::invalid_argument);
}

TEST_CASE("probabilistic vertex wrapper computes the documented parameters") {
  auto p = vertex_prob_params(1024, 0.25, 0.1);
  REQUIRE(p.epsilon == Catch::Approx(0.5));
  REQUIRE(p.epsilon0 == Catch::Approx(0.27546713901680338).epsilon(1e-12));
  REQUIRE(p.rate == Catch::Approx(0.5 * (1 - 0.27546713901680338)));

  auto p0 = vertex_prob_params(1024, 0.0, 0.1);
  REQUIRE(p0.declared_length == 10);
}

TEST_CASE("probabilistic vertex wrapper always asks exactly Q queries") {
  Graph g = path(64);
  DistanceMatrix d(g);
  const auto params = vertex_prob_params(64, 0.25, 0.2);
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    IidResponder r(g, d, 20, 0.25, seed);
    auto res = run_vertex_prob(g, d, 0.25, 0.2, r);
    REQUIRE(res.rounds == params.declared_length);
  }
}

TEST_CASE("probabilistic vertex wrapper is deterministic per seed") {
  Graph g = path(64);
  DistanceMatrix d(g);
  IidResponder a(g, d, 11, 0.25, 42);
  IidResponder b(g, d, 11, 0.25, 42);
  auto ra = run_vertex_prob(g, d, 0.25, 0.1, a);
  auto rb = run_vertex_prob(g, d, 0.25, 0.1, b);
  REQUIRE(ra.found == rb.found);
  REQUIRE(ra.transcript.size() == rb.transcript.size());
  for (std::size_t i = 0; i < ra.transcript.size(); ++i) {
    REQUIRE(ra.transcript[i].query == rb.transcript[i].query);
    REQUIRE(ra.transcript[i].reply == rb.transcript[i].reply);
  }
}

TEST_CASE("probabilistic wrapper rejects infeasible noise") {
  Graph g = path(8);
  DistanceMatrix d(g);
  REQUIRE_THROWS_AS(IidResponder(g, d, 0, 0.5, 1), std::invalid_argument);
  TruthfulResponder r(g, d, 0, 1);
  REQUIRE_THROWS_AS(run_vertex_prob(g, d, 0.5, 0.1, r),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(run_vertex_prob(g, d, 0.25, 0.0, r),
                    std::invalid_argument);
}

TEST_CASE("responder contract violations abort with a diagnostic") {
  Graph g = path(4);
  DistanceMatrix d(g);
  // P4 uniform: round 1 queries vertex 1; replying 2 keeps {2,3}. The
  // next median is vertex 2; replying 1 then charges both survivors,
  // leaving nobody within L=0.
  ReplayResponder bad({2, 1});
  REQUIRE_THROWS_AS(run_vertex_fixed(g, d, 0, 2.0, bad),
                    ResponderContractViolation);
}
