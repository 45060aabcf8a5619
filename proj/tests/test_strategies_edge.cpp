#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "liars/strategies.hpp"

using namespace liars;

namespace {

Graph path(int n) {
  GenParams p;
  p.n = n;
  return generate_graph(GraphKind::path, p);
}

Graph star(int leaves) {
  GenParams p;
  p.leaves = leaves;
  return generate_graph(GraphKind::star, p);
}

}  // namespace

TEST_CASE("edge fixed on P4 stays within its bound") {
  Graph g = path(4);
  DistanceMatrix d(g);
  REQUIRE(std::ceil(bounds::edge_fixed(4, 0, 2.0, 2)) == 8.0);
  for (int target = 0; target < 4; ++target) {
    TruthfulResponder r(g, d, target, 5);
    auto res = run_edge_fixed(g, d, 0, 2.0, r);
    REQUIRE(res.found == target);
    REQUIRE(res.rounds <= 8);
  }
}

TEST_CASE("uniform star start is not heavy; the edge median goes first") {
  Graph g = star(3);
  LieState fresh(4, 2.0);
  // mu(center) = total/4 exactly: 1/(Delta+1)-heaviness is strict.
  REQUIRE_FALSE(is_heavy(fresh, 0, 1.0 / 4));
  REQUIRE(heavy_vertex(fresh, 1.0 / 4) == std::nullopt);
  // One eliminated leaf later the center does clear the threshold.
  fresh.add_lie(1);
  REQUIRE(is_heavy(fresh, 0, 1.0 / 4));
}

TEST_CASE("edge search on a single vertex asks nothing") {
  Graph g = path(1);
  DistanceMatrix d(g);
  TruthfulResponder r(g, d, 0, 1);
  auto res = run_edge_fixed(g, d, 3, 2.0, r);
  REQUIRE(res.rounds == 0);
  REQUIRE(res.found == 0);
}

TEST_CASE("edge strategies insist on unit weights") {
  Graph g = parse_graph("3 2\n0 1 2.0\n1 2\n");
  DistanceMatrix d(g);
  TruthfulResponder r(g, d, 0, 1);
  REQUIRE_THROWS_AS(run_edge_fixed(g, d, 0, 2.0, r), std::invalid_argument);
  Graph u = as_unit_weight(g);
  DistanceMatrix du(u);
  TruthfulResponder ru(u, du, 0, 1);
  REQUIRE_NOTHROW(run_edge_fixed(u, du, 0, 2.0, ru));
}

TEST_CASE("edge fixed respects its bound against the greedy adversary") {
  Rng rng(77);
  for (int trial = 0; trial < 25; ++trial) {
    GenParams p;
    p.n = 2 + static_cast<int>(rng.next_below(20));
    p.extra_edges = static_cast<int>(rng.next_below(4));
    Graph g = generate_graph(GraphKind::random_connected, p, rng.next_u64());
    DistanceMatrix d(g);
    const double gammas[] = {1.5, 2.0, 3.0};
    const double gamma = gammas[trial % 3];
    const int lies = trial % 3;
    AdversaryResponder adv(g, d, lies, gamma);
    auto res = run_edge_fixed(g, d, lies, gamma, adv);
    REQUIRE(res.rounds <= std::ceil(res.bound));
    REQUIRE(lies_against(g, d, res.found, res.transcript) <= lies);
  }
}

TEST_CASE("error-less edge search on P8") {
  Graph g = path(8);
  DistanceMatrix d(g);
  REQUIRE(bounds::edge_errorless(8, 2) == 4.0);
  for (int target = 0; target < 8; ++target) {
    TruthfulResponder r(g, d, target, 23);
    auto res = run_edge_errorless(g, d, r);
    REQUIRE(res.found == target);
    REQUIRE(res.rounds <= 4);
  }
}

TEST_CASE("error-less edge search on K_1,5") {
  Graph g = star(5);
  DistanceMatrix d(g);
  for (int target = 0; target < 6; ++target) {
    TruthfulResponder r(g, d, target, 3);
    auto res = run_edge_errorless(g, d, r);
    REQUIRE(res.found == target);
    REQUIRE(res.rounds <= 5);  // querying each leaf edge suffices
  }
}

TEST_CASE("error-less edge search on a single edge") {
  Graph g = path(2);
  DistanceMatrix d(g);
  TruthfulResponder r(g, d, 1, 9);
  auto res = run_edge_errorless(g, d, r);
  REQUIRE(res.found == 1);
  REQUIRE(res.rounds == 1);
}

TEST_CASE("linearly bounded edge wrapper parameters and bound") {
  // eps = 1 collapses to the error-less regime.
  auto p1 = edge_linear_params(256, 2, 1.0);
  REQUIRE(p1.gamma == kInfGamma);
  REQUIRE(p1.lie_budget == 0);
  REQUIRE(bounds::edge_linear(256, 2, 1.0) ==
          Catch::Approx(22.18070977791825));

  Graph g = path(256);
  DistanceMatrix d(g);
  for (int target : {0, 100, 255}) {
    TruthfulResponder r(g, d, target, 7);
    auto res = run_edge_linear(g, d, 1.0, r);
    REQUIRE(res.found == target);
    REQUIRE(res.rounds <= 22);
  }
  {
    AdversaryResponder adv(g, d, BudgetKind::linear,
                           edge_linear_params(256, 2, 0.5).rate, 2.0);
    auto res = run_edge_linear(g, d, 0.5, adv);
    REQUIRE(res.rounds <= std::ceil(bounds::edge_linear(256, 2, 0.5)));
    REQUIRE(res.bound == Catch::Approx(8.0 * 2.0 * std::log(256.0)));
  }
}

TEST_CASE("edge prob skips boosting when the noise is already low") {
  auto p = edge_prob_params(256, 2, 0.7, 0.1);
  REQUIRE(p.boost_repeats == 1);
  REQUIRE(p.epsilon0 == Catch::Approx(1.0 - 0.15 * 3));

  auto q = edge_prob_params(1024, 2, 0.5, 0.1);
  REQUIRE(q.boost_repeats == 15);  // odd ceil(2 * 4 * ln 6)
  REQUIRE(q.epsilon0 == 0.5);
}

TEST_CASE("edge prob recovers the target on noisy paths") {
  Graph g = path(128);
  DistanceMatrix d(g);
  int good = 0;
  const int trials = 40;
  Rng rng(11);
  for (int i = 0; i < trials; ++i) {
    int target = static_cast<int>(rng.next_below(128));
    IidResponder r(g, d, target, 0.25, derive_seed(900, i));
    auto res = run_edge_prob(g, d, 0.5, 0.1, r);
    if (res.found == target) ++good;
  }
  REQUIRE(good >= trials - 2);  // delta = 0.1; ample slack to stay stable
}

TEST_CASE("inconsistent edge replies abort with a diagnostic") {
  // P4, Gamma=2, L=0: round 1 queries {1,2}; replying 2 keeps {2,3}. The
  // next edge median is {1,2} again; replying 1 then charges both
  // survivors, leaving nobody within budget.
  Graph g = path(4);
  DistanceMatrix d(g);
  ReplayResponder bad({2, 1});
  REQUIRE_THROWS_AS(run_edge_fixed(g, d, 0, 2.0, bad),
                    ResponderContractViolation);
}

TEST_CASE("edge wrappers reject out-of-range parameters") {
  Graph g = path(8);
  DistanceMatrix d(g);
  TruthfulResponder r(g, d, 3, 1);
  REQUIRE_THROWS_AS(run_edge_linear(g, d, 0.0, r), std::invalid_argument);
  REQUIRE_THROWS_AS(run_edge_linear(g, d, 1.5, r), std::invalid_argument);
  REQUIRE_THROWS_AS(run_pruning(g, d, -0.1, r), std::invalid_argument);
  REQUIRE_THROWS_AS(edge_prob_params(8, 2, 0.0, 0.1), std::invalid_argument);
}

TEST_CASE("edge transcript replay reproduces the query sequence") {
  Graph g = path(16);
  DistanceMatrix d(g);
  AdversaryResponder adv(g, d, 1, 2.0);
  auto res = run_edge_fixed(g, d, 1, 2.0, adv);
  std::vector<int> replies;
  for (const auto& t : res.transcript) replies.push_back(t.reply);
  ReplayResponder replay(replies);
  auto res2 = run_edge_fixed(g, d, 1, 2.0, replay);
  REQUIRE(res2.found == res.found);
  for (std::size_t i = 0; i < res.transcript.size(); ++i)
    REQUIRE(res2.transcript[i].query == res.transcript[i].query);
}

TEST_CASE("pruning parameters and invariants") {
  Graph g = path(64);
  DistanceMatrix d(g);
  {
    TruthfulResponder r(g, d, 17, 31);
    auto pr = run_pruning(g, d, 0.5, r);
    REQUIRE(pr.discard_cap == 8.0);  // 2*Delta/eps
    REQUIRE(pr.gamma == 1.5);        // 1 + Delta eps / (2 (Delta-1))
    REQUIRE(pr.rate == 0.25);        // (1-eps)/Delta
    REQUIRE_FALSE(pr.budget_exceeded);
    REQUIRE(static_cast<double>(pr.discarded.size()) <= pr.discard_cap);
    // Truthful responder: the zero-counter target stays among C union D.
    std::set<int> keep(pr.kept.begin(), pr.kept.end());
    std::set<int> parked(pr.discarded.begin(), pr.discarded.end());
    REQUIRE((keep.count(17) || parked.count(17)));
    REQUIRE(keep.size() <= 1);
  }
  {
    AdversaryResponder adv(g, d, BudgetKind::prefix, 0.25, 1.5);
    auto pr = run_pruning(g, d, 0.5, adv);
    REQUIRE_FALSE(pr.budget_exceeded);
    REQUIRE(static_cast<double>(pr.discarded.size()) <= pr.discard_cap);
    // Some candidate consistent with the prefix budget must survive.
    std::vector<int> pool = pr.kept;
    pool.insert(pool.end(), pr.discarded.begin(), pr.discarded.end());
    bool consistent = false;
    for (int v : pool)
      if (lies_against(g, d, v, pr.transcript) <= 0.25 * pr.rounds + 1e-9)
        consistent = true;
    REQUIRE(consistent);
  }
}

TEST_CASE("pruning handles the single-edge graph directly") {
  Graph g = path(2);
  DistanceMatrix d(g);
  TruthfulResponder r(g, d, 1, 1);
  auto pr = run_pruning(g, d, 0.5, r);
  REQUIRE(pr.rounds == 0);
  REQUIRE(pr.kept == std::vector<int>{0, 1});
}

TEST_CASE("prefix-bounded search finds the target") {
  Graph g = path(64);
  DistanceMatrix d(g);
  for (int target : {0, 21, 63}) {
    TruthfulResponder r(g, d, target, 5);
    auto res = run_prefix_bounded(g, d, 0.5, r);
    REQUIRE(res.found == target);
  }
  // Degenerate eps = 1 (no lies allowed at all).
  for (int target : {3, 40}) {
    TruthfulResponder r(g, d, target, 6);
    auto res = run_prefix_bounded(g, d, 1.0, r);
    REQUIRE(res.found == target);
  }
  // Greedy prefix adversary at the matching rate.
  {
    AdversaryResponder adv(g, d, BudgetKind::prefix, 0.25, 1.5);
    auto res = run_prefix_bounded(g, d, 0.5, adv);
    REQUIRE(res.found >= 0);
    REQUIRE(lies_against(g, d, res.found, res.transcript) <=
            0.25 * res.transcript.size() + 1e-9);
  }
}
