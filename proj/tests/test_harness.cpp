#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "liars/liars.hpp"

using namespace liars;

TEST_CASE("wilson upper bound") {
  REQUIRE(wilson_upper(0, 2000) < 0.01);
  REQUIRE(wilson_upper(5, 100) == Catch::Approx(0.1117).margin(0.002));
  REQUIRE(wilson_upper(0, 0) == 1.0);
  // Monotone in failures.
  REQUIRE(wilson_upper(10, 100) > wilson_upper(5, 100));
}

TEST_CASE("experiment grid on the linearly bounded wrapper") {
  ExperimentConfig cfg;
  cfg.strategy = "vertex-linear";
  cfg.graph.kind = GraphKind::path;
  cfg.graph.params.n = 1024;
  cfg.responder = "adversary";
  cfg.rate = {0.1, 0.25, 0.4};
  cfg.master_seed = 5;
  auto report = run_experiment(cfg);
  REQUIRE(report.rows.size() == 3);
  REQUIRE(report.all_pass);
  // The r = 0.25 row carries the ceil(log2 n / (1 - H(r))) = 53 bound.
  REQUIRE(report.rows[1].bound == 53.0);
  REQUIRE(report.rows[1].max_rounds <= 53);
  REQUIRE(report.rows[1].formula.find("53") != std::string::npos);
}

TEST_CASE("zero trials produce an empty report") {
  ExperimentConfig cfg;
  cfg.strategy = "vertex-fixed";
  cfg.graph.kind = GraphKind::path;
  cfg.graph.params.n = 8;
  cfg.trials = 0;
  auto report = run_experiment(cfg);
  REQUIRE(report.rows.empty());
  REQUIRE(report.all_pass);
}

TEST_CASE("reports are byte-identical across reruns and thread counts") {
  ExperimentConfig cfg;
  cfg.strategy = "vertex-fixed";
  cfg.graph.kind = GraphKind::random_tree;
  cfg.graph.params.n = 32;
  cfg.graph.seed = 3;
  cfg.responder = "iid";
  cfg.noise = {0.1};
  cfg.gamma = {2.0};
  cfg.lies = {2};
  cfg.trials = 8;
  cfg.targets = TargetPolicy::sample;
  cfg.target_arg = 4;
  cfg.master_seed = 99;

  auto render = [&](int threads) {
    auto report = run_experiment(cfg, threads);
    std::ostringstream os;
    write_csv(report, os);
    return os.str();
  };
  const std::string a = render(1);
  REQUIRE(a == render(1));
  REQUIRE(a == render(2));
  REQUIRE(a == render(4));
}

TEST_CASE("csv round trip and verify_bounds semantics") {
  ExperimentConfig cfg;
  cfg.strategy = "vertex-fixed";
  cfg.graph.kind = GraphKind::path;
  cfg.graph.params.n = 64;
  cfg.responder = "adversary";
  cfg.gamma = {2.0};
  cfg.lies = {0, 1};
  cfg.master_seed = 4;
  auto report = run_experiment(cfg);

  std::ostringstream os;
  write_csv(report, os);
  std::istringstream is(os.str());
  auto rows = read_csv(is);
  REQUIRE(rows.size() == report.rows.size());
  REQUIRE(rows[0].max_rounds == report.rows[0].max_rounds);
  REQUIRE(rows[0].formula == report.rows[0].formula);

  REQUIRE(verify_bounds(rows, "vertex-fixed").empty());

  // max rounds above the recomputed bound is flagged, with the seed.
  auto bad = rows;
  bad[0].max_rounds = 1000;
  auto issues = verify_bounds(bad, "vertex-fixed");
  REQUIRE(issues.size() == 1);
  REQUIRE(issues[0].message.find("exceeds bound") != std::string::npos);

  // Strategy/theorem mismatch is an explicit issue per row.
  auto mism = verify_bounds(rows, "edge-fixed");
  REQUIRE(mism.size() == rows.size());
  REQUIRE(mism[0].message.find("does not match") != std::string::npos);

  REQUIRE_THROWS_AS(verify_bounds(rows, "thm-nonesuch"),
                    std::invalid_argument);
}

TEST_CASE("probabilistic rows judge the failure rate, not the max rounds") {
  ExperimentConfig cfg;
  cfg.strategy = "vertex-prob";
  cfg.graph.kind = GraphKind::path;
  cfg.graph.params.n = 64;
  cfg.responder = "iid";
  cfg.noise = {0.2};
  cfg.delta = {0.2};
  cfg.trials = 30;
  cfg.targets = TargetPolicy::sample;
  cfg.target_arg = 3;
  cfg.master_seed = 11;
  auto report = run_experiment(cfg);
  REQUIRE(report.rows.size() == 1);
  const auto& row = report.rows[0];
  // Exactly Q queries in every trial.
  REQUIRE(row.max_rounds == static_cast<int>(row.bound));
  REQUIRE(row.mean_rounds == Catch::Approx(row.bound));
}
