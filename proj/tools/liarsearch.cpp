// liarsearch: search games on graphs and integer ranges against lying
// responders. Subcommands: gen, search, bench, verify, oracle.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "liars/harness.hpp"
#include "liars/oracle.hpp"
#include "liars/strategies.hpp"
#include "liars/unbounded.hpp"

using namespace liars;

namespace {

struct GraphFlags {
  std::string file;
  std::string kind = "path";
  int n = 0;
  int leaves = 0;
  int rows = 0, cols = 0;
  int extra_edges = 0;
  std::uint64_t seed = 0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--graph", file, "edge-list file to load");
    cmd->add_option("--kind", kind,
                    "generator kind: path|cycle|star|random-tree|grid|"
                    "random-connected");
    cmd->add_option("-n,--n", n, "vertex count (path/cycle/trees)");
    cmd->add_option("--leaves", leaves, "star leaf count");
    cmd->add_option("--rows", rows, "grid rows");
    cmd->add_option("--cols", cols, "grid cols");
    cmd->add_option("--extra-edges", extra_edges,
                    "random-connected: edges beyond the spanning tree");
    cmd->add_option("--graph-seed", seed, "generator seed");
  }

  GraphSpec spec() const {
    GraphSpec s;
    if (!file.empty()) {
      s.file = file;
      return s;
    }
    s.kind = graph_kind_from_string(kind);
    s.params.n = n;
    s.params.leaves = leaves;
    s.params.rows = rows;
    s.params.cols = cols;
    s.params.extra_edges = extra_edges;
    s.seed = seed;
    return s;
  }
};

int cmd_gen(const GraphFlags& gf, const std::string& out, bool as_json) {
  Graph g = gf.spec().build();
  std::ostream* os = &std::cout;
  std::ofstream f;
  if (!out.empty()) {
    f.open(out);
    if (!f) {
      std::cerr << "cannot open " << out << "\n";
      return 2;
    }
    os = &f;
  }
  if (as_json)
    write_json(g, *os);
  else
    write_edge_list(g, *os);
  return 0;
}

int cmd_oracle(const GraphFlags& gf, int lies, const std::string& mode) {
  Graph g = gf.spec().build();
  QueryKind kind = mode == "edge" ? QueryKind::edge : QueryKind::vertex;
  int value = minimax_oracle(g, lies, kind);
  std::cout << "minimax " << mode << " queries, L=" << lies << ": " << value
            << "\n";
  return 0;
}

struct SearchFlags {
  std::string strategy = "vertex-fixed";
  std::string responder = "truthful";
  double gamma = 2.0;
  int lies = 0;
  double rate = 0.25;
  double noise = 0.25;
  double delta = 0.1;
  double epsilon = 0.5;
  std::uint64_t seed = 1;
  long long target = -1;
  std::string mode = "binary";  // unbounded query mode
  bool trace = false;
  std::string out;
};

int graph_search(const GraphFlags& gf, const SearchFlags& sf) {
  Graph g0 = gf.spec().build();
  const bool edge_like = detail::strategy_is_edge(sf.strategy);
  Graph g = edge_like && !g0.unit_weights() ? as_unit_weight(g0) : g0;
  if (edge_like && !g0.unit_weights())
    std::cerr << "note: edge strategies use hop counts; lengths dropped\n";
  DistanceMatrix d(g);

  int target = static_cast<int>(sf.target);
  if (sf.responder != "adversary" &&
      (target < 0 || target >= g.num_vertices())) {
    Rng rng(derive_seed(sf.seed, 0x7a9));
    target = static_cast<int>(rng.next_below(g.num_vertices()));
    std::cerr << "note: target not given; drew " << target << " from seed\n";
  }

  ConfigPoint point{.gamma = sf.gamma,
                    .lies = sf.lies,
                    .rate = sf.rate,
                    .noise = sf.noise,
                    .delta = sf.delta,
                    .epsilon = sf.epsilon};
  auto responder = detail::make_responder(sf.responder, sf.strategy, g, d,
                                          target, point, sf.seed);
  RunOptions opt;
  opt.record_trace = sf.trace;

  SearchResult res;
  if (sf.strategy == "vertex-fixed")
    res = run_vertex_fixed(g, d, sf.lies, sf.gamma, *responder, opt);
  else if (sf.strategy == "vertex-linear")
    res = run_vertex_linear(g, d, sf.rate, *responder, opt);
  else if (sf.strategy == "vertex-prob")
    res = run_vertex_prob(g, d, sf.noise, sf.delta, *responder, opt);
  else if (sf.strategy == "edge-fixed")
    res = run_edge_fixed(g, d, sf.lies, sf.gamma, *responder, opt);
  else if (sf.strategy == "edge-linear")
    res = run_edge_linear(g, d, sf.epsilon, *responder, opt);
  else if (sf.strategy == "edge-errorless")
    res = run_edge_errorless(g, d, *responder, opt);
  else if (sf.strategy == "edge-prob")
    res = run_edge_prob(g, d, sf.epsilon, sf.delta, *responder, opt);
  else if (sf.strategy == "pruning") {
    auto pr = run_pruning(g, d, sf.epsilon, *responder, opt);
    std::cout << "pruning: rounds=" << pr.rounds << " |C|=" << pr.kept.size()
              << " |D|=" << pr.discarded.size() << " budget="
              << pr.round_budget
              << (pr.budget_exceeded ? " BUDGET-EXCEEDED" : "") << "\n";
    if (responder->target())
      attribute_lies(g, d, *responder->target(), pr.transcript);
    std::ostream* os = &std::cout;
    std::ofstream f;
    if (!sf.out.empty()) {
      f.open(sf.out);
      os = &f;
    }
    write_transcript_csv(pr.transcript, *os);
    return pr.budget_exceeded ? 1 : 0;
  } else if (sf.strategy == "prefix-bounded")
    res = run_prefix_bounded(g, d, sf.epsilon, *responder, opt);
  else {
    std::cerr << "unknown strategy: " << sf.strategy << "\n";
    return 2;
  }

  const int judge = responder->target() ? *responder->target() : res.found;
  attribute_lies(g, d, judge, res.transcript);

  bool pass = res.rounds <= std::ceil(res.bound) + 1e-9 ||
              !std::isfinite(res.bound);
  if (responder->target()) pass = pass && res.found == *responder->target();

  std::cout << "strategy=" << sf.strategy << " n=" << g.num_vertices()
            << " found=" << res.found << " rounds=" << res.rounds
            << " bound=" << res.bound << (pass ? " PASS" : " FAIL") << "\n";
  std::ostream* os = &std::cout;
  std::ofstream f;
  if (!sf.out.empty()) {
    f.open(sf.out);
    os = &f;
  }
  write_transcript_csv(res.transcript, *os);
  if (sf.trace) {
    std::ofstream tf;
    std::ostream* ts = &std::cout;
    if (!sf.out.empty()) {
      tf.open(sf.out + ".trace.csv");
      ts = &tf;
    }
    write_trace_csv(res.transcript, res.trace, *ts);
  }
  return pass ? 0 : 1;
}

int line_search(const SearchFlags& sf) {
  const long long target = sf.target < 1 ? 1000 : sf.target;
  std::unique_ptr<LineResponder> responder;
  if (sf.responder == "truthful")
    responder = std::make_unique<LineTruthful>(target);
  else if (sf.responder == "iid")
    responder = std::make_unique<LineIid>(target, sf.noise, sf.seed);
  else if (sf.responder == "liar")
    responder = std::make_unique<LineBudgetLiar>(
        sf.strategy == "unbounded-fixed"
            ? LineBudgetLiar::fixed(target, sf.lies, sf.seed)
            : LineBudgetLiar::prefix(target, sf.rate, sf.seed));
  else if (sf.responder == "adversary")
    responder = std::make_unique<LineGreedyAdversary>(sf.lies, sf.gamma);
  else {
    std::cerr << "unknown responder: " << sf.responder << "\n";
    return 2;
  }

  const LineQueryMode mode = sf.mode == "ternary" ? LineQueryMode::ternary
                                                  : LineQueryMode::binary;
  UnboundedResult res;
  if (sf.strategy == "unbounded-fixed")
    res = run_unbounded_fixed(mode, sf.lies, sf.gamma, *responder);
  else if (sf.strategy == "unbounded-linear")
    res = run_unbounded_linear(mode, sf.rate, *responder);
  else if (sf.strategy == "unbounded-prob")
    res = run_unbounded_prob(sf.noise, sf.delta, *responder);
  else if (sf.strategy == "unbounded-prefix")
    res = run_unbounded_prefix(sf.epsilon, *responder);
  else {
    std::cerr << "unknown strategy: " << sf.strategy << "\n";
    return 2;
  }

  const long long judge =
      responder->target() ? *responder->target() : res.found;
  for (auto& e : res.transcript) e.was_lie = line_reply_is_lie(judge, e);

  bool pass = !std::isfinite(res.bound) ||
              res.rounds <= std::ceil(res.bound) + 1e-9;
  if (responder->target()) pass = pass && res.found == *responder->target();
  std::cout << "strategy=" << sf.strategy << " found=" << res.found
            << " rounds=" << res.rounds << " bound=" << res.bound
            << (pass ? " PASS" : " FAIL") << "\n";

  std::ostream* os = &std::cout;
  std::ofstream f;
  if (!sf.out.empty()) {
    f.open(sf.out);
    os = &f;
  }
  *os << "round,query_kind,query,reply,was_lie\n";
  for (const auto& e : res.transcript)
    *os << e.round << ',' << (e.binary ? "binary" : "ternary") << ','
        << e.site << ',' << e.reply << ',' << (*e.was_lie ? 1 : 0) << '\n';
  return pass ? 0 : 1;
}

int cmd_bench(const GraphFlags& gf, ExperimentConfig cfg,
              const std::string& config_file, const std::string& targets,
              int threads) {
  if (!config_file.empty()) {
    std::ifstream in(config_file);
    if (!in) {
      std::cerr << "cannot open config " << config_file << "\n";
      return 2;
    }
    json j = json::parse(in);
    cfg.strategy = j.value("strategy", cfg.strategy);
    cfg.responder = j.value("responder", cfg.responder);
    cfg.trials = j.value("trials", cfg.trials);
    cfg.master_seed = j.value("seed", cfg.master_seed);
    cfg.out_prefix = j.value("out", cfg.out_prefix);
    if (j.contains("gamma")) cfg.gamma = j["gamma"].get<std::vector<double>>();
    if (j.contains("lies")) cfg.lies = j["lies"].get<std::vector<int>>();
    if (j.contains("rate")) cfg.rate = j["rate"].get<std::vector<double>>();
    if (j.contains("noise")) cfg.noise = j["noise"].get<std::vector<double>>();
    if (j.contains("delta")) cfg.delta = j["delta"].get<std::vector<double>>();
    if (j.contains("epsilon"))
      cfg.epsilon = j["epsilon"].get<std::vector<double>>();
    if (j.contains("graph")) {
      const auto& gj = j["graph"];
      if (gj.contains("file")) {
        cfg.graph.file = gj["file"];
      } else {
        cfg.graph.kind = graph_kind_from_string(gj.value("kind", "path"));
        cfg.graph.params.n = gj.value("n", 0);
        cfg.graph.params.leaves = gj.value("leaves", 0);
        cfg.graph.params.rows = gj.value("rows", 0);
        cfg.graph.params.cols = gj.value("cols", 0);
        cfg.graph.params.extra_edges = gj.value("extra_edges", 0);
        cfg.graph.seed = gj.value("seed", 0);
      }
    }
    if (j.contains("targets")) {
      const auto& tj = j["targets"];
      if (tj.is_string() && tj == "all") {
        cfg.targets = TargetPolicy::all;
      } else if (tj.contains("sample")) {
        cfg.targets = TargetPolicy::sample;
        cfg.target_arg = tj["sample"];
      } else if (tj.contains("fixed")) {
        cfg.targets = TargetPolicy::fixed;
        cfg.target_arg = tj["fixed"];
      }
    }
  } else {
    cfg.graph = gf.spec();
    if (targets == "all") {
      cfg.targets = TargetPolicy::all;
    } else if (!targets.empty()) {
      cfg.targets = TargetPolicy::sample;
      cfg.target_arg = std::stoi(targets);
    }
  }

  BoundReport report = run_experiment(cfg, threads);
  for (const auto& r : report.rows) {
    std::cout << (r.pass ? "PASS" : "FAIL") << " cfg" << r.config_id << ' '
              << r.strategy << " on " << r.graph << " responder="
              << r.responder << " trials=" << r.trials
              << " max_rounds=" << r.max_rounds << " bound=" << r.bound
              << " fail_rate=" << r.fail_rate << "  [" << r.formula << "]\n";
  }
  if (cfg.out_prefix.empty()) {
    write_csv(report, std::cout);
  } else {
    std::cout << "wrote " << cfg.out_prefix << ".csv and .json\n";
  }
  return report.all_pass ? 0 : 1;
}

int cmd_verify(const std::string& results, const std::string& theorem) {
  std::ifstream in(results);
  if (!in) {
    std::cerr << "cannot open results " << results << "\n";
    return 2;
  }
  auto rows = read_csv(in);
  auto issues = verify_bounds(rows, theorem);
  for (const auto& r : rows) {
    bool bad = false;
    for (const auto& i : issues)
      if (i.config_id == r.config_id) bad = true;
    std::cout << (bad ? "FAIL" : "PASS") << " cfg" << r.config_id << ' '
              << r.strategy << " on " << r.graph << " max_rounds="
              << r.max_rounds << " bound=" << r.bound << "\n";
  }
  for (const auto& i : issues)
    std::cout << "  issue cfg" << i.config_id << ": " << i.message << "\n";
  return issues.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "liarsearch: median-based search on graphs and integer ranges under "
      "adversarial and random reply noise"};
  app.require_subcommand(1);

  GraphFlags gen_gf;
  std::string gen_out;
  bool gen_json = false;
  auto* gen = app.add_subcommand("gen", "generate a graph file");
  gen_gf.attach(gen);
  gen->add_option("--out", gen_out, "output file (default stdout)");
  gen->add_flag("--json", gen_json, "emit JSON instead of the edge list");

  GraphFlags search_gf;
  SearchFlags sf;
  auto* search =
      app.add_subcommand("search", "run one search and print the transcript");
  search_gf.attach(search);
  search->add_option("--strategy", sf.strategy,
                     "vertex-fixed|vertex-linear|vertex-prob|edge-fixed|"
                     "edge-linear|edge-errorless|edge-prob|pruning|"
                     "prefix-bounded|unbounded-fixed|unbounded-linear|"
                     "unbounded-prob|unbounded-prefix");
  search->add_option("--responder", sf.responder,
                     "truthful|adversary|iid (graphs); truthful|iid|liar|"
                     "adversary (unbounded)");
  search->add_option("--gamma", sf.gamma, "weight divisor Gamma (inf allowed)");
  search->add_option("--lies", sf.lies, "fixed lie budget L");
  search->add_option("--rate", sf.rate, "lie rate r");
  search->add_option("--noise", sf.noise, "iid error probability p");
  search->add_option("--delta", sf.delta, "failure probability budget");
  search->add_option("--epsilon", sf.epsilon, "rate margin eps");
  search->add_option("--seed", sf.seed, "responder seed");
  search->add_option("--target", sf.target, "ground-truth target");
  search->add_option("--mode", sf.mode, "unbounded query mode: ternary|binary");
  search->add_flag("--trace", sf.trace, "emit the per-round weight trace");
  search->add_option("--out", sf.out, "transcript file (default stdout)");

  GraphFlags bench_gf;
  ExperimentConfig cfg;
  std::string bench_config, bench_targets;
  int bench_threads = 0;
  auto* bench = app.add_subcommand("bench", "run a trial grid and report");
  bench_gf.attach(bench);
  bench->add_option("--config", bench_config, "JSON experiment config");
  bench->add_option("--strategy", cfg.strategy, "strategy id");
  bench->add_option("--responder", cfg.responder, "responder kind");
  bench->add_option("--gamma", cfg.gamma, "Gamma grid")->delimiter(',');
  bench->add_option("--lies", cfg.lies, "lie budget grid")->delimiter(',');
  bench->add_option("--rate", cfg.rate, "rate grid")->delimiter(',');
  bench->add_option("--noise", cfg.noise, "noise grid")->delimiter(',');
  bench->add_option("--delta", cfg.delta, "delta grid")->delimiter(',');
  bench->add_option("--epsilon", cfg.epsilon, "epsilon grid")->delimiter(',');
  bench->add_option("--trials", cfg.trials, "trials per point and target");
  bench->add_option("--seed", cfg.master_seed, "master seed");
  bench->add_option("--targets", bench_targets, "'all' or a sample count");
  bench->add_option("--threads", bench_threads, "worker threads (0 = auto)");
  bench->add_option("--out", cfg.out_prefix, "output prefix for csv+json");

  std::string verify_results, verify_theorem;
  auto* verify = app.add_subcommand("verify", "re-check a results CSV");
  verify->add_option("--results", verify_results, "results CSV from bench")
      ->required();
  verify->add_option("--theorem", verify_theorem,
                     "guarantee id (matches the strategy id)")
      ->required();

  GraphFlags oracle_gf;
  int oracle_lies = 0;
  std::string oracle_mode = "vertex";
  auto* oracle =
      app.add_subcommand("oracle", "exact minimax value on a tiny instance");
  oracle_gf.attach(oracle);
  oracle->add_option("--lies", oracle_lies, "lie budget L (<= 2)");
  oracle->add_option("--mode", oracle_mode, "vertex|edge");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;
  }

  try {
    if (gen->parsed()) return cmd_gen(gen_gf, gen_out, gen_json);
    if (search->parsed()) {
      if (sf.strategy.rfind("unbounded", 0) == 0) return line_search(sf);
      return graph_search(search_gf, sf);
    }
    if (bench->parsed())
      return cmd_bench(bench_gf, cfg, bench_config, bench_targets,
                       bench_threads);
    if (verify->parsed()) return cmd_verify(verify_results, verify_theorem);
    if (oracle->parsed()) return cmd_oracle(oracle_gf, oracle_lies, oracle_mode);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
