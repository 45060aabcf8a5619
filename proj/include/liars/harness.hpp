#pragma once

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "liars/bounds.hpp"
#include "liars/graph.hpp"
#include "liars/strategies.hpp"

namespace liars {

using json = nlohmann::json;

/// 95% Wilson score upper bound for `fails` failures in `n` trials.
inline double wilson_upper(int fails, int n, double z = 1.959963984540054) {
  if (n == 0) return 1.0;
  const double phat = static_cast<double>(fails) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = phat + z2 / (2.0 * n);
  const double margin =
      z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n));
  return (center + margin) / denom;
}

struct GraphSpec {
  std::string file;  // when nonempty, wins over the generator fields
  GraphKind kind = GraphKind::path;
  GenParams params;
  std::uint64_t seed = 0;

  Graph build() const {
    if (!file.empty()) {
      std::ifstream in(file);
      if (!in) throw GraphError("cannot open graph file: " + file);
      return parse_graph(in);
    }
    return generate_graph(kind, params, seed);
  }

  std::string label() const {
    if (!file.empty()) return file;
    std::ostringstream os;
    os << to_string(kind);
    if (params.n) os << "-n" << params.n;
    if (params.leaves) os << "-l" << params.leaves;
    if (params.rows) os << "-" << params.rows << "x" << params.cols;
    if (params.extra_edges) os << "-e" << params.extra_edges;
    if (kind == GraphKind::random_tree || kind == GraphKind::random_connected)
      os << "-s" << seed;
    return os.str();
  }
};

enum class TargetPolicy { all, sample, fixed };

struct ExperimentConfig {
  std::string strategy;   // vertex-fixed, vertex-linear, vertex-prob,
                          // edge-fixed, edge-linear, edge-errorless,
                          // edge-prob, pruning, prefix-bounded
  GraphSpec graph;
  std::string responder = "truthful";  // truthful, adversary, iid
  std::vector<double> gamma{2.0};
  std::vector<int> lies{0};
  std::vector<double> rate{0.25};
  std::vector<double> noise{0.25};
  std::vector<double> delta{0.1};
  std::vector<double> epsilon{0.5};
  int trials = 1;
  std::uint64_t master_seed = 1;
  TargetPolicy targets = TargetPolicy::sample;
  int target_arg = 5;  // sample count or fixed target id
  std::string out_prefix;
};

/// One grid point of an experiment.
struct ConfigPoint {
  double gamma = 0.0;
  int lies = 0;
  double rate = 0.0;
  double noise = 0.0;
  double delta = 0.0;
  double epsilon = 0.0;
};

struct BoundRow {
  int config_id = 0;
  std::string strategy, graph, responder;
  int n = 0, max_degree = 0;
  ConfigPoint point;
  int trials = 0;
  int max_rounds = 0;
  double mean_rounds = 0.0;
  int failures = 0;
  double fail_rate = 0.0;
  double wilson = 0.0;
  double bound = 0.0;
  std::string formula;
  bool pass = false;
  std::uint64_t worst_seed = 0;
};

struct BoundReport {
  std::vector<BoundRow> rows;
  bool all_pass = true;
};

namespace detail {

inline bool strategy_is_probabilistic(const std::string& s) {
  return s == "vertex-prob" || s == "edge-prob";
}

inline bool strategy_is_edge(const std::string& s) {
  return s.rfind("edge", 0) == 0 || s == "pruning" || s == "prefix-bounded";
}

struct TrialOutcome {
  int rounds = 0;
  bool ok = true;       // found the target / stayed consistent
  bool aborted = false;  // contract violation or retry exhaustion
};

/// Bound value and its formula with substituted values.
inline std::pair<double, std::string> bound_for(const std::string& strategy,
                                                int n, int max_deg,
                                                const ConfigPoint& p) {
  char buf[256];
  switch (strategy[0] == 'v' ? (strategy == "vertex-fixed"    ? 0
                                : strategy == "vertex-linear" ? 1
                                                              : 2)
                             : (strategy == "edge-fixed"       ? 3
                                : strategy == "edge-linear"    ? 4
                                : strategy == "edge-errorless" ? 5
                                : strategy == "edge-prob"      ? 6
                                : strategy == "pruning"        ? 7
                                                               : 8)) {
    case 0: {
      double b = bounds::vertex_fixed(n, p.lies, p.gamma);
      std::snprintf(buf, sizeof buf,
                    "(log2(%d) + %d*log2(%g)) / log2(2*%g/(%g+1)) = %.6g", n,
                    p.lies, p.gamma, p.gamma, p.gamma, b);
      return {b, buf};
    }
    case 1: {
      double b = std::ceil(bounds::vertex_linear(n, p.rate));
      std::snprintf(buf, sizeof buf, "ceil(log2(%d) / (1 - H(%g))) = %.6g", n,
                    p.rate, b);
      return {b, buf};
    }
    case 2: {
      auto vp = vertex_prob_params(n, p.noise, p.delta);
      std::snprintf(buf, sizeof buf,
                    "Q(n=%d, p=%g, delta=%g) = %d; fail rate <= %g", n,
                    p.noise, p.delta, vp.declared_length, p.delta);
      return {static_cast<double>(vp.declared_length), buf};
    }
    case 3: {
      double b = bounds::edge_fixed(n, p.lies, p.gamma, max_deg);
      std::snprintf(buf, sizeof buf,
                    "(ln(%d) + %d*ln(%g)) / ln(1+(%g-1)/(%g*%d+1)) = %.6g", n,
                    p.lies, p.gamma, p.gamma, p.gamma, max_deg, b);
      return {b, buf};
    }
    case 4: {
      double b = bounds::edge_linear(n, max_deg, p.epsilon);
      std::snprintf(buf, sizeof buf, "2 * %g^-2 * %d * ln(%d) = %.6g",
                    p.epsilon, max_deg, n, b);
      return {b, buf};
    }
    case 5: {
      double b = bounds::edge_errorless(n, max_deg);
      std::snprintf(buf, sizeof buf,
                    "ceil(log(%d/%d)/log(%d/%d)) + %d = %.6g", n, max_deg,
                    max_deg, max_deg - 1, max_deg, b);
      return {b, buf};
    }
    case 6: {
      auto ep = edge_prob_params(n, max_deg, p.epsilon, p.delta);
      double b = static_cast<double>(ep.boost_repeats) * ep.declared_length;
      std::snprintf(buf, sizeof buf,
                    "P*Q = %d*%d = %.6g; fail rate <= %g", ep.boost_repeats,
                    ep.declared_length, b, p.delta);
      return {b, buf};
    }
    case 7: {
      double b = 2.0 * bounds::pruning_q0(n, max_deg, p.epsilon);
      std::snprintf(buf, sizeof buf,
                    "slack * 8(%d-1) * %g^-2 * ln(%d) = %.6g", max_deg,
                    p.epsilon, n, b);
      return {b, buf};
    }
    default: {
      std::snprintf(buf, sizeof buf, "O(%g^-4 log %d) (shape only)",
                    p.epsilon, n);
      return {std::numeric_limits<double>::infinity(), buf};
    }
  }
}

inline std::unique_ptr<Responder> make_responder(
    const std::string& kind, const std::string& strategy, const Graph& g,
    const DistanceMatrix& d, int target, const ConfigPoint& p,
    std::uint64_t seed) {
  if (kind == "truthful")
    return std::make_unique<TruthfulResponder>(g, d, target, seed);
  if (kind == "iid")
    return std::make_unique<IidResponder>(
        g, d, target,
        strategy == "edge-prob" ? 0.5 * (1.0 - p.epsilon) : p.noise, seed);
  if (kind != "adversary")
    throw std::invalid_argument("unknown responder kind: " + kind);

  const int max_deg = g.max_degree();
  if (strategy == "vertex-fixed" || strategy == "edge-fixed" ||
      strategy == "edge-errorless") {
    const int budget = strategy == "edge-errorless" ? 0 : p.lies;
    const double gamma =
        strategy == "edge-errorless" ? kInfGamma : p.gamma;
    return std::make_unique<AdversaryResponder>(g, d, budget, gamma);
  }
  if (strategy == "vertex-linear")
    return std::make_unique<AdversaryResponder>(
        g, d, BudgetKind::linear, p.rate,
        p.rate == 0.0 ? kInfGamma : (1.0 - p.rate) / p.rate);
  if (strategy == "edge-linear") {
    auto lp = edge_linear_params(g.num_vertices(), max_deg, p.epsilon);
    return std::make_unique<AdversaryResponder>(g, d, BudgetKind::linear,
                                                lp.rate, lp.gamma);
  }
  if (strategy == "pruning" || strategy == "prefix-bounded") {
    const double rate = (1.0 - p.epsilon) / std::max(2, max_deg);
    const double gamma =
        max_deg >= 2
            ? 1.0 + max_deg * p.epsilon / (2.0 * std::max(1, max_deg - 1))
            : 2.0;
    return std::make_unique<AdversaryResponder>(g, d, BudgetKind::prefix,
                                                rate, gamma);
  }
  throw std::invalid_argument("adversary responder unsupported for " +
                              strategy);
}

inline double adversary_budget_used(const std::string& strategy,
                                    const Graph& g, const ConfigPoint& p,
                                    const SearchResult& res);

inline TrialOutcome run_trial(const std::string& strategy, const Graph& g,
                              const DistanceMatrix& d, const std::string& rk,
                              int target, const ConfigPoint& p,
                              std::uint64_t seed) {
  TrialOutcome out;
  try {
    auto responder = make_responder(rk, strategy, g, d, target, p, seed);
    SearchResult res;
    if (strategy == "vertex-fixed")
      res = run_vertex_fixed(g, d, p.lies, p.gamma, *responder);
    else if (strategy == "vertex-linear")
      res = run_vertex_linear(g, d, p.rate, *responder);
    else if (strategy == "vertex-prob")
      res = run_vertex_prob(g, d, p.noise, p.delta, *responder);
    else if (strategy == "edge-fixed")
      res = run_edge_fixed(g, d, p.lies, p.gamma, *responder);
    else if (strategy == "edge-linear")
      res = run_edge_linear(g, d, p.epsilon, *responder);
    else if (strategy == "edge-errorless")
      res = run_edge_errorless(g, d, *responder);
    else if (strategy == "edge-prob")
      res = run_edge_prob(g, d, p.epsilon, p.delta, *responder);
    else if (strategy == "pruning") {
      auto pr = run_pruning(g, d, p.epsilon, *responder);
      out.rounds = pr.rounds;
      out.aborted = pr.budget_exceeded;
      bool in_pool = false;
      if (static_cast<double>(pr.discarded.size()) > pr.discard_cap)
        out.ok = false;
      auto contains = [&](const std::vector<int>& v, int x) {
        return std::find(v.begin(), v.end(), x) != v.end();
      };
      if (rk == "adversary") {
        std::vector<int> pool = pr.kept;
        pool.insert(pool.end(), pr.discarded.begin(), pr.discarded.end());
        for (int v : pool)
          if (lies_against(g, d, v, pr.transcript) <=
              pr.rate * pr.rounds + 1e-9)
            in_pool = true;
      } else {
        in_pool = contains(pr.kept, target) || contains(pr.discarded, target);
      }
      out.ok = out.ok && in_pool && !out.aborted;
      return out;
    } else if (strategy == "prefix-bounded")
      res = run_prefix_bounded(g, d, p.epsilon, *responder);
    else
      throw std::invalid_argument("unknown strategy: " + strategy);

    out.rounds = res.rounds;
    if (auto t = responder->target())
      out.ok = res.found == *t;
    else
      out.ok = lies_against(g, d, res.found, res.transcript) <=
               adversary_budget_used(strategy, g, p, res);
  } catch (const ResponderContractViolation&) {
    out.aborted = true;
    out.ok = false;
  } catch (const RetryExhausted&) {
    out.aborted = true;
    out.ok = false;
  }
  return out;
}

inline double adversary_budget_used(const std::string& strategy,
                                    const Graph& g, const ConfigPoint& p,
                                    const SearchResult& res) {
  if (strategy == "vertex-fixed" || strategy == "edge-fixed") return p.lies;
  if (strategy == "edge-errorless") return 0;
  if (strategy == "vertex-linear" || strategy == "edge-linear")
    return res.params.lie_budget;
  // Prefix models: rate * game length.
  return res.params.rate * static_cast<double>(res.transcript.size()) + 1e-9;
}

template <class F>
void parallel_for(int count, F&& fn, int threads = 0) {
  if (threads <= 0)
    threads = static_cast<int>(std::thread::hardware_concurrency());
  threads = std::max(1, std::min(threads, count));
  if (threads == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::atomic<int> next{0};
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (;;) {
        int i = next.fetch_add(1);
        if (i >= count) return;
        fn(i);
      }
    });
  for (auto& th : pool) th.join();
}

}  // namespace detail

inline void write_csv(const BoundReport& report, std::ostream& out);
inline void write_json_report(const ExperimentConfig& cfg,
                              const BoundReport& report, std::ostream& out);

/// Run the full grid of an experiment: every parameter point, every
/// target under the policy, `trials` seeded repetitions. Trials are
/// independent and deterministic in (master seed, trial index), so the
/// result is invariant to the degree of parallelism.
inline BoundReport run_experiment(const ExperimentConfig& cfg,
                                  int threads = 0) {
  if (cfg.trials <= 0) return {};
  Graph g = cfg.graph.build();
  const bool edge_like = detail::strategy_is_edge(cfg.strategy);
  Graph work = edge_like && !g.unit_weights() ? as_unit_weight(g) : g;
  DistanceMatrix d(work);
  const int n = work.num_vertices();

  // Expand the relevant parameter lists for this strategy.
  std::vector<ConfigPoint> points;
  auto push_point = [&](ConfigPoint p) { points.push_back(p); };
  if (cfg.strategy == "vertex-fixed" || cfg.strategy == "edge-fixed") {
    for (double gm : cfg.gamma)
      for (int l : cfg.lies) push_point({.gamma = gm, .lies = l});
  } else if (cfg.strategy == "vertex-linear") {
    for (double r : cfg.rate) push_point({.rate = r});
  } else if (cfg.strategy == "vertex-prob") {
    for (double pnoise : cfg.noise)
      for (double dl : cfg.delta) push_point({.noise = pnoise, .delta = dl});
  } else if (cfg.strategy == "edge-prob") {
    for (double e : cfg.epsilon)
      for (double dl : cfg.delta) push_point({.delta = dl, .epsilon = e});
  } else if (cfg.strategy == "edge-errorless") {
    push_point({});
  } else {
    for (double e : cfg.epsilon) push_point({.epsilon = e});
  }

  // Targets. Adversaries are adaptive (target-free): one run per point.
  std::vector<int> targets;
  if (cfg.responder == "adversary") {
    targets.push_back(-1);
  } else if (cfg.targets == TargetPolicy::all) {
    for (int t = 0; t < n; ++t) targets.push_back(t);
  } else if (cfg.targets == TargetPolicy::fixed) {
    targets.push_back(cfg.target_arg);
  } else {
    Rng rng(derive_seed(cfg.master_seed, 0x7a9));
    for (int i = 0; i < std::min(cfg.target_arg, n); ++i)
      targets.push_back(static_cast<int>(rng.next_below(n)));
  }
  const int trials = cfg.responder == "adversary" ? 1 : std::max(1, cfg.trials);

  BoundReport report;
  int unit_base = 0;
  for (std::size_t pi = 0; pi < points.size(); ++pi) {
    const auto& p = points[pi];
    const int units = static_cast<int>(targets.size()) * trials;
    std::vector<detail::TrialOutcome> outcomes(units);
    std::vector<std::uint64_t> seeds(units);
    detail::parallel_for(
        units,
        [&](int u) {
          const int target = targets[u / trials];
          const std::uint64_t seed =
              derive_seed(cfg.master_seed, unit_base + u);
          seeds[u] = seed;
          outcomes[u] = detail::run_trial(cfg.strategy, work, d,
                                          cfg.responder,
                                          target < 0 ? 0 : target, p, seed);
        },
        threads);
    unit_base += units;

    BoundRow row;
    row.config_id = static_cast<int>(pi);
    row.strategy = cfg.strategy;
    row.graph = cfg.graph.label();
    row.responder = cfg.responder;
    row.n = n;
    row.max_degree = work.max_degree();
    row.point = p;
    row.trials = units;
    long long total_rounds = 0;
    std::uint64_t max_rounds_seed = 0;
    for (int u = 0; u < units; ++u) {
      const auto& o = outcomes[u];
      total_rounds += o.rounds;
      if (o.rounds > row.max_rounds) {
        row.max_rounds = o.rounds;
        max_rounds_seed = seeds[u];
      }
      if (!o.ok || o.aborted) {
        ++row.failures;
        row.worst_seed = seeds[u];
      }
    }
    if (row.failures == 0) row.worst_seed = max_rounds_seed;
    row.mean_rounds = units ? static_cast<double>(total_rounds) / units : 0.0;
    row.fail_rate = units ? static_cast<double>(row.failures) / units : 0.0;
    row.wilson = wilson_upper(row.failures, units);
    auto [bound, formula] =
        detail::bound_for(cfg.strategy, n, work.max_degree(), p);
    row.bound = bound;
    row.formula = formula;
    if (detail::strategy_is_probabilistic(cfg.strategy)) {
      row.pass = row.wilson <= p.delta ||
                 row.failures == 0;  // tiny trial counts: CI is vacuous
      if (cfg.strategy == "vertex-prob")
        row.pass = row.pass && row.max_rounds == static_cast<int>(bound);
    } else {
      row.pass =
          row.failures == 0 && row.max_rounds <= std::ceil(bound) + 1e-9;
    }
    report.all_pass = report.all_pass && row.pass;
    report.rows.push_back(std::move(row));
  }

  if (!cfg.out_prefix.empty()) {
    std::ofstream csv(cfg.out_prefix + ".csv");
    write_csv(report, csv);
    std::ofstream js(cfg.out_prefix + ".json");
    write_json_report(cfg, report, js);
  }
  return report;
}

inline const char* kCsvHeader =
    "schema_version,config_id,strategy,graph,n,max_degree,responder,gamma,"
    "lies,rate,noise,delta,epsilon,trials,max_rounds,mean_rounds,failures,"
    "fail_rate,wilson_upper,bound,pass,worst_seed,formula";

inline void write_csv(const BoundReport& report, std::ostream& out) {
  out << kCsvHeader << '\n';
  char buf[160];
  for (const auto& r : report.rows) {
    std::snprintf(buf, sizeof buf, "%g,%d,%g,%g,%g,%g", r.point.gamma,
                  r.point.lies, r.point.rate, r.point.noise, r.point.delta,
                  r.point.epsilon);
    out << 1 << ',' << r.config_id << ',' << r.strategy << ',' << r.graph
        << ',' << r.n << ',' << r.max_degree << ',' << r.responder << ','
        << buf << ',' << r.trials << ',' << r.max_rounds << ',';
    std::snprintf(buf, sizeof buf, "%.12g,%d,%.12g,%.12g,%.12g", r.mean_rounds,
                  r.failures, r.fail_rate, r.wilson, r.bound);
    out << buf << ',' << (r.pass ? 1 : 0) << ',' << r.worst_seed << ','
        << r.formula << '\n';
  }
}

inline void write_json_report(const ExperimentConfig& cfg,
                              const BoundReport& report, std::ostream& out) {
  json j;
  j["version"] = 1;
  j["config"] = {{"strategy", cfg.strategy},
                 {"graph", cfg.graph.label()},
                 {"responder", cfg.responder},
                 {"gamma", cfg.gamma},
                 {"lies", cfg.lies},
                 {"rate", cfg.rate},
                 {"noise", cfg.noise},
                 {"delta", cfg.delta},
                 {"epsilon", cfg.epsilon},
                 {"trials", cfg.trials},
                 {"master_seed", cfg.master_seed}};
  j["all_pass"] = report.all_pass;
  json rows = json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"config_id", r.config_id},
                    {"strategy", r.strategy},
                    {"graph", r.graph},
                    {"n", r.n},
                    {"max_degree", r.max_degree},
                    {"responder", r.responder},
                    {"gamma", r.point.gamma},
                    {"lies", r.point.lies},
                    {"rate", r.point.rate},
                    {"noise", r.point.noise},
                    {"delta", r.point.delta},
                    {"epsilon", r.point.epsilon},
                    {"trials", r.trials},
                    {"max_rounds", r.max_rounds},
                    {"mean_rounds", r.mean_rounds},
                    {"failures", r.failures},
                    {"fail_rate", r.fail_rate},
                    {"wilson_upper", r.wilson},
                    {"bound", r.bound},
                    {"formula", r.formula},
                    {"pass", r.pass}});
  }
  j["rows"] = std::move(rows);
  out << j.dump(2) << '\n';
}

/// Parse rows back from the CSV written by write_csv.
inline std::vector<BoundRow> read_csv(std::istream& in) {
  std::vector<BoundRow> rows;
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader)
    throw std::runtime_error("unrecognized results CSV header");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::size_t start = 0;
    for (int i = 0; i < 22; ++i) {
      auto pos = line.find(',', start);
      if (pos == std::string::npos)
        throw std::runtime_error("short CSV row: " + line);
      f.push_back(line.substr(start, pos - start));
      start = pos + 1;
    }
    f.push_back(line.substr(start));  // formula (may contain anything)
    BoundRow r;
    r.config_id = std::stoi(f[1]);
    r.strategy = f[2];
    r.graph = f[3];
    r.n = std::stoi(f[4]);
    r.max_degree = std::stoi(f[5]);
    r.responder = f[6];
    r.point.gamma = std::stod(f[7]);
    r.point.lies = std::stoi(f[8]);
    r.point.rate = std::stod(f[9]);
    r.point.noise = std::stod(f[10]);
    r.point.delta = std::stod(f[11]);
    r.point.epsilon = std::stod(f[12]);
    r.trials = std::stoi(f[13]);
    r.max_rounds = std::stoi(f[14]);
    r.mean_rounds = std::stod(f[15]);
    r.failures = std::stoi(f[16]);
    r.fail_rate = std::stod(f[17]);
    r.wilson = std::stod(f[18]);
    r.bound = std::stod(f[19]);
    r.pass = f[20] == "1";
    r.worst_seed = std::stoull(f[21]);
    r.formula = f[22];
    rows.push_back(std::move(r));
  }
  return rows;
}

struct VerifyIssue {
  int config_id = 0;
  std::string message;
};

/// Re-check every row of a results file against the named guarantee,
/// recomputing the closed-form bound from the row's own parameters.
/// Returns the list of failures (empty = all pass).
inline std::vector<VerifyIssue> verify_bounds(const std::vector<BoundRow>& rows,
                                              const std::string& theorem) {
  static const std::map<std::string, std::string> theorem_to_strategy = {
      {"vertex-fixed", "vertex-fixed"},   {"vertex-linear", "vertex-linear"},
      {"vertex-prob", "vertex-prob"},     {"edge-fixed", "edge-fixed"},
      {"edge-linear", "edge-linear"},     {"edge-errorless", "edge-errorless"},
      {"edge-prob", "edge-prob"},         {"pruning", "pruning"},
      {"prefix-bounded", "prefix-bounded"}};
  auto it = theorem_to_strategy.find(theorem);
  if (it == theorem_to_strategy.end())
    throw std::invalid_argument("unknown theorem id: " + theorem);

  std::vector<VerifyIssue> issues;
  char buf[256];
  for (const auto& r : rows) {
    if (r.strategy != it->second) {
      std::snprintf(buf, sizeof buf,
                    "row strategy '%s' does not match theorem '%s'",
                    r.strategy.c_str(), theorem.c_str());
      issues.push_back({r.config_id, buf});
      continue;
    }
    auto [bound, formula] =
        detail::bound_for(r.strategy, r.n, r.max_degree, r.point);
    if (detail::strategy_is_probabilistic(r.strategy)) {
      if (r.wilson > r.point.delta && r.failures > 0) {
        std::snprintf(buf, sizeof buf,
                      "failure rate %.4g (Wilson upper %.4g) exceeds delta "
                      "%.4g; worst seed %llu",
                      r.fail_rate, r.wilson, r.point.delta,
                      static_cast<unsigned long long>(r.worst_seed));
        issues.push_back({r.config_id, buf});
      }
      continue;
    }
    if (std::isfinite(bound) && r.max_rounds > std::ceil(bound) + 1e-9) {
      std::snprintf(buf, sizeof buf,
                    "max rounds %d exceeds bound ceil(%.6g); %s; worst seed "
                    "%llu",
                    r.max_rounds, bound, formula.c_str(),
                    static_cast<unsigned long long>(r.worst_seed));
      issues.push_back({r.config_id, buf});
    }
    if (r.failures > 0) {
      std::snprintf(buf, sizeof buf,
                    "%d trials failed or were excluded (responder budget "
                    "violations are excluded and reported); worst seed %llu",
                    r.failures,
                    static_cast<unsigned long long>(r.worst_seed));
      issues.push_back({r.config_id, buf});
    }
  }
  return issues;
}

}  // namespace liars
