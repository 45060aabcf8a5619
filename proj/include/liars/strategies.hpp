#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "liars/bounds.hpp"
#include "liars/distance.hpp"
#include "liars/entropy.hpp"
#include "liars/graph.hpp"
#include "liars/responders.hpp"
#include "liars/transcript.hpp"
#include "liars/weights.hpp"

namespace liars {

struct RunOptions {
  bool record_trace = false;
  /// When >= 0, run exactly this many rounds regardless of how many
  /// candidates remain (probabilistic wrappers commit to a length).
  int exact_rounds = -1;
  /// Pruning round budget slack over the leading-term formula.
  double pruning_slack = 2.0;
};

struct RetryExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void require_unit_weights(const Graph& g, const char* who) {
  if (!g.unit_weights())
    throw std::invalid_argument(std::string(who) +
                                " requires a unit-weight graph; convert with "
                                "as_unit_weight() first");
}

inline void record_round(SearchResult& res, const Query& q, int reply,
                         double factor, const LieState& s, bool tracing) {
  res.transcript.push_back(
      {static_cast<int>(res.transcript.size()) + 1, q, reply, std::nullopt});
  if (tracing) {
    WeightSnapshot snap;
    snap.factor = factor;
    snap.total = total_weight(s);
    snap.heavy = heavy_vertex(s, 0.5).value_or(-1);
    res.trace.push_back(snap);
  }
}

inline SearchResult trivial_result(double bound) {
  SearchResult res;
  res.found = 0;
  res.rounds = 0;
  res.bound = bound;
  return res;
}

inline int finish(const LieState& s, int budget, bool exact_length) {
  if (auto v = s.unique_within(budget)) return *v;
  if (exact_length) return s.argmin_lies();
  throw ResponderContractViolation(
      "no candidate remains within the lie budget");
}

/// Greedy ordering of the edges incident to v: each pick maximizes the
/// total weight that would have been eliminated so far if every reply in
/// the cyclic phase pointed at v. Ties go to the smaller neighbor id.
inline std::vector<Query> greedy_incident_order(const LieState& s,
                                                const Graph& g,
                                                const DistanceMatrix& d,
                                                int v) {
  std::vector<double> mu;
  s.materialize(mu);
  const int n = g.num_vertices();
  struct Cand {
    int w;
    std::vector<std::uint8_t> eliminated;  // complement of N(e, v)
  };
  std::vector<Cand> cands;
  for (int w : g.neighbors(v)) {
    auto keep = compatible_mask(g, d, Query::edge(v, w), v);
    for (auto& b : keep) b = !b;
    cands.push_back({w, std::move(keep)});
  }
  std::vector<std::uint8_t> covered(n, 0);
  std::vector<Query> order;
  std::vector<char> used(cands.size(), 0);
  for (std::size_t round = 0; round < cands.size(); ++round) {
    int best = -1;
    double best_gain = -1.0;
    for (std::size_t i = 0; i < cands.size(); ++i) {
      if (used[i]) continue;
      double gain = 0.0;
      for (int x = 0; x < n; ++x)
        if (cands[i].eliminated[x] && !covered[x]) gain += mu[x];
      if (best < 0 || gain > best_gain * (1 + 1e-9)) {
        best = static_cast<int>(i);
        best_gain = gain;
      }
    }
    used[best] = 1;
    for (int x = 0; x < n; ++x)
      if (cands[best].eliminated[x]) covered[x] = 1;
    order.push_back(Query::edge(v, cands[best].w));
  }
  return order;
}

}  // namespace detail

/// Vertex-query search for a fixed lie budget: query a 1-median, bump the
/// lie counter of every vertex incompatible with the reply, stop when one
/// candidate is left.
inline SearchResult run_vertex_fixed(const Graph& g, const DistanceMatrix& d,
                                     int lie_budget, double gamma,
                                     Responder& responder,
                                     const RunOptions& opt = {}) {
  const int n = g.num_vertices();
  const double bound = bounds::vertex_fixed(n, lie_budget, gamma);
  if (n == 1) return detail::trivial_result(bound);

  LieState state = gamma_is_infinite(gamma) ? LieState::infinite_gamma(n)
                                            : LieState(n, gamma);
  SearchResult res;
  res.bound = bound;
  res.params.gamma = gamma;
  res.params.lie_budget = lie_budget;

  const bool exact_len = opt.exact_rounds >= 0;
  const int cap = exact_len ? opt.exact_rounds
                            : static_cast<int>(std::ceil(bound)) + 2;
  while (true) {
    if (exact_len) {
      if (res.rounds >= opt.exact_rounds) break;
    } else {
      if (state.count_within(lie_budget) <= 1) break;
      if (res.rounds >= cap)
        throw ResponderContractViolation(
            "vertex strategy exceeded its worst-case bound; responder broke "
            "its budget");
    }
    Query q = find_median(state, g, d, QueryKind::vertex);
    int reply = responder.reply(q);
    double factor = apply_reply(state, g, d, q, reply);
    ++res.rounds;
    detail::record_round(res, q, reply, factor, state, opt.record_trace);
    if (!exact_len && state.count_within(lie_budget) == 0)
      throw ResponderContractViolation(
          "no candidate remains within the lie budget");
  }
  res.found = detail::finish(state, lie_budget, exact_len);
  return res;
}

/// Edge-query search for a fixed lie budget. While some vertex holds more
/// than a 1/(Delta+1) fraction of the weight, its incident edges are
/// queried cyclically in a greedy order (the cycle advances only on
/// replies pointing at the heavy vertex); otherwise a 1-edge-median is
/// queried.
inline SearchResult run_edge_fixed(const Graph& g, const DistanceMatrix& d,
                                   int lie_budget, double gamma,
                                   Responder& responder,
                                   const RunOptions& opt = {}) {
  detail::require_unit_weights(g, "run_edge_fixed");
  const int n = g.num_vertices();
  const int max_deg = g.max_degree();
  const double bound = bounds::edge_fixed(n, lie_budget, gamma, max_deg);
  if (n == 1) return detail::trivial_result(bound);

  LieState state = gamma_is_infinite(gamma) ? LieState::infinite_gamma(n)
                                            : LieState(n, gamma);
  SearchResult res;
  res.bound = bound;
  res.params.gamma = gamma;
  res.params.lie_budget = lie_budget;

  const double alpha = 1.0 / (max_deg + 1);
  const bool exact_len = opt.exact_rounds >= 0;
  const int cap = exact_len ? opt.exact_rounds
                            : static_cast<int>(std::ceil(bound)) + 2;

  auto more_candidates = [&] { return state.count_within(lie_budget) > 1; };
  auto budget_left = [&] {
    if (exact_len) return res.rounds < opt.exact_rounds;
    if (res.rounds >= cap)
      throw ResponderContractViolation(
          "edge strategy exceeded its worst-case bound; responder broke its "
          "budget");
    return true;
  };
  auto ask = [&](const Query& e) {
    int reply = responder.reply(e);
    double factor = apply_reply(state, g, d, e, reply);
    ++res.rounds;
    detail::record_round(res, e, reply, factor, state, opt.record_trace);
    if (!exact_len && state.count_within(lie_budget) == 0)
      throw ResponderContractViolation(
          "no candidate remains within the lie budget (inconsistent replies)");
    return reply;
  };

  while ((exact_len ? res.rounds < opt.exact_rounds : more_candidates()) &&
         budget_left()) {
    auto hv = heavy_vertex(state, alpha);
    if (hv) {
      const int v = *hv;
      const auto order = detail::greedy_incident_order(state, g, d, v);
      std::size_t i = 0;
      do {
        int reply = ask(order[i]);
        ++res.heavy_rounds;
        if (reply == v) i = (i + 1) % order.size();
      } while (is_heavy(state, v, alpha) &&
               (exact_len ? res.rounds < opt.exact_rounds
                          : more_candidates()) &&
               budget_left());
    } else {
      ask(find_median(state, g, d, QueryKind::edge));
    }
  }
  res.found = detail::finish(state, lie_budget, exact_len);
  return res;
}

/// Error-less edge search: the fixed-lie edge strategy in the limiting
/// regime where a single inconsistent reply eliminates a vertex for good.
inline SearchResult run_edge_errorless(const Graph& g,
                                       const DistanceMatrix& d,
                                       Responder& responder,
                                       const RunOptions& opt = {}) {
  SearchResult res = run_edge_fixed(g, d, 0, kInfGamma, responder, opt);
  res.bound = bounds::edge_errorless(g.num_vertices(), g.max_degree());
  return res;
}

/// Linearly bounded vertex wrapper: declares Q = ceil(log2 n / (1-H(r))),
/// runs the fixed strategy with L = floor(rQ) and Gamma = (1-r)/r.
inline SearchResult run_vertex_linear(const Graph& g, const DistanceMatrix& d,
                                      double rate, Responder& responder,
                                      const RunOptions& opt = {}) {
  if (!(rate >= 0.0 && rate < 0.5))
    throw std::invalid_argument(
        "linearly bounded searching is infeasible for r >= 1/2");
  const int n = g.num_vertices();
  if (n == 1) {
    auto res = detail::trivial_result(0.0);
    res.params.rate = rate;
    return res;
  }
  const int declared =
      static_cast<int>(std::ceil(bounds::vertex_linear(n, rate)));
  const int lie_budget = static_cast<int>(std::floor(rate * declared));
  const double gamma = rate == 0.0 ? kInfGamma : (1.0 - rate) / rate;
  responder.declare_length(declared);
  RunOptions inner = opt;
  SearchResult res = run_vertex_fixed(g, d, lie_budget, gamma, responder, inner);
  res.bound = declared;
  res.params.rate = rate;
  res.params.declared_length = declared;
  return res;
}

/// Parameters of the probabilistic vertex wrapper.
struct VertexProbParams {
  double epsilon = 0.0;
  double epsilon0 = 0.0;
  double rate = 0.0;
  double gamma = 0.0;
  int lie_budget = 0;
  int declared_length = 0;
};

inline VertexProbParams vertex_prob_params(long long n, double noise,
                                           double delta) {
  if (!(noise >= 0.0 && noise < 0.5))
    throw std::invalid_argument("noise must satisfy 0 <= p < 1/2");
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("confidence must satisfy 0 < delta < 1");
  VertexProbParams p;
  p.epsilon = 1.0 - 2.0 * noise;
  const double log2n = std::log2(static_cast<double>(n));
  if (noise == 0.0) {
    p.epsilon0 = 1.0;
    p.rate = 0.0;
    p.gamma = kInfGamma;
    p.declared_length = static_cast<int>(std::ceil(log2n));
    p.lie_budget = 0;
    return p;
  }
  const double ln_n = std::log(static_cast<double>(n));
  p.epsilon0 = p.epsilon / (1.0 + std::sqrt(2.0 * std::log(1.0 / delta) / ln_n));
  p.rate = 0.5 * (1.0 - p.epsilon0);
  p.gamma = (1.0 - p.rate) / p.rate;
  const double q_entropy = log2n / (1.0 - entropy(p.rate));
  const double q_floor = ln_n / (p.epsilon0 * p.epsilon0);
  p.declared_length =
      static_cast<int>(std::max(std::ceil(q_entropy), std::ceil(q_floor)));
  p.lie_budget = static_cast<int>(std::floor(p.rate * p.declared_length));
  return p;
}

/// Probabilistic vertex wrapper: i.i.d. noise p = (1-eps)/2 is absorbed by
/// running the linearly bounded strategy at the reduced rate
/// r = (1-eps0)/2 for its full declared length.
inline SearchResult run_vertex_prob(const Graph& g, const DistanceMatrix& d,
                                    double noise, double delta,
                                    Responder& responder,
                                    const RunOptions& opt = {}) {
  const int n = g.num_vertices();
  const auto p = vertex_prob_params(n, noise, delta);
  if (n == 1) {
    auto res = detail::trivial_result(0.0);
    res.params.noise = noise;
    res.params.confidence = delta;
    return res;
  }
  responder.declare_length(p.declared_length);
  RunOptions inner = opt;
  inner.exact_rounds = p.declared_length;
  SearchResult res =
      run_vertex_fixed(g, d, p.lie_budget, p.gamma, responder, inner);
  res.bound = p.declared_length;
  res.params.noise = noise;
  res.params.confidence = delta;
  res.params.epsilon = p.epsilon0;
  res.params.rate = p.rate;
  res.params.declared_length = p.declared_length;
  return res;
}

/// Parameters of the linearly bounded edge wrapper at rate
/// r = (1-eps)/(Delta+1).
struct EdgeLinearParams {
  double epsilon = 0.0;
  double rate = 0.0;
  double gamma = 0.0;
  int declared_length = 0;
  int lie_budget = 0;
};

inline EdgeLinearParams edge_linear_params(int n, int max_deg, double eps) {
  if (!(eps > 0.0 && eps <= 1.0))
    throw std::invalid_argument("eps must be in (0,1]");
  EdgeLinearParams p;
  p.epsilon = eps;
  p.rate = (1.0 - eps) / (max_deg + 1);
  double q_min;
  if (eps == 1.0) {
    p.gamma = kInfGamma;
    q_min = std::log(static_cast<double>(n)) / std::log1p(1.0 / max_deg);
  } else {
    p.gamma = 1.0 + (max_deg + 1.0) / max_deg * eps / (1.0 - eps);
    const double denom =
        std::log1p((p.gamma - 1.0) / (p.gamma * max_deg + 1.0)) -
        p.rate * std::log(p.gamma);
    q_min = std::log(static_cast<double>(n)) / denom;
  }
  p.declared_length = static_cast<int>(std::ceil(q_min));
  p.lie_budget = static_cast<int>(std::floor(p.rate * p.declared_length));
  return p;
}

/// Linearly bounded edge wrapper; worst case 2 eps^-2 Delta ln n rounds.
inline SearchResult run_edge_linear(const Graph& g, const DistanceMatrix& d,
                                    double eps, Responder& responder,
                                    const RunOptions& opt = {}) {
  detail::require_unit_weights(g, "run_edge_linear");
  const int n = g.num_vertices();
  const int max_deg = g.max_degree();
  if (n == 1) return detail::trivial_result(0.0);
  const auto p = edge_linear_params(n, max_deg, eps);
  responder.declare_length(p.declared_length);
  SearchResult res =
      run_edge_fixed(g, d, p.lie_budget, p.gamma, responder, opt);
  res.bound = bounds::edge_linear(n, max_deg, eps);
  res.params.epsilon = eps;
  res.params.rate = p.rate;
  res.params.declared_length = p.declared_length;
  return res;
}

/// Parameters of the probabilistic edge wrapper.
struct EdgeProbParams {
  int boost_repeats = 1;  // physical repeats per logical query (odd)
  double epsilon0 = 0.0;  // margin after boosting
  double epsilon1 = 0.0;
  double rate = 0.0;
  double gamma = 0.0;
  int declared_length = 0;  // logical rounds
  int lie_budget = 0;
};

inline EdgeProbParams edge_prob_params(int n, int max_deg, double eps,
                                       double delta) {
  if (!(eps > 0.0 && eps <= 1.0))
    throw std::invalid_argument("eps must be in (0,1]");
  EdgeProbParams p;
  const double noise = 0.5 * (1.0 - eps);
  const double target_noise = 0.5 / (max_deg + 1);
  if (noise <= target_noise) {
    p.boost_repeats = 1;
    p.epsilon0 = 1.0 - noise * (max_deg + 1);
  } else {
    // Smallest odd repeat count P with exp(-P eps^2 / 2) <= 1/(2 Delta + 2).
    int reps = static_cast<int>(
        std::ceil(2.0 * std::log(2.0 * max_deg + 2.0) / (eps * eps)));
    if (reps % 2 == 0) ++reps;
    p.boost_repeats = std::max(1, reps);
    p.epsilon0 = 0.5;
  }
  p.epsilon1 =
      p.epsilon0 /
      (1.0 + std::sqrt(1.5 * (max_deg + 1.0) / max_deg *
                       std::log(1.0 / delta) /
                       std::log(static_cast<double>(n))));
  const auto lin = edge_linear_params(n, max_deg, p.epsilon1);
  p.rate = lin.rate;
  p.gamma = lin.gamma;
  p.declared_length = lin.declared_length;
  p.lie_budget = lin.lie_budget;
  return p;
}

/// Probabilistic edge wrapper: each logical query is repeated P times and
/// the majority answer is applied; the boosted channel is then searched
/// with the linearly bounded edge strategy for its full declared length.
/// `rounds` counts physical queries.
inline SearchResult run_edge_prob(const Graph& g, const DistanceMatrix& d,
                                  double eps, double delta,
                                  Responder& responder,
                                  const RunOptions& opt = {}) {
  detail::require_unit_weights(g, "run_edge_prob");
  const int n = g.num_vertices();
  if (n == 1) return detail::trivial_result(0.0);
  const int max_deg = g.max_degree();
  const auto p = edge_prob_params(n, max_deg, eps, delta);

  LieState state = gamma_is_infinite(p.gamma)
                       ? LieState::infinite_gamma(n)
                       : LieState(n, p.gamma);
  SearchResult res;
  res.bound = static_cast<double>(p.boost_repeats) * p.declared_length;
  res.params.gamma = p.gamma;
  res.params.lie_budget = p.lie_budget;
  res.params.epsilon = eps;
  res.params.confidence = delta;
  res.params.noise = 0.5 * (1.0 - eps);
  res.params.rate = p.rate;
  res.params.declared_length = p.declared_length;
  res.params.boost_repeats = p.boost_repeats;

  const double alpha = 1.0 / (max_deg + 1);
  int logical = 0;

  auto ask_boosted = [&](const Query& e) {
    int votes_a = 0, votes_b = 0;
    for (int k = 0; k < p.boost_repeats; ++k) {
      int r = responder.reply(e);
      ++res.rounds;
      res.transcript.push_back(
          {res.rounds, e, r, std::nullopt});
      if (r == e.a)
        ++votes_a;
      else
        ++votes_b;
    }
    const int reply = votes_a >= votes_b ? e.a : e.b;
    apply_reply(state, g, d, e, reply);
    ++logical;
    return reply;
  };

  while (logical < p.declared_length) {
    auto hv = heavy_vertex(state, alpha);
    if (hv) {
      const int v = *hv;
      const auto order = detail::greedy_incident_order(state, g, d, v);
      std::size_t i = 0;
      do {
        int reply = ask_boosted(order[i]);
        res.heavy_rounds += p.boost_repeats;
        if (reply == v) i = (i + 1) % order.size();
      } while (is_heavy(state, v, alpha) && logical < p.declared_length);
    } else {
      ask_boosted(find_median(state, g, d, QueryKind::edge));
    }
  }
  res.found = state.unique_within(p.lie_budget)
                  .value_or(state.argmin_lies());
  return res;
}

struct PruningResult {
  std::vector<int> kept;       // C: candidates still within the lie rate
  std::vector<int> discarded;  // D: vertices parked by the virtual counter
  int rounds = 0;
  int round_budget = 0;
  bool budget_exceeded = false;
  double discard_cap = 0.0;  // H
  double gamma = 0.0;
  double rate = 0.0;         // r
  std::vector<TranscriptEntry> transcript;
};

/// Prefix-bounded pruning: queries the virtual-potential edge 1-median,
/// charges replies to the real counters and one virtual count to the
/// answered vertex, and maintains
///   D = {u : vlies(u) >= t/H},  C = {u not in D : lies(u) <= r t}
/// until |C| <= 1. H = 2 Delta / eps, Gamma = 1 + Delta eps / (2(Delta-1)),
/// r = (1-eps)/Delta.
inline PruningResult run_pruning(const Graph& g, const DistanceMatrix& d,
                                 double eps, Responder& responder,
                                 const RunOptions& opt = {}) {
  detail::require_unit_weights(g, "run_pruning");
  if (!(eps > 0.0 && eps <= 1.0))
    throw std::invalid_argument("eps must be in (0,1]");
  const int n = g.num_vertices();
  const int max_deg = g.max_degree();
  PruningResult res;
  if (n == 1) {
    res.kept.push_back(0);
    return res;
  }
  if (max_deg < 2) {
    // Single-edge graph: no pruning possible or needed.
    res.kept = {0, 1};
    return res;
  }
  const double H = 2.0 * max_deg / eps;
  const double gamma = 1.0 + max_deg * eps / (2.0 * (max_deg - 1));
  const double rate = (1.0 - eps) / max_deg;
  res.discard_cap = H;
  res.gamma = gamma;
  res.rate = rate;
  res.round_budget = static_cast<int>(
      std::ceil(opt.pruning_slack * bounds::pruning_q0(n, max_deg, eps)));

  LieState state(n, gamma);
  std::vector<int> kept, discarded;
  int t = 0;
  do {
    Query e = find_median(state, g, d, QueryKind::edge, /*use_virtual=*/true);
    int w = responder.reply(e);
    apply_reply(state, g, d, e, w);
    state.bump_virtual(w);
    ++t;
    res.transcript.push_back({t, e, w, std::nullopt});
    kept.clear();
    discarded.clear();
    for (int u = 0; u < n; ++u) {
      if (state.virtual_lies(u) + 1e-12 >= t / H)
        discarded.push_back(u);
      else if (state.lies(u) <= rate * t + 1e-12)
        kept.push_back(u);
    }
    // One virtual bump per round: |D_t| <= H at every round.
    assert(static_cast<double>(discarded.size()) <= H + 1e-9);
    if (t >= res.round_budget && kept.size() > 1) {
      res.budget_exceeded = true;
      break;
    }
  } while (kept.size() > 1);
  res.kept = std::move(kept);
  res.discarded = std::move(discarded);
  res.rounds = t;
  return res;
}

namespace detail {

/// Error-less edge search restricted to a candidate subset, with every
/// logical query repeated `repeats` times under majority vote. Returns
/// the isolated candidate, or nullopt when the replies were inconsistent
/// (every candidate eliminated or the round cap hit).
inline std::optional<int> errorless_majority_on_subset(
    const Graph& g, const DistanceMatrix& d, const std::vector<int>& subset,
    int repeats, Responder& responder, std::vector<TranscriptEntry>& log,
    int& physical_rounds) {
  const int n = g.num_vertices();
  const int max_deg = g.max_degree();
  auto state = LieState::infinite_gamma(n);
  for (int v = 0; v < n; ++v) state.set_mu0(v, 0.0);
  for (int v : subset) state.set_mu0(v, 1.0);

  auto alive = [&] {
    int count = 0;
    int last = -1;
    for (int v : subset)
      if (state.lies(v) == 0) {
        ++count;
        last = v;
      }
    return std::pair<int, int>(count, last);
  };

  const double alpha = 1.0 / (max_deg + 1);
  const int logical_cap =
      static_cast<int>(std::ceil(bounds::edge_errorless(n, max_deg))) +
      static_cast<int>(subset.size()) + 8;
  int logical = 0;

  auto ask = [&](const Query& e) {
    int votes_a = 0, votes_b = 0;
    for (int k = 0; k < repeats; ++k) {
      int r = responder.reply(e);
      ++physical_rounds;
      log.push_back({physical_rounds, e, r, std::nullopt});
      if (r == e.a)
        ++votes_a;
      else
        ++votes_b;
    }
    const int reply = votes_a >= votes_b ? e.a : e.b;
    apply_reply(state, g, d, e, reply);
    ++logical;
    return reply;
  };

  while (true) {
    auto [count, last] = alive();
    if (count == 0) return std::nullopt;
    if (count == 1) return last;
    if (logical >= logical_cap) return std::nullopt;
    auto hv = heavy_vertex(state, alpha);
    if (hv) {
      const int v = *hv;
      const auto order = greedy_incident_order(state, g, d, v);
      std::size_t i = 0;
      do {
        int reply = ask(order[i]);
        if (reply == v) i = (i + 1) % order.size();
        auto [c2, l2] = alive();
        if (c2 <= 1) break;
        if (logical >= logical_cap) return std::nullopt;
      } while (is_heavy(state, v, alpha));
    } else {
      ask(find_median(state, g, d, QueryKind::edge));
    }
  }
}

}  // namespace detail

/// Prefix-bounded search: prune to C + D, then isolate the target on the
/// candidate set with the error-less strategy under k-fold majority
/// voting, doubling k (up to 20 times) whenever the replies turn out
/// inconsistent.
inline SearchResult run_prefix_bounded(const Graph& g,
                                       const DistanceMatrix& d, double eps,
                                       Responder& responder,
                                       const RunOptions& opt = {}) {
  detail::require_unit_weights(g, "run_prefix_bounded");
  const int n = g.num_vertices();
  if (n == 1) return detail::trivial_result(0.0);

  SearchResult res;
  res.bound = std::numeric_limits<double>::infinity();
  res.params.epsilon = eps;
  res.params.rate = (1.0 - eps) / std::max(2, g.max_degree());

  PruningResult pruned = run_pruning(g, d, eps, responder, opt);
  res.rounds = pruned.rounds;
  res.transcript = pruned.transcript;
  if (pruned.budget_exceeded)
    throw RetryExhausted("pruning exceeded its round budget");

  std::vector<int> subset = pruned.kept;
  subset.insert(subset.end(), pruned.discarded.begin(),
                pruned.discarded.end());
  std::sort(subset.begin(), subset.end());
  subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
  if (subset.empty())
    throw ResponderContractViolation("pruning eliminated every candidate");
  if (subset.size() == 1) {
    res.found = subset[0];
    return res;
  }

  int repeats = static_cast<int>(std::ceil(1.0 / eps));
  if (repeats % 2 == 0) ++repeats;
  const double rate = res.params.rate;
  for (int attempt = 0; attempt <= 20; ++attempt) {
    auto found = detail::errorless_majority_on_subset(
        g, d, subset, repeats, responder, res.transcript, res.rounds);
    if (found) {
      // Sanity: the claimed target must be consistent with the prefix
      // budget over the whole game; otherwise retry with more votes.
      const int lies = lies_against(g, d, *found, res.transcript);
      if (lies <= rate * res.transcript.size() + 1e-9) {
        res.found = *found;
        res.params.boost_repeats = repeats;
        return res;
      }
    }
    repeats *= 2;
  }
  throw RetryExhausted(
      "prefix-bounded finisher exhausted its retry budget");
}

}  // namespace liars
