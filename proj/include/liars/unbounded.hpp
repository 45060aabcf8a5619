#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "liars/bounds.hpp"
#include "liars/entropy.hpp"
#include "liars/interval.hpp"
#include "liars/responders.hpp"
#include "liars/rng.hpp"
#include "liars/strategies.hpp"

namespace liars {

/// One query/reply of a search over N. Ternary queries point at an
/// integer m (replies m-1 / m / m+1 for smaller / equal / greater);
/// binary queries point at the comparison threshold between m and m+1
/// (replies m for "<= m", m+1 for ">= m+1").
struct LineEntry {
  int round = 0;
  bool binary = false;
  long long site = 0;
  long long reply = 0;
  std::optional<bool> was_lie;
};

struct UnboundedResult {
  long long found = -1;
  int rounds = 0;
  double bound = 0.0;  // +infinity for shape-only guarantees
  std::vector<LineEntry> transcript;
  int heavy_rounds = 0;  // binary strategies: rounds spent in the cyclic phase
  int phases = 0;        // probabilistic doubling phases
};

inline bool line_reply_is_lie(long long target, const LineEntry& e) {
  if (e.binary)
    return (target <= e.site) ? (e.reply != e.site) : (e.reply != e.site + 1);
  if (target == e.site) return e.reply != e.site;
  if (target < e.site) return e.reply != e.site - 1;
  return e.reply != e.site + 1;
}

inline int line_lies_against(long long target,
                             const std::vector<LineEntry>& ts) {
  int lies = 0;
  for (const auto& e : ts)
    if (line_reply_is_lie(target, e)) ++lies;
  return lies;
}

/// Reply policy for searching N.
class LineResponder {
 public:
  virtual ~LineResponder() = default;
  virtual long long ternary(long long m) = 0;
  virtual long long binary(long long m) = 0;
  virtual void declare_length(int) {}
  virtual std::optional<long long> target() const { return std::nullopt; }
};

class LineTruthful final : public LineResponder {
 public:
  explicit LineTruthful(long long target) : target_(target) {}
  long long ternary(long long m) override {
    if (target_ == m) return m;
    return target_ < m ? m - 1 : m + 1;
  }
  long long binary(long long m) override {
    return target_ <= m ? m : m + 1;
  }
  std::optional<long long> target() const override { return target_; }

 private:
  long long target_;
};

class LineIid final : public LineResponder {
 public:
  LineIid(long long target, double noise, std::uint64_t seed)
      : target_(target), noise_(noise), seed_(seed) {
    if (!(noise >= 0.0 && noise < 0.5))
      throw std::invalid_argument("iid noise must satisfy 0 <= p < 1/2");
  }

  long long ternary(long long m) override {
    Rng rng(derive_seed(seed_, ++round_));
    const long long truth = LineTruthful(target_).ternary(m);
    if (!rng.bernoulli(noise_)) return truth;
    std::vector<long long> lies;
    if (m >= 2 && m - 1 != truth) lies.push_back(m - 1);
    if (m != truth) lies.push_back(m);
    if (m + 1 != truth) lies.push_back(m + 1);
    if (lies.empty()) return truth;
    return lies[rng.next_below(lies.size())];
  }

  long long binary(long long m) override {
    Rng rng(derive_seed(seed_, ++round_));
    const long long truth = LineTruthful(target_).binary(m);
    if (!rng.bernoulli(noise_)) return truth;
    return truth == m ? m + 1 : m;
  }

  std::optional<long long> target() const override { return target_; }

 private:
  long long target_;
  double noise_;
  std::uint64_t seed_;
  int round_ = 0;
};

/// Target-free greedy adversary with a fixed budget: any reply keeping
/// some integer within `max_lies` total lies is legal; among those it
/// maximizes the surviving weight. Mirrors the questioner's interval
/// state.
class LineGreedyAdversary final : public LineResponder {
 public:
  LineGreedyAdversary(int max_lies, double gamma)
      : max_lies_(max_lies),
        state_(IntervalWeightState::inverse_square(gamma)) {}

  long long ternary(long long m) override {
    std::vector<long long> candidates;
    if (m >= 2) candidates.push_back(m - 1);
    candidates.push_back(m + 1);
    candidates.push_back(m);  // yes-answer last
    return choose(m, candidates, /*binary=*/false);
  }

  long long binary(long long m) override {
    return choose(m, {m, m + 1}, /*binary=*/true);
  }

  const IntervalWeightState& mirror() const { return state_; }

 private:
  // Ranges whose counters a reply increments.
  static std::pair<std::pair<long long, long long>,
                   std::pair<long long, long long>>
  increments(long long m, long long reply, bool binary) {
    const long long inf = IntervalWeightState::kInf;
    if (binary) {
      if (reply == m) return {{m + 1, inf}, {0, 0}};
      return {{1, m + 1}, {0, 0}};
    }
    if (reply == m) return {{1, m}, {m + 1, inf}};
    if (reply == m - 1) return {{m, inf}, {0, 0}};
    return {{1, m + 1}, {0, 0}};
  }

  long long choose(long long m, std::vector<long long> candidates,
                   bool binary) {
    long long best = -1;
    double best_weight = -1.0;
    for (long long r : candidates) {
      auto [a, b] = increments(m, r, binary);
      if (!keeps_survivor(a, b)) continue;
      double factor = combined_factor(a, b);
      if (best < 0 || factor > best_weight * (1 + 1e-9)) {
        best = r;
        best_weight = factor;
      }
    }
    if (best < 0)
      throw std::logic_error("line adversary has no legal reply");
    auto [a, b] = increments(m, best, binary);
    state_.add_lie_range(a.first, a.second);
    state_.add_lie_range(b.first, b.second);
    return best;
  }

  bool keeps_survivor(std::pair<long long, long long> a,
                      std::pair<long long, long long> b) const {
    const std::uint32_t cap = static_cast<std::uint32_t>(max_lies_);
    for (const auto& s : state_.segments()) {
      std::uint32_t k = s.lies;
      const bool in_a = s.lo >= a.first && s.lo < a.second;
      const bool in_b = s.lo >= b.first && s.lo < b.second;
      if (in_a || in_b) ++k;
      if (k <= cap) return true;
    }
    return false;
  }

  double combined_factor(std::pair<long long, long long> a,
                         std::pair<long long, long long> b) const {
    const auto v = state_.snapshot(false);
    auto range_weight = [&](std::pair<long long, long long> r) {
      if (r.first >= r.second) return 0.0;
      if (r.second == IntervalWeightState::kInf)
        return v.total - v.cum(r.first - 1);
      return v.cum(r.second - 1) - v.cum(r.first - 1);
    };
    const double out = range_weight(a) + range_weight(b);
    const double in = v.total - out;
    if (state_.gamma_infinite()) return v.total > 0 ? in / v.total : 0.0;
    return (in + out / state_.gamma()) / v.total;
  }

  int max_lies_;
  IntervalWeightState state_;
};

/// Target-committed opportunistic liar: lies (seeded uniform choice among
/// the wrong replies) whenever its budget allows, answers truthfully
/// otherwise. Budget semantics: fixed L, or at most floor(rate * t) lies
/// in every prefix of t replies (used for both the linearly bounded and
/// prefix-bounded line models).
class LineBudgetLiar final : public LineResponder {
 public:
  static LineBudgetLiar fixed(long long target, int max_lies,
                              std::uint64_t seed) {
    LineBudgetLiar r(target, seed);
    r.max_lies_ = max_lies;
    return r;
  }
  static LineBudgetLiar prefix(long long target, double rate,
                               std::uint64_t seed) {
    LineBudgetLiar r(target, seed);
    r.rate_ = rate;
    return r;
  }

  long long ternary(long long m) override {
    ++round_;
    Rng rng(derive_seed(seed_, round_));
    const long long truth = LineTruthful(target_).ternary(m);
    if (!may_lie()) return truth;
    std::vector<long long> lies;
    if (m >= 2 && m - 1 != truth) lies.push_back(m - 1);
    if (m != truth) lies.push_back(m);
    if (m + 1 != truth) lies.push_back(m + 1);
    if (lies.empty()) return truth;
    ++lies_;
    return lies[rng.next_below(lies.size())];
  }

  long long binary(long long m) override {
    ++round_;
    const long long truth = LineTruthful(target_).binary(m);
    if (!may_lie()) return truth;
    ++lies_;
    return truth == m ? m + 1 : m;
  }

  std::optional<long long> target() const override { return target_; }

 private:
  LineBudgetLiar(long long target, std::uint64_t seed)
      : target_(target), seed_(seed) {}

  /// Lies so far (including one more) must fit the budget for the prefix
  /// ending at the current round.
  bool may_lie() const {
    const int allowed =
        rate_ >= 0.0 ? static_cast<int>(std::floor(rate_ * round_ + 1e-12))
                     : max_lies_;
    return lies_ + 1 <= allowed;
  }

  long long target_;
  std::uint64_t seed_;
  int max_lies_ = 0;
  double rate_ = -1.0;
  int round_ = 0;   // incremented in may_lie, once per reply
  int lies_ = 0;
};

namespace detail {

/// Apply a ternary reply at m; returns the round weight factor.
inline double apply_ternary(IntervalWeightState& s, long long m,
                            long long reply) {
  const long long inf = IntervalWeightState::kInf;
  if (reply == m) {
    double f1 = s.range_factor(1, m);
    s.add_lie_range(1, m);
    double f2 = s.range_factor(m + 1, inf);
    s.add_lie_range(m + 1, inf);
    return f1 * f2;
  }
  if (reply == m - 1 && m >= 2) {
    double f = s.range_factor(m, inf);
    s.add_lie_range(m, inf);
    return f;
  }
  if (reply == m + 1) {
    double f = s.range_factor(1, m + 1);
    s.add_lie_range(1, m + 1);
    return f;
  }
  throw IllegalReply("ternary reply must be m-1, m, or m+1");
}

inline double apply_binary(IntervalWeightState& s, long long m,
                           long long reply) {
  const long long inf = IntervalWeightState::kInf;
  if (reply == m) {
    double f = s.range_factor(m + 1, inf);
    s.add_lie_range(m + 1, inf);
    return f;
  }
  if (reply == m + 1) {
    double f = s.range_factor(1, m + 1);
    s.add_lie_range(1, m + 1);
    return f;
  }
  throw IllegalReply("binary reply must be an endpoint of {m, m+1}");
}

}  // namespace detail

enum class LineQueryMode { ternary, binary };

/// Query site minimizing the potential over the integer domain: the
/// weighted median integer (ternary) or the comparison threshold m of the
/// edge {m, m+1} (binary). Ties resolve to the smallest site.
inline long long line_median(const IntervalWeightState& s, LineQueryMode mode,
                             bool use_virtual = false) {
  return mode == LineQueryMode::ternary ? s.ternary_median(use_virtual)
                                        : s.binary_median(use_virtual);
}

/// Search N with a fixed lie budget: the median strategy with initial
/// weights n^-2 (ternary), or its edge-query analogue with the
/// heavy-integer cyclic phase (binary). The returned bound is evaluated
/// at the found target.
inline UnboundedResult run_unbounded_fixed(LineQueryMode mode, int max_lies,
                                           double gamma,
                                           LineResponder& responder,
                                           int round_cap = 1000000) {
  IntervalWeightState state = IntervalWeightState::inverse_square(gamma);
  UnboundedResult res;
  const std::uint32_t budget = static_cast<std::uint32_t>(max_lies);

  auto ask_ternary = [&](long long m) {
    long long r = responder.ternary(m);
    detail::apply_ternary(state, m, r);
    ++res.rounds;
    res.transcript.push_back({res.rounds, false, m, r, std::nullopt});
    return r;
  };
  auto ask_binary = [&](long long m) {
    long long r = responder.binary(m);
    detail::apply_binary(state, m, r);
    ++res.rounds;
    res.transcript.push_back({res.rounds, true, m, r, std::nullopt});
    return r;
  };

  while (state.count_within(budget) > 1) {
    if (res.rounds >= round_cap)
      throw ResponderContractViolation(
          "unbounded search did not converge; responder broke its budget");
    if (mode == LineQueryMode::ternary) {
      ask_ternary(state.ternary_median());
      continue;
    }
    // Binary: cycle the comparisons around a 1/3-heavy integer if there is
    // one (the line graph has max degree 2), else query the edge median.
    auto hv = state.heavy_integer(1.0 / 3.0);
    if (hv) {
      const long long v = *hv;
      std::vector<long long> order;  // thresholds of edges incident to v
      {
        const auto snap = state.snapshot(false);
        const double left = v >= 2 ? snap.cum(v - 1) : 0.0;
        const double right = snap.total - snap.cum(v);
        if (v >= 2 && left >= right) {
          order = {v - 1, v};
        } else if (v >= 2) {
          order = {v, v - 1};
        } else {
          order = {v};
        }
      }
      std::size_t i = 0;
      do {
        long long m = order[i];
        long long r = ask_binary(m);
        ++res.heavy_rounds;
        if (r == v) i = (i + 1) % order.size();
        if (res.rounds >= round_cap)
          throw ResponderContractViolation(
              "unbounded search did not converge; responder broke its "
              "budget");
      } while (state.integer_is_heavy(v, 1.0 / 3.0) &&
               state.count_within(budget) > 1);
    } else {
      ask_binary(state.binary_median());
    }
  }
  auto found = state.unique_within(budget);
  if (!found)
    throw ResponderContractViolation(
        "no integer remains within the lie budget");
  res.found = *found;
  res.bound = bounds::unbounded_fixed(res.found, max_lies, gamma,
                                      mode == LineQueryMode::binary);
  return res;
}

/// Linearly bounded search over N: the fixed-lie loop with the dynamic
/// stopping rule "a single n has lies(n) <= r t". Gamma = (1-r)/r for
/// ternary queries and (1-r)/(2r) for binary ones (infinite at r = 0).
inline UnboundedResult run_unbounded_linear(LineQueryMode mode, double rate,
                                            LineResponder& responder,
                                            int round_cap = 1000000) {
  const double feasible = mode == LineQueryMode::ternary ? 0.5 : 1.0 / 3.0;
  if (!(rate >= 0.0 && rate < feasible))
    throw std::invalid_argument("infeasible lie rate for this query mode");
  double gamma;
  if (rate == 0.0)
    gamma = kInfGamma;
  else
    gamma = mode == LineQueryMode::ternary ? (1.0 - rate) / rate
                                           : (1.0 - rate) / (2.0 * rate);

  IntervalWeightState state = IntervalWeightState::inverse_square(gamma);
  UnboundedResult res;
  res.bound = std::numeric_limits<double>::infinity();

  auto threshold = [&] {
    return static_cast<std::uint32_t>(std::floor(rate * res.rounds + 1e-12));
  };

  auto ask = [&](long long m) {
    long long r = mode == LineQueryMode::ternary ? responder.ternary(m)
                                                 : responder.binary(m);
    if (mode == LineQueryMode::ternary)
      detail::apply_ternary(state, m, r);
    else
      detail::apply_binary(state, m, r);
    ++res.rounds;
    res.transcript.push_back(
        {res.rounds, mode == LineQueryMode::binary, m, r, std::nullopt});
    return r;
  };

  while (state.count_within(threshold()) > 1) {
    if (res.rounds >= round_cap)
      throw ResponderContractViolation(
          "unbounded search did not converge; responder broke its budget");
    if (mode == LineQueryMode::ternary) {
      ask(state.ternary_median());
      continue;
    }
    auto hv = state.heavy_integer(1.0 / 3.0);
    if (hv) {
      const long long v = *hv;
      std::vector<long long> order;
      {
        const auto snap = state.snapshot(false);
        const double left = v >= 2 ? snap.cum(v - 1) : 0.0;
        const double right = snap.total - snap.cum(v);
        if (v >= 2 && left >= right)
          order = {v - 1, v};
        else if (v >= 2)
          order = {v, v - 1};
        else
          order = {v};
      }
      std::size_t i = 0;
      do {
        long long r = ask(order[i]);
        ++res.heavy_rounds;
        if (r == v) i = (i + 1) % order.size();
        if (res.rounds >= round_cap)
          throw ResponderContractViolation(
              "unbounded search did not converge; responder broke its "
              "budget");
      } while (state.integer_is_heavy(v, 1.0 / 3.0) &&
               state.count_within(threshold()) > 1);
    } else {
      ask(state.binary_median());
    }
  }
  auto found = state.unique_within(threshold());
  if (!found)
    throw ResponderContractViolation(
        "no integer remains within the lie rate");
  res.found = *found;
  return res;
}

/// Noisy median search on the window [1, n] with ternary queries, run for
/// its full declared length. Replies beyond the window edge (">" at n)
/// are treated as the window edge confirming itself: every other window
/// candidate is contradicted either way.
inline long long window_vertex_prob(long long n, double noise, double delta,
                                    LineResponder& responder,
                                    UnboundedResult& accum) {
  if (n <= 1) return 1;
  const auto p = vertex_prob_params(n, noise, delta);
  IntervalWeightState state = IntervalWeightState::uniform(n, p.gamma);
  responder.declare_length(p.declared_length);
  for (int q = 0; q < p.declared_length; ++q) {
    long long m = state.ternary_median();
    long long raw = responder.ternary(m);
    ++accum.rounds;
    accum.transcript.push_back({accum.rounds, false, m, raw, std::nullopt});
    long long eff = raw;
    if (raw == m + 1 && m == n) eff = m;  // beyond the window: n survives
    detail::apply_ternary(state, m, eff);
  }
  auto found = state.unique_within(p.lie_budget);
  return found ? *found : state.argmin_lies();
}

/// Search an unbounded integer range under i.i.d. noise by a doubling
/// sequence of bounded noisy searches: delta' halves the failure budget
/// of each phase and the window grows as n_i = ceil(1 / delta_i) with
/// delta_i = (delta/2)^(2^i). A phase returning its window edge means
/// "the target may lie beyond"; the window grows and the confidence
/// tightens.
inline UnboundedResult run_unbounded_prob(double noise, double delta,
                                          LineResponder& responder) {
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("confidence must satisfy 0 < delta < 1");
  UnboundedResult res;
  res.bound = std::numeric_limits<double>::infinity();
  double delta_i = delta / 2.0;
  const long long window_cap = 1ll << 62;
  for (int phase = 0; phase < 64; ++phase) {
    ++res.phases;
    long long n;
    if (delta_i <= 0.0 || 1.0 / delta_i >= static_cast<double>(window_cap))
      n = window_cap;
    else
      n = static_cast<long long>(std::ceil(1.0 / delta_i));
    long long t = window_vertex_prob(n, noise, delta_i, responder, res);
    if (t != n) {
      res.found = t;
      return res;
    }
    delta_i *= delta_i;
  }
  throw ResponderContractViolation(
      "unbounded probabilistic search failed to converge in 64 phases");
}

/// Prefix-bounded binary search over N at rate r = (1-eps)/2: pruning
/// with H = 4/eps and Gamma = 1 + eps down to one live candidate plus at
/// most H parked ones, then majority-vote bisection over that candidate
/// set, doubling the votes whenever the claimed target fails the prefix
/// consistency check.
inline UnboundedResult run_unbounded_prefix(double eps,
                                            LineResponder& responder,
                                            int round_cap = 1000000) {
  if (!(eps > 0.0 && eps <= 1.0))
    throw std::invalid_argument("eps must be in (0,1]");
  const double H = 4.0 / eps;
  const double gamma = 1.0 + eps;
  const double rate = 0.5 * (1.0 - eps);

  IntervalWeightState state = IntervalWeightState::inverse_square(gamma);
  UnboundedResult res;
  res.bound = std::numeric_limits<double>::infinity();

  std::vector<long long> kept_front;  // representative of C when |C| <= 1
  std::vector<long long> parked;
  int t = 0;
  while (true) {
    if (t >= round_cap)
      throw RetryExhausted("unbounded pruning exceeded its round cap");
    long long m = state.binary_median(/*use_virtual=*/true);
    long long w = responder.binary(m);
    detail::apply_binary(state, m, w);
    state.bump_virtual_at(w);
    ++t;
    ++res.rounds;
    res.transcript.push_back({res.rounds, true, m, w, std::nullopt});

    parked.clear();
    kept_front.clear();
    long long kept_count = 0;
    for (const auto& s : state.segments()) {
      const bool in_d = s.vlies + 1e-12 >= t / H;
      if (in_d) {
        for (long long x = s.lo; x < s.hi && x - s.lo < 2 * H + 4; ++x)
          parked.push_back(x);
        continue;
      }
      if (s.lies <= rate * t + 1e-12) {
        if (s.hi == IntervalWeightState::kInf) {
          kept_count = IntervalWeightState::kInf;
          break;
        }
        kept_count += s.hi - s.lo;
        if (kept_front.size() < 2)
          for (long long x = s.lo; x < s.hi && kept_front.size() < 2; ++x)
            kept_front.push_back(x);
      }
    }
    if (kept_count <= 1) break;
  }

  std::vector<long long> cands = parked;
  cands.insert(cands.end(), kept_front.begin(), kept_front.end());
  std::sort(cands.begin(), cands.end());
  cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
  if (cands.empty())
    throw ResponderContractViolation("pruning eliminated every candidate");
  if (cands.size() == 1) {
    res.found = cands[0];
    return res;
  }

  int votes = static_cast<int>(std::ceil(1.0 / eps));
  if (votes % 2 == 0) ++votes;
  for (int attempt = 0; attempt <= 20; ++attempt) {
    std::vector<long long> live = cands;
    while (live.size() > 1) {
      const long long threshold = live[(live.size() - 1) / 2];
      int le = 0, gt = 0;
      for (int k = 0; k < votes; ++k) {
        long long r = responder.binary(threshold);
        ++res.rounds;
        res.transcript.push_back(
            {res.rounds, true, threshold, r, std::nullopt});
        if (r == threshold)
          ++le;
        else
          ++gt;
      }
      std::vector<long long> next;
      for (long long c : live)
        if (le >= gt ? c <= threshold : c > threshold) next.push_back(c);
      live.swap(next);
    }
    if (!live.empty()) {
      const long long claim = live[0];
      if (line_lies_against(claim, res.transcript) <=
          rate * res.transcript.size() + 1e-9) {
        res.found = claim;
        return res;
      }
    }
    votes *= 2;
  }
  throw RetryExhausted("unbounded prefix finisher exhausted its retries");
}

}  // namespace liars
