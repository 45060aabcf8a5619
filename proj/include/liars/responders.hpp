#pragma once

#include <cassert>
#include <cmath>
#include <memory>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <string>
#include <vector>

#include "liars/distance.hpp"
#include "liars/graph.hpp"
#include "liars/rng.hpp"
#include "liars/weights.hpp"

namespace liars {

enum class BudgetKind { fixed, linear, prefix, iid };

/// Lie-budget ledger. The invariant depends on the kind:
///   fixed:  lies_so_far <= max_lies at all times
///   linear: lies_so_far <= floor(rate * declared_length)
///   prefix: lies_so_far <= floor(rate * round) after every round
///   iid:    no hard budget (each reply wrong with probability `noise`)
struct Budget {
  BudgetKind kind = BudgetKind::fixed;
  int max_lies = 0;       // fixed; linear after declare_length
  double rate = 0.0;      // linear / prefix
  double noise = 0.0;     // iid
  int lies_so_far = 0;
  int round = 0;

  bool satisfied() const {
    switch (kind) {
      case BudgetKind::fixed:
      case BudgetKind::linear:
        return lies_so_far <= max_lies;
      case BudgetKind::prefix:
        return lies_so_far <= static_cast<int>(std::floor(rate * round));
      case BudgetKind::iid:
        return true;
    }
    return true;
  }
};

struct ReplyRecord {
  int round = 0;
  Query query;
  int reply = -1;
  std::optional<bool> was_lie;  // unknown for adaptive adversaries
};

struct ResponderContractViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// All truthful replies for a committed target: the yes-answer when the
/// target is queried, otherwise every neighbor on a shortest path; for an
/// edge query, every endpoint of minimum distance to the target.
inline std::vector<int> truthful_replies(const Graph& g,
                                         const DistanceMatrix& d, int target,
                                         const Query& query) {
  std::vector<int> out;
  if (query.kind == QueryKind::vertex) {
    const int q = query.a;
    if (q == target) {
      out.push_back(q);
      return out;
    }
    for (int u : g.neighbors(q))
      if (d.eq(d(u, target) + g.edge_weight(q, u), d(q, target)))
        out.push_back(u);
    return out;
  }
  const double du = d(query.a, target);
  const double dv = d(query.b, target);
  if (du < dv || d.eq(du, dv)) out.push_back(query.a);
  if (dv < du || d.eq(du, dv)) out.push_back(query.b);
  return out;
}

/// Seeded truthful reply: uniform over the tie set.
inline int truthful_reply(const Graph& g, const DistanceMatrix& d, int target,
                          const Query& query, Rng& rng) {
  auto set = truthful_replies(g, d, target, query);
  assert(!set.empty());
  return set[rng.next_below(set.size())];
}

/// Seeded i.i.d. noisy reply: truthful with probability 1-p, otherwise
/// uniform among the non-truthful legal replies (truthful if none exist).
inline int iid_reply(const Graph& g, const DistanceMatrix& d, int target,
                     const Query& query, double p, Rng& rng) {
  auto truth = truthful_replies(g, d, target, query);
  const bool lie = rng.bernoulli(p);
  std::vector<int> lies;
  if (lie) {
    for (int r : legal_replies(g, query))
      if (std::find(truth.begin(), truth.end(), r) == truth.end())
        lies.push_back(r);
  }
  if (!lie || lies.empty()) return truth[rng.next_below(truth.size())];
  return lies[rng.next_below(lies.size())];
}

/// Greedy heavy-side adversary core. Among the legal replies (those
/// keeping at least one vertex within the lie budget) the adversary
/// prefers, in order:
///   1. replies that keep two or more claimable candidates over replies
///      that end the game,
///   2. higher post-update weight summed over the claimable candidates
///      only,
///   3. the earliest reply in the deterministic order: no-answers by
///      ascending neighbor id, then the yes-answer; edge endpoints
///      ascending.
/// `alive` restricts the claimable set further (prefix-bounded games);
/// empty means all.
inline int adversary_reply(const Graph& g, const DistanceMatrix& d,
                           const LieState& state, const Budget& budget,
                           const Query& query,
                           const std::vector<std::uint8_t>& alive = {}) {
  std::vector<int> candidates;
  if (query.kind == QueryKind::vertex) {
    candidates = g.neighbors(query.a);
    candidates.push_back(query.a);
  } else {
    candidates = {query.a, query.b};
  }

  const int n = state.size();
  std::vector<double> mu;
  state.materialize(mu);

  int budget_now = 0;
  switch (budget.kind) {
    case BudgetKind::fixed:
    case BudgetKind::linear:
      budget_now = budget.max_lies;
      break;
    case BudgetKind::prefix:
      budget_now = static_cast<int>(
          std::floor(budget.rate * (budget.round + 1) + 1e-12));
      break;
    case BudgetKind::iid:
      throw std::invalid_argument("iid is not an adversarial budget");
  }

  int best = -1;
  double best_weight = -1.0;
  int best_live = 0;
  for (int r : candidates) {
    auto mask = compatible_mask(g, d, query, r);
    int survivors = 0;
    double post = 0.0;
    for (int v = 0; v < n; ++v) {
      const bool ok = alive.empty() || alive[v];
      if (mask[v]) {
        if (ok && static_cast<int>(state.lies(v)) <= budget_now) {
          post += mu[v];
          ++survivors;
        }
      } else {
        if (ok && static_cast<int>(state.lies(v)) + 1 <= budget_now) {
          if (!state.gamma_infinite()) post += mu[v] / state.gamma();
          ++survivors;
        }
      }
    }
    if (survivors == 0) continue;
    const int live = survivors >= 2 ? 1 : 0;
    if (best < 0 || live > best_live ||
        (live == best_live && post > best_weight * (1 + 1e-9))) {
      best = r;
      best_weight = post;
      best_live = live;
    }
  }
  if (best < 0)
    throw std::logic_error(
        "adversary has no legal reply; no candidate target survives");
  return best;
}

/// Reply policy handle used by every strategy. Implementations are
/// per-run and mutable; never shared between runs.
class Responder {
 public:
  virtual ~Responder() = default;

  int reply(const Query& q) {
    int r = reply_impl(q);
    ReplyRecord rec;
    rec.round = static_cast<int>(records_.size()) + 1;
    rec.query = q;
    rec.reply = r;
    rec.was_lie = classify(q, r);
    records_.push_back(rec);
    return r;
  }

  /// Length declaration for the linearly bounded model (no-op otherwise).
  virtual void declare_length(int /*rounds*/) {}

  /// Ground-truth target for honest responders; nullopt for adversaries.
  virtual std::optional<int> target() const { return std::nullopt; }

  virtual const Budget& budget() const = 0;

  const std::vector<ReplyRecord>& records() const { return records_; }

 protected:
  virtual int reply_impl(const Query& q) = 0;
  virtual std::optional<bool> classify(const Query&, int) { return std::nullopt; }

 private:
  std::vector<ReplyRecord> records_;
};

class TruthfulResponder final : public Responder {
 public:
  TruthfulResponder(const Graph& g, const DistanceMatrix& d, int target,
                    std::uint64_t seed)
      : g_(g), d_(d), target_(target), seed_(seed) {
    budget_.kind = BudgetKind::fixed;
    budget_.max_lies = 0;
  }

  std::optional<int> target() const override { return target_; }
  const Budget& budget() const override { return budget_; }

 protected:
  int reply_impl(const Query& q) override {
    Rng rng(derive_seed(seed_, ++budget_.round));
    return truthful_reply(g_, d_, target_, q, rng);
  }
  std::optional<bool> classify(const Query&, int) override { return false; }

 private:
  const Graph& g_;
  const DistanceMatrix& d_;
  int target_;
  std::uint64_t seed_;
  Budget budget_;
};

class IidResponder final : public Responder {
 public:
  IidResponder(const Graph& g, const DistanceMatrix& d, int target, double p,
               std::uint64_t seed)
      : g_(g), d_(d), target_(target), seed_(seed) {
    if (!(p >= 0.0 && p < 0.5))
      throw std::invalid_argument("iid noise must satisfy 0 <= p < 1/2");
    budget_.kind = BudgetKind::iid;
    budget_.noise = p;
  }

  std::optional<int> target() const override { return target_; }
  const Budget& budget() const override { return budget_; }

 protected:
  int reply_impl(const Query& q) override {
    Rng rng(derive_seed(seed_, ++budget_.round));
    return iid_reply(g_, d_, target_, q, budget_.noise, rng);
  }
  std::optional<bool> classify(const Query& q, int r) override {
    auto truth = truthful_replies(g_, d_, target_, q);
    bool lie = std::find(truth.begin(), truth.end(), r) == truth.end();
    if (lie) ++budget_.lies_so_far;
    return lie;
  }

 private:
  const Graph& g_;
  const DistanceMatrix& d_;
  int target_;
  std::uint64_t seed_;
  Budget budget_;
};

/// Adaptive greedy adversary. Maintains a mirror lie state; commits to no
/// target. Lie attribution is only possible retroactively, against the
/// candidate that survives the game.
///
/// On instances small enough to search exhaustively (n <= 5, fixed budget
/// <= 1, finite gamma) the fixed-budget adversary plays an exact longest-
/// game line against the median questioner instead of the one-ply greedy
/// rule, so its play certifies the minimax value there; the greedy rule
/// remains the tie-breaker and the fallback everywhere else.
class AdversaryResponder final : public Responder {
 public:
  /// Fixed-budget adversary.
  AdversaryResponder(const Graph& g, const DistanceMatrix& d, int max_lies,
                     double gamma)
      : g_(g), d_(d), state_(make_state(g.num_vertices(), gamma)) {
    budget_.kind = BudgetKind::fixed;
    budget_.max_lies = max_lies;
  }

  /// Rate adversary: linearly bounded (needs declare_length) or
  /// prefix-bounded.
  AdversaryResponder(const Graph& g, const DistanceMatrix& d, BudgetKind kind,
                     double rate, double gamma)
      : g_(g), d_(d), state_(make_state(g.num_vertices(), gamma)) {
    if (kind != BudgetKind::linear && kind != BudgetKind::prefix)
      throw std::invalid_argument("rate adversary must be linear or prefix");
    budget_.kind = kind;
    budget_.rate = rate;
    budget_.max_lies = -1;
    if (kind == BudgetKind::prefix)
      alive_.assign(g.num_vertices(), 1);
  }

  void declare_length(int rounds) override {
    if (budget_.kind == BudgetKind::linear)
      budget_.max_lies = static_cast<int>(std::floor(budget_.rate * rounds));
  }

  const Budget& budget() const override { return budget_; }

  /// Mirror of the questioner's lie counters (for tests/inspection).
  const LieState& mirror() const { return state_; }

 protected:
  int reply_impl(const Query& q) override {
    if (budget_.kind == BudgetKind::linear && budget_.max_lies < 0)
      throw std::logic_error(
          "linearly bounded adversary used before declare_length");
    int r = -1;
    if (lookahead_eligible() && q.kind == QueryKind::vertex &&
        find_median(state_, g_, d_, QueryKind::vertex) == q)
      r = lookahead_reply(q);
    if (r < 0) r = adversary_reply(g_, d_, state_, budget_, q, alive_);
    apply_reply(state_, g_, d_, q, r);
    ++budget_.round;
    if (budget_.kind == BudgetKind::prefix) {
      const int allowed = static_cast<int>(
          std::floor(budget_.rate * budget_.round + 1e-12));
      for (int v = 0; v < state_.size(); ++v)
        if (static_cast<int>(state_.lies(v)) > allowed) alive_[v] = 0;
    }
    return r;
  }

 private:
  static LieState make_state(int n, double gamma) {
    if (gamma_is_infinite_double(gamma)) return LieState::infinite_gamma(n);
    return LieState(n, gamma);
  }
  static bool gamma_is_infinite_double(double g) { return std::isinf(g); }

  bool lookahead_eligible() const {
    return budget_.kind == BudgetKind::fixed && budget_.max_lies <= 1 &&
           g_.num_vertices() <= 5 && !state_.gamma_infinite();
  }

  std::uint64_t pack(const LieState& s) const {
    std::uint64_t k = 0;
    for (int v = 0; v < s.size(); ++v)
      k = k * 64 + std::min<std::uint32_t>(s.lies(v), 63);
    return k;
  }

  /// Remaining game length against the median questioner under optimal
  /// (longest-game) play, from the counters in `s`.
  int longest_game(const LieState& s) {
    const std::uint32_t cap = static_cast<std::uint32_t>(budget_.max_lies);
    if (s.count_within(cap) <= 1) return 0;
    const std::uint64_t key = pack(s);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    const Query q = find_median(s, g_, d_, QueryKind::vertex);
    int best = 0;
    for (int r : legal_replies(g_, q)) {
      LieState next = s;
      apply_reply(next, g_, d_, q, r);
      if (next.count_within(cap) == 0) continue;
      best = std::max(best, 1 + longest_game(next));
    }
    memo_.emplace(key, best);
    return best;
  }

  /// The reply opening a longest line; greedy order among equals.
  int lookahead_reply(const Query& q) {
    const std::uint32_t cap = static_cast<std::uint32_t>(budget_.max_lies);
    std::vector<int> best_replies;
    int best = -1;
    for (int r : legal_replies(g_, q)) {
      LieState next = state_;
      apply_reply(next, g_, d_, q, r);
      if (next.count_within(cap) == 0) continue;
      const int len = 1 + longest_game(next);
      if (len > best) {
        best = len;
        best_replies.assign(1, r);
      } else if (len == best) {
        best_replies.push_back(r);
      }
    }
    if (best_replies.empty()) return -1;
    if (best_replies.size() == 1) return best_replies[0];
    // Several longest lines: keep the greedy heavy-side choice among them.
    std::vector<double> mu;
    state_.materialize(mu);
    int pick = -1;
    double pick_weight = -1.0;
    for (int r : best_replies) {
      auto mask = compatible_mask(g_, d_, q, r);
      double post = 0.0;
      for (int v = 0; v < state_.size(); ++v) {
        if (mask[v]) {
          if (state_.lies(v) <= cap) post += mu[v];
        } else if (state_.lies(v) + 1 <= cap) {
          post += mu[v] / state_.gamma();
        }
      }
      if (pick < 0 || post > pick_weight * (1 + 1e-9)) {
        pick = r;
        pick_weight = post;
      }
    }
    return pick;
  }

  const Graph& g_;
  const DistanceMatrix& d_;
  LieState state_;
  Budget budget_;
  std::vector<std::uint8_t> alive_;
  std::unordered_map<std::uint64_t, int> memo_;
};

/// Replays a recorded reply stream (transcript idempotence checks).
class ReplayResponder final : public Responder {
 public:
  explicit ReplayResponder(std::vector<int> replies)
      : replies_(std::move(replies)) {}

  const Budget& budget() const override { return budget_; }

 protected:
  int reply_impl(const Query&) override {
    if (next_ >= replies_.size())
      throw std::out_of_range("replay stream exhausted");
    return replies_[next_++];
  }

 private:
  std::vector<int> replies_;
  std::size_t next_ = 0;
  Budget budget_{};
};

}  // namespace liars
