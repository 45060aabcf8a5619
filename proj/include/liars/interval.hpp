#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

namespace liars {

/// Sum_{n >= m} n^-2, the trigamma function at integer m. Recurrence up to
/// x >= 24, then the asymptotic series; relative error well under 1e-12.
inline double tail_weight(long long m) {
  if (m < 1) throw std::invalid_argument("tail_weight needs m >= 1");
  double acc = 0.0;
  double x = static_cast<double>(m);
  while (x < 24.0) {
    acc += 1.0 / (x * x);
    x += 1.0;
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  // psi'(x) ~ 1/x + 1/2x^2 + 1/6x^3 - 1/30x^5 + 1/42x^7 - 1/30x^9 + 5/66x^11
  double series = inv * (1.0 + inv * 0.5);
  double p = inv * inv2;  // x^-3
  series += p / 6.0;
  p *= inv2;
  series -= p / 30.0;
  p *= inv2;
  series += p / 42.0;
  p *= inv2;
  series -= p / 30.0;
  p *= inv2;
  series += 5.0 * p / 66.0;
  return acc + series;
}

enum class WeightProfile { uniform, inverse_square };

/// Piecewise-constant lie counters over an integer interval domain
/// ([1, n] or all of N = {1, 2, ...}), with initial weights mu0(n) = 1
/// (uniform) or mu0(n) = n^-2 (inverse-square; finite total pi^2/6).
/// Segments are half-open [lo, hi) runs sharing (lies, virtual lies); the
/// last segment of the unbounded profile has hi = kInf and its weight is
/// evaluated analytically.
class IntervalWeightState {
 public:
  static constexpr long long kInf = std::numeric_limits<long long>::max();

  struct Segment {
    long long lo = 1;
    long long hi = kInf;
    std::uint32_t lies = 0;
    std::uint32_t vlies = 0;
  };

  static IntervalWeightState uniform(long long n, double gamma) {
    if (n < 1) throw std::invalid_argument("domain must be nonempty");
    IntervalWeightState s;
    s.profile_ = WeightProfile::uniform;
    s.domain_hi_ = n + 1;
    s.set_gamma(gamma);
    s.segs_.push_back({1, n + 1, 0, 0});
    return s;
  }

  static IntervalWeightState inverse_square(double gamma) {
    IntervalWeightState s;
    s.profile_ = WeightProfile::inverse_square;
    s.domain_hi_ = kInf;
    s.set_gamma(gamma);
    s.segs_.push_back({1, kInf, 0, 0});
    return s;
  }

  WeightProfile profile() const { return profile_; }
  long long domain_hi() const { return domain_hi_; }  // exclusive
  bool gamma_infinite() const { return gamma_infinite_; }
  double gamma() const { return gamma_; }
  const std::vector<Segment>& segments() const { return segs_; }

  /// Initial (profile) weight of one integer.
  double mu0(long long n) const {
    if (profile_ == WeightProfile::uniform) return 1.0;
    const double x = static_cast<double>(n);
    return 1.0 / (x * x);
  }

  /// Profile mass of [lo, hi); hi = kInf only for the unbounded profile.
  double mass(long long lo, long long hi) const {
    if (lo >= hi) return 0.0;
    if (profile_ == WeightProfile::uniform)
      return static_cast<double>(hi - lo);
    if (hi == kInf) return tail_weight(lo);
    if (hi - lo <= 64) {
      double acc = 0.0;
      for (long long n = lo; n < hi; ++n) acc += mu0(n);
      return acc;
    }
    return tail_weight(lo) - tail_weight(hi);
  }

  std::uint32_t counter(const Segment& s, bool use_virtual) const {
    return use_virtual ? s.lies + s.vlies : s.lies;
  }

  std::uint32_t lies_at(long long n) const { return seg_at(n).lies; }
  std::uint32_t virtual_lies_at(long long n) const { return seg_at(n).vlies; }

  /// Increment the real lie counter on [lo, hi) (clamped to the domain).
  void add_lie_range(long long lo, long long hi) {
    lo = std::max(lo, 1ll);
    hi = std::min(hi, domain_hi_);
    if (lo >= hi) return;
    split_at(lo);
    split_at(hi);
    for (auto& s : segs_)
      if (s.lo >= lo && s.lo < hi) ++s.lies;
    coalesce();
  }

  /// Increment the virtual counter of a single integer.
  void bump_virtual_at(long long n) {
    split_at(n);
    split_at(n == kInf ? kInf : n + 1);
    for (auto& s : segs_)
      if (s.lo == n) {
        ++s.vlies;
        break;
      }
    coalesce();
  }

  std::uint32_t min_counter(bool use_virtual = false) const {
    std::uint32_t mn = std::numeric_limits<std::uint32_t>::max();
    for (const auto& s : segs_) mn = std::min(mn, counter(s, use_virtual));
    return mn;
  }

  /// Number of integers with lies <= budget; kInf when the tail qualifies.
  long long count_within(std::uint32_t budget) const {
    long long count = 0;
    for (const auto& s : segs_) {
      if (s.lies > budget) continue;
      if (s.hi == kInf) return kInf;
      count += s.hi - s.lo;
      if (count >= kInf / 2) return kInf;
    }
    return count;
  }

  /// The unique integer with lies <= budget, if exactly one exists.
  std::optional<long long> unique_within(std::uint32_t budget) const {
    if (count_within(budget) != 1) return std::nullopt;
    for (const auto& s : segs_)
      if (s.lies <= budget) return s.lo;
    return std::nullopt;
  }

  /// Smallest integer among those with the minimum lie counter.
  long long argmin_lies() const {
    std::uint32_t mn = min_counter(false);
    for (const auto& s : segs_)
      if (s.lies == mn) return s.lo;
    return 1;
  }

  /// Offset-normalized weights of all segments plus their prefix sums.
  /// Consumers compare within one snapshot, so the normalization cancels.
  struct Snapshot {
    const IntervalWeightState* state = nullptr;
    bool use_virtual = false;
    std::vector<long long> seg_lo;    // segment fronts, ascending
    std::vector<double> seg_weight;   // per segment
    std::vector<double> seg_factor;   // gamma^-(k - off), 0 for dead
    std::vector<double> prefix;       // prefix[i] = sum of seg_weight[0..i)
    double total = 0.0;

    /// Weighted mass of [1, m+1) within the domain.
    double cum(long long m) const {
      if (m < 1) return 0.0;
      if (m >= state->domain_hi() - 1) return total;
      // Last segment with lo <= m.
      auto it = std::upper_bound(seg_lo.begin(), seg_lo.end(), m);
      const std::size_t i = static_cast<std::size_t>(it - seg_lo.begin()) - 1;
      const auto& s = state->segments()[i];
      if (s.hi != IntervalWeightState::kInf && s.hi <= m + 1)
        return prefix[i + 1];
      return prefix[i] + state->mass(s.lo, m + 1) * seg_factor[i];
    }

    /// Weight of the single integer n.
    double mu(long long n) const {
      auto it = std::upper_bound(seg_lo.begin(), seg_lo.end(), n);
      if (it == seg_lo.begin()) return 0.0;
      const std::size_t i = static_cast<std::size_t>(it - seg_lo.begin()) - 1;
      const auto& s = state->segments()[i];
      if (s.hi != IntervalWeightState::kInf && n >= s.hi) return 0.0;
      return state->mu0(n) * seg_factor[i];
    }
  };

  Snapshot snapshot(bool use_virtual = false) const {
    Snapshot v;
    v.state = this;
    v.use_virtual = use_virtual;
    const std::uint32_t off = gamma_infinite_ ? 0 : min_counter(use_virtual);
    v.seg_lo.reserve(segs_.size());
    v.seg_weight.reserve(segs_.size());
    v.seg_factor.reserve(segs_.size());
    v.prefix.reserve(segs_.size() + 1);
    v.prefix.push_back(0.0);
    for (const auto& s : segs_) {
      const std::uint32_t k = counter(s, use_virtual);
      double f;
      if (gamma_infinite_)
        f = (k == 0) ? 1.0 : 0.0;
      else
        f = std::pow(1.0 / gamma_, static_cast<double>(k - off));
      const double w = mass(s.lo, s.hi) * f;
      v.seg_lo.push_back(s.lo);
      v.seg_factor.push_back(f);
      v.seg_weight.push_back(w);
      v.prefix.push_back(v.prefix.back() + w);
    }
    v.total = v.prefix.back();
    return v;
  }

  /// Weighted median: the smallest m with cum(m) >= total/2 (the argmin of
  /// the ternary-query potential; ties resolve to the smallest m).
  long long ternary_median(bool use_virtual = false) const {
    const Snapshot v = snapshot(use_virtual);
    const double half = v.total / 2.0;
    double acc = 0.0;
    for (std::size_t i = 0; i < segs_.size(); ++i) {
      const auto& s = segs_[i];
      if (acc + v.seg_weight[i] + 1e-15 * v.total < half) {
        acc += v.seg_weight[i];
        continue;
      }
      // The median is inside this segment.
      if (profile_ == WeightProfile::uniform) {
        const double per = v.seg_factor[i];
        if (per <= 0.0) { acc += v.seg_weight[i]; continue; }
        const double need = (half - acc) / per;
        long long c = static_cast<long long>(std::ceil(need - 1e-9));
        c = std::max(c, 1ll);
        long long m = s.lo + c - 1;
        return std::min(m, s.hi - 1);
      }
      long long lo = s.lo;
      long long hi = (s.hi == kInf) ? 0 : s.hi - 1;
      if (s.hi == kInf) {
        hi = s.lo;
        while (v.cum(hi) < half) hi *= 2;
      }
      while (lo < hi) {
        long long mid = lo + (hi - lo) / 2;
        if (v.cum(mid) >= half)
          hi = mid;
        else
          lo = mid + 1;
      }
      return lo;
    }
    return segs_.back().lo;
  }

  /// Comparison-threshold median: the smallest m such that the edge
  /// {m, m+1} minimizes the edge potential, i.e. cum(m) + cum(m+1) >=
  /// total. The domain must contain m+1.
  long long binary_median(bool use_virtual = false) const {
    const Snapshot v = snapshot(use_virtual);
    const double total = v.total;
    auto good = [&](long long m) { return v.cum(m) + v.cum(m + 1) >= total; };
    long long lo = 1;
    long long hi;
    if (domain_hi_ == kInf) {
      hi = 2;
      while (!good(hi)) hi *= 2;
    } else {
      hi = domain_hi_ - 2;  // last edge {n-1, n}
      if (hi < 1) throw std::logic_error("domain has no comparison edge");
    }
    while (lo < hi) {
      long long mid = lo + (hi - lo) / 2;
      if (good(mid))
        hi = mid;
      else
        lo = mid + 1;
    }
    return lo;
  }

  /// Smallest integer holding strictly more than `alpha` of the total
  /// weight, if any. Weights are nonincreasing within a segment, so only
  /// segment fronts can qualify.
  std::optional<long long> heavy_integer(double alpha,
                                         bool use_virtual = false) const {
    const Snapshot v = snapshot(use_virtual);
    for (std::size_t i = 0; i < segs_.size(); ++i) {
      const double w = mu0(segs_[i].lo) * v.seg_factor[i];
      if (w > alpha * v.total * (1 + 1e-9)) return segs_[i].lo;
    }
    return std::nullopt;
  }

  /// Does integer n hold strictly more than `alpha` of the total weight?
  bool integer_is_heavy(long long n, double alpha,
                        bool use_virtual = false) const {
    const Snapshot v = snapshot(use_virtual);
    return v.mu(n) > alpha * v.total * (1 + 1e-9);
  }

  /// Multiplicative factor of a counter increment on [lo, hi) computed on
  /// the current weights (before applying it).
  double range_factor(long long lo, long long hi) const {
    const Snapshot v = snapshot(false);
    lo = std::max(lo, 1ll);
    hi = std::min(hi, domain_hi_);
    if (lo >= hi || v.total <= 0.0) return 1.0;
    double out = (hi == kInf ? v.total - v.cum(lo - 1)
                             : v.cum(hi - 1) - v.cum(lo - 1));
    double in = v.total - out;
    if (gamma_infinite_) return v.total > 0 ? in / v.total : 0.0;
    return (in + out / gamma_) / v.total;
  }

 private:
  void set_gamma(double gamma) {
    if (std::isinf(gamma)) {
      gamma_infinite_ = true;
      gamma_ = 2.0;
      return;
    }
    if (!(gamma > 1.0)) throw std::invalid_argument("gamma must be > 1");
    gamma_ = gamma;
    gamma_infinite_ = false;
  }

  const Segment& seg_at(long long n) const {
    for (const auto& s : segs_)
      if (s.lo <= n && (s.hi == kInf || n < s.hi)) return s;
    throw std::out_of_range("integer outside the domain");
  }

  void split_at(long long x) {
    if (x <= 1 || x >= domain_hi_) return;
    for (std::size_t i = 0; i < segs_.size(); ++i) {
      auto& s = segs_[i];
      if (s.lo < x && (s.hi == kInf || x < s.hi)) {
        Segment right = s;
        right.lo = x;
        s.hi = x;
        segs_.insert(segs_.begin() + i + 1, right);
        return;
      }
    }
  }

  void coalesce() {
    std::size_t out = 0;
    for (std::size_t i = 1; i < segs_.size(); ++i) {
      if (segs_[i].lies == segs_[out].lies &&
          segs_[i].vlies == segs_[out].vlies &&
          segs_[out].hi == segs_[i].lo) {
        segs_[out].hi = segs_[i].hi;
      } else {
        segs_[++out] = segs_[i];
      }
    }
    segs_.resize(out + 1);
  }

  WeightProfile profile_ = WeightProfile::uniform;
  long long domain_hi_ = kInf;
  double gamma_ = 2.0;
  bool gamma_infinite_ = false;
  std::vector<Segment> segs_;
};

}  // namespace liars
