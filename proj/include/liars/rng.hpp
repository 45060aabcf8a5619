#pragma once

#include <cstdint>
#include <vector>

namespace liars {

/// splitmix64 mixing step. Used both as a stream generator and as a hash
/// for deriving independent seeds, so results are identical on every
/// platform (no reliance on std:: distribution internals).
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// Derive an independent seed from (key, counter), e.g. (master seed, trial
/// index) or (responder seed, round). Stateless, order-independent.
inline std::uint64_t derive_seed(std::uint64_t key, std::uint64_t counter) {
  std::uint64_t s = key ^ (0x9e3779b97f4a7c15ull * (counter + 1));
  std::uint64_t a = splitmix64(s);
  std::uint64_t b = splitmix64(s);
  return a ^ (b << 1);
}

/// Small deterministic PRNG (splitmix64 stream).
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0x5eed) : state_(seed) {}

  std::uint64_t next_u64() { return splitmix64(state_); }

  /// Uniform in [0, 1).
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform in [0, bound). Debiased via rejection.
  std::uint64_t next_below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    const std::uint64_t threshold = -bound % bound;  // 2^64 mod bound
    for (;;) {
      const std::uint64_t r = next_u64();
      if (r >= threshold) return r % bound;
    }
  }

  /// Uniform integer in [lo, hi] inclusive.
  std::int64_t next_int(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(
                    next_below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  bool bernoulli(double p) { return next_double() < p; }

  template <class T>
  const T& pick(const std::vector<T>& xs) {
    return xs[next_below(xs.size())];
  }

 private:
  std::uint64_t state_;
};

}  // namespace liars
