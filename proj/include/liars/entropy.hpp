#pragma once

#include <cmath>
#include <stdexcept>

namespace liars {

/// Binary entropy in bits, H(p) = -p log2 p - (1-p) log2 (1-p).
/// H(0) = H(1) = 0 by continuity.
inline double entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("entropy: p must be in [0,1]");
  if (p == 0.0 || p == 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

/// Entropy gap F(x) = 1 - H((1-x)/2) for x in [-1,1]. F(0)=0, F(+-1)=1.
inline double entropy_gap(double x) {
  if (!(x >= -1.0 && x <= 1.0))
    throw std::invalid_argument("entropy_gap: x must be in [-1,1]");
  return 1.0 - entropy(0.5 * (1.0 - x));
}

}  // namespace liars
