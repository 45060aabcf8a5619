#pragma once

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>

#include "liars/entropy.hpp"

namespace liars {

inline constexpr double kInfGamma = std::numeric_limits<double>::infinity();

inline bool gamma_is_infinite(double gamma) {
  return std::isinf(gamma);
}

namespace bounds {

/// Worst-case vertex queries for the fixed-lie strategy:
/// (log2 n + L log2 Gamma) / log2(2 Gamma / (Gamma + 1)).
inline double vertex_fixed(int n, int lies, double gamma) {
  if (gamma_is_infinite(gamma)) {
    if (lies != 0)
      throw std::invalid_argument("infinite gamma requires a zero lie budget");
    return std::log2(static_cast<double>(n));
  }
  const double denom = std::log2(2.0 * gamma / (gamma + 1.0));
  return (std::log2(static_cast<double>(n)) + lies * std::log2(gamma)) / denom;
}

/// Declared length of the linearly bounded vertex wrapper: log2 n / (1-H(r)).
inline double vertex_linear(int n, double r) {
  if (!(r >= 0.0 && r < 0.5))
    throw std::invalid_argument("rate must satisfy 0 <= r < 1/2");
  return std::log2(static_cast<double>(n)) / (1.0 - entropy(r));
}

/// Worst-case edge queries for the fixed-lie strategy:
/// (ln n + L ln Gamma) / ln(1 + (Gamma-1)/(Gamma Delta + 1)).
inline double edge_fixed(int n, int lies, double gamma, int max_degree) {
  double denom;
  if (gamma_is_infinite(gamma)) {
    if (lies != 0)
      throw std::invalid_argument("infinite gamma requires a zero lie budget");
    denom = std::log1p(1.0 / max_degree);
    return std::log(static_cast<double>(n)) / denom;
  }
  denom = std::log1p((gamma - 1.0) / (gamma * max_degree + 1.0));
  return (std::log(static_cast<double>(n)) + lies * std::log(gamma)) / denom;
}

/// Linearly bounded edge searching at rate r = (1-eps)/(Delta+1):
/// 2 eps^-2 Delta ln n.
inline double edge_linear(int n, int max_degree, double eps) {
  if (!(eps > 0.0 && eps <= 1.0))
    throw std::invalid_argument("eps must be in (0,1]");
  return 2.0 * max_degree * std::log(static_cast<double>(n)) / (eps * eps);
}

/// Error-less edge searching: ceil(log(n/Delta)/log(Delta/(Delta-1))) + Delta.
inline double edge_errorless(int n, int max_degree) {
  if (max_degree <= 1) return max_degree;  // single-edge graph
  const double head = std::log(static_cast<double>(n) / max_degree) /
                      std::log(static_cast<double>(max_degree) / (max_degree - 1));
  return std::ceil(head) + max_degree;
}

/// Unbounded integer search, fixed lies, target N:
/// (log(pi^2/6) + 2 log N + L log Gamma) / log(2G/(G+1))   [ternary]
/// same numerator over log(3G/(2G+1))                      [binary]
inline double unbounded_fixed(long long target, int lies, double gamma,
                              bool binary) {
  const double zeta2 = 1.6449340668482264;  // pi^2/6
  double num, denom;
  if (gamma_is_infinite(gamma)) {
    if (lies != 0)
      throw std::invalid_argument("infinite gamma requires a zero lie budget");
    num = std::log2(zeta2) + 2.0 * std::log2(static_cast<double>(target));
    denom = binary ? std::log2(1.5) : 1.0;
    return num / denom;
  }
  num = std::log2(zeta2) + 2.0 * std::log2(static_cast<double>(target)) +
        lies * std::log2(gamma);
  denom = binary ? std::log2(3.0 * gamma / (2.0 * gamma + 1.0))
                 : std::log2(2.0 * gamma / (gamma + 1.0));
  return num / denom;
}

/// Leading term of the pruning round budget: 8 (Delta-1) eps^-2 ln n.
/// The lower-order additive term is unspecified, so runs apply a slack
/// multiplier on top of this value and report when it is exceeded.
inline double pruning_q0(int n, int max_degree, double eps) {
  const int dm1 = std::max(1, max_degree - 1);
  return 8.0 * dm1 * std::log(static_cast<double>(n)) / (eps * eps);
}

}  // namespace bounds
}  // namespace liars
