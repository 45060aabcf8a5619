#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include "liars/weights.hpp"

namespace liars {

using Rational = boost::multiprecision::cpp_rational;

/// Exact big-rational instantiation of the weight engine. Used by the test
/// suite to certify the float mode: no tolerance, all comparisons exact.
template <>
struct ScalarPolicy<Rational> {
  static constexpr bool is_exact = true;

  static Rational from_int(long long x) { return Rational(x); }
  static Rational from_double(double x) {
    // Only integral doubles appear in exact mode (exact mode is restricted
    // to integer-length graphs).
    return Rational(boost::multiprecision::cpp_int(static_cast<long long>(x)));
  }
  static double to_double(const Rational& x) {
    return x.template convert_to<double>();
  }
  static bool gt(const Rational& a, const Rational& b) { return a > b; }
};

using ExactLieState = BasicLieState<Rational>;

inline Rational rational(long long num, long long den) {
  return Rational(num) / Rational(den);
}

}  // namespace liars
