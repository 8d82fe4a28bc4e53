#ifndef CORANK_RATIONAL_HPP_
#define CORANK_RATIONAL_HPP_

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <string>
#include <type_traits>

namespace corank {

/// Arbitrary-precision rational used for every exact coefficient.
using Rational = boost::multiprecision::cpp_rational;

template <typename T>
inline constexpr bool is_exact_v = std::is_same_v<T, Rational>;

inline double to_double(const Rational& q) { return q.convert_to<double>(); }
inline double to_double(double v) { return v; }

inline std::string to_string(const Rational& q) { return q.str(); }

/// Converts a finite double to the rational it represents exactly.
inline Rational rational_from_double(double v) {
  if (v == 0.0) return Rational(0);
  int exponent = 0;
  double mantissa = std::frexp(v, &exponent);
  // 53 bits of mantissa become an integer numerator.
  auto numerator = static_cast<long long>(std::ldexp(mantissa, 53));
  exponent -= 53;
  Rational r(numerator);
  if (exponent > 0) {
    r *= Rational(boost::multiprecision::cpp_int(1) << exponent);
  } else if (exponent < 0) {
    r /= Rational(boost::multiprecision::cpp_int(1) << -exponent);
  }
  return r;
}

template <typename T>
int sign_of(const T& v) {
  if (v > 0) return 1;
  if (v < 0) return -1;
  return 0;
}

}  // namespace corank

#endif  // CORANK_RATIONAL_HPP_
