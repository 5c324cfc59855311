#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace conewalk {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer abs(const Integer& a) { return a < 0 ? Integer(-a) : a; }

inline Integer gcd(const Integer& a, const Integer& b) {
  return boost::multiprecision::gcd(a, b);
}

inline Integer lcm(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return 0;
  return abs(a / gcd(a, b) * b);
}

/// Floor of a/b for b != 0.
inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline Integer ceil_div(const Integer& a, const Integer& b) {
  return -floor_div(-a, b);
}

/// Floor of the square root of a nonnegative integer.
inline Integer isqrt(const Integer& a) { return boost::multiprecision::sqrt(a); }

inline bool is_square(const Integer& a, Integer* root = nullptr) {
  if (a < 0) return false;
  Integer r = isqrt(a);
  if (r * r != a) return false;
  if (root) *root = r;
  return true;
}

inline Integer numerator(const Rational& q) {
  return boost::multiprecision::numerator(q);
}
inline Integer denominator(const Rational& q) {
  return boost::multiprecision::denominator(q);
}

inline Integer floor(const Rational& q) {
  return floor_div(numerator(q), denominator(q));
}
inline Integer ceil(const Rational& q) {
  return ceil_div(numerator(q), denominator(q));
}

inline double to_double(const Integer& a) { return a.convert_to<double>(); }
inline double to_double(const Rational& q) { return q.convert_to<double>(); }

inline std::string to_string(const Integer& a) { return a.str(); }

/// "p" for integral values, "p/q" otherwise.
inline std::string to_string(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

/// Integers x with (x - center)^2 <= radius_sq, as a closed range [lo, hi].
/// Returns false when the range is empty.
inline bool integer_window(const Rational& center, const Rational& radius_sq,
                           Integer& lo, Integer& hi) {
  if (radius_sq < 0) return false;
  // floor(sqrt(floor(r))) is within one of sqrt(r); the loops below settle
  // both ends exactly.
  const Integer s = isqrt(floor(radius_sq));
  const Integer c = floor(center);
  lo = c - s - 1;
  hi = c + s + 2;
  auto inside = [&](const Integer& x) {
    Rational d = Rational(x) - center;
    return d * d <= radius_sq;
  };
  while (inside(lo - 1)) --lo;
  while (lo <= hi && !inside(lo)) ++lo;
  while (inside(hi + 1)) ++hi;
  while (hi >= lo && !inside(hi)) --hi;
  return lo <= hi;
}

}  // namespace conewalk
