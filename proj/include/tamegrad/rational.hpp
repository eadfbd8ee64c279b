#pragma once

// Exact rational coefficient field used throughout the library.
// Backed by boost::multiprecision (header-only); values are always kept in
// lowest terms with a positive denominator by the backend.

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace tamegrad {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt numer(const Rational& q) { return boost::multiprecision::numerator(q); }
inline BigInt denom(const Rational& q) { return boost::multiprecision::denominator(q); }

inline bool is_integer(const Rational& q) { return denom(q) == 1; }

inline Rational rat_abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

inline int rat_sign(const Rational& q) { return q < 0 ? -1 : (q > 0 ? 1 : 0); }

inline Rational rat_pow(const Rational& base, long long e) {
  if (e < 0) {
    if (base == 0) throw std::domain_error("rat_pow: zero base with negative exponent");
    return Rational(1) / rat_pow(base, -e);
  }
  Rational r(1), b(base);
  while (e > 0) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

// Floor of a rational as a big integer (round toward negative infinity).
inline BigInt rat_floor(const Rational& q) {
  BigInt n = numer(q), d = denom(q);
  BigInt t = n / d;
  if (n % d != 0 && n < 0) t -= 1;
  return t;
}

inline std::string rat_str(const Rational& q) { return q.str(); }

inline double rat_double(const Rational& q) { return q.convert_to<double>(); }

inline BigInt int_gcd(BigInt a, BigInt b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    BigInt t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline BigInt int_lcm(const BigInt& a, const BigInt& b) {
  if (a == 0 || b == 0) return 0;
  BigInt g = int_gcd(a, b);
  BigInt l = (a / g) * b;
  return l < 0 ? BigInt(-l) : l;
}

// gcd of two rationals: gcd(a/b, c/d) = gcd(a*d, c*b)/(b*d), the largest
// rational dividing both with integer quotients. Used for polynomial content.
inline Rational rat_gcd(const Rational& p, const Rational& q) {
  if (p == 0) return rat_abs(q);
  if (q == 0) return rat_abs(p);
  BigInt gn = int_gcd(numer(p), numer(q));
  BigInt gl = int_lcm(denom(p), denom(q));
  return Rational(gn, gl);
}

}  // namespace tamegrad
