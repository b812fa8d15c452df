#pragma once

// Double-double arithmetic (~31 significant decimal digits).
//
// The matrix-model trace pairings cancel intermediate values as large as
// R_{n+1}(||Delta||), which reaches ~1e8 already at k = 10 and ~1e18 at the
// top of the supported k range. Plain IEEE doubles leave residuals near the
// 1e-6 integer-rounding tolerance; a double-double value type keeps them
// below 1e-12 across the whole supported range.

#include <cmath>
#include <cstdlib>
#include <string>

#include "fusionk/bigint.hpp"

namespace fusionk {

struct DD {
  double hi = 0.0;
  double lo = 0.0;

  DD() = default;
  DD(double h) : hi(h) {}
  DD(double h, double l) : hi(h), lo(l) {}
};

namespace detail {

inline DD two_sum(double a, double b) {
  double s = a + b;
  double bb = s - a;
  double err = (a - (s - bb)) + (b - bb);
  return {s, err};
}

inline DD quick_two_sum(double a, double b) {
  // requires |a| >= |b|
  double s = a + b;
  return {s, b - (s - a)};
}

inline DD two_prod(double a, double b) {
  double p = a * b;
  return {p, std::fma(a, b, -p)};
}

}  // namespace detail

inline DD operator+(DD a, DD b) {
  DD s = detail::two_sum(a.hi, b.hi);
  DD t = detail::two_sum(a.lo, b.lo);
  s.lo += t.hi;
  s = detail::quick_two_sum(s.hi, s.lo);
  s.lo += t.lo;
  return detail::quick_two_sum(s.hi, s.lo);
}

inline DD operator-(DD a) { return {-a.hi, -a.lo}; }
inline DD operator-(DD a, DD b) { return a + (-b); }

inline DD operator*(DD a, DD b) {
  DD p = detail::two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return detail::quick_two_sum(p.hi, p.lo);
}

inline DD operator/(DD a, DD b) {
  double q1 = a.hi / b.hi;
  DD r = a - b * DD(q1);
  double q2 = r.hi / b.hi;
  r = r - b * DD(q2);
  double q3 = r.hi / b.hi;
  DD q = detail::quick_two_sum(q1, q2);
  return q + DD(q3);
}

inline DD& operator+=(DD& a, DD b) { return a = a + b; }
inline DD& operator-=(DD& a, DD b) { return a = a - b; }
inline DD& operator*=(DD& a, DD b) { return a = a * b; }

inline bool operator<(DD a, DD b) { return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo); }
inline bool operator>(DD a, DD b) { return b < a; }

inline double to_double(DD a) { return a.hi + a.lo; }
inline DD dd_abs(DD a) { return a.hi < 0 || (a.hi == 0 && a.lo < 0) ? -a : a; }

inline DD dd_sqrt(DD a) {
  if (a.hi == 0.0 && a.lo == 0.0) return {};
  double x = std::sqrt(a.hi);
  DD ax(x);
  DD err = a - ax * ax;
  return ax + DD(err.hi / (2.0 * x));
}

// value * 2^scale with ~106-bit relative accuracy. Works for integers of any
// size as long as the scaled result is within double range.
inline DD dd_from_bigint_scaled(const BigInt& v, long scale) {
  if (v.is_zero()) return {};
  long drop = static_cast<long>(v.bit_length()) - 106;
  BigInt top = drop > 0 ? v.shr(static_cast<unsigned>(drop)) : v;
  long ex = scale + (drop > 0 ? drop : 0);
  double hi = top.to_double();  // exact to 53 bits, |top| < 2^106
  BigInt rem = top - BigInt::from_double_integral(hi);
  double lo = rem.to_double();
  return {std::ldexp(hi, static_cast<int>(ex)), std::ldexp(lo, static_cast<int>(ex))};
}

inline DD dd_from_bigint(const BigInt& v) { return dd_from_bigint_scaled(v, 0); }

inline std::string dd_to_string(DD a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.20g", to_double(a));
  return buf;
}

}  // namespace fusionk
