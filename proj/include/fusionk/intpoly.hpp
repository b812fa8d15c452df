#pragma once

// Exact integer sequences and the polynomial families R_m, Q_j, S_j, q_k,
// together with the exact identities that relate them.
//
//   R_0 = 1, R_1 = t,  R_m = t R_{m-1} - R_{m-2}          (Chebyshev-like,
//                                                          R_m(2cos x) = sin((m+1)x)/sin x)
//   Q_j(t^2) = R_{2j}(t)
//   S_3 = R_3, S_4 = R_4 - R_2, S_j = t S_{j-1} - S_{j-2}
//   q_0 = t^2-5t+3, q_1 = (t-1)(t^3-8t^2+17t-5),
//   q_k = (t^2-4t+2) q_{k-1} - q_{k-2}
//
//   c_0 = 1, c_1 = c_2 = 0, c_j = c_{j-1}+c_{j-2}+c_{j-3}
//   d_{-1} = 0, d_0 = d_1 = 1, d_j = d_{j-1}+d_{j-2}+d_{j-3}   (c_j = d_{j-3})
//   f_j, g_j: the half-split of c_j by j mod 4; f_j + g_j = c_j.

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fusionk/bigint.hpp"

namespace fusionk {

// Dense polynomial with arbitrary-precision integer coefficients, ascending
// degree order. The zero polynomial has an empty coefficient vector.
class IntPoly {
public:
  IntPoly() = default;
  explicit IntPoly(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) { trim(); }
  IntPoly(std::initializer_list<long long> coeffs) {
    for (long long v : coeffs) c_.emplace_back(v);
    trim();
  }

  static IntPoly constant(BigInt v) { return IntPoly(std::vector<BigInt>{std::move(v)}); }
  static IntPoly monomial(int deg, BigInt coeff = BigInt(1)) {
    std::vector<BigInt> c(static_cast<std::size_t>(deg) + 1);
    c.back() = std::move(coeff);
    return IntPoly(std::move(c));
  }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  const BigInt& coeff(int i) const {
    static const BigInt zero(0);
    return i >= 0 && i < static_cast<int>(c_.size()) ? c_[static_cast<std::size_t>(i)] : zero;
  }
  const std::vector<BigInt>& coeffs() const { return c_; }
  bool is_monic() const { return !c_.empty() && c_.back() == BigInt(1); }

  friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const IntPoly& a, const IntPoly& b) { return !(a == b); }

  friend IntPoly operator+(const IntPoly& a, const IntPoly& b) {
    std::vector<BigInt> r(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < r.size(); ++i)
      r[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
    return IntPoly(std::move(r));
  }
  friend IntPoly operator-(const IntPoly& a, const IntPoly& b) {
    std::vector<BigInt> r(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < r.size(); ++i)
      r[i] = a.coeff(static_cast<int>(i)) - b.coeff(static_cast<int>(i));
    return IntPoly(std::move(r));
  }
  IntPoly operator-() const {
    std::vector<BigInt> r(c_.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = -c_[i];
    return IntPoly(std::move(r));
  }
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<BigInt> r(a.c_.size() + b.c_.size() - 1, BigInt(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return IntPoly(std::move(r));
  }
  IntPoly scaled(const BigInt& s) const {
    std::vector<BigInt> r(c_.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = c_[i] * s;
    return IntPoly(std::move(r));
  }
  IntPoly& operator+=(const IntPoly& o) { return *this = *this + o; }
  IntPoly& operator-=(const IntPoly& o) { return *this = *this - o; }

  // this(inner), exact.
  IntPoly compose(const IntPoly& inner) const {
    IntPoly acc;
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * inner + constant(c_[i]);
    return acc;
  }

  IntPoly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<BigInt> r(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * BigInt(static_cast<long long>(i));
    return IntPoly(std::move(r));
  }

  BigInt eval(const BigInt& x) const {
    BigInt acc(0);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
  }

  // Exact numerator of p(num / 2^e) * 2^(e*degree); the sign of p at the
  // dyadic point equals the sign of the returned integer.
  BigInt eval_dyadic_numerator(const BigInt& num, unsigned e) const {
    if (is_zero()) return BigInt(0);
    BigInt acc = c_.back();
    for (std::size_t i = c_.size() - 1; i-- > 0;)
      acc = acc * num + c_[i].shl(e * static_cast<unsigned>(c_.size() - 1 - i));
    return acc;
  }

  // Quotient of an exact division; throws when a remainder is left.
  IntPoly divexact(const IntPoly& divisor) const {
    if (divisor.is_zero()) throw std::domain_error("IntPoly: division by zero polynomial");
    if (!divisor.is_monic())
      throw std::invalid_argument("IntPoly: exact division needs a monic divisor");
    IntPoly rem = *this, quot;
    int dd = divisor.degree();
    while (rem.degree() >= dd) {
      int shift = rem.degree() - dd;
      BigInt lead = rem.c_.back();
      quot += monomial(shift, lead);
      rem -= divisor * monomial(shift, lead);
    }
    if (!rem.is_zero()) throw std::logic_error("IntPoly: inexact polynomial division");
    return quot;
  }

  std::string to_string(const std::string& var = "t") const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t i = c_.size(); i-- > 0;) {
      if (c_[i].is_zero()) continue;
      BigInt a = c_[i];
      if (!out.empty()) {
        out += a.is_negative() ? " - " : " + ";
        if (a.is_negative()) a = -a;
      } else if (a.is_negative()) {
        out += "-";
        a = -a;
      }
      if (i == 0 || a != BigInt(1)) out += a.to_string();
      if (i > 0) {
        out += var;
        if (i > 1) out += "^" + std::to_string(i);
      }
    }
    return out;
  }

private:
  std::vector<BigInt> c_;

  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
};

// ---------------------------------------------------------------------------
// Polynomial families

// R_0 .. R_m.
inline std::vector<IntPoly> cheb_R_family(int m) {
  std::vector<IntPoly> r;
  r.reserve(static_cast<std::size_t>(m) + 1);
  r.push_back(IntPoly{1});
  if (m >= 1) r.push_back(IntPoly{0, 1});
  const IntPoly t{0, 1};
  for (int i = 2; i <= m; ++i) r.push_back(t * r[static_cast<std::size_t>(i - 1)] - r[static_cast<std::size_t>(i - 2)]);
  return r;
}

inline IntPoly cheb_R(int m) {
  if (m < 0) throw std::invalid_argument("cheb_R: negative index");
  return cheb_R_family(m).back();
}

// The unique Q_j with Q_j(t^2) = R_{2j}(t); throws if R_{2j} had an odd term.
inline IntPoly poly_Q(int j) {
  if (j < 0) throw std::invalid_argument("poly_Q: negative index");
  IntPoly r = cheb_R(2 * j);
  std::vector<BigInt> q(static_cast<std::size_t>(j) + 1);
  for (int i = 0; i <= r.degree(); ++i) {
    if (i % 2 == 1) {
      if (!r.coeff(i).is_zero()) throw std::logic_error("poly_Q: odd coefficient in R_{2j}");
    } else {
      q[static_cast<std::size_t>(i / 2)] = r.coeff(i);
    }
  }
  return IntPoly(std::move(q));
}

// S_3 .. S_m (index 0 of the result is S_3).
inline std::vector<IntPoly> poly_S_family(int m) {
  if (m < 3) throw std::invalid_argument("poly_S: index must be >= 3");
  std::vector<IntPoly> s;
  s.push_back(cheb_R(3));
  if (m >= 4) s.push_back(cheb_R(4) - cheb_R(2));
  const IntPoly t{0, 1};
  for (int j = 5; j <= m; ++j)
    s.push_back(t * s[static_cast<std::size_t>(j - 4)] - s[static_cast<std::size_t>(j - 5)]);
  return s;
}

inline IntPoly poly_S(int j) { return poly_S_family(j).back(); }

// q_k, degree 2k+2, monic; q_k(0) = 2k+3, q_k(2) = (-1)^(k+1) (2k+3).
inline IntPoly poly_q(int k) {
  if (k < 0) throw std::invalid_argument("poly_q: negative index");
  IntPoly q0{3, -5, 1};
  if (k == 0) return q0;
  IntPoly q1 = IntPoly{-1, 1} * IntPoly{-5, 17, -8, 1};
  if (k == 1) return q1;
  const IntPoly step{2, -4, 1};
  IntPoly prev = q0, cur = q1;
  for (int i = 2; i <= k; ++i) {
    IntPoly next = step * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

// ---------------------------------------------------------------------------
// Integer sequences

// c_0..c_jmax, d_{-1}..d_jmax (d shifted by one: d[i] = d_{i-1}), f, g.
struct SeqTable {
  std::vector<BigInt> c;  // c[j] = c_j
  std::vector<BigInt> d;  // d[j] = d_{j-1}, so index 0 holds d_{-1} = 0
  std::vector<BigInt> f;  // f[j] = f_j
  std::vector<BigInt> g;  // g[j] = g_j

  static SeqTable up_to(int jmax);

  const BigInt& seq_d(int j) const {  // j >= -1
    return d.at(static_cast<std::size_t>(j + 1));
  }
};

inline BigInt seq_c(int j) {
  if (j < 0) throw std::invalid_argument("seq_c: negative index");
  BigInt a(1), b(0), c(0);  // c_0, c_1, c_2
  if (j == 0) return a;
  if (j == 1 || j == 2) return BigInt(0);
  for (int i = 3; i <= j; ++i) {
    BigInt next = a + b + c;
    a = std::move(b);
    b = std::move(c);
    c = std::move(next);
  }
  return c;
}

inline BigInt seq_d(int j) {
  if (j < -1) throw std::invalid_argument("seq_d: index must be >= -1");
  if (j == -1) return BigInt(0);
  BigInt a(0), b(1), c(1);  // d_{-1}, d_0, d_1
  if (j == 0 || j == 1) return BigInt(1);
  for (int i = 2; i <= j; ++i) {
    BigInt next = a + b + c;
    a = std::move(b);
    b = std::move(c);
    c = std::move(next);
  }
  return c;
}

// The half-split of c_j. Integrality of both halves is a consequence of the
// mod-4 period of c_j; a violation would be an internal invariant failure.
inline std::pair<BigInt, BigInt> seq_fg(int j) {
  if (j < 0) throw std::invalid_argument("seq_fg: negative index");
  BigInt c = seq_c(j);
  auto half = [](const BigInt& v) {
    if (v.is_odd()) throw std::logic_error("seq_fg: parity violation in c_j split");
    return v.divexact_small(2);
  };
  switch (j % 4) {
    case 0: return {half(c + BigInt(1)), half(c - BigInt(1))};
    case 3: return {half(c - BigInt(1)), half(c + BigInt(1))};
    default: return {half(c), half(c)};
  }
}

inline SeqTable SeqTable::up_to(int jmax) {
  SeqTable t;
  t.d.push_back(BigInt(0));  // d_{-1}
  t.d.push_back(BigInt(1));  // d_0
  if (jmax >= 1) t.d.push_back(BigInt(1));
  for (int j = 2; j <= jmax; ++j)
    t.d.push_back(t.d[static_cast<std::size_t>(j)] + t.d[static_cast<std::size_t>(j - 1)] +
                  t.d[static_cast<std::size_t>(j - 2)]);
  for (int j = 0; j <= jmax; ++j) {
    t.c.push_back(j < 3 ? seq_c(j) : t.seq_d(j - 3));
    auto fg = seq_fg(j);
    t.f.push_back(std::move(fg.first));
    t.g.push_back(std::move(fg.second));
  }
  return t;
}

// ---------------------------------------------------------------------------
// Exact identities

// Expansion of R_m in the S/R basis with tribonacci d-coefficients:
//   R_{2j}   = d_0 S_{2j} + d_1 S_{2j-2} + ... + d_{j-2} S_4 + d_{j-1} R_2 + d_{j-3} R_0
//   R_{2j-1} = d_0 S_{2j-1} + d_1 S_{2j-3} + ... + d_{j-2} S_3 + (d_{j-1}-d_{j-2}) R_1
// The returned coefficients follow that basis order; the reconstruction is
// verified exactly and a mismatch throws.
struct SRDecomposition {
  int m = 0;
  std::vector<BigInt> coeffs;
};

inline SRDecomposition sr_decompose(int m) {
  if (m < 4) throw std::invalid_argument("sr_decompose: index must be >= 4");
  SRDecomposition out;
  out.m = m;
  const int j = (m % 2 == 0) ? m / 2 : (m + 1) / 2;
  auto S = poly_S_family(m);
  auto d = SeqTable::up_to(j);
  IntPoly recon;
  if (m % 2 == 0) {
    for (int i = 0; i <= j - 2; ++i) {
      out.coeffs.push_back(d.seq_d(i));
      recon += S[static_cast<std::size_t>(m - 2 * i - 3)].scaled(d.seq_d(i));
    }
    out.coeffs.push_back(d.seq_d(j - 1));
    out.coeffs.push_back(d.seq_d(j - 3));
    recon += cheb_R(2).scaled(d.seq_d(j - 1)) + cheb_R(0).scaled(d.seq_d(j - 3));
  } else {
    for (int i = 0; i <= j - 2; ++i) {
      out.coeffs.push_back(d.seq_d(i));
      recon += S[static_cast<std::size_t>(m - 2 * i - 3)].scaled(d.seq_d(i));
    }
    out.coeffs.push_back(d.seq_d(j - 1) - d.seq_d(j - 2));
    recon += cheb_R(1).scaled(d.seq_d(j - 1) - d.seq_d(j - 2));
  }
  if (recon != cheb_R(m)) throw std::logic_error("sr_decompose: reconstruction mismatch");
  return out;
}

// R_{n+4} - R_{n+2} - R_n - R_{n-2} == t (t^2 - 2) q_k(t^2), n = 4k+3.
inline bool key_identity(int k) {
  if (k < 0) throw std::invalid_argument("key_identity: negative index");
  const int n = 4 * k + 3;
  auto R = cheb_R_family(n + 4);
  IntPoly lhs = R[static_cast<std::size_t>(n + 4)] - R[static_cast<std::size_t>(n + 2)] -
                R[static_cast<std::size_t>(n)] - R[static_cast<std::size_t>(n - 2)];
  IntPoly rhs = IntPoly{0, -2, 0, 1} * poly_q(k).compose(IntPoly{0, 0, 1});
  return lhs == rhs;
}

// The two closed forms for r_k = (2-t) q_k and s_k = (-1)^(k+1) t q_k as
// signed Q-sums:
//   r_k = (2Q_0 - 2Q_1 + ... + 2Q_2k - 2Q_{2k+1}) + (Q_{2k+1} + 2Q_{2k+2} - Q_{2k+3})
//   s_k = sum_{j=0..k} (-1)^j 2 (Q_{2j} + Q_{2j+1}) + (-1)^(k+1) (Q_{2k+3} - Q_{2k+1})
inline std::pair<bool, bool> remark_identities(int k) {
  if (k < 0) throw std::invalid_argument("remark_identities: negative index");
  std::vector<IntPoly> Q;
  for (int j = 0; j <= 2 * k + 3; ++j) Q.push_back(poly_Q(j));
  const IntPoly q = poly_q(k);

  IntPoly rhs1;
  for (int j = 0; j <= 2 * k + 1; ++j) {
    IntPoly term = Q[static_cast<std::size_t>(j)].scaled(BigInt(2));
    rhs1 += (j % 2 == 0) ? term : -term;
  }
  rhs1 += Q[static_cast<std::size_t>(2 * k + 1)] +
          Q[static_cast<std::size_t>(2 * k + 2)].scaled(BigInt(2)) -
          Q[static_cast<std::size_t>(2 * k + 3)];
  const IntPoly r_k = IntPoly{2, -1} * q;

  IntPoly rhs2;
  for (int j = 0; j <= k; ++j) {
    IntPoly term = (Q[static_cast<std::size_t>(2 * j)] + Q[static_cast<std::size_t>(2 * j + 1)])
                       .scaled(BigInt(2));
    rhs2 += (j % 2 == 0) ? term : -term;
  }
  IntPoly tail = Q[static_cast<std::size_t>(2 * k + 3)] - Q[static_cast<std::size_t>(2 * k + 1)];
  rhs2 += (k % 2 == 0) ? -tail : tail;
  IntPoly s_k = IntPoly{0, 1} * q;
  if (k % 2 == 0) s_k = -s_k;

  return {r_k == rhs1, s_k == rhs2};
}

}  // namespace fusionk
