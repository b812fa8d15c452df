#pragma once

// Arbitrary-precision signed integers and exact rationals.
//
// Everything downstream (sequence tables, polynomial identities, characteristic
// polynomials, root bisection) relies on exact arithmetic: the tribonacci-type
// sequences grow like 1.84^j and leave 64-bit range near j = 75, and the
// characteristic-polynomial checks must hold with zero tolerance.
//
// Representation: sign + little-endian base-2^32 limbs, no leading zero limbs.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fusionk {

class BigInt {
public:
  BigInt() = default;

  BigInt(long long v) {
    if (v == 0) return;
    sign_ = v < 0 ? -1 : 1;
    unsigned long long m = v < 0 ? 0ULL - static_cast<unsigned long long>(v)
                                 : static_cast<unsigned long long>(v);
    while (m != 0) {
      d_.push_back(static_cast<std::uint32_t>(m & 0xffffffffULL));
      m >>= 32;
    }
  }

  BigInt(int v) : BigInt(static_cast<long long>(v)) {}

  static BigInt from_string(std::string_view s) {
    BigInt r;
    bool neg = false;
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
      neg = s[i] == '-';
      ++i;
    }
    if (i == s.size()) throw std::invalid_argument("BigInt: empty numeral");
    for (; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9')
        throw std::invalid_argument("BigInt: bad digit in numeral");
      r.umul_small_inplace(10);
      r.uadd_small_inplace(static_cast<std::uint32_t>(s[i] - '0'));
    }
    if (!r.d_.empty()) r.sign_ = neg ? -1 : 1;
    return r;
  }

  bool is_zero() const { return sign_ == 0; }
  bool is_negative() const { return sign_ < 0; }
  bool is_odd() const { return !d_.empty() && (d_[0] & 1u); }
  bool is_even() const { return !is_odd(); }
  int sign() const { return sign_; }

  // Total order. Returns -1, 0, +1.
  int cmp(const BigInt& o) const {
    if (sign_ != o.sign_) return sign_ < o.sign_ ? -1 : 1;
    int c = ucmp(d_, o.d_);
    return sign_ >= 0 ? c : -c;
  }

  friend bool operator==(const BigInt& a, const BigInt& b) { return a.cmp(b) == 0; }
  friend bool operator!=(const BigInt& a, const BigInt& b) { return a.cmp(b) != 0; }
  friend bool operator<(const BigInt& a, const BigInt& b) { return a.cmp(b) < 0; }
  friend bool operator<=(const BigInt& a, const BigInt& b) { return a.cmp(b) <= 0; }
  friend bool operator>(const BigInt& a, const BigInt& b) { return a.cmp(b) > 0; }
  friend bool operator>=(const BigInt& a, const BigInt& b) { return a.cmp(b) >= 0; }

  BigInt operator-() const {
    BigInt r = *this;
    r.sign_ = -r.sign_;
    return r;
  }

  friend BigInt operator+(const BigInt& a, const BigInt& b) {
    if (a.sign_ == 0) return b;
    if (b.sign_ == 0) return a;
    BigInt r;
    if (a.sign_ == b.sign_) {
      r.d_ = uadd(a.d_, b.d_);
      r.sign_ = a.sign_;
    } else {
      int c = ucmp(a.d_, b.d_);
      if (c == 0) return r;
      if (c > 0) {
        r.d_ = usub(a.d_, b.d_);
        r.sign_ = a.sign_;
      } else {
        r.d_ = usub(b.d_, a.d_);
        r.sign_ = b.sign_;
      }
    }
    return r;
  }

  friend BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

  friend BigInt operator*(const BigInt& a, const BigInt& b) {
    BigInt r;
    if (a.sign_ == 0 || b.sign_ == 0) return r;
    r.d_ = umul(a.d_, b.d_);
    r.sign_ = a.sign_ * b.sign_;
    return r;
  }

  BigInt& operator+=(const BigInt& o) { return *this = *this + o; }
  BigInt& operator-=(const BigInt& o) { return *this = *this - o; }
  BigInt& operator*=(const BigInt& o) { return *this = *this * o; }

  // Truncated division: q rounds toward zero, r has the sign of the dividend,
  // a == q*b + r with |r| < |b|.
  static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
    if (b.sign_ == 0) throw std::domain_error("BigInt: division by zero");
    q = BigInt();
    r = BigInt();
    if (a.sign_ == 0) return;
    if (ucmp(a.d_, b.d_) < 0) {
      r = a;
      return;
    }
    udivmod(a.d_, b.d_, q.d_, r.d_);
    if (!q.d_.empty()) q.sign_ = a.sign_ * b.sign_;
    if (!r.d_.empty()) r.sign_ = a.sign_;
  }

  friend BigInt operator/(const BigInt& a, const BigInt& b) {
    BigInt q, r;
    divmod(a, b, q, r);
    return q;
  }

  friend BigInt operator%(const BigInt& a, const BigInt& b) {
    BigInt q, r;
    divmod(a, b, q, r);
    return r;
  }

  // Quotient by a small positive divisor; returns the remainder of |*this|.
  std::uint32_t udiv_small_inplace(std::uint32_t m) {
    if (m == 0) throw std::domain_error("BigInt: division by zero");
    std::uint64_t rem = 0;
    for (std::size_t i = d_.size(); i-- > 0;) {
      std::uint64_t cur = (rem << 32) | d_[i];
      d_[i] = static_cast<std::uint32_t>(cur / m);
      rem = cur % m;
    }
    trim();
    if (d_.empty()) sign_ = 0;
    return static_cast<std::uint32_t>(rem);
  }

  // Exact division by a small positive divisor; throws if a remainder is left.
  BigInt divexact_small(std::uint32_t m) const {
    BigInt r = *this;
    std::uint32_t rem = r.udiv_small_inplace(m);
    if (rem != 0) throw std::logic_error("BigInt: inexact small division");
    return r;
  }

  // Nonnegative residue modulo a small positive m.
  std::uint32_t mod_small(std::uint32_t m) const {
    if (m == 0) throw std::domain_error("BigInt: modulus zero");
    std::uint64_t rem = 0;
    for (std::size_t i = d_.size(); i-- > 0;) rem = ((rem << 32) | d_[i]) % m;
    if (sign_ < 0 && rem != 0) rem = m - rem;
    return static_cast<std::uint32_t>(rem);
  }

  static BigInt gcd(BigInt a, BigInt b) {
    a.sign_ = a.d_.empty() ? 0 : 1;
    b.sign_ = b.d_.empty() ? 0 : 1;
    while (!b.is_zero()) {
      BigInt q, r;
      divmod(a, b, q, r);
      a = b;
      b = r;
    }
    return a;
  }

  static BigInt pow(const BigInt& base, unsigned e) {
    BigInt r(1), b = base;
    while (e != 0) {
      if (e & 1u) r *= b;
      b *= b;
      e >>= 1;
    }
    return r;
  }

  // *this * 2^s, s >= 0.
  BigInt shl(unsigned s) const {
    if (sign_ == 0 || s == 0) return *this;
    BigInt r;
    r.sign_ = sign_;
    unsigned limbs = s / 32, bits = s % 32;
    r.d_.assign(limbs, 0);
    std::uint32_t carry = 0;
    for (std::uint32_t limb : d_) {
      if (bits == 0) {
        r.d_.push_back(limb);
      } else {
        r.d_.push_back((limb << bits) | carry);
        carry = static_cast<std::uint32_t>(static_cast<std::uint64_t>(limb) >> (32 - bits));
      }
    }
    if (bits != 0 && carry) r.d_.push_back(carry);
    r.trim();
    return r;
  }

  // *this / 2^s, truncated toward zero.
  BigInt shr(unsigned s) const {
    if (sign_ == 0 || s == 0) return *this;
    unsigned limbs = s / 32, bits = s % 32;
    BigInt r;
    if (limbs >= d_.size()) return r;
    r.d_.assign(d_.begin() + limbs, d_.end());
    if (bits != 0) {
      std::uint32_t carry = 0;
      for (std::size_t i = r.d_.size(); i-- > 0;) {
        std::uint32_t cur = r.d_[i];
        r.d_[i] = (cur >> bits) | carry;
        carry = static_cast<std::uint32_t>(static_cast<std::uint64_t>(cur) << (32 - bits));
      }
    }
    r.trim();
    if (!r.d_.empty()) r.sign_ = sign_;
    return r;
  }

  std::size_t bit_length() const {
    if (d_.empty()) return 0;
    std::uint32_t top = d_.back();
    std::size_t b = 0;
    while (top) {
      ++b;
      top >>= 1;
    }
    return (d_.size() - 1) * 32 + b;
  }

  std::string to_string() const {
    if (sign_ == 0) return "0";
    BigInt t = *this;
    std::string out;
    while (!t.d_.empty()) {
      std::uint32_t chunk = t.udiv_small_inplace(1000000000u);
      std::string part = std::to_string(chunk);
      if (!t.d_.empty()) part.insert(0, 9 - part.size(), '0');
      out.insert(0, part);
    }
    if (sign_ < 0) out.insert(0, 1, '-');
    return out;
  }

  // Nearest-double approximation (exact when the value fits in 53 bits).
  double to_double() const { return to_double_scaled(0); }

  // (*this) * 2^scale as a double, without intermediate overflow.
  double to_double_scaled(long scale) const {
    if (sign_ == 0) return 0.0;
    // Top ~96 bits as a double; relative error ~1e-16.
    double m = 0.0;
    std::size_t n = d_.size();
    std::size_t take = std::min<std::size_t>(n, 3);
    for (std::size_t i = 0; i < take; ++i)
      m = m * 4294967296.0 + static_cast<double>(d_[n - 1 - i]);
    if (sign_ < 0) m = -m;
    return std::ldexp(m, static_cast<int>(32 * (n - take) + scale));
  }


  // Exact conversion of an integral double.
  static BigInt from_double_integral(double v) {
    if (v != std::floor(v)) throw std::invalid_argument("BigInt: non-integral double");
    BigInt r;
    if (v == 0.0) return r;
    r.sign_ = v < 0 ? -1 : 1;
    double m = std::fabs(v);
    int ex = 0;
    m = std::frexp(m, &ex);        // m in [0.5, 1), v = m * 2^ex
    m = std::ldexp(m, 53);         // 53-bit integer
    ex -= 53;
    auto mant = static_cast<unsigned long long>(m);
    while (mant != 0) {
      r.d_.push_back(static_cast<std::uint32_t>(mant & 0xffffffffULL));
      mant >>= 32;
    }
    if (ex > 0) r = r.shl(static_cast<unsigned>(ex));
    else if (ex < 0) {
      for (int i = 0; i < -ex; ++i) {
        if (r.d_[0] & 1u) throw std::invalid_argument("BigInt: non-integral double");
        r.ushr1();
      }
    }
    r.trim();
    if (r.d_.empty()) r.sign_ = 0;
    return r;
  }

private:
  int sign_ = 0;
  std::vector<std::uint32_t> d_;

  void trim() {
    while (!d_.empty() && d_.back() == 0) d_.pop_back();
  }

  void ushr1() {
    std::uint32_t carry = 0;
    for (std::size_t i = d_.size(); i-- > 0;) {
      std::uint32_t cur = d_[i];
      d_[i] = (cur >> 1) | (carry << 31);
      carry = cur & 1u;
    }
    trim();
  }

  void umul_small_inplace(std::uint32_t m) {
    std::uint64_t carry = 0;
    for (auto& limb : d_) {
      std::uint64_t cur = static_cast<std::uint64_t>(limb) * m + carry;
      limb = static_cast<std::uint32_t>(cur & 0xffffffffULL);
      carry = cur >> 32;
    }
    if (carry) d_.push_back(static_cast<std::uint32_t>(carry));
    trim();
  }

  void uadd_small_inplace(std::uint32_t v) {
    std::uint64_t carry = v;
    for (std::size_t i = 0; carry && i < d_.size(); ++i) {
      std::uint64_t cur = d_[i] + carry;
      d_[i] = static_cast<std::uint32_t>(cur & 0xffffffffULL);
      carry = cur >> 32;
    }
    if (carry) d_.push_back(static_cast<std::uint32_t>(carry));
  }

  static int ucmp(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = a.size(); i-- > 0;)
      if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    return 0;
  }

  static std::vector<std::uint32_t> uadd(const std::vector<std::uint32_t>& a,
                                         const std::vector<std::uint32_t>& b) {
    const auto& big = a.size() >= b.size() ? a : b;
    const auto& small = a.size() >= b.size() ? b : a;
    std::vector<std::uint32_t> r(big.size() + 1, 0);
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < big.size(); ++i) {
      std::uint64_t cur = carry + big[i] + (i < small.size() ? small[i] : 0);
      r[i] = static_cast<std::uint32_t>(cur & 0xffffffffULL);
      carry = cur >> 32;
    }
    r[big.size()] = static_cast<std::uint32_t>(carry);
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
  }

  // a - b, requires a >= b.
  static std::vector<std::uint32_t> usub(const std::vector<std::uint32_t>& a,
                                         const std::vector<std::uint32_t>& b) {
    std::vector<std::uint32_t> r(a.size(), 0);
    std::int64_t borrow = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      std::int64_t cur = static_cast<std::int64_t>(a[i]) -
                         (i < b.size() ? static_cast<std::int64_t>(b[i]) : 0) - borrow;
      if (cur < 0) {
        cur += 1LL << 32;
        borrow = 1;
      } else {
        borrow = 0;
      }
      r[i] = static_cast<std::uint32_t>(cur);
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
  }

  static std::vector<std::uint32_t> umul(const std::vector<std::uint32_t>& a,
                                         const std::vector<std::uint32_t>& b) {
    std::vector<std::uint32_t> r(a.size() + b.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      std::uint64_t carry = 0;
      std::uint64_t ai = a[i];
      for (std::size_t j = 0; j < b.size(); ++j) {
        std::uint64_t cur = r[i + j] + ai * b[j] + carry;
        r[i + j] = static_cast<std::uint32_t>(cur & 0xffffffffULL);
        carry = cur >> 32;
      }
      r[i + b.size()] = static_cast<std::uint32_t>(carry);
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
  }

  // Knuth algorithm D on base-2^32 limbs; |u| >= |v|, v nonzero.
  static void udivmod(const std::vector<std::uint32_t>& u_in,
                      const std::vector<std::uint32_t>& v_in,
                      std::vector<std::uint32_t>& q, std::vector<std::uint32_t>& r) {
    const std::uint64_t B = 1ULL << 32;
    if (v_in.size() == 1) {
      q = u_in;
      std::uint64_t rem = 0;
      for (std::size_t i = q.size(); i-- > 0;) {
        std::uint64_t cur = (rem << 32) | q[i];
        q[i] = static_cast<std::uint32_t>(cur / v_in[0]);
        rem = cur % v_in[0];
      }
      while (!q.empty() && q.back() == 0) q.pop_back();
      r.clear();
      if (rem) r.push_back(static_cast<std::uint32_t>(rem));
      return;
    }

    int s = 0;
    for (std::uint32_t top = v_in.back(); !(top & 0x80000000u); top <<= 1) ++s;

    const std::size_t n = v_in.size(), m = u_in.size() - n;
    std::vector<std::uint32_t> v(n), un(u_in.size() + 1, 0);
    for (std::size_t i = n; i-- > 0;) {
      std::uint64_t hi = static_cast<std::uint64_t>(v_in[i]) << s;
      if (s && i > 0) hi |= static_cast<std::uint64_t>(v_in[i - 1]) >> (32 - s);
      v[i] = static_cast<std::uint32_t>(hi & 0xffffffffULL);
    }
    for (std::size_t i = u_in.size(); i-- > 0;) {
      std::uint64_t hi = static_cast<std::uint64_t>(u_in[i]) << s;
      if (s && i > 0) hi |= static_cast<std::uint64_t>(u_in[i - 1]) >> (32 - s);
      un[i] = static_cast<std::uint32_t>(hi & 0xffffffffULL);
    }
    if (s) un[u_in.size()] =
        static_cast<std::uint32_t>(static_cast<std::uint64_t>(u_in.back()) >> (32 - s));

    q.assign(m + 1, 0);
    for (std::size_t j = m + 1; j-- > 0;) {
      std::uint64_t num = (static_cast<std::uint64_t>(un[j + n]) << 32) | un[j + n - 1];
      std::uint64_t qhat = num / v[n - 1];
      std::uint64_t rhat = num % v[n - 1];
      while (qhat >= B ||
             qhat * v[n - 2] > ((rhat << 32) | un[j + n - 2])) {
        --qhat;
        rhat += v[n - 1];
        if (rhat >= B) break;
      }
      // Multiply and subtract.
      std::int64_t borrow = 0;
      std::uint64_t carry = 0;
      for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t p = qhat * v[i] + carry;
        carry = p >> 32;
        std::int64_t t = static_cast<std::int64_t>(un[i + j]) -
                         static_cast<std::int64_t>(p & 0xffffffffULL) - borrow;
        if (t < 0) {
          t += static_cast<std::int64_t>(B);
          borrow = 1;
        } else {
          borrow = 0;
        }
        un[i + j] = static_cast<std::uint32_t>(t);
      }
      std::int64_t t = static_cast<std::int64_t>(un[j + n]) -
                       static_cast<std::int64_t>(carry) - borrow;
      if (t < 0) {
        // qhat was one too large: add v back.
        t += static_cast<std::int64_t>(B);
        --qhat;
        std::uint64_t c2 = 0;
        for (std::size_t i = 0; i < n; ++i) {
          std::uint64_t cur = static_cast<std::uint64_t>(un[i + j]) + v[i] + c2;
          un[i + j] = static_cast<std::uint32_t>(cur & 0xffffffffULL);
          c2 = cur >> 32;
        }
        t += static_cast<std::int64_t>(c2);
        t &= static_cast<std::int64_t>(B) - 1;
      }
      un[j + n] = static_cast<std::uint32_t>(t);
      q[j] = static_cast<std::uint32_t>(qhat);
    }
    while (!q.empty() && q.back() == 0) q.pop_back();

    r.assign(un.begin(), un.begin() + static_cast<long>(n));
    if (s) {
      std::uint32_t carry = 0;
      for (std::size_t i = r.size(); i-- > 0;) {
        std::uint32_t cur = r[i];
        r[i] = (cur >> s) | carry;
        carry = static_cast<std::uint32_t>(static_cast<std::uint64_t>(cur) << (32 - s));
      }
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
  }
};

// Exact rational, always normalized: positive denominator, reduced by gcd.
class Rat {
public:
  Rat() : num_(0), den_(1) {}
  Rat(BigInt n) : num_(std::move(n)), den_(1) {}
  Rat(long long n) : num_(n), den_(1) {}
  Rat(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_integer() const { return den_ == BigInt(1); }

  friend Rat operator+(const Rat& a, const Rat& b) {
    return Rat(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Rat operator-(const Rat& a, const Rat& b) {
    return Rat(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Rat operator*(const Rat& a, const Rat& b) {
    return Rat(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend Rat operator/(const Rat& a, const Rat& b) {
    if (b.is_zero()) throw std::domain_error("Rat: division by zero");
    return Rat(a.num_ * b.den_, a.den_ * b.num_);
  }
  Rat operator-() const {
    Rat r = *this;
    r.num_ = -r.num_;
    return r;
  }
  Rat& operator+=(const Rat& o) { return *this = *this + o; }
  Rat& operator-=(const Rat& o) { return *this = *this - o; }

  friend bool operator==(const Rat& a, const Rat& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }

  std::string to_string() const {
    if (is_integer()) return num_.to_string();
    return num_.to_string() + "/" + den_.to_string();
  }

  double to_double() const { return num_.to_double() / den_.to_double(); }

private:
  BigInt num_, den_;

  void normalize() {
    if (den_.is_zero()) throw std::domain_error("Rat: zero denominator");
    if (den_.is_negative()) {
      num_ = -num_;
      den_ = -den_;
    }
    if (num_.is_zero()) {
      den_ = BigInt(1);
      return;
    }
    BigInt g = BigInt::gcd(num_, den_);
    if (g != BigInt(1)) {
      num_ = num_ / g;
      den_ = den_ / g;
    }
  }
};

}  // namespace fusionk
