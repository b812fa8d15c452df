#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fusionk/bigint.hpp"
#include "fusionk/ddouble.hpp"

using fusionk::BigInt;
using fusionk::DD;
using fusionk::Rat;

TEST_CASE("small values and string round trip") {
  CHECK(BigInt(0).to_string() == "0");
  CHECK(BigInt(-1).to_string() == "-1");
  CHECK(BigInt(123456789012345678LL).to_string() == "123456789012345678");
  CHECK(BigInt::from_string("-987654321987654321987654321").to_string() ==
        "-987654321987654321987654321");
  CHECK(BigInt::from_string("000042") == BigInt(42));
  CHECK_THROWS(BigInt::from_string("12x"));
}

TEST_CASE("arithmetic agrees with int128 on random operands") {
  std::mt19937_64 rng(12345);
  std::uniform_int_distribution<long long> dist(-1000000000000LL, 1000000000000LL);
  for (int i = 0; i < 2000; ++i) {
    long long a = dist(rng), b = dist(rng);
    __int128 p = static_cast<__int128>(a) * b;
    BigInt pa = BigInt(a) * BigInt(b);
    __int128 chk = 0;
    bool neg = pa.is_negative();
    for (char c : pa.to_string())
      if (c != '-') chk = chk * 10 + (c - '0');
    if (neg) chk = -chk;
    CHECK(chk == p);
    CHECK(BigInt(a) + BigInt(b) == BigInt(a + b));
    CHECK(BigInt(a) - BigInt(b) == BigInt(a - b));
  }
}

TEST_CASE("divmod is truncated division with |r| < |b|") {
  std::mt19937_64 rng(777);
  std::uniform_int_distribution<long long> dist(-4000000000000000LL, 4000000000000000LL);
  for (int i = 0; i < 2000; ++i) {
    long long a = dist(rng), b = dist(rng) / 1000000 + 1;
    BigInt q, r;
    BigInt::divmod(BigInt(a), BigInt(b), q, r);
    CHECK(q == BigInt(a / b));
    CHECK(r == BigInt(a % b));
  }
}

TEST_CASE("divmod on wide operands reconstructs the dividend") {
  std::mt19937_64 rng(31337);
  auto random_big = [&](int limbs) {
    BigInt v(0);
    for (int i = 0; i < limbs; ++i)
      v = v * BigInt(1LL << 32) + BigInt(static_cast<long long>(rng() & 0xffffffffULL));
    return v;
  };
  for (int i = 0; i < 200; ++i) {
    BigInt a = random_big(1 + static_cast<int>(rng() % 8));
    BigInt b = random_big(1 + static_cast<int>(rng() % 4));
    if (b.is_zero()) continue;
    if (rng() & 1) a = -a;
    if (rng() & 1) b = -b;
    BigInt q, r;
    BigInt::divmod(a, b, q, r);
    CHECK(q * b + r == a);
    BigInt ra = r.is_negative() ? -r : r;
    BigInt rb = b.is_negative() ? -b : b;
    CHECK(ra < rb);
    if (!r.is_zero()) CHECK(r.is_negative() == a.is_negative());
  }
}

TEST_CASE("shifts, powers, gcd") {
  BigInt one(1);
  CHECK(one.shl(100).shr(100) == one);
  CHECK(one.shl(100).to_string() == "1267650600228229401496703205376");
  CHECK(BigInt::pow(BigInt(3), 40) == BigInt::from_string("12157665459056928801"));
  CHECK(BigInt::gcd(BigInt(462), BigInt(1071)) == BigInt(21));
  CHECK(BigInt::gcd(BigInt::pow(BigInt(2), 90) * BigInt(9), BigInt::pow(BigInt(2), 80) * BigInt(6)) ==
        BigInt::pow(BigInt(2), 80) * BigInt(6));
  CHECK(BigInt::gcd(BigInt::pow(BigInt(2), 90) * BigInt(9), BigInt::pow(BigInt(2), 80) * BigInt(15)) ==
        BigInt::pow(BigInt(2), 80) * BigInt(3));
}

TEST_CASE("mod_small and exact small division") {
  CHECK(BigInt::from_string("123456789123456789123").mod_small(4) == 3);
  CHECK(BigInt(-7).mod_small(4) == 1);
  CHECK(BigInt(84).divexact_small(2) == BigInt(42));
  CHECK_THROWS(BigInt(85).divexact_small(2));
}

TEST_CASE("double conversions") {
  CHECK(BigInt(1).shl(200).to_double() == doctest::Approx(std::ldexp(1.0, 200)));
  CHECK(BigInt::from_double_integral(-12345678.0) == BigInt(-12345678));
  DD x = fusionk::dd_from_bigint(BigInt::from_string("340282366920938463463374607431768211456"));
  CHECK(to_double(x) == doctest::Approx(std::ldexp(1.0, 128)));
  // scaled conversion of a huge integer down to order one
  BigInt big = BigInt::pow(BigInt(3), 500);
  DD y = fusionk::dd_from_bigint_scaled(big, -792);  // 3^500 ~ 2^792.48
  CHECK(to_double(y) == doctest::Approx(1.398).epsilon(1e-3));
}

TEST_CASE("double-double basics") {
  DD a = DD(1.0) / DD(3.0);
  DD b = a * DD(3.0) - DD(1.0);
  CHECK(std::fabs(to_double(b)) < 1e-31);
  DD s = fusionk::dd_sqrt(DD(2.0));
  DD t = s * s - DD(2.0);
  CHECK(std::fabs(to_double(t)) < 1e-30);
}

TEST_CASE("rationals normalize and detect integers") {
  Rat r(BigInt(6), BigInt(-4));
  CHECK(r.to_string() == "-3/2");
  CHECK(!r.is_integer());
  CHECK((r + Rat(BigInt(3), BigInt(2))).is_zero());
  Rat q(BigInt(8), BigInt(4));
  CHECK(q.is_integer());
  CHECK(q.num() == BigInt(2));
  CHECK((Rat(BigInt(1), BigInt(2)) * Rat(BigInt(2), BigInt(3))).to_string() == "1/3");
  CHECK_THROWS(Rat(BigInt(1), BigInt(0)));
}
