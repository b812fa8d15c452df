#pragma once

// Exact-integer oracle for the structure constants with a closed form, plus
// the obstruction that rules out the alternative conjugation structure.
//
// With A = (b3-c3)^2, B = (b3-c3)(b3+c3), C = (b3+c3)(b3-c3), D = (b3+c3)^2
// one has
//   b3 c3 = ((D-A)+(B-C))/4,   c3 b3 = ((D-A)-(B-C))/4,
//   b3^2  = ((D+A)+(B+C))/4,   c3^2  = ((D+A)-(B+C))/4,
// and the four left-hand sides expand over V11 with coefficients driven by
// the tribonacci half-split f_j, g_j. The oracle computes both routes in
// exact rationals and insists they agree; every halving step is checked for
// integrality rather than assumed.

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "fusionk/bigint.hpp"
#include "fusionk/fusion_ring.hpp"
#include "fusionk/graphs.hpp"
#include "fusionk/intpoly.hpp"

namespace fusionk {

// Exact rational coefficient vector over the frozen V11 order.
struct EvenVector {
  int k = 0;
  std::vector<Rat> coef;  // size 2k+6, order b3 b1 c3 c1 a_{4k+2} ... a0

  explicit EvenVector(int kk = 0) : k(kk), coef(static_cast<std::size_t>(2 * kk + 6)) {}

  Rat& at_a(int two_j) { return coef[static_cast<std::size_t>(2 * k + 5 - two_j / 2)]; }
  Rat& b3() { return coef[0]; }
  Rat& b1() { return coef[1]; }
  Rat& c3() { return coef[2]; }
  Rat& c1() { return coef[3]; }
  const Rat& operator[](std::size_t i) const { return coef[i]; }

  friend EvenVector operator+(const EvenVector& a, const EvenVector& b) {
    EvenVector r(a.k);
    for (std::size_t i = 0; i < r.coef.size(); ++i) r.coef[i] = a.coef[i] + b.coef[i];
    return r;
  }
  friend EvenVector operator-(const EvenVector& a, const EvenVector& b) {
    EvenVector r(a.k);
    for (std::size_t i = 0; i < r.coef.size(); ++i) r.coef[i] = a.coef[i] - b.coef[i];
    return r;
  }
  EvenVector scaled(const Rat& s) const {
    EvenVector r(k);
    for (std::size_t i = 0; i < r.coef.size(); ++i) r.coef[i] = coef[i] * s;
    return r;
  }
  friend bool operator==(const EvenVector& a, const EvenVector& b) { return a.coef == b.coef; }

  bool all_nonnegative_integers() const {
    for (const Rat& r : coef)
      if (!r.is_integer() || r.num().is_negative()) return false;
    return true;
  }
};

struct ABCDVectors {
  EvenVector A, B, C, D;
};

// The four quadratic expressions in b3 +- c3. The alternating block in A is
// -2(a0 - a6 + a8 - a14 + a16 - ...), i.e. +2 at indices 2j with j = 0 mod 4
// and -2 at j = 3 mod 4, negated.
inline ABCDVectors abcd(int k) {
  if (k < 0) throw std::invalid_argument("abcd: negative k");
  ABCDVectors r{EvenVector(k), EvenVector(k), EvenVector(k), EvenVector(k)};
  for (int j = 0; j <= 2 * k + 1; ++j) {
    if (j % 4 == 0) r.A.at_a(2 * j) = Rat(-2);
    if (j % 4 == 3) r.A.at_a(2 * j) = Rat(2);
  }
  if (k % 2 == 0) {
    r.A.b3() = Rat(1);
    r.A.c3() = Rat(1);
    r.B.b3() = Rat(-1);
    r.B.c3() = Rat(1);
    r.C = r.B;
  } else {
    r.A.b1() = Rat(-1);
    r.A.c1() = Rat(-1);
    r.B.b1() = Rat(1);
    r.B.c1() = Rat(-1);
    r.C.b1() = Rat(-1);
    r.C.c1() = Rat(1);
  }
  SeqTable seq = SeqTable::up_to(2 * k + 2);
  for (int j = 0; j <= 2 * k + 1; ++j)
    r.D.at_a(2 * j) = Rat(seq.c[static_cast<std::size_t>(j)] * BigInt(2));
  r.D.b1() = r.D.c1() = Rat(seq.c[static_cast<std::size_t>(2 * k + 2)]);
  r.D.b3() = r.D.c3() = Rat(seq.c[static_cast<std::size_t>(2 * k)]);
  return r;
}

struct B3C3Table {
  EvenVector b3c3, c3b3, b3b3, c3c3;
};

// The closed-form expansions of b3 c3, c3 b3, b3^2, c3^2, parity-split in k.
// Every coefficient is verified to be a nonnegative integer, and the whole
// table is cross-checked against the ABCD combination route.
inline B3C3Table b3g3_table(int k) {
  if (k < 0) throw std::invalid_argument("b3g3_table: negative k");
  SeqTable seq = SeqTable::up_to(2 * k + 2);
  const Rat half(BigInt(1), BigInt(2));
  auto f = [&](int j) { return Rat(seq.f[static_cast<std::size_t>(j)]); };
  auto g = [&](int j) { return Rat(seq.g[static_cast<std::size_t>(j)]); };

  B3C3Table t{EvenVector(k), EvenVector(k), EvenVector(k), EvenVector(k)};
  for (int j = 0; j <= 2 * k + 1; ++j) {
    t.b3c3.at_a(2 * j) = f(j);
    t.c3b3.at_a(2 * j) = f(j);
    t.b3b3.at_a(2 * j) = g(j);
    t.c3c3.at_a(2 * j) = g(j);
  }
  if (k % 2 == 0) {
    t.b3c3.b1() = t.b3c3.c1() = f(2 * k + 2) * half;
    t.b3c3.b3() = t.b3c3.c3() = (f(2 * k) - Rat(1)) * half;
    t.c3b3 = t.b3c3;
    t.b3b3.b1() = t.b3b3.c1() = g(2 * k + 2) * half;
    t.b3b3.b3() = g(2 * k) * half;
    t.b3b3.c3() = (g(2 * k) + Rat(2)) * half;
    t.c3c3.b1() = t.c3c3.c1() = g(2 * k + 2) * half;
    t.c3c3.b3() = (g(2 * k) + Rat(2)) * half;
    t.c3c3.c3() = g(2 * k) * half;
  } else {
    t.b3c3.b1() = (f(2 * k + 2) + Rat(1)) * half;
    t.b3c3.c1() = (f(2 * k + 2) - Rat(1)) * half;
    t.b3c3.b3() = t.b3c3.c3() = f(2 * k) * half;
    t.c3b3.b1() = (f(2 * k + 2) - Rat(1)) * half;
    t.c3b3.c1() = (f(2 * k + 2) + Rat(1)) * half;
    t.c3b3.b3() = t.c3b3.c3() = f(2 * k) * half;
    t.b3b3.b1() = t.b3b3.c1() = g(2 * k + 2) * half;
    t.b3b3.b3() = t.b3b3.c3() = g(2 * k) * half;
    t.c3c3 = t.b3b3;
  }
  for (const EvenVector* v : {&t.b3c3, &t.c3b3, &t.b3b3, &t.c3c3})
    if (!v->all_nonnegative_integers())
      throw std::logic_error("b3g3_table: a halving step left a non-integer coefficient");

  ABCDVectors q = abcd(k);
  const Rat quarter(BigInt(1), BigInt(4));
  if (t.b3c3 != (q.D - q.A + q.B - q.C).scaled(quarter) ||
      t.c3b3 != (q.D - q.A - q.B + q.C).scaled(quarter) ||
      t.b3b3 != (q.D + q.A + q.B + q.C).scaled(quarter) ||
      t.c3c3 != (q.D + q.A - q.B - q.C).scaled(quarter))
    throw std::logic_error("b3g3_table: parity-split route and ABCD route disagree");
  return t;
}

// (<f^2,f>, <fg,f>, <fg,g>, <g^2,g>) = (d_{2k-1}, d_{2k}, d_{2k+1}, d_{2k+2}).
inline std::array<BigInt, 4> fg_table(int k) {
  if (k < 0) throw std::invalid_argument("fg_table: negative k");
  return {seq_d(2 * k - 1), seq_d(2 * k), seq_d(2 * k + 1), seq_d(2 * k + 2)};
}

// (<f b2*, b2*>, <f b2*, c2*>, <f c2*, c2*>, <g b2*, b2*>, <g b2*, c2*>,
//  <g c2*, c2*>), with the parity split on the g rows.
inline std::array<BigInt, 6> mixed_table(int k) {
  if (k < 0) throw std::invalid_argument("mixed_table: negative k");
  SeqTable seq = SeqTable::up_to(2 * k + 2);
  const BigInt& f2k = seq.f[static_cast<std::size_t>(2 * k)];
  const BigInt& f2k1 = seq.f[static_cast<std::size_t>(2 * k + 1)];
  const BigInt& f2k2 = seq.f[static_cast<std::size_t>(2 * k + 2)];
  const BigInt& g2k = seq.g[static_cast<std::size_t>(2 * k)];
  const BigInt& g2k1 = seq.g[static_cast<std::size_t>(2 * k + 1)];
  const BigInt& g2k2 = seq.g[static_cast<std::size_t>(2 * k + 2)];
  BigInt fb = g2k2 + g2k1;
  BigInt fx = f2k2 + f2k1;
  BigInt gb = f2k1 + f2k2 + f2k2 + f2k + BigInt(k % 2 == 0 ? -1 : 0);
  // k even: <g b2*, c2*> = <a_{n-1} + 2(b1+c1) + b3 + c3, b3^2> picks up
  // g_{2k}/2 at b3 and (g_{2k}+2)/2 at c3, so the constant correction is +1
  BigInt gx = g2k1 + g2k2 + g2k2 + g2k + BigInt(k % 2 == 0 ? 1 : 0);
  return {fb, fx, fb, gb, gx, gb};
}

// Coefficient of b3 (k even: inside b3 c3) or b1 (k odd: inside b3^2) that
// the eliminated conjugation structure would force; it is never an integer,
// because c_{2j} = 1 mod 4 at even j.
inline Rat case2_obstruction(int k) {
  if (k < 0) throw std::invalid_argument("case2_obstruction: negative k");
  BigInt c = k % 2 == 0 ? seq_c(2 * k) : seq_c(2 * k + 2);
  Rat witness(c + BigInt(1), BigInt(4));
  if (witness.is_integer())
    throw std::logic_error("case2_obstruction: witness " + witness.to_string() +
                           " is an integer at k = " + std::to_string(k));
  return witness;
}

// b3 (a1 a1*)^3 contracted through the table must equal
// 5 b3 + 10 b1 + 6 a_{n-1} + 6 c1 + a_{n-3} + c3 (indices folded at k = 0).
inline CheckResult beta3_power_check(const FusionTable& t) {
  const int k = t.k();
  const int a1 = t.index_of("a1"), a1s = t.index_of("a1*");
  std::vector<long long> v(static_cast<std::size_t>(t.size()), 0);
  v[static_cast<std::size_t>(t.index_of("b3"))] = 1;
  for (int round = 0; round < 3; ++round) {
    for (int gen : {a1, a1s}) {
      std::vector<long long> next(v.size(), 0);
      for (int x = 0; x < t.size(); ++x) {
        if (v[static_cast<std::size_t>(x)] == 0) continue;
        if (!t.compatible(x, gen)) return {false, "beta3_power: grade breakdown"};
        for (const auto& [z, n] : t.expansion(x, gen))
          next[static_cast<std::size_t>(z)] += v[static_cast<std::size_t>(x)] * n;
      }
      v = std::move(next);
    }
  }
  std::vector<long long> expected(v.size(), 0);
  auto bump = [&](const std::string& l, long long c) {
    expected[static_cast<std::size_t>(t.index_of(l))] += c;
  };
  bump("b3", 5);
  bump("b1", 10);
  bump("c1", 6);
  bump("c3", 1);
  bump("a" + std::to_string(4 * k + 2), 6);
  bump("a" + std::to_string(std::max(4 * k, 0)), 1);
  if (v != expected) {
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i] != expected[i])
        return {false, "beta3_power: coefficient at " + t.element(static_cast<int>(i)).label +
                           " is " + std::to_string(v[i]) + ", expected " +
                           std::to_string(expected[i])};
  }
  return {};
}

// ---------------------------------------------------------------------------
// Oracle agreement: every coefficient the closed forms produce must match the
// model table exactly.

struct FamilyResult {
  std::string family;
  int checked = 0;
  std::vector<std::string> failures;
};

struct CrosscheckReport {
  std::vector<FamilyResult> families;
  bool ok() const {
    for (const auto& f : families)
      if (!f.failures.empty()) return false;
    return true;
  }
  std::string summary() const {
    std::string s;
    for (const auto& f : families) {
      s += f.family + ": " + std::to_string(f.checked) + " checked, " +
           (f.failures.empty() ? "ok" : f.failures.front()) + "\n";
    }
    return s;
  }
};

inline CrosscheckReport crosscheck(const FusionTable& t) {
  const int k = t.k();
  CrosscheckReport rep;
  std::vector<std::string> v11 = v11_labels(k);

  {
    FamilyResult fam{"b3g3", 0, {}};
    B3C3Table oracle = b3g3_table(k);
    const int b3 = t.index_of("b3"), c3 = t.index_of("c3");
    auto check_product = [&](int x, int y, const EvenVector& ev, const std::string& name) {
      for (std::size_t i = 0; i < v11.size(); ++i) {
        ++fam.checked;
        long long got = t.coeff(x, y, t.index_of(v11[i]));
        if (Rat(BigInt(got)) != ev[i])
          fam.failures.push_back(name + " at " + v11[i] + ": table " + std::to_string(got) +
                                 ", oracle " + ev[i].to_string());
      }
    };
    check_product(b3, c3, oracle.b3c3, "b3.c3");
    check_product(c3, b3, oracle.c3b3, "c3.b3");
    check_product(b3, b3, oracle.b3b3, "b3.b3");
    check_product(c3, c3, oracle.c3c3, "c3.c3");
    rep.families.push_back(std::move(fam));
  }
  {
    FamilyResult fam{"abcd", 0, {}};
    ABCDVectors oracle = abcd(k);
    const int b3 = t.index_of("b3"), c3 = t.index_of("c3");
    for (std::size_t i = 0; i < v11.size(); ++i) {
      int z = t.index_of(v11[i]);
      long long pbb = t.coeff(b3, b3, z), pbc = t.coeff(b3, c3, z), pcb = t.coeff(c3, b3, z),
                pcc = t.coeff(c3, c3, z);
      struct Row {
        const EvenVector* v;
        long long combo;
        const char* name;
      } rows[] = {{&oracle.A, pbb - pbc - pcb + pcc, "A"},
                  {&oracle.B, pbb + pbc - pcb - pcc, "B"},
                  {&oracle.C, pbb - pbc + pcb - pcc, "C"},
                  {&oracle.D, pbb + pbc + pcb + pcc, "D"}};
      for (const Row& r : rows) {
        ++fam.checked;
        if (Rat(BigInt(r.combo)) != (*r.v)[i])
          fam.failures.push_back(std::string(r.name) + " at " + v11[i] + ": table " +
                                 std::to_string(r.combo) + ", oracle " + (*r.v)[i].to_string());
      }
    }
    rep.families.push_back(std::move(fam));
  }
  {
    FamilyResult fam{"fg", 0, {}};
    auto oracle = fg_table(k);
    const int f = t.index_of("f"), g = t.index_of("g");
    const std::array<std::array<int, 3>, 4> triples{{{f, f, f}, {f, g, f}, {f, g, g}, {g, g, g}}};
    for (std::size_t i = 0; i < triples.size(); ++i) {
      ++fam.checked;
      long long got = t.coeff(triples[i][0], triples[i][1], triples[i][2]);
      if (BigInt(got) != oracle[i])
        fam.failures.push_back("fg value " + std::to_string(i) + ": table " + std::to_string(got) +
                               ", oracle " + oracle[i].to_string());
    }
    rep.families.push_back(std::move(fam));
  }
  {
    FamilyResult fam{"mixed", 0, {}};
    auto oracle = mixed_table(k);
    const int f = t.index_of("f"), g = t.index_of("g");
    const int b2s = t.index_of("b2*"), c2s = t.index_of("c2*");
    const std::array<std::array<int, 3>, 6> triples{{{f, b2s, b2s},
                                                     {f, b2s, c2s},
                                                     {f, c2s, c2s},
                                                     {g, b2s, b2s},
                                                     {g, b2s, c2s},
                                                     {g, c2s, c2s}}};
    for (std::size_t i = 0; i < triples.size(); ++i) {
      ++fam.checked;
      long long got = t.coeff(triples[i][0], triples[i][1], triples[i][2]);
      if (BigInt(got) != oracle[i])
        fam.failures.push_back("mixed value " + std::to_string(i) + ": table " +
                               std::to_string(got) + ", oracle " + oracle[i].to_string());
    }
    rep.families.push_back(std::move(fam));
  }
  {
    FamilyResult fam{"case2", 1, {}};
    try {
      case2_obstruction(k);
    } catch (const std::exception& e) {
      fam.failures.push_back(e.what());
    }
    rep.families.push_back(std::move(fam));
  }
  {
    FamilyResult fam{"beta3_power", 1, {}};
    CheckResult r = beta3_power_check(t);
    if (!r.ok) fam.failures.push_back(r.witness);
    rep.families.push_back(std::move(fam));
  }
  return rep;
}

}  // namespace fusionk
