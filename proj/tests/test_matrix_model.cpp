#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "fusionk/closed_form.hpp"
#include "fusionk/matrix_model.hpp"

using namespace fusionk;

namespace {

double entry_gap(const ModelMatrix& a, const ModelMatrix& b) { return (a - b).max_abs(); }

}  // namespace

TEST_CASE("element count, identity element, f + g") {
  for (int k = 0; k <= 4; ++k) {
    Model m = build_model(k);
    CHECK(m.elems.size() == static_cast<std::size_t>(8 * k + 18));
    // a0 is the identity matrix
    const ModelMatrix& a0 = m.mat("a0");
    CHECK(to_double(a0.blk[0]) == doctest::Approx(1.0));
    CHECK(to_double(a0.blk[3]) == doctest::Approx(1.0));
    CHECK(to_double(a0.blk[1]) == doctest::Approx(0.0));
    for (DD v : a0.tail) CHECK(to_double(v) == doctest::Approx(1.0));
    // f + g = R_{n+1}(A)
    const int n = 4 * k + 3;
    auto rv = fusionk::detail::chebyshev_values(m.sqrt_t, n + 1);
    ModelMatrix sum = m.mat("f") + m.mat("g");
    ModelMatrix rn1 = ModelMatrix::diagonal(rv[static_cast<std::size_t>(n + 1)]);
    CHECK(entry_gap(sum, rn1) < 1e-25);
    // b3 - c3 = sqrt(2k+3)(e12 - e21)
    ModelMatrix diff = m.mat("b3") - m.mat("c3");
    double s = std::sqrt(2.0 * k + 3.0);
    CHECK(to_double(diff.blk[1]) == doctest::Approx(s));
    CHECK(to_double(diff.blk[2]) == doctest::Approx(-s));
    CHECK(to_double(diff.blk[0]) == doctest::Approx(0.0));
    for (DD v : diff.tail) CHECK(to_double(v) == doctest::Approx(0.0));
  }
}

TEST_CASE("conjugation is transposition with reversed grade") {
  Model m = build_model(1);
  FusionTable skel = FusionTable::skeleton(1);
  for (int i = 0; i < skel.size(); ++i) {
    const ModelElement& e = m.elems[static_cast<std::size_t>(i)];
    const ModelElement& c = m.elems[static_cast<std::size_t>(skel.element(i).conjugate)];
    CHECK(entry_gap(e.mat.transposed(), c.mat) == 0.0);
    CHECK(c.grade == e.grade.reversed());
    // involution
    CHECK(skel.element(skel.element(i).conjugate).conjugate == i);
  }
}

TEST_CASE("the trace is tracial on random span elements") {
  Model m = build_model(2);
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  auto random_span = [&]() {
    ModelMatrix acc;
    acc.tail.assign(m.trace.mu.size() - 2, DD());
    for (const auto& e : m.elems)
      if (e.grade == Grade{Coeff::N, Coeff::N}) acc = acc + e.mat.scaled(DD(dist(rng)));
    return acc;
  };
  for (int trial = 0; trial < 20; ++trial) {
    ModelMatrix b = random_span(), c = random_span();
    double lhs = to_double(m.trace.trace(b * c));
    double rhs = to_double(m.trace.trace(c * b));
    CHECK(std::fabs(lhs - rhs) < 1e-8);
  }
}

TEST_CASE("orthonormality of the graded basis") {
  for (int k = 0; k <= 5; ++k) {
    Model m = build_model(k);
    OrthoResult r = orthonormality_check(m);
    INFO(r.pair, " deviates by ", r.worst);
    CHECK(r.ok);
    CHECK(r.worst < 1e-20);  // double-double headroom
    // named pairs
    CHECK(to_double(m.trace.inner(m.mat("a0"), m.mat("a0"))) == doctest::Approx(1.0));
    CHECK(std::fabs(to_double(m.trace.inner(m.mat("b1"), m.mat("c1")))) < 1e-20);
    CHECK(std::fabs(to_double(m.trace.inner(m.mat("f"), m.mat("g")))) < 1e-20);
  }
}

TEST_CASE("span dimensions via Gram-matrix rank") {
  for (int k = 0; k <= 3; ++k) {
    Model m = build_model(k);
    for (Grade g : {Grade{Coeff::N, Coeff::N}, Grade{Coeff::N, Coeff::M},
                    Grade{Coeff::M, Coeff::N}, Grade{Coeff::M, Coeff::M}}) {
      std::vector<const ModelMatrix*> mats;
      for (const auto& e : m.elems)
        if (e.grade == g) mats.push_back(&e.mat);
      DMat gram(mats.size(), std::vector<double>(mats.size()));
      for (std::size_t i = 0; i < mats.size(); ++i)
        for (std::size_t j = 0; j < mats.size(); ++j)
          gram[i][j] = to_double(m.trace.inner(*mats[i], *mats[j]));
      EigenSystem es = jacobi_eigen(gram);
      int rank = 0;
      for (double v : es.values)
        if (std::fabs(v) > 1e-6) ++rank;
      int expected = g == Grade{Coeff::N, Coeff::N} ? 2 * k + 6 : 2 * k + 4;
      CHECK(rank == expected);
    }
  }
}

TEST_CASE("fusion table spot values") {
  Model m0 = build_model(0);
  FusionTable t0 = fusion_table(m0);
  CHECK(t0.coeff(t0.index_of("a1"), t0.index_of("a1*"), t0.index_of("a0")) == 1);
  CHECK(t0.coeff(t0.index_of("g"), t0.index_of("g"), t0.index_of("g")) == 2);
  CHECK(t0.coeff(t0.index_of("b3"), t0.index_of("c3"), t0.index_of("a0")) == 1);
  CHECK(t0.coeff(t0.index_of("b3"), t0.index_of("b3"), t0.index_of("c3")) == 1);
  // b3.b3 = c3 exactly: no other coefficient
  CHECK(t0.expansion(t0.index_of("b3"), t0.index_of("b3")).size() == 1);

  Model m1 = build_model(1);
  FusionTable t1 = fusion_table(m1);
  auto d = fg_table(1);
  CHECK(BigInt(t1.coeff(t1.index_of("f"), t1.index_of("f"), t1.index_of("f"))) == d[0]);
  CHECK(BigInt(t1.coeff(t1.index_of("f"), t1.index_of("g"), t1.index_of("f"))) == d[1]);
  CHECK(BigInt(t1.coeff(t1.index_of("f"), t1.index_of("g"), t1.index_of("g"))) == d[2]);
  CHECK(BigInt(t1.coeff(t1.index_of("g"), t1.index_of("g"), t1.index_of("g"))) == d[3]);
}

TEST_CASE("graph recovery from right multiplication by the generator") {
  for (int k = 0; k <= 5; ++k) {
    FusionTable t = fusion_table(build_model(k));
    CheckResult r = graph_recovery(t);
    INFO(r.witness);
    CHECK(r.ok);
  }
  // named products
  FusionTable t0 = fusion_table(build_model(0));
  CHECK(t0.coeff(t0.index_of("b3"), t0.index_of("a1"), t0.index_of("b2")) == 1);
  CHECK(t0.expansion(t0.index_of("b3"), t0.index_of("a1")).size() == 1);
  CHECK(t0.coeff(t0.index_of("f"), t0.index_of("a1*"), t0.index_of("a3*")) == 1);
  CHECK(t0.expansion(t0.index_of("f"), t0.index_of("a1*")).size() == 1);
  FusionTable t1 = fusion_table(build_model(1));
  // g.a1* = a7* + b2* + c2*
  CHECK(t1.coeff(t1.index_of("g"), t1.index_of("a1*"), t1.index_of("a7*")) == 1);
  CHECK(t1.coeff(t1.index_of("g"), t1.index_of("a1*"), t1.index_of("b2*")) == 1);
  CHECK(t1.coeff(t1.index_of("g"), t1.index_of("a1*"), t1.index_of("c2*")) == 1);
  CHECK(t1.expansion(t1.index_of("g"), t1.index_of("a1*")).size() == 3);
}

TEST_CASE("xi pairings and their closed forms through q_k") {
  for (int k = 0; k <= 5; ++k) {
    Model m = build_model(k);
    CheckResult r = xi_identities(m);
    INFO(r.witness);
    CHECK(r.ok);
    // swapping xi for eta must break the pairing direction
    EigvecBasis basis = eigvec_basis(k);
    ModelMatrix eta = fusionk::detail::v11_combo(m, {-1, 1, 1, -1});  // (b1-c1)-(b3-c3)
    ModelMatrix y1 = fusionk::detail::v11_combo(m, basis.y1);
    double wrong = entry_gap(eta * eta.transposed(), y1 + y1);
    CHECK(wrong > 1e-3);
  }
}

TEST_CASE("trace pairings match exact walk counts") {
  for (int k = 0; k <= 5; ++k) {
    Model m = build_model(k);
    CheckResult r = trace_pairing_checks(m);
    INFO(r.witness);
    CHECK(r.ok);
  }
  // mu(I) = 1 = <a0, a0>; mu(R_2(A)^2) = 1 at k = 0
  Model m0 = build_model(0);
  auto rv = fusionk::detail::chebyshev_values(m0.sqrt_t, 2);
  ModelMatrix r2 = ModelMatrix::diagonal(rv[2]);
  CHECK(to_double(m0.trace.trace(r2 * r2)) == doctest::Approx(1.0));
  ModelMatrix id = ModelMatrix::diagonal(rv[0]);
  CHECK(to_double(m0.trace.trace(id)) == doctest::Approx(1.0));
}

TEST_CASE("a corrupted spectrum aborts table extraction loudly") {
  Model m = build_model(0);
  m.trace.mu[2] = m.trace.mu[2] + DD(1e-3);  // break the trace state
  CHECK_THROWS_AS(fusion_table(m), std::runtime_error);
}
