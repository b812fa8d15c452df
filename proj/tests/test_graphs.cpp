#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "fusionk/graphs.hpp"
#include "fusionk/spectral.hpp"

using namespace fusionk;

namespace {

std::size_t delta_index(const BipartiteGraph& g, const std::string& label) {
  for (std::size_t i = 0; i < g.even_labels.size(); ++i)
    if (g.even_labels[i] == label) return i;
  for (std::size_t i = 0; i < g.odd_labels.size(); ++i)
    if (g.odd_labels[i] == label) return g.even_labels.size() + i;
  throw std::out_of_range("no vertex " + label);
}

std::vector<long long> mat_apply(const IMat& m, const std::vector<long long>& v) {
  std::vector<long long> r(m.size(), 0);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) r[i] += m[i][j] * v[j];
  return r;
}

std::vector<long long> unit(std::size_t n, std::size_t i) {
  std::vector<long long> v(n, 0);
  v[i] = 1;
  return v;
}

}  // namespace

TEST_CASE("Gamma_k shape and the displayed adjacency rows") {
  for (int k = 0; k <= 6; ++k) {
    BipartiteGraph g = build_gamma(k);
    CHECK(g.even_labels.size() == static_cast<std::size_t>(2 * k + 6));
    CHECK(g.odd_labels.size() == static_cast<std::size_t>(2 * k + 4));
    CHECK(g.is_connected());
    CHECK(g.edge_count() == 4 * k + 9);
    // b2 column touches exactly b3 and b1
    long long colsum = 0;
    for (std::size_t i = 0; i < g.even_labels.size(); ++i) colsum += g.adj[i][g.odd_index("b2")];
    CHECK(colsum == 2);
    for (long long e : g.adj[g.even_index("b3")]) CHECK((e == 0 || e == 1));
  }
  BipartiteGraph g0 = build_gamma(0);
  CHECK(g0.even_labels == std::vector<std::string>{"b3", "b1", "c3", "c1", "a2", "a0"});
  CHECK(g0.odd_labels == std::vector<std::string>{"b2", "c2", "a3", "a1"});
  CHECK(g0.adj[g0.even_index("b3")] == std::vector<long long>{1, 0, 0, 0});
  CHECK(g0.adj[g0.even_index("b1")] == std::vector<long long>{1, 0, 1, 0});
  CHECK(g0.adj[g0.even_index("c3")] == std::vector<long long>{0, 1, 0, 0});
  CHECK(g0.adj[g0.even_index("c1")] == std::vector<long long>{0, 1, 1, 0});
  CHECK(g0.adj[g0.even_index("a2")] == std::vector<long long>{0, 0, 1, 1});
  CHECK(g0.adj[g0.even_index("a0")] == std::vector<long long>{0, 0, 0, 1});
}

TEST_CASE("Gamma'_k: pendant f, trivalent g, edge count") {
  for (int k = 0; k <= 6; ++k) {
    BipartiteGraph g = build_gamma_prime(k);
    CHECK(g.even_labels.size() == static_cast<std::size_t>(2 * k + 4));
    CHECK(g.odd_labels.size() == static_cast<std::size_t>(2 * k + 4));
    CHECK(g.is_connected());
    CHECK(g.edge_count() == 4 * k + 7);
    const std::string an = "a" + std::to_string(4 * k + 3) + "*";
    long long frow = 0, grow = 0;
    for (std::size_t j = 0; j < g.odd_labels.size(); ++j) {
      frow += g.adj[g.even_index("f")][j];
      grow += g.adj[g.even_index("g")][j];
    }
    CHECK(frow == 1);
    CHECK(grow == 3);
    CHECK(g.adj[g.even_index("f")][g.odd_index(an)] == 1);
    CHECK(g.adj[g.even_index("g")][g.odd_index(an)] == 1);
    CHECK(g.adj[g.even_index("g")][g.odd_index("b2*")] == 1);
    CHECK(g.adj[g.even_index("g")][g.odd_index("c2*")] == 1);
  }
}

TEST_CASE("D = G G^t matches the displayed matrix at k = 0 and is symmetric") {
  IMat d = dd_matrix(build_gamma(0));
  IMat expected = {
      {1, 1, 0, 0, 0, 0},
      {1, 2, 0, 1, 1, 0},
      {0, 0, 1, 1, 0, 0},
      {0, 1, 1, 2, 1, 0},
      {0, 1, 0, 1, 2, 1},
      {0, 0, 0, 0, 1, 1},
  };
  CHECK(d == expected);
  for (int k = 0; k <= 8; ++k) {
    IMat dk = dd_matrix(build_gamma(k));
    for (std::size_t i = 0; i < dk.size(); ++i)
      for (std::size_t j = 0; j < dk.size(); ++j) CHECK(dk[i][j] == dk[j][i]);
  }
}

TEST_CASE("the b <-> c swap is an automorphism commuting with D") {
  for (int k = 0; k <= 8; ++k) {
    BipartiteGraph g = build_gamma(k);
    IMat d = dd_matrix(g);
    std::vector<std::size_t> perm(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) perm[i] = i;
    std::swap(perm[g.even_index("b3")], perm[g.even_index("c3")]);
    std::swap(perm[g.even_index("b1")], perm[g.even_index("c1")]);
    for (std::size_t i = 0; i < d.size(); ++i)
      for (std::size_t j = 0; j < d.size(); ++j) CHECK(d[i][j] == d[perm[i]][perm[j]]);
  }
}

TEST_CASE("characteristic polynomial identity t^2 (t-2)^2 q_k, exactly") {
  CHECK(char_poly({{2, 1}, {1, 2}}) == IntPoly{3, -4, 1});
  for (int k = 0; k <= 12; ++k) CHECK(char_poly_check(k));
  // one removed edge changes the spectrum
  BipartiteGraph g = build_gamma(0);
  g.adj[g.even_index("b3")][g.odd_index("b2")] = 0;
  CHECK(char_poly(dd_matrix(g)) != IntPoly{0, 0, 4, -4, 1} * poly_q(0));
}

TEST_CASE("walk vectors of R_j(Delta) a0 follow the chain and the legs") {
  for (int k : {0, 1, 3}) {
    const int n = 4 * k + 3;
    BipartiteGraph g = build_gamma(k);
    IMat d = delta_matrix(g);
    const std::size_t dim = d.size();
    std::vector<long long> prev = unit(dim, delta_index(g, "a0"));
    std::vector<long long> cur = mat_apply(d, prev);
    for (int j = 1; j <= n + 3; ++j) {
      if (j <= n) {
        CHECK(cur == unit(dim, delta_index(g, "a" + std::to_string(j))));
      }
      std::vector<long long> expected(dim, 0);
      if (j == n + 1) {
        expected[delta_index(g, "b1")] = 1;
        expected[delta_index(g, "c1")] = 1;
        CHECK(cur == expected);
      } else if (j == n + 2) {
        expected[delta_index(g, "a" + std::to_string(n))] = 1;
        expected[delta_index(g, "b2")] = 1;
        expected[delta_index(g, "c2")] = 1;
        CHECK(cur == expected);
      } else if (j == n + 3) {
        expected[delta_index(g, "a" + std::to_string(n - 1))] = 1;
        expected[delta_index(g, "b1")] = 1;
        expected[delta_index(g, "c1")] = 1;
        expected[delta_index(g, "b3")] = 1;
        expected[delta_index(g, "c3")] = 1;
        CHECK(cur == expected);
      }
      std::vector<long long> next = mat_apply(d, cur);
      for (std::size_t i = 0; i < dim; ++i) next[i] -= prev[i];
      prev = std::move(cur);
      cur = std::move(next);
    }
  }
}

TEST_CASE("S_j(Delta)(b3 + c3) = 2 a_{n-j+3}") {
  for (int k : {0, 2}) {
    const int n = 4 * k + 3;
    BipartiteGraph g = build_gamma(k);
    IMat d = delta_matrix(g);
    const std::size_t dim = d.size();
    std::vector<long long> u(dim, 0);
    u[delta_index(g, "b3")] = 1;
    u[delta_index(g, "c3")] = 1;
    // R_m(Delta) u by the recursion, then S_3 = R_3, S_4 = R_4 - R_2
    std::vector<std::vector<long long>> R;
    R.push_back(u);
    R.push_back(mat_apply(d, u));
    for (int m = 2; m <= 4; ++m) {
      std::vector<long long> next = mat_apply(d, R.back());
      for (std::size_t i = 0; i < dim; ++i) next[i] -= R[static_cast<std::size_t>(m - 2)][i];
      R.push_back(std::move(next));
    }
    std::vector<long long> s_prev = R[3];  // S_3
    std::vector<long long> s_cur(dim);
    for (std::size_t i = 0; i < dim; ++i) s_cur[i] = R[4][i] - R[2][i];  // S_4
    {
      std::vector<long long> expected(dim, 0);
      expected[delta_index(g, "a" + std::to_string(n))] = 2;
      CHECK(s_prev == expected);
    }
    for (int j = 4; j <= n + 3; ++j) {
      std::vector<long long> expected(dim, 0);
      expected[delta_index(g, "a" + std::to_string(n - j + 3))] = 2;
      CHECK(s_cur == expected);
      std::vector<long long> next = mat_apply(d, s_cur);
      for (std::size_t i = 0; i < dim; ++i) next[i] -= s_prev[i];
      s_prev = std::move(s_cur);
      s_cur = std::move(next);
    }
  }
}

TEST_CASE("exact integer eigenvectors of D at 2 and 0") {
  for (int k = 0; k <= 10; ++k) {
    EigvecBasis b = eigvec_basis(k);  // throws if any exact eigen relation fails
    long long dot = 0, dot2 = 0;
    for (std::size_t i = 0; i < b.x1.size(); ++i) {
      dot += b.x1[i] * b.y1[i];
      dot2 += b.x2[i] * b.y2[i];
    }
    CHECK(dot == 0);
    CHECK(dot2 == 0);
  }
}

TEST_CASE("Jacobi spectral data: eigenvalues, weights, invariants") {
  SpectralData sd = spectral(0);
  CHECK(sd.eigenvalues.size() == 4);
  CHECK(sd.eigenvalues[3] == doctest::Approx((5 + std::sqrt(13.0)) / 2).epsilon(1e-10));
  CHECK(std::fabs(sd.weights[0] - 1.0 / 3) < 1e-8);
  CHECK(std::fabs(sd.weights[1] - 1.0 / 3) < 1e-8);
  for (int k = 0; k <= 10; ++k) {
    SpectralData s = spectral(k);
    double sum = 0;
    for (double m : s.weights) sum += m;
    CHECK(std::fabs(sum - 1.0) < 1e-8);
    CHECK(std::fabs(s.weights[0] - 1.0 / (2 * k + 3)) < 1e-8);
    CHECK(std::fabs(s.weights[1] - 1.0 / (2 * k + 3)) < 1e-8);
    CHECK(s.pf_value == doctest::Approx(std::sqrt(s.eigenvalues.back())).epsilon(1e-9));
  }
}

TEST_CASE("Jacobi eigenvalues match the exact-bisection roots of q_k") {
  for (int k = 0; k <= 10; ++k) {
    SpectralData sd = spectral(k);
    RefinedSpectrum rs = refined_spectrum(k);
    REQUIRE(sd.eigenvalues.size() == rs.t.size());
    for (std::size_t j = 0; j < rs.t.size(); ++j) {
      CHECK(std::fabs(sd.eigenvalues[j] - to_double(rs.t[j])) < 1e-6);
      CHECK(std::fabs(sd.weights[j] - to_double(rs.mu[j])) < 1e-6);
    }
    // each refined root really annihilates q_k (double-double Horner; plain
    // doubles are swamped by the size of the monomial terms at larger k)
    IntPoly q = poly_q(k);
    for (std::size_t j = 2; j < rs.t.size(); ++j) {
      DD v;
      for (int i = q.degree(); i >= 0; --i) v = v * rs.t[j] + dd_from_bigint(q.coeff(i));
      CHECK(std::fabs(to_double(v)) < 1e-9);
    }
  }
}

TEST_CASE("projections agree with the Lagrange interpolation route") {
  for (int k = 0; k <= 10; ++k) {
    SpectralData sd = spectral(k);
    RefinedSpectrum rs = refined_spectrum(k);
    IMat d = dd_matrix(build_gamma(k));
    for (std::size_t j = 0; j < rs.t.size(); ++j) {
      DMat p = lagrange_projection(d, rs.t, j);
      for (std::size_t r = 0; r < d.size(); ++r)
        for (std::size_t c = 0; c < d.size(); ++c)
          CHECK(std::fabs(p[r][c] - sd.projections[j][r][c]) < 1e-6);
    }
  }
}

TEST_CASE("exact rational root t = 1 at k = 1 is handled") {
  RefinedSpectrum rs = refined_spectrum(1);
  bool found = false;
  for (DD t : rs.t) found = found || std::fabs(to_double(t) - 1.0) < 1e-25;
  CHECK(found);
}

TEST_CASE("Perron-Frobenius weights") {
  BipartiteGraph g = build_gamma(0);
  PFWeights w = pf_weights(g, "a0");
  CHECK(w.even[g.even_index("a0")] == doctest::Approx(1.0));
  CHECK(w.odd[g.odd_index("a1")] == doctest::Approx(w.value).epsilon(1e-10));
  CHECK(w.value == doctest::Approx(std::sqrt((5 + std::sqrt(13.0)) / 2)).epsilon(1e-10));
  CHECK(w.odd[g.odd_index("b2")] == doctest::Approx(w.odd[g.odd_index("c2")]).epsilon(1e-10));
  for (int k = 0; k <= 6; ++k) {
    PFWeights a = pf_weights(build_gamma(k), "a0");
    PFWeights b = pf_weights(build_gamma_prime(k), "a0'");
    CHECK(a.value == doctest::Approx(b.value).epsilon(1e-9));
    for (double v : a.even) CHECK(v > 0);
    for (double v : b.even) CHECK(v > 0);
  }
}

TEST_CASE("DOT export uses display names") {
  std::string dot = to_dot(build_gamma(0), "gamma_k0");
  CHECK(dot.find("graph gamma_k0") != std::string::npos);
  CHECK(dot.find("β_3") != std::string::npos);
  CHECK(dot.find("--") != std::string::npos);
  std::string dotp = to_dot(build_gamma_prime(1), "gamma_prime_k1");
  CHECK(dotp.find("ᾱ_1") != std::string::npos);  // conjugate chain vertex
  CHECK(dotp.find("α'_2") != std::string::npos);
  CHECK(display_label("b2*") == "β̄_2");
}
