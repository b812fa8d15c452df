#pragma once

// The matrix realization of the fusion ring.
//
// Every basis element is a real (2k+4)x(2k+4) matrix b, tagged with a grade
// (i,j) and standing for b (x) f_ij inside M_2(B). All of these matrices live
// in the subalgebra
//     B = span{e11, e12, e21, e22, e33, ..., e_{2k+4,2k+4}}
//       = M_2(R) (+) diagonal,
// so a ModelMatrix stores the 2x2 corner block plus the remaining diagonal.
// Diagonal slots follow the eigenvalue order t_1 = 0, t_2 = 2, then the
// roots of q_k ascending; A = diag(sqrt(t_j)).
//
// With the trace state mu(b) = sum_j mu_j b_jj and the pairing
// <b, c> = mu(c^t b), the basis below is orthonormal and the fusion
// coefficients come out as N_{X,Y}^Z = <XY, Z>, rounded to integers under a
// strict residual tolerance.
//
// Elements (n = 4k+3):
//   a_{2j}  = R_{2j}(A)                   a_{2j+1} = R_{2j+1}(A)
//   b1/c1   = (R_{n+1}(A) +- sqrt(2k+3)(e12+e21)) / 2
//   b3/c3   = ((R_{n+3}-R_{n+1}-R_{n-1})(A) +- sqrt(2k+3)(e12-e21)) / 2
//   b2/c2   = ((R_{n+2}-R_n)(A) +- sqrt(2(2k+3)) e12) / 2     (e21 for V21)
//   f, g    = ((R_{n-1}+2R_{n+1}-R_{n+3})(A)) / 2, ((R_{n+3}-R_{n-1})(A)) / 2
// The conjugate of b (x) f_ij is b^t (x) f_ji.

#include <array>
#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

#include "fusionk/ddouble.hpp"
#include "fusionk/fusion_ring.hpp"
#include "fusionk/spectral.hpp"

namespace fusionk {

// Corner 2x2 block (slots 1,2) plus diagonal tail (slots 3..2k+4).
struct ModelMatrix {
  std::array<DD, 4> blk{};  // b11 b12 b21 b22
  std::vector<DD> tail;

  static ModelMatrix diagonal(const std::vector<DD>& vals) {
    ModelMatrix m;
    m.blk[0] = vals[0];
    m.blk[3] = vals[1];
    m.tail.assign(vals.begin() + 2, vals.end());
    return m;
  }

  ModelMatrix transposed() const {
    ModelMatrix m = *this;
    std::swap(m.blk[1], m.blk[2]);
    return m;
  }

  friend ModelMatrix operator*(const ModelMatrix& a, const ModelMatrix& b) {
    ModelMatrix m;
    m.blk[0] = a.blk[0] * b.blk[0] + a.blk[1] * b.blk[2];
    m.blk[1] = a.blk[0] * b.blk[1] + a.blk[1] * b.blk[3];
    m.blk[2] = a.blk[2] * b.blk[0] + a.blk[3] * b.blk[2];
    m.blk[3] = a.blk[2] * b.blk[1] + a.blk[3] * b.blk[3];
    m.tail.resize(a.tail.size());
    for (std::size_t i = 0; i < a.tail.size(); ++i) m.tail[i] = a.tail[i] * b.tail[i];
    return m;
  }
  friend ModelMatrix operator+(const ModelMatrix& a, const ModelMatrix& b) {
    ModelMatrix m = a;
    for (int i = 0; i < 4; ++i) m.blk[static_cast<std::size_t>(i)] += b.blk[static_cast<std::size_t>(i)];
    for (std::size_t i = 0; i < m.tail.size(); ++i) m.tail[i] += b.tail[i];
    return m;
  }
  friend ModelMatrix operator-(const ModelMatrix& a, const ModelMatrix& b) {
    ModelMatrix m = a;
    for (int i = 0; i < 4; ++i) m.blk[static_cast<std::size_t>(i)] -= b.blk[static_cast<std::size_t>(i)];
    for (std::size_t i = 0; i < m.tail.size(); ++i) m.tail[i] -= b.tail[i];
    return m;
  }
  ModelMatrix scaled(DD s) const {
    ModelMatrix m = *this;
    for (auto& v : m.blk) v *= s;
    for (auto& v : m.tail) v *= s;
    return m;
  }

  double max_abs() const {
    double w = 0;
    for (DD v : blk) w = std::max(w, std::fabs(to_double(v)));
    for (DD v : tail) w = std::max(w, std::fabs(to_double(v)));
    return w;
  }
};

struct ModelElement {
  std::string label;
  Grade grade;
  ModelMatrix mat;
};

// The trace state: mu(b) = sum_j mu_j b_jj.
struct TraceState {
  std::vector<DD> mu;  // slot order as above

  DD trace(const ModelMatrix& m) const {
    DD s = mu[0] * m.blk[0] + mu[1] * m.blk[3];
    for (std::size_t i = 0; i < m.tail.size(); ++i) s += mu[i + 2] * m.tail[i];
    return s;
  }
  // <a, c> = mu(c^t a)
  DD inner(const ModelMatrix& a, const ModelMatrix& c) const {
    DD s = mu[0] * (c.blk[0] * a.blk[0] + c.blk[2] * a.blk[2]) +
           mu[1] * (c.blk[1] * a.blk[1] + c.blk[3] * a.blk[3]);
    for (std::size_t i = 0; i < a.tail.size(); ++i) s += mu[i + 2] * c.tail[i] * a.tail[i];
    return s;
  }
};

struct Model {
  int k = 0;
  std::vector<ModelElement> elems;  // frozen basis order, matching FusionTable::skeleton
  TraceState trace;
  std::vector<DD> sqrt_t;

  int index_of(const std::string& label) const {
    for (std::size_t i = 0; i < elems.size(); ++i)
      if (elems[i].label == label) return static_cast<int>(i);
    throw std::out_of_range("Model: unknown label " + label);
  }
  const ModelMatrix& mat(const std::string& label) const {
    return elems[static_cast<std::size_t>(index_of(label))].mat;
  }
};

namespace detail {

// R_0..R_mmax evaluated per eigenvalue slot.
inline std::vector<std::vector<DD>> chebyshev_values(const std::vector<DD>& x, int mmax) {
  std::vector<std::vector<DD>> rv(static_cast<std::size_t>(mmax) + 1,
                                  std::vector<DD>(x.size()));
  for (std::size_t s = 0; s < x.size(); ++s) {
    rv[0][s] = DD(1.0);
    if (mmax >= 1) rv[1][s] = x[s];
    for (int m = 2; m <= mmax; ++m)
      rv[static_cast<std::size_t>(m)][s] =
          x[s] * rv[static_cast<std::size_t>(m - 1)][s] - rv[static_cast<std::size_t>(m - 2)][s];
  }
  return rv;
}

}  // namespace detail

// Builds all 8k+18 elements. The Jacobi route is run as well and must agree
// with the refined eigendata to 1e-6; its own invariant checks (weight sum,
// mu_1 = mu_2 = 1/(2k+3), cluster count) propagate as exceptions.
inline Model build_model(int k) {
  RefinedSpectrum rs = refined_spectrum(k);
  SpectralData sd = spectral(k);
  for (std::size_t j = 0; j < rs.t.size(); ++j) {
    if (std::fabs(sd.eigenvalues[j] - to_double(rs.t[j])) > 1e-6 ||
        std::fabs(sd.weights[j] - to_double(rs.mu[j])) > 1e-6)
      throw std::runtime_error("build_model: Jacobi and refined spectral data disagree");
  }

  const int n = 4 * k + 3;
  Model model;
  model.k = k;
  model.trace.mu = rs.mu;
  model.sqrt_t = rs.sqrt_t;
  auto rv = detail::chebyshev_values(rs.sqrt_t, n + 4);

  const DD half(0.5);
  const DD s_leg = dd_sqrt(DD(static_cast<double>(2 * k + 3))) * half;      // sqrt(2k+3)/2
  const DD s_mid = dd_sqrt(DD(static_cast<double>(2 * (2 * k + 3)))) * half;  // sqrt(2(2k+3))/2

  std::vector<DD> w(rs.t.size());
  auto combo = [&](int i, int j, int l, int cj, int cl) {
    // (rv[i] + cj*rv[j] + cl*rv[l]) / 2
    for (std::size_t s = 0; s < w.size(); ++s) {
      DD v = rv[static_cast<std::size_t>(i)][s];
      if (j >= 0) v += rv[static_cast<std::size_t>(j)][s] * DD(static_cast<double>(cj));
      if (l >= 0) v += rv[static_cast<std::size_t>(l)][s] * DD(static_cast<double>(cl));
      w[s] = v * half;
    }
    return ModelMatrix::diagonal(w);
  };

  auto push = [&](const std::string& label, Grade g, ModelMatrix m) {
    model.elems.push_back({label, g, std::move(m)});
  };
  const Grade NN{Coeff::N, Coeff::N}, NM{Coeff::N, Coeff::M}, MN{Coeff::M, Coeff::N},
      MM{Coeff::M, Coeff::M};

  // V11: b3 b1 c3 c1 a_{4k+2} ... a0
  {
    ModelMatrix leg3 = combo(n + 3, n + 1, n - 1, -1, -1);
    ModelMatrix leg1 = combo(n + 1, -1, -1, 0, 0);
    ModelMatrix b3 = leg3, c3 = leg3, b1 = leg1, c1 = leg1;
    b3.blk[1] += s_leg;
    b3.blk[2] -= s_leg;
    c3.blk[1] -= s_leg;
    c3.blk[2] += s_leg;
    b1.blk[1] += s_leg;
    b1.blk[2] += s_leg;
    c1.blk[1] -= s_leg;
    c1.blk[2] -= s_leg;
    push("b3", NN, std::move(b3));
    push("b1", NN, std::move(b1));
    push("c3", NN, std::move(c3));
    push("c1", NN, std::move(c1));
    for (int j = 2 * k + 1; j >= 0; --j)
      push("a" + std::to_string(2 * j), NN, ModelMatrix::diagonal(rv[static_cast<std::size_t>(2 * j)]));
  }
  // V12: b2 c2 a_{4k+3} ... a1
  {
    ModelMatrix mid = combo(n + 2, n, -1, -1, 0);
    ModelMatrix b2 = mid, c2 = mid;
    b2.blk[1] += s_mid;
    c2.blk[1] -= s_mid;
    push("b2", NM, std::move(b2));
    push("c2", NM, std::move(c2));
    for (int j = 2 * k + 1; j >= 0; --j)
      push("a" + std::to_string(2 * j + 1), NM,
           ModelMatrix::diagonal(rv[static_cast<std::size_t>(2 * j + 1)]));
  }
  // V21: a1* ... a_{4k+3}* b2* c2*
  {
    for (int j = 0; j <= 2 * k + 1; ++j)
      push("a" + std::to_string(2 * j + 1) + "*", MN,
           ModelMatrix::diagonal(rv[static_cast<std::size_t>(2 * j + 1)]));
    ModelMatrix mid = combo(n + 2, n, -1, -1, 0);
    ModelMatrix b2s = mid, c2s = mid;
    b2s.blk[2] += s_mid;
    c2s.blk[2] -= s_mid;
    push("b2*", MN, std::move(b2s));
    push("c2*", MN, std::move(c2s));
  }
  // V22: a0' ... a_{4k+2}' f g
  {
    for (int j = 0; j <= 2 * k + 1; ++j)
      push("a" + std::to_string(2 * j) + "'", MM,
           ModelMatrix::diagonal(rv[static_cast<std::size_t>(2 * j)]));
    push("f", MM, combo(n - 1, n + 1, n + 3, 2, -1));
    push("g", MM, combo(n + 3, n - 1, -1, -1, 0));
  }

  // order must match the fusion-table skeleton
  FusionTable skel = FusionTable::skeleton(k);
  for (int i = 0; i < skel.size(); ++i)
    if (model.elems[static_cast<std::size_t>(i)].label != skel.element(i).label)
      throw std::logic_error("build_model: basis order mismatch");
  return model;
}

struct OrthoResult {
  bool ok = true;
  double worst = 0;
  std::string pair;
};

// <X, Y> = delta_{X,Y} over all same-grade pairs.
inline OrthoResult orthonormality_check(const Model& m, double tol = 1e-7) {
  OrthoResult res;
  for (std::size_t i = 0; i < m.elems.size(); ++i)
    for (std::size_t j = i; j < m.elems.size(); ++j) {
      if (!(m.elems[i].grade == m.elems[j].grade)) continue;
      double v = to_double(m.trace.inner(m.elems[i].mat, m.elems[j].mat));
      double dev = std::fabs(v - (i == j ? 1.0 : 0.0));
      if (dev > res.worst) {
        res.worst = dev;
        res.pair = "<" + m.elems[i].label + "," + m.elems[j].label + ">";
      }
    }
  res.ok = res.worst < tol;
  return res;
}

// Extracts the full fusion table N_{X,Y}^Z = <XY, Z>. Every pairing must sit
// within `tol` of a nonnegative integer; a violation aborts with the witness
// rather than producing a plausible-but-wrong table.
inline FusionTable fusion_table(const Model& m, double tol = 1e-6) {
  FusionTable t = FusionTable::skeleton(m.k);
  for (int x = 0; x < t.size(); ++x)
    for (int y = 0; y < t.size(); ++y) {
      if (!t.compatible(x, y)) continue;
      ModelMatrix prod = m.elems[static_cast<std::size_t>(x)].mat *
                         m.elems[static_cast<std::size_t>(y)].mat;
      for (int z = 0; z < t.size(); ++z) {
        if (t.element(z).grade != t.product_grade(x, y)) continue;
        DD v = m.trace.inner(prod, m.elems[static_cast<std::size_t>(z)].mat);
        if (std::fabs(to_double(v)) > 4.5e15)
          throw std::runtime_error("fusion_table: coefficient exceeds the exact integer range");
        long long r = std::llround(to_double(v));
        // residual in double-double: plain doubles cannot resolve 1e-6
        // around coefficients of size ~1e13
        double resid = std::fabs(to_double(v - DD(static_cast<double>(r))));
        if (resid > tol || r < 0)
          throw std::runtime_error("fusion_table: <" + t.element(x).label + " " +
                                   t.element(y).label + ", " + t.element(z).label + "> = " +
                                   dd_to_string(v) + " is not a nonnegative integer");
        if (r != 0) t.set(x, y, z, r);
      }
    }
  return t;
}

// Right multiplication by a1 (resp. a1*) recovers the adjacency matrices of
// Gamma_k and Gamma'_k exactly.
inline CheckResult graph_recovery(const FusionTable& t) {
  BipartiteGraph gamma = build_gamma(t.k());
  const int a1 = t.index_of("a1");
  for (std::size_t i = 0; i < gamma.even_labels.size(); ++i)
    for (std::size_t j = 0; j < gamma.odd_labels.size(); ++j) {
      long long n = t.coeff(t.index_of(gamma.even_labels[i]), a1, t.index_of(gamma.odd_labels[j]));
      if (n != gamma.adj[i][j])
        return {false, "Gamma: N(" + gamma.even_labels[i] + ",a1)^" + gamma.odd_labels[j] + " = " +
                           std::to_string(n) + ", adjacency says " + std::to_string(gamma.adj[i][j])};
    }
  BipartiteGraph gp = build_gamma_prime(t.k());
  const int a1s = t.index_of("a1*");
  for (std::size_t i = 0; i < gp.even_labels.size(); ++i)
    for (std::size_t j = 0; j < gp.odd_labels.size(); ++j) {
      long long n = t.coeff(t.index_of(gp.even_labels[i]), a1s, t.index_of(gp.odd_labels[j]));
      if (n != gp.adj[i][j])
        return {false, "Gamma': N(" + gp.even_labels[i] + ",a1*)^" + gp.odd_labels[j] + " = " +
                           std::to_string(n) + ", adjacency says " + std::to_string(gp.adj[i][j])};
    }
  return {};
}

namespace detail {

// Integer combination of model elements over the V11 order; trailing
// coefficients may be omitted (treated as zero).
inline ModelMatrix v11_combo(const Model& m, const std::vector<long long>& coeffs) {
  std::vector<std::string> labels = v11_labels(m.k);
  ModelMatrix acc;
  acc.tail.assign(m.trace.mu.size() - 2, DD());
  for (std::size_t i = 0; i < labels.size() && i < coeffs.size(); ++i) {
    if (coeffs[i] == 0) continue;
    acc = acc + m.mat(labels[i]).scaled(DD(static_cast<double>(coeffs[i])));
  }
  return acc;
}

inline double max_abs_diff(const ModelMatrix& a, const ModelMatrix& b) {
  return (a - b).max_abs();
}

// p evaluated entrywise on a diagonal model matrix.
inline ModelMatrix poly_at_diagonal(const IntPoly& p, const ModelMatrix& d) {
  auto horner = [&](DD x) {
    DD v;
    for (int i = p.degree(); i >= 0; --i) v = v * x + dd_from_bigint(p.coeff(i));
    return v;
  };
  ModelMatrix r;
  r.blk[0] = horner(d.blk[0]);
  r.blk[3] = horner(d.blk[3]);
  r.tail.resize(d.tail.size());
  for (std::size_t i = 0; i < d.tail.size(); ++i) r.tail[i] = horner(d.tail[i]);
  return r;
}

}  // namespace detail

// xi = (b1 - c1) + (b3 - c3). Verifies
//   xi xibar = 2 y1,  xibar xi = 2 x1,
// and the closed forms through q_k of the generator square a1 a1*:
//   xi xibar = 2 (2 - a1 a1*) q_k(a1 a1*),
//   xibar xi = (-1)^(k+1) 2 (a1 a1*) q_k(a1 a1*).
inline CheckResult xi_identities(const Model& m, double tol = 1e-7) {
  EigvecBasis basis = eigvec_basis(m.k);
  ModelMatrix xi = detail::v11_combo(m, {1, 1, -1, -1});  // b3 + b1 - c3 - c1
  ModelMatrix xibar = xi.transposed();
  ModelMatrix x1 = detail::v11_combo(m, basis.x1);
  ModelMatrix y1 = detail::v11_combo(m, basis.y1);
  double d1 = detail::max_abs_diff(xi * xibar, y1 + y1);
  double d2 = detail::max_abs_diff(xibar * xi, x1 + x1);
  if (d1 > tol || d2 > tol)
    return {false, "xi xibar = 2y1 / xibar xi = 2x1 fail, residuals " + std::to_string(d1) +
                       ", " + std::to_string(d2)};

  const IntPoly q = poly_q(m.k);
  ModelMatrix gen = m.mat("a1") * m.mat("a1*");  // diagonal: the eigenvalues t_j
  IntPoly rpoly = IntPoly{2, -1} * q;            // (2 - t) q_k
  IntPoly spoly = IntPoly{0, 1} * q;             // t q_k
  if (m.k % 2 == 0) spoly = -spoly;              // (-1)^(k+1) t q_k
  ModelMatrix rhs_r = detail::poly_at_diagonal(rpoly, gen).scaled(DD(2.0));
  ModelMatrix rhs_s = detail::poly_at_diagonal(spoly, gen).scaled(DD(2.0));
  double c1 = detail::max_abs_diff(xi * xibar, rhs_r);
  double c2 = detail::max_abs_diff(xibar * xi, rhs_s);
  if (c1 > tol || c2 > tol)
    return {false, "closed forms through q_k fail, residuals " + std::to_string(c1) + ", " +
                       std::to_string(c2)};
  return {};
}

// Trace pairings against exact walk vectors:
//   mu(R_i(A) R_j(A)) = <R_i(Delta) a0, R_j(Delta) a0>  (i = j mod 2, i,j <= n+4)
// and the vanishing combination R_{n+4} - R_{n+2} - R_n - R_{n-2} at A.
inline CheckResult trace_pairing_checks(const Model& m, double tol = 1e-7) {
  const int n = 4 * m.k + 3;
  auto rv = detail::chebyshev_values(m.sqrt_t, n + 4);
  BipartiteGraph g = build_gamma(m.k);
  IMat delta = delta_matrix(g);
  const std::size_t dim = delta.size();
  // walk vectors R_j(Delta) a0 by the recursion
  std::vector<std::vector<long long>> walk;
  walk.emplace_back(dim, 0);
  walk[0][g.even_labels.size() - 1] = 1;  // a0 is the last even vertex
  {
    std::vector<long long> v(dim, 0);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) v[i] += delta[i][j] * walk[0][j];
    walk.push_back(std::move(v));
  }
  for (int j = 2; j <= n + 4; ++j) {
    std::vector<long long> v(dim, 0);
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t l = 0; l < dim; ++l) v[i] += delta[i][l] * walk.back()[l];
      v[i] -= walk[walk.size() - 2][i];
    }
    walk.push_back(std::move(v));
  }
  for (int i = 0; i <= n + 4; ++i)
    for (int j = i; j <= n + 4; ++j) {
      if ((i + j) % 2 != 0) continue;
      DD lhs;
      for (std::size_t s = 0; s < m.trace.mu.size(); ++s)
        lhs += m.trace.mu[s] * rv[static_cast<std::size_t>(i)][s] * rv[static_cast<std::size_t>(j)][s];
      long long rhs = 0;
      for (std::size_t l = 0; l < dim; ++l)
        rhs += walk[static_cast<std::size_t>(i)][l] * walk[static_cast<std::size_t>(j)][l];
      if (std::fabs(to_double(lhs) - static_cast<double>(rhs)) > tol)
        return {false, "mu(R_" + std::to_string(i) + " R_" + std::to_string(j) + ") = " +
                           std::to_string(to_double(lhs)) + " but the walk pairing gives " +
                           std::to_string(rhs)};
    }
  double worst = 0;
  for (std::size_t s = 0; s < m.trace.mu.size(); ++s) {
    DD v = rv[static_cast<std::size_t>(n + 4)][s] - rv[static_cast<std::size_t>(n + 2)][s] -
           rv[static_cast<std::size_t>(n)][s] - rv[static_cast<std::size_t>(n - 2)][s];
    worst = std::max(worst, std::fabs(to_double(v)));
  }
  if (worst > tol)
    return {false, "R_{n+4}-R_{n+2}-R_n-R_{n-2} at A has norm " + std::to_string(worst)};
  return {};
}

}  // namespace fusionk
