#pragma once

// Spectral data of D = G G^t.
//
// Two routes are implemented.
//
// spectral(k) runs an in-tree cyclic Jacobi iteration, clusters the
// eigenvalues (absolute tolerance 1e-6) into the 2k+4 distinct groups
// {0, 2, roots of q_k}, assembles the orthogonal projections E_j, and reads
// off the weights mu_j = <E_j a0, a0>. Good to ~1e-12; used for the
// tolerance-level invariants.
//
// refined_spectrum(k) produces the same eigenvalues and weights to ~1e-28:
// roots of q_k by bisection on exact integer sign evaluations at dyadic
// points, and weights through the resolvent identity
//     <(zI - D)^{-1} a0, a0> = Ntilde(z) / (z (z-2) q_k(z)),
// where Ntilde(z) = det(zI - D_minor) / (z(z-2)) is an exact integer
// polynomial (D_minor = D with the a0 row and column removed), so that
//     mu_j = Ntilde(t_j) / chi'(t_j),    chi(z) = z (z-2) q_k(z).
// Both polynomial values are evaluated exactly at the dyadic root before
// conversion to double-double. At z = 0 and z = 2 the residues are evaluated
// symbolically; Ntilde(0) = -2 and Ntilde(2) = 2(-1)^(k+1) are verified as
// exact integer identities, which certifies mu_1 = mu_2 = 1/(2k+3).
//
// The matrix model consumes refined_spectrum; the trace pairings there
// cancel values of size R_{n+1}(||Delta||) and plain double precision would
// not survive the 1e-6 integer-rounding tolerance past small k.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "fusionk/ddouble.hpp"
#include "fusionk/graphs.hpp"
#include "fusionk/intpoly.hpp"

namespace fusionk {

using DMat = std::vector<std::vector<double>>;

struct EigenSystem {
  std::vector<double> values;
  DMat vectors;  // column i is the eigenvector of values[i]
};

// Cyclic Jacobi sweeps; stops when the off-diagonal Frobenius norm drops
// below off_tol.
inline EigenSystem jacobi_eigen(DMat a, double off_tol = 1e-9) {
  const std::size_t n = a.size();
  DMat v(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) v[i][i] = 1.0;
  auto off_norm = [&]() {
    double s = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) s += 2 * a[i][j] * a[i][j];
    return std::sqrt(s);
  };
  for (int sweep = 0; sweep < 60; ++sweep) {
    if (off_norm() < off_tol) {
      EigenSystem es;
      es.values.resize(n);
      for (std::size_t i = 0; i < n; ++i) es.values[i] = a[i][i];
      es.vectors = std::move(v);
      return es;
    }
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        if (a[p][q] == 0.0) continue;
        double theta = 0.5 * std::atan2(2.0 * a[p][q], a[q][q] - a[p][p]);
        double c = std::cos(theta), s = std::sin(theta);
        for (std::size_t i = 0; i < n; ++i) {
          double aip = a[i][p], aiq = a[i][q];
          a[i][p] = c * aip - s * aiq;
          a[i][q] = s * aip + c * aiq;
        }
        for (std::size_t i = 0; i < n; ++i) {
          double api = a[p][i], aqi = a[q][i];
          a[p][i] = c * api - s * aqi;
          a[q][i] = s * api + c * aqi;
        }
        for (std::size_t i = 0; i < n; ++i) {
          double vip = v[i][p], viq = v[i][q];
          v[i][p] = c * vip - s * viq;
          v[i][q] = s * vip + c * viq;
        }
      }
  }
  throw std::runtime_error("jacobi_eigen: no convergence after 60 sweeps");
}

struct PFWeights {
  double value = 0;                // largest eigenvalue of Delta
  std::vector<double> even, odd;   // positive, normalized to 1 at the identity vertex
};

// Dominant eigenvector of Delta by power iteration on Delta + I (the graph is
// bipartite, so Delta itself has a symmetric spectrum).
inline PFWeights pf_weights(const BipartiteGraph& g, const std::string& identity_label,
                            double rel_tol = 1e-12, int max_iter = 200000) {
  if (!g.is_connected()) throw std::invalid_argument("pf_weights: graph not connected");
  IMat d = delta_matrix(g);
  const std::size_t n = d.size(), ne = g.even_labels.size();
  std::vector<double> x(n, 1.0), y(n);
  for (int it = 0; it < max_iter; ++it) {
    double norm = 0;
    for (std::size_t i = 0; i < n; ++i) {
      double s = x[i];  // the +I shift
      for (std::size_t j = 0; j < n; ++j)
        if (d[i][j]) s += d[i][j] * x[j];
      y[i] = s;
      norm = std::max(norm, std::fabs(s));
    }
    double delta = 0;
    for (std::size_t i = 0; i < n; ++i) {
      y[i] /= norm;
      delta = std::max(delta, std::fabs(y[i] - x[i]) / y[i]);
    }
    x.swap(y);
    if (delta < rel_tol) {
      double num = 0, den = 0;
      for (std::size_t i = 0; i < n; ++i) {
        double s = 0;
        for (std::size_t j = 0; j < n; ++j)
          if (d[i][j]) s += d[i][j] * x[j];
        num += x[i] * s;
        den += x[i] * x[i];
      }
      PFWeights w;
      w.value = num / den;
      double scale = x[g.even_index(identity_label)];
      w.even.resize(ne);
      w.odd.resize(n - ne);
      for (std::size_t i = 0; i < n; ++i) {
        double val = x[i] / scale;
        if (val <= 0) throw std::runtime_error("pf_weights: non-positive entry");
        if (i < ne) w.even[i] = val;
        else w.odd[i - ne] = val;
      }
      return w;
    }
  }
  throw std::runtime_error("pf_weights: power iteration did not converge");
}

// Jacobi-based spectral data of D for Gamma_k.
struct SpectralData {
  std::vector<double> eigenvalues;  // t_1 = 0, t_2 = 2, then the roots of q_k ascending
  std::vector<DMat> projections;    // E_j, symmetric, sum = I
  std::vector<double> weights;      // mu_j = <E_j a0, a0>
  double pf_value = 0;
  std::vector<double> pf_vector;    // over even then odd labels of Gamma_k, 1 at a0
};

inline SpectralData spectral(int k, double cluster_tol = 1e-6) {
  BipartiteGraph g = build_gamma(k);
  IMat d = dd_matrix(g);
  const std::size_t n = d.size();
  DMat a(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = static_cast<double>(d[i][j]);
  EigenSystem es = jacobi_eigen(a);

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return es.values[x] < es.values[y]; });

  // Cluster by the absolute gap tolerance.
  std::vector<std::vector<std::size_t>> clusters;
  for (std::size_t i : order) {
    if (clusters.empty() ||
        es.values[i] - es.values[clusters.back().back()] > cluster_tol)
      clusters.emplace_back();
    clusters.back().push_back(i);
  }
  const std::size_t expected = static_cast<std::size_t>(2 * k + 4);
  if (clusters.size() != expected)
    throw std::runtime_error("spectral: found " + std::to_string(clusters.size()) +
                             " eigenvalue clusters, expected " + std::to_string(expected));

  // Slot 0 is the kernel, slot 1 the eigenvalue 2, the rest stay ascending.
  auto cluster_value = [&](const std::vector<std::size_t>& c) {
    double s = 0;
    for (std::size_t i : c) s += es.values[i];
    return s / static_cast<double>(c.size());
  };
  std::size_t near0 = 0, near2 = 0;
  for (std::size_t c = 1; c < clusters.size(); ++c) {
    if (std::fabs(cluster_value(clusters[c])) < std::fabs(cluster_value(clusters[near0]))) near0 = c;
    if (std::fabs(cluster_value(clusters[c]) - 2) < std::fabs(cluster_value(clusters[near2]) - 2))
      near2 = c;
  }
  if (near0 == near2) throw std::runtime_error("spectral: eigenvalues 0 and 2 not separated");
  std::vector<std::vector<std::size_t>> slots{clusters[near0], clusters[near2]};
  for (std::size_t c = 0; c < clusters.size(); ++c)
    if (c != near0 && c != near2) slots.push_back(clusters[c]);

  SpectralData sd;
  for (const auto& cl : slots) {
    sd.eigenvalues.push_back(cluster_value(cl));
    DMat e(n, std::vector<double>(n, 0.0));
    for (std::size_t idx : cl)
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c2 = 0; c2 < n; ++c2)
          e[r][c2] += es.vectors[r][idx] * es.vectors[c2][idx];
    sd.projections.push_back(std::move(e));
    sd.weights.push_back(sd.projections.back()[n - 1][n - 1]);  // a0 is the last V11 vertex
  }
  if (slots[0].size() != 2 || slots[1].size() != 2)
    throw std::runtime_error("spectral: eigenvalues 0 and 2 must have multiplicity 2");
  if (std::fabs(sd.eigenvalues[0]) > cluster_tol || std::fabs(sd.eigenvalues[1] - 2) > cluster_tol)
    throw std::runtime_error("spectral: eigenvalues 0 and 2 not found");

  double sum = 0;
  for (double m : sd.weights) {
    if (m <= 0) throw std::runtime_error("spectral: non-positive weight");
    sum += m;
  }
  const double inv = 1.0 / (2 * k + 3);
  if (std::fabs(sum - 1.0) > 1e-8 || std::fabs(sd.weights[0] - inv) > 1e-8 ||
      std::fabs(sd.weights[1] - inv) > 1e-8)
    throw std::runtime_error("spectral: weight invariants violated");

  PFWeights pf = pf_weights(g, "a0");
  sd.pf_value = pf.value;
  sd.pf_vector = pf.even;
  sd.pf_vector.insert(sd.pf_vector.end(), pf.odd.begin(), pf.odd.end());
  return sd;
}

// Lagrange interpolation route to the projections: P_j(D) with
// P_j(t) = prod_{i != j} (t - t_i)/(t_j - t_i), evaluated in double-double.
inline DMat lagrange_projection(const IMat& d, const std::vector<DD>& t, std::size_t j) {
  const std::size_t n = d.size();
  std::vector<std::vector<DD>> m(n, std::vector<DD>(n));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = DD(1.0);
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i == j) continue;
    DD den = t[j] - t[i];
    std::vector<std::vector<DD>> next(n, std::vector<DD>(n, DD()));
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t l = 0; l < n; ++l) {
        if (m[r][l].hi == 0.0 && m[r][l].lo == 0.0) continue;
        for (std::size_t c = 0; c < n; ++c)
          if (d[l][c]) next[r][c] += m[r][l] * DD(static_cast<double>(d[l][c]));
        next[r][l] -= m[r][l] * t[i];
      }
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) m[r][c] = next[r][c] / den;
  }
  DMat out(n, std::vector<double>(n));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) out[r][c] = to_double(m[r][c]);
  return out;
}

// High-precision eigenvalues and trace weights.
struct RefinedSpectrum {
  int k = 0;
  std::vector<DD> t;       // 0, 2, then the roots of q_k ascending
  std::vector<DD> sqrt_t;
  std::vector<DD> mu;
};

namespace detail {

// Brackets [lo, lo + 2] / 2^e around each root of p in (0, 6), found by an
// exact sign scan over points with odd numerator (a monic integer polynomial
// has no non-integer rational root, so no scan point is ever a root).
struct DyadicRoot {
  BigInt num;  // odd
  unsigned exp2;
};

inline std::vector<DyadicRoot> isolate_roots(const IntPoly& p, std::size_t expected) {
  for (unsigned e = 9; e <= 25; e += 2) {
    long long limit = 6LL << e;
    std::vector<DyadicRoot> brackets;
    int prev_sign = 0;
    long long prev_m = 0;
    for (long long m = 1; m < limit; m += 2) {
      // odd numerators: a monic integer polynomial cannot vanish here
      int s = p.eval_dyadic_numerator(BigInt(m), e).sign();
      if (prev_sign != 0 && s != prev_sign) brackets.push_back({BigInt(prev_m), e});
      prev_sign = s;
      prev_m = m;
    }
    if (brackets.size() == expected) return brackets;
  }
  throw std::runtime_error("isolate_roots: could not isolate the expected number of roots");
}

// Bisect [num, num+2]/2^e down to width 2^-prec. The interior point of the
// initial width-2 bracket has an even numerator and may be an exact rational
// root (q_k(1) = 0 whenever k = 1 mod 3); that case is returned exactly.
// Afterwards the bracket has width 1 and every probed midpoint has an odd
// numerator, so exact signs never vanish.
inline DyadicRoot bisect_root(const IntPoly& p, const DyadicRoot& bracket, unsigned prec) {
  unsigned e = bracket.exp2;
  BigInt lo = bracket.num;
  int slo = p.eval_dyadic_numerator(lo, e).sign();
  BigInt probe = lo + BigInt(1);
  int sp = p.eval_dyadic_numerator(probe, e).sign();
  if (sp == 0) return {std::move(probe), e};  // exact dyadic root
  if (sp == slo) lo = std::move(probe);
  // invariant: the root lies in (lo, lo+1)/2^e and p(lo/2^e) has sign slo
  while (e < prec) {
    lo = lo.shl(1);
    ++e;
    BigInt mid = lo + BigInt(1);
    if (p.eval_dyadic_numerator(mid, e).sign() == slo) lo = std::move(mid);
  }
  return {lo.shl(1) + BigInt(1), e + 1};  // midpoint of the final bracket
}

inline DD dyadic_to_dd(const DyadicRoot& r) {
  return dd_from_bigint_scaled(r.num, -static_cast<long>(r.exp2));
}

// Exact value of p at a dyadic point, as double-double.
inline DD eval_dyadic_dd(const IntPoly& p, const DyadicRoot& r) {
  BigInt num = p.eval_dyadic_numerator(r.num, r.exp2);
  return dd_from_bigint_scaled(num, -static_cast<long>(r.exp2) * p.degree());
}

}  // namespace detail

inline RefinedSpectrum refined_spectrum(int k) {
  RefinedSpectrum rs;
  rs.k = k;
  const IntPoly q = poly_q(k);

  // Ntilde = det(tI - D_minor) / (t(t-2)); the division must be exact.
  IMat d = dd_matrix(build_gamma(k));
  IMat minor(d.size() - 1);
  for (std::size_t i = 0; i + 1 < d.size(); ++i)
    minor[i] = std::vector<long long>(d[i].begin(), d[i].end() - 1);
  IntPoly ntilde = char_poly(minor).divexact(IntPoly{0, -2, 1});

  // Exact certificates for the residues at 0 and 2; these pin
  // mu_1 = mu_2 = 1/(2k+3) with zero tolerance.
  if (ntilde.eval(BigInt(0)) != BigInt(-2))
    throw std::logic_error("refined_spectrum: residue certificate at 0 failed");
  if (ntilde.eval(BigInt(2)) != BigInt(k % 2 == 0 ? -2 : 2))
    throw std::logic_error("refined_spectrum: residue certificate at 2 failed");

  const IntPoly chi = IntPoly{0, -2, 1} * q;  // t(t-2) q_k
  const IntPoly chi_d = chi.derivative();

  rs.t = {DD(0.0), DD(2.0)};
  rs.mu.assign(2, DD(1.0) / DD(static_cast<double>(2 * k + 3)));

  // The weight mu_j = Ntilde(t_j)/chi'(t_j) can be exquisitely sensitive to
  // the root position: when mu_j is tiny (the top eigenvalue for larger k),
  // Ntilde has a root within ~mu_j of t_j. Deepen the bisection until the
  // logarithmic derivatives of both polynomials, times the remaining bracket
  // width, are negligible against double-double precision.
  const IntPoly ntilde_d = ntilde.derivative();
  const IntPoly chi_dd = chi_d.derivative();
  auto brackets = detail::isolate_roots(q, static_cast<std::size_t>(2 * k + 2));
  for (auto& b : brackets) {
    for (unsigned prec = 104;; prec *= 2) {
      if (prec > 8192) throw std::logic_error("refined_spectrum: weight never stabilized");
      detail::DyadicRoot root = detail::bisect_root(q, b, prec);
      DD num = detail::eval_dyadic_dd(ntilde, root);
      DD den = detail::eval_dyadic_dd(chi_d, root);
      bool exact = q.eval_dyadic_numerator(root.num, root.exp2).is_zero();
      if (!exact) {
        double step = std::ldexp(1.0, -static_cast<int>(root.exp2));
        double s1 = std::fabs(to_double(detail::eval_dyadic_dd(ntilde_d, root)) /
                              to_double(num)) * step;
        double s2 = std::fabs(to_double(detail::eval_dyadic_dd(chi_dd, root)) /
                              to_double(den)) * step;
        if (std::max(s1, s2) > 1e-26) continue;
      }
      rs.t.push_back(detail::dyadic_to_dd(root));
      DD mu = num / den;
      if (to_double(mu) <= 0) throw std::logic_error("refined_spectrum: non-positive weight");
      rs.mu.push_back(mu);
      break;
    }
  }

  DD sum;
  for (DD m : rs.mu) sum += m;
  if (std::fabs(to_double(sum) - 1.0) > 1e-20)
    throw std::logic_error("refined_spectrum: weights do not sum to 1");
  for (DD t : rs.t) rs.sqrt_t.push_back(dd_sqrt(t));
  return rs;
}

}  // namespace fusionk
