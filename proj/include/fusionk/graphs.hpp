#pragma once

// The principal graph pair (Gamma_k, Gamma'_k), n = 4k+3.
//
// Gamma_k:  a0 - a1 - ... - a_n, with two length-3 legs at a_n:
//           a_n - b1 - b2 - b3 and a_n - c1 - c2 - c3.
// Gamma'_k: a0' - a1* - a2' - ... - a_n* - g, a pendant f at a_n*, and
//           g additionally joined to b2* and c2*.
//
// Vertex orders are frozen once and used by every matrix, table and file
// format in the project:
//   V11 (even, Gamma):  b3 b1 c3 c1 a_{n-1} a_{n-3} ... a2 a0
//   V12 (odd,  Gamma):  b2 c2 a_n a_{n-2} ... a1
//   V21 (odd,  Gamma'): a1* a3* ... a_n* b2* c2*
//   V22 (even, Gamma'): a0' a2' ... a_{n-1}' f g
// A trailing '*' marks the conjugate of the matching V12 element; a trailing
// apostrophe marks the even vertices of Gamma'.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "fusionk/bigint.hpp"
#include "fusionk/intpoly.hpp"

namespace fusionk {

using IMat = std::vector<std::vector<long long>>;

inline std::vector<std::string> v11_labels(int k) {
  std::vector<std::string> v{"b3", "b1", "c3", "c1"};
  for (int j = 4 * k + 2; j >= 0; j -= 2) v.push_back("a" + std::to_string(j));
  return v;
}

inline std::vector<std::string> v12_labels(int k) {
  std::vector<std::string> v{"b2", "c2"};
  for (int j = 4 * k + 3; j >= 1; j -= 2) v.push_back("a" + std::to_string(j));
  return v;
}

inline std::vector<std::string> v21_labels(int k) {
  std::vector<std::string> v;
  for (int j = 1; j <= 4 * k + 3; j += 2) v.push_back("a" + std::to_string(j) + "*");
  v.push_back("b2*");
  v.push_back("c2*");
  return v;
}

inline std::vector<std::string> v22_labels(int k) {
  std::vector<std::string> v;
  for (int j = 0; j <= 4 * k + 2; j += 2) v.push_back("a" + std::to_string(j) + "'");
  v.push_back("f");
  v.push_back("g");
  return v;
}

// Labeled bipartite graph held as an integer adjacency matrix, rows = even
// vertices, columns = odd vertices.
struct BipartiteGraph {
  std::vector<std::string> even_labels;
  std::vector<std::string> odd_labels;
  IMat adj;

  std::size_t even_index(const std::string& label) const {
    for (std::size_t i = 0; i < even_labels.size(); ++i)
      if (even_labels[i] == label) return i;
    throw std::out_of_range("BipartiteGraph: unknown even label " + label);
  }
  std::size_t odd_index(const std::string& label) const {
    for (std::size_t i = 0; i < odd_labels.size(); ++i)
      if (odd_labels[i] == label) return i;
    throw std::out_of_range("BipartiteGraph: unknown odd label " + label);
  }

  long long edge_count() const {
    long long n = 0;
    for (const auto& row : adj)
      for (long long e : row) n += e;
    return n;
  }

  bool is_connected() const {
    std::size_t ne = even_labels.size(), no = odd_labels.size();
    std::vector<char> seen(ne + no, 0);
    std::vector<std::size_t> stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
      std::size_t v = stack.back();
      stack.pop_back();
      if (v < ne) {
        for (std::size_t j = 0; j < no; ++j)
          if (adj[v][j] && !seen[ne + j]) {
            seen[ne + j] = 1;
            stack.push_back(ne + j);
          }
      } else {
        for (std::size_t i = 0; i < ne; ++i)
          if (adj[i][v - ne] && !seen[i]) {
            seen[i] = 1;
            stack.push_back(i);
          }
      }
    }
    for (char c : seen)
      if (!c) return false;
    return true;
  }
};

inline BipartiteGraph build_gamma(int k) {
  if (k < 0) throw std::invalid_argument("build_gamma: negative k");
  const int n = 4 * k + 3;
  BipartiteGraph g;
  g.even_labels = v11_labels(k);
  g.odd_labels = v12_labels(k);
  g.adj.assign(g.even_labels.size(), std::vector<long long>(g.odd_labels.size(), 0));
  auto connect = [&](const std::string& e, const std::string& o) {
    g.adj[g.even_index(e)][g.odd_index(o)] = 1;
  };
  connect("b3", "b2");
  connect("b1", "b2");
  connect("b1", "a" + std::to_string(n));
  connect("c3", "c2");
  connect("c1", "c2");
  connect("c1", "a" + std::to_string(n));
  for (int j = 0; j <= n - 1; j += 2) {
    connect("a" + std::to_string(j), "a" + std::to_string(j + 1));
    if (j >= 1) connect("a" + std::to_string(j), "a" + std::to_string(j - 1));
  }
  return g;
}

inline BipartiteGraph build_gamma_prime(int k) {
  if (k < 0) throw std::invalid_argument("build_gamma_prime: negative k");
  const int n = 4 * k + 3;
  BipartiteGraph g;
  g.even_labels = v22_labels(k);
  g.odd_labels = v21_labels(k);
  g.adj.assign(g.even_labels.size(), std::vector<long long>(g.odd_labels.size(), 0));
  auto connect = [&](const std::string& e, const std::string& o) {
    g.adj[g.even_index(e)][g.odd_index(o)] = 1;
  };
  for (int j = 0; j <= n - 1; j += 2) {
    connect("a" + std::to_string(j) + "'", "a" + std::to_string(j + 1) + "*");
    if (j >= 1) connect("a" + std::to_string(j) + "'", "a" + std::to_string(j - 1) + "*");
  }
  connect("f", "a" + std::to_string(n) + "*");
  connect("g", "a" + std::to_string(n) + "*");
  connect("g", "b2*");
  connect("g", "c2*");
  return g;
}

// D = G G^t on the even vertices, exact.
inline IMat dd_matrix(const BipartiteGraph& g) {
  std::size_t ne = g.even_labels.size(), no = g.odd_labels.size();
  IMat d(ne, std::vector<long long>(ne, 0));
  for (std::size_t i = 0; i < ne; ++i)
    for (std::size_t j = 0; j < ne; ++j) {
      long long s = 0;
      for (std::size_t l = 0; l < no; ++l) s += g.adj[i][l] * g.adj[j][l];
      d[i][j] = s;
    }
  return d;
}

// Adjacency matrix of the doubled graph: [[0, G], [G^t, 0]], even rows first.
inline IMat delta_matrix(const BipartiteGraph& g) {
  std::size_t ne = g.even_labels.size(), no = g.odd_labels.size();
  IMat d(ne + no, std::vector<long long>(ne + no, 0));
  for (std::size_t i = 0; i < ne; ++i)
    for (std::size_t j = 0; j < no; ++j) {
      d[i][ne + j] = g.adj[i][j];
      d[ne + j][i] = g.adj[i][j];
    }
  return d;
}

// det(tI - A) by Faddeev-LeVerrier over exact integers. The interior
// divisions are exact; a nonzero remainder would indicate corruption.
inline IntPoly char_poly(const IMat& a) {
  const std::size_t n = a.size();
  std::vector<std::vector<BigInt>> A(n, std::vector<BigInt>(n)), M(n, std::vector<BigInt>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) A[i][j] = BigInt(a[i][j]);
  std::vector<BigInt> coeff(n + 1);
  coeff[n] = BigInt(1);
  for (std::size_t i = 0; i < n; ++i) M[i][i] = BigInt(1);
  for (std::size_t m = 1; m <= n; ++m) {
    // AM = A * M
    std::vector<std::vector<BigInt>> AM(n, std::vector<BigInt>(n, BigInt(0)));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l) {
        const BigInt& ail = A[i][l];
        if (ail.is_zero()) continue;
        for (std::size_t j = 0; j < n; ++j) AM[i][j] += ail * M[l][j];
      }
    BigInt tr(0);
    for (std::size_t i = 0; i < n; ++i) tr += AM[i][i];
    BigInt c = -tr.divexact_small(static_cast<std::uint32_t>(m));
    coeff[n - m] = c;
    if (m < n) {
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) M[i][j] = AM[i][j] + (i == j ? c : BigInt(0));
    }
  }
  return IntPoly(std::move(coeff));
}

// Exact check det(tI - D) == t^2 (t-2)^2 q_k(t).
inline bool char_poly_check(int k) {
  IMat d = dd_matrix(build_gamma(k));
  IntPoly lhs = char_poly(d);
  IntPoly rhs = IntPoly{0, 0, 4, -4, 1} * poly_q(k);
  return lhs == rhs;
}

// The four distinguished integer eigenvectors of D over V11:
//   x1, x2 = xi span the eigenvalue-2 eigenspace,
//   y1, y2 = eta span the kernel.
struct EigvecBasis {
  std::vector<long long> x1, x2, y1, y2;
};

inline EigvecBasis eigvec_basis(int k) {
  const std::size_t dim = static_cast<std::size_t>(2 * k + 6);
  EigvecBasis b;
  b.x1.assign(dim, 0);
  b.x2.assign(dim, 0);
  b.y1.assign(dim, 0);
  b.y2.assign(dim, 0);
  // V11 order: b3 b1 c3 c1 a_{4k+2} ... a0; a_{2j} sits at index 2k+5-j.
  auto a_index = [&](int j) { return static_cast<std::size_t>(2 * k + 5 - j); };
  const long long leg = (k % 2 == 0) ? -1 : 1;  // (-1)^(k+1)
  for (int j = 0; j <= 2 * k + 1; ++j) {
    b.x1[a_index(j)] = 2 * ((j / 2) % 2 == 0 ? 1 : -1);
    b.y1[a_index(j)] = 2 * (j % 2 == 0 ? 1 : -1);
  }
  b.x1[0] = b.x1[1] = b.x1[2] = b.x1[3] = leg;
  b.y1[0] = -1;  // b3
  b.y1[1] = 1;   // b1
  b.y1[2] = -1;  // c3
  b.y1[3] = 1;   // c1
  b.x2 = {1, 1, -1, -1};
  b.x2.resize(dim, 0);
  b.y2 = {-1, 1, 1, -1};
  b.y2.resize(dim, 0);

  IMat d = dd_matrix(build_gamma(k));
  auto check = [&](const std::vector<long long>& v, long long lambda, const char* name) {
    for (std::size_t i = 0; i < dim; ++i) {
      long long s = 0;
      for (std::size_t j = 0; j < dim; ++j) s += d[i][j] * v[j];
      if (s != lambda * v[i])
        throw std::logic_error(std::string("eigvec_basis: ") + name +
                               " fails the exact eigen relation");
    }
  };
  check(b.x1, 2, "x1");
  check(b.x2, 2, "x2");
  check(b.y1, 0, "y1");
  check(b.y2, 0, "y2");
  return b;
}

// Greek display names for DOT and pretty output: a4 -> "α_4",
// b2* -> "β̄_2", a2' -> "α'_2".
inline std::string display_label(const std::string& label) {
  if (label == "f" || label == "g") return label;
  std::string greek;
  switch (label[0]) {
    case 'a': greek = "α"; break;
    case 'b': greek = "β"; break;
    case 'c': greek = "γ"; break;
    default: return label;
  }
  std::string digits, suffix;
  for (std::size_t i = 1; i < label.size(); ++i) {
    if (label[i] >= '0' && label[i] <= '9') digits += label[i];
    else suffix += label[i];
  }
  std::string out = greek;
  if (suffix == "*") out += "̄";  // combining macron: conjugate
  if (suffix == "'") out += "'";
  return out + "_" + digits;
}

inline std::string to_dot(const BipartiteGraph& g, const std::string& name) {
  std::string out = "graph " + name + " {\n  node [shape=circle];\n";
  for (const auto& l : g.even_labels)
    out += "  \"" + display_label(l) + "\";\n";
  for (std::size_t i = 0; i < g.even_labels.size(); ++i)
    for (std::size_t j = 0; j < g.odd_labels.size(); ++j)
      for (long long e = 0; e < g.adj[i][j]; ++e)
        out += "  \"" + display_label(g.even_labels[i]) + "\" -- \"" +
               display_label(g.odd_labels[j]) + "\";\n";
  out += "}\n";
  return out;
}

}  // namespace fusionk
