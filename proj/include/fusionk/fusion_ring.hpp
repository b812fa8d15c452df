#pragma once

// The bi-graded fusion table: basis elements labeled by the vertices of
// (Gamma_k, Gamma'_k), structure constants N_{X,Y}^Z, the axiom verifier
// battery, and canonical JSON / CSV / pretty serialization.
//
// Basis order is frozen: V11, V12 (adjacency-matrix display order), then
// V21, V22 (ascending chain order); see graphs.hpp. Products X.Y are defined
// when the right grade of X matches the left grade of Y, and expand over the
// basis elements of grade (left of X, right of Y) with integer coefficients
// N_{X,Y}^Z >= 0.

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <string>
#include <vector>

#include "fusionk/graphs.hpp"
#include "fusionk/spectral.hpp"

namespace fusionk {

enum class Coeff : unsigned char { N, M };

struct Grade {
  Coeff src = Coeff::N;
  Coeff dst = Coeff::N;
  friend bool operator==(Grade a, Grade b) { return a.src == b.src && a.dst == b.dst; }
  friend bool operator!=(Grade a, Grade b) { return !(a == b); }
  Grade reversed() const { return {dst, src}; }
};

inline std::string grade_code(Grade g) {
  std::string s;
  s += g.src == Coeff::N ? 'N' : 'M';
  s += g.dst == Coeff::N ? 'N' : 'M';
  return s;
}

inline Grade parse_grade(const std::string& s) {
  if (s.size() != 2 || (s[0] != 'N' && s[0] != 'M') || (s[1] != 'N' && s[1] != 'M'))
    throw std::invalid_argument("bad grade code: " + s);
  return {s[0] == 'N' ? Coeff::N : Coeff::M, s[1] == 'N' ? Coeff::N : Coeff::M};
}

struct BasisElement {
  std::string label;
  Grade grade;
  int conjugate = -1;  // index of the conjugate partner
};

struct CheckResult {
  bool ok = true;
  std::string witness;  // first failure, human-readable
};

class FusionTable {
public:
  // Basis skeleton for level k: labels, grades and the conjugation
  // involution, with no coefficients yet.
  static FusionTable skeleton(int k) {
    if (k < 0) throw std::invalid_argument("FusionTable: negative k");
    FusionTable t;
    t.k_ = k;
    auto add = [&](const std::vector<std::string>& labels, Grade g) {
      for (const auto& l : labels) t.basis_.push_back({l, g, -1});
    };
    add(v11_labels(k), {Coeff::N, Coeff::N});
    add(v12_labels(k), {Coeff::N, Coeff::M});
    add(v21_labels(k), {Coeff::M, Coeff::N});
    add(v22_labels(k), {Coeff::M, Coeff::M});
    for (int i = 0; i < t.size(); ++i) {
      const std::string& l = t.basis_[static_cast<std::size_t>(i)].label;
      std::string partner = l;
      if (l == "b3") partner = "c3";
      else if (l == "c3") partner = "b3";
      else if (l.back() == '*') partner = l.substr(0, l.size() - 1);
      else if (t.basis_[static_cast<std::size_t>(i)].grade == Grade{Coeff::N, Coeff::M})
        partner = l + "*";
      t.basis_[static_cast<std::size_t>(i)].conjugate = t.index_of(partner);
    }
    t.id_n_ = t.index_of("a0");
    t.id_m_ = t.index_of("a0'");
    t.prod_.assign(static_cast<std::size_t>(t.size()) * static_cast<std::size_t>(t.size()), {});
    return t;
  }

  int k() const { return k_; }
  int size() const { return static_cast<int>(basis_.size()); }
  const std::vector<BasisElement>& basis() const { return basis_; }
  const BasisElement& element(int i) const { return basis_.at(static_cast<std::size_t>(i)); }
  int identity(Coeff c) const { return c == Coeff::N ? id_n_ : id_m_; }
  int conj(int i) const { return basis_.at(static_cast<std::size_t>(i)).conjugate; }

  int index_of(const std::string& label) const {
    for (int i = 0; i < size(); ++i)
      if (basis_[static_cast<std::size_t>(i)].label == label) return i;
    throw std::out_of_range("FusionTable: unknown label " + label);
  }

  bool compatible(int x, int y) const {
    return basis_[static_cast<std::size_t>(x)].grade.dst ==
           basis_[static_cast<std::size_t>(y)].grade.src;
  }
  Grade product_grade(int x, int y) const {
    return {basis_[static_cast<std::size_t>(x)].grade.src,
            basis_[static_cast<std::size_t>(y)].grade.dst};
  }

  void set(int x, int y, int z, long long n) {
    if (!compatible(x, y) || basis_[static_cast<std::size_t>(z)].grade != product_grade(x, y))
      throw std::invalid_argument("FusionTable: grade-incompatible coefficient");
    if (n < 0) throw std::invalid_argument("FusionTable: negative coefficient");
    if (n == 0) return;
    auto& exp = prod_[slot(x, y)];
    auto it = std::lower_bound(exp.begin(), exp.end(), z,
                               [](const auto& p, int v) { return p.first < v; });
    if (it != exp.end() && it->first == z) throw std::invalid_argument("FusionTable: duplicate coefficient");
    exp.insert(it, {z, n});
  }

  long long coeff(int x, int y, int z) const {
    const auto& exp = prod_[slot(x, y)];
    auto it = std::lower_bound(exp.begin(), exp.end(), z,
                               [](const auto& p, int v) { return p.first < v; });
    return it != exp.end() && it->first == z ? it->second : 0;
  }

  // Sorted (z, N_{x,y}^z) pairs with nonzero coefficient.
  const std::vector<std::pair<int, long long>>& expansion(int x, int y) const {
    return prod_[slot(x, y)];
  }

private:
  int k_ = 0;
  std::vector<BasisElement> basis_;
  int id_n_ = -1, id_m_ = -1;
  std::vector<std::vector<std::pair<int, long long>>> prod_;

  std::size_t slot(int x, int y) const {
    return static_cast<std::size_t>(x) * static_cast<std::size_t>(basis_.size()) +
           static_cast<std::size_t>(y);
  }
};

// ---------------------------------------------------------------------------
// Axiom verifiers. Each returns ok plus a witness string for the first
// violation found.

namespace detail {
inline std::string triple_name(const FusionTable& t, int x, int y, int z) {
  return "N(" + t.element(x).label + "," + t.element(y).label + ")^" + t.element(z).label;
}
}  // namespace detail

// Six-fold Frobenius reciprocity over every grade-compatible triple.
inline CheckResult verify_frobenius(const FusionTable& t) {
  for (int x = 0; x < t.size(); ++x)
    for (int y = 0; y < t.size(); ++y) {
      if (!t.compatible(x, y)) continue;
      for (int z = 0; z < t.size(); ++z) {
        if (t.element(z).grade != t.product_grade(x, y)) continue;
        long long n = t.coeff(x, y, z);
        const int xb = t.conj(x), yb = t.conj(y), zb = t.conj(z);
        const long long variants[5] = {t.coeff(z, yb, x), t.coeff(xb, z, y),
                                       t.coeff(yb, xb, zb), t.coeff(zb, x, yb),
                                       t.coeff(y, zb, xb)};
        for (long long v : variants)
          if (v != n)
            return {false, detail::triple_name(t, x, y, z) + " = " + std::to_string(n) +
                               " breaks Frobenius reciprocity"};
      }
    }
  return {};
}

// sum_W N_{X,Y}^W N_{W,Z}^V == sum_U N_{Y,Z}^U N_{X,U}^V for all V.
inline CheckResult verify_associativity(const FusionTable& t) {
  const std::size_t nb = static_cast<std::size_t>(t.size());
  std::vector<long long> lhs(nb), rhs(nb);
  for (int x = 0; x < t.size(); ++x)
    for (int y = 0; y < t.size(); ++y) {
      if (!t.compatible(x, y)) continue;
      for (int z = 0; z < t.size(); ++z) {
        if (!t.compatible(y, z)) continue;
        std::fill(lhs.begin(), lhs.end(), 0);
        std::fill(rhs.begin(), rhs.end(), 0);
        for (const auto& [w, nw] : t.expansion(x, y))
          for (const auto& [v, nv] : t.expansion(w, z)) lhs[static_cast<std::size_t>(v)] += nw * nv;
        for (const auto& [u, nu] : t.expansion(y, z))
          for (const auto& [v, nv] : t.expansion(x, u)) rhs[static_cast<std::size_t>(v)] += nu * nv;
        for (std::size_t v = 0; v < nb; ++v)
          if (lhs[v] != rhs[v])
            return {false, "(" + t.element(x).label + " " + t.element(y).label + ") " +
                               t.element(z).label + " != " + t.element(x).label + " (" +
                               t.element(y).label + " " + t.element(z).label + ") at " +
                               t.element(static_cast<int>(v)).label};
      }
    }
  return {};
}

// Identity coefficients are Kronecker deltas; conjugation reverses products.
inline CheckResult verify_identity_conjugation(const FusionTable& t) {
  for (int x = 0; x < t.size(); ++x) {
    const Grade g = t.element(x).grade;
    const int il = t.identity(g.src), ir = t.identity(g.dst);
    for (int y = 0; y < t.size(); ++y) {
      if (t.element(y).grade == g) {
        if (t.coeff(il, x, y) != (x == y ? 1 : 0))
          return {false, detail::triple_name(t, il, x, y) + " is not a Kronecker delta"};
        if (t.coeff(x, ir, y) != (x == y ? 1 : 0))
          return {false, detail::triple_name(t, x, ir, y) + " is not a Kronecker delta"};
      }
    }
    const int xc = t.conj(x);
    if (t.conj(xc) != x) return {false, "conjugation is not an involution at " + t.element(x).label};
    if (!(t.element(xc).grade == g.reversed()))
      return {false, "conjugation does not reverse the grade of " + t.element(x).label};
  }
  for (int x = 0; x < t.size(); ++x)
    for (int y = 0; y < t.size(); ++y) {
      if (!t.compatible(x, y)) continue;
      for (int z = 0; z < t.size(); ++z) {
        if (t.element(z).grade != t.product_grade(x, y)) continue;
        if (t.coeff(x, y, z) != t.coeff(t.conj(y), t.conj(x), t.conj(z)))
          return {false, detail::triple_name(t, x, y, z) + " differs from its conjugate triple"};
      }
    }
  return {};
}

// Every stored coefficient is a nonnegative integer by construction; this
// re-scans a deserialized table.
inline CheckResult verify_nonnegativity(const FusionTable& t) {
  for (int x = 0; x < t.size(); ++x)
    for (int y = 0; y < t.size(); ++y) {
      if (!t.compatible(x, y)) continue;
      for (const auto& [z, n] : t.expansion(x, y))
        if (n < 0) return {false, detail::triple_name(t, x, y, z) + " is negative"};
    }
  return {};
}

// Perron-Frobenius dimension of every basis element, glued across the two
// graphs and normalized to 1 at both identities.
inline std::vector<double> pf_dimensions(const FusionTable& t) {
  BipartiteGraph gamma = build_gamma(t.k());
  BipartiteGraph gammap = build_gamma_prime(t.k());
  PFWeights wa = pf_weights(gamma, "a0");
  PFWeights wb = pf_weights(gammap, "a0'");
  std::vector<double> dim(static_cast<std::size_t>(t.size()), 0.0);
  for (std::size_t i = 0; i < gamma.even_labels.size(); ++i)
    dim[static_cast<std::size_t>(t.index_of(gamma.even_labels[i]))] = wa.even[i];
  for (std::size_t i = 0; i < gamma.odd_labels.size(); ++i)
    dim[static_cast<std::size_t>(t.index_of(gamma.odd_labels[i]))] = wa.odd[i];
  for (std::size_t i = 0; i < gammap.even_labels.size(); ++i)
    dim[static_cast<std::size_t>(t.index_of(gammap.even_labels[i]))] = wb.even[i];
  for (std::size_t i = 0; i < gammap.odd_labels.size(); ++i)
    dim[static_cast<std::size_t>(t.index_of(gammap.odd_labels[i]))] = wb.odd[i];
  return dim;
}

// Multiplicativity of the dimension function across the table.
inline CheckResult verify_dimension(const FusionTable& t, const std::vector<double>& dim,
                                    double rel_tol = 1e-6) {
  double worst = 0;
  std::string where;
  for (int x = 0; x < t.size(); ++x)
    for (int y = 0; y < t.size(); ++y) {
      if (!t.compatible(x, y)) continue;
      double lhs = 0;
      for (const auto& [z, n] : t.expansion(x, y))
        lhs += static_cast<double>(n) * dim[static_cast<std::size_t>(z)];
      double rhs = dim[static_cast<std::size_t>(x)] * dim[static_cast<std::size_t>(y)];
      double rel = std::fabs(lhs - rhs) / rhs;
      if (rel > worst) {
        worst = rel;
        where = t.element(x).label + "." + t.element(y).label;
      }
    }
  if (worst > rel_tol)
    return {false, "dimension multiplicativity off by " + std::to_string(worst) + " at " + where};
  return {};
}

// ---------------------------------------------------------------------------
// Serialization. The JSON layout is canonical: fixed key order, fixed
// indentation, coefficients sorted by basis index, one object per line,
// trailing newline. Identical tables serialize to identical bytes.

inline std::string serialize(const FusionTable& t) {
  std::string out;
  out += "{\n";
  out += "  \"k\": " + std::to_string(t.k()) + ",\n";
  out += "  \"basis\": [\n";
  for (int i = 0; i < t.size(); ++i) {
    const BasisElement& b = t.element(i);
    out += "    {\"label\": \"" + b.label + "\", \"grade\": \"" + grade_code(b.grade) +
           "\", \"conjugate\": \"" + t.element(b.conjugate).label + "\"}";
    out += i + 1 < t.size() ? ",\n" : "\n";
  }
  out += "  ],\n";
  out += "  \"coefficients\": [\n";
  std::string rows;
  for (int x = 0; x < t.size(); ++x)
    for (int y = 0; y < t.size(); ++y) {
      if (!t.compatible(x, y)) continue;
      for (const auto& [z, n] : t.expansion(x, y)) {
        if (!rows.empty()) rows += ",\n";
        rows += "    {\"x\": \"" + t.element(x).label + "\", \"y\": \"" + t.element(y).label +
                "\", \"z\": \"" + t.element(z).label + "\", \"n\": " + std::to_string(n) + "}";
      }
    }
  out += rows + "\n  ]\n}\n";
  return out;
}

struct ParseError : std::runtime_error {
  std::size_t position;
  ParseError(std::size_t pos, const std::string& msg)
      : std::runtime_error("parse error at byte " + std::to_string(pos) + ": " + msg),
        position(pos) {}
};

namespace detail {

// Minimal JSON reader for the canonical schema: objects, arrays, strings
// and integers.
class JsonReader {
public:
  explicit JsonReader(const std::string& s) : s_(s) {}

  void expect(char c) {
    skip_ws();
    if (pos_ >= s_.size() || s_[pos_] != c)
      throw ParseError(pos_, std::string("expected '") + c + "'");
    ++pos_;
  }
  bool try_consume(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  std::string string_value() {
    skip_ws();
    if (pos_ >= s_.size() || s_[pos_] != '"') throw ParseError(pos_, "expected string");
    ++pos_;
    std::string out;
    while (pos_ < s_.size() && s_[pos_] != '"') {
      char c = s_[pos_];
      if (c == '\\') {
        if (pos_ + 1 >= s_.size()) throw ParseError(pos_, "dangling escape");
        char e = s_[pos_ + 1];
        if (e == '"' || e == '\\' || e == '/') out += e;
        else throw ParseError(pos_, "unsupported escape");
        pos_ += 2;
        continue;
      }
      if (static_cast<unsigned char>(c) < 0x20) throw ParseError(pos_, "control char in string");
      out += c;
      ++pos_;
    }
    if (pos_ >= s_.size()) throw ParseError(pos_, "unterminated string");
    ++pos_;
    return out;
  }
  long long int_value() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < s_.size() && s_[pos_] == '-') ++pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == start || (s_[start] == '-' && pos_ == start + 1))
      throw ParseError(start, "expected integer");
    if (pos_ < s_.size() && (s_[pos_] == '.' || s_[pos_] == 'e' || s_[pos_] == 'E'))
      throw ParseError(pos_, "non-integer number");
    if (pos_ - start > 18) throw ParseError(start, "integer out of range");
    return std::stoll(s_.substr(start, pos_ - start));
  }
  std::string key() {
    std::string k = string_value();
    expect(':');
    return k;
  }
  void end(std::size_t* where = nullptr) {
    skip_ws();
    if (where) *where = pos_;
    if (pos_ != s_.size()) throw ParseError(pos_, "trailing content");
  }
  std::size_t pos() const { return pos_; }

private:
  const std::string& s_;
  std::size_t pos_ = 0;

  void skip_ws() {
    while (pos_ < s_.size() &&
           (s_[pos_] == ' ' || s_[pos_] == '\n' || s_[pos_] == '\t' || s_[pos_] == '\r'))
      ++pos_;
  }
};

}  // namespace detail

// Parses a canonical table file. Rejects malformed input with the byte
// position; validates the basis against the frozen skeleton for its k and
// every coefficient for grade compatibility and nonnegativity.
inline FusionTable deserialize(const std::string& text) {
  detail::JsonReader r(text);
  r.expect('{');
  if (r.key() != "k") throw ParseError(r.pos(), "expected \"k\" first");
  long long kv = r.int_value();
  if (kv < 0 || kv > 1000) throw ParseError(r.pos(), "k out of range");
  FusionTable t = FusionTable::skeleton(static_cast<int>(kv));

  r.expect(',');
  if (r.key() != "basis") throw ParseError(r.pos(), "expected \"basis\"");
  r.expect('[');
  for (int i = 0; i < t.size(); ++i) {
    if (i > 0) r.expect(',');
    r.expect('{');
    std::string label, grade, conj;
    for (int f = 0; f < 3; ++f) {
      if (f > 0) r.expect(',');
      std::string key = r.key();
      if (key == "label") label = r.string_value();
      else if (key == "grade") grade = r.string_value();
      else if (key == "conjugate") conj = r.string_value();
      else throw ParseError(r.pos(), "unknown basis field " + key);
    }
    r.expect('}');
    const BasisElement& want = t.element(i);
    if (label != want.label || parse_grade(grade) != want.grade ||
        conj != t.element(want.conjugate).label)
      throw ParseError(r.pos(), "basis entry " + std::to_string(i) +
                                    " does not match the frozen order (got " + label + ")");
  }
  r.expect(']');

  r.expect(',');
  if (r.key() != "coefficients") throw ParseError(r.pos(), "expected \"coefficients\"");
  r.expect('[');
  if (!r.try_consume(']')) {
    do {
      r.expect('{');
      std::string xs, ys, zs;
      long long n = -1;
      for (int f = 0; f < 4; ++f) {
        if (f > 0) r.expect(',');
        std::string key = r.key();
        if (key == "x") xs = r.string_value();
        else if (key == "y") ys = r.string_value();
        else if (key == "z") zs = r.string_value();
        else if (key == "n") n = r.int_value();
        else throw ParseError(r.pos(), "unknown coefficient field " + key);
      }
      r.expect('}');
      std::size_t at = r.pos();
      try {
        t.set(t.index_of(xs), t.index_of(ys), t.index_of(zs), n);
      } catch (const std::exception& e) {
        throw ParseError(at, e.what());
      }
    } while (r.try_consume(','));
    r.expect(']');
  }
  r.expect('}');
  r.end();
  return t;
}

// CSV export of the per-pair product expansions, same order as the JSON.
inline std::string to_csv(const FusionTable& t) {
  std::string out = "x,y,z,n\n";
  for (int x = 0; x < t.size(); ++x)
    for (int y = 0; y < t.size(); ++y) {
      if (!t.compatible(x, y)) continue;
      for (const auto& [z, n] : t.expansion(x, y))
        out += t.element(x).label + "," + t.element(y).label + "," + t.element(z).label + "," +
               std::to_string(n) + "\n";
    }
  return out;
}

// Human-readable product list with display names, one product per line.
inline std::string to_pretty(const FusionTable& t) {
  std::string out;
  for (int x = 0; x < t.size(); ++x)
    for (int y = 0; y < t.size(); ++y) {
      if (!t.compatible(x, y)) continue;
      out += display_label(t.element(x).label) + " . " + display_label(t.element(y).label) + " =";
      const auto& exp = t.expansion(x, y);
      if (exp.empty()) {
        out += " 0";
      } else {
        bool first = true;
        for (const auto& [z, n] : exp) {
          out += first ? " " : " + ";
          if (n != 1) out += std::to_string(n) + " ";
          out += display_label(t.element(z).label);
          first = false;
        }
      }
      out += "\n";
    }
  return out;
}

}  // namespace fusionk
