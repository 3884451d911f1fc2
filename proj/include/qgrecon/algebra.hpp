#pragma once

#include <map>
#include <vector>

#include "qgrecon/commutant.hpp"

namespace qgr {

/// u^{(k)}_{rows,cols} = u_{r1 c1} ... u_{rk ck}. Indices are 0-based
/// internally; file formats use 1-based indices.
struct Monomial {
  std::vector<int> rows, cols;

  int degree() const { return static_cast<int>(rows.size()); }
  auto operator<=>(const Monomial&) const = default;
};

inline Monomial concat(const Monomial& a, const Monomial& b) {
  Monomial m = a;
  m.rows.insert(m.rows.end(), b.rows.begin(), b.rows.end());
  m.cols.insert(m.cols.end(), b.cols.begin(), b.cols.end());
  return m;
}

/// A finite linear combination of monomials in the generators u_ij.
struct AlgebraElement {
  int dim = 1;
  std::map<Monomial, cplx> terms;

  AlgebraElement() = default;
  explicit AlgebraElement(int d) : dim(d) {}

  static AlgebraElement unit(int d) {
    AlgebraElement a(d);
    a.terms[Monomial{}] = 1.0;
    return a;
  }
  static AlgebraElement generator(int d, int i, int j) {
    AlgebraElement a(d);
    a.terms[Monomial{{i}, {j}}] = 1.0;
    return a;
  }

  void add_term(const Monomial& m, cplx c) {
    auto it = terms.find(m);
    if (it == terms.end()) {
      if (c != 0.0) terms.emplace(m, c);
    } else {
      it->second += c;
      if (it->second == 0.0) terms.erase(it);
    }
  }

  AlgebraElement& operator+=(const AlgebraElement& o) {
    for (const auto& [m, c] : o.terms) add_term(m, c);
    return *this;
  }
  AlgebraElement& operator-=(const AlgebraElement& o) {
    for (const auto& [m, c] : o.terms) add_term(m, -c);
    return *this;
  }
  AlgebraElement& operator*=(cplx s) {
    if (s == 0.0) {
      terms.clear();
      return *this;
    }
    for (auto& [m, c] : terms) c *= s;
    return *this;
  }
  int max_degree() const {
    int m = 0;
    for (const auto& [mono, c] : terms) m = std::max(m, mono.degree());
    return m;
  }
};

inline AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
inline AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
inline AlgebraElement operator*(cplx s, AlgebraElement a) { return a *= s; }

/// Tensor-algebra product: bilinear extension of monomial concatenation.
inline AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b) {
  if (a.dim != b.dim) throw std::invalid_argument("multiply: dimension mismatch");
  AlgebraElement out(a.dim);
  for (const auto& [ma, ca] : a.terms)
    for (const auto& [mb, cb] : b.terms) out.add_term(concat(ma, mb), ca * cb);
  return out;
}

/// Coproduct in the graded tensor square, as a sparse coefficient map.
/// On monomials, Delta(u^{(k)}_{i,j}) = sum_m u^{(k)}_{i,m} tensor u^{(k)}_{m,j}.
inline std::map<std::pair<Monomial, Monomial>, cplx> comultiply(const AlgebraElement& a) {
  std::map<std::pair<Monomial, Monomial>, cplx> out;
  int d = a.dim;
  for (const auto& [mono, c] : a.terms) {
    int k = mono.degree();
    long count = power_dim(d, k);
    std::vector<int> mid(k, 0);
    for (long idx = 0; idx < count; ++idx) {
      long rem = idx;
      for (int p = k - 1; p >= 0; --p) {
        mid[p] = static_cast<int>(rem % d);
        rem /= d;
      }
      auto key = std::make_pair(Monomial{mono.rows, mid}, Monomial{mid, mono.cols});
      auto [it, fresh] = out.emplace(key, c);
      if (!fresh) {
        it->second += c;
        if (it->second == 0.0) out.erase(it);
      }
    }
  }
  return out;
}

/// Counit: multiplicative-linear extension of eps(u_ij) = delta_ij.
inline cplx counit(const AlgebraElement& a) {
  cplx out = 0.0;
  for (const auto& [mono, c] : a.terms)
    if (mono.rows == mono.cols) out += c;
  return out;
}

// ---- coordinates on the truncated algebra A_n ----

inline long algebra_dim(int d, int n) {
  long total = 0;
  for (int k = 0; k <= n; ++k) total += power_dim(d, k) * power_dim(d, k);
  return total;
}

inline long multi_index(const std::vector<int>& v, int d) {
  long idx = 0;
  for (int x : v) idx = idx * d + x;
  return idx;
}

inline std::vector<int> multi_index_inverse(long idx, int d, int k) {
  std::vector<int> v(k);
  for (int p = k - 1; p >= 0; --p) {
    v[p] = static_cast<int>(idx % d);
    idx /= d;
  }
  return v;
}

inline long monomial_index(const Monomial& m, int d) {
  int k = m.degree();
  long off = 0;
  for (int j = 0; j < k; ++j) off += power_dim(d, j) * power_dim(d, j);
  return off + multi_index(m.rows, d) * power_dim(d, k) + multi_index(m.cols, d);
}

inline Monomial monomial_from_index(long idx, int d, int n) {
  for (int k = 0; k <= n; ++k) {
    long sz = power_dim(d, k) * power_dim(d, k);
    if (idx < sz) {
      long dk = power_dim(d, k);
      return Monomial{multi_index_inverse(idx / dk, d, k), multi_index_inverse(idx % dk, d, k)};
    }
    idx -= sz;
  }
  throw std::out_of_range("monomial_from_index");
}

inline Vec to_vector(const AlgebraElement& a, int n) {
  Vec v = Vec::Zero(algebra_dim(a.dim, n));
  for (const auto& [mono, c] : a.terms) {
    if (mono.degree() > n) throw std::invalid_argument("to_vector: degree overflow");
    v(monomial_index(mono, a.dim)) += c;
  }
  return v;
}

inline AlgebraElement from_vector(const Vec& v, int d, int n) {
  AlgebraElement a(d);
  for (long i = 0; i < v.size(); ++i)
    if (v(i) != 0.0) a.add_term(monomial_from_index(i, d, n), v(i));
  return a;
}

/// Evaluation pairing between A_n and block operators: on a monomial
/// u^{(k)}_{i,j} it returns entry (i,j) of X_k.
inline cplx pair(const AlgebraElement& a, const BlockOperator& x) {
  if (a.dim != x.dim) throw std::invalid_argument("pair: dimension mismatch");
  cplx out = 0.0;
  for (const auto& [mono, c] : a.terms) {
    int k = mono.degree();
    if (k > x.level) throw std::invalid_argument("pair: degree overflow");
    out += c * x.blocks[k](multi_index(mono.rows, a.dim), multi_index(mono.cols, a.dim));
  }
  return out;
}

/// Slice relations of an intertwiner T of grading (k,l): for each (i,j) the
/// element sum_m T(i,m) u^{(k)}_{m,j} - sum_m T(m,j) u^{(l)}_{i,m}.
inline std::vector<AlgebraElement> slice_relations(const InterOp& t) {
  int d = t.dim, k = t.source_power, l = t.target_power;
  long dk = power_dim(d, k), dl = power_dim(d, l);
  std::vector<AlgebraElement> out;
  out.reserve(dk * dl);
  for (long i = 0; i < dl; ++i) {
    auto ivec = multi_index_inverse(i, d, l);
    for (long j = 0; j < dk; ++j) {
      auto jvec = multi_index_inverse(j, d, k);
      AlgebraElement rel(d);
      for (long m = 0; m < dk; ++m)
        if (t.mat(i, m) != 0.0)
          rel.add_term(Monomial{multi_index_inverse(m, d, k), jvec}, t.mat(i, m));
      for (long m = 0; m < dl; ++m)
        if (t.mat(m, j) != 0.0)
          rel.add_term(Monomial{ivec, multi_index_inverse(m, d, l)}, -t.mat(m, j));
      out.push_back(std::move(rel));
    }
  }
  return out;
}

struct IdealBasis {
  int dim = 1;
  int level = 0;
  Mat basis;  // algebra_dim(d, level) x dimension, orthonormal columns
  int dimension = 0;
};

/// Orthonormalized span of all slice relations of all basis intertwiners of
/// the cells with k,l <= level; this is the annihilator of the commutant at
/// that level. By default the collection's own level is used.
inline IdealBasis ideal_basis(const Collection& c, double tol = kDefaultTol,
                              int level = -1) {
  int d = c.dim, n = level < 0 ? c.level : level;
  long adim = algebra_dim(d, n);
  std::vector<Vec> cols;
  for (const auto& [cell, sp] : c.spaces) {
    if (cell.first > n || cell.second > n) continue;
    for (const auto& t : sp.basis)
      for (const auto& rel : slice_relations(t))
        if (!rel.terms.empty()) cols.push_back(to_vector(rel, n));
  }
  Mat stacked(adim, static_cast<long>(cols.size()));
  for (size_t j = 0; j < cols.size(); ++j) stacked.col(static_cast<long>(j)) = cols[j];
  Mat q = col_span(stacked, tol);
  return IdealBasis{d, n, q, static_cast<int>(q.cols())};
}

/// dim(A_m / (I_n intersect A_m)) for m = 0..n; the last entry equals the
/// dimension of the commutant at level n.
inline std::vector<long> quotient_dims(const Collection& c, double tol = kDefaultTol) {
  auto ideal = ideal_basis(c, tol);
  int d = c.dim, n = c.level;
  std::vector<long> out;
  for (int m = 0; m <= n; ++m) {
    long lo = algebra_dim(d, m);
    long hi = algebra_dim(d, n);
    // I_n intersect A_m = kernel of the projection onto the high coordinates
    long inter;
    if (hi == lo) {
      inter = ideal.dimension;
    } else {
      Mat high = ideal.basis.bottomRows(hi - lo);
      inter = ideal.dimension - numerical_rank(high, tol);
    }
    out.push_back(lo - inter);
  }
  return out;
}

}  // namespace qgr
