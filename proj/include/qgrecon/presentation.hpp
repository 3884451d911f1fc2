#pragma once

#include <vector>

#include "qgrecon/algebra.hpp"

namespace qgr {

/// Generator/relation description of the quotient Hopf *-algebra: the
/// relation elements (each equated to zero), the involution and antipode
/// tables on generators, and the fixed comultiplication rule
/// Delta(u_ij) = sum_k u_ik tensor u_kj.
struct Presentation {
  int dim = 1;
  std::vector<AlgebraElement> relations;
  std::vector<AlgebraElement> star_table;      // index i*d+j holds (u_ij)*
  std::vector<AlgebraElement> antipode_table;  // index i*d+j holds S(u_ij)
};

namespace detail {

using SymMat = std::vector<std::vector<AlgebraElement>>;

inline SymMat fundamental_matrix(int d) {
  SymMat u(d, std::vector<AlgebraElement>(d, AlgebraElement(d)));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) u[i][j] = AlgebraElement::generator(d, i, j);
  return u;
}

inline SymMat sym_transpose(const SymMat& a) {
  int n = static_cast<int>(a.size());
  SymMat out(n, std::vector<AlgebraElement>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out[i][j] = a[j][i];
  return out;
}

inline SymMat sym_mul(const SymMat& a, const SymMat& b) {
  int n = static_cast<int>(a.size());
  SymMat out(n, std::vector<AlgebraElement>(n, AlgebraElement(a[0][0].dim)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int m = 0; m < n; ++m) out[i][j] += multiply(a[i][m], b[m][j]);
  return out;
}

inline SymMat num_mul(const Mat& a, const SymMat& b) {
  int n = static_cast<int>(b.size());
  SymMat out(n, std::vector<AlgebraElement>(n, AlgebraElement(b[0][0].dim)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int m = 0; m < n; ++m) out[i][j] += a(i, m) * b[m][j];
  return out;
}

inline SymMat mul_num(const SymMat& a, const Mat& b) {
  int n = static_cast<int>(a.size());
  SymMat out(n, std::vector<AlgebraElement>(n, AlgebraElement(a[0][0].dim)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int m = 0; m < n; ++m) out[i][j] += b(m, j) * a[i][m];
  return out;
}

/// F^t U^t (F^{-1})^t as a matrix of degree-one elements; entry (i,j) is
/// both S(u_ij) and (u_ji)*.
inline SymMat conjugate_fundamental(const Mat& f) {
  int d = static_cast<int>(f.rows());
  Mat finv = f.inverse();
  SymMat ut = sym_transpose(fundamental_matrix(d));
  return mul_num(num_mul(f.transpose(), ut), finv.transpose());
}

}  // namespace detail

/// The free orthogonal presentation for F with FF-bar = +/-1: entries of
/// U F^t U^t (F^{-1})^t - 1 and F^t U^t (F^{-1})^t U - 1, involution
/// (u_ji)* = (F^t U^t (F^{-1})^t)_ij and antipode S(u_ij) = (u_ji)*.
inline std::optional<int> fmatrix_sign(const FMatrix& f, double tol = kDefaultTol) {
  if (f.sign) return f.sign;
  Mat ff = f.entries * f.entries.conjugate();
  Mat id = Mat::Identity(f.dim, f.dim);
  double scale = std::max(1.0, ff.norm());
  if ((ff - id).norm() <= tol * scale) return +1;
  if ((ff + id).norm() <= tol * scale) return -1;
  return std::nullopt;
}

inline Presentation of_plus_relations(const FMatrix& f) {
  if (!fmatrix_sign(f)) throw std::invalid_argument("of_plus_relations: FF-bar is not a sign");
  int d = f.dim;
  Presentation p;
  p.dim = d;
  auto u = detail::fundamental_matrix(d);
  auto ustar = detail::conjugate_fundamental(f.entries);
  auto left = detail::sym_mul(u, ustar);   // U U*  (with U* = F^t U^t (F^-1)^t)
  auto right = detail::sym_mul(ustar, u);  // U* U
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      AlgebraElement r1 = left[i][j];
      if (i == j) r1 -= AlgebraElement::unit(d);
      p.relations.push_back(std::move(r1));
    }
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      AlgebraElement r2 = right[i][j];
      if (i == j) r2 -= AlgebraElement::unit(d);
      p.relations.push_back(std::move(r2));
    }
  p.star_table.resize(static_cast<size_t>(d) * d);
  p.antipode_table.resize(static_cast<size_t>(d) * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      p.antipode_table[static_cast<size_t>(i) * d + j] = ustar[i][j];  // S(u_ij)
      p.star_table[static_cast<size_t>(j) * d + i] = ustar[i][j];      // (u_ji)*
    }
  return p;
}

/// Antilinear antimultiplicative extension of the generator involution.
inline AlgebraElement star_element(const AlgebraElement& a, const FMatrix& f) {
  auto p = of_plus_relations(f);
  int d = a.dim;
  AlgebraElement out(d);
  for (const auto& [mono, c] : a.terms) {
    AlgebraElement prod = AlgebraElement::unit(d);
    for (int t = mono.degree() - 1; t >= 0; --t)
      prod = multiply(prod, p.star_table[static_cast<size_t>(mono.rows[t]) * d + mono.cols[t]]);
    out += std::conj(c) * prod;
  }
  return out;
}

/// Linear antimultiplicative extension of the antipode table.
inline AlgebraElement antipode_element(const AlgebraElement& a, const FMatrix& f) {
  auto p = of_plus_relations(f);
  int d = a.dim;
  AlgebraElement out(d);
  for (const auto& [mono, c] : a.terms) {
    AlgebraElement prod = AlgebraElement::unit(d);
    for (int t = mono.degree() - 1; t >= 0; --t)
      prod = multiply(prod, p.antipode_table[static_cast<size_t>(mono.rows[t]) * d + mono.cols[t]]);
    out += c * prod;
  }
  return out;
}

inline Mat tensor_power_matrix(const Mat& f, int k) {
  Mat out = Mat::Identity(1, 1);
  for (int i = 0; i < k; ++i) out = kron(out, f);
  return out;
}

/// The conjugate morphism: for T of grading (k,l),
/// T^vee = (F_l^{-1} T F_k)^t with F_m = F tensor ... tensor F.
inline InterOp conjugate_morphism(const InterOp& t, const FMatrix& f) {
  Mat fl = tensor_power_matrix(f.entries, t.target_power);
  Mat fk = tensor_power_matrix(f.entries, t.source_power);
  Mat m = (fl.inverse() * t.mat * fk).transpose();
  return InterOp(t.dim, t.target_power, t.source_power, std::move(m));
}

/// Inverse of the conjugate morphism: (l,k) -> (k,l), T -> F_l T^t F_k^{-1}.
inline InterOp conjugate_morphism_inverse(const InterOp& t, const FMatrix& f) {
  // here t has grading (l,k); the result has grading (k,l)
  Mat fl = tensor_power_matrix(f.entries, t.source_power);
  Mat fk = tensor_power_matrix(f.entries, t.target_power);
  Mat m = fl * t.mat.transpose() * fk.inverse();
  return InterOp(t.dim, t.target_power, t.source_power, std::move(m));
}

/// T-tilde = F_l (T*)^t F_k^{-1}, grading-preserving on C(k,l).
inline InterOp tilde_morphism(const InterOp& t, const FMatrix& f) {
  Mat fl = tensor_power_matrix(f.entries, t.target_power);
  Mat fk = tensor_power_matrix(f.entries, t.source_power);
  Mat m = fl * Mat(t.mat.adjoint()).transpose() * fk.inverse();
  return InterOp(t.dim, t.source_power, t.target_power, std::move(m));
}

/// Categorical route to the conjugate morphism, through cups and caps built
/// from R at tensor-power level: equals sign^l times the matrix formula.
inline InterOp categorical_conjugate(const InterOp& t, const InterOp& R) {
  int d = t.dim, k = t.source_power, l = t.target_power;
  FMatrix f = extract_F(R);
  auto cup = [&](int m) {
    // (id_m tensor F_m) applied to sum_J e_J tensor e_J, as InterOp(0, 2m)
    long dm = power_dim(d, m);
    Mat fm = tensor_power_matrix(f.entries, m);
    Mat v = Mat::Zero(dm * dm, 1);
    for (long a = 0; a < dm; ++a)
      for (long b = 0; b < dm; ++b) v(a * dm + b, 0) = fm(b, a);
    return InterOp(d, 0, 2 * m, std::move(v));
  };
  InterOp rk = cup(k), rl = cup(l);
  InterOp step1 = tensor_op(rk, identity_op(d, l));
  InterOp step2 = tensor_op(tensor_op(identity_op(d, k), t), identity_op(d, l));
  InterOp step3 = tensor_op(identity_op(d, k), adjoint_op(rl));
  return compose_op(step3, compose_op(step2, step1));
}

struct UqGenerators {
  int dim = 0;  // 2m for Q in GL_m
  FMatrix F;
  InterOp R;
  InterOp p;  // projection onto the first summand
  Presentation presentation;
};

/// The free unitary construction on H = K + K-bar: block antidiagonal F with
/// blocks Q-bar^{-1} and Q, the resulting R (sign +1), the projection p onto
/// K, and the presentation extended by the linear relations pU = Up.
inline UqGenerators uq_plus_generators(const Mat& q, double tol = kDefaultTol) {
  int m = static_cast<int>(q.rows());
  if (q.rows() != q.cols()) throw std::invalid_argument("uq_plus_generators: Q not square");
  Eigen::JacobiSVD<Mat> svd(q);
  const auto& sv = svd.singularValues();
  if (sv(sv.size() - 1) <= tol * std::max(1.0, sv(0)))
    throw std::invalid_argument("uq_plus_generators: Q singular");
  int d = 2 * m;
  Mat f = Mat::Zero(d, d);
  f.block(0, m, m, m) = q.conjugate().inverse();
  f.block(m, 0, m, m) = q;
  UqGenerators out;
  out.dim = d;
  out.R = build_R_from_F(FMatrix{d, f, std::nullopt});
  out.F = extract_F(out.R, tol);
  Mat proj = Mat::Zero(d, d);
  proj.block(0, 0, m, m) = Mat::Identity(m, m);
  out.p = InterOp(d, 1, 1, proj);
  out.presentation = of_plus_relations(out.F);
  out.presentation.dim = d;
  // linear relations: entries of pU - Up
  auto u = detail::fundamental_matrix(d);
  auto pu = detail::num_mul(proj, u);
  auto up = detail::mul_num(u, proj);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      AlgebraElement rel = pu[i][j] - up[i][j];
      if (!rel.terms.empty()) out.presentation.relations.push_back(std::move(rel));
    }
  return out;
}

}  // namespace qgr
