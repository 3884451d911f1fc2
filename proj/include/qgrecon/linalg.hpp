#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <complex>
#include <stdexcept>

namespace qgr {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline constexpr double kDefaultTol = 1e-9;

/// d^k as a matrix dimension. Throws on overflow past 2^31.
inline long power_dim(int d, int k) {
  long r = 1;
  for (int i = 0; i < k; ++i) {
    r *= d;
    if (r > (1L << 31)) throw std::overflow_error("power_dim: dimension overflow");
  }
  return r;
}

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (long i = 0; i < a.rows(); ++i)
    for (long j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// Hilbert-Schmidt inner product Tr(b* a).
inline cplx hs_inner(const Mat& a, const Mat& b) {
  return (b.conjugate().cwiseProduct(a)).sum();
}

inline double hs_norm(const Mat& a) { return a.norm(); }

/// Orthonormal basis of the column space, rank decided by relative
/// singular-value threshold.
inline Mat col_span(const Mat& a, double tol = kDefaultTol) {
  if (a.cols() == 0 || a.rows() == 0) return Mat(a.rows(), 0);
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  double cutoff = tol * std::max(1.0, sv.size() ? sv(0) : 0.0);
  long r = 0;
  while (r < sv.size() && sv(r) > cutoff) ++r;
  return svd.matrixU().leftCols(r);
}

inline int numerical_rank(const Mat& a, double tol = kDefaultTol) {
  if (a.cols() == 0 || a.rows() == 0) return 0;
  Eigen::JacobiSVD<Mat> svd(a);
  const auto& sv = svd.singularValues();
  double cutoff = tol * std::max(1.0, sv(0));
  int r = 0;
  while (r < sv.size() && sv(r) > cutoff) ++r;
  return r;
}

/// Orthonormal basis of the null space of a.
inline Mat null_space(const Mat& a, double tol = kDefaultTol) {
  if (a.cols() == 0) return Mat(0, 0);
  if (a.rows() == 0) return Mat::Identity(a.cols(), a.cols());
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  double cutoff = tol * std::max(1.0, sv.size() ? sv(0) : 0.0);
  long r = 0;
  while (r < sv.size() && sv(r) > cutoff) ++r;
  return svd.matrixV().rightCols(a.cols() - r);
}

/// Norm of v minus its orthogonal projection onto the span of q's
/// orthonormal columns.
inline double residual_norm(const Mat& q, const Vec& v) {
  if (q.cols() == 0) return v.norm();
  return (v - q * (q.adjoint() * v)).norm();
}

/// Spectral norm of the difference of the orthogonal projectors onto the
/// column spans of q1 and q2 (orthonormal columns assumed).
inline double subspace_distance(const Mat& q1, const Mat& q2) {
  long nrows = std::max(q1.rows(), q2.rows());
  Mat p1 = Mat::Zero(nrows, nrows), p2 = Mat::Zero(nrows, nrows);
  if (q1.cols() > 0) p1 = q1 * q1.adjoint();
  if (q2.cols() > 0) p2 = q2 * q2.adjoint();
  Eigen::JacobiSVD<Mat> svd(p1 - p2);
  return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

}  // namespace qgr
