#pragma once

#include <optional>
#include <stdexcept>
#include <utility>

#include "qgrecon/linalg.hpp"

namespace qgr {

/// A graded operator H^{otimes k} -> H^{otimes l} for H = C^d, stored dense.
/// Rows and columns enumerate multi-indices in big-endian lexicographic
/// order: the first tensor leg is the most significant digit.
struct InterOp {
  int dim = 1;
  int source_power = 0;
  int target_power = 0;
  Mat mat;

  InterOp() : mat(Mat::Zero(1, 1)) {}
  InterOp(int d, int k, int l, Mat m)
      : dim(d), source_power(k), target_power(l), mat(std::move(m)) {
    if (d < 1 || k < 0 || l < 0) throw std::invalid_argument("InterOp: bad grading");
    if (mat.rows() != power_dim(d, l) || mat.cols() != power_dim(d, k))
      throw std::invalid_argument("InterOp: matrix shape does not match grading");
  }
};

/// F in GL_d(C); when FF-bar = +1 or -1 holds, `sign` records it.
struct FMatrix {
  int dim = 1;
  Mat entries;
  std::optional<int> sign;
};

inline InterOp identity_op(int d, int k) {
  long n = power_dim(d, k);
  return InterOp(d, k, k, Mat::Identity(n, n));
}

inline InterOp tensor_op(const InterOp& a, const InterOp& b) {
  if (a.dim != b.dim) throw std::invalid_argument("tensor_op: dimension mismatch");
  return InterOp(a.dim, a.source_power + b.source_power,
                 a.target_power + b.target_power, kron(a.mat, b.mat));
}

/// a after b, defined when b's target grading matches a's source grading.
inline InterOp compose_op(const InterOp& a, const InterOp& b) {
  if (a.dim != b.dim) throw std::invalid_argument("compose_op: dimension mismatch");
  if (a.source_power != b.target_power)
    throw std::invalid_argument("compose_op: grading mismatch");
  return InterOp(a.dim, b.source_power, a.target_power, a.mat * b.mat);
}

inline InterOp adjoint_op(const InterOp& a) {
  return InterOp(a.dim, a.target_power, a.source_power, a.mat.adjoint());
}

inline InterOp transpose_op(const InterOp& a) {
  return InterOp(a.dim, a.target_power, a.source_power, a.mat.transpose());
}

/// r: C -> H tensor H, r(1) = sum_i e_i tensor e_i.
inline InterOp duality_r(int d) {
  Mat m = Mat::Zero(static_cast<long>(d) * d, 1);
  for (int i = 0; i < d; ++i) m(static_cast<long>(i) * d + i, 0) = 1.0;
  return InterOp(d, 0, 2, std::move(m));
}

/// Returns +1 or -1 when (R* tensor id)(id tensor R) is that multiple of the
/// identity on H within tolerance, nullopt otherwise.
inline std::optional<int> conjugation_sign(const InterOp& R, double tol = kDefaultTol) {
  if (R.source_power != 0 || R.target_power != 2) return std::nullopt;
  int d = R.dim;
  InterOp snake = compose_op(tensor_op(adjoint_op(R), identity_op(d, 1)),
                             tensor_op(identity_op(d, 1), R));
  Mat id = Mat::Identity(d, d);
  double scale = std::max(1.0, snake.mat.norm());
  if ((snake.mat - id).norm() <= tol * scale) return +1;
  if ((snake.mat + id).norm() <= tol * scale) return -1;
  return std::nullopt;
}

/// The unique F with R = (id tensor F) r, i.e. F(j,i) = <R(1), e_i tensor e_j>.
inline FMatrix extract_F(const InterOp& R, double tol = kDefaultTol) {
  if (R.source_power != 0 || R.target_power != 2)
    throw std::invalid_argument("extract_F: operator must have grading (0,2)");
  int d = R.dim;
  Mat F(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) F(j, i) = R.mat(static_cast<long>(i) * d + j, 0);
  Eigen::JacobiSVD<Mat> svd(F);
  const auto& sv = svd.singularValues();
  if (sv(sv.size() - 1) <= tol * std::max(1.0, sv(0)))
    throw std::invalid_argument("extract_F: F is not invertible");
  return FMatrix{d, F, conjugation_sign(R, tol)};
}

inline InterOp build_R_from_F(const FMatrix& F) {
  int d = F.dim;
  Mat m = Mat::Zero(static_cast<long>(d) * d, 1);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(static_cast<long>(i) * d + j, 0) = F.entries(j, i);
  return InterOp(d, 0, 2, std::move(m));
}

enum class BendSide { Left, Right };
enum class BendDirection { Up, Down };

/// Frobenius leg-bending: `up` trades the outermost source leg for a target
/// leg via R, `down` trades the outermost target leg for a source leg via R*.
inline InterOp bend(const InterOp& t, const InterOp& R, BendSide side,
                    BendDirection dir) {
  if (R.source_power != 0 || R.target_power != 2)
    throw std::invalid_argument("bend: R must have grading (0,2)");
  if (t.dim != R.dim) throw std::invalid_argument("bend: dimension mismatch");
  int d = t.dim, k = t.source_power, l = t.target_power;
  if (dir == BendDirection::Up) {
    if (k < 1) throw std::invalid_argument("bend: grading underflow (no source leg)");
    if (side == BendSide::Right)
      return compose_op(tensor_op(t, identity_op(d, 1)),
                        tensor_op(identity_op(d, k - 1), R));
    return compose_op(tensor_op(identity_op(d, 1), t),
                      tensor_op(R, identity_op(d, k - 1)));
  }
  if (l < 1) throw std::invalid_argument("bend: grading underflow (no target leg)");
  if (side == BendSide::Right)
    return compose_op(tensor_op(identity_op(d, l - 1), adjoint_op(R)),
                      tensor_op(t, identity_op(d, 1)));
  return compose_op(tensor_op(adjoint_op(R), identity_op(d, l - 1)),
                    tensor_op(identity_op(d, 1), t));
}

}  // namespace qgr
