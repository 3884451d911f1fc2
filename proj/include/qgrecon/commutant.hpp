#pragma once

#include <vector>

#include "qgrecon/closure.hpp"

namespace qgr {

/// An element (X_0, ..., X_n) of the direct sum of B(H^{otimes k}), k <= n.
struct BlockOperator {
  int dim = 1;
  int level = 0;
  std::vector<Mat> blocks;  // blocks[k] is d^k x d^k

  static BlockOperator zero(int d, int n) {
    BlockOperator x{d, n, {}};
    for (int k = 0; k <= n; ++k) {
      long m = power_dim(d, k);
      x.blocks.push_back(Mat::Zero(m, m));
    }
    return x;
  }
};

struct CommutantBasis {
  int dim = 1;
  int level = 0;
  std::vector<BlockOperator> basis;  // orthonormal under block HS inner product
  int dimension = 0;
};

namespace detail {

inline long block_space_dim(int d, int n) {
  long total = 0;
  for (int k = 0; k <= n; ++k) total += power_dim(d, k) * power_dim(d, k);
  return total;
}

inline long block_offset(int d, int k) {
  long off = 0;
  for (int j = 0; j < k; ++j) off += power_dim(d, j) * power_dim(d, j);
  return off;
}

inline Vec block_to_vector(const BlockOperator& x) {
  Vec v(block_space_dim(x.dim, x.level));
  long off = 0;
  for (const auto& b : x.blocks) {
    for (long r = 0; r < b.rows(); ++r)
      for (long cidx = 0; cidx < b.cols(); ++cidx) v(off + r * b.cols() + cidx) = b(r, cidx);
    off += b.rows() * b.cols();
  }
  return v;
}

inline BlockOperator vector_to_block(const Vec& v, int d, int n) {
  BlockOperator x = BlockOperator::zero(d, n);
  long off = 0;
  for (int k = 0; k <= n; ++k) {
    long m = power_dim(d, k);
    for (long r = 0; r < m; ++r)
      for (long cidx = 0; cidx < m; ++cidx) x.blocks[k](r, cidx) = v(off + r * m + cidx);
    off += m * m;
  }
  return x;
}

}  // namespace detail

/// Commutant of the whole graded family: the solution space of
/// X_l T = T X_k over block-diagonal unknowns, for every basis T of every
/// cell. One global null-space solve, since cross-grading constraints couple
/// the blocks.
inline CommutantBasis commutant_basis(const Collection& c, double tol = kDefaultTol) {
  int d = c.dim, n = c.level;
  long ncols = detail::block_space_dim(d, n);
  long nrows = 0;
  for (const auto& [cell, sp] : c.spaces)
    nrows += static_cast<long>(sp.basis.size()) * power_dim(d, cell.first) * power_dim(d, cell.second);
  Mat a = Mat::Zero(std::max(nrows, 1L), ncols);
  long row0 = 0;
  for (const auto& [cell, sp] : c.spaces) {
    auto [k, l] = cell;
    long dk = power_dim(d, k), dl = power_dim(d, l);
    long offk = detail::block_offset(d, k), offl = detail::block_offset(d, l);
    for (const auto& t : sp.basis) {
      // (X_l T - T X_k)(r, col) = 0 for all r < d^l, col < d^k
      for (long r = 0; r < dl; ++r)
        for (long col = 0; col < dk; ++col) {
          long row = row0 + r * dk + col;
          for (long b = 0; b < dl; ++b) a(row, offl + r * dl + b) += t.mat(b, col);
          for (long b = 0; b < dk; ++b) a(row, offk + b * dk + col) -= t.mat(r, b);
        }
      row0 += dl * dk;
    }
  }
  Mat ns = null_space(a, tol);
  CommutantBasis out{d, n, {}, static_cast<int>(ns.cols())};
  for (long j = 0; j < ns.cols(); ++j)
    out.basis.push_back(detail::vector_to_block(ns.col(j), d, n));
  return out;
}

struct BicommutantCell {
  int k = 0, l = 0;
  int collection_dim = 0;
  int bicommutant_dim = 0;
  double span_distance = 0.0;
  bool consistent = false;
};

struct BicommutantReport {
  bool consistent = false;
  std::vector<BicommutantCell> cells;
};

/// For each cell, the space of T with X_l T = T X_k for all commutant basis
/// elements X, compared against the collection's span. A mismatch signals
/// under-saturation of the closure at this level.
inline BicommutantReport bicommutant_check(const Collection& c, double tol = 1e-8) {
  auto bn = commutant_basis(c, kDefaultTol);
  int d = c.dim, n = c.level;
  BicommutantReport rep;
  rep.consistent = true;
  for (int k = 0; k <= n; ++k)
    for (int l = 0; l <= n; ++l) {
      long dk = power_dim(d, k), dl = power_dim(d, l);
      Mat a = Mat::Zero(std::max<long>(1, bn.dimension * dl * dk), dl * dk);
      long row0 = 0;
      for (const auto& x : bn.basis) {
        // unknown T: (X_l T - T X_k)(r, col), T entry index r*dk + col
        for (long r = 0; r < dl; ++r)
          for (long col = 0; col < dk; ++col) {
            long row = row0 + r * dk + col;
            for (long b = 0; b < dl; ++b) a(row, b * dk + col) += x.blocks[l](r, b);
            for (long b = 0; b < dk; ++b) a(row, r * dk + b) -= x.blocks[k](b, col);
          }
        row0 += dl * dk;
      }
      Mat bicom = null_space(a, kDefaultTol);
      const auto& sp = c.space(k, l);
      Mat coll(dl * dk, sp.basis.size());
      for (size_t j = 0; j < sp.basis.size(); ++j) {
        const Mat& m = sp.basis[j].mat;
        for (long r = 0; r < dl; ++r)
          for (long col = 0; col < dk; ++col) coll(r * dk + col, j) = m(r, col);
      }
      Mat collq = col_span(coll, kDefaultTol);
      BicommutantCell cell{k, l, static_cast<int>(collq.cols()),
                           static_cast<int>(bicom.cols()), 0.0, false};
      cell.span_distance = subspace_distance(collq, bicom);
      cell.consistent = cell.collection_dim == cell.bicommutant_dim &&
                        cell.span_distance < tol;
      rep.consistent = rep.consistent && cell.consistent;
      rep.cells.push_back(cell);
    }
  return rep;
}

}  // namespace qgr
