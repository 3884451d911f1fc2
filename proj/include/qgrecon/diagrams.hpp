#pragma once

#include <vector>

#include "qgrecon/interop.hpp"

namespace qgr {

/// A perfect pair matching of k lower and l upper boundary points. Points are
/// numbered cyclically: 0..k-1 along the bottom left-to-right, then k..k+l-1
/// along the top right-to-left, so planarity is ordinary noncrossingness of
/// the circular sequence.
struct PairPartition {
  int lower = 0, upper = 0;
  std::vector<std::pair<int, int>> blocks;  // circle positions, first < second
  bool crossing = false;
};

inline bool is_noncrossing(const PairPartition& p) {
  for (size_t a = 0; a < p.blocks.size(); ++a)
    for (size_t b = a + 1; b < p.blocks.size(); ++b) {
      auto [i, j] = p.blocks[a];
      auto [x, y] = p.blocks[b];
      bool x_in = i < x && x < j, y_in = i < y && y < j;
      if (x_in != y_in) return true;
    }
  return false;
}

namespace detail {

inline std::vector<std::vector<std::pair<int, int>>> enumerate_nc(
    const std::vector<int>& points) {
  std::vector<std::vector<std::pair<int, int>>> out;
  if (points.empty()) {
    out.push_back({});
    return out;
  }
  // the first point pairs at odd distance; the enclosed and remaining arcs
  // are matched independently
  for (size_t j = 1; j < points.size(); j += 2) {
    std::vector<int> inner(points.begin() + 1, points.begin() + j);
    std::vector<int> outer(points.begin() + j + 1, points.end());
    for (const auto& in_blocks : enumerate_nc(inner))
      for (const auto& out_blocks : enumerate_nc(outer)) {
        std::vector<std::pair<int, int>> m;
        m.emplace_back(points[0], points[j]);
        m.insert(m.end(), in_blocks.begin(), in_blocks.end());
        m.insert(m.end(), out_blocks.begin(), out_blocks.end());
        out.push_back(std::move(m));
      }
  }
  return out;
}

}  // namespace detail

/// All noncrossing pair matchings of k lower and l upper points; empty when
/// k+l is odd. The count is the Catalan number C_{(k+l)/2}.
inline std::vector<PairPartition> noncrossing_pairings(int k, int l) {
  std::vector<PairPartition> out;
  int n = k + l;
  if (n % 2 != 0) return out;
  std::vector<int> points(n);
  for (int i = 0; i < n; ++i) points[i] = i;
  for (auto& blocks : detail::enumerate_nc(points))
    out.push_back(PairPartition{k, l, std::move(blocks), false});
  return out;
}

/// Evaluate a noncrossing matching as an operator H^{otimes k} -> H^{otimes l}
/// built from the cup R, the cap R*, and identity strands. With
/// R = (id tensor F) r the entries multiply over the blocks: a top cup on
/// legs b < b' weighs F(i_{b'}, i_b), a bottom cap on legs a < a' weighs
/// conj(F(j_{a'}, j_a)), and a through strand is a Kronecker delta.
inline InterOp evaluate_pairing(const PairPartition& p, const FMatrix& f) {
  int d = f.dim, k = p.lower, l = p.upper;
  long dk = power_dim(d, k), dl = power_dim(d, l);
  Mat m = Mat::Zero(dl, dk);
  std::vector<int> ivec(l), jvec(k);
  for (long i = 0; i < dl; ++i) {
    long rem = i;
    for (int t = l - 1; t >= 0; --t) {
      ivec[t] = static_cast<int>(rem % d);
      rem /= d;
    }
    for (long j = 0; j < dk; ++j) {
      rem = j;
      for (int t = k - 1; t >= 0; --t) {
        jvec[t] = static_cast<int>(rem % d);
        rem /= d;
      }
      cplx w = 1.0;
      for (auto [a, b] : p.blocks) {
        bool a_low = a < k, b_low = b < k;
        // circle position c on the top corresponds to upper leg k+l-1-c
        if (a_low && b_low) {
          w *= std::conj(f.entries(jvec[b], jvec[a]));
        } else if (!a_low && !b_low) {
          int ub = k + l - 1 - a, ua = k + l - 1 - b;  // ua < ub as upper legs
          w *= f.entries(ivec[ub], ivec[ua]);
        } else {
          int low = a_low ? a : b;
          int up = k + l - 1 - (a_low ? b : a);
          if (ivec[up] != jvec[low]) {
            w = 0.0;
            break;
          }
        }
        if (w == 0.0) break;
      }
      m(i, j) = w;
    }
  }
  return InterOp(d, k, l, std::move(m));
}

/// Rank of the Hilbert-Schmidt span of all noncrossing matchings evaluated
/// through R = (id tensor F) r. Zero when k+l is odd. This is independent of
/// the closure engine by construction.
inline int diagram_oracle_dims(const FMatrix& f, int k, int l, double tol = kDefaultTol) {
  if ((k + l) % 2 != 0) return 0;
  auto pairings = noncrossing_pairings(k, l);
  if (pairings.empty()) return (k + l == 0) ? 1 : 0;
  long rows = power_dim(f.dim, k) * power_dim(f.dim, l);
  Mat stacked(rows, static_cast<long>(pairings.size()));
  for (size_t j = 0; j < pairings.size(); ++j) {
    InterOp op = evaluate_pairing(pairings[j], f);
    long idx = 0;
    for (long r = 0; r < op.mat.rows(); ++r)
      for (long cidx = 0; cidx < op.mat.cols(); ++cidx)
        stacked(idx++, static_cast<long>(j)) = op.mat(r, cidx);
  }
  return numerical_rank(stacked, tol);
}

}  // namespace qgr
