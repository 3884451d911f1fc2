#pragma once

#include <algorithm>
#include <future>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "qgrecon/interop.hpp"

namespace qgr {

/// Raised when a run would exceed the configured memory guard.
struct GuardError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Expression tree recording how a basis vector was produced from the
/// generators. `Ref` nodes point at earlier basis vectors of the collection,
/// so words stay shallow; the provenance log resolves them in order.
struct Word {
  enum class Kind {
    Identity,   // a = power
    RGen,
    Gen,        // a = generator index
    Adjoint,
    Transpose,
    Tensor,
    Compose,
    Bend,       // a = side (0 left, 1 right), b = direction (0 up, 1 down)
    Ref         // a = k, b = l, c = basis index
  };
  Kind kind = Kind::Identity;
  int a = 0, b = 0, c = 0;
  std::vector<Word> args;

  static Word identity(int k) { return Word{Kind::Identity, k, 0, 0, {}}; }
  static Word rgen() { return Word{Kind::RGen, 0, 0, 0, {}}; }
  static Word gen(int i) { return Word{Kind::Gen, i, 0, 0, {}}; }
  static Word adjoint(Word w) { return Word{Kind::Adjoint, 0, 0, 0, {std::move(w)}}; }
  static Word tensor(Word x, Word y) {
    return Word{Kind::Tensor, 0, 0, 0, {std::move(x), std::move(y)}};
  }
  static Word compose(Word x, Word y) {
    return Word{Kind::Compose, 0, 0, 0, {std::move(x), std::move(y)}};
  }
  static Word bend(BendSide s, BendDirection d, Word w) {
    return Word{Kind::Bend, s == BendSide::Right ? 1 : 0,
                d == BendDirection::Down ? 1 : 0, 0, {std::move(w)}};
  }
  static Word ref(int k, int l, int i) { return Word{Kind::Ref, k, l, i, {}}; }

  int depth() const {
    int m = 0;
    for (const auto& w : args) m = std::max(m, w.depth());
    return m + 1;
  }
};

/// One accepted basis vector: its candidate word, the Gram coefficients
/// against the basis existing at acceptance time, and the residual norm.
/// basis = (eval(word) - sum coeffs[i] * earlier basis of the cell) / norm.
struct ProvEntry {
  int k = 0, l = 0;
  Word word;
  std::vector<cplx> coeffs;
  double norm = 0.0;
};

/// Orthonormal (Hilbert-Schmidt) basis of one operator space C(k,l).
struct OpSpace {
  int dim = 1;
  int k = 0, l = 0;
  std::vector<InterOp> basis;
};

struct Collection {
  int dim = 1;
  int level = 0;
  InterOp R;
  std::vector<InterOp> generators;
  std::map<std::pair<int, int>, OpSpace> spaces;
  std::vector<ProvEntry> provenance;

  const OpSpace& space(int k, int l) const { return spaces.at({k, l}); }
};

struct ClosureOptions {
  double tol = kDefaultTol;
  long cap_rows = 4096;  // refuse when d^level exceeds this
  int jobs = 1;
  int max_word_depth = 64;
};

namespace detail {

inline InterOp eval_word(const Word& w, const Collection& c) {
  switch (w.kind) {
    case Word::Kind::Identity:
      return identity_op(c.dim, w.a);
    case Word::Kind::RGen:
      return c.R;
    case Word::Kind::Gen:
      return c.generators.at(w.a);
    case Word::Kind::Adjoint:
      return adjoint_op(eval_word(w.args[0], c));
    case Word::Kind::Transpose:
      return transpose_op(eval_word(w.args[0], c));
    case Word::Kind::Tensor:
      return tensor_op(eval_word(w.args[0], c), eval_word(w.args[1], c));
    case Word::Kind::Compose:
      return compose_op(eval_word(w.args[0], c), eval_word(w.args[1], c));
    case Word::Kind::Bend:
      return bend(eval_word(w.args[0], c), c.R,
                  w.a ? BendSide::Right : BendSide::Left,
                  w.b ? BendDirection::Down : BendDirection::Up);
    case Word::Kind::Ref:
      return c.spaces.at({w.a, w.b}).basis.at(w.c);
  }
  throw std::logic_error("eval_word: bad kind");
}

/// Reduce a candidate against the cell basis; on linear independence append
/// the normalized residual and log the provenance entry. Returns true when a
/// vector was added.
inline bool reduce_insert(Collection& c, int k, int l, const Word& word,
                          const InterOp& op, double tol) {
  auto& sp = c.spaces[{k, l}];
  if (sp.basis.empty()) {
    sp.dim = c.dim;
    sp.k = k;
    sp.l = l;
  }
  double cand_norm = op.mat.norm();
  if (cand_norm <= tol) return false;
  Mat resid = op.mat;
  std::vector<cplx> coeffs(sp.basis.size());
  for (size_t i = 0; i < sp.basis.size(); ++i) {
    coeffs[i] = hs_inner(resid, sp.basis[i].mat);
    resid -= coeffs[i] * sp.basis[i].mat;
  }
  // second Gram-Schmidt pass for numerical orthogonality
  for (size_t i = 0; i < sp.basis.size(); ++i) {
    cplx extra = hs_inner(resid, sp.basis[i].mat);
    coeffs[i] += extra;
    resid -= extra * sp.basis[i].mat;
  }
  double rnorm = resid.norm();
  if (rnorm <= tol * std::max(1.0, cand_norm)) return false;
  sp.basis.emplace_back(c.dim, k, l, resid / rnorm);
  c.provenance.push_back(ProvEntry{k, l, word, std::move(coeffs), rnorm});
  return true;
}

struct Candidate {
  int k = 0, l = 0;
  Word word;
};

/// Deterministic candidate list derived from the current basis snapshot.
inline std::vector<Candidate> sweep_candidates(const Collection& c, int n) {
  std::vector<Candidate> out;
  auto cells = std::vector<std::pair<int, int>>{};
  for (const auto& [cell, sp] : c.spaces)
    if (!sp.basis.empty()) cells.push_back(cell);
  for (auto [k, l] : cells) {
    const auto& sp = c.space(k, l);
    for (int i = 0; i < static_cast<int>(sp.basis.size()); ++i) {
      out.push_back({l, k, Word::adjoint(Word::ref(k, l, i))});
      Word self = Word::ref(k, l, i);
      if (k >= 1 && l + 1 <= n) {
        out.push_back({k - 1, l + 1, Word::bend(BendSide::Right, BendDirection::Up, self)});
        out.push_back({k - 1, l + 1, Word::bend(BendSide::Left, BendDirection::Up, self)});
      }
      if (l >= 1 && k + 1 <= n) {
        out.push_back({k + 1, l - 1, Word::bend(BendSide::Right, BendDirection::Down, self)});
        out.push_back({k + 1, l - 1, Word::bend(BendSide::Left, BendDirection::Down, self)});
      }
    }
  }
  for (auto [k1, l1] : cells)
    for (auto [k2, l2] : cells) {
      const auto& s1 = c.space(k1, l1);
      const auto& s2 = c.space(k2, l2);
      if (k1 == l2)  // s1 after s2
        for (int i = 0; i < static_cast<int>(s1.basis.size()); ++i)
          for (int j = 0; j < static_cast<int>(s2.basis.size()); ++j)
            out.push_back({k2, l1, Word::compose(Word::ref(k1, l1, i), Word::ref(k2, l2, j))});
      if (k1 + k2 <= n && l1 + l2 <= n)
        for (int i = 0; i < static_cast<int>(s1.basis.size()); ++i)
          for (int j = 0; j < static_cast<int>(s2.basis.size()); ++j)
            out.push_back({k1 + k2, l1 + l2, Word::tensor(Word::ref(k1, l1, i), Word::ref(k2, l2, j))});
    }
  return out;
}

/// Evaluate candidate matrices (optionally in parallel), then reduce them in
/// their deterministic order. Parallelism never changes the result.
inline bool run_sweep(Collection& c, int n, const ClosureOptions& opt) {
  auto cands = sweep_candidates(c, n);
  std::vector<InterOp> evaluated(cands.size());
  int jobs = std::max(1, opt.jobs);
  if (jobs == 1 || cands.size() < 8) {
    for (size_t i = 0; i < cands.size(); ++i) evaluated[i] = eval_word(cands[i].word, c);
  } else {
    std::vector<std::future<void>> futs;
    size_t chunk = (cands.size() + jobs - 1) / jobs;
    for (int t = 0; t < jobs; ++t) {
      size_t lo = t * chunk, hi = std::min(cands.size(), lo + chunk);
      if (lo >= hi) break;
      futs.push_back(std::async(std::launch::async, [&, lo, hi] {
        for (size_t i = lo; i < hi; ++i) evaluated[i] = eval_word(cands[i].word, c);
      }));
    }
    for (auto& f : futs) f.get();
  }
  bool added = false;
  for (size_t i = 0; i < cands.size(); ++i)
    added |= reduce_insert(c, cands[i].k, cands[i].l, cands[i].word, evaluated[i], opt.tol);
  return added;
}

}  // namespace detail

/// Smallest collection containing R, the generators, and all identities,
/// closed under tensor, composition, adjoint, and leg-bending, truncated at
/// level n. Saturates by repeated sweeps until a full sweep adds no rank.
inline Collection generate_collection(int d, const InterOp& R,
                                      const std::vector<InterOp>& generators, int n,
                                      const ClosureOptions& opt = {}) {
  if (power_dim(d, n) > opt.cap_rows)
    throw GuardError("generate_collection: d^level exceeds the memory cap");
  if (!conjugation_sign(R, opt.tol))
    throw std::invalid_argument("generate_collection: conjugation sign of R is undefined");
  for (const auto& g : generators)
    if (g.source_power > n || g.target_power > n)
      throw std::invalid_argument("generate_collection: generator grading exceeds level");
  if (R.dim != d) throw std::invalid_argument("generate_collection: R dimension mismatch");

  Collection c;
  c.dim = d;
  c.level = n;
  c.R = R;
  c.generators = generators;
  for (int k = 0; k <= n; ++k)
    for (int l = 0; l <= n; ++l) c.spaces[{k, l}] = OpSpace{d, k, l, {}};

  for (int k = 0; k <= n; ++k)
    detail::reduce_insert(c, k, k, Word::identity(k), identity_op(d, k), opt.tol);
  if (n >= 2) {
    detail::reduce_insert(c, 0, 2, Word::rgen(), R, opt.tol);
    detail::reduce_insert(c, 2, 0, Word::adjoint(Word::rgen()), adjoint_op(R), opt.tol);
  }
  for (int i = 0; i < static_cast<int>(generators.size()); ++i) {
    const auto& g = generators[i];
    detail::reduce_insert(c, g.source_power, g.target_power, Word::gen(i), g, opt.tol);
    detail::reduce_insert(c, g.target_power, g.source_power,
                          Word::adjoint(Word::gen(i)), adjoint_op(g), opt.tol);
  }

  while (detail::run_sweep(c, n, opt)) {
  }
  return c;
}

/// One extra sweep on a finished collection; returns the number of vectors it
/// would add (0 for a saturated collection). Leaves the input untouched.
inline int extra_sweep_rank_gain(const Collection& c, const ClosureOptions& opt = {}) {
  Collection copy = c;
  size_t before = 0;
  for (const auto& [cell, sp] : copy.spaces) before += sp.basis.size();
  detail::run_sweep(copy, copy.level, opt);
  size_t after = 0;
  for (const auto& [cell, sp] : copy.spaces) after += sp.basis.size();
  return static_cast<int>(after - before);
}

/// Hilbert-Schmidt norm of T minus its projection onto span(space.basis).
inline double membership(const InterOp& t, const OpSpace& s) {
  if (!s.basis.empty() &&
      (t.source_power != s.k || t.target_power != s.l || t.dim != s.dim))
    throw std::invalid_argument("membership: grading mismatch");
  Mat resid = t.mat;
  for (const auto& b : s.basis) resid -= hs_inner(resid, b.mat) * b.mat;
  return resid.norm();
}

inline Eigen::MatrixXi dims_table(const Collection& c) {
  Eigen::MatrixXi t(c.level + 1, c.level + 1);
  for (int k = 0; k <= c.level; ++k)
    for (int l = 0; l <= c.level; ++l)
      t(k, l) = static_cast<int>(c.space(k, l).basis.size());
  return t;
}

struct AuditReport {
  double max_deviation = 0.0;
  int max_word_depth = 0;
  std::vector<size_t> flagged;  // provenance entries exceeding tolerance
};

/// Replays every provenance entry from scratch through the tensor primitives
/// and compares the reconstruction with the stored basis vectors.
inline AuditReport provenance_audit(const Collection& c, double tol = 1e-9) {
  AuditReport rep;
  Collection rebuilt;
  rebuilt.dim = c.dim;
  rebuilt.level = c.level;
  rebuilt.R = c.R;
  rebuilt.generators = c.generators;
  std::map<std::pair<int, int>, size_t> counts;
  for (const auto& [cell, sp] : c.spaces) rebuilt.spaces[cell] = OpSpace{c.dim, cell.first, cell.second, {}};
  for (size_t e = 0; e < c.provenance.size(); ++e) {
    const auto& pe = c.provenance[e];
    rep.max_word_depth = std::max(rep.max_word_depth, pe.word.depth());
    InterOp raw = detail::eval_word(pe.word, rebuilt);
    Mat resid = raw.mat;
    auto& rsp = rebuilt.spaces[{pe.k, pe.l}];
    for (size_t i = 0; i < pe.coeffs.size(); ++i) resid -= pe.coeffs[i] * rsp.basis[i].mat;
    Mat vec = resid / pe.norm;
    size_t idx = counts[{pe.k, pe.l}]++;
    double dev = (vec - c.space(pe.k, pe.l).basis.at(idx).mat).norm();
    rep.max_deviation = std::max(rep.max_deviation, dev);
    if (dev > tol) rep.flagged.push_back(e);
    rsp.basis.emplace_back(c.dim, pe.k, pe.l, std::move(vec));
  }
  return rep;
}

}  // namespace qgr
