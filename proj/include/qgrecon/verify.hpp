#pragma once

#include <chrono>
#include <random>
#include <string>
#include <vector>

#include "qgrecon/diagrams.hpp"
#include "qgrecon/presentation.hpp"

namespace qgr {

struct Check {
  std::string name;
  double residual = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

struct VerificationReport {
  std::string suite;
  std::vector<Check> checks;
  double wall_seconds = 0.0;

  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  void add(const std::string& name, double residual, double threshold) {
    checks.push_back(Check{name, residual, threshold, residual < threshold});
  }
  void add_flag(const std::string& name, bool ok) {
    checks.push_back(Check{name, ok ? 0.0 : 1.0, 0.5, ok});
  }
};

namespace detail {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

inline Mat ideal_times_algebra_span(const IdealBasis& ideal, int d, int n,
                                    double tol = kDefaultTol) {
  // orthonormal basis of I_n tensor A_n + A_n tensor I_n inside A_n tensor A_n
  long adim = algebra_dim(d, n);
  long cols = 2L * ideal.dimension * adim;
  Mat stacked(adim * adim, cols);
  long col = 0;
  for (int i = 0; i < ideal.dimension; ++i)
    for (long j = 0; j < adim; ++j) {
      Vec left = Vec::Zero(adim * adim), right = Vec::Zero(adim * adim);
      for (long r = 0; r < adim; ++r) {
        left(r * adim + j) = ideal.basis(r, i);
        right(j * adim + r) = ideal.basis(r, i);
      }
      stacked.col(col++) = left;
      stacked.col(col++) = right;
    }
  return col_span(stacked, tol);
}

inline Vec coproduct_vector(const AlgebraElement& a, int n) {
  long adim = algebra_dim(a.dim, n);
  Vec v = Vec::Zero(adim * adim);
  for (const auto& [pr, c] : comultiply(a))
    v(monomial_index(pr.first, a.dim) * adim + monomial_index(pr.second, a.dim)) += c;
  return v;
}

}  // namespace detail

/// Collection axioms: identities present, R present, *-closure, closure under
/// composition and truncated tensoring, orthonormal bases.
inline VerificationReport verify_collection(const Collection& c, double tol = 1e-8) {
  detail::Stopwatch sw;
  VerificationReport rep;
  rep.suite = "collection";
  int n = c.level, d = c.dim;
  double worst_id = 0.0;
  for (int k = 0; k <= n; ++k)
    worst_id = std::max(worst_id, membership(identity_op(d, k), c.space(k, k)));
  rep.add("identities-present", worst_id, tol * power_dim(d, n));
  rep.add("R-present", n >= 2 ? membership(c.R, c.space(0, 2)) : 0.0, tol);
  double worst_gram = 0.0, worst_adj = 0.0, worst_comp = 0.0, worst_tens = 0.0;
  for (const auto& [cell, sp] : c.spaces) {
    for (size_t i = 0; i < sp.basis.size(); ++i) {
      for (size_t j = 0; j < sp.basis.size(); ++j) {
        cplx g = hs_inner(sp.basis[i].mat, sp.basis[j].mat);
        worst_gram = std::max(worst_gram, std::abs(g - (i == j ? cplx(1.0) : cplx(0.0))));
      }
      worst_adj = std::max(worst_adj, membership(adjoint_op(sp.basis[i]),
                                                 c.space(cell.second, cell.first)));
    }
  }
  for (const auto& [c1, s1] : c.spaces)
    for (const auto& [c2, s2] : c.spaces) {
      if (c1.first == c2.second)
        for (const auto& a : s1.basis)
          for (const auto& b : s2.basis)
            worst_comp = std::max(
                worst_comp, membership(compose_op(a, b), c.space(c2.first, c1.second)));
      if (c1.first + c2.first <= n && c1.second + c2.second <= n)
        for (const auto& a : s1.basis)
          for (const auto& b : s2.basis)
            worst_tens = std::max(
                worst_tens, membership(tensor_op(a, b),
                                       c.space(c1.first + c2.first, c1.second + c2.second)));
    }
  rep.add("gram-orthonormal", worst_gram, tol);
  rep.add("adjoint-closed", worst_adj, tol);
  rep.add("composition-closed", worst_comp, tol);
  rep.add("tensor-closed", worst_tens, tol);
  rep.wall_seconds = sw.seconds();
  return rep;
}

/// Engine dimensions against the independent noncrossing-diagram oracle.
/// Valid for collections generated by R alone.
inline VerificationReport verify_oracle_agreement(const Collection& c, double tol = 1e-9) {
  detail::Stopwatch sw;
  VerificationReport rep;
  rep.suite = "oracle";
  FMatrix f = extract_F(c.R, tol);
  auto table = dims_table(c);
  for (int k = 0; k <= c.level; ++k)
    for (int l = 0; l <= c.level; ++l) {
      int oracle = diagram_oracle_dims(f, k, l, tol);
      rep.add_flag("dims(" + std::to_string(k) + "," + std::to_string(l) + ")=" +
                       std::to_string(oracle),
                   table(k, l) == oracle);
    }
  rep.wall_seconds = sw.seconds();
  return rep;
}

/// Annihilator duality: slices kill the commutant, dimensions add up, and
/// (when the next level is supplied) the level filtration is consistent.
inline VerificationReport verify_annihilator(const Collection& c,
                                             const Collection* next_level = nullptr,
                                             double tol = 1e-8) {
  detail::Stopwatch sw;
  VerificationReport rep;
  rep.suite = "annihilator";
  int d = c.dim, n = c.level;
  auto bn = commutant_basis(c);
  auto ideal = ideal_basis(c);
  double worst = 0.0;
  for (const auto& [cell, sp] : c.spaces)
    for (const auto& t : sp.basis)
      for (const auto& rel : slice_relations(t))
        for (const auto& x : bn.basis) worst = std::max(worst, std::abs(pair(rel, x)));
  rep.add("slices-annihilate-commutant", worst, tol);
  rep.add_flag("dim-ideal+dim-commutant=dim-algebra (" + std::to_string(ideal.dimension) +
                   "+" + std::to_string(bn.dimension) + "=" +
                   std::to_string(algebra_dim(d, n)) + ")",
               ideal.dimension + bn.dimension == algebra_dim(d, n));
  double worst_pair = 0.0;
  for (int i = 0; i < ideal.dimension; ++i) {
    AlgebraElement a = from_vector(ideal.basis.col(i), d, n);
    for (const auto& x : bn.basis) worst_pair = std::max(worst_pair, std::abs(pair(a, x)));
  }
  rep.add("ideal-basis-pairs-to-zero", worst_pair, tol);
  if (next_level && next_level->level == n + 1) {
    auto ideal_next = ideal_basis(*next_level);
    long lo = algebra_dim(d, n), hi = algebra_dim(d, n + 1);
    // I_{n+1} intersect A_n: kernel of the high-coordinate projection
    Mat high = ideal_next.basis.bottomRows(hi - lo);
    Mat kern = null_space(high, kDefaultTol);
    Mat inter = ideal_next.basis.topRows(lo) * kern;
    Mat interq = col_span(inter, kDefaultTol);
    rep.add_flag("dim(I_{n+1} cap A_n) = dim I_n (" + std::to_string(interq.cols()) + ")",
                 interq.cols() == ideal.dimension);
    rep.add("span(I_{n+1} cap A_n) = span I_n", subspace_distance(interq, ideal.basis), tol);
  }
  rep.wall_seconds = sw.seconds();
  return rep;
}

/// Bi-ideal axioms at truncated level: two-sided product stability by seeded
/// sampling, coproduct containment in I tensor A + A tensor I.
inline VerificationReport verify_bi_ideal(const Collection& c, unsigned seed = 1,
                                          int budget = 500, double tol = 1e-8,
                                          bool check_products = true,
                                          bool check_coproduct = true) {
  detail::Stopwatch sw;
  VerificationReport rep;
  rep.suite = "bi-ideal";
  int d = c.dim, n = c.level;
  auto ideal = ideal_basis(c);

  // product stability: random a in I_{n-m} span, random monomial b of degree m
  std::mt19937 rng(seed);
  std::normal_distribution<double> gauss;
  double worst_prod = 0.0;
  int done = 0;
  std::vector<IdealBasis> ideals_by_level(n + 1);
  if (check_products)
    for (int m = 0; m <= n; ++m) ideals_by_level[m] = ideal_basis(c, kDefaultTol, m);
  std::vector<int> usable_degrees;
  for (int m = 0; m <= n && check_products; ++m)
    if (ideals_by_level[n - m].dimension > 0) usable_degrees.push_back(m);
  if (!usable_degrees.empty()) {
    while (done < budget) {
      int m = usable_degrees[rng() % usable_degrees.size()];
      const auto& ib = ideals_by_level[n - m];
      Vec coeff(ib.dimension);
      for (int i = 0; i < ib.dimension; ++i) coeff(i) = cplx(gauss(rng), gauss(rng));
      AlgebraElement a = from_vector(ib.basis * coeff, d, n - m);
      long dm = power_dim(d, m);
      Monomial mono{multi_index_inverse(rng() % dm, d, m), multi_index_inverse(rng() % dm, d, m)};
      AlgebraElement b(d);
      b.terms[mono] = 1.0;
      for (const AlgebraElement& prod : {multiply(a, b), multiply(b, a)}) {
        Vec v = to_vector(prod, n);
        double nv = v.norm();
        if (nv > 0) worst_prod = std::max(worst_prod, residual_norm(ideal.basis, v) / nv);
      }
      ++done;
    }
  }
  if (check_products)
    rep.add("product-stability (" + std::to_string(done) + " sampled pairs)", worst_prod, tol);

  if (check_coproduct) {
    // coproduct containment Delta(I_n) in I tensor A + A tensor I
    Mat span = detail::ideal_times_algebra_span(ideal, d, n);
    double worst_cop = 0.0;
    for (int i = 0; i < ideal.dimension; ++i) {
      AlgebraElement rho = from_vector(ideal.basis.col(i), d, n);
      Vec v = detail::coproduct_vector(rho, n);
      double nv = v.norm();
      if (nv > 0) worst_cop = std::max(worst_cop, residual_norm(span, v) / nv);
    }
    rep.add("coproduct-containment", worst_cop, tol);
  }
  rep.wall_seconds = sw.seconds();
  return rep;
}

/// Hopf-*-ideal axioms: tilde-closure of every cell, then *- and
/// S-invariance of the ideal span.
inline VerificationReport verify_hopf_star(const Collection& c, const FMatrix& f,
                                           double tol = 1e-8) {
  detail::Stopwatch sw;
  VerificationReport rep;
  rep.suite = "hopf-star";
  int d = c.dim, n = c.level;
  double worst_tilde = 0.0;
  for (const auto& [cell, sp] : c.spaces)
    for (const auto& t : sp.basis)
      worst_tilde = std::max(worst_tilde, membership(tilde_morphism(t, f), sp));
  rep.add("tilde-closure", worst_tilde, tol);

  auto ideal = ideal_basis(c);
  double worst_star = 0.0, worst_antipode = 0.0;
  for (int i = 0; i < ideal.dimension; ++i) {
    AlgebraElement rho = from_vector(ideal.basis.col(i), d, n);
    Vec vs = to_vector(star_element(rho, f), n);
    Vec va = to_vector(antipode_element(rho, f), n);
    if (vs.norm() > 0)
      worst_star = std::max(worst_star, residual_norm(ideal.basis, vs) / vs.norm());
    if (va.norm() > 0)
      worst_antipode = std::max(worst_antipode, residual_norm(ideal.basis, va) / va.norm());
  }
  rep.add("star-invariance", worst_star, tol);
  rep.add("antipode-invariance", worst_antipode, tol);
  rep.wall_seconds = sw.seconds();
  return rep;
}

/// The free orthogonal equivalence: the monomial-multiplied closure of the
/// presentation relations spans exactly the annihilator ideal at level n.
inline VerificationReport verify_of_plus(const FMatrix& f, int n, double tol = 1e-8) {
  detail::Stopwatch sw;
  VerificationReport rep;
  rep.suite = "of-plus";
  int d = f.dim;
  auto R = build_R_from_F(f);
  Collection c = generate_collection(d, R, {}, n);
  auto ideal = ideal_basis(c);
  auto pres = of_plus_relations(f);

  // two-sided monomial closure of the relation families, truncated at n
  std::vector<Vec> cols;
  for (const auto& rel : pres.relations) {
    int top = rel.max_degree();
    for (int ma = 0; ma + top <= n; ++ma)
      for (int mb = 0; ma + mb + top <= n; ++mb) {
        long da = power_dim(d, ma), db = power_dim(d, mb);
        for (long ra = 0; ra < da * da; ++ra)
          for (long rb = 0; rb < db * db; ++rb) {
            AlgebraElement a(d), b(d);
            a.terms[Monomial{multi_index_inverse(ra / da, d, ma),
                             multi_index_inverse(ra % da, d, ma)}] = 1.0;
            b.terms[Monomial{multi_index_inverse(rb / db, d, mb),
                             multi_index_inverse(rb % db, d, mb)}] = 1.0;
            cols.push_back(to_vector(multiply(a, multiply(rel, b)), n));
          }
      }
  }
  Mat stacked(algebra_dim(d, n), static_cast<long>(cols.size()));
  for (size_t j = 0; j < cols.size(); ++j) stacked.col(static_cast<long>(j)) = cols[j];
  Mat relq = col_span(stacked, kDefaultTol);
  rep.add_flag("common-dimension (" + std::to_string(relq.cols()) + " vs " +
                   std::to_string(ideal.dimension) + ")",
               relq.cols() == ideal.dimension);
  rep.add("span-equality", subspace_distance(relq, ideal.basis), tol);
  rep.wall_seconds = sw.seconds();
  return rep;
}

/// Uniqueness: an alternate generating set producing the same cell spans must
/// produce the same ideal span.
inline VerificationReport verify_uniqueness(const Collection& c,
                                            const std::vector<InterOp>& alternate_generators,
                                            double tol = 1e-8) {
  detail::Stopwatch sw;
  VerificationReport rep;
  rep.suite = "uniqueness";
  Collection alt = generate_collection(c.dim, c.R, alternate_generators, c.level);
  bool dims_equal = (dims_table(alt) - dims_table(c)).cwiseAbs().sum() == 0;
  rep.add_flag("dims-tables-equal", dims_equal);
  double worst_cell = 0.0;
  if (dims_equal)
    for (const auto& [cell, sp] : c.spaces) {
      long dk = power_dim(c.dim, cell.first), dl = power_dim(c.dim, cell.second);
      auto to_cols = [&](const OpSpace& s) {
        Mat m(dl * dk, s.basis.size());
        for (size_t j = 0; j < s.basis.size(); ++j)
          for (long r = 0; r < dl; ++r)
            for (long col = 0; col < dk; ++col)
              m(r * dk + col, static_cast<long>(j)) = s.basis[j].mat(r, col);
        return m;
      };
      worst_cell = std::max(worst_cell,
                            subspace_distance(to_cols(sp), to_cols(alt.space(cell.first, cell.second))));
    }
  rep.add("cell-span-equality", worst_cell, tol);
  auto i1 = ideal_basis(c);
  auto i2 = ideal_basis(alt);
  rep.add_flag("ideal-dimensions-equal (" + std::to_string(i1.dimension) + " vs " +
                   std::to_string(i2.dimension) + ")",
               i1.dimension == i2.dimension);
  rep.add("ideal-span-equality", subspace_distance(i1.basis, i2.basis), tol);
  rep.wall_seconds = sw.seconds();
  return rep;
}

}  // namespace qgr
