#include <doctest.h>

#include "qgrecon/algebra.hpp"

using namespace qgr;

TEST_CASE("multiplication concatenates monomials bilinearly") {
  AlgebraElement a = AlgebraElement::generator(2, 0, 1);
  AlgebraElement b = AlgebraElement::generator(2, 1, 0) + AlgebraElement::unit(2);
  AlgebraElement p = multiply(a, b);
  CHECK(p.terms.size() == 2);
  CHECK(p.terms.at(Monomial{{0}, {1}}) == cplx(1.0));
  CHECK(p.terms.at(Monomial{{0, 1}, {1, 0}}) == cplx(1.0));
}

TEST_CASE("coproduct of a generator has d middle terms") {
  auto delta = comultiply(AlgebraElement::generator(2, 0, 0));
  CHECK(delta.size() == 2);
  CHECK(delta.at({Monomial{{0}, {0}}, Monomial{{0}, {0}}}) == cplx(1.0));
  CHECK(delta.at({Monomial{{0}, {1}}, Monomial{{1}, {0}}}) == cplx(1.0));
}

TEST_CASE("coproduct is coassociative on a degree-2 monomial") {
  int d = 2;
  AlgebraElement a(d);
  a.terms[Monomial{{0, 1}, {1, 0}}] = 1.0;
  // (Delta tensor id) Delta vs (id tensor Delta) Delta, as coefficient maps
  std::map<std::tuple<Monomial, Monomial, Monomial>, cplx> lhs, rhs;
  for (const auto& [pr, c] : comultiply(a)) {
    AlgebraElement first(d);
    first.terms[pr.first] = c;
    for (const auto& [pr2, c2] : comultiply(first))
      lhs[{pr2.first, pr2.second, pr.second}] += c2;
    AlgebraElement second(d);
    second.terms[pr.second] = c;
    for (const auto& [pr2, c2] : comultiply(second))
      rhs[{pr.first, pr2.first, pr2.second}] += c2;
  }
  CHECK(lhs == rhs);
}

TEST_CASE("counit picks diagonal monomials") {
  AlgebraElement a(2);
  a.terms[Monomial{{0, 1}, {0, 1}}] = 2.0;
  a.terms[Monomial{{0, 1}, {1, 0}}] = 5.0;
  a.terms[Monomial{}] = 1.0;
  CHECK(counit(a) == cplx(3.0));
}

TEST_CASE("counit is the coproduct's counitality witness") {
  AlgebraElement a(2);
  a.terms[Monomial{{1, 0}, {0, 1}}] = cplx(0.5, -1.0);
  // (eps tensor id) Delta = id
  AlgebraElement recovered(2);
  for (const auto& [pr, c] : comultiply(a)) {
    AlgebraElement left(2);
    left.terms[pr.first] = 1.0;
    recovered.add_term(pr.second, c * counit(left));
  }
  CHECK(recovered.terms == a.terms);
}

TEST_CASE("vector coordinates roundtrip") {
  AlgebraElement a(2);
  a.terms[Monomial{}] = cplx(1.0, 2.0);
  a.terms[Monomial{{1}, {0}}] = -3.0;
  a.terms[Monomial{{0, 1}, {1, 1}}] = cplx(0.0, 1.0);
  Vec v = to_vector(a, 2);
  CHECK(v.size() == algebra_dim(2, 2));
  AlgebraElement back = from_vector(v, 2, 2);
  CHECK(back.terms == a.terms);
}

TEST_CASE("slice relations of R for d=2, F=I") {
  auto rels = slice_relations(duality_r(2));
  REQUIRE(rels.size() == 4);  // one per multi-index i of H tensor H, j empty
  // i = (0,0): 1 - u11 u11 - u12 u12
  const auto& r00 = rels[0];
  CHECK(r00.terms.at(Monomial{}) == cplx(1.0));
  CHECK(r00.terms.at(Monomial{{0, 0}, {0, 0}}) == cplx(-1.0));
  CHECK(r00.terms.at(Monomial{{0, 0}, {1, 1}}) == cplx(-1.0));
  CHECK(r00.terms.size() == 3);
  // i = (0,1): - u11 u21 - u12 u22
  const auto& r01 = rels[1];
  CHECK(r01.terms.at(Monomial{{0, 1}, {0, 0}}) == cplx(-1.0));
  CHECK(r01.terms.at(Monomial{{0, 1}, {1, 1}}) == cplx(-1.0));
  CHECK(r01.terms.size() == 2);
}

TEST_CASE("slice relations of an endomorphism generator") {
  Mat p = Mat::Zero(2, 2);
  p(0, 0) = 1.0;
  auto rels = slice_relations(InterOp(2, 1, 1, p));
  // (i,j) entry: sum_m p(i,m) u_mj - sum_m p(m,j) u_im = delta_{i0} u_0j - delta_{j0} u_i0
  REQUIRE(rels.size() == 4);
  CHECK(rels[0].terms.empty());                                 // i=0,j=0
  CHECK(rels[1].terms.at(Monomial{{0}, {1}}) == cplx(1.0));     // i=0,j=1
  CHECK(rels[2].terms.at(Monomial{{1}, {0}}) == cplx(-1.0));    // i=1,j=0
  CHECK(rels[3].terms.empty());                                 // i=1,j=1
}

TEST_CASE("ideal and quotient dimensions for d=2, F=I") {
  auto c2 = generate_collection(2, duality_r(2), {}, 2);
  auto ideal2 = ideal_basis(c2);
  CHECK(ideal2.dimension == 7);
  CHECK(algebra_dim(2, 2) == 21);
  auto q = quotient_dims(c2);
  REQUIRE(q.size() == 3);
  CHECK(q[2] == 14);  // matches the commutant dimension

  auto c3 = generate_collection(2, duality_r(2), {}, 3);
  CHECK(ideal_basis(c3).dimension == 55);
  CHECK(quotient_dims(c3)[3] == 30);
}

TEST_CASE("truncating the ideal to a lower level matches the lower closure") {
  auto c3 = generate_collection(2, duality_r(2), {}, 3);
  auto c2 = generate_collection(2, duality_r(2), {}, 2);
  auto trunc = ideal_basis(c3, kDefaultTol, 2);
  auto direct = ideal_basis(c2);
  CHECK(trunc.dimension == direct.dimension);
  CHECK(subspace_distance(trunc.basis, direct.basis) < 1e-9);
}
