#include "doctest.h"

#include <random>

#include "qgrecon/interop.hpp"

using namespace qgr;

namespace {

Mat random_matrix(long r, long c, std::mt19937& rng) {
  std::normal_distribution<double> g;
  Mat m(r, c);
  for (long i = 0; i < r; ++i)
    for (long j = 0; j < c; ++j) m(i, j) = cplx(g(rng), g(rng));
  return m;
}

InterOp random_op(int d, int k, int l, std::mt19937& rng) {
  return InterOp(d, k, l, random_matrix(power_dim(d, l), power_dim(d, k), rng));
}

FMatrix antisym2() {
  Mat f(2, 2);
  f << 0, 1, -1, 0;
  return FMatrix{2, f, std::nullopt};
}

}  // namespace

TEST_CASE("identity_op shapes") {
  CHECK(identity_op(2, 0).mat == Mat::Identity(1, 1));
  CHECK(identity_op(2, 1).mat == Mat::Identity(2, 2));
  CHECK(identity_op(3, 2).mat == Mat::Identity(9, 9));
}

TEST_CASE("duality_r columns") {
  CHECK(duality_r(1).mat(0, 0) == cplx(1.0));
  Vec r2 = duality_r(2).mat.col(0);
  CHECK(r2(0) == cplx(1.0));
  CHECK(r2(1) == cplx(0.0));
  CHECK(r2(2) == cplx(0.0));
  CHECK(r2(3) == cplx(1.0));
  Vec r3 = duality_r(3).mat.col(0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(r3(i * 3 + j) == cplx(i == j ? 1.0 : 0.0));
}

TEST_CASE("tensor_op basics") {
  auto id1 = identity_op(2, 1);
  CHECK((tensor_op(id1, id1).mat - identity_op(2, 2).mat).norm() == 0.0);
  auto r = duality_r(2);
  auto unit = identity_op(2, 0);
  CHECK((tensor_op(r, unit).mat - r.mat).norm() == 0.0);
  CHECK(tensor_op(r, unit).source_power == 0);
  CHECK(tensor_op(r, unit).target_power == 2);
  // r tensor r entry at row multi-index (1,1,2,2) (1-based), empty column
  auto rr = tensor_op(r, r);
  CHECK(rr.source_power == 0);
  CHECK(rr.target_power == 4);
  long row = ((0 * 2 + 0) * 2 + 1) * 2 + 1;
  CHECK(rr.mat(row, 0) == cplx(1.0));
  CHECK(rr.mat.col(0).cwiseAbs().sum() == doctest::Approx(4.0));
}

TEST_CASE("tensor respects leg factorization on random input") {
  std::mt19937 rng(7);
  auto a = random_op(2, 1, 2, rng);
  auto b = random_op(2, 2, 1, rng);
  auto ab = tensor_op(a, b);
  for (long ja = 0; ja < 2; ++ja)
    for (long jb = 0; jb < 4; ++jb) {
      Vec lhs = ab.mat.col(ja * 4 + jb);
      Vec rhs = kron(a.mat.col(ja), b.mat.col(jb));
      CHECK((lhs - rhs).norm() < 1e-12);
    }
}

TEST_CASE("compose_op") {
  auto r = duality_r(2);
  auto val = compose_op(adjoint_op(r), r);
  CHECK(val.mat(0, 0) == cplx(2.0));
  CHECK((compose_op(identity_op(2, 2), r).mat - r.mat).norm() == 0.0);
  // snake: (r* tensor id)(id tensor r) = id
  auto snake = compose_op(tensor_op(adjoint_op(r), identity_op(2, 1)),
                          tensor_op(identity_op(2, 1), r));
  CHECK((snake.mat - Mat::Identity(2, 2)).norm() < 1e-12);
  CHECK_THROWS_AS(compose_op(r, r), std::invalid_argument);
}

TEST_CASE("adjoint and transpose") {
  auto r = duality_r(2);
  auto rs = adjoint_op(r);
  CHECK(rs.mat.rows() == 1);
  CHECK(rs.mat.cols() == 4);
  CHECK(rs.mat(0, 0) == cplx(1.0));
  CHECK(rs.mat(0, 3) == cplx(1.0));
  std::mt19937 rng(3);
  auto a = random_op(2, 1, 2, rng);
  CHECK((adjoint_op(adjoint_op(a)).mat - a.mat).norm() == 0.0);
  CHECK((transpose_op(transpose_op(a)).mat - a.mat).norm() == 0.0);
  CHECK((adjoint_op(identity_op(3, 2)).mat - identity_op(3, 2).mat).norm() == 0.0);

  Mat m(2, 2);
  m << 0, 1, -1, 0;
  InterOp t(2, 1, 1, m);
  Mat expect(2, 2);
  expect << 0, -1, 1, 0;
  CHECK((transpose_op(t).mat - expect).norm() == 0.0);
  // transpose equals adjoint for real matrices
  CHECK((transpose_op(t).mat - adjoint_op(t).mat).norm() == 0.0);
}

TEST_CASE("extract_F and build_R_from_F") {
  auto f_id = extract_F(duality_r(2));
  CHECK((f_id.entries - Mat::Identity(2, 2)).norm() < 1e-12);
  CHECK(f_id.sign == 1);

  // R(1) = -e1 tensor e2 + e2 tensor e1
  Mat v = Mat::Zero(4, 1);
  v(0 * 2 + 1, 0) = -1;
  v(1 * 2 + 0, 0) = 1;
  auto f = extract_F(InterOp(2, 0, 2, v));
  Mat expect(2, 2);
  expect << 0, 1, -1, 0;
  CHECK((f.entries - expect).norm() < 1e-12);
  CHECK(f.sign == -1);

  Mat w = Mat::Zero(4, 1);
  w(0 * 2 + 1, 0) = 1;
  w(1 * 2 + 0, 0) = 1;
  auto fsym = extract_F(InterOp(2, 0, 2, w));
  Mat expect2(2, 2);
  expect2 << 0, 1, 1, 0;
  CHECK((fsym.entries - expect2).norm() < 1e-12);
  CHECK(fsym.sign == 1);

  for (const FMatrix& fm : {f_id, f, fsym}) {
    auto round = extract_F(build_R_from_F(fm));
    CHECK((round.entries - fm.entries).norm() < 1e-12);
  }
  CHECK_THROWS_AS(extract_F(InterOp(2, 0, 2, Mat::Zero(4, 1))), std::invalid_argument);
}

TEST_CASE("conjugation_sign") {
  CHECK(conjugation_sign(duality_r(2)) == 1);
  CHECK(conjugation_sign(build_R_from_F(antisym2())) == -1);
  CHECK(!conjugation_sign(InterOp(2, 0, 2, Mat::Zero(4, 1))));
}

TEST_CASE("snake identities for random-ish F with FF-bar sign") {
  for (int s = 0; s < 2; ++s) {
    FMatrix f = s == 0 ? FMatrix{2, Mat::Identity(2, 2), std::nullopt} : antisym2();
    auto R = build_R_from_F(f);
    int d = 2;
    double sign = s == 0 ? 1.0 : -1.0;
    auto lhs1 = compose_op(tensor_op(adjoint_op(R), identity_op(d, 1)),
                           tensor_op(identity_op(d, 1), R));
    auto lhs2 = compose_op(tensor_op(identity_op(d, 1), adjoint_op(R)),
                           tensor_op(R, identity_op(d, 1)));
    CHECK((lhs1.mat - sign * Mat::Identity(d, d)).norm() < 1e-12);
    CHECK((lhs2.mat - sign * Mat::Identity(d, d)).norm() < 1e-12);
  }
}

TEST_CASE("bend moves") {
  auto r = duality_r(2);
  auto b = bend(identity_op(2, 1), r, BendSide::Right, BendDirection::Up);
  CHECK(b.source_power == 0);
  CHECK(b.target_power == 2);
  CHECK((b.mat - r.mat).norm() < 1e-12);

  // bend(r*, r, right, up) contracts to the identity on H
  auto c = bend(adjoint_op(r), r, BendSide::Right, BendDirection::Up);
  CHECK(c.source_power == 1);
  CHECK(c.target_power == 1);
  CHECK((c.mat - Mat::Identity(2, 2)).norm() < 1e-12);

  // up then down returns sign * T, both sides
  std::mt19937 rng(11);
  for (int s = 0; s < 2; ++s) {
    FMatrix f = s == 0 ? FMatrix{2, Mat::Identity(2, 2), std::nullopt} : antisym2();
    auto R = build_R_from_F(f);
    double sign = s == 0 ? 1.0 : -1.0;
    auto t = random_op(2, 2, 1, rng);
    for (auto side : {BendSide::Left, BendSide::Right}) {
      auto roundtrip = bend(bend(t, R, side, BendDirection::Up), R, side, BendDirection::Down);
      CHECK((roundtrip.mat - sign * t.mat).norm() < 1e-9);
    }
  }
  CHECK_THROWS_AS(bend(identity_op(2, 0), r, BendSide::Right, BendDirection::Up),
                  std::invalid_argument);
}

TEST_CASE("grading arithmetic on random ops") {
  std::mt19937 rng(23);
  for (int rep = 0; rep < 10; ++rep) {
    int k1 = rep % 3, l1 = (rep + 1) % 3, k2 = (rep + 2) % 3;
    auto a = random_op(2, k1, l1, rng);
    auto b = random_op(2, k2, k1, rng);
    auto t = tensor_op(a, b);
    CHECK(t.source_power == k1 + k2);
    CHECK(t.target_power == l1 + k1);
    auto cmp = compose_op(a, b);
    CHECK(cmp.source_power == k2);
    CHECK(cmp.target_power == l1);
    CHECK(adjoint_op(a).source_power == l1);
    CHECK(adjoint_op(a).target_power == k1);
  }
}
