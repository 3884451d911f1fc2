#include <doctest.h>

#include "qgrecon/diagrams.hpp"

using namespace qgr;

TEST_CASE("noncrossing pairing counts are Catalan numbers") {
  CHECK(noncrossing_pairings(0, 0).size() == 1);
  CHECK(noncrossing_pairings(0, 2).size() == 1);
  CHECK(noncrossing_pairings(1, 1).size() == 1);
  CHECK(noncrossing_pairings(2, 2).size() == 2);
  CHECK(noncrossing_pairings(1, 3).size() == 2);
  CHECK(noncrossing_pairings(3, 3).size() == 5);
  CHECK(noncrossing_pairings(4, 4).size() == 14);
  CHECK(noncrossing_pairings(0, 8).size() == 14);
}

TEST_CASE("odd totals admit no pairing") {
  CHECK(noncrossing_pairings(1, 0).empty());
  CHECK(noncrossing_pairings(2, 1).empty());
  CHECK(noncrossing_pairings(3, 0).empty());
}

TEST_CASE("every enumerated pairing is noncrossing and covers all points") {
  for (auto [k, l] : {std::pair{2, 2}, std::pair{3, 3}, std::pair{1, 3}}) {
    for (const auto& p : noncrossing_pairings(k, l)) {
      CHECK(!is_noncrossing(p));  // returns true exactly when a crossing exists
      std::vector<int> seen(k + l, 0);
      for (auto [a, b] : p.blocks) {
        CHECK(a < b);
        ++seen[a];
        ++seen[b];
      }
      for (int s : seen) CHECK(s == 1);
    }
  }
}

TEST_CASE("is_noncrossing detects a crossing") {
  PairPartition p{2, 2, {{0, 2}, {1, 3}}, false};
  CHECK(is_noncrossing(p));
  PairPartition q{2, 2, {{0, 3}, {1, 2}}, false};
  CHECK(!is_noncrossing(q));
}

TEST_CASE("pairing evaluation: through strands give the identity") {
  FMatrix f{2, Mat::Identity(2, 2), +1};
  // (1,1) pairing: bottom 0 with top circle position 1 = upper leg 0
  auto ps = noncrossing_pairings(1, 1);
  REQUIRE(ps.size() == 1);
  InterOp op = evaluate_pairing(ps[0], f);
  CHECK((op.mat - Mat::Identity(2, 2)).norm() < 1e-14);
}

TEST_CASE("pairing evaluation: the (0,2) cup reproduces R") {
  Mat fm(2, 2);
  fm << 0, 1, -1, 0;
  FMatrix f{2, fm, -1};
  auto ps = noncrossing_pairings(0, 2);
  REQUIRE(ps.size() == 1);
  InterOp op = evaluate_pairing(ps[0], f);
  CHECK((op.mat - build_R_from_F(f).mat).norm() < 1e-14);
}

TEST_CASE("oracle dimensions for d=2, both signs") {
  Mat anti(2, 2);
  anti << 0, 1, -1, 0;
  for (const FMatrix& f : {FMatrix{2, Mat::Identity(2, 2), +1}, FMatrix{2, anti, -1}}) {
    CHECK(diagram_oracle_dims(f, 0, 0) == 1);
    CHECK(diagram_oracle_dims(f, 0, 2) == 1);
    CHECK(diagram_oracle_dims(f, 1, 1) == 1);
    CHECK(diagram_oracle_dims(f, 2, 2) == 2);
    CHECK(diagram_oracle_dims(f, 1, 3) == 2);
    CHECK(diagram_oracle_dims(f, 3, 3) == 5);
    CHECK(diagram_oracle_dims(f, 0, 1) == 0);
    CHECK(diagram_oracle_dims(f, 2, 1) == 0);
  }
}

TEST_CASE("oracle rank drops below the Catalan count for d=1") {
  FMatrix f{1, Mat::Identity(1, 1), +1};
  CHECK(diagram_oracle_dims(f, 2, 2) == 1);  // two diagrams, one-dimensional span
  CHECK(diagram_oracle_dims(f, 3, 3) == 1);
}
