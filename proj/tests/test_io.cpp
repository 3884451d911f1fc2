#include <doctest.h>

#include "qgrecon/io.hpp"

using namespace qgr;

TEST_CASE("complex and matrix encoding roundtrips bit-exactly") {
  cplx z(0.1, -2.5e-17);
  CHECK(complex_from_json(complex_to_json(z)) == z);
  Mat m(2, 3);
  m << cplx(1.0 / 3.0, 0), 2, cplx(0, -7e300), 0.25, cplx(1e-8, 1e-8), -1;
  Mat back = matrix_from_json(matrix_to_json(m), 2, 3);
  CHECK((back.array() == m.array()).all());
}

TEST_CASE("operator files roundtrip and validate") {
  InterOp t(2, 1, 2, Mat::Random(4, 2));
  json j = operator_to_json(t);
  // through a serialized string, as the CLI would
  InterOp back = operator_from_json(json::parse(j.dump()));
  CHECK(back.dim == 2);
  CHECK(back.source_power == 1);
  CHECK(back.target_power == 2);
  CHECK((back.mat.array() == t.mat.array()).all());

  json bad = j;
  bad["matrix"][1] = json::array();  // wrong row length
  CHECK_THROWS_AS(operator_from_json(bad), InputError);
  json noformat = j;
  noformat.erase("format");
  CHECK_THROWS_AS(operator_from_json(noformat), InputError);
}

TEST_CASE("generator files roundtrip") {
  InterOp R = duality_r(2);
  Mat p = Mat::Zero(2, 2);
  p(0, 0) = 1.0;
  json j = generators_to_json(2, R, {InterOp(2, 1, 1, p)});
  auto gf = generators_from_json(json::parse(j.dump()));
  CHECK(gf.dim == 2);
  CHECK((gf.R.mat.array() == R.mat.array()).all());
  REQUIRE(gf.generators.size() == 1);
  CHECK((gf.generators[0].mat - p).norm() == 0.0);
}

TEST_CASE("provenance words roundtrip through S-expressions") {
  Word w = Word::compose(
      Word::bend(BendSide::Left, BendDirection::Down, Word::ref(2, 2, 1)),
      Word::tensor(Word::adjoint(Word::rgen()), Word::identity(1)));
  std::string s = word_to_sexp(w);
  CHECK(s == "(compose (bend left down (ref 2 2 1)) (tensor (adj (R)) (id 1)))");
  Word back = word_from_sexp(s);
  CHECK(word_to_sexp(back) == s);
  CHECK_THROWS_AS(word_from_sexp("(frob 1)"), InputError);
  CHECK_THROWS_AS(word_from_sexp("(id 1) junk"), InputError);
}

TEST_CASE("collection files roundtrip with provenance") {
  auto c = generate_collection(2, duality_r(2), {}, 2);
  json j = collection_to_json(c);
  Collection back = collection_from_json(json::parse(j.dump()));
  CHECK(back.dim == c.dim);
  CHECK(back.level == c.level);
  CHECK(dims_table(back) == dims_table(c));
  for (const auto& [cell, sp] : c.spaces) {
    const auto& other = back.space(cell.first, cell.second);
    REQUIRE(sp.basis.size() == other.basis.size());
    for (size_t i = 0; i < sp.basis.size(); ++i)
      CHECK((sp.basis[i].mat.array() == other.basis[i].mat.array()).all());
  }
  REQUIRE(back.provenance.size() == c.provenance.size());
  // the reloaded provenance must replay cleanly
  auto audit = provenance_audit(back);
  CHECK(audit.flagged.empty());
}

TEST_CASE("relations files roundtrip with 1-based indices") {
  AlgebraElement rel(2);
  rel.add_term(Monomial{{0, 1}, {1, 1}}, cplx(1.5, -2.0));
  rel.add_term(Monomial{}, -1.0);
  json j = relations_to_json({rel});
  CHECK(j["relations"][0]["terms"][1]["rows"] == json::array({1, 2}));
  auto back = relations_from_json(json::parse(j.dump()), 2);
  REQUIRE(back.size() == 1);
  CHECK(back[0].terms == rel.terms);
  json bad = j;
  bad["relations"][0]["terms"][1]["rows"] = json::array({0, 2});  // 0 is out of range
  CHECK_THROWS_AS(relations_from_json(bad, 2), InputError);
}

TEST_CASE("dims CSV roundtrips") {
  Eigen::MatrixXi t(3, 3);
  t << 1, 0, 1, 0, 1, 0, 1, 0, 2;
  std::string csv = dims_to_csv(t);
  CHECK(csv.substr(0, 8) == "k\\l,0,1,");
  CHECK(dims_from_csv(csv) == t);
  CHECK_THROWS_AS(dims_from_csv("k\\l,0\n0,x\n"), InputError);
}

TEST_CASE("report text marks failures") {
  VerificationReport rep;
  rep.suite = "demo";
  rep.add("fine", 1e-12, 1e-8);
  rep.add("broken", 0.5, 1e-8);
  std::string text = report_to_text({rep});
  CHECK(text.find("fine 1e-12 1e-08 PASS") != std::string::npos);
  CHECK(text.find("broken 0.5 1e-08 FAIL") != std::string::npos);
}

TEST_CASE("square matrix files validate their shape") {
  Mat f(2, 2);
  f << 0, 1, -1, 0;
  Mat back = square_matrix_from_json(json::parse(square_matrix_to_json(f).dump()));
  CHECK((back.array() == f.array()).all());
  json bad = square_matrix_to_json(f);
  bad["dim"] = 3;
  CHECK_THROWS_AS(square_matrix_from_json(bad), InputError);
}
