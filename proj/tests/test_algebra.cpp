#include "doctest.h"

#include "ncg/algebra.hpp"
#include "ncg/algebra_io.hpp"

using namespace ncg;

TEST_CASE("catalogue entries validate over Q, F2 and F3") {
  for (const Field &f : {Field::rationals(), Field::prime(2), Field::prime(3)})
    for (const auto &a : default_catalogue(f)) {
      INFO(a.name(), " over ", f.name());
      CHECK(validate(a).ok());
      CHECK(a.dim() <= 8);
    }
}

TEST_CASE("builtin shapes") {
  auto d = builtin("dual_numbers");
  CHECK(d.dim() == 2);
  CHECK(*d.weights() == std::vector<int>{0, 1});
  auto c = builtin("clifford1");
  CHECK(*c.parities() == std::vector<int>{0, 1});
  CHECK(c.product(1, 1) == basis_vector(0));
  CHECK(builtin("quantum_plane", {{"q", "2"}, {"max_weight", "4"}}).dim() == 15);
  CHECK(builtin("mat", {{"m", "3"}}).dim() == 9);
  CHECK(builtin("a2_path").dim() == 3);
  CHECK(builtin("k_times_k").dim() == 2);
  CHECK(builtin("poly_truncated", {{"vars", "2"}, {"max_weight", "5"}}).dim() == 21);
}

TEST_CASE("builtin errors") {
  CHECK_THROWS_AS(builtin("no_such_algebra"), StructuralError);
  CHECK_THROWS_AS(builtin("quantum_plane", {{"q", "0"}}), ContractViolation);
  CHECK_THROWS_AS(builtin("truncated_poly", {{"m", "0"}}), ContractViolation);
  CHECK_THROWS_AS(builtin("mat", {{"m", "0"}}), ContractViolation);
  CHECK_THROWS_AS(builtin("mat", {{"size", "2"}}), ContractViolation);
  CHECK_THROWS_AS(builtin("quantum_plane", {{"q", "3"}}, Field::prime(3)), ContractViolation);
}

TEST_CASE("validation reports witnesses") {
  // x^2 = y, y x = 0 but x y = x: not associative
  AlgebraSpec bad("bad", Field::rationals(), 3,
                  {{0, 0, 0, 1}, {0, 1, 1, 1}, {1, 0, 1, 1}, {0, 2, 2, 1}, {2, 0, 2, 1}, {1, 1, 2, 1}, {1, 2, 1, 1}});
  auto rep = validate(bad);
  REQUIRE_FALSE(rep.ok());
  bool assoc = false;
  for (const auto &v : rep.violations)
    assoc = assoc || v.kind == Violation::Kind::associativity;
  CHECK(assoc);

  AlgebraSpec no_unit("no_unit", Field::rationals(), 2, {{0, 0, 0, 1}, {1, 1, 1, 1}});
  CHECK(validate(no_unit).violations.front().kind == Violation::Kind::unit);

  // commutative quantum plane with a weight table that breaks multiplicativity
  auto qp = builtin("quantum_plane", {{"q", "1"}, {"max_weight", "2"}});
  std::vector<int> w = *qp.weights();
  w[3] = 3;
  AlgebraSpec skew("skew", qp.field(), qp.dim(), qp.terms(), w);
  auto wr = validate(skew);
  REQUIRE_FALSE(wr.ok());
  CHECK(wr.violations.front().kind == Violation::Kind::weight);
}

TEST_CASE("opposite is an involution") {
  for (const auto &a : default_catalogue(Field::rationals())) {
    CHECK(opposite(opposite(a)) == a);
    CHECK(validate(opposite(a)).ok());
  }
  auto q = builtin("quantum_plane", {{"q", "2"}, {"max_weight", "2"}});
  CHECK_FALSE(opposite(q) == q);
}

TEST_CASE("matrix algebra over a superalgebra keeps parities") {
  auto m = matrix_algebra(builtin("clifford1"), 2);
  CHECK(m.dim() == 8);
  CHECK(m.super());
  CHECK(validate(m).ok());
  auto md = matrix_algebra(builtin("dual_numbers"), 2);
  CHECK(md.dim() == 8);
  CHECK(validate(md).ok());
}

TEST_CASE("gluing along a bimodule") {
  auto k = builtin("point");
  auto g = glue(k, k, BimoduleSpec::unit_actions(k, k, 1));
  CHECK(g.dim() == 3);
  CHECK(validate(g).ok());
  // the corner is square-zero and idempotents split the unit
  CHECK(g.product(2, 2).empty());
  CHECK(g.product(1, 1) == basis_vector(1));

  auto d = builtin("dual_numbers");
  BimoduleSpec bad = BimoduleSpec::unit_actions(d, d, 1);
  bad.left_action.push_back({1, 0, 0, Scalar(1)}); // eps acts invertibly
  CHECK_THROWS_AS(glue(d, d, bad), ContractViolation);
}

TEST_CASE("JSON round trip and strict parsing") {
  for (const auto &a : default_catalogue(Field::prime(3))) {
    auto j = algebra_to_json(a);
    CHECK(algebra_from_json(j) == a);
  }
  auto j = algebra_to_json(builtin("dual_numbers"));
  j["colour"] = "blue";
  CHECK_THROWS_AS(algebra_from_json(j), StructuralError);
  j.erase("colour");
  j["format"] = "ncg-algebra/2";
  CHECK_THROWS_AS(algebra_from_json(j), StructuralError);

  // unit given as basis element 1
  nlohmann::json s = {{"format", "ncg-algebra/1"},
                      {"field", "Q"},
                      {"dim", 2},
                      {"unit", 1},
                      {"structure", {{0, 0, 1, "0"}, {1, 1, 1, "1"}, {0, 1, 0, "1"}, {1, 0, 0, "1"}}}};
  auto a = algebra_from_json(s);
  CHECK(validate(a).ok());
  CHECK(a.product(1, 1).empty());
}
