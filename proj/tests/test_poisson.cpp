#include "doctest.h"

#include <random>

#include "ncg/poisson.hpp"

using namespace ncg;

namespace {

const Field Q = Field::rationals();

PolyForm x(int vars, int i) { return PolyForm::coordinate(vars, i, Q); }
PolyForm one(int vars) { return PolyForm::constant(vars, Scalar(1), Q); }
PolyForm dx(int vars, std::uint32_t mask, const PolyForm &coeff) {
  return coeff.wedge(PolyForm::monomial(Exponent(static_cast<std::size_t>(vars), 0), mask, Scalar(1), Q));
}

Bivector symplectic2() { return ConstantSymplectic{1}.inverse(Q); }

Bivector so3() {
  Bivector a(3, Q);
  a.set(0, 1, x(3, 2));
  a.set(1, 2, x(3, 0));
  a.set(2, 0, x(3, 1));
  return a;
}

// constant plus linear in 4 variables, Jacobiator on (x2, x3, x4) is -1
Bivector non_jacobi() {
  Bivector a(4, Q);
  a.set(0, 3, one(4));
  a.set(1, 2, x(4, 0));
  return a;
}

PolyForm random_poly(int vars, int deg, std::mt19937 &rng) {
  std::uniform_int_distribution<int> c(-3, 3);
  PolyForm p(vars, Q);
  for (const auto &m : monomial_functions(vars, deg, Q))
    p = p.plus(m, Scalar(c(rng)));
  return p;
}

} // namespace

TEST_CASE("bracket fixtures") {
  const auto a = symplectic2();
  CHECK(poisson_bracket(x(2, 0), x(2, 1), a) == one(2));
  Bivector b(2, Q);
  b.set(0, 1, x(2, 0).wedge(x(2, 1)));
  CHECK(poisson_bracket(x(2, 0), x(2, 1), b) == x(2, 0).wedge(x(2, 1)));
}

TEST_CASE("bracket is antisymmetric and Leibniz on random cubics") {
  std::mt19937 rng(7);
  const auto a = so3();
  for (int t = 0; t < 5; ++t) {
    const auto f = random_poly(3, 3, rng), g = random_poly(3, 3, rng), h = random_poly(3, 3, rng);
    CHECK(poisson_bracket(f, g, a) == poisson_bracket(g, f, a).scaled(Scalar(-1)));
    const auto lhs = poisson_bracket(f, g.wedge(h), a);
    const auto rhs = poisson_bracket(f, g, a).wedge(h).plus(g.wedge(poisson_bracket(f, h, a)));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("Jacobi identity") {
  CHECK(jacobi_check(symplectic2(), 3).pass);
  Bivector any2(2, Q);
  any2.set(0, 1, x(2, 0).wedge(x(2, 0)).plus(one(2)));
  CHECK(jacobi_check(any2, 3).pass);
  CHECK(jacobi_check(so3(), 3).pass);
  auto bad = jacobi_check(non_jacobi(), 2);
  CHECK_FALSE(bad.pass);
  REQUIRE(bad.witness);
  CHECK(bad.value->is_function());
}

TEST_CASE("Lie derivative fixtures") {
  const auto a = symplectic2();
  CHECK(lie_derivative(a, dx(2, 0b10, x(2, 0))) == one(2));
  CHECK(lie_derivative(a, dx(2, 0b11, x(2, 0))) == dx(2, 0b01, one(2)).scaled(Scalar(-1)));
  CHECK(lie_derivative(a, x(2, 0).wedge(x(2, 1))).is_zero());
  CHECK(iota(a, dx(2, 0b11, one(2))) == one(2));
}

TEST_CASE("operator degree bookkeeping") {
  const auto a = so3();
  for (const auto &m : monomial_forms(3, 2, Q)) {
    CHECK(exterior_d(exterior_d(m)).is_zero());
    const int k = std::popcount(m.terms().begin()->first.mask);
    const auto im = iota(a, m);
    CHECK(im == im.part(k - 2));
  }
}

TEST_CASE("conjugation identity") {
  CHECK(conjugation_check(symplectic2(), 6).pass);
  CHECK(conjugation_check(so3(), 4).pass);
  CHECK(conjugation_check(Bivector(3, Q), 3).pass);
  auto bad = conjugation_check(non_jacobi(), 2);
  CHECK_FALSE(bad.pass);
  CHECK(bad.witness);
}

TEST_CASE("Brylinski differential conditions") {
  for (const auto &a : {symplectic2(), so3()}) {
    auto b = brylinski_check(a, 3);
    CHECK(b.anticommutes.pass);
    CHECK(b.squares_zero.pass);
  }
  auto bad = brylinski_check(non_jacobi(), 2);
  CHECK_FALSE(bad.squares_zero.pass);
}

TEST_CASE("hbar scales the operators") {
  auto a = symplectic2();
  a.hbar = Scalar(3);
  CHECK(lie_derivative(a, dx(2, 0b10, x(2, 0))) == one(2).scaled(Scalar(3)));
  CHECK(conjugation_check(a, 3).pass);
}

TEST_CASE("Hodge star") {
  const ConstantSymplectic w{1};
  CHECK(hodge_star(one(2), w) == dx(2, 0b11, one(2)));
  CHECK(hodge_star(dx(2, 0b11, one(2)), w) == one(2).scaled(Scalar(-1)));
  CHECK(hodge_star(dx(2, 0b01, one(2)), w) == dx(2, 0b01, one(2)));
  auto s2 = star_identity_check(w, 6);
  CHECK(s2.weyl.pass);
  CHECK_FALSE(s2.literal.pass);
  auto s4 = star_identity_check(ConstantSymplectic{2}, 4);
  CHECK(s4.weyl.pass);
  CHECK_THROWS_AS(symplectic_from_bivector(so3()), Unsupported);
  CHECK(symplectic_from_bivector(symplectic2()).pairs == 1);
}

TEST_CASE("Poisson homology ranks") {
  auto h = poisson_homology_ranks(symplectic2(), 6);
  CHECK(h.even == 1);
  CHECK(h.odd == 0);
  auto z = poisson_homology_ranks(Bivector(2, Q), 6);
  CHECK(z.even == 1);
  CHECK(z.odd == 0);
  auto p = poisson_homology_ranks(Bivector(0, Q), 3);
  CHECK(p.even == 1);
  CHECK(p.odd == 0);
  auto s = poisson_homology_ranks(so3(), 5);
  CHECK(s.even == 1);
  CHECK(s.odd == 0);
  bool unstable = false;
  for (const auto &piece : h.pieces)
    unstable = unstable || !piece.stable;
  CHECK(unstable);
  CHECK_THROWS_AS(poisson_homology_ranks(non_jacobi(), 4), Unsupported);
}

TEST_CASE("bivector JSON round trip") {
  const auto a = so3();
  const auto j = bivector_to_json(a);
  const auto b = bivector_from_json(j);
  CHECK(b.components == a.components);
  auto bad = j;
  bad["extra"] = 1;
  CHECK_THROWS_AS(bivector_from_json(bad), StructuralError);
  const auto f = dx(3, 0b101, x(3, 1));
  CHECK(form_from_json(form_to_json(f), Q) == f);
}
