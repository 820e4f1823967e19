#include "doctest.h"

#include <bit>

#include "ncg/kchern.hpp"

using namespace ncg;

TEST_CASE("Chern character of e11 in Mat2(Q)") {
  const auto a = builtin("mat");
  const auto idem = diagonal_idempotents(2, a);
  REQUIRE(idem.size() == 3);
  for (int N : {1, 2, 3}) {
    auto r = chern_idempotent(a, idem[0], N);
    CHECK(r.certificate.cycle);
    CHECK(r.chain.terms.size() == static_cast<std::size_t>(N));
    CHECK(r.hh0_nonzero);
    CHECK(r.trace == 2); // L_{e11} on Mat2 has rank 2
  }
  auto full = chern_idempotent(a, idem[2], 3);
  CHECK(full.certificate.cycle);
  CHECK(full.trace == 4);
}

TEST_CASE("diagonal idempotents of mat(3) give cycles with additive classes") {
  const auto a = builtin("mat", {{"m", "3"}});
  const auto idem = diagonal_idempotents(3, a);
  REQUIRE(idem.size() == 7);
  std::vector<Scalar> single;
  for (std::size_t k = 0; k < idem.size(); ++k) {
    auto r = chern_idempotent(a, idem[k], 3);
    CHECK(r.certificate.cycle);
    REQUIRE(r.hh0_class.size() == 1);
    if (k == 0)
      single = r.hh0_class;
    // the class counts the diagonal entries
    const auto bits = static_cast<long>(std::popcount(k + 1));
    CHECK(r.hh0_class[0] == single[0] * bits);
  }
}

TEST_CASE("nontrivial idempotent of k x k") {
  const auto a = builtin("k_times_k");
  const SparseVec e = basis_vector(1);
  REQUIRE(a.multiply(e, e) == e);
  auto r = chern_idempotent(a, e, 3);
  CHECK(r.certificate.cycle);
  CHECK(r.hh0_nonzero);
  CHECK(r.trace == 1);
}

TEST_CASE("Chern character rejects bad input") {
  const auto a = builtin("dual_numbers");
  CHECK_THROWS_AS(chern_idempotent(a, basis_vector(1), 2), ContractViolation);
  const auto m3 = builtin("mat", {}, Field::prime(3));
  CHECK_THROWS_AS(chern_idempotent(m3, diagonal_idempotents(2, m3)[0], 2), Unsupported);
  const auto m7 = builtin("mat", {}, Field::prime(7));
  CHECK(chern_idempotent(m7, diagonal_idempotents(2, m7)[0], 3).certificate.cycle);
}

TEST_CASE("a non-cycle is reported with a witness") {
  const auto a = builtin("mat");
  UChain x;
  x.truncation = 2;
  x.terms.push_back(Chain{{Word{1, 2}, Scalar(1)}});
  auto c = check_negative_cycle(a, x);
  CHECK_FALSE(c.cycle);
  CHECK(c.power == 0);
}

TEST_CASE("p-power on HH0 of Mat2(F2)") {
  const auto a = builtin("mat", {}, Field::prime(2));
  auto r = ppower_on_hh0(a);
  CHECK(r.representatives.size() == 1);
  CHECK(r.well_defined.pass);
  CHECK(r.additive.pass);
  CHECK(r.semilinear.pass);
  CHECK(r.composition.pass);
  // off-diagonal units are nilpotent, so e12 maps to 0
  HH0Result hh0 = hh0_direct(a);
  for (Index i = 1; i < a.dim(); ++i) {
    const SparseVec sq = a.power(basis_vector(i), 2);
    if (a.multiply(basis_vector(i), basis_vector(i)).empty())
      for (const auto &x : hh0.coordinates(sq))
        CHECK(x == 0);
  }
}

TEST_CASE("p-power on F3[x]/x^3 kills x") {
  const auto a = builtin("truncated_poly", {{"m", "3"}}, Field::prime(3));
  auto r = ppower_on_hh0(a);
  REQUIRE(r.representatives.size() == 3);
  CHECK(r.well_defined.pass);
  CHECK(r.additive.pass);
  CHECK(r.semilinear.pass);
  CHECK(r.composition.pass);
  // column of the unit is the unit, every other column is zero
  for (std::size_t c = 0; c < 3; ++c)
    for (std::size_t row = 0; row < 3; ++row)
      CHECK(r.matrix[row][c] == (r.representatives[c] == 0 && row == c ? 1 : 0));
}

TEST_CASE("p-power certificates across small algebras") {
  for (std::uint64_t p : {2u, 3u})
    for (const char *name : {"a2_path", "group_z2", "dual_numbers", "k_times_k"}) {
      INFO(name << " p=" << p);
      auto r = ppower_on_hh0(builtin(name, {}, Field::prime(p)));
      CHECK(r.well_defined.pass);
      CHECK(r.additive.pass);
      CHECK(r.semilinear.pass);
      CHECK(r.composition.pass);
    }
  CHECK_THROWS_AS(ppower_on_hh0(builtin("mat")), Unsupported);
}

TEST_CASE("the p = 2 lift is a negative cyclic cycle") {
  const Field f2 = Field::prime(2);
  for (const char *name : {"dual_numbers", "mat", "a2_path", "truncated_poly"}) {
    const auto a = builtin(name, {}, f2);
    for (Index i = 0; i < a.dim(); ++i) {
      INFO(name << " e_" << i);
      auto l = ppower_lift(a, basis_vector(i));
      CHECK(l.certificate.cycle);
    }
  }
}

TEST_CASE("additivity defect of the lift is a boundary") {
  const Field f2 = Field::prime(2);
  for (const char *name : {"dual_numbers", "mat"}) {
    const auto a = builtin(name, {}, f2);
    for (Index i = 1; i < a.dim(); ++i)
      for (Index j = i + 1; j < a.dim(); ++j) {
        INFO(name << " " << i << " " << j);
        const auto x = basis_vector(i), y = basis_vector(j);
        UChain d = uchain_sub(ppower_lift_p2(a, x.plus(y, f2)).chain, ppower_lift_p2(a, x).chain, f2);
        d = uchain_sub(d, ppower_lift_p2(a, y).chain, f2);
        CHECK(check_negative_cycle(a, d).cycle);
        CHECK(is_negative_boundary(a, d));
      }
  }
}

TEST_CASE("the lift of a nonzero class is not a boundary") {
  const auto a = builtin("point", {}, Field::prime(2));
  auto l = ppower_lift_p2(a, basis_vector(0));
  CHECK_FALSE(is_negative_boundary(a, l.chain));
  const auto m = builtin("mat", {}, Field::prime(2));
  auto e = ppower_lift_p2(m, diagonal_idempotents(2, m)[0]);
  CHECK(e.certificate.cycle);
  CHECK_FALSE(is_negative_boundary(m, e.chain));
}

TEST_CASE("the odd-prime lift is declared unsupported") {
  const auto a = builtin("dual_numbers", {}, Field::prime(3));
  CHECK_THROWS_AS(ppower_lift(a, basis_vector(1)), Unsupported);
  CHECK_THROWS_AS(ppower_lift_p2(a, basis_vector(1)), Unsupported);
}
