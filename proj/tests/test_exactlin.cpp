#include "doctest.h"

#include <algorithm>
#include <random>

#include "ncg/exactlin.hpp"

using namespace ncg;

namespace {

SparseMatrix dense(std::size_t r, std::size_t c, const std::vector<std::vector<long>> &rows,
                   const Field &f = Field::rationals()) {
  std::vector<std::vector<Scalar>> d;
  for (const auto &row : rows) {
    std::vector<Scalar> out;
    for (long v : row)
      out.emplace_back(v);
    d.push_back(out);
  }
  return SparseMatrix::from_rows(r, c, f, d);
}

SparseMatrix random_matrix(std::mt19937 &rng, std::size_t r, std::size_t c, const Field &f) {
  std::uniform_int_distribution<int> val(-3, 3), keep(0, 2);
  std::vector<Triplet> ts;
  for (Index i = 0; i < r; ++i)
    for (Index j = 0; j < c; ++j)
      if (keep(rng) == 0)
        ts.push_back({i, j, Scalar(val(rng))});
  return SparseMatrix::from_triplets(r, c, f, ts);
}

} // namespace

TEST_CASE("rank of small matrices") {
  CHECK(rank(SparseMatrix::identity(2, Field::rationals())) == 2);
  CHECK(rank(dense(2, 2, {{1, 2}, {2, 4}})) == 1);
  CHECK(rank(dense(2, 2, {{1, 1}, {1, 1}}, Field::prime(2))) == 1);
  CHECK(rank(dense(2, 2, {{1, 1}, {1, -1}}, Field::prime(2))) == 1);
  CHECK(rank(dense(2, 2, {{1, 1}, {1, -1}})) == 2);
  CHECK(rank(SparseMatrix(0, 5, Field::rationals())) == 0);
  CHECK(rank(SparseMatrix(4, 0, Field::prime(3))) == 0);
}

TEST_CASE("rank reads entries in the requested field") {
  auto m = dense(2, 2, {{3, 0}, {0, 1}});
  CHECK(rank(m, Field::prime(3)) == 1);
  CHECK(rank(m, Field::prime(5)) == 2);
}

TEST_CASE("kernel basis spans the null space") {
  auto m = dense(2, 3, {{1, 2, 3}, {2, 4, 6}});
  auto ker = kernel_basis(m);
  REQUIRE(ker.size() == 2);
  for (const auto &v : ker)
    CHECK(m.apply(v).empty());
  CHECK(span_rank(ker, 3, Field::rationals()) == 2);
}

TEST_CASE("rank plus nullity equals the number of columns") {
  std::mt19937 rng(7);
  for (const Field &f : {Field::rationals(), Field::prime(2), Field::prime(3), Field::prime(101)}) {
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t r = 1 + rng() % 9, c = 1 + rng() % 9;
      auto m = random_matrix(rng, r, c, f);
      auto ker = kernel_basis(m);
      CHECK(rank(m) + ker.size() == c);
      for (const auto &v : ker)
        CHECK(m.apply(v).empty());
      CHECK(rank(m) == rank(m.transpose()));
    }
  }
}

TEST_CASE("rank is invariant under row and column permutations") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t r = 2 + rng() % 7, c = 2 + rng() % 7;
    auto m = random_matrix(rng, r, c, Field::rationals());
    std::vector<Index> rp(r), cp(c);
    std::iota(rp.begin(), rp.end(), 0);
    std::iota(cp.begin(), cp.end(), 0);
    std::shuffle(rp.begin(), rp.end(), rng);
    std::shuffle(cp.begin(), cp.end(), rng);
    std::vector<Triplet> ts;
    for (Index j = 0; j < c; ++j)
      for (const auto &e : m.column(j).entries())
        ts.push_back({rp[e.index], cp[j], e.value});
    CHECK(rank(SparseMatrix::from_triplets(r, c, Field::rationals(), ts)) == rank(m));
  }
}

TEST_CASE("echelon reduction and membership") {
  std::vector<SparseVec> vs = {SparseVec::from_pairs({{0, 1}, {1, 1}}, Field::rationals()),
                               SparseVec::from_pairs({{1, 1}, {2, 1}}, Field::rationals())};
  Echelon e(3, Field::rationals(), vs);
  CHECK(e.rank() == 2);
  CHECK(e.free_columns().size() == 1);
  CHECK(e.contains(SparseVec::from_pairs({{0, 1}, {2, -1}}, Field::rationals())));
  CHECK_FALSE(e.contains(SparseVec::unit(0)));
  auto red = e.reduce(SparseVec::unit(0));
  for (const auto &x : red.entries())
    CHECK(x.index == e.free_columns().front());
}

TEST_CASE("large rationals stay exact") {
  std::vector<std::vector<Scalar>> d(6, std::vector<Scalar>(6));
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      d[i][j] = Scalar(1, i + j + 1); // Hilbert matrix, nonsingular
  CHECK(rank(SparseMatrix::from_rows(6, 6, Field::rationals(), d)) == 6);
}

TEST_CASE("two-term u-complex splits into a cokernel and a kernel block") {
  Field q = Field::rationals();
  UTruncation n(3);
  UMatrix d(1, 1, q, n);
  d.set_coefficient(1, SparseMatrix::identity(1, q)); // multiplication by u
  UComplex c{q, n, {1, 1}, {d}, false};
  auto reps = u_module_decompose(c);
  REQUIRE(reps.size() == 2);
  // kernel of u on k[u]/u^3 is u^2 k: one block of size 1
  CHECK(reps[0].free_rank == 0);
  CHECK(reps[0].torsion_blocks == std::vector<int>{1});
  // cokernel is k[u]/u: one block of size 1
  CHECK(reps[1].free_rank == 0);
  CHECK(reps[1].torsion_blocks == std::vector<int>{1});
  CHECK(reps[1].saturated_at_N);
}

TEST_CASE("zero differential leaves free modules") {
  Field f = Field::prime(5);
  UTruncation n(4);
  UMatrix d(3, 2, f, n);
  UComplex c{f, n, {2, 3}, {d}, false};
  auto reps = u_module_decompose(c);
  CHECK(reps[0].free_rank == 2);
  CHECK(reps[1].free_rank == 3);
  CHECK(reps[1].dimension() == 12);
}

TEST_CASE("long torsion is not saturated") {
  Field q = Field::rationals();
  UTruncation n(3);
  UMatrix d(1, 1, q, n);
  d.set_coefficient(2, SparseMatrix::identity(1, q)); // u^2
  auto reps = u_module_decompose(UComplex{q, n, {1, 1}, {d}, false});
  CHECK(reps[1].torsion_blocks == std::vector<int>{2});
  CHECK_FALSE(reps[1].saturated_at_N);
}

TEST_CASE("periodic complex with a nonzero composite is rejected") {
  Field q = Field::rationals();
  UTruncation n(2);
  UMatrix d(1, 1, q, n);
  d.set_coefficient(0, SparseMatrix::identity(1, q));
  UComplex c{q, n, {1, 1}, {d, d}, true};
  CHECK_THROWS_AS(u_module_decompose(c), ContractViolation);
}

TEST_CASE("malformed u-complexes are structural errors") {
  Field q = Field::rationals();
  UTruncation n(2);
  UMatrix d(2, 1, q, n);
  CHECK_THROWS_AS(u_module_decompose(UComplex{q, n, {1, 1}, {d}, false}), StructuralError);
  CHECK_THROWS_AS(UTruncation(0), ContractViolation);
}

TEST_CASE("graded persistence of a single free generator") {
  // C_d = k for d = 0, -2, -4 with u an isomorphism and zero differential.
  Field q = Field::rationals();
  GradedUComplex g;
  g.field = q;
  g.truncation = 3;
  g.lo = -4;
  g.top = 0;
  for (int d = g.lo; d <= g.top + 1; ++d) {
    const std::size_t dim = (d <= 0 && d % 2 == 0) ? 1 : 0;
    const std::size_t below = (d - 1 <= 0 && (d - 1) % 2 == 0 && d - 1 >= g.lo) ? 1 : 0;
    const std::size_t below2 = (d - 2 >= g.lo && d <= 0 && d % 2 == 0) ? 1 : 0;
    g.dims.push_back(dim);
    g.diff.emplace_back(below, dim, q);
    SparseMatrix u(below2, dim, q);
    if (below2 && dim)
      u = SparseMatrix::identity(1, q);
    g.umap.push_back(u);
  }
  auto rep = u_persistence(g);
  REQUIRE(rep.intervals.size() == 1);
  CHECK(rep.intervals[0].start == 0);
  CHECK(rep.intervals[0].length == 3);
  CHECK(rep.intervals[0].stable);
}
