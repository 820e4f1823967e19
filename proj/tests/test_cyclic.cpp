#include "doctest.h"

#include <set>

#include "ncg/cyclic.hpp"

using namespace ncg;

namespace {
DegreeWindow win(int n) { return DegreeWindow{n, {}, {}}; }
}

TEST_CASE("negative cyclic of the point") {
  auto r = negative_cyclic(builtin("point"), win(8), 3);
  CHECK(r.even.free_rank == 1);
  CHECK(r.odd.free_rank == 0);
  CHECK(r.even.torsion_blocks.empty());
  CHECK(r.odd.torsion_blocks.empty());
}

TEST_CASE("dual numbers: free even rank one plus torsion") {
  auto r = negative_cyclic(builtin("dual_numbers"), win(8), 3);
  CHECK(r.even.free_rank == 1);
  CHECK(r.odd.free_rank == 0);
  CHECK_FALSE(r.even.torsion_blocks.empty());
  CHECK_FALSE(r.odd.torsion_blocks.empty());
}

TEST_CASE("u = 0 recovers Hochschild homology") {
  for (const char *name : {"dual_numbers", "mat", "clifford1", "truncated_poly", "a2_path"}) {
    INFO(name);
    auto a = builtin(name);
    HochschildComplex c(a);
    auto r = negative_cyclic(c, win(6), 1);
    auto hh = hh_ranks(c, win(6));
    std::map<std::pair<std::optional<int>, int>, std::size_t> from_c;
    for (const auto &p : r.pieces)
      for (const auto &iv : p.report.intervals) {
        CHECK(iv.length == 1);
        from_c[{p.weight, iv.start}]++;
      }
    std::set<std::optional<int>> weights;
    for (const auto &p : r.pieces)
      weights.insert(p.weight);
    for (const auto &w : weights) {
      int top = 6;
      for (const auto &p : r.pieces)
        if (p.weight == w)
          top = std::min(top, p.report.top);
      for (int n = 0; n <= top; ++n)
        CHECK(from_c[{w, n}] == hh.at(n, w).value_or(0));
    }
  }
}

TEST_CASE("periodic ranks") {
  auto d = hp_ranks(builtin("dual_numbers"), win(8), 3);
  CHECK(d.conclusive);
  CHECK(d.even == 1);
  CHECK(d.odd == 0);
  auto t = hp_ranks(builtin("truncated_poly"), win(8), 3);
  CHECK(t.conclusive);
  CHECK(t.even == 1);
  CHECK(t.odd == 0);
  auto c = hp_ranks(builtin("clifford1"), win(8), 3);
  CHECK(c.conclusive);
  CHECK(c.even == 0);
  CHECK(c.odd == 1);
  auto m = hp_ranks(builtin("mat"), win(8), 3);
  CHECK(m.conclusive);
  CHECK(m.even == 1);
  CHECK(m.odd == 0);
  CHECK_THROWS_AS(hp_ranks(builtin("point"), win(5), 3), ContractViolation);
}

TEST_CASE("filtration is non-increasing") {
  for (const char *name : {"point", "dual_numbers", "clifford1", "mat", "truncated_poly"}) {
    INFO(name);
    auto f = hodge_filtration(builtin(name), win(8), 3);
    for (std::size_t i = 1; i < f.size(); ++i) {
      CHECK(f[i].even <= f[i - 1].even);
      CHECK(f[i].odd <= f[i - 1].odd);
    }
  }
  auto p = hodge_filtration(builtin("point"), win(8), 3);
  CHECK(p.front().twice_index == 0);
  CHECK(p.front().even == 1);
}

TEST_CASE("degeneration verdicts") {
  CHECK(degeneration_check(builtin("point"), win(8), 3).verdict == Verdict::collapses_in_window);
  CHECK(degeneration_check(builtin("dual_numbers"), win(8), 3).verdict == Verdict::finite_torsion_found);
  CHECK(degeneration_check(builtin("mat"), win(6), 3).verdict == Verdict::collapses_in_window);
}

TEST_CASE("graded pieces") {
  auto a = graded_piece_analysis(1, 3, Field::prime(2));
  CHECK(a.acyclic());
  CHECK(a.composites_vanish);
  for (int n = 2; n <= 6; ++n)
    CHECK(graded_piece_analysis(1, n, Field::rationals()).acyclic());
  auto b = graded_piece_analysis(1, 2, Field::prime(2));
  auto ref = rotation_complex_ranks(1, 1, Field::prime(2));
  CHECK(b.ker_rot_mod_norm == ref.first);
  CHECK(b.ker_norm_mod_rot == ref.second);
  CHECK(ref == std::pair<std::size_t, std::size_t>{1, 1});
}

TEST_CASE("char p comparison on the dual numbers over F2") {
  auto r = char_p_compare(builtin("dual_numbers", {}, Field::prime(2)), win(8), 3);
  CHECK(r.twisted_agree);
  CHECK_FALSE(r.untwisted_agree);
  CHECK(char_p_compare(builtin("point", {}, Field::prime(3)), win(8), 3).twisted_agree);
  CHECK_THROWS_AS(char_p_compare(builtin("point"), win(8), 3), Unsupported);
}
