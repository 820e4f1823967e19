// Acceptance run: one line per criterion, exit status 1 if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "fixtures/main_values.hpp"
#include "ncg/cyclic.hpp"
#include "ncg/kchern.hpp"
#include "ncg/poisson.hpp"
#include "oracle/oracle.hpp"

using namespace ncg;

namespace {

const Field Q = Field::rationals();
const Field F2 = Field::prime(2);
const Field F3 = Field::prime(3);

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string &what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

DegreeWindow win(int n) { return DegreeWindow{n, {}, {}}; }

std::vector<std::size_t> totals(const AlgebraSpec &a, int n_max) {
  const auto t = hh_ranks(a, win(n_max));
  std::vector<std::size_t> out;
  for (int n = 0; n <= n_max; ++n)
    out.push_back(t.total(n));
  return out;
}

std::string join(const std::vector<std::size_t> &v) {
  std::string s;
  for (auto x : v)
    s += (s.empty() ? "" : ",") + std::to_string(x);
  return "(" + s + ")";
}

Outcome differential_identities() {
  Outcome o;
  for (const auto &f : {Q, F2, F3})
    for (const auto &a : default_catalogue(f)) {
      if (a.dim() > 8)
        continue;
      if (auto w = check_mixed_identities(a, 6))
        o.require(false, w->identity + " fails on " + a.name() + " over " + f.name() + " at n=" + std::to_string(w->n));
    }
  return o;
}

Outcome hh0_agreement() {
  Outcome o;
  for (const auto &f : {Q, F2, F3})
    for (const auto &a : default_catalogue(f)) {
      const auto h = hh_ranks(a, win(0)).total(0);
      const auto d = hh0_direct(a).rank;
      o.require(h == d, a.name() + " over " + f.name() + ": " + std::to_string(h) + " vs " + std::to_string(d));
    }
  return o;
}

Outcome hkr() {
  Outcome o;
  for (int v = 1; v <= 2; ++v) {
    const auto a = builtin("poly_truncated", {{"vars", std::to_string(v)}, {"max_weight", "5"}});
    // guard-safe weights only: the algebra is cut off at weight 5
    const auto t = hh_ranks(a, DegreeWindow{v + 2, 0, 5 - hochschild_guard_band});
    std::size_t compared = 0;
    for (const auto &e : t.entries) {
      if (!e.trusted)
        continue;
      ++compared;
      const auto ref = hkr_reference(v, e.n, *e.weight);
      o.require(e.rank == ref, "v=" + std::to_string(v) + " n=" + std::to_string(e.n) + " w=" +
                                   std::to_string(*e.weight) + ": " + std::to_string(e.rank) + " vs " +
                                   std::to_string(ref));
      if (e.n > v)
        o.require(e.rank == 0, "nonzero rank above the variable count");
    }
    o.require(compared > 0, "no guard-safe weights compared");
  }
  return o;
}

Outcome morita() {
  Outcome o;
  const auto point = builtin("point"), mat = builtin("mat"), dual = builtin("dual_numbers");
  o.require(totals(mat, 4) == totals(point, 4), "HH mat(2) " + join(totals(mat, 4)) + " vs point");
  for (const auto &[n, N] : {std::pair{4, 2}, std::pair{8, 3}}) {
    const auto hm = hp_ranks(mat, win(n), N), hp = hp_ranks(point, win(n), N);
    o.require(hm.conclusive && hp.conclusive, "HP inconclusive at n<=" + std::to_string(n));
    o.require(hm.even == hp.even && hm.odd == hp.odd, "HP mat(2) differs from point");
  }
  const auto m2 = matrix_algebra(dual, 2);
  o.require(totals(m2, 3) == totals(dual, 3), "HH Mat2(dual) " + join(totals(m2, 3)) + " vs " + join(totals(dual, 3)));
  return o;
}

Outcome fat_points() {
  Outcome o;
  for (const auto &a : {builtin("dual_numbers"), builtin("truncated_poly", {{"m", "3"}})}) {
    const auto h = hp_ranks(a, win(8), 3);
    o.require(h.conclusive && h.even == 1 && h.odd == 0,
              a.name() + ": (" + std::to_string(h.even) + "," + std::to_string(h.odd) + ")");
  }
  return o;
}

Outcome super_example() {
  Outcome o;
  const auto h = hp_ranks(builtin("clifford1"), win(8), 3);
  o.require(h.conclusive && h.even == 0 && h.odd == 1,
            "clifford1: (" + std::to_string(h.even) + "," + std::to_string(h.odd) + ")");
  return o;
}

Outcome rank_inequality() {
  Outcome o;
  std::size_t conclusive = 0;
  for (const auto &a : default_catalogue(Q)) {
    for (const auto &[n, N] : {std::pair{4, 2}, std::pair{6, 3}}) {
      const auto h = hp_ranks(a, win(n), N);
      if (!h.conclusive)
        continue;
      ++conclusive;
      const auto t = totals(a, n);
      const auto hh = std::accumulate(t.begin(), t.end(), std::size_t{0});
      o.require(h.even + h.odd <= hh, a.name() + " at n<=" + std::to_string(n));
    }
  }
  o.require(conclusive > 0, "no conclusive runs");
  if (o.pass)
    o.detail = std::to_string(conclusive) + " conclusive runs";
  return o;
}

Outcome chern_cycles() {
  Outcome o;
  auto check = [&](const AlgebraSpec &a, const SparseVec &p, const std::string &what) {
    const auto r = chern_idempotent(a, p, 3);
    o.require(r.certificate.cycle, what + " not a cycle");
    o.require(r.hh0_nonzero == (r.trace != 0), what + " HH0 class disagrees with the trace pairing");
  };
  const auto mat = builtin("mat");
  check(mat, diagonal_idempotents(2, mat)[0], "e11 in Mat2");
  check(builtin("k_times_k"), basis_vector(1), "(1,0) in k x k");
  const auto mat3 = builtin("mat", {{"m", "3"}});
  const auto ids = diagonal_idempotents(3, mat3);
  for (std::size_t i = 0; i < ids.size(); ++i)
    check(mat3, ids[i], "diagonal idempotent " + std::to_string(i) + " of mat(3)");
  return o;
}

Outcome charp_operations() {
  Outcome o;
  for (const auto &a : {builtin("mat", {}, F2), builtin("truncated_poly", {{"m", "3"}}, F3), builtin("a2_path", {}, F2)}) {
    const auto r = ppower_on_hh0(a);
    o.require(r.well_defined.pass, a.name() + " well-definedness: " + r.well_defined.witness);
    o.require(r.additive.pass, a.name() + " additivity: " + r.additive.witness);
  }
  for (const auto &a : {builtin("dual_numbers", {}, F2), builtin("mat", {}, F2)})
    for (Index i = 0; i < a.dim(); ++i)
      o.require(ppower_lift_p2(a, basis_vector(i)).certificate.cycle,
                a.name() + " lift of e" + std::to_string(i) + " is not a cycle");
  return o;
}

Outcome graded_pieces() {
  Outcome o;
  for (int dimV = 1; dimV <= 2; ++dimV)
    for (int n = 1; n <= 6; ++n)
      for (std::uint64_t p : {2u, 3u, 5u}) {
        const auto g = graded_piece_analysis(dimV, n, Field::prime(p));
        const bool coprime = std::gcd(static_cast<std::uint64_t>(n), p) == 1;
        o.require(g.acyclic() == coprime, "dimV=" + std::to_string(dimV) + " n=" + std::to_string(n) +
                                              " p=" + std::to_string(p) + (g.acyclic() ? " acyclic" : " not acyclic"));
      }
  const auto g = graded_piece_analysis(1, 2, F2);
  const auto [ker, coker] = rotation_complex_ranks(1, 1, F2);
  o.require(g.ker_rot_mod_norm == ker && g.ker_norm_mod_rot == coker, "(1,2,2) differs from 1-sigma on V");
  return o;
}

Outcome semiclassical() {
  Outcome o;
  const auto plane = ConstantSymplectic{1}.inverse(Q);
  Bivector so3(3, Q);
  so3.set(0, 1, PolyForm::coordinate(3, 2, Q));
  so3.set(1, 2, PolyForm::coordinate(3, 0, Q));
  so3.set(2, 0, PolyForm::coordinate(3, 1, Q));
  Bivector bad(4, Q);
  bad.set(0, 3, PolyForm::constant(4, Scalar(1), Q));
  bad.set(1, 2, PolyForm::coordinate(4, 0, Q));
  o.require(conjugation_check(plane, 6).pass, "conjugation fails for the plane");
  o.require(conjugation_check(so3, 4).pass, "conjugation fails for so(3)");
  o.require(!conjugation_check(bad, 2).pass, "conjugation passes for the non-Jacobi bivector");
  o.require(star_identity_check(ConstantSymplectic{1}, 6).weyl.pass, "star identity fails in 2 variables");
  o.require(star_identity_check(ConstantSymplectic{2}, 4).weyl.pass, "star identity fails in 4 variables");
  return o;
}

Outcome gluing() {
  Outcome o;
  const auto k = builtin("point");
  const auto path = glue(k, k, BimoduleSpec::unit_actions(k, k, 1));
  const auto split = glue(k, k, BimoduleSpec::zero(k, k));
  const std::vector<std::size_t> expected{2, 0, 0, 0, 0};
  o.require(validate(path).ok() && path.dim() == 3, "glue(k, k, k) is not a valid 3-dimensional algebra");
  o.require(totals(path, 4) == expected, "glue(k, k, k): " + join(totals(path, 4)));
  o.require(totals(split, 4) == expected, "glue(k, k, 0): " + join(totals(split, 4)));
  return o;
}

Outcome charp_comparison() {
  Outcome o;
  const auto c = char_p_compare(builtin("dual_numbers", {}, F2), win(8), 3);
  o.require(c.twisted_agree, "free ranks disagree between d + uB and d");
  for (const auto &s : c.off_frobenius)
    o.require(s.even + s.odd == 0, "free rank at weight " + std::to_string(*s.weight) + " off the Frobenius slots");
  return o;
}

std::string cli_text(const std::vector<std::string> &args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return std::to_string(code) + "\n" + out.str() + err.str();
}

Outcome determinism() {
  Outcome o;
  const std::vector<std::vector<std::string>> runs = {
      {"--no-cache", "hh", "--algebra", "quantum_plane", "--n-max", "3"},
      {"--no-cache", "hc", "--algebra", "dual_numbers", "--format", "csv"},
      {"--no-cache", "hp", "--algebra", "clifford1", "--format", "md"},
      {"--no-cache", "filtration", "--algebra", "truncated_poly"},
      {"--no-cache", "degeneration", "--algebra", "dual_numbers"},
      {"--no-cache", "charp-compare", "--algebra", "dual_numbers", "--field", "F2"},
      {"--no-cache", "chern", "--algebra", "mat", "--coefficients", "1,0,0,-1"},
      {"--no-cache", "ppower", "--algebra", "a2_path", "--field", "F2"},
      {"--no-cache", "graded-pieces", "--dim-v", "2", "--n", "4", "--field", "F2"},
      {"--no-cache", "poisson", "conjugation", "--bivector", "so3"},
      {"--no-cache", "poisson", "homology", "--bivector", "plane", "--format", "csv"},
      {"--no-cache", "glue", "--a", "point", "--b", "dual_numbers"},
      {"--no-cache", "catalogue", "--format", "md"}};
  for (const auto &r : runs)
    o.require(cli_text(r) == cli_text(r), "report differs between runs: " + r[1]);
  for (const auto &[id, f] : fixtures::main_values())
    o.require(f() == f(), "value differs between runs: " + id);
  return o;
}

Outcome oracle_completeness() {
  Outcome o;
  const auto registry = oracle::load_registry();
  const auto &main = fixtures::main_values();
  for (const auto &id : oracle::oracle_ids())
    o.require(oracle::find_fixture(id).has_value(), id + " not registered");
  for (const auto &f : registry) {
    const auto c = oracle::certify(f.id);
    o.require(!c.skipped, f.id + " skipped by the oracle: " + c.reason);
    o.require(c.skipped || c.value == f.value, f.id + ": oracle " + c.value + " vs registry " + f.value);
    auto it = main.find(f.id);
    o.require(it != main.end(), f.id + " has no main-path value");
    if (it != main.end())
      o.require(it->second() == f.value, f.id + ": main " + it->second() + " vs registry " + f.value);
  }
  if (o.pass)
    o.detail = std::to_string(registry.size()) + " fixtures certified";
  return o;
}

} // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"differential identities", differential_identities},
      {"HH0 agreement", hh0_agreement},
      {"HKR at desk scale", hkr},
      {"Morita invariance", morita},
      {"fat points HP", fat_points},
      {"super example HP", super_example},
      {"rank inequality", rank_inequality},
      {"Chern cycles", chern_cycles},
      {"char-p operations", charp_operations},
      {"graded pieces", graded_pieces},
      {"semiclassical identities", semiclassical},
      {"gluing additivity", gluing},
      {"char-p comparison", charp_comparison},
      {"determinism", determinism},
      {"oracle completeness", oracle_completeness},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception &e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += o.pass ? 0 : 1;
    std::printf("criterion %2zu: %s  %s (%.1fs)%s%s\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                secs, o.detail.empty() ? "" : ": ", o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures ? 1 : 0;
}
