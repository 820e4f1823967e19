#include "commands.hpp"

#include <numeric>

#include "cache.hpp"
#include "inputs.hpp"
#include "ncg/algebra_io.hpp"
#include "ncg/cyclic.hpp"
#include "ncg/kchern.hpp"
#include "ncg/poisson.hpp"

namespace ncg::cli {

using nlohmann::json;

namespace {

json opt(const std::optional<int> &x) { return x ? json(*x) : json(nullptr); }

std::string yes(bool b) { return b ? "yes" : "no"; }

std::string weight_text(const std::optional<int> &w) { return w ? std::to_string(*w) : "all"; }

std::string word_text(const Word &w) {
  std::string s = "(" + std::to_string(w[0]);
  for (std::size_t i = 1; i < w.size(); ++i)
    s += (i == 1 ? "; " : ", ") + std::to_string(w[i]);
  return s + ")";
}

std::string half_text(int twice) {
  return twice % 2 == 0 ? std::to_string(twice / 2) : std::to_string(twice) + "/2";
}

AlgebraSpec resolve(const AlgebraArgs &a, bool require = true) {
  auto spec = load_algebra(a.ref, a.params, a.field);
  if (require)
    require_valid(spec);
  return spec;
}

json algebra_header(const AlgebraSpec &a) {
  return {{"name", a.name()},
          {"dim", a.dim()},
          {"graded", a.graded()},
          {"super", a.super()},
          {"sha256", sha256_hex(algebra_to_json(a).dump())}};
}

DegreeWindow window_of(const WindowArgs &w) { return DegreeWindow{w.n_max, w.w_min, w.w_max}; }

json window_json(const WindowArgs &w) { return {{"n_max", w.n_max}, {"w_min", opt(w.w_min)}, {"w_max", opt(w.w_max)}}; }

json guard_json(const AlgebraSpec &a, const WindowArgs &w, bool cyclic) {
  json g = {{"hochschild_guard_band", hochschild_guard_band},
            {"weight_cutoff", opt(a.weight_cutoff())},
            {"trusted_weight_max", a.weight_cutoff() ? json(*a.weight_cutoff() - hochschild_guard_band) : json(nullptr)}};
  if (cyclic) {
    g["cyclic_top_degree"] = w.n_max - 2 * w.truncation + 1;
    g["complete_weight_max"] = a.connected() ? json(w.n_max) : json(nullptr);
  }
  return g;
}

void check_cyclic_window(const WindowArgs &w) {
  if (w.truncation < 1)
    throw ContractViolation("--u-trunc must be at least 1");
  if (w.n_max < 2 * w.truncation)
    throw ContractViolation("window too small: --n-max " + std::to_string(w.n_max) + " with --u-trunc " +
                            std::to_string(w.truncation) + " needs --n-max >= " + std::to_string(2 * w.truncation));
}

Job algebra_job(const std::string &command, const AlgebraSpec &a, const WindowArgs &w, bool cyclic) {
  if (cyclic)
    check_cyclic_window(w);
  Job j;
  j.command = command;
  j.inputs = {{"algebra", algebra_to_json(a)}, {"window", window_json(w)}};
  j.header = {{"field", a.field().name()},
              {"algebra", algebra_header(a)},
              {"window", window_json(w)},
              {"truncation", cyclic ? json(w.truncation) : json(nullptr)},
              {"guard", guard_json(a, w, cyclic)}};
  if (cyclic)
    j.inputs["truncation"] = w.truncation;
  return j;
}

json module_json(const UModuleReport &m) {
  return {{"truncation", m.truncation},
          {"free_rank", m.free_rank},
          {"torsion_blocks", m.torsion_blocks},
          {"saturated", m.saturated_at_N},
          {"unstable_blocks", m.unstable_blocks}};
}

json cert_json(const PPowerCertificate &c) { return {{"pass", c.pass}, {"witness", c.witness}}; }

std::vector<std::string> hh0_text(const std::vector<Scalar> &v) {
  std::vector<std::string> out;
  for (const auto &x : v)
    out.push_back(to_text(x));
  return out;
}

Table chain_table(const std::string &title, const UChain &c) {
  Table t{title, {"u_power", "word", "coefficient"}, {}};
  for (std::size_t k = 0; k < c.terms.size(); ++k)
    for (const auto &[w, v] : c.terms[k])
      t.rows.push_back({std::to_string(k), word_text(w), to_text(v)});
  return t;
}

json certificate_json(const CycleCertificate &c) {
  json j = {{"cycle", c.cycle}};
  if (!c.cycle)
    j["first_defect"] = {{"u_power", c.power}, {"word", word_text(c.word)}, {"value", to_text(c.value)}};
  return j;
}

std::string violation_kind(Violation::Kind k) {
  switch (k) {
  case Violation::Kind::unit:
    return "unit";
  case Violation::Kind::associativity:
    return "associativity";
  case Violation::Kind::weight:
    return "weight";
  case Violation::Kind::parity:
    return "parity";
  case Violation::Kind::field:
    return "field";
  case Violation::Kind::shape:
    return "shape";
  case Violation::Kind::module:
    return "module";
  case Violation::Kind::commute:
    return "commute";
  }
  return "unknown";
}

} // namespace

Job validate_job(const AlgebraArgs &args) {
  const auto a = resolve(args, false);
  Job j;
  j.command = "validate";
  j.inputs = {{"algebra", algebra_to_json(a)}};
  j.header = {{"field", a.field().name()}, {"algebra", algebra_header(a)}, {"window", nullptr}, {"truncation", nullptr},
              {"guard", nullptr}};
  j.compute = [a] {
    Report r;
    const auto v = validate(a);
    Table t{"violations", {"kind", "i", "j", "k", "message"}, {}};
    json list = json::array();
    for (const auto &x : v.violations) {
      t.rows.push_back({violation_kind(x.kind), std::to_string(x.i), std::to_string(x.j), std::to_string(x.k),
                        x.message});
      list.push_back({{"kind", violation_kind(x.kind)}, {"triple", {x.i, x.j, x.k}}, {"message", x.message}});
    }
    r.result = {{"ok", v.ok()}, {"violations", list}};
    r.tables.push_back(std::move(t));
    r.verdict = v.ok() ? "valid" : "invalid";
    r.validation_failed = !v.ok();
    return r;
  };
  return j;
}

Job hh_job(const AlgebraArgs &args, const WindowArgs &w) {
  const auto a = resolve(args);
  Job j = algebra_job("hh", a, w, false);
  j.compute = [a, w] {
    Report r;
    const auto t = hh_ranks(a, window_of(w));
    Table tab{"Hochschild homology ranks", {"n", "weight", "rank", "trusted"}, {}};
    std::size_t untrusted = 0;
    for (const auto &e : t.entries) {
      tab.rows.push_back({std::to_string(e.n), weight_text(e.weight), std::to_string(e.rank), yes(e.trusted)});
      untrusted += e.trusted ? 0 : 1;
    }
    json totals = json::array();
    for (int n = 0; n <= w.n_max; ++n)
      totals.push_back(t.total(n));
    r.result = {{"totals", totals}, {"untrusted_entries", untrusted}};
    if (untrusted)
      r.diagnostics.push_back(std::to_string(untrusted) + " entries lie in the weight guard band and are not trusted");
    r.tables.push_back(std::move(tab));
    return r;
  };
  return j;
}

Job hc_job(const AlgebraArgs &args, const WindowArgs &w) {
  const auto a = resolve(args);
  Job j = algebra_job("hc", a, w, true);
  j.compute = [a, w] {
    Report r;
    const auto nc = negative_cyclic(a, window_of(w), w.truncation);
    Table t{"k[u]/u^N summands", {"weight", "parity", "complete", "start_degree", "length", "stable"}, {}};
    std::size_t unstable = 0;
    for (const auto &p : nc.pieces)
      for (const auto &iv : p.report.intervals) {
        t.rows.push_back({weight_text(p.weight), std::to_string(p.parity), yes(p.complete), std::to_string(iv.start),
                          std::to_string(iv.length), yes(iv.stable)});
        unstable += iv.stable ? 0 : 1;
      }
    r.result = {{"even", module_json(nc.even)}, {"odd", module_json(nc.odd)}};
    if (unstable)
      r.diagnostics.push_back(std::to_string(unstable) +
                              " summands touch the top of the window and are excluded from the totals");
    r.tables.push_back(std::move(t));
    return r;
  };
  return j;
}

namespace {

void hp_into(Report &r, const HPResult &hp) {
  r.result["even"] = hp.even;
  r.result["odd"] = hp.odd;
  r.result["conclusive"] = hp.conclusive;
  r.result["free_at_N"] = {{"even", hp.at_N.even.free_rank}, {"odd", hp.at_N.odd.free_rank}};
  r.result["free_at_N_minus_1"] = {{"even", hp.at_N_minus_1.even.free_rank},
                                   {"odd", hp.at_N_minus_1.odd.free_rank}};
  r.result["saturated"] = hp.at_N.even.saturated_at_N && hp.at_N.odd.saturated_at_N;
  r.diagnostics.insert(r.diagnostics.end(), hp.diagnostics.begin(), hp.diagnostics.end());
  r.verdict = hp.conclusive ? "conclusive" : "inconclusive";
  r.inconclusive = !hp.conclusive;
}

} // namespace

Job hp_job(const AlgebraArgs &args, const WindowArgs &w) {
  const auto a = resolve(args);
  if (w.truncation < 2)
    throw ContractViolation("hp compares truncations N and N-1, so --u-trunc must be at least 2");
  Job j = algebra_job("hp", a, w, true);
  j.compute = [a, w] {
    Report r;
    hp_into(r, hp_ranks(a, window_of(w), w.truncation));
    Table t{"periodic cyclic homology", {"parity", "rank"}, {}};
    t.rows.push_back({"even", r.result["even"].dump()});
    t.rows.push_back({"odd", r.result["odd"].dump()});
    r.tables.push_back(std::move(t));
    return r;
  };
  return j;
}

Job filtration_job(const AlgebraArgs &args, const WindowArgs &w) {
  const auto a = resolve(args);
  if (w.truncation < 2)
    throw ContractViolation("filtration needs a conclusive HP, so --u-trunc must be at least 2");
  Job j = algebra_job("filtration", a, w, true);
  j.compute = [a, w] {
    Report r;
    const auto hp = hp_ranks(a, window_of(w), w.truncation);
    hp_into(r, hp);
    if (!hp.conclusive) {
      r.diagnostics.push_back("filtration not computed: HP is inconclusive in this window");
      return r;
    }
    Table t{"Hodge filtration", {"index", "even", "odd", "trusted"}, {}};
    for (const auto &e : hodge_filtration(hp))
      t.rows.push_back({half_text(e.twice_index), std::to_string(e.even), std::to_string(e.odd), yes(e.trusted)});
    r.tables.push_back(std::move(t));
    return r;
  };
  return j;
}

Job degeneration_job(const AlgebraArgs &args, const WindowArgs &w) {
  const auto a = resolve(args);
  Job j = algebra_job("degeneration", a, w, true);
  j.compute = [a, w] {
    Report r;
    const auto d = degeneration_check(a, window_of(w), w.truncation);
    Table t{"stable torsion", {"weight", "parity", "start_degree", "length"}, {}};
    for (const auto &b : d.inventory)
      t.rows.push_back(
          {weight_text(b.weight), std::to_string(b.internal_parity), std::to_string(b.start), std::to_string(b.length)});
    r.result = {{"verdict", to_string(d.verdict)}, {"stable_torsion", d.inventory.size()}, {"unstable", d.unstable}};
    if (d.unstable)
      r.diagnostics.push_back(std::to_string(d.unstable) + " summands at the window edge were not classified");
    r.verdict = to_string(d.verdict);
    r.inconclusive = d.verdict == Verdict::inconclusive;
    r.tables.push_back(std::move(t));
    return r;
  };
  return j;
}

Job charp_job(const AlgebraArgs &args, const WindowArgs &w) {
  const auto a = resolve(args);
  if (!a.field().is_prime())
    throw Unsupported("charp-compare needs a prime field (--field F2, F3, ...)");
  Job j = algebra_job("charp-compare", a, w, true);
  j.compute = [a, w] {
    Report r;
    const auto c = char_p_compare(a, window_of(w), w.truncation);
    auto slots = [](const std::string &title, const std::vector<SlotComparison> &v) {
      Table t{title,
              {"weight_boundary", "weight_mixed", "boundary_even", "boundary_odd", "mixed_even", "mixed_odd", "agree"},
              {}};
      for (const auto &s : v)
        t.rows.push_back({weight_text(s.weight_boundary), weight_text(s.weight_mixed),
                          std::to_string(s.boundary_only.even), std::to_string(s.boundary_only.odd),
                          std::to_string(s.mixed.even), std::to_string(s.mixed.odd), yes(s.agree)});
      return t;
    };
    Table off{"mixed slots off the Frobenius weights", {"weight", "even", "odd"}, {}};
    std::size_t off_free = 0;
    for (const auto &s : c.off_frobenius) {
      off.rows.push_back({weight_text(s.weight), std::to_string(s.even), std::to_string(s.odd)});
      off_free += s.even + s.odd;
    }
    r.result = {{"p", c.p},
                {"twisted_agree", c.twisted_agree},
                {"untwisted_agree", c.untwisted_agree},
                {"off_frobenius_free", off_free}};
    r.verdict = c.twisted_agree && off_free == 0 ? "agree" : "disagree";
    r.diagnostics.push_back("twisted pairing: weight w of the boundary complex against weight p*w of the mixed complex");
    r.tables.push_back(slots("twisted comparison", c.twisted));
    r.tables.push_back(slots("untwisted comparison", c.untwisted));
    r.tables.push_back(std::move(off));
    return r;
  };
  return j;
}

Job chern_job(const std::optional<std::string> &file, const AlgebraArgs &args,
              const std::optional<std::string> &coefficients, int truncation) {
  std::optional<IdempotentInput> in;
  if (file) {
    in = load_idempotent(*file);
    require_valid(in->algebra);
  } else {
    if (!coefficients)
      throw StructuralError("chern needs --idempotent FILE or --algebra with --coefficients");
    auto a = resolve(args);
    auto v = parse_coefficients(*coefficients, a);
    in = IdempotentInput{std::move(a), std::move(v)};
  }
  const auto a = in->algebra;
  const auto p = in->element;
  std::vector<std::string> coeffs;
  for (Index i = 0; i < a.dim(); ++i)
    coeffs.push_back(to_text(p.at(i)));
  Job j;
  j.command = "chern";
  j.inputs = {{"algebra", algebra_to_json(a)}, {"idempotent", coeffs}, {"truncation", truncation}};
  j.header = {{"field", a.field().name()}, {"algebra", algebra_header(a)}, {"window", nullptr},
              {"truncation", truncation}, {"guard", nullptr}, {"idempotent", coeffs}};
  j.compute = [a, p, truncation] {
    Report r;
    const auto c = chern_idempotent(a, p, truncation);
    r.result = {{"certificate", certificate_json(c.certificate)},
                {"hh0_class", hh0_text(c.hh0_class)},
                {"hh0_nonzero", c.hh0_nonzero},
                {"trace", to_text(c.trace)}};
    r.verdict = c.certificate.cycle ? "cycle" : "not-a-cycle";
    r.tables.push_back(chain_table("Chern character chain", c.chain));
    return r;
  };
  return j;
}

Job ppower_job(const AlgebraArgs &args) {
  const auto a = resolve(args);
  if (!a.field().is_prime())
    throw Unsupported("ppower needs a prime field (--field F2, F3, ...)");
  Job j;
  j.command = "ppower";
  j.inputs = {{"algebra", algebra_to_json(a)}};
  j.header = {{"field", a.field().name()}, {"algebra", algebra_header(a)}, {"window", nullptr},
              {"truncation", a.field().characteristic() == 2 ? json(2) : json(nullptr)}, {"guard", nullptr}};
  j.compute = [a] {
    Report r;
    const auto pp = ppower_on_hh0(a);
    Table m{"p-power map on HH0 (column c is the image of representative c)", {"row"}, {}};
    for (auto rep : pp.representatives)
      m.columns.push_back("e" + std::to_string(rep));
    for (std::size_t row = 0; row < pp.matrix.size(); ++row) {
      std::vector<std::string> cells{"e" + std::to_string(pp.representatives[row])};
      for (const auto &x : pp.matrix[row])
        cells.push_back(to_text(x));
      m.rows.push_back(std::move(cells));
    }
    r.result = {{"p", pp.p},
                {"hh0_rank", pp.representatives.size()},
                {"well_defined", cert_json(pp.well_defined)},
                {"additive", cert_json(pp.additive)},
                {"semilinear", cert_json(pp.semilinear)},
                {"composition", cert_json(pp.composition)}};
    r.tables.push_back(std::move(m));
    const bool pass = pp.well_defined.pass && pp.additive.pass && pp.semilinear.pass && pp.composition.pass;
    if (pp.p == 2) {
      Table lifts{"lifts a^2 + (1; a, a) u of basis elements", {"element", "cycle", "chain"}, {}};
      bool all = true;
      for (Index i = 0; i < a.dim(); ++i) {
        const auto l = ppower_lift_p2(a, basis_vector(i));
        std::string text;
        for (std::size_t k = 0; k < l.chain.terms.size(); ++k)
          for (const auto &[w, v] : l.chain.terms[k])
            text += (text.empty() ? "" : " + ") + to_text(v) + "*" + word_text(w) + (k ? "*u" : "");
        lifts.rows.push_back({"e" + std::to_string(i), yes(l.certificate.cycle), text.empty() ? "0" : text});
        all = all && l.certificate.cycle;
      }
      r.result["lifts_are_cycles"] = all;
      r.tables.push_back(std::move(lifts));
      r.verdict = pass && all ? "certified" : "failed";
    } else {
      r.diagnostics.push_back("the u-lift is only implemented for p = 2");
      r.verdict = pass ? "certified" : "failed";
    }
    return r;
  };
  return j;
}

Job graded_job(int dim_v, int n, const std::optional<std::string> &field) {
  const Field f = field ? Field::parse(*field) : Field::rationals();
  if (dim_v < 1 || n < 1)
    throw ContractViolation("graded-pieces needs --dim-v >= 1 and --n >= 1");
  Job j;
  j.command = "graded-pieces";
  j.inputs = {{"dim_v", dim_v}, {"n", n}, {"field", f.name()}};
  j.header = {{"field", f.name()}, {"window", {{"dim_v", dim_v}, {"n", n}}}, {"truncation", nullptr}, {"guard", nullptr}};
  j.compute = [dim_v, n, f] {
    Report r;
    const auto g = graded_piece_analysis(dim_v, n, f);
    const auto p = f.characteristic();
    const auto gcd = std::gcd(static_cast<std::uint64_t>(n), p);
    r.result = {{"ker_rot_mod_norm", g.ker_rot_mod_norm},
                {"ker_norm_mod_rot", g.ker_norm_mod_rot},
                {"acyclic", g.acyclic()},
                {"composites_vanish", g.composites_vanish},
                {"gcd_n_p", gcd}};
    Table t{"2-periodic complex on V^n", {"homology", "rank"}, {}};
    t.rows.push_back({"ker(1-sigma)/im(norm)", std::to_string(g.ker_rot_mod_norm)});
    t.rows.push_back({"ker(norm)/im(1-sigma)", std::to_string(g.ker_norm_mod_rot)});
    if (p > 0 && n % static_cast<int>(p) == 0) {
      const int k = n / static_cast<int>(p);
      const auto [ker, coker] = rotation_complex_ranks(dim_v, k, f);
      r.result["rotation_complex"] = {{"k", k}, {"kernel", ker}, {"cokernel", coker}};
      t.rows.push_back({"ker(1-sigma) on V^" + std::to_string(k), std::to_string(ker)});
      t.rows.push_back({"coker(1-sigma) on V^" + std::to_string(k), std::to_string(coker)});
    }
    r.verdict = g.acyclic() ? "acyclic" : "not-acyclic";
    r.tables.push_back(std::move(t));
    return r;
  };
  return j;
}

namespace {

json identity_json(const IdentityCheck &c) {
  json j = {{"pass", c.pass}, {"checked", c.checked}};
  if (c.witness)
    j["witness"] = {{"input", text_of(c.witness->input)},
                    {"lhs", text_of(c.witness->lhs)},
                    {"rhs", text_of(c.witness->rhs)}};
  return j;
}

} // namespace

Job poisson_job(const std::string &sub, const PoissonArgs &args) {
  auto a = load_bivector(args.bivector, args.field);
  if (args.hbar)
    a.hbar = parse_scalar(*args.hbar);
  std::vector<PolyForm> forms;
  for (const auto &f : args.forms)
    forms.push_back(parse_form(f, a.vars, a.field));
  if (args.degree < 0)
    throw ContractViolation("--degree must be non-negative");
  const int D = args.degree;
  Job j;
  j.command = "poisson " + sub;
  const json biv = bivector_to_json(a);
  j.inputs = {{"bivector", biv}, {"degree", D}, {"forms", args.forms}};
  j.header = {{"field", a.field.name()},
              {"bivector", {{"vars", a.vars}, {"hbar", to_text(a.hbar)}, {"sha256", sha256_hex(biv.dump())}}},
              {"window", {{"degree", D}}},
              {"truncation", nullptr},
              {"guard", nullptr}};
  if (sub == "bracket") {
    if (forms.size() != 2 || !forms[0].is_function() || !forms[1].is_function())
      throw StructuralError("poisson bracket needs two functions --f and --g");
    j.header["window"] = nullptr;
    j.compute = [a, forms] {
      Report r;
      const auto b = poisson_bracket(forms[0], forms[1], a);
      r.result = {{"bracket", text_of(b)}, {"form", form_to_json(b)}};
      return r;
    };
  } else if (sub == "lie") {
    if (forms.size() != 1)
      throw StructuralError("poisson lie needs --form");
    j.header["window"] = nullptr;
    j.compute = [a, forms] {
      Report r;
      const auto l = lie_derivative(a, forms[0]);
      r.result = {{"lie", text_of(l)},
                  {"iota", text_of(iota(a, forms[0]))},
                  {"d", text_of(exterior_d(forms[0]))},
                  {"form", form_to_json(l)}};
      return r;
    };
  } else if (sub == "jacobi") {
    j.compute = [a, D] {
      Report r;
      const auto c = jacobi_check(a, D);
      r.result = {{"pass", c.pass}};
      if (c.witness)
        r.result["witness"] = {{"f", text_of((*c.witness)[0])},
                               {"g", text_of((*c.witness)[1])},
                               {"h", text_of((*c.witness)[2])},
                               {"jacobiator", text_of(*c.value)}};
      r.verdict = c.pass ? "pass" : "fail";
      return r;
    };
  } else if (sub == "conjugation") {
    j.compute = [a, D] {
      Report r;
      const auto c = conjugation_check(a, D);
      const auto b = brylinski_check(a, D);
      r.result = {{"conjugation", identity_json(c)},
                  {"lie_anticommutes_with_d", identity_json(b.anticommutes)},
                  {"lie_squares_to_zero", identity_json(b.squares_zero)}};
      r.verdict = c.pass ? "pass" : "fail";
      return r;
    };
  } else if (sub == "star") {
    const auto w = symplectic_from_bivector(a);
    j.compute = [a, w, D] {
      Report r;
      const auto s = star_identity_check(w, D, a.field);
      r.result = {{"pairs", w.pairs}, {"weyl", identity_json(s.weyl)}, {"literal", identity_json(s.literal)}};
      r.diagnostics.push_back("checked form: exp(omega) = exp(iota) * exp(iota); the sign-reversed right factor is "
                              "reported under 'literal'");
      Table t{"star on constant forms", {"form", "star"}, {}};
      const Exponent zero(static_cast<std::size_t>(w.vars()), 0);
      for (std::uint32_t m = 0; m < (std::uint32_t{1} << w.vars()); ++m) {
        const auto f = PolyForm::monomial(zero, m, Scalar(1), a.field);
        t.rows.push_back({text_of(f), text_of(hodge_star(f, w))});
      }
      r.tables.push_back(std::move(t));
      r.verdict = s.weyl.pass ? "pass" : "fail";
      return r;
    };
  } else if (sub == "homology") {
    j.compute = [a, D] {
      Report r;
      const auto h = poisson_homology_ranks(a, D);
      Table t{"graded pieces", {"grade", "even", "odd", "stable"}, {}};
      std::size_t unstable = 0;
      for (const auto &p : h.pieces) {
        t.rows.push_back({std::to_string(p.grade), std::to_string(p.even), std::to_string(p.odd), yes(p.stable)});
        unstable += p.stable ? 0 : 1;
      }
      r.result = {{"even", h.even}, {"odd", h.odd}, {"alpha_degree", h.alpha_degree}, {"guard", h.guard}};
      if (unstable)
        r.diagnostics.push_back(std::to_string(unstable) + " pieces reach the degree cutoff and are not counted");
      r.tables.push_back(std::move(t));
      return r;
    };
  } else {
    throw StructuralError("unknown poisson command '" + sub + "'");
  }
  return j;
}

Job glue_job(const AlgebraArgs &aa, const AlgebraArgs &ba, const std::string &bimodule, int n_max) {
  const auto a = resolve(aa);
  const auto b = resolve(ba);
  if (!(a.field() == b.field()))
    throw StructuralError("glue: algebras over different fields (" + a.field().name() + ", " + b.field().name() + ")");
  BimoduleSpec m;
  json mj;
  if (bimodule == "zero") {
    m = BimoduleSpec::zero(b, a);
    mj = "zero";
  } else if (bimodule == "unit") {
    m = BimoduleSpec::unit_actions(b, a, 1);
    mj = "unit";
  } else {
    m = bimodule_from_json(read_json_file(bimodule), b, a);
    mj = bimodule_to_json(m);
  }
  const auto mv = validate(m);
  if (!mv.ok())
    throw ContractViolation("bimodule: " + mv.violations.front().message);
  const auto g = glue(a, b, m);
  Job j;
  j.command = "glue";
  j.inputs = {{"a", algebra_to_json(a)}, {"b", algebra_to_json(b)}, {"bimodule", mj}, {"n_max", n_max}};
  j.header = {{"field", a.field().name()},
              {"algebra", algebra_header(g)},
              {"window", {{"n_max", n_max}}},
              {"truncation", nullptr},
              {"guard", nullptr}};
  j.compute = [a, b, g, n_max] {
    Report r;
    const DegreeWindow w{n_max, {}, {}};
    const auto ha = hh_ranks(a, w), hb = hh_ranks(b, w), hg = hh_ranks(g, w);
    Table t{"Hochschild ranks", {"n", "A", "B", "glued", "A+B"}, {}};
    bool additive = true;
    for (int n = 0; n <= n_max; ++n) {
      t.rows.push_back({std::to_string(n), std::to_string(ha.total(n)), std::to_string(hb.total(n)),
                        std::to_string(hg.total(n)), std::to_string(ha.total(n) + hb.total(n))});
      additive = additive && hg.total(n) == ha.total(n) + hb.total(n);
    }
    r.result = {{"dim", g.dim()}, {"valid", validate(g).ok()}, {"direct_sum", additive}, {"algebra", algebra_to_json(g)}};
    r.tables.push_back(std::move(t));
    return r;
  };
  return j;
}

Job catalogue_job(const std::optional<std::string> &field) {
  const Field f = field ? Field::parse(*field) : Field::rationals();
  Job j;
  j.command = "catalogue";
  j.inputs = {{"field", f.name()}};
  j.header = {{"field", f.name()}, {"window", nullptr}, {"truncation", nullptr}, {"guard", nullptr}};
  j.compute = [f] {
    Report r;
    Table t{"catalogue", {"name", "parameters", "dim", "description"}, {}};
    for (const auto &e : catalogue()) {
      std::string dim = "-";
      try {
        dim = std::to_string(builtin(e.name, {}, f).dim());
      } catch (const std::exception &) {
        // not defined over this field
      }
      t.rows.push_back({e.name, e.parameters, dim, e.description});
    }
    r.result = {{"entries", catalogue().size()}};
    r.tables.push_back(std::move(t));
    return r;
  };
  return j;
}

} // namespace ncg::cli
