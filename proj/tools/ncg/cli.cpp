#include "cli.hpp"

#include <CLI11.hpp>

#include "cache.hpp"
#include "commands.hpp"
#include "inputs.hpp"
#include "ncg/field.hpp"
#include "version.hpp"

namespace ncg::cli {

namespace {

struct Global {
  std::string format = "json";
  bool strict = false;
  std::string cache_dir;
  bool no_cache = false;
};

int execute(const Job &job, const Global &g, std::ostream &out, std::ostream &err) {
  const Format f = parse_format(g.format);
  const nlohmann::json key_material = {{"tool", "ncg"},          {"version", tool_version},
                                       {"command", job.command}, {"inputs", job.inputs},
                                       {"header", job.header},   {"format", static_cast<int>(f)},
                                       {"strict", g.strict}};
  const std::string key = sha256_hex(key_material.dump());
  std::optional<Cache> cache;
  if (!g.no_cache)
    if (auto dir = Cache::directory(g.cache_dir.empty() ? std::nullopt : std::optional(g.cache_dir)))
      cache.emplace(*dir, err);
  if (cache)
    if (auto hit = cache->load(key)) {
      out << hit->output;
      return hit->exit_code;
    }
  const Report r = job.compute();
  const std::string text = render(job.command, job.header, r, f);
  const int code = r.validation_failed ? 2 : (g.strict && r.inconclusive ? 3 : 0);
  if (cache)
    cache->store(key, {code, text});
  out << text;
  return code;
}

// Optional integers are read through an Option so "absent" stays distinguishable.
std::optional<int> maybe(const CLI::Option *o, int v) { return o->count() ? std::optional(v) : std::nullopt; }
std::optional<std::string> maybe(const CLI::Option *o, const std::string &v) {
  return o->count() ? std::optional(v) : std::nullopt;
}

struct AlgebraFlags {
  std::string ref;
  std::vector<std::string> params;
  std::string field;
  CLI::Option *field_opt = nullptr;

  void add(CLI::App *c, bool required = true) {
    auto *o = c->add_option("--algebra,-a", ref, "catalogue name or ncg-algebra/1 file");
    if (required)
      o->required();
    c->add_option("--param,-P", params, "catalogue parameter key=value (repeatable)");
    field_opt = c->add_option("--field,-f", field, "Q or F<p>");
  }
  AlgebraArgs args() const { return {ref, params, maybe(field_opt, field)}; }
};

struct WindowFlags {
  int n_max = 4, w_min = 0, w_max = 0, trunc = 3;
  CLI::Option *w_min_opt = nullptr, *w_max_opt = nullptr;

  void add(CLI::App *c, int default_n_max, bool cyclic) {
    n_max = default_n_max;
    c->add_option("--n-max,-n", n_max, "largest tensor length")->capture_default_str();
    w_min_opt = c->add_option("--w-min", w_min, "smallest internal weight");
    w_max_opt = c->add_option("--w-max", w_max, "largest internal weight");
    if (cyclic)
      c->add_option("--u-trunc,-N", trunc, "truncation order N of k[u]/u^N")->capture_default_str();
  }
  WindowArgs args() const { return {n_max, maybe(w_min_opt, w_min), maybe(w_max_opt, w_max), trunc}; }
};

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"ncg: exact Hochschild, cyclic and Poisson homology of small algebras", "ncg"};
  app.set_version_flag("--version", std::string(tool_version));
  app.require_subcommand(1);
  app.fallthrough();

  Global g;
  app.add_option("--format", g.format, "json, csv or md")->capture_default_str();
  app.add_flag("--strict", g.strict, "exit 3 on an inconclusive verdict");
  app.add_option("--cache-dir", g.cache_dir, "report cache directory (overrides NCG_CACHE_DIR)");
  app.add_flag("--no-cache", g.no_cache, "ignore the cache");

  std::function<Job()> build;

  auto algebra_command = [&](const std::string &name, const std::string &help, int n_max, bool cyclic,
                             Job (*make)(const AlgebraArgs &, const WindowArgs &)) {
    auto *c = app.add_subcommand(name, help);
    auto a = std::make_shared<AlgebraFlags>();
    auto w = std::make_shared<WindowFlags>();
    a->add(c);
    w->add(c, n_max, cyclic);
    c->callback([&build, a, w, make] { build = [a, w, make] { return make(a->args(), w->args()); }; });
  };

  {
    auto *c = app.add_subcommand("validate", "check an algebra's axioms");
    auto a = std::make_shared<AlgebraFlags>();
    a->add(c);
    c->callback([&build, a] { build = [a] { return validate_job(a->args()); }; });
  }
  algebra_command("hh", "Hochschild homology ranks", 4, false, hh_job);
  algebra_command("hc", "negative cyclic homology over k[u]/u^N", 8, true, hc_job);
  algebra_command("hp", "periodic cyclic homology ranks", 8, true, hp_job);
  algebra_command("filtration", "Hodge filtration on HP", 8, true, filtration_job);
  algebra_command("degeneration", "torsion inventory of the negative cyclic complex", 8, true, degeneration_job);
  algebra_command("charp-compare", "free ranks of d + uB against d over F_p", 8, true, charp_job);

  {
    auto *c = app.add_subcommand("chern", "Chern character of an idempotent");
    auto a = std::make_shared<AlgebraFlags>();
    a->add(c, false);
    auto file = std::make_shared<std::string>();
    auto coeffs = std::make_shared<std::string>();
    auto trunc = std::make_shared<int>(3);
    auto *fo = c->add_option("--idempotent,-i", *file, "ncg-idempotent/1 file");
    auto *co = c->add_option("--coefficients", *coeffs, "dense coefficient list, e.g. 0,1,0,0");
    fo->excludes(co);
    c->add_option("--u-trunc,-N", *trunc, "truncation order N")->capture_default_str();
    c->callback([&build, a, file, coeffs, trunc, fo, co] {
      build = [a, file, coeffs, trunc, fo, co] {
        return chern_job(maybe(fo, *file), a->args(), maybe(co, *coeffs), *trunc);
      };
    });
  }
  {
    auto *c = app.add_subcommand("ppower", "a -> a^p on HH0 and its u-lift at p = 2");
    auto a = std::make_shared<AlgebraFlags>();
    a->add(c);
    c->callback([&build, a] { build = [a] { return ppower_job(a->args()); }; });
  }
  {
    auto *c = app.add_subcommand("graded-pieces", "the (1 - sigma, norm) complex on V^n");
    auto dim_v = std::make_shared<int>(1);
    auto n = std::make_shared<int>(2);
    auto field = std::make_shared<std::string>();
    c->add_option("--dim-v", *dim_v, "dimension of V")->capture_default_str();
    c->add_option("--n", *n, "tensor power")->capture_default_str();
    auto *fo = c->add_option("--field,-f", *field, "Q or F<p>");
    c->callback([&build, dim_v, n, field, fo] {
      build = [dim_v, n, field, fo] { return graded_job(*dim_v, *n, maybe(fo, *field)); };
    });
  }
  {
    auto *p = app.add_subcommand("poisson", "semiclassical checks for a Poisson bivector");
    p->require_subcommand(1);
    p->fallthrough();
    struct Sub {
      const char *name;
      const char *help;
      int degree;
      std::vector<std::string> forms;
    };
    const std::vector<Sub> subs = {{"bracket", "Poisson bracket {f, g}", 0, {"--f", "--g"}},
                                   {"jacobi", "Jacobi identity on monomials", 3, {}},
                                   {"lie", "Lie derivative of a form", 0, {"--form"}},
                                   {"conjugation", "exp(iota) d exp(-iota) = d + L", 3, {}},
                                   {"star", "symplectic star identity", 4, {}},
                                   {"homology", "homology of d + L on polynomial forms", 6, {}}};
    for (const auto &s : subs) {
      auto *c = p->add_subcommand(s.name, s.help);
      c->fallthrough();
      auto args = std::make_shared<PoissonArgs>();
      args->degree = s.degree;
      args->forms.resize(s.forms.size());
      auto field = std::make_shared<std::string>();
      auto hbar = std::make_shared<std::string>();
      std::string names;
      for (const auto &b : bivector_names())
        names += (names.empty() ? "" : ", ") + b;
      c->add_option("--bivector,-b", args->bivector, "one of " + names + ", or an ncg-bivector/1 file")->required();
      auto *fo = c->add_option("--field", *field, "Q or F<p>");
      auto *ho = c->add_option("--hbar", *hbar, "scale of the bivector in every operator");
      if (s.degree > 0)
        c->add_option("--degree,-D", args->degree, "largest polynomial degree checked")->capture_default_str();
      for (std::size_t i = 0; i < s.forms.size(); ++i)
        c->add_option(s.forms[i], args->forms[i], "form such as x1^2*dx2 - 3/2*x2")->required();
      const std::string sub = s.name;
      c->callback([&build, args, field, hbar, fo, ho, sub] {
        build = [args, field, hbar, fo, ho, sub] {
          PoissonArgs a = *args;
          a.field = maybe(fo, *field);
          a.hbar = maybe(ho, *hbar);
          return poisson_job(sub, a);
        };
      });
    }
  }
  {
    auto *c = app.add_subcommand("glue", "upper-triangular gluing of two algebras along a bimodule");
    auto a = std::make_shared<AlgebraArgs>();
    auto b = std::make_shared<AlgebraArgs>();
    auto field = std::make_shared<std::string>();
    auto bimodule = std::make_shared<std::string>("zero");
    auto n_max = std::make_shared<int>(4);
    c->add_option("--a", a->ref, "right algebra A")->required();
    c->add_option("--b", b->ref, "left algebra B")->required();
    c->add_option("--param-a", a->params, "catalogue parameter of A");
    c->add_option("--param-b", b->params, "catalogue parameter of B");
    auto *fo = c->add_option("--field,-f", *field, "Q or F<p>");
    c->add_option("--bimodule", *bimodule, "zero, unit or an ncg-bimodule/1 file (B-A bimodule)")
        ->capture_default_str();
    c->add_option("--n-max,-n", *n_max, "largest tensor length for the rank comparison")->capture_default_str();
    c->callback([&build, a, b, field, bimodule, n_max, fo] {
      build = [a, b, field, bimodule, n_max, fo] {
        AlgebraArgs x = *a, y = *b;
        x.field = y.field = maybe(fo, *field);
        return glue_job(x, y, *bimodule, *n_max);
      };
    });
  }
  {
    auto *c = app.add_subcommand("catalogue", "list the built-in algebras");
    auto field = std::make_shared<std::string>();
    auto *fo = c->add_option("--field,-f", *field, "Q or F<p>");
    c->callback([&build, field, fo] { build = [field, fo] { return catalogue_job(maybe(fo, *field)); }; });
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    return execute(build(), g, out, err);
  } catch (const ContractViolation &e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const StructuralError &e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const Unsupported &e) {
    err << "unsupported: " << e.what() << "\n";
    return 1;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

} // namespace ncg::cli
