#include "ncg/poisson.hpp"

#include <bit>
#include <functional>
#include <set>

#include "ncg/algebra_io.hpp"
#include "ncg/exactlin.hpp"

namespace ncg {
namespace {

int total(const Exponent &e) {
  int s = 0;
  for (int x : e)
    s += x;
  return s;
}

int below(std::uint32_t mask, int i) { return std::popcount(mask & ((std::uint32_t{1} << i) - 1)); }

void check_vars(int vars) {
  if (vars < 0 || vars > 31)
    throw ContractViolation("forms support 0..31 variables, got " + std::to_string(vars));
}

} // namespace

PolyForm::PolyForm(int vars, Field f) : vars_(vars), field_(std::move(f)) { check_vars(vars); }

PolyForm PolyForm::constant(int vars, const Scalar &c, const Field &f) {
  PolyForm p(vars, f);
  p.add_term({Exponent(static_cast<std::size_t>(vars), 0), 0}, c);
  return p;
}

PolyForm PolyForm::coordinate(int vars, int i, const Field &f) {
  if (i < 0 || i >= vars)
    throw ContractViolation("coordinate index out of range");
  Exponent e(static_cast<std::size_t>(vars), 0);
  e[static_cast<std::size_t>(i)] = 1;
  return monomial(std::move(e), 0, Scalar(1), f);
}

PolyForm PolyForm::monomial(Exponent e, std::uint32_t mask, const Scalar &c, const Field &f) {
  const int vars = static_cast<int>(e.size());
  PolyForm p(vars, f);
  if (vars < 32 && (mask >> vars) != 0)
    throw ContractViolation("dx index beyond the variable count");
  for (int x : e)
    if (x < 0)
      throw ContractViolation("negative exponent");
  p.add_term({std::move(e), mask}, c);
  return p;
}

int PolyForm::coefficient_degree() const {
  int d = -1;
  for (const auto &[k, v] : terms_)
    d = std::max(d, total(k.exp));
  return d;
}

bool PolyForm::is_function() const {
  for (const auto &[k, v] : terms_)
    if (k.mask != 0)
      return false;
  return true;
}

void PolyForm::add_term(const FormKey &k, const Scalar &c) {
  auto it = terms_.find(k);
  Scalar s = field_.normalize(it == terms_.end() ? c : it->second + c);
  if (s == 0) {
    if (it != terms_.end())
      terms_.erase(it);
  } else if (it == terms_.end()) {
    terms_.emplace(k, std::move(s));
  } else {
    it->second = std::move(s);
  }
}

PolyForm PolyForm::plus(const PolyForm &o, const Scalar &scale) const {
  if (o.vars_ != vars_)
    throw ContractViolation("forms on different variable sets");
  PolyForm r = *this;
  for (const auto &[k, v] : o.terms_)
    r.add_term(k, scale * v);
  return r;
}

PolyForm PolyForm::scaled(const Scalar &c) const {
  PolyForm r(vars_, field_);
  for (const auto &[k, v] : terms_)
    r.add_term(k, c * v);
  return r;
}

PolyForm PolyForm::wedge(const PolyForm &o) const {
  if (o.vars_ != vars_)
    throw ContractViolation("forms on different variable sets");
  PolyForm r(vars_, field_);
  for (const auto &[a, va] : terms_)
    for (const auto &[b, vb] : o.terms_) {
      if (a.mask & b.mask)
        continue;
      // moving each dx_t of b past the dx_s of a with s > t
      int swaps = 0;
      for (int t = 0; t < vars_; ++t)
        if (b.mask & (std::uint32_t{1} << t))
          swaps += std::popcount(a.mask >> (t + 1));
      Exponent e = a.exp;
      for (std::size_t i = 0; i < e.size(); ++i)
        e[i] += b.exp[i];
      r.add_term({std::move(e), a.mask | b.mask}, swaps % 2 ? Scalar(-(va * vb)) : Scalar(va * vb));
    }
  return r;
}

PolyForm PolyForm::part(int k) const {
  PolyForm r(vars_, field_);
  for (const auto &[key, v] : terms_)
    if (std::popcount(key.mask) == k)
      r.add_term(key, v);
  return r;
}

std::string PolyForm::to_text() const {
  if (terms_.empty())
    return "0";
  std::string s;
  for (const auto &[k, v] : terms_) {
    if (!s.empty())
      s += " + ";
    s += "(" + ncg::to_text(v) + ")";
    for (int i = 0; i < vars_; ++i) {
      const int x = k.exp[static_cast<std::size_t>(i)];
      if (x == 1)
        s += " x" + std::to_string(i + 1);
      else if (x > 1)
        s += " x" + std::to_string(i + 1) + "^" + std::to_string(x);
    }
    bool first = true;
    for (int i = 0; i < vars_; ++i)
      if (k.mask & (std::uint32_t{1} << i)) {
        s += (first ? " dx" : "^dx") + std::to_string(i + 1);
        first = false;
      }
  }
  return s;
}

void Bivector::set(int i, int j, const PolyForm &f) {
  if (i == j || i < 0 || j < 0 || i >= vars || j >= vars)
    throw ContractViolation("bivector component index out of range");
  if (!f.is_function() || f.vars() != vars)
    throw ContractViolation("bivector components must be functions on the same variables");
  if (i < j)
    components.insert_or_assign({i, j}, f);
  else
    components.insert_or_assign({j, i}, f.scaled(Scalar(-1)));
}

PolyForm Bivector::component(int i, int j) const {
  if (i == j)
    return PolyForm(vars, field);
  auto it = components.find({std::min(i, j), std::max(i, j)});
  if (it == components.end())
    return PolyForm(vars, field);
  return i < j ? it->second : it->second.scaled(Scalar(-1));
}

int Bivector::coefficient_degree() const {
  int d = -1;
  for (const auto &[k, c] : components)
    d = std::max(d, c.coefficient_degree());
  return d;
}

std::optional<int> Bivector::homogeneous_degree() const {
  std::optional<int> deg;
  for (const auto &[k, c] : components)
    for (const auto &[key, v] : c.terms()) {
      const int d = total(key.exp);
      if (deg && *deg != d)
        return std::nullopt;
      deg = d;
    }
  return deg.value_or(0);
}

Bivector ConstantSymplectic::inverse(const Field &f) const {
  Bivector a(vars(), f);
  for (int i = 0; i < pairs; ++i)
    a.set(2 * i, 2 * i + 1, PolyForm::constant(vars(), Scalar(1), f));
  return a;
}

PolyForm ConstantSymplectic::omega(const Field &f) const {
  PolyForm w(vars(), f);
  for (int i = 0; i < pairs; ++i)
    w.add_term({Exponent(static_cast<std::size_t>(vars()), 0), (std::uint32_t{3} << (2 * i))}, Scalar(1));
  return w;
}

ConstantSymplectic symplectic_from_bivector(const Bivector &a) {
  if (a.vars % 2 != 0 || a.vars == 0)
    throw Unsupported("the Hodge star needs an even, positive number of variables");
  const ConstantSymplectic w{a.vars / 2};
  const Bivector std_form = w.inverse(a.field);
  if (a.hbar != 1 || a.components != std_form.components)
    throw Unsupported("the Hodge star is only implemented for the standard constant symplectic structure");
  return w;
}

PolyForm partial(const PolyForm &f, int i) {
  PolyForm r(f.vars(), f.field());
  for (const auto &[k, v] : f.terms()) {
    const int x = k.exp[static_cast<std::size_t>(i)];
    if (x == 0)
      continue;
    FormKey t = k;
    t.exp[static_cast<std::size_t>(i)]--;
    r.add_term(t, v * x);
  }
  return r;
}

PolyForm exterior_d(const PolyForm &f) {
  PolyForm r(f.vars(), f.field());
  for (const auto &[k, v] : f.terms())
    for (int i = 0; i < f.vars(); ++i) {
      const int x = k.exp[static_cast<std::size_t>(i)];
      const std::uint32_t bit = std::uint32_t{1} << i;
      if (x == 0 || (k.mask & bit))
        continue;
      FormKey t{k.exp, k.mask | bit};
      t.exp[static_cast<std::size_t>(i)]--;
      const Scalar c = v * x;
      r.add_term(t, below(k.mask, i) % 2 ? Scalar(-c) : c);
    }
  return r;
}

PolyForm interior(const PolyForm &f, int i) {
  PolyForm r(f.vars(), f.field());
  const std::uint32_t bit = std::uint32_t{1} << i;
  for (const auto &[k, v] : f.terms()) {
    if (!(k.mask & bit))
      continue;
    r.add_term({k.exp, k.mask & ~bit}, below(k.mask, i) % 2 ? Scalar(-v) : v);
  }
  return r;
}

PolyForm iota(const Bivector &a, const PolyForm &f) {
  if (f.vars() != a.vars)
    throw ContractViolation("bivector and form on different variable sets");
  PolyForm r(f.vars(), f.field());
  for (const auto &[ij, c] : a.components)
    r = r.plus(c.wedge(interior(interior(f, ij.first), ij.second)), a.hbar);
  return r;
}

PolyForm lie_derivative(const Bivector &a, const PolyForm &f) {
  return iota(a, exterior_d(f)).plus(exterior_d(iota(a, f)), Scalar(-1));
}

PolyForm exp_iota(const Bivector &a, const PolyForm &f, const Scalar &s) {
  const Field &field = f.field();
  PolyForm sum = f, term = f;
  for (int k = 1; !term.is_zero(); ++k) {
    term = iota(a, term).scaled(field.div(s, Scalar(k)));
    sum = sum.plus(term);
  }
  return sum;
}

PolyForm poisson_bracket(const PolyForm &f, const PolyForm &g, const Bivector &a) {
  if (!f.is_function() || !g.is_function())
    throw ContractViolation("the Poisson bracket takes functions");
  PolyForm r(a.vars, a.field);
  for (const auto &[ij, c] : a.components) {
    const auto [i, j] = ij;
    PolyForm t = partial(f, i).wedge(partial(g, j)).plus(partial(f, j).wedge(partial(g, i)), Scalar(-1));
    r = r.plus(c.wedge(t), a.hbar);
  }
  return r;
}

namespace {

void each_exponent(int vars, int D, const std::function<void(const Exponent &)> &fn) {
  Exponent e(static_cast<std::size_t>(vars), 0);
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == vars) {
      fn(e);
      return;
    }
    for (int x = 0; x <= left; ++x) {
      e[static_cast<std::size_t>(pos)] = x;
      rec(pos + 1, left - x);
    }
    e[static_cast<std::size_t>(pos)] = 0;
  };
  rec(0, D);
}

} // namespace

std::vector<PolyForm> monomial_functions(int vars, int D, const Field &f) {
  std::vector<PolyForm> out;
  each_exponent(vars, D, [&](const Exponent &e) { out.push_back(PolyForm::monomial(e, 0, Scalar(1), f)); });
  return out;
}

std::vector<PolyForm> monomial_forms(int vars, int D, const Field &f) {
  check_vars(vars);
  std::vector<PolyForm> out;
  each_exponent(vars, D, [&](const Exponent &e) {
    for (std::uint32_t m = 0; m < (std::uint32_t{1} << vars); ++m)
      out.push_back(PolyForm::monomial(e, m, Scalar(1), f));
  });
  return out;
}

JacobiResult jacobi_check(const Bivector &a, int D) {
  auto jac = [&](const PolyForm &f, const PolyForm &g, const PolyForm &h) {
    return poisson_bracket(f, poisson_bracket(g, h, a), a)
        .plus(poisson_bracket(g, poisson_bracket(h, f, a), a))
        .plus(poisson_bracket(h, poisson_bracket(f, g, a), a));
  };
  JacobiResult r;
  auto scan = [&](const std::vector<PolyForm> &fs) {
    // the Jacobiator is alternating, so strictly increasing triples suffice
    for (std::size_t i = 0; i < fs.size(); ++i)
      for (std::size_t j = i + 1; j < fs.size(); ++j)
        for (std::size_t k = j + 1; k < fs.size(); ++k) {
          PolyForm v = jac(fs[i], fs[j], fs[k]);
          if (!v.is_zero()) {
            r.pass = false;
            r.witness = std::array<PolyForm, 3>{fs[i], fs[j], fs[k]};
            r.value = v;
            return;
          }
        }
  };
  std::vector<PolyForm> coords;
  for (int i = 0; i < a.vars; ++i)
    coords.push_back(PolyForm::coordinate(a.vars, i, a.field));
  scan(coords);
  if (!r.pass || D < 2)
    return r;
  std::vector<PolyForm> monos;
  for (auto &m : monomial_functions(a.vars, D, a.field))
    if (m.coefficient_degree() >= 1)
      monos.push_back(std::move(m));
  scan(monos);
  return r;
}

namespace {

IdentityCheck check_all(int vars, int D, const Field &f,
                        const std::function<std::pair<PolyForm, PolyForm>(const PolyForm &)> &sides) {
  IdentityCheck c;
  for (const auto &m : monomial_forms(vars, D, f)) {
    auto [lhs, rhs] = sides(m);
    c.checked++;
    if (!(lhs == rhs)) {
      c.pass = false;
      c.witness = FormWitness{m, lhs, rhs};
      return c;
    }
  }
  return c;
}

} // namespace

IdentityCheck conjugation_check(const Bivector &a, int D) {
  return check_all(a.vars, D, a.field, [&](const PolyForm &m) {
    PolyForm lhs = exp_iota(a, exterior_d(exp_iota(a, m, Scalar(-1))));
    PolyForm rhs = exterior_d(m).plus(lie_derivative(a, m));
    return std::pair{lhs, rhs};
  });
}

BrylinskiCheck brylinski_check(const Bivector &a, int D) {
  BrylinskiCheck b;
  const PolyForm zero(a.vars, a.field);
  b.anticommutes = check_all(a.vars, D, a.field, [&](const PolyForm &m) {
    return std::pair{lie_derivative(a, exterior_d(m)).plus(exterior_d(lie_derivative(a, m))), zero};
  });
  b.squares_zero = check_all(a.vars, D, a.field, [&](const PolyForm &m) {
    return std::pair{lie_derivative(a, lie_derivative(a, m)), zero};
  });
  return b;
}

PolyForm hodge_star(const PolyForm &f, const ConstantSymplectic &w) {
  if (f.vars() != w.vars())
    throw ContractViolation("form and symplectic structure on different variable sets");
  PolyForm r(f.vars(), f.field());
  for (const auto &[k, v] : f.terms()) {
    std::uint32_t mask = k.mask;
    bool negate = false;
    for (int i = 0; i < w.pairs; ++i) {
      const std::uint32_t pair = std::uint32_t{3} << (2 * i);
      const std::uint32_t sub = mask & pair;
      if (sub == 0) {
        mask |= pair;
      } else if (sub == pair) {
        mask &= ~pair;
        negate = !negate;
      }
    }
    r.add_term({k.exp, mask}, negate ? Scalar(-v) : v);
  }
  return r;
}

StarCheck star_identity_check(const ConstantSymplectic &w, int D, const Field &f) {
  const Bivector a = w.inverse(f);
  const PolyForm omega = w.omega(f);
  auto exp_omega = [&](const PolyForm &m) {
    PolyForm sum = m, term = m;
    for (int k = 1; !term.is_zero(); ++k) {
      term = omega.wedge(term).scaled(f.inv(Scalar(k)));
      sum = sum.plus(term);
    }
    return sum;
  };
  StarCheck s;
  s.weyl = check_all(w.vars(), D, f, [&](const PolyForm &m) {
    return std::pair{exp_omega(m), exp_iota(a, hodge_star(exp_iota(a, m), w))};
  });
  s.literal = check_all(w.vars(), D, f, [&](const PolyForm &m) {
    return std::pair{exp_omega(m), exp_iota(a, hodge_star(exp_iota(a, m, Scalar(-1)), w))};
  });
  return s;
}

namespace {

struct PieceBasis {
  std::vector<FormKey> keys;
  std::map<FormKey, Index> index;
};

// monomials x^e dx_S with 2|e| + a|S| = g, |S| of the given parity, |e| <= cap
PieceBasis piece_basis(int vars, int a, int g, int parity, int cap) {
  PieceBasis b;
  for (std::uint32_t m = 0; m < (std::uint32_t{1} << vars); ++m) {
    const int k = std::popcount(m);
    if (k % 2 != parity)
      continue;
    const int rem = g - a * k;
    if (rem < 0 || rem % 2 != 0 || rem / 2 > cap)
      continue;
    const int p = rem / 2;
    each_exponent(vars, p, [&](const Exponent &e) {
      if (total(e) == p)
        b.keys.push_back({e, m});
    });
  }
  for (Index i = 0; i < b.keys.size(); ++i)
    b.index.emplace(b.keys[i], i);
  return b;
}

// largest |e| in the untruncated piece, -1 if empty
int piece_top(int vars, int a, int g, int parity) {
  int top = -1;
  for (int k = parity; k <= vars; k += 2) {
    const int rem = g - a * k;
    if (rem >= 0 && rem % 2 == 0)
      top = std::max(top, rem / 2);
  }
  return top;
}

} // namespace

PoissonHomology poisson_homology_ranks(const Bivector &alpha, int D) {
  if (D < 0)
    throw ContractViolation("degree bound must be >= 0");
  const auto deg = alpha.homogeneous_degree();
  if (!deg)
    throw Unsupported("poisson_homology_ranks needs a bivector with homogeneous coefficients");
  if (!jacobi_check(alpha, 1).pass)
    throw ContractViolation("bivector fails the Jacobi identity; L_alpha is not a differential");
  const int a = *deg, vars = alpha.vars;
  const int shift = a - 2; // D maps grade g to g + shift
  PoissonHomology h;
  h.alpha_degree = a;
  h.guard = std::max(2, a);
  h.D = D;
  const Field &f = alpha.field;
  std::map<std::pair<int, int>, PieceBasis> bases;
  auto basis = [&](int g, int parity) -> const PieceBasis & {
    auto it = bases.find({g, parity});
    if (it == bases.end())
      it = bases.emplace(std::pair{g, parity}, piece_basis(vars, a, g, parity, D)).first;
    return it->second;
  };
  std::map<std::pair<int, int>, std::size_t> out_rank;
  auto rank_out = [&](int g, int parity) {
    auto it = out_rank.find({g, parity});
    if (it != out_rank.end())
      return it->second;
    const PieceBasis &src = basis(g, parity);
    const PieceBasis &dst = basis(g + shift, 1 - parity);
    std::vector<Triplet> ts;
    for (Index c = 0; c < src.keys.size(); ++c) {
      const PolyForm m = PolyForm::monomial(src.keys[c].exp, src.keys[c].mask, Scalar(1), f);
      const PolyForm img = exterior_d(m).plus(lie_derivative(alpha, m));
      for (const auto &[k, v] : img.terms()) {
        auto r = dst.index.find(k);
        if (r != dst.index.end()) // terms beyond the cutoff are dropped
          ts.push_back({r->second, c, v});
      }
    }
    const std::size_t rk =
        rank(SparseMatrix::from_triplets(dst.keys.size(), src.keys.size(), f, ts));
    out_rank.emplace(std::pair{g, parity}, rk);
    return rk;
  };
  const int g_max = 2 * D + std::max(a, 0) * vars;
  const int safe = D - h.guard;
  for (int g = 0; g <= g_max; ++g) {
    PoissonPiece piece{g, 0, 0, true};
    bool any = false;
    for (int parity : {0, 1}) {
      const std::size_t dim = basis(g, parity).keys.size();
      if (dim == 0)
        continue;
      any = true;
      const std::size_t hom = dim - rank_out(g, parity) - rank_out(g - shift, 1 - parity);
      (parity == 0 ? piece.even : piece.odd) = hom;
      for (int gg : {g - shift, g, g + shift})
        for (int pp : {0, 1})
          if (piece_top(vars, a, gg, pp) > safe)
            piece.stable = false;
    }
    if (!any)
      continue;
    if (piece.stable) {
      h.even += piece.even;
      h.odd += piece.odd;
    }
    h.pieces.push_back(piece);
  }
  return h;
}

namespace {

Exponent exponent_from_json(const nlohmann::json &j, int vars, const std::string &where) {
  if (!j.is_array() || static_cast<int>(j.size()) != vars)
    throw StructuralError(where + ": exponent must be an array of length " + std::to_string(vars));
  Exponent e;
  for (const auto &x : j) {
    if (!x.is_number_integer() || x.get<long long>() < 0)
      throw StructuralError(where + ": exponents must be non-negative integers");
    e.push_back(x.get<int>());
  }
  return e;
}

PolyForm terms_from_json(const nlohmann::json &terms, int vars, const Field &f, bool allow_dx,
                         const std::string &where) {
  if (!terms.is_array())
    throw StructuralError(where + ": terms must be an array");
  PolyForm p(vars, f);
  for (const auto &t : terms) {
    if (allow_dx)
      check_keys(t, {"exp", "dx", "coeff"}, {"exp", "coeff"}, where + " term");
    else
      check_keys(t, {"exp", "coeff"}, {"exp", "coeff"}, where + " term");
    std::uint32_t mask = 0;
    if (t.contains("dx")) {
      if (!t["dx"].is_array())
        throw StructuralError(where + ": dx must be an array of indices");
      int prev = -1;
      for (const auto &x : t["dx"]) {
        if (!x.is_number_integer() || x.get<int>() <= prev || x.get<int>() >= vars)
          throw StructuralError(where + ": dx indices must be strictly increasing and < vars");
        prev = x.get<int>();
        mask |= std::uint32_t{1} << prev;
      }
    }
    p.add_term({exponent_from_json(t["exp"], vars, where), mask}, f.normalize(scalar_from_json(t["coeff"], where)));
  }
  return p;
}

nlohmann::json terms_to_json(const PolyForm &p, bool with_dx) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto &[k, v] : p.terms()) {
    nlohmann::json t{{"exp", k.exp}, {"coeff", to_text(v)}};
    if (with_dx) {
      std::vector<int> dx;
      for (int i = 0; i < p.vars(); ++i)
        if (k.mask & (std::uint32_t{1} << i))
          dx.push_back(i);
      t["dx"] = dx;
    }
    out.push_back(t);
  }
  return out;
}

int vars_from_json(const nlohmann::json &j, const std::string &where) {
  if (!j.contains("vars") || !j["vars"].is_number_integer())
    throw StructuralError(where + ": vars must be an integer");
  const int v = j["vars"].get<int>();
  if (v < 0 || v > 31)
    throw StructuralError(where + ": vars must be in 0..31");
  return v;
}

} // namespace

Bivector bivector_from_json(const nlohmann::json &j) {
  check_keys(j, {"format", "field", "vars", "hbar", "components"}, {"format", "vars", "components"}, "bivector");
  if (j["format"] != "ncg-bivector/1")
    throw StructuralError("bivector: format must be \"ncg-bivector/1\"");
  const Field f = j.contains("field") ? Field::parse(j["field"].get<std::string>()) : Field::rationals();
  const int vars = vars_from_json(j, "bivector");
  Bivector a(vars, f);
  if (j.contains("hbar"))
    a.hbar = f.normalize(scalar_from_json(j["hbar"], "bivector hbar"));
  if (!j["components"].is_array())
    throw StructuralError("bivector: components must be an array");
  for (const auto &c : j["components"]) {
    check_keys(c, {"i", "j", "terms"}, {"i", "j", "terms"}, "bivector component");
    if (!c["i"].is_number_integer() || !c["j"].is_number_integer())
      throw StructuralError("bivector component: i and j must be integers");
    const int i = c["i"].get<int>(), jj = c["j"].get<int>();
    if (i < 0 || jj < 0 || i >= vars || jj >= vars || i == jj)
      throw StructuralError("bivector component: indices out of range");
    PolyForm p = terms_from_json(c["terms"], vars, f, false, "bivector component");
    a.set(i, jj, a.component(i, jj).plus(p));
  }
  return a;
}

nlohmann::json bivector_to_json(const Bivector &a) {
  nlohmann::json comps = nlohmann::json::array();
  for (const auto &[ij, c] : a.components)
    comps.push_back({{"i", ij.first}, {"j", ij.second}, {"terms", terms_to_json(c, false)}});
  return {{"format", "ncg-bivector/1"}, {"field", a.field.name()}, {"vars", a.vars},
          {"hbar", to_text(a.hbar)}, {"components", comps}};
}

PolyForm form_from_json(const nlohmann::json &j, const Field &f) {
  check_keys(j, {"vars", "terms"}, {"vars", "terms"}, "form");
  return terms_from_json(j["terms"], vars_from_json(j, "form"), f, true, "form");
}

nlohmann::json form_to_json(const PolyForm &f) { return {{"vars", f.vars()}, {"terms", terms_to_json(f, true)}}; }

} // namespace ncg
