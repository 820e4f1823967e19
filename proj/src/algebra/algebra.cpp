#include "ncg/algebra.hpp"

#include <functional>

namespace ncg {

SparseVec basis_vector(Index i) { return SparseVec::unit(i); }

AlgebraSpec::AlgebraSpec(std::string name, Field field, std::size_t dim,
                         const std::vector<StructureTerm> &terms, std::optional<std::vector<int>> weights,
                         std::optional<std::vector<int>> parity)
    : name_(std::move(name)), field_(field), dim_(dim), weights_(std::move(weights)),
      parity_(std::move(parity)) {
  if (dim == 0)
    throw StructuralError("algebra '" + name_ + "' has dimension 0");
  if (dim > 65535)
    throw StructuralError("algebra dimension " + std::to_string(dim) + " is too large");
  if (weights_ && weights_->size() != dim)
    throw StructuralError("weight table has " + std::to_string(weights_->size()) + " entries, expected " +
                          std::to_string(dim));
  if (parity_ && parity_->size() != dim)
    throw StructuralError("parity table has " + std::to_string(parity_->size()) + " entries, expected " +
                          std::to_string(dim));
  if (parity_)
    for (int p : *parity_)
      if (p != 0 && p != 1)
        throw StructuralError("parities must be 0 or 1");
  std::vector<std::vector<Entry>> acc(dim * dim);
  for (const auto &t : terms) {
    if (t.i >= dim || t.j >= dim || t.k >= dim)
      throw StructuralError("structure constant (" + std::to_string(t.i) + ", " + std::to_string(t.j) + ", " +
                            std::to_string(t.k) + ") has an index outside dimension " + std::to_string(dim));
    if (!field_.contains(t.value))
      throw StructuralError("structure constant " + to_text(t.value) + " at (" + std::to_string(t.i) + ", " +
                            std::to_string(t.j) + ", " + std::to_string(t.k) + ") is not an element of " +
                            field_.name());
    acc[t.i * dim + t.j].push_back({t.k, t.value});
  }
  table_.reserve(dim * dim);
  for (auto &a : acc)
    table_.push_back(SparseVec::from_pairs(std::move(a), field_));
}

SparseVec AlgebraSpec::multiply(const SparseVec &a, const SparseVec &b) const {
  VecBuilder out(field_);
  for (const auto &x : a.entries())
    for (const auto &y : b.entries()) {
      const Scalar c = x.value * y.value;
      for (const auto &z : product(x.index, y.index).entries())
        out.add(z.index, c * z.value);
    }
  return out.finish();
}

SparseVec AlgebraSpec::power(const SparseVec &a, unsigned e) const {
  SparseVec r = basis_vector(unit_index);
  for (unsigned i = 0; i < e; ++i)
    r = multiply(r, a);
  return r;
}

std::vector<StructureTerm> AlgebraSpec::terms() const {
  std::vector<StructureTerm> out;
  for (Index i = 0; i < dim_; ++i)
    for (Index j = 0; j < dim_; ++j)
      for (const auto &e : product(i, j).entries())
        out.push_back({i, j, e.index, e.value});
  return out;
}

bool AlgebraSpec::connected() const {
  if (!weights_)
    return false;
  if ((*weights_)[0] != 0)
    return false;
  for (std::size_t i = 1; i < dim_; ++i)
    if ((*weights_)[i] <= 0)
      return false;
  return true;
}

AlgebraSpec AlgebraSpec::over(const Field &f) const {
  AlgebraSpec a(name_, f, dim_, terms(), weights_, parity_);
  a.cutoff_ = cutoff_;
  return a;
}

AlgebraSpec AlgebraSpec::renamed(std::string name) const {
  AlgebraSpec a = *this;
  a.name_ = std::move(name);
  return a;
}

bool operator==(const AlgebraSpec &a, const AlgebraSpec &b) {
  return a.field_ == b.field_ && a.dim_ == b.dim_ && a.table_ == b.table_ && a.weights_ == b.weights_ &&
         a.parity_ == b.parity_;
}

namespace {

std::string triple(Index i, Index j, Index k) {
  return "(" + std::to_string(i) + ", " + std::to_string(j) + ", " + std::to_string(k) + ")";
}

} // namespace

ValidationReport validate(const AlgebraSpec &a) {
  ValidationReport rep;
  const auto n = static_cast<Index>(a.dim());
  for (Index i = 0; i < n; ++i) {
    if (!(a.product(0, i) == basis_vector(i)))
      rep.violations.push_back({Violation::Kind::unit, 0, i, 0,
                                "basis element 0 is not a left unit: e_0 e_" + std::to_string(i) + " != e_" +
                                    std::to_string(i)});
    if (!(a.product(i, 0) == basis_vector(i)))
      rep.violations.push_back({Violation::Kind::unit, i, 0, 0,
                                "basis element 0 is not a right unit: e_" + std::to_string(i) + " e_0 != e_" +
                                    std::to_string(i)});
  }
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      for (Index k = 0; k < n; ++k) {
        SparseVec lhs = a.multiply(a.product(i, j), basis_vector(k));
        SparseVec rhs = a.multiply(basis_vector(i), a.product(j, k));
        if (!(lhs == rhs)) {
          rep.violations.push_back({Violation::Kind::associativity, i, j, k,
                                    "associativity fails at " + triple(i, j, k)});
          if (rep.violations.size() > 64)
            return rep;
        }
      }
  if (a.graded()) {
    if (a.weight(0) != 0)
      rep.violations.push_back({Violation::Kind::weight, 0, 0, 0, "the unit must have weight 0"});
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j)
        for (const auto &e : a.product(i, j).entries())
          if (a.weight(e.index) != a.weight(i) + a.weight(j))
            rep.violations.push_back({Violation::Kind::weight, i, j, e.index,
                                      "weight is not multiplicative at " + triple(i, j, e.index) + ": " +
                                          std::to_string(a.weight(i)) + " + " + std::to_string(a.weight(j)) +
                                          " != " + std::to_string(a.weight(e.index))});
  }
  if (a.super()) {
    if (a.parity(0) != 0)
      rep.violations.push_back({Violation::Kind::parity, 0, 0, 0, "the unit must be even"});
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j)
        for (const auto &e : a.product(i, j).entries())
          if (a.parity(e.index) != (a.parity(i) + a.parity(j)) % 2)
            rep.violations.push_back({Violation::Kind::parity, i, j, e.index,
                                      "parity is not additive at " + triple(i, j, e.index)});
  }
  return rep;
}

void require_valid(const AlgebraSpec &a) {
  auto rep = validate(a);
  if (!rep.ok())
    throw ContractViolation("algebra '" + a.name() + "' is invalid: " + rep.violations.front().message);
}

namespace {

std::vector<SparseVec> action_table(const std::vector<StructureTerm> &terms, std::size_t outer,
                                    std::size_t inner, std::size_t dim, const Field &f, const char *what) {
  std::vector<std::vector<Entry>> acc(outer * inner);
  for (const auto &t : terms) {
    if (t.i >= outer || t.j >= inner || t.k >= dim)
      throw StructuralError(std::string(what) + " term " + triple(t.i, t.j, t.k) + " is out of range");
    acc[t.i * inner + t.j].push_back({t.k, t.value});
  }
  std::vector<SparseVec> out;
  for (auto &a : acc)
    out.push_back(SparseVec::from_pairs(std::move(a), f));
  return out;
}

struct ModuleTables {
  std::vector<SparseVec> left;  // left[i * dim + x] = e_i . m_x
  std::vector<SparseVec> right; // right[x * dimA + j] = m_x . e_j
};

ModuleTables module_tables(const BimoduleSpec &m) {
  if (!m.left || !m.right)
    throw StructuralError("bimodule is missing its algebras");
  if (!(m.left->field() == m.right->field()))
    throw StructuralError("bimodule algebras live over different fields");
  const Field &f = m.left->field();
  return {action_table(m.left_action, m.left->dim(), m.dim, m.dim, f, "left action"),
          action_table(m.right_action, m.dim, m.right->dim(), m.dim, f, "right action")};
}

SparseVec act_left(const ModuleTables &t, const BimoduleSpec &m, const SparseVec &a, const SparseVec &v) {
  VecBuilder out(m.left->field());
  for (const auto &x : a.entries())
    for (const auto &y : v.entries())
      for (const auto &z : t.left[x.index * m.dim + y.index].entries())
        out.add(z.index, x.value * y.value * z.value);
  return out.finish();
}

SparseVec act_right(const ModuleTables &t, const BimoduleSpec &m, const SparseVec &v, const SparseVec &a) {
  VecBuilder out(m.left->field());
  for (const auto &y : v.entries())
    for (const auto &x : a.entries())
      for (const auto &z : t.right[y.index * m.right->dim() + x.index].entries())
        out.add(z.index, x.value * y.value * z.value);
  return out.finish();
}

} // namespace

BimoduleSpec BimoduleSpec::unit_actions(const AlgebraSpec &left, const AlgebraSpec &right, std::size_t dim) {
  BimoduleSpec m;
  m.left = &left;
  m.right = &right;
  m.dim = dim;
  for (Index x = 0; x < dim; ++x) {
    m.left_action.push_back({0, x, x, Scalar(1)});
    m.right_action.push_back({x, 0, x, Scalar(1)});
  }
  return m;
}

BimoduleSpec BimoduleSpec::zero(const AlgebraSpec &left, const AlgebraSpec &right) {
  return unit_actions(left, right, 0);
}

ValidationReport validate(const BimoduleSpec &m) {
  ValidationReport rep;
  const ModuleTables t = module_tables(m);
  const auto db = static_cast<Index>(m.left->dim()), da = static_cast<Index>(m.right->dim());
  const auto dm = static_cast<Index>(m.dim);
  auto bad = [&](Violation::Kind k, Index i, Index j, Index x, std::string msg) {
    rep.violations.push_back({k, i, j, x, std::move(msg)});
  };
  for (Index x = 0; x < dm; ++x) {
    const SparseVec mx = basis_vector(x);
    if (!(act_left(t, m, basis_vector(0), mx) == mx))
      bad(Violation::Kind::unit, 0, 0, x, "left unit does not act as the identity on m_" + std::to_string(x));
    if (!(act_right(t, m, mx, basis_vector(0)) == mx))
      bad(Violation::Kind::unit, 0, 0, x, "right unit does not act as the identity on m_" + std::to_string(x));
    for (Index i = 0; i < db; ++i)
      for (Index j = 0; j < db; ++j) {
        auto lhs = act_left(t, m, m.left->product(i, j), mx);
        auto rhs = act_left(t, m, basis_vector(i), act_left(t, m, basis_vector(j), mx));
        if (!(lhs == rhs))
          bad(Violation::Kind::module, i, j, x, "left action is not associative at " + triple(i, j, x));
      }
    for (Index i = 0; i < da; ++i)
      for (Index j = 0; j < da; ++j) {
        auto lhs = act_right(t, m, mx, m.right->product(i, j));
        auto rhs = act_right(t, m, act_right(t, m, mx, basis_vector(i)), basis_vector(j));
        if (!(lhs == rhs))
          bad(Violation::Kind::module, i, j, x, "right action is not associative at " + triple(i, j, x));
      }
    for (Index i = 0; i < db; ++i)
      for (Index j = 0; j < da; ++j) {
        auto lhs = act_right(t, m, act_left(t, m, basis_vector(i), mx), basis_vector(j));
        auto rhs = act_left(t, m, basis_vector(i), act_right(t, m, mx, basis_vector(j)));
        if (!(lhs == rhs))
          bad(Violation::Kind::commute, i, j, x, "left and right actions do not commute at " + triple(i, j, x));
      }
  }
  if (m.weights && m.weights->size() != m.dim)
    bad(Violation::Kind::shape, 0, 0, 0, "bimodule weight table has the wrong length");
  if (m.parity && m.parity->size() != m.dim)
    bad(Violation::Kind::shape, 0, 0, 0, "bimodule parity table has the wrong length");
  return rep;
}

AlgebraSpec opposite(const AlgebraSpec &a) {
  std::vector<StructureTerm> ts;
  for (const auto &t : a.terms()) {
    Scalar v = t.value;
    if (a.parity(t.i) && a.parity(t.j))
      v = -v;
    ts.push_back({t.j, t.i, t.k, v});
  }
  AlgebraSpec o(a.name() + "^op", a.field(), a.dim(), ts, a.weights(), a.parities());
  if (a.weight_cutoff())
    o.set_weight_cutoff(*a.weight_cutoff());
  return o;
}

namespace {

// Builds an algebra from a product on a "natural" basis whose unit is the
// vector `unit`. The natural element `replaced` (with unit[replaced] != 0)
// is swapped out for the unit, which becomes basis element 0; the other
// natural elements keep their relative order.
AlgebraSpec rebase_unit(const std::string &name, const Field &f, std::size_t n,
                        const std::function<SparseVec(Index, Index)> &nat_mul, const SparseVec &unit,
                        Index replaced, std::optional<std::vector<int>> nat_weights,
                        std::optional<std::vector<int>> nat_parity) {
  std::vector<Index> new_of(n), nat_of(n);
  nat_of[0] = replaced;
  Index next = 1;
  for (Index s = 0; s < n; ++s)
    if (s != replaced) {
      new_of[s] = next;
      nat_of[next] = s;
      ++next;
    }
  const Scalar ur = unit.at(replaced);
  // natural basis vector -> new coordinates
  auto to_new = [&](const SparseVec &v) {
    VecBuilder out(f);
    for (const auto &e : v.entries()) {
      if (e.index == replaced) {
        const Scalar c = f.div(e.value, ur);
        out.add(0, c);
        for (const auto &u : unit.entries())
          if (u.index != replaced)
            out.add(new_of[u.index], -c * u.value);
      } else {
        out.add(new_of[e.index], e.value);
      }
    }
    return out.finish();
  };
  auto as_nat = [&](Index b) { return b == 0 ? unit : basis_vector(nat_of[b]); };
  std::vector<StructureTerm> ts;
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b) {
      VecBuilder acc(f);
      const SparseVec va = as_nat(a), vb = as_nat(b);
      for (const auto &x : va.entries())
        for (const auto &y : vb.entries()) {
          const SparseVec p = nat_mul(x.index, y.index);
          for (const auto &z : p.entries())
            acc.add(z.index, x.value * y.value * z.value);
        }
      const SparseVec prod = to_new(acc.finish());
      for (const auto &e : prod.entries())
        ts.push_back({a, b, e.index, e.value});
    }
  auto permute = [&](const std::optional<std::vector<int>> &g) -> std::optional<std::vector<int>> {
    if (!g)
      return std::nullopt;
    std::vector<int> out(n);
    for (Index b = 1; b < n; ++b)
      out[b] = (*g)[nat_of[b]];
    out[0] = 0;
    return out;
  };
  return AlgebraSpec(name, f, n, ts, permute(nat_weights), permute(nat_parity));
}

} // namespace

AlgebraSpec matrix_algebra(const AlgebraSpec &a, std::size_t m) {
  if (m == 0)
    throw ContractViolation("matrix size must be >= 1");
  const std::size_t d = a.dim();
  const std::size_t n = m * m * d;
  auto idx = [&](std::size_t r, std::size_t c, std::size_t x) { return static_cast<Index>((r * m + c) * d + x); };
  auto nat_mul = [&](Index p, Index q) {
    const std::size_t x = p % d, r = p / d / m, c = p / d % m;
    const std::size_t y = q % d, r2 = q / d / m, c2 = q / d % m;
    std::vector<Entry> es;
    if (c == r2)
      for (const auto &e : a.product(static_cast<Index>(x), static_cast<Index>(y)).entries())
        es.push_back({idx(r, c2, e.index), e.value});
    return SparseVec::from_pairs(std::move(es), a.field());
  };
  std::vector<Entry> unit;
  for (std::size_t r = 0; r < m; ++r)
    unit.push_back({idx(r, r, 0), Scalar(1)});
  std::optional<std::vector<int>> w, par;
  if (a.graded() || a.super()) {
    std::vector<int> ww(n), pp(n);
    for (Index p = 0; p < n; ++p) {
      ww[p] = a.weight(p % d);
      pp[p] = a.parity(p % d);
    }
    if (a.graded())
      w = ww;
    if (a.super())
      par = pp;
  }
  AlgebraSpec out = rebase_unit("mat" + std::to_string(m) + "(" + a.name() + ")", a.field(), n, nat_mul,
                                SparseVec::from_pairs(unit, a.field()), idx(0, 0, 0), w, par);
  if (a.weight_cutoff())
    out.set_weight_cutoff(*a.weight_cutoff());
  return out;
}

AlgebraSpec glue(const AlgebraSpec &a, const AlgebraSpec &b, const BimoduleSpec &m) {
  if (m.left != &b && !(m.left && *m.left == b))
    throw StructuralError("the bimodule's left algebra must be the second glued algebra");
  if (m.right != &a && !(m.right && *m.right == a))
    throw StructuralError("the bimodule's right algebra must be the first glued algebra");
  if (!(a.field() == b.field()))
    throw StructuralError("glued algebras live over different fields");
  auto rep = validate(m);
  if (!rep.ok())
    throw ContractViolation("bimodule is invalid: " + rep.violations.front().message);
  const Field &f = a.field();
  const ModuleTables t = module_tables(m);
  const std::size_t da = a.dim(), db = b.dim(), dm = m.dim, n = da + db + dm;
  // natural basis: A (da), B (db), M (dm)
  enum Part { PA, PB, PM };
  auto part = [&](Index i) { return i < da ? PA : (i < da + db ? PB : PM); };
  auto local = [&](Index i) -> Index {
    return i < da ? i : (i < da + db ? static_cast<Index>(i - da) : static_cast<Index>(i - da - db));
  };
  auto shift = [&](const SparseVec &v, std::size_t off) {
    std::vector<Entry> es;
    for (const auto &e : v.entries())
      es.push_back({static_cast<Index>(e.index + off), e.value});
    return SparseVec::from_pairs(std::move(es), f);
  };
  auto nat_mul = [&](Index p, Index q) -> SparseVec {
    const Part pp = part(p), pq = part(q);
    const Index lp = local(p), lq = local(q);
    if (pp == PA && pq == PA)
      return shift(a.product(lp, lq), 0);
    if (pp == PB && pq == PB)
      return shift(b.product(lp, lq), da);
    if (pp == PB && pq == PM)
      return shift(t.left[lp * dm + lq], da + db);
    if (pp == PM && pq == PA)
      return shift(t.right[lp * da + lq], da + db);
    return SparseVec();
  };
  std::optional<std::vector<int>> w, par;
  if (a.graded() && b.graded() && (dm == 0 || m.weights)) {
    std::vector<int> ww;
    for (Index i = 0; i < da; ++i)
      ww.push_back(a.weight(i));
    for (Index i = 0; i < db; ++i)
      ww.push_back(b.weight(i));
    for (Index i = 0; i < dm; ++i)
      ww.push_back((*m.weights)[i]);
    w = ww;
  }
  if (a.super() || b.super() || m.parity) {
    std::vector<int> pp;
    for (Index i = 0; i < da; ++i)
      pp.push_back(a.parity(i));
    for (Index i = 0; i < db; ++i)
      pp.push_back(b.parity(i));
    for (Index i = 0; i < dm; ++i)
      pp.push_back(m.parity ? (*m.parity)[i] : 0);
    par = pp;
  }
  SparseVec unit = SparseVec::from_pairs({{0, Scalar(1)}, {static_cast<Index>(da), Scalar(1)}}, f);
  AlgebraSpec out = rebase_unit("glue(" + a.name() + ", " + b.name() + ")", f, n, nat_mul, unit, 0, w, par);
  require_valid(out);
  return out;
}

} // namespace ncg
