#include "ncg/hochschild.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace ncg {

std::size_t WordHash::operator()(const Word &w) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (auto x : w) {
    h ^= x;
    h *= 1099511628211ull;
  }
  return h;
}

ChainBlock::ChainBlock(int n, BlockFilter filter, std::vector<Word> words)
    : n_(n), filter_(filter), words_(std::move(words)) {
  index_.reserve(words_.size());
  for (Index i = 0; i < words_.size(); ++i)
    index_.emplace(words_[i], i);
}

std::optional<Index> ChainBlock::find(const Word &w) const {
  auto it = index_.find(w);
  if (it == index_.end())
    return std::nullopt;
  return it->second;
}

int word_weight(const AlgebraSpec &a, const Word &w) {
  int s = 0;
  for (auto x : w)
    s += a.weight(x);
  return s;
}

int word_parity(const AlgebraSpec &a, const Word &w) {
  int s = 0;
  for (auto x : w)
    s += a.parity(x);
  return s % 2;
}

ChainBlock chain_basis(const AlgebraSpec &a, int n, BlockFilter filter) {
  if (n < 0)
    throw ContractViolation("tensor length must be >= 0");
  if (filter.weight && !a.graded())
    throw ContractViolation("weight filter requested on ungraded algebra '" + a.name() + "'");
  if (filter.parity && !a.super() && *filter.parity != 0)
    return ChainBlock(n, filter, {});
  const auto dim = static_cast<int>(a.dim());
  int tmin = 0, tmax = 0;
  if (a.graded() && dim > 1) {
    tmin = tmax = a.weight(1);
    for (int i = 2; i < dim; ++i) {
      tmin = std::min(tmin, a.weight(static_cast<Index>(i)));
      tmax = std::max(tmax, a.weight(static_cast<Index>(i)));
    }
  }
  std::vector<Word> out;
  if (dim == 1 && n > 0)
    return ChainBlock(n, filter, {});
  Word w(static_cast<std::size_t>(n + 1));
  const auto len = static_cast<std::size_t>(n + 1);
  std::function<void(std::size_t, int, int)> rec = [&](std::size_t pos, int weight, int parity) {
    if (pos == len) {
      if (filter.weight && weight != *filter.weight)
        return;
      if (filter.parity && parity != *filter.parity)
        return;
      out.push_back(w);
      return;
    }
    if (filter.weight) {
      const int rest = static_cast<int>(len - pos - 1);
      for (int x = pos == 0 ? 0 : 1; x < dim; ++x) {
        const int nw = weight + a.weight(static_cast<Index>(x));
        if (nw + rest * tmin > *filter.weight || nw + rest * tmax < *filter.weight)
          continue;
        w[pos] = static_cast<std::uint16_t>(x);
        rec(pos + 1, nw, (parity + a.parity(static_cast<Index>(x))) % 2);
      }
    } else {
      for (int x = pos == 0 ? 0 : 1; x < dim; ++x) {
        w[pos] = static_cast<std::uint16_t>(x);
        rec(pos + 1, weight, (parity + a.parity(static_cast<Index>(x))) % 2);
      }
    }
  };
  rec(0, 0, 0);
  return ChainBlock(n, filter, std::move(out));
}

std::vector<std::pair<Word, Scalar>> boundary_terms(const AlgebraSpec &a, const Word &w) {
  std::vector<std::pair<Word, Scalar>> out;
  const std::size_t n = w.size() - 1;
  if (n == 0)
    return out;
  // inner faces: (-1)^i (a_0 .. a_i a_{i+1} .. a_n)
  for (std::size_t i = 0; i < n; ++i) {
    const Scalar sign(i % 2 == 0 ? 1 : -1);
    for (const auto &e : a.product(w[i], w[i + 1]).entries()) {
      if (i > 0 && e.index == AlgebraSpec::unit_index)
        continue;
      Word t;
      t.reserve(n);
      t.insert(t.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
      t.push_back(static_cast<std::uint16_t>(e.index));
      t.insert(t.end(), w.begin() + static_cast<std::ptrdiff_t>(i + 2), w.end());
      out.emplace_back(std::move(t), sign * e.value);
    }
  }
  // wrap: (-1)^{n + |a_n|(|a_0| + .. + |a_{n-1}|)} (a_n a_0; a_1 .. a_{n-1})
  int before = 0;
  for (std::size_t i = 0; i < n; ++i)
    before += a.parity(w[i]);
  const int s = static_cast<int>(n) + a.parity(w[n]) * before;
  const Scalar sign(s % 2 == 0 ? 1 : -1);
  for (const auto &e : a.product(w[n], w[0]).entries()) {
    Word t;
    t.reserve(n);
    t.push_back(static_cast<std::uint16_t>(e.index));
    t.insert(t.end(), w.begin() + 1, w.end() - 1);
    out.emplace_back(std::move(t), sign * e.value);
  }
  return out;
}

std::vector<std::pair<Word, Scalar>> connes_terms(const AlgebraSpec &a, const Word &w) {
  std::vector<std::pair<Word, Scalar>> out;
  if (w[0] == AlgebraSpec::unit_index)
    return out;
  const std::size_t n = w.size() - 1;
  Word cur = w;
  int sign = 1;
  for (std::size_t j = 0; j <= n; ++j) {
    Word t;
    t.reserve(n + 2);
    t.push_back(static_cast<std::uint16_t>(AlgebraSpec::unit_index));
    t.insert(t.end(), cur.begin(), cur.end());
    out.emplace_back(std::move(t), Scalar(sign));
    // t(c_0 .. c_n) = (-1)^{n + |c_n|(|c_0| + .. + |c_{n-1}|)} (c_n, c_0, .., c_{n-1})
    int before = 0;
    for (std::size_t i = 0; i < n; ++i)
      before += a.parity(cur[i]);
    if ((static_cast<int>(n) + a.parity(cur[n]) * before) % 2 != 0)
      sign = -sign;
    std::rotate(cur.rbegin(), cur.rbegin() + 1, cur.rend());
  }
  return out;
}

namespace {

Chain apply_terms(const AlgebraSpec &a, const Chain &c,
                  std::vector<std::pair<Word, Scalar>> (*op)(const AlgebraSpec &, const Word &)) {
  std::map<Word, Scalar> acc;
  for (const auto &[w, v] : c)
    for (auto &[t, s] : op(a, w))
      acc[t] += v * s;
  Chain out;
  for (auto &[w, v] : acc) {
    Scalar x = a.field().normalize(v);
    if (x != 0)
      out.emplace(w, std::move(x));
  }
  return out;
}

} // namespace

Chain apply_boundary(const AlgebraSpec &a, const Chain &c) { return apply_terms(a, c, &boundary_terms); }
Chain apply_connes(const AlgebraSpec &a, const Chain &c) { return apply_terms(a, c, &connes_terms); }

Chain chain_add(const Chain &x, const Chain &y, const Field &f, const Scalar &scale) {
  Chain out = x;
  for (const auto &[w, v] : y) {
    Scalar s = f.normalize(out[w] + scale * v);
    if (s == 0)
      out.erase(w);
    else
      out[w] = s;
  }
  return out;
}

HochschildComplex::HochschildComplex(AlgebraSpec a) : a_(std::move(a)) {}

const ChainBlock &HochschildComplex::block(int n, const BlockFilter &f) {
  Key k{n, f};
  auto it = blocks_.find(k);
  if (it == blocks_.end())
    it = blocks_.emplace(k, std::make_unique<ChainBlock>(chain_basis(a_, n, f))).first;
  return *it->second;
}

namespace {

SparseMatrix build_matrix(const AlgebraSpec &a, const ChainBlock &src, const ChainBlock &dst,
                          std::vector<std::pair<Word, Scalar>> (*op)(const AlgebraSpec &, const Word &),
                          const char *what) {
  SparseMatrix m(dst.size(), src.size(), a.field());
  for (Index c = 0; c < src.size(); ++c) {
    std::vector<Entry> es;
    for (auto &[t, s] : op(a, src.words()[c])) {
      auto r = dst.find(t);
      if (!r)
        throw StructuralError(std::string(what) + " leaves its graded piece (word of length " +
                              std::to_string(t.size()) + ")");
      es.push_back({*r, s});
    }
    m.set_column(c, SparseVec::from_pairs(std::move(es), a.field()));
  }
  return m;
}

} // namespace

const SparseMatrix &HochschildComplex::boundary(int n, const BlockFilter &f) {
  Key k{n, f};
  auto it = boundary_.find(k);
  if (it != boundary_.end())
    return it->second;
  const ChainBlock &src = block(n, f);
  SparseMatrix m = n == 0 ? SparseMatrix(0, src.size(), a_.field())
                          : build_matrix(a_, src, block(n - 1, f), &boundary_terms, "boundary");
  return boundary_.emplace(k, std::move(m)).first->second;
}

const SparseMatrix &HochschildComplex::connes(int n, const BlockFilter &f) {
  Key k{n, f};
  auto it = connes_.find(k);
  if (it != connes_.end())
    return it->second;
  SparseMatrix m = build_matrix(a_, block(n, f), block(n + 1, f), &connes_terms, "Connes' operator");
  return connes_.emplace(k, std::move(m)).first->second;
}

std::size_t HochschildComplex::boundary_rank(int n, const BlockFilter &f) {
  Key k{n, f};
  auto it = ranks_.find(k);
  if (it != ranks_.end())
    return it->second;
  const std::size_t r = n == 0 ? 0 : rank(boundary(n, f));
  ranks_.emplace(k, r);
  return r;
}

std::vector<int> HochschildComplex::weights(int n) const {
  if (!a_.graded())
    return {};
  std::set<int> letters, tails;
  for (Index i = 0; i < a_.dim(); ++i) {
    letters.insert(a_.weight(i));
    if (i > 0)
      tails.insert(a_.weight(i));
  }
  std::set<int> cur = letters;
  for (int k = 0; k < n; ++k) {
    std::set<int> next;
    for (int x : cur)
      for (int t : tails)
        next.insert(x + t);
    cur = std::move(next);
  }
  return {cur.begin(), cur.end()};
}

std::vector<int> HochschildComplex::parities() const {
  if (a_.super())
    return {0, 1};
  return {0};
}

std::size_t HHTable::total(int n) const {
  std::size_t s = 0;
  for (const auto &e : entries)
    if (e.n == n)
      s += e.rank;
  return s;
}

std::optional<std::size_t> HHTable::at(int n, std::optional<int> weight) const {
  for (const auto &e : entries)
    if (e.n == n && e.weight == weight)
      return e.rank;
  return std::nullopt;
}

bool weight_trusted(const AlgebraSpec &a, int w) {
  return !a.weight_cutoff() || w <= *a.weight_cutoff() - hochschild_guard_band;
}

HHTable hh_ranks(const AlgebraSpec &a, const DegreeWindow &window) {
  HochschildComplex c(a);
  return hh_ranks(c, window);
}

HHTable hh_ranks(HochschildComplex &c, const DegreeWindow &window) {
  const AlgebraSpec &a = c.algebra();
  if (window.n_max < 0)
    throw ContractViolation("window n_max must be >= 0");
  if ((window.w_min || window.w_max) && !a.graded())
    throw ContractViolation("weight range requested on ungraded algebra '" + a.name() + "'");
  HHTable t;
  t.window = window;
  for (int n = 0; n <= window.n_max; ++n) {
    std::vector<std::optional<int>> ws;
    if (a.graded()) {
      for (int w : c.weights(n))
        if ((!window.w_min || w >= *window.w_min) && (!window.w_max || w <= *window.w_max))
          ws.push_back(w);
    } else {
      ws.push_back(std::nullopt);
    }
    for (const auto &w : ws) {
      std::size_t r = 0;
      for (int p : c.parities()) {
        BlockFilter f{w, a.super() ? std::optional<int>(p) : std::nullopt};
        const std::size_t dim = c.block(n, f).size();
        r += dim - c.boundary_rank(n, f) - c.boundary_rank(n + 1, f);
      }
      t.entries.push_back({n, w, r, !w || weight_trusted(a, *w)});
    }
  }
  return t;
}

std::vector<Scalar> HH0Result::coordinates(const SparseVec &x) const {
  SparseVec r = commutators->reduce(x);
  std::vector<Scalar> out;
  for (Index i : representatives)
    out.push_back(r.at(i));
  return out;
}

HH0Result hh0_direct(const AlgebraSpec &a) {
  const Field &f = a.field();
  std::vector<SparseVec> comms;
  for (Index i = 0; i < a.dim(); ++i)
    for (Index j = i + 1; j < a.dim(); ++j) {
      const Scalar s = (a.parity(i) && a.parity(j)) ? Scalar(1) : Scalar(-1);
      SparseVec c = a.product(i, j).plus(a.product(j, i).scaled(s, f), f);
      if (!c.empty())
        comms.push_back(std::move(c));
    }
  // odd elements also give [x, x] = 2 x^2
  for (Index i = 0; i < a.dim(); ++i)
    if (a.parity(i)) {
      SparseVec c = a.product(i, i).scaled(Scalar(2), f);
      if (!c.empty())
        comms.push_back(std::move(c));
    }
  auto e = std::make_shared<Echelon>(a.dim(), f, comms);
  HH0Result r;
  r.rank = a.dim() - e->rank();
  r.representatives = e->free_columns();
  r.commutators = e;
  return r;
}

std::size_t hkr_reference(int v, int i, int w, const Field &f) {
  if (f.is_prime())
    throw Unsupported("the HKR comparison is only available in characteristic 0");
  if (v < 0 || i < 0 || w < 0)
    throw ContractViolation("hkr_reference needs non-negative arguments");
  auto binom = [](long n, long k) -> std::size_t {
    if (k < 0 || n < 0 || k > n)
      return 0;
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r.get_ui();
  };
  if (i > v || w < i)
    return 0;
  if (v == 0)
    return (i == 0 && w == 0) ? 1 : 0;
  // choose the dx's, then a monomial of degree w - i in v variables
  return binom(v, i) * binom(w - i + v - 1, v - 1);
}

std::optional<IdentityWitness> check_mixed_identities(const AlgebraSpec &a, int n_max) {
  const Field &f = a.field();
  for (int n = 0; n <= n_max; ++n) {
    const ChainBlock b = chain_basis(a, n);
    for (const Word &w : b.words()) {
      const Chain x{{w, Scalar(1)}};
      const Chain dx = apply_boundary(a, x);
      const Chain bx = apply_connes(a, x);
      if (!apply_boundary(a, dx).empty())
        return IdentityWitness{"boundary^2", n, w};
      if (!apply_connes(a, bx).empty())
        return IdentityWitness{"B^2", n, w};
      if (!chain_add(apply_boundary(a, bx), apply_connes(a, dx), f).empty())
        return IdentityWitness{"boundary B + B boundary", n, w};
    }
  }
  return std::nullopt;
}

} // namespace ncg
