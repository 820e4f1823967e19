#include "ncg/kchern.hpp"

#include <map>

namespace ncg {

bool UChain::empty() const {
  for (const auto &t : terms)
    if (!t.empty())
      return false;
  return true;
}

namespace {

// first (x) tails[0] (x) ... with the unit component of every tail dropped
Chain tensor_chain(const SparseVec &first, const std::vector<SparseVec> &tails, const Scalar &scale,
                   const Field &f) {
  std::vector<std::pair<Word, Scalar>> cur;
  for (const auto &e : first.entries())
    cur.push_back({Word{static_cast<std::uint16_t>(e.index)}, scale * e.value});
  for (const auto &t : tails) {
    std::vector<std::pair<Word, Scalar>> next;
    for (const auto &[w, v] : cur)
      for (const auto &e : t.entries()) {
        if (e.index == AlgebraSpec::unit_index)
          continue;
        Word x = w;
        x.push_back(static_cast<std::uint16_t>(e.index));
        next.push_back({std::move(x), v * e.value});
      }
    cur = std::move(next);
  }
  Chain out;
  for (auto &[w, v] : cur)
    out[w] += v;
  Chain clean;
  for (auto &[w, v] : out) {
    Scalar x = f.normalize(v);
    if (x != 0)
      clean.emplace(w, x);
  }
  return clean;
}

Chain element_chain(const SparseVec &x) {
  Chain c;
  for (const auto &e : x.entries())
    c[Word{static_cast<std::uint16_t>(e.index)}] = e.value;
  return c;
}

} // namespace

UChain apply_mixed(const AlgebraSpec &a, const UChain &x) {
  UChain out;
  out.truncation = x.truncation;
  out.terms.resize(static_cast<std::size_t>(x.truncation));
  for (int k = 0; k < x.truncation; ++k) {
    Chain acc;
    if (static_cast<std::size_t>(k) < x.terms.size())
      acc = apply_boundary(a, x.terms[static_cast<std::size_t>(k)]);
    if (k >= 1 && static_cast<std::size_t>(k - 1) < x.terms.size())
      acc = chain_add(acc, apply_connes(a, x.terms[static_cast<std::size_t>(k - 1)]), a.field());
    out.terms[static_cast<std::size_t>(k)] = std::move(acc);
  }
  return out;
}

CycleCertificate check_negative_cycle(const AlgebraSpec &a, const UChain &x) {
  const UChain d = apply_mixed(a, x);
  CycleCertificate c;
  for (int k = 0; k < d.truncation; ++k) {
    const Chain &t = d.terms[static_cast<std::size_t>(k)];
    if (!t.empty()) {
      c.cycle = false;
      c.power = k;
      c.word = t.begin()->first;
      c.value = t.begin()->second;
      return c;
    }
  }
  return c;
}

UChain uchain_sub(const UChain &x, const UChain &y, const Field &f) {
  UChain out;
  out.truncation = std::max(x.truncation, y.truncation);
  out.terms.resize(static_cast<std::size_t>(out.truncation));
  for (std::size_t k = 0; k < out.terms.size(); ++k) {
    Chain a = k < x.terms.size() ? x.terms[k] : Chain{};
    if (k < y.terms.size())
      a = chain_add(a, y.terms[k], f, Scalar(-1));
    out.terms[k] = std::move(a);
  }
  return out;
}

bool is_negative_boundary(const AlgebraSpec &a, const UChain &x) {
  if (x.empty())
    return true;
  std::optional<int> deg;
  for (std::size_t k = 0; k < x.terms.size(); ++k)
    for (const auto &[w, v] : x.terms[k]) {
      const int d = static_cast<int>(w.size()) - 1 - 2 * static_cast<int>(k);
      if (deg && *deg != d)
        throw ContractViolation("u-chain is not homogeneous in degree n - 2k");
      deg = d;
    }
  const int N = x.truncation;
  const Field &f = a.field();
  // generators of C_e: (k, word) with n = e + 2k
  struct Group {
    std::vector<std::pair<int, ChainBlock>> parts;
    std::map<int, std::size_t> offset;
    std::size_t dim = 0;
  };
  auto group = [&](int e) {
    Group g;
    for (int k = 0; k < N; ++k) {
      const int n = e + 2 * k;
      if (n < 0)
        continue;
      g.offset[k] = g.dim;
      g.parts.emplace_back(k, chain_basis(a, n));
      g.dim += g.parts.back().second.size();
    }
    return g;
  };
  const Group src = group(*deg + 1), dst = group(*deg);
  auto locate = [&](int k, const Word &w) -> Index {
    for (const auto &[kk, b] : dst.parts)
      if (kk == k)
        if (auto i = b.find(w))
          return static_cast<Index>(dst.offset.at(k) + *i);
    throw StructuralError("chain word outside the reduced basis");
  };
  std::vector<SparseVec> cols;
  for (const auto &[k, b] : src.parts)
    for (const Word &w : b.words()) {
      std::vector<Entry> es;
      for (auto &[t, s] : boundary_terms(a, w))
        es.push_back({locate(k, t), s});
      if (k + 1 < N)
        for (auto &[t, s] : connes_terms(a, w))
          es.push_back({locate(k + 1, t), s});
      cols.push_back(SparseVec::from_pairs(std::move(es), f));
    }
  std::vector<Entry> xs;
  for (std::size_t k = 0; k < x.terms.size(); ++k)
    for (const auto &[w, v] : x.terms[k])
      xs.push_back({locate(static_cast<int>(k), w), v});
  const Echelon e(dst.dim, f, cols);
  return e.contains(SparseVec::from_pairs(std::move(xs), f));
}

Scalar regular_trace(const AlgebraSpec &a, const SparseVec &x) {
  Scalar t = 0;
  for (Index i = 0; i < a.dim(); ++i)
    t += a.multiply(x, basis_vector(i)).at(i);
  return a.field().normalize(t);
}

std::vector<SparseVec> diagonal_idempotents(std::size_t m, const AlgebraSpec &mat) {
  if (mat.dim() != m * m)
    throw ContractViolation("diagonal_idempotents expects mat(" + std::to_string(m) + ")");
  const Field &f = mat.field();
  // e_11 = 1 - sum_{a > 1} e_aa; e_aa (a > 1) is basis element a * m + a (0-based a)
  std::vector<SparseVec> diag;
  {
    std::vector<Entry> es{{0, Scalar(1)}};
    for (std::size_t r = 1; r < m; ++r)
      es.push_back({static_cast<Index>(r * m + r), Scalar(-1)});
    diag.push_back(SparseVec::from_pairs(es, f));
  }
  for (std::size_t r = 1; r < m; ++r)
    diag.push_back(basis_vector(static_cast<Index>(r * m + r)));
  std::vector<SparseVec> out;
  for (std::size_t mask = 1; mask < (std::size_t{1} << m); ++mask) {
    SparseVec v;
    for (std::size_t r = 0; r < m; ++r)
      if (mask & (std::size_t{1} << r))
        v = v.plus(diag[r], f);
    out.push_back(v);
  }
  return out;
}

ChernResult chern_idempotent(const AlgebraSpec &a, const SparseVec &p, int N) {
  UTruncation trunc(N);
  const Field &f = a.field();
  if (f.is_prime() && f.characteristic() <= static_cast<std::uint64_t>(2 * N))
    throw Unsupported("the Chern character needs characteristic 0 or p > 2N; got " + f.name() +
                      " with N = " + std::to_string(N));
  if (!(a.multiply(p, p) == p))
    throw ContractViolation("element is not idempotent: p^2 != p");
  ChernResult r;
  r.chain.truncation = trunc.order();
  r.chain.terms.push_back(element_chain(p));
  const SparseVec first = p.plus(basis_vector(AlgebraSpec::unit_index).scaled(Scalar(-1, 2), f), f);
  mpz_class fact2k = 1, factk = 1;
  for (int k = 1; k < N; ++k) {
    fact2k *= (2 * k - 1) * (2 * k);
    factk *= k;
    Scalar c = Scalar(fact2k) / Scalar(factk);
    if (k % 2 == 1)
      c = -c;
    r.chain.terms.push_back(tensor_chain(first, std::vector<SparseVec>(static_cast<std::size_t>(2 * k), p), c, f));
  }
  r.certificate = check_negative_cycle(a, r.chain);
  if (!r.certificate.cycle)
    throw ContractViolation("Chern character failed its cycle certificate at u^" +
                            std::to_string(r.certificate.power));
  const HH0Result hh0 = hh0_direct(a);
  r.hh0_class = hh0.coordinates(p);
  for (const auto &x : r.hh0_class)
    r.hh0_nonzero = r.hh0_nonzero || x != 0;
  r.trace = regular_trace(a, p);
  return r;
}

namespace {

std::string vec_text(const SparseVec &v) {
  std::string s = "[";
  for (const auto &e : v.entries())
    s += (s.size() > 1 ? ", " : "") + std::to_string(e.index) + ":" + to_text(e.value);
  return s + "]";
}

} // namespace

PPowerResult ppower_on_hh0(const AlgebraSpec &a) {
  const Field &f = a.field();
  if (!f.is_prime())
    throw Unsupported("the p-power operation needs a prime field");
  const auto p = static_cast<unsigned>(f.characteristic());
  const HH0Result hh0 = hh0_direct(a);
  const Echelon &comm = *hh0.commutators;
  PPowerResult r;
  r.p = p;
  r.representatives = hh0.representatives;
  const std::size_t h = hh0.representatives.size();
  r.matrix.assign(h, std::vector<Scalar>(h, Scalar(0)));
  for (std::size_t c = 0; c < h; ++c) {
    auto coords = hh0.coordinates(a.power(basis_vector(hh0.representatives[c]), p));
    for (std::size_t row = 0; row < h; ++row)
      r.matrix[row][c] = coords[row];
  }
  const auto n = static_cast<Index>(a.dim());
  std::vector<SparseVec> commutators;
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) {
      SparseVec c = a.product(i, j).plus(a.product(j, i).scaled(Scalar(-1), f), f);
      if (!c.empty())
        commutators.push_back(c);
    }
  auto fail = [](PPowerCertificate &cert, std::string w) {
    if (cert.pass) {
      cert.pass = false;
      cert.witness = std::move(w);
    }
  };
  for (Index i = 0; i < n; ++i) {
    const SparseVec ei = basis_vector(i);
    const SparseVec ep = a.power(ei, p);
    for (const auto &c : commutators) {
      const SparseVec lifted = a.power(ei.plus(c, f), p);
      if (!comm.contains(lifted.plus(ep.scaled(Scalar(-1), f), f)))
        fail(r.well_defined, "(e_" + std::to_string(i) + " + " + vec_text(c) + ")^p");
    }
    for (Index j = i; j < n; ++j) {
      const SparseVec ej = basis_vector(j);
      SparseVec d = a.power(ei.plus(ej, f), p);
      d = d.plus(ep.scaled(Scalar(-1), f), f).plus(a.power(ej, p).scaled(Scalar(-1), f), f);
      if (!comm.contains(d))
        fail(r.additive, "(e_" + std::to_string(i) + " + e_" + std::to_string(j) + ")^p");
    }
    for (unsigned lam = 1; lam < p; ++lam) {
      SparseVec d = a.power(ei.scaled(Scalar(lam), f), p).plus(ep.scaled(Scalar(-static_cast<long>(lam)), f), f);
      if (!comm.contains(d))
        fail(r.semilinear, "(" + std::to_string(lam) + " e_" + std::to_string(i) + ")^p");
    }
  }
  for (std::size_t c = 0; c < h; ++c) {
    auto direct = hh0.coordinates(a.power(basis_vector(hh0.representatives[c]), p * p));
    for (std::size_t row = 0; row < h; ++row) {
      Scalar s = 0;
      for (std::size_t m = 0; m < h; ++m)
        s += r.matrix[row][m] * r.matrix[m][c];
      if (f.normalize(s) != direct[row])
        fail(r.composition, "class of e_" + std::to_string(hh0.representatives[c]));
    }
  }
  return r;
}

LiftResult ppower_lift_p2(const AlgebraSpec &a, const SparseVec &x) {
  const Field &f = a.field();
  if (!f.is_prime() || f.characteristic() != 2)
    throw Unsupported("the explicit lift a^2 + (1; a, a) u is only available over F_2");
  LiftResult r;
  r.chain.truncation = 2;
  r.chain.terms.push_back(element_chain(a.multiply(x, x)));
  r.chain.terms.push_back(tensor_chain(basis_vector(AlgebraSpec::unit_index), {x, x}, Scalar(1), f));
  r.certificate = check_negative_cycle(a, r.chain);
  return r;
}

LiftResult ppower_lift(const AlgebraSpec &a, const SparseVec &x) {
  const Field &f = a.field();
  if (f.is_prime() && f.characteristic() == 2)
    return ppower_lift_p2(a, x);
  const std::uint64_t p = f.characteristic();
  throw Unsupported("the p-power lift is only implemented for p = 2; for p = " + std::to_string(p) +
                    " its terms have the shape a^{i_0} (x) ... (x) a^{i_n} u^{(n-1)/2} with top term ((p-1)/2)! "
                    "a^{(x) p} u^{(p-1)/2}, and the remaining coefficients are unknown");
}

} // namespace ncg
