#include "ncg/cyclic.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace ncg {
namespace {

struct PieceLayout {
  int lo, top, n_hi, N;
  std::vector<std::size_t> block_sizes; // per n in [0, n_hi]

  bool present(int d, int k) const {
    const int n = d + 2 * k;
    return k >= 0 && k < N && n >= 0 && n <= n_hi;
  }
  std::size_t offset(int d, int k) const {
    std::size_t off = 0;
    for (int j = 0; j < k; ++j)
      if (present(d, j))
        off += block_sizes[static_cast<std::size_t>(d + 2 * j)];
    return off;
  }
  std::size_t dim(int d) const {
    if (d < lo)
      return 0;
    std::size_t s = 0;
    for (int k = 0; k < N; ++k)
      if (present(d, k))
        s += block_sizes[static_cast<std::size_t>(d + 2 * k)];
    return s;
  }
};

void add_block(std::vector<Triplet> &ts, const SparseMatrix &m, std::size_t row_off, std::size_t col_off) {
  for (Index c = 0; c < m.cols(); ++c)
    for (const auto &e : m.column(c).entries())
      ts.push_back({static_cast<Index>(e.index + row_off), static_cast<Index>(c + col_off), e.value});
}

CyclicPiece build_piece(HochschildComplex &c, const BlockFilter &f, const DegreeWindow &window, int N,
                        bool with_connes) {
  const AlgebraSpec &a = c.algebra();
  const Field &field = a.field();
  CyclicPiece piece;
  piece.weight = f.weight;
  piece.parity = f.parity.value_or(0);
  piece.complete = a.connected() && f.weight && *f.weight <= window.n_max;
  PieceLayout L;
  L.N = N;
  L.lo = -2 * (N - 1);
  if (piece.complete) {
    L.n_hi = *f.weight;
    L.top = *f.weight;
  } else {
    L.n_hi = window.n_max;
    L.top = window.n_max - 2 * N + 1;
  }
  for (int n = 0; n <= L.n_hi; ++n)
    L.block_sizes.push_back(c.block(n, f).size());

  GradedUComplex g;
  g.field = field;
  g.truncation = N;
  g.lo = L.lo;
  g.top = L.top;
  for (int d = L.lo; d <= L.top + 1; ++d) {
    const std::size_t cols = L.dim(d), rows1 = L.dim(d - 1), rows2 = L.dim(d - 2);
    std::vector<Triplet> dt, ut;
    for (int k = 0; k < N; ++k) {
      if (!L.present(d, k))
        continue;
      const int n = d + 2 * k;
      const std::size_t col_off = L.offset(d, k);
      if (n >= 1 && L.present(d - 1, k))
        add_block(dt, c.boundary(n, f), L.offset(d - 1, k), col_off);
      if (with_connes && k + 1 < N) {
        const SparseMatrix &b = c.connes(n, f);
        if (L.present(d - 1, k + 1))
          add_block(dt, b, L.offset(d - 1, k + 1), col_off);
        else if (!b.is_zero())
          throw StructuralError("window too small: Connes' operator leaves tensor length " +
                                std::to_string(L.n_hi));
      }
      if (L.present(d - 2, k + 1)) {
        const std::size_t sz = L.block_sizes[static_cast<std::size_t>(n)];
        const std::size_t row_off = L.offset(d - 2, k + 1);
        for (std::size_t i = 0; i < sz; ++i)
          ut.push_back({static_cast<Index>(row_off + i), static_cast<Index>(col_off + i), Scalar(1)});
      }
    }
    g.dims.push_back(cols);
    g.diff.push_back(SparseMatrix::from_triplets(rows1, cols, field, dt));
    g.umap.push_back(SparseMatrix::from_triplets(rows2, cols, field, ut));
  }
  piece.report = u_persistence(g);
  if (piece.complete)
    for (auto &iv : piece.report.intervals)
      iv.stable = true; // nothing lives above the top of a complete piece
  return piece;
}

void finish_report(UModuleReport &r) {
  std::sort(r.torsion_blocks.rbegin(), r.torsion_blocks.rend());
  std::sort(r.unstable_blocks.rbegin(), r.unstable_blocks.rend());
  r.saturated_at_N = true;
  for (int b : r.torsion_blocks)
    if (b > r.truncation - 2)
      r.saturated_at_N = false;
}

std::vector<int> piece_weights(HochschildComplex &c, const DegreeWindow &window) {
  std::set<int> ws;
  for (int n = 0; n <= window.n_max; ++n)
    for (int w : c.weights(n))
      if ((!window.w_min || w >= *window.w_min) && (!window.w_max || w <= *window.w_max))
        ws.insert(w);
  return {ws.begin(), ws.end()};
}

} // namespace

NegativeCyclicResult negative_cyclic(HochschildComplex &c, const DegreeWindow &window, int N, bool with_connes) {
  const AlgebraSpec &a = c.algebra();
  UTruncation trunc(N);
  if (window.n_max < 2 * N)
    throw ContractViolation("window too small: n_max = " + std::to_string(window.n_max) +
                            " but the u-truncation N = " + std::to_string(N) + " needs n_max >= " +
                            std::to_string(2 * N));
  if ((window.w_min || window.w_max) && !a.graded())
    throw ContractViolation("weight range requested on ungraded algebra '" + a.name() + "'");
  NegativeCyclicResult r;
  r.window = window;
  r.truncation = trunc.order();
  r.with_connes = with_connes;
  r.even.truncation = r.odd.truncation = N;
  std::vector<std::optional<int>> ws;
  if (a.graded())
    for (int w : piece_weights(c, window))
      ws.push_back(w);
  else
    ws.push_back(std::nullopt);
  for (const auto &w : ws)
    for (int p : c.parities()) {
      BlockFilter f{w, a.super() ? std::optional<int>(p) : std::nullopt};
      bool any = false;
      for (int n = 0; n <= window.n_max && !any; ++n)
        any = c.block(n, f).size() > 0;
      if (!any)
        continue;
      CyclicPiece piece = build_piece(c, f, window, N, with_connes);
      for (const auto &iv : piece.report.intervals) {
        FreeGenerator g{w, piece.parity, iv.start};
        UModuleReport &rep = g.total_parity() == 0 ? r.even : r.odd;
        if (iv.length == N) {
          rep.free_rank++;
          r.free_generators.push_back(g);
        } else if (iv.stable) {
          rep.torsion_blocks.push_back(iv.length);
        } else {
          rep.unstable_blocks.push_back(iv.length);
        }
      }
      r.pieces.push_back(std::move(piece));
    }
  finish_report(r.even);
  finish_report(r.odd);
  return r;
}

NegativeCyclicResult negative_cyclic(const AlgebraSpec &a, const DegreeWindow &window, int N) {
  HochschildComplex c(a);
  return negative_cyclic(c, window, N);
}

HPResult hp_ranks(HochschildComplex &c, const DegreeWindow &window, int N) {
  HPResult h;
  h.at_N = negative_cyclic(c, window, N);
  h.even = h.at_N.even.free_rank;
  h.odd = h.at_N.odd.free_rank;
  auto pair_text = [](std::size_t e, std::size_t o) {
    return "(" + std::to_string(e) + ", " + std::to_string(o) + ")";
  };
  h.diagnostics.push_back("free ranks at N=" + std::to_string(N) + ": " + pair_text(h.even, h.odd));
  if (N < 2) {
    h.diagnostics.push_back("N < 2 leaves no truncation to compare against");
    return h;
  }
  h.at_N_minus_1 = negative_cyclic(c, window, N - 1);
  const std::size_t e1 = h.at_N_minus_1.even.free_rank, o1 = h.at_N_minus_1.odd.free_rank;
  h.diagnostics.push_back("free ranks at N=" + std::to_string(N - 1) + ": " + pair_text(e1, o1));
  const bool stable = e1 == h.even && o1 == h.odd;
  const bool saturated = h.at_N.even.saturated_at_N && h.at_N.odd.saturated_at_N;
  if (!stable)
    h.diagnostics.push_back("free ranks change between N-1 and N");
  if (!saturated)
    h.diagnostics.push_back("torsion blocks reach the truncation (not saturated)");
  h.conclusive = stable && saturated;
  return h;
}

HPResult hp_ranks(const AlgebraSpec &a, const DegreeWindow &window, int N) {
  HochschildComplex c(a);
  return hp_ranks(c, window, N);
}

std::vector<FiltrationEntry> hodge_filtration(const HPResult &hp) {
  if (!hp.conclusive)
    throw ContractViolation("periodic cyclic ranks are inconclusive; refusing to report a filtration");
  const NegativeCyclicResult &r = hp.at_N;
  // degrees above the smallest top of an incomplete piece are not seen everywhere
  std::optional<int> trusted_top;
  for (const auto &p : r.pieces)
    if (!p.complete)
      trusted_top = trusted_top ? std::min(*trusted_top, p.report.top) : p.report.top;
  int lo = 0, hi = 0;
  for (const auto &g : r.free_generators) {
    lo = std::min(lo, g.effective_degree());
    hi = std::max(hi, g.effective_degree());
  }
  std::vector<FiltrationEntry> out;
  for (int h = lo; h <= hi + 2; ++h) {
    FiltrationEntry e{h, 0, 0, !trusted_top || h <= *trusted_top};
    for (const auto &g : r.free_generators)
      if (g.effective_degree() >= h)
        (g.total_parity() == 0 ? e.even : e.odd)++;
    out.push_back(e);
  }
  return out;
}

std::vector<FiltrationEntry> hodge_filtration(const AlgebraSpec &a, const DegreeWindow &window, int N) {
  return hodge_filtration(hp_ranks(a, window, N));
}

std::string to_string(Verdict v) {
  switch (v) {
  case Verdict::collapses_in_window:
    return "collapses-in-window";
  case Verdict::finite_torsion_found:
    return "finite-torsion-found";
  case Verdict::inconclusive:
    return "inconclusive";
  }
  return "inconclusive";
}

DegenerationResult degeneration_check(const NegativeCyclicResult &r) {
  DegenerationResult d{Verdict::inconclusive, {}, 0};
  bool any_degree = false;
  for (const auto &p : r.pieces) {
    any_degree = any_degree || p.report.top >= p.report.lo;
    for (const auto &iv : p.report.intervals) {
      if (iv.length == r.truncation)
        continue;
      if (iv.stable)
        d.inventory.push_back({p.weight, p.parity, iv.start, iv.length});
      else
        d.unstable++;
    }
  }
  if (!d.inventory.empty())
    d.verdict = Verdict::finite_torsion_found;
  else if (any_degree)
    d.verdict = Verdict::collapses_in_window;
  return d;
}

DegenerationResult degeneration_check(const AlgebraSpec &a, const DegreeWindow &window, int N) {
  return degeneration_check(negative_cyclic(a, window, N));
}

HodgeReport hodge_report(const AlgebraSpec &a, const DegreeWindow &window, int N) {
  HochschildComplex c(a);
  HPResult hp = hp_ranks(c, window, N);
  HodgeReport r;
  r.window = window;
  r.truncation = N;
  r.hp_even = hp.even;
  r.hp_odd = hp.odd;
  r.conclusive = hp.conclusive;
  r.u_even = hp.at_N.even;
  r.u_odd = hp.at_N.odd;
  r.verdict = degeneration_check(hp.at_N).verdict;
  r.diagnostics = hp.diagnostics;
  if (hp.conclusive)
    r.filtration = hodge_filtration(hp);
  return r;
}

namespace {

// Free ranks per weight slot over the guard-safe pieces.
std::map<std::optional<int>, SlotRanks> slot_ranks(const NegativeCyclicResult &r, bool complete_only) {
  std::map<std::optional<int>, SlotRanks> out;
  for (const auto &p : r.pieces) {
    if (complete_only && !p.complete)
      continue;
    out[p.weight].weight = p.weight;
  }
  for (const auto &g : r.free_generators) {
    auto it = out.find(g.weight);
    if (it == out.end())
      continue;
    (g.total_parity() == 0 ? it->second.even : it->second.odd)++;
  }
  return out;
}

} // namespace

CharPComparison char_p_compare(const AlgebraSpec &a, const DegreeWindow &window, int N) {
  if (!a.field().is_prime())
    throw Unsupported("char_p_compare needs a prime field; over Q use connes_report");
  const std::uint64_t p = a.field().characteristic();
  HochschildComplex c(a);
  const NegativeCyclicResult mixed = negative_cyclic(c, window, N, true);
  const NegativeCyclicResult bare = negative_cyclic(c, window, N, false);
  const bool complete_only = a.connected();
  auto ms = slot_ranks(mixed, complete_only);
  auto bs = slot_ranks(bare, complete_only);
  CharPComparison out{p, window, N, {}, {}, {}, true, true};
  for (const auto &[w, b] : bs) {
    auto it = ms.find(w);
    if (it == ms.end())
      continue;
    const bool agree = it->second.even == b.even && it->second.odd == b.odd;
    out.untwisted.push_back({w, w, b, it->second, agree});
    out.untwisted_agree = out.untwisted_agree && agree;
  }
  for (const auto &[w, b] : bs) {
    std::optional<int> target = w ? std::optional<int>(*w * static_cast<int>(p)) : std::nullopt;
    auto it = ms.find(target);
    if (it == ms.end())
      continue;
    const bool agree = it->second.even == b.even && it->second.odd == b.odd;
    out.twisted.push_back({w, target, b, it->second, agree});
    out.twisted_agree = out.twisted_agree && agree;
  }
  for (const auto &[w, m] : ms)
    if (w && *w % static_cast<int>(p) != 0) {
      out.off_frobenius.push_back(m);
      if (m.even != 0 || m.odd != 0)
        out.twisted_agree = false;
    }
  if (out.twisted.empty())
    out.twisted_agree = false;
  return out;
}

std::vector<ConnesSlot> connes_report(const AlgebraSpec &a, const DegreeWindow &window, int N) {
  HochschildComplex c(a);
  const NegativeCyclicResult r = negative_cyclic(c, window, N, true);
  std::map<std::optional<int>, ConnesSlot> slots;
  for (const auto &p : r.pieces) {
    ConnesSlot &s = slots[p.weight];
    s.weight = p.weight;
    s.complete = p.complete;
    for (const auto &iv : p.report.intervals) {
      if (iv.length == N)
        s.free++;
      else if (iv.stable)
        s.torsion++;
      else
        s.unstable++;
    }
  }
  std::vector<ConnesSlot> out;
  for (auto &[w, s] : slots)
    out.push_back(s);
  return out;
}

namespace {

// sigma as a signed permutation of the words of length n over dimV letters
SparseMatrix rotation_matrix(int dimV, int n, const Field &f) {
  std::size_t dim = 1;
  for (int i = 0; i < n; ++i)
    dim *= static_cast<std::size_t>(dimV);
  const Scalar sign((n - 1) % 2 == 0 ? 1 : -1);
  std::vector<Triplet> ts;
  const std::size_t top = dim / static_cast<std::size_t>(dimV);
  for (std::size_t w = 0; w < dim; ++w) {
    // words are base-dimV numbers, most significant letter first;
    // (v_1 .. v_n) -> (v_n, v_1 .. v_{n-1})
    const std::size_t last = w % static_cast<std::size_t>(dimV);
    const std::size_t rotated = last * top + w / static_cast<std::size_t>(dimV);
    ts.push_back({static_cast<Index>(rotated), static_cast<Index>(w), sign});
  }
  return SparseMatrix::from_triplets(dim, dim, f, ts);
}

} // namespace

GradedPieceRanks graded_piece_analysis(int dimV, int n, const Field &f) {
  if (dimV < 1 || n < 1)
    throw ContractViolation("graded_piece_analysis needs dimV >= 1 and n >= 1");
  const SparseMatrix sigma = rotation_matrix(dimV, n, f);
  const std::size_t dim = sigma.rows();
  const SparseMatrix id = SparseMatrix::identity(dim, f);
  SparseMatrix minus_sigma(dim, dim, f);
  for (Index c = 0; c < dim; ++c)
    minus_sigma.set_column(c, sigma.column(c).scaled(Scalar(-1), f));
  const SparseMatrix one_minus = id.plus(minus_sigma);
  SparseMatrix norm = id, power = id;
  for (int i = 1; i < n; ++i) {
    power = sigma.multiply(power);
    norm = norm.plus(power);
  }
  const std::size_t r1 = rank(one_minus), rn = rank(norm);
  GradedPieceRanks out;
  out.ker_rot_mod_norm = dim - r1 - rn;
  out.ker_norm_mod_rot = dim - rn - r1;
  out.composites_vanish = one_minus.multiply(norm).is_zero() && norm.multiply(one_minus).is_zero();
  return out;
}

std::pair<std::size_t, std::size_t> rotation_complex_ranks(int dimV, int k, const Field &f) {
  const SparseMatrix sigma = rotation_matrix(dimV, k, f);
  const std::size_t dim = sigma.rows();
  SparseMatrix m = SparseMatrix::identity(dim, f);
  for (Index c = 0; c < dim; ++c)
    m.set_column(c, m.column(c).plus(sigma.column(c).scaled(Scalar(-1), f), f));
  const std::size_t r = rank(m);
  return {dim - r, dim - r};
}

} // namespace ncg
