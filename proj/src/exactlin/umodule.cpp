#include "ncg/exactlin.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace ncg {

UTruncation::UTruncation(int n) : n_(n) {
  if (n < 1)
    throw ContractViolation("u-truncation order must be >= 1, got " + std::to_string(n));
}

std::size_t UModuleReport::dimension() const {
  std::size_t d = free_rank * static_cast<std::size_t>(truncation);
  for (int a : torsion_blocks)
    d += static_cast<std::size_t>(a);
  return d;
}

UMatrix::UMatrix(std::size_t rows, std::size_t cols, Field f, UTruncation n)
    : rows_(rows), cols_(cols), field_(f) {
  for (int i = 0; i < n.order(); ++i)
    coeffs_.emplace_back(rows, cols, f);
}

void UMatrix::set_coefficient(int power, SparseMatrix m) {
  if (power < 0 || power >= order())
    throw StructuralError("u-power " + std::to_string(power) + " outside truncation");
  if (m.rows() != rows_ || m.cols() != cols_)
    throw StructuralError("u-coefficient has the wrong shape");
  if (!(m.field() == field_))
    throw StructuralError("u-coefficient over the wrong field");
  coeffs_[static_cast<std::size_t>(power)] = std::move(m);
}

SparseMatrix UMatrix::expand() const {
  const std::size_t n = coeffs_.size();
  SparseMatrix out(rows_ * n, cols_ * n, field_);
  for (std::size_t g = 0; g < cols_; ++g)
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<Entry> es;
      for (std::size_t m = 0; m + j < n; ++m)
        for (const auto &e : coeffs_[m].column(static_cast<Index>(g)).entries())
          es.push_back({static_cast<Index>(e.index * n + j + m), e.value});
      out.set_column(static_cast<Index>(g * n + j), SparseVec::from_pairs(std::move(es), field_));
    }
  return out;
}

namespace {

SparseVec shift_u(const SparseVec &v, std::size_t n) {
  std::vector<Entry> es;
  for (const auto &e : v.entries())
    if (e.index % n + 1 < n)
      es.push_back({e.index + 1, e.value});
  SparseVec r;
  return es.empty() ? r : SparseVec::from_pairs(std::move(es), Field::rationals());
}

std::vector<SparseVec> columns_of(const SparseMatrix &m) {
  std::vector<SparseVec> out;
  for (Index c = 0; c < m.cols(); ++c)
    if (!m.column(c).empty())
      out.push_back(m.column(c));
  return out;
}

void check_composite(const UMatrix &first, const UMatrix &second, std::size_t pos) {
  const int n = first.order();
  for (int m = 0; m < n; ++m) {
    SparseMatrix acc(second.rows(), first.cols(), first.field());
    for (int a = 0; a <= m; ++a)
      acc = acc.plus(second.coefficient(a).multiply(first.coefficient(m - a)));
    if (auto t = acc.first_nonzero())
      throw ContractViolation("differentials do not compose to zero after position " +
                              std::to_string(pos) + ": entry (" + std::to_string(t->row) + ", " +
                              std::to_string(t->col) + ") of the u^" + std::to_string(m) +
                              " coefficient is " + to_text(t->value));
  }
}

} // namespace

std::vector<UModuleReport> u_module_decompose(const UComplex &c) {
  const std::size_t positions = c.ranks.size();
  const std::size_t n = static_cast<std::size_t>(c.truncation.order());
  const std::size_t expected = c.periodic ? positions : (positions == 0 ? 0 : positions - 1);
  if (c.differentials.size() != expected)
    throw StructuralError("complex has " + std::to_string(c.differentials.size()) +
                          " differentials, expected " + std::to_string(expected));
  for (std::size_t i = 0; i < c.differentials.size(); ++i) {
    const auto &d = c.differentials[i];
    const std::size_t src = c.ranks[i], dst = c.ranks[(i + 1) % positions];
    if (d.cols() != src || d.rows() != dst)
      throw StructuralError("differential " + std::to_string(i) + " has shape " +
                            std::to_string(d.rows()) + "x" + std::to_string(d.cols()) +
                            ", expected " + std::to_string(dst) + "x" + std::to_string(src));
    if (static_cast<std::size_t>(d.order()) != n || !(d.field() == c.field))
      throw StructuralError("differential " + std::to_string(i) + " has the wrong truncation or field");
  }
  for (std::size_t i = 0; i < c.differentials.size(); ++i) {
    if (!c.periodic && i + 1 >= c.differentials.size())
      break;
    check_composite(c.differentials[i], c.differentials[(i + 1) % c.differentials.size()], i);
  }

  std::vector<UModuleReport> reports;
  for (std::size_t p = 0; p < positions; ++p) {
    const std::size_t dim = c.ranks[p] * n;
    std::vector<SparseVec> cycles;
    const bool has_out = c.periodic || p + 1 < positions;
    if (has_out && !c.differentials.empty()) {
      cycles = kernel_basis(c.differentials[p].expand());
    } else {
      for (std::size_t i = 0; i < dim; ++i)
        cycles.push_back(SparseVec::unit(static_cast<Index>(i)));
    }
    std::vector<SparseVec> boundaries;
    const bool has_in = c.periodic || p > 0;
    if (has_in && !c.differentials.empty())
      boundaries = columns_of(c.differentials[(p + positions - 1) % positions].expand());
    const std::size_t rank_b = span_rank(boundaries, dim, c.field);

    // h[j] = dim u^j H
    std::vector<long long> h(n + 2, 0);
    std::vector<SparseVec> shifted = cycles;
    for (std::size_t j = 0; j <= n; ++j) {
      std::vector<SparseVec> all = shifted;
      all.insert(all.end(), boundaries.begin(), boundaries.end());
      h[j] = static_cast<long long>(span_rank(all, dim, c.field)) - static_cast<long long>(rank_b);
      for (auto &v : shifted)
        v = shift_u(v, n);
    }
    UModuleReport rep;
    rep.truncation = c.truncation.order();
    for (std::size_t a = 1; a <= n; ++a) {
      const long long at_least = h[a - 1] - h[a];
      const long long more = h[a] - h[a + 1];
      const long long exact = at_least - more;
      if (exact < 0)
        throw ContractViolation("inconsistent Jordan type of u");
      if (a == n)
        rep.free_rank = static_cast<std::size_t>(exact);
      else
        for (long long k = 0; k < exact; ++k)
          rep.torsion_blocks.push_back(static_cast<int>(a));
    }
    std::sort(rep.torsion_blocks.rbegin(), rep.torsion_blocks.rend());
    for (int a : rep.torsion_blocks)
      if (a > rep.truncation - 2)
        rep.saturated_at_N = false;
    reports.push_back(std::move(rep));
  }
  return reports;
}

GradedUReport u_persistence(const GradedUComplex &c) {
  const int lo = c.lo, top = c.top;
  const int n = c.truncation;
  if (top < lo)
    throw ContractViolation("graded complex has no trusted degrees");
  const std::size_t span = static_cast<std::size_t>(top - lo + 2);
  if (c.dims.size() != span || c.diff.size() != span || c.umap.size() != span)
    throw StructuralError("graded complex arrays must cover degrees lo..top+1");
  auto idx = [&](int d) { return static_cast<std::size_t>(d - lo); };

  std::vector<std::vector<SparseVec>> cycles(span - 1), bounds(span - 1);
  std::vector<std::size_t> rank_b(span - 1);
  GradedUReport out;
  out.truncation = n;
  out.lo = lo;
  out.top = top;
  for (int d = lo; d <= top; ++d) {
    const auto &dd = c.diff[idx(d)];
    if (dd.cols() != c.dims[idx(d)])
      throw StructuralError("differential out of degree " + std::to_string(d) + " has wrong shape");
    if (dd.rows() == 0) {
      for (std::size_t i = 0; i < c.dims[idx(d)]; ++i)
        cycles[idx(d)].push_back(SparseVec::unit(static_cast<Index>(i)));
    } else {
      cycles[idx(d)] = kernel_basis(dd);
    }
    bounds[idx(d)] = columns_of(c.diff[idx(d + 1)]);
    rank_b[idx(d)] = span_rank(bounds[idx(d)], c.dims[idx(d)], c.field);
    out.homology_dims.push_back(cycles[idx(d)].size() - rank_b[idx(d)]);
  }

  std::map<std::pair<int, int>, long long> memo;
  std::function<long long(int, int)> r = [&](int s, int t) -> long long {
    if (s > top || t < lo || s < t || ((s - t) % 2) != 0)
      return 0;
    const int j = (s - t) / 2;
    if (j >= n)
      return 0;
    auto key = std::make_pair(s, t);
    if (auto it = memo.find(key); it != memo.end())
      return it->second;
    std::vector<SparseVec> vs = cycles[idx(s)];
    for (int step = 0, d = s; step < j; ++step, d -= 2)
      for (auto &v : vs)
        v = c.umap[idx(d)].apply(v);
    vs.insert(vs.end(), bounds[idx(t)].begin(), bounds[idx(t)].end());
    const long long val = static_cast<long long>(span_rank(vs, c.dims[idx(t)], c.field)) -
                          static_cast<long long>(rank_b[idx(t)]);
    memo[key] = val;
    return val;
  };

  for (int s = top; s >= lo; --s)
    for (int a = 1; a <= n; ++a) {
      const int t = s - 2 * (a - 1);
      if (t < lo)
        break;
      const long long m = r(s, t) - r(s, t - 2) - r(s + 2, t) + r(s + 2, t - 2);
      if (m < 0)
        throw ContractViolation("negative interval multiplicity at degree " + std::to_string(s));
      for (long long k = 0; k < m; ++k)
        out.intervals.push_back({s, a, a == n || s + 2 <= top});
    }
  return out;
}

} // namespace ncg
