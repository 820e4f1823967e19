#include "ncg/exactlin.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <utility>

namespace ncg {
namespace {

// Fraction-free arithmetic on integer rows (the Q path).
struct IntegerRing {
  using Elem = mpz_class;

  static bool is_zero(const Elem &e) { return e == 0; }
  static std::size_t weight(const Elem &e) { return mpz_sizeinbase(e.get_mpz_t(), 2); }
};

// Residues mod p (the F_p path).
struct ResidueRing {
  using Elem = std::uint64_t;
  std::uint64_t p;

  static bool is_zero(Elem e) { return e == 0; }
  static std::size_t weight(Elem) { return 0; }
  Elem inv(Elem a) const {
    // p < 2^31 so the products below fit in 64 bits.
    std::uint64_t result = 1, base = a % p, e = p - 2;
    while (e) {
      if (e & 1)
        result = result * base % p;
      base = base * base % p;
      e >>= 1;
    }
    return result;
  }
};

template <class E> struct Row {
  std::vector<Index> cols;
  std::vector<E> vals;

  bool empty() const { return cols.empty(); }
  std::size_t size() const { return cols.size(); }
  const E *find(Index c) const {
    auto it = std::lower_bound(cols.begin(), cols.end(), c);
    if (it == cols.end() || *it != c)
      return nullptr;
    return &vals[static_cast<std::size_t>(it - cols.begin())];
  }
};

using IntRow = Row<mpz_class>;
using ResRow = Row<std::uint64_t>;

void make_primitive(IntRow &r) {
  if (r.empty())
    return;
  mpz_class g = 0;
  for (const auto &v : r.vals) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g == 1)
      break;
  }
  if (r.vals.front() < 0)
    g = -g;
  if (g != 1)
    for (auto &v : r.vals)
      mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
}

// target <- a * target - b * pivot where a = pivot[c], b = target[c]; the
// column c cancels.
void combine(IntRow &target, const IntRow &pivot, Index c, const IntegerRing &) {
  mpz_class a = *pivot.find(c);
  mpz_class b = *target.find(c);
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  a /= g;
  b /= g;
  IntRow out;
  out.cols.reserve(target.size() + pivot.size());
  out.vals.reserve(target.size() + pivot.size());
  std::size_t i = 0, j = 0;
  while (i < target.size() || j < pivot.size()) {
    if (j == pivot.size() || (i < target.size() && target.cols[i] < pivot.cols[j])) {
      out.cols.push_back(target.cols[i]);
      out.vals.push_back(a * target.vals[i]);
      ++i;
    } else if (i == target.size() || pivot.cols[j] < target.cols[i]) {
      out.cols.push_back(pivot.cols[j]);
      out.vals.push_back(-b * pivot.vals[j]);
      ++j;
    } else {
      mpz_class v = a * target.vals[i] - b * pivot.vals[j];
      if (v != 0) {
        out.cols.push_back(target.cols[i]);
        out.vals.push_back(std::move(v));
      }
      ++i;
      ++j;
    }
  }
  make_primitive(out);
  target = std::move(out);
}

// Pivot rows over F_p are scaled to a leading 1 at the pivot column.
void combine(ResRow &target, const ResRow &pivot, Index c, const ResidueRing &ring) {
  const std::uint64_t p = ring.p;
  const std::uint64_t b = *target.find(c);
  ResRow out;
  out.cols.reserve(target.size() + pivot.size());
  out.vals.reserve(target.size() + pivot.size());
  std::size_t i = 0, j = 0;
  while (i < target.size() || j < pivot.size()) {
    if (j == pivot.size() || (i < target.size() && target.cols[i] < pivot.cols[j])) {
      out.cols.push_back(target.cols[i]);
      out.vals.push_back(target.vals[i]);
      ++i;
    } else if (i == target.size() || pivot.cols[j] < target.cols[i]) {
      out.cols.push_back(pivot.cols[j]);
      out.vals.push_back((p - b * pivot.vals[j] % p) % p);
      ++j;
    } else {
      std::uint64_t v = (target.vals[i] + p - b * pivot.vals[j] % p) % p;
      if (v != 0) {
        out.cols.push_back(target.cols[i]);
        out.vals.push_back(v);
      }
      ++i;
      ++j;
    }
  }
  target = std::move(out);
}

void prepare_pivot(IntRow &, Index, const IntegerRing &) {}

void prepare_pivot(ResRow &r, Index c, const ResidueRing &ring) {
  const std::uint64_t s = ring.inv(*r.find(c));
  for (auto &v : r.vals)
    v = v * s % ring.p;
}

struct Pivot {
  std::size_t row;
  Index col;
};

template <class Ring> class Eliminator {
public:
  using E = typename Ring::Elem;

  Eliminator(std::size_t ncols, std::vector<Row<E>> rows, Ring ring)
      : ncols_(ncols), rows_(std::move(rows)), ring_(ring), active_(rows_.size(), true),
        count_(ncols, 0), holders_(ncols), stamp_(ncols, 0), old_count_(ncols, 0) {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (rows_[r].empty())
        active_[r] = false;
      for (Index c : rows_[r].cols) {
        ++count_[c];
        holders_[c].push_back(static_cast<std::uint32_t>(r));
      }
    }
    for (Index c = 0; c < ncols_; ++c)
      if (count_[c] > 0)
        queue_.insert({count_[c], c});
  }

  void forward() {
    while (!queue_.empty()) {
      const Index c = queue_.begin()->second;
      std::vector<std::uint32_t> cand;
      for (std::uint32_t r : holders_[c])
        if (active_[r] && rows_[r].find(c) != nullptr)
          cand.push_back(r);
      std::sort(cand.begin(), cand.end());
      cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
      holders_[c].clear();

      std::uint32_t best = cand.front();
      for (std::uint32_t r : cand) {
        const auto &a = rows_[r];
        const auto &b = rows_[best];
        const auto ka = std::make_pair(a.size(), Ring::weight(*a.find(c)));
        const auto kb = std::make_pair(b.size(), Ring::weight(*b.find(c)));
        if (ka < kb)
          best = r;
      }

      begin_update();
      active_[best] = false;
      for (Index col : rows_[best].cols)
        bump(col, -1);
      prepare_pivot(rows_[best], c, ring_);

      for (std::uint32_t r : cand) {
        if (r == best)
          continue;
        auto &row = rows_[r];
        for (Index col : row.cols)
          bump(col, -1);
        std::vector<Index> before = row.cols;
        combine(row, rows_[best], c, ring_);
        for (Index col : row.cols) {
          bump(col, +1);
          if (!std::binary_search(before.begin(), before.end(), col))
            holders_[col].push_back(r);
        }
        if (row.empty())
          active_[r] = false;
      }
      end_update();
      pivots_.push_back({best, c});
    }
  }

  // Clears every pivot column from the earlier pivot rows (reduced form).
  void backward() {
    std::vector<std::vector<std::size_t>> holders(ncols_);
    for (std::size_t k = 0; k < pivots_.size(); ++k)
      for (Index col : rows_[pivots_[k].row].cols)
        holders[col].push_back(k);
    for (std::size_t k = pivots_.size(); k-- > 0;) {
      const Index c = pivots_[k].col;
      for (std::size_t i : holders[c]) {
        if (i >= k)
          continue;
        combine(rows_[pivots_[i].row], rows_[pivots_[k].row], c, ring_);
      }
    }
  }

  const std::vector<Pivot> &pivots() const { return pivots_; }
  const Row<E> &row(std::size_t r) const { return rows_[r]; }

private:
  void begin_update() { ++epoch_; touched_.clear(); }

  void bump(Index col, int delta) {
    if (stamp_[col] != epoch_) {
      stamp_[col] = epoch_;
      old_count_[col] = count_[col];
      touched_.push_back(col);
    }
    count_[col] = static_cast<std::size_t>(static_cast<long long>(count_[col]) + delta);
  }

  void end_update() {
    for (Index col : touched_) {
      if (old_count_[col] == count_[col])
        continue;
      if (old_count_[col] > 0)
        queue_.erase({old_count_[col], col});
      if (count_[col] > 0)
        queue_.insert({count_[col], col});
    }
  }

  std::size_t ncols_;
  std::vector<Row<E>> rows_;
  Ring ring_;
  std::vector<bool> active_;
  std::vector<std::size_t> count_;
  std::vector<std::vector<std::uint32_t>> holders_;
  std::set<std::pair<std::size_t, Index>> queue_;
  std::vector<Pivot> pivots_;
  std::uint64_t epoch_ = 0;
  std::vector<std::uint64_t> stamp_;
  std::vector<std::size_t> old_count_;
  std::vector<Index> touched_;
};

IntRow to_integer_row(const SparseVec &v) {
  IntRow r;
  mpz_class l = 1;
  for (const auto &e : v.entries())
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), e.value.get_den_mpz_t());
  for (const auto &e : v.entries()) {
    r.cols.push_back(e.index);
    r.vals.push_back(e.value.get_num() * (l / e.value.get_den()));
  }
  make_primitive(r);
  return r;
}

ResRow to_residue_row(const SparseVec &v, const Field &f) {
  ResRow r;
  for (const auto &e : v.entries()) {
    std::uint64_t x = f.residue(e.value);
    if (x != 0) {
      r.cols.push_back(e.index);
      r.vals.push_back(x);
    }
  }
  return r;
}

void check_bounds(const std::vector<SparseVec> &vs, std::size_t dim) {
  for (const auto &v : vs)
    if (!v.empty() && v.entries().back().index >= dim)
      throw StructuralError("vector index " + std::to_string(v.entries().back().index) +
                            " exceeds dimension " + std::to_string(dim));
}

// Runs elimination on the given rows and hands back pivot columns plus the
// reduced rows normalized to a leading 1, as field elements.
struct Reduced {
  std::vector<Index> pivot_cols;
  std::vector<SparseVec> rows;
};

Reduced reduce_rows(const std::vector<SparseVec> &vs, std::size_t dim, const Field &f, bool full) {
  check_bounds(vs, dim);
  Reduced out;
  if (f.is_prime()) {
    std::vector<ResRow> rows;
    rows.reserve(vs.size());
    for (const auto &v : vs)
      rows.push_back(to_residue_row(v, f));
    Eliminator<ResidueRing> el(dim, std::move(rows), ResidueRing{f.characteristic()});
    el.forward();
    if (full)
      el.backward();
    for (const auto &pv : el.pivots()) {
      out.pivot_cols.push_back(pv.col);
      if (!full)
        continue;
      std::vector<Entry> es;
      const auto &row = el.row(pv.row);
      for (std::size_t i = 0; i < row.size(); ++i)
        es.push_back({row.cols[i], Scalar(mpz_class(static_cast<unsigned long>(row.vals[i])))});
      out.rows.push_back(SparseVec::from_pairs(std::move(es), f));
    }
  } else {
    std::vector<IntRow> rows;
    rows.reserve(vs.size());
    for (const auto &v : vs)
      rows.push_back(to_integer_row(v));
    Eliminator<IntegerRing> el(dim, std::move(rows), IntegerRing{});
    el.forward();
    if (full)
      el.backward();
    for (const auto &pv : el.pivots()) {
      out.pivot_cols.push_back(pv.col);
      if (!full)
        continue;
      const auto &row = el.row(pv.row);
      const mpz_class lead = *row.find(pv.col);
      std::vector<Entry> es;
      for (std::size_t i = 0; i < row.size(); ++i)
        es.push_back({row.cols[i], Scalar(row.vals[i], lead)});
      out.rows.push_back(SparseVec::from_pairs(std::move(es), f));
    }
  }
  return out;
}

} // namespace

std::size_t span_rank(const std::vector<SparseVec> &vectors, std::size_t dim, const Field &f) {
  return reduce_rows(vectors, dim, f, false).pivot_cols.size();
}

std::size_t rank(const SparseMatrix &m) {
  // Columns of m as rows of the elimination; rank is transpose-invariant.
  std::vector<SparseVec> cols;
  cols.reserve(m.cols());
  for (Index c = 0; c < m.cols(); ++c)
    cols.push_back(m.column(c));
  return span_rank(cols, m.rows(), m.field());
}

std::size_t rank(const SparseMatrix &m, const Field &f) {
  if (m.field() == f)
    return rank(m);
  return rank(m.reinterpret(f));
}

std::vector<SparseVec> kernel_basis(const SparseMatrix &m) {
  const Field &f = m.field();
  Reduced red = reduce_rows(m.row_vectors(), m.cols(), f, true);
  std::vector<bool> is_pivot(m.cols(), false);
  for (Index c : red.pivot_cols)
    is_pivot[c] = true;
  std::vector<std::vector<Entry>> acc(m.cols());
  for (std::size_t i = 0; i < red.rows.size(); ++i) {
    const Index pc = red.pivot_cols[i];
    for (const auto &e : red.rows[i].entries())
      if (!is_pivot[e.index])
        acc[e.index].push_back({pc, f.neg(e.value)});
  }
  std::vector<SparseVec> basis;
  for (Index c = 0; c < m.cols(); ++c) {
    if (is_pivot[c])
      continue;
    acc[c].push_back({c, Scalar(1)});
    basis.push_back(SparseVec::from_pairs(std::move(acc[c]), f));
  }
  return basis;
}

std::vector<SparseVec> kernel_basis(const SparseMatrix &m, const Field &f) {
  if (m.field() == f)
    return kernel_basis(m);
  return kernel_basis(m.reinterpret(f));
}

Echelon::Echelon(std::size_t dim, Field f, const std::vector<SparseVec> &vectors)
    : dim_(dim), field_(f), pivot_of_col_(dim, -1) {
  Reduced red = reduce_rows(vectors, dim, f, true);
  std::vector<std::size_t> order(red.pivot_cols.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return red.pivot_cols[a] < red.pivot_cols[b]; });
  for (std::size_t i : order) {
    pivot_of_col_[red.pivot_cols[i]] = static_cast<int>(pivot_cols_.size());
    pivot_cols_.push_back(red.pivot_cols[i]);
    rows_.push_back(std::move(red.rows[i]));
  }
}

std::vector<Index> Echelon::pivot_columns() const { return pivot_cols_; }

std::vector<Index> Echelon::free_columns() const {
  std::vector<Index> out;
  for (Index c = 0; c < dim_; ++c)
    if (pivot_of_col_[c] < 0)
      out.push_back(c);
  return out;
}

SparseVec Echelon::reduce(const SparseVec &v) const {
  if (!v.empty() && v.entries().back().index >= dim_)
    throw StructuralError("vector index exceeds echelon dimension");
  SparseVec r = SparseVec::from_pairs({v.entries().begin(), v.entries().end()}, field_);
  for (const auto &e : v.entries()) {
    const int k = pivot_of_col_[e.index];
    if (k < 0)
      continue;
    r = r.plus(rows_[static_cast<std::size_t>(k)].scaled(field_.neg(e.value), field_), field_);
  }
  return r;
}

} // namespace ncg
