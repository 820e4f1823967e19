#include "ncg/sparse.hpp"

#include <algorithm>
#include <string>

namespace ncg {

Scalar SparseVec::at(Index i) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), i,
                             [](const Entry &e, Index k) { return e.index < k; });
  if (it != entries_.end() && it->index == i)
    return it->value;
  return Scalar(0);
}

SparseVec SparseVec::from_pairs(std::vector<Entry> pairs, const Field &f) {
  std::sort(pairs.begin(), pairs.end(),
            [](const Entry &a, const Entry &b) { return a.index < b.index; });
  SparseVec v;
  for (auto &e : pairs) {
    if (!v.entries_.empty() && v.entries_.back().index == e.index)
      v.entries_.back().value += e.value;
    else
      v.entries_.push_back(std::move(e));
  }
  std::vector<Entry> kept;
  kept.reserve(v.entries_.size());
  for (auto &e : v.entries_) {
    Scalar n = f.normalize(e.value);
    if (n != 0)
      kept.push_back({e.index, std::move(n)});
  }
  v.entries_ = std::move(kept);
  return v;
}

SparseVec SparseVec::plus(const SparseVec &o, const Field &f) const {
  SparseVec r;
  std::size_t i = 0, j = 0;
  while (i < entries_.size() || j < o.entries_.size()) {
    if (j == o.entries_.size() || (i < entries_.size() && entries_[i].index < o.entries_[j].index)) {
      r.entries_.push_back(entries_[i++]);
    } else if (i == entries_.size() || o.entries_[j].index < entries_[i].index) {
      r.entries_.push_back(o.entries_[j++]);
    } else {
      Scalar s = f.add(entries_[i].value, o.entries_[j].value);
      if (s != 0)
        r.entries_.push_back({entries_[i].index, std::move(s)});
      ++i;
      ++j;
    }
  }
  return r;
}

SparseVec SparseVec::scaled(const Scalar &c, const Field &f) const {
  SparseVec r;
  if (f.is_zero(c))
    return r;
  r.entries_.reserve(entries_.size());
  for (const auto &e : entries_)
    r.entries_.push_back({e.index, f.mul(e.value, c)});
  return r;
}

bool operator==(const SparseVec &a, const SparseVec &b) {
  if (a.entries_.size() != b.entries_.size())
    return false;
  for (std::size_t i = 0; i < a.entries_.size(); ++i)
    if (a.entries_[i].index != b.entries_[i].index || a.entries_[i].value != b.entries_[i].value)
      return false;
  return true;
}

void VecBuilder::add(Index i, const Scalar &v) {
  auto [it, inserted] = acc_.try_emplace(i, v);
  if (!inserted)
    it->second += v;
}

SparseVec VecBuilder::finish() const {
  std::vector<Entry> pairs;
  pairs.reserve(acc_.size());
  for (const auto &[i, v] : acc_)
    pairs.push_back({i, v});
  return SparseVec::from_pairs(std::move(pairs), field_);
}

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols, Field f)
    : rows_(rows), cols_(cols), field_(f), columns_(cols) {}

SparseMatrix SparseMatrix::from_triplets(std::size_t rows, std::size_t cols, Field f,
                                         const std::vector<Triplet> &ts) {
  std::vector<std::vector<Entry>> per_col(cols);
  for (const auto &t : ts) {
    if (t.row >= rows || t.col >= cols)
      throw StructuralError("entry (" + std::to_string(t.row) + ", " + std::to_string(t.col) +
                            ") outside a " + std::to_string(rows) + "x" + std::to_string(cols) +
                            " matrix");
    per_col[t.col].push_back({t.row, t.value});
  }
  SparseMatrix m(rows, cols, f);
  for (std::size_t c = 0; c < cols; ++c)
    m.columns_[c] = SparseVec::from_pairs(std::move(per_col[c]), f);
  return m;
}

SparseMatrix SparseMatrix::from_rows(std::size_t rows, std::size_t cols, Field f,
                                     const std::vector<std::vector<Scalar>> &dense) {
  if (dense.size() != rows)
    throw StructuralError("row count mismatch in dense matrix literal");
  std::vector<Triplet> ts;
  for (std::size_t r = 0; r < rows; ++r) {
    if (dense[r].size() != cols)
      throw StructuralError("column count mismatch in dense matrix literal");
    for (std::size_t c = 0; c < cols; ++c)
      if (dense[r][c] != 0)
        ts.push_back({static_cast<Index>(r), static_cast<Index>(c), dense[r][c]});
  }
  return from_triplets(rows, cols, f, ts);
}

SparseMatrix SparseMatrix::identity(std::size_t n, Field f) {
  SparseMatrix m(n, n, f);
  for (std::size_t i = 0; i < n; ++i)
    m.columns_[i] = SparseVec::unit(static_cast<Index>(i));
  return m;
}

std::size_t SparseMatrix::nnz() const {
  std::size_t n = 0;
  for (const auto &c : columns_)
    n += c.size();
  return n;
}

void SparseMatrix::set_column(Index c, SparseVec v) {
  if (c >= cols_)
    throw StructuralError("column index " + std::to_string(c) + " out of range");
  if (!v.empty() && v.entries().back().index >= rows_)
    throw StructuralError("row index " + std::to_string(v.entries().back().index) +
                          " out of range in column " + std::to_string(c));
  columns_[c] = std::move(v);
}

SparseMatrix SparseMatrix::transpose() const {
  std::vector<std::vector<Entry>> per_row(rows_);
  for (std::size_t c = 0; c < cols_; ++c)
    for (const auto &e : columns_[c].entries())
      per_row[e.index].push_back({static_cast<Index>(c), e.value});
  SparseMatrix t(cols_, rows_, field_);
  for (std::size_t r = 0; r < rows_; ++r)
    t.columns_[r] = SparseVec::from_pairs(std::move(per_row[r]), field_);
  return t;
}

SparseVec SparseMatrix::apply(const SparseVec &x) const {
  std::vector<Entry> acc;
  for (const auto &e : x.entries()) {
    if (e.index >= cols_)
      throw StructuralError("vector index out of range in matrix application");
    for (const auto &m : columns_[e.index].entries())
      acc.push_back({m.index, m.value * e.value});
  }
  return SparseVec::from_pairs(std::move(acc), field_);
}

SparseMatrix SparseMatrix::multiply(const SparseMatrix &rhs) const {
  if (cols_ != rhs.rows_)
    throw StructuralError("dimension mismatch in matrix product: " + std::to_string(rows_) + "x" +
                          std::to_string(cols_) + " times " + std::to_string(rhs.rows_) + "x" +
                          std::to_string(rhs.cols_));
  if (!(field_ == rhs.field_))
    throw StructuralError("field mismatch in matrix product");
  SparseMatrix out(rows_, rhs.cols_, field_);
  for (std::size_t c = 0; c < rhs.cols_; ++c)
    out.columns_[c] = apply(rhs.columns_[c]);
  return out;
}

SparseMatrix SparseMatrix::plus(const SparseMatrix &rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
    throw StructuralError("dimension mismatch in matrix sum");
  SparseMatrix out(rows_, cols_, field_);
  for (std::size_t c = 0; c < cols_; ++c)
    out.columns_[c] = columns_[c].plus(rhs.columns_[c], field_);
  return out;
}

bool SparseMatrix::is_zero() const {
  for (const auto &c : columns_)
    if (!c.empty())
      return false;
  return true;
}

std::optional<Triplet> SparseMatrix::first_nonzero() const {
  for (std::size_t c = 0; c < cols_; ++c)
    if (!columns_[c].empty()) {
      const auto &e = columns_[c].entries().front();
      return Triplet{e.index, static_cast<Index>(c), e.value};
    }
  return std::nullopt;
}

SparseMatrix SparseMatrix::reinterpret(const Field &f) const {
  SparseMatrix out(rows_, cols_, f);
  for (std::size_t c = 0; c < cols_; ++c) {
    std::vector<Entry> es(columns_[c].entries().begin(), columns_[c].entries().end());
    for (const auto &e : es)
      if (!f.contains(e.value))
        throw StructuralError("entry " + to_text(e.value) + " is not an element of " + f.name());
    out.columns_[c] = SparseVec::from_pairs(std::move(es), f);
  }
  return out;
}

std::vector<SparseVec> SparseMatrix::row_vectors() const {
  SparseMatrix t = transpose();
  std::vector<SparseVec> rows;
  rows.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    rows.push_back(t.columns_[r]);
  return rows;
}

} // namespace ncg
