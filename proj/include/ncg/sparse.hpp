#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "ncg/field.hpp"

namespace ncg {

using Index = std::uint32_t;

struct Entry {
  Index index;
  Scalar value;
};

/// Sparse vector: entries sorted by index, no stored zeros.
class SparseVec {
public:
  SparseVec() = default;

  const std::vector<Entry> &entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  Scalar at(Index i) const;

  /// Builds from unsorted (index, value) pairs, summing duplicates in F.
  static SparseVec from_pairs(std::vector<Entry> pairs, const Field &f);
  static SparseVec unit(Index i) { SparseVec v; v.entries_.push_back({i, Scalar(1)}); return v; }

  SparseVec plus(const SparseVec &o, const Field &f) const;
  SparseVec scaled(const Scalar &c, const Field &f) const;

  friend bool operator==(const SparseVec &a, const SparseVec &b);

private:
  std::vector<Entry> entries_;
};

/// Accumulator for building a sparse vector term by term.
class VecBuilder {
public:
  explicit VecBuilder(const Field &f) : field_(f) {}
  void add(Index i, const Scalar &v);
  SparseVec finish() const;
  bool empty() const { return acc_.empty(); }

private:
  Field field_;
  std::map<Index, Scalar> acc_;
};

struct Triplet {
  Index row;
  Index col;
  Scalar value;
};

/// Column-compressed sparse matrix over a fixed field. Entries are
/// normalized into the field and zero entries are never stored.
class SparseMatrix {
public:
  SparseMatrix(std::size_t rows, std::size_t cols, Field f);

  static SparseMatrix from_triplets(std::size_t rows, std::size_t cols, Field f,
                                    const std::vector<Triplet> &ts);
  static SparseMatrix from_rows(std::size_t rows, std::size_t cols, Field f,
                                const std::vector<std::vector<Scalar>> &dense);
  static SparseMatrix identity(std::size_t n, Field f);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Field &field() const { return field_; }
  std::size_t nnz() const;

  void set_column(Index c, SparseVec v);
  const SparseVec &column(Index c) const { return columns_.at(c); }
  Scalar at(Index r, Index c) const { return columns_.at(c).at(r); }

  SparseMatrix transpose() const;
  /// this * rhs
  SparseMatrix multiply(const SparseMatrix &rhs) const;
  SparseMatrix plus(const SparseMatrix &rhs) const;
  SparseVec apply(const SparseVec &x) const;
  bool is_zero() const;
  std::optional<Triplet> first_nonzero() const;
  /// Re-reads every entry in another field (entries must be representable).
  SparseMatrix reinterpret(const Field &f) const;
  /// Rows of the matrix as sparse vectors.
  std::vector<SparseVec> row_vectors() const;

private:
  std::size_t rows_;
  std::size_t cols_;
  Field field_;
  std::vector<SparseVec> columns_;
};

} // namespace ncg
