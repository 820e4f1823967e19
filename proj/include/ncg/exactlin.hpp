#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ncg/field.hpp"
#include "ncg/sparse.hpp"

namespace ncg {

// ---------------------------------------------------------------------------
// Exact elimination over Q and F_p.
//
// Over Q rows are cleared to primitive integer vectors and eliminated
// fraction-free; over F_p elimination runs on machine residues. Pivots are
// chosen Markowitz-style: the column with the fewest active rows, then the
// shortest row in it, ties broken by index so results are reproducible.
// ---------------------------------------------------------------------------

std::size_t rank(const SparseMatrix &m);
/// Rank of m with its entries read in f.
std::size_t rank(const SparseMatrix &m, const Field &f);

/// Basis of {x : m x = 0}. One vector per free column, in increasing order of
/// that column; each has a 1 at its free column.
std::vector<SparseVec> kernel_basis(const SparseMatrix &m);
std::vector<SparseVec> kernel_basis(const SparseMatrix &m, const Field &f);

/// Rank of the span of the given vectors in F^dim.
std::size_t span_rank(const std::vector<SparseVec> &vectors, std::size_t dim, const Field &f);

/// Reduced row echelon form of a set of vectors, used for membership tests
/// and for canonical coordinates on quotient spaces.
class Echelon {
public:
  Echelon(std::size_t dim, Field f, const std::vector<SparseVec> &vectors);

  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return rows_.size(); }
  const Field &field() const { return field_; }
  /// Pivot columns in increasing order.
  std::vector<Index> pivot_columns() const;
  /// Columns that are not pivots; these index a basis of the quotient.
  std::vector<Index> free_columns() const;
  /// v minus its projection onto the span along the pivot coordinates.
  /// The result is supported on free columns only.
  SparseVec reduce(const SparseVec &v) const;
  bool contains(const SparseVec &v) const { return reduce(v).empty(); }

private:
  std::size_t dim_;
  Field field_;
  std::vector<Index> pivot_cols_;
  std::vector<SparseVec> rows_; // rows_[i] has a 1 at pivot_cols_[i]
  std::vector<int> pivot_of_col_;
};

// ---------------------------------------------------------------------------
// Finite complexes over k[u]/u^N.
// ---------------------------------------------------------------------------

/// Truncation order of the formal variable u.
class UTruncation {
public:
  explicit UTruncation(int n);
  int order() const { return n_; }

private:
  int n_;
};

/// Homology of a k[u]/u^N complex at one position:
/// (k[u]/u^N)^free_rank  +  sum_i k[u]/u^{torsion_blocks[i]}.
struct UModuleReport {
  int truncation = 1;
  std::size_t free_rank = 0;
  std::vector<int> torsion_blocks; ///< sorted, descending
  /// Every torsion block leaves head-room below the truncation
  /// (size <= N - 2), so free summands are separated from long torsion.
  bool saturated_at_N = true;
  /// Blocks that could not be certified (window edge), excluded from the above.
  std::vector<int> unstable_blocks;

  /// Dimension over the base field of the certified part.
  std::size_t dimension() const;
};

/// A map between free k[u]/u^N-modules, stored as its u-adic coefficients
/// M = M_0 + u M_1 + ... + u^{N-1} M_{N-1}.
class UMatrix {
public:
  UMatrix(std::size_t rows, std::size_t cols, Field f, UTruncation n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  int order() const { return static_cast<int>(coeffs_.size()); }
  const Field &field() const { return field_; }
  const SparseMatrix &coefficient(int power) const { return coeffs_.at(power); }
  void set_coefficient(int power, SparseMatrix m);

  /// The k-linear map on the underlying k-spaces, with basis (generator g,
  /// u-power j) flattened to g * N + j.
  SparseMatrix expand() const;

private:
  std::size_t rows_;
  std::size_t cols_;
  Field field_;
  std::vector<SparseMatrix> coeffs_;
};

/// A complex of free k[u]/u^N-modules. Position i carries ranks[i]
/// generators; differentials[i] maps position i to position i+1 (mod the
/// number of positions when periodic).
struct UComplex {
  Field field = Field::rationals();
  UTruncation truncation{1};
  std::vector<std::size_t> ranks;
  std::vector<UMatrix> differentials;
  bool periodic = false;
};

/// Homology per position, decomposed from the Jordan type of u.
/// Throws ContractViolation if some composite of differentials is nonzero.
std::vector<UModuleReport> u_module_decompose(const UComplex &c);

/// A Z-graded complex of k-spaces with differential of degree -1 and a
/// commuting nilpotent operator u of degree -2. Homology is only trusted in
/// degrees <= top.
struct GradedUComplex {
  Field field = Field::rationals();
  int truncation = 1;
  int lo = 0;
  int top = 0;
  std::vector<std::size_t> dims;     ///< dims[d - lo] for d in [lo, top + 1]
  std::vector<SparseMatrix> diff;    ///< diff[d - lo]: C_d -> C_{d-1}
  std::vector<SparseMatrix> umap;    ///< umap[d - lo]: C_d -> C_{d-2}
};

/// A cyclic summand k[u]/u^length generated in degree start.
struct UInterval {
  int start;
  int length;
  bool stable; ///< false when the summand may be cut off by the top degree
};

struct GradedUReport {
  int truncation = 1;
  int lo = 0;
  int top = 0;
  std::vector<std::size_t> homology_dims; ///< per degree lo..top
  std::vector<UInterval> intervals;
};

GradedUReport u_persistence(const GradedUComplex &c);

} // namespace ncg
