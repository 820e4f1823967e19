#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ncg/field.hpp"
#include "ncg/sparse.hpp"

namespace ncg {

struct StructureTerm {
  Index i;
  Index j;
  Index k;
  Scalar value;
};

/// A finite-dimensional associative (super)algebra given by structure
/// constants e_i e_j = sum_k c_ij^k e_k. Basis element 0 is the unit.
///
/// Weights and parities are optional gradings; when present every product
/// must respect them (checked by validate, not by the constructor).
class AlgebraSpec {
public:
  AlgebraSpec(std::string name, Field field, std::size_t dim, const std::vector<StructureTerm> &terms,
              std::optional<std::vector<int>> weights = std::nullopt,
              std::optional<std::vector<int>> parity = std::nullopt);

  const std::string &name() const { return name_; }
  const Field &field() const { return field_; }
  std::size_t dim() const { return dim_; }
  static constexpr Index unit_index = 0;

  /// e_i * e_j as a sparse vector over the basis.
  const SparseVec &product(Index i, Index j) const { return table_[i * dim_ + j]; }
  SparseVec multiply(const SparseVec &a, const SparseVec &b) const;
  SparseVec power(const SparseVec &a, unsigned e) const;
  std::vector<StructureTerm> terms() const;

  bool graded() const { return weights_.has_value(); }
  bool super() const { return parity_.has_value(); }
  int weight(Index i) const { return weights_ ? (*weights_)[i] : 0; }
  int parity(Index i) const { return parity_ ? (*parity_)[i] : 0; }
  const std::optional<std::vector<int>> &weights() const { return weights_; }
  const std::optional<std::vector<int>> &parities() const { return parity_; }

  /// Weight above which products were cut off (quotient by high weights).
  std::optional<int> weight_cutoff() const { return cutoff_; }
  void set_weight_cutoff(int c) { cutoff_ = c; }
  /// Graded with every non-unit basis element of positive weight.
  bool connected() const;

  /// Same algebra read over another field (constants must be representable).
  AlgebraSpec over(const Field &f) const;
  AlgebraSpec renamed(std::string name) const;

  friend bool operator==(const AlgebraSpec &a, const AlgebraSpec &b);

private:
  std::string name_;
  Field field_;
  std::size_t dim_;
  std::vector<SparseVec> table_;
  std::optional<std::vector<int>> weights_;
  std::optional<std::vector<int>> parity_;
  std::optional<int> cutoff_;
};

struct Violation {
  enum class Kind { unit, associativity, weight, parity, field, shape, module, commute };
  Kind kind;
  Index i = 0, j = 0, k = 0;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

ValidationReport validate(const AlgebraSpec &a);

/// Throws ContractViolation carrying the first witness unless a validates.
void require_valid(const AlgebraSpec &a);

/// A finite-dimensional (left, right) bimodule: left algebra acts on the
/// left, right algebra on the right.
struct BimoduleSpec {
  const AlgebraSpec *left = nullptr;
  const AlgebraSpec *right = nullptr;
  std::size_t dim = 0;
  /// e_i . m_x = sum value m_y as (i, x, y, value)
  std::vector<StructureTerm> left_action;
  /// m_x . e_j = sum value m_y as (x, j, y, value)
  std::vector<StructureTerm> right_action;
  std::optional<std::vector<int>> weights;
  std::optional<std::vector<int>> parity;

  /// The bimodule where only the units act (as the identity); valid when
  /// both algebras are one-dimensional.
  static BimoduleSpec unit_actions(const AlgebraSpec &left, const AlgebraSpec &right, std::size_t dim);
  static BimoduleSpec zero(const AlgebraSpec &left, const AlgebraSpec &right);
};

ValidationReport validate(const BimoduleSpec &m);

AlgebraSpec opposite(const AlgebraSpec &a);

/// A (x) Mat_m. Unit is sum_i e_ii (x) 1; basis element 0 is that unit and
/// the remaining elements are e_ab (x) a_x in lexicographic order with
/// e_11 (x) 1 omitted.
AlgebraSpec matrix_algebra(const AlgebraSpec &a, std::size_t m);

/// Upper-triangular gluing [[b, m], [0, a]] of A and B along a bimodule M
/// with left algebra B and right algebra A:
///   (a, m, b)(a', m', b') = (a a', b m' + m a', b b').
/// Basis: unit, non-unit basis of A, 1_B, non-unit basis of B, basis of M.
AlgebraSpec glue(const AlgebraSpec &a, const AlgebraSpec &b, const BimoduleSpec &m);

using BuiltinParams = std::map<std::string, std::string>;

struct CatalogueEntry {
  std::string name;
  std::string parameters;
  std::string description;
};

const std::vector<CatalogueEntry> &catalogue();

/// Constructs and validates a catalogue algebra. Throws StructuralError for
/// unknown names and ContractViolation for invalid parameters.
AlgebraSpec builtin(const std::string &name, const BuiltinParams &params = {},
                    const Field &field = Field::rationals());

/// Every catalogue entry at its default parameters (all of dimension <= 8).
std::vector<AlgebraSpec> default_catalogue(const Field &field);

/// Element of the standard basis as a vector.
SparseVec basis_vector(Index i);

} // namespace ncg
