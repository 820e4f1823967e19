#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "ncg/algebra.hpp"
#include "ncg/exactlin.hpp"

namespace ncg {

/// Index word (a_0; a_1 .. a_n) of the reduced chain a_0 (x) a_1 (x) ... (x) a_n.
/// Tail letters are never the unit.
using Word = std::vector<std::uint16_t>;

struct WordHash {
  std::size_t operator()(const Word &w) const noexcept;
};

/// Selects one graded piece of a chain group. Absent fields mean "all".
struct BlockFilter {
  std::optional<int> weight;
  std::optional<int> parity;
  friend auto operator<=>(const BlockFilter &, const BlockFilter &) = default;
};

/// Ordered basis of A (x) (A/1)^{(x) n} restricted to a filter.
class ChainBlock {
public:
  ChainBlock(int n, BlockFilter filter, std::vector<Word> words);

  int n() const { return n_; }
  const BlockFilter &filter() const { return filter_; }
  const std::vector<Word> &words() const { return words_; }
  std::size_t size() const { return words_.size(); }
  std::optional<Index> find(const Word &w) const;

private:
  int n_;
  BlockFilter filter_;
  std::vector<Word> words_;
  std::unordered_map<Word, Index, WordHash> index_;
};

/// Lexicographically ordered words of length n+1. Throws ContractViolation
/// when a weight filter is requested on an ungraded algebra.
ChainBlock chain_basis(const AlgebraSpec &a, int n, BlockFilter filter = {});

/// Total internal weight / parity of a word.
int word_weight(const AlgebraSpec &a, const Word &w);
int word_parity(const AlgebraSpec &a, const Word &w);

/// Chains as finite sums of words.
using Chain = std::map<Word, Scalar>;

/// Hochschild boundary of a single word, as (word, coefficient) terms
/// (coefficients not yet collected).
std::vector<std::pair<Word, Scalar>> boundary_terms(const AlgebraSpec &a, const Word &w);
/// Connes' operator on a single word.
std::vector<std::pair<Word, Scalar>> connes_terms(const AlgebraSpec &a, const Word &w);

Chain apply_boundary(const AlgebraSpec &a, const Chain &c);
Chain apply_connes(const AlgebraSpec &a, const Chain &c);
Chain chain_add(const Chain &x, const Chain &y, const Field &f, const Scalar &scale = Scalar(1));

/// Block bases and the matrices of the boundary and of Connes' operator
/// between them, built on demand and cached.
class HochschildComplex {
public:
  explicit HochschildComplex(AlgebraSpec a);

  const AlgebraSpec &algebra() const { return a_; }
  const ChainBlock &block(int n, const BlockFilter &f = {});
  /// boundary: block(n) -> block(n-1); zero for n = 0.
  const SparseMatrix &boundary(int n, const BlockFilter &f = {});
  /// Connes: block(n) -> block(n+1).
  const SparseMatrix &connes(int n, const BlockFilter &f = {});
  std::size_t boundary_rank(int n, const BlockFilter &f = {});

  /// Weights occurring among words of tensor length n.
  std::vector<int> weights(int n) const;
  /// {0} for ordinary algebras, {0, 1} for superalgebras.
  std::vector<int> parities() const;

private:
  using Key = std::pair<int, BlockFilter>;
  AlgebraSpec a_;
  std::map<Key, std::unique_ptr<ChainBlock>> blocks_;
  std::map<Key, SparseMatrix> boundary_;
  std::map<Key, SparseMatrix> connes_;
  std::map<Key, std::size_t> ranks_;
};

struct DegreeWindow {
  int n_max = 4;
  std::optional<int> w_min;
  std::optional<int> w_max;
};

struct HHEntry {
  int n;
  std::optional<int> weight;
  std::size_t rank;
  /// false for weights in the guard band of a weight-truncated algebra
  bool trusted = true;
};

struct HHTable {
  DegreeWindow window;
  std::vector<HHEntry> entries; ///< sorted by (n, weight)
  /// Sum over the reported weights at tensor length n.
  std::size_t total(int n) const;
  std::optional<std::size_t> at(int n, std::optional<int> weight) const;
};

/// Weights w <= cutoff - 2 are trusted for algebras with a weight cutoff.
constexpr int hochschild_guard_band = 2;
bool weight_trusted(const AlgebraSpec &a, int w);

/// HH_n per weight for n = 0 .. window.n_max (degree -n).
HHTable hh_ranks(const AlgebraSpec &a, const DegreeWindow &window);
HHTable hh_ranks(HochschildComplex &c, const DegreeWindow &window);

struct HH0Result {
  std::size_t rank;
  /// Basis indices whose classes form a basis of A/[A,A].
  std::vector<Index> representatives;
  /// Coordinates of an element of A in that basis.
  std::vector<Scalar> coordinates(const SparseVec &x) const;
  std::shared_ptr<Echelon> commutators;
};

/// A/[A,A] from the (super)commutator span.
HH0Result hh0_direct(const AlgebraSpec &a);

/// Number of monomial i-forms of weight w in v variables (dx of weight 1).
/// Characteristic 0 only.
std::size_t hkr_reference(int v, int i, int w, const Field &f = Field::rationals());

struct IdentityWitness {
  std::string identity;
  int n;
  Word word;
};

/// Checks boundary^2 = 0, B^2 = 0 and boundary B + B boundary = 0 on every
/// basis word of tensor length <= n_max. Returns the first failure.
std::optional<IdentityWitness> check_mixed_identities(const AlgebraSpec &a, int n_max);

} // namespace ncg
