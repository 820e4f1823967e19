#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ncg/exactlin.hpp"
#include "ncg/hochschild.hpp"

namespace ncg {

// The negative cyclic complex (C_red[u]/u^N, boundary + u B) is Z-graded by
// d = n - 2k (tensor length n, u-power k) and splits into pieces by internal
// weight and parity. Homology is trusted in degrees d <= top, where
// top = n_max - 2N + 1 in general; weight pieces of a connected graded
// algebra with w <= n_max are complete and trusted in every degree.

struct CyclicPiece {
  std::optional<int> weight;
  int parity = 0; ///< internal parity of the words
  bool complete = false;
  GradedUReport report;
};

/// A free k[u]/u^N summand of the homology.
struct FreeGenerator {
  std::optional<int> weight;
  int internal_parity;
  int start; ///< Z-degree d of the generator
  int total_parity() const { return ((start + internal_parity) % 2 + 2) % 2; }
  /// Degree used for the filtration index: d - internal parity.
  int effective_degree() const { return start - internal_parity; }
};

struct NegativeCyclicResult {
  DegreeWindow window;
  int truncation = 1;
  bool with_connes = true;
  std::vector<CyclicPiece> pieces;
  UModuleReport even;
  UModuleReport odd;
  std::vector<FreeGenerator> free_generators;
  const UModuleReport &by_parity(int p) const { return p == 0 ? even : odd; }
};

/// with_connes = false drops the u B term (the boundary-only complex).
NegativeCyclicResult negative_cyclic(HochschildComplex &c, const DegreeWindow &window, int N,
                                     bool with_connes = true);
NegativeCyclicResult negative_cyclic(const AlgebraSpec &a, const DegreeWindow &window, int N);

struct HPResult {
  std::size_t even = 0;
  std::size_t odd = 0;
  bool conclusive = false;
  std::vector<std::string> diagnostics;
  NegativeCyclicResult at_N;
  NegativeCyclicResult at_N_minus_1;
};

/// Free ranks at truncation N, accepted when they agree with N - 1 and the
/// torsion at N is saturated.
HPResult hp_ranks(HochschildComplex &c, const DegreeWindow &window, int N);
HPResult hp_ranks(const AlgebraSpec &a, const DegreeWindow &window, int N);

struct FiltrationEntry {
  int twice_index; ///< 2i, so odd values are half-integer indices
  std::size_t even;
  std::size_t odd;
  bool trusted;
};

/// F^i rank = number of free generators with effective degree >= 2i.
/// Throws ContractViolation when HP is inconclusive.
std::vector<FiltrationEntry> hodge_filtration(const HPResult &hp);
std::vector<FiltrationEntry> hodge_filtration(const AlgebraSpec &a, const DegreeWindow &window, int N);

enum class Verdict { collapses_in_window, finite_torsion_found, inconclusive };
std::string to_string(Verdict v);

struct TorsionBlock {
  std::optional<int> weight;
  int internal_parity;
  int start;
  int length;
};

struct DegenerationResult {
  Verdict verdict;
  std::vector<TorsionBlock> inventory; ///< stable torsion only
  std::size_t unstable = 0;
};

DegenerationResult degeneration_check(const NegativeCyclicResult &r);
DegenerationResult degeneration_check(const AlgebraSpec &a, const DegreeWindow &window, int N);

struct HodgeReport {
  DegreeWindow window;
  int truncation;
  std::size_t hp_even = 0, hp_odd = 0;
  bool conclusive = false;
  std::vector<FiltrationEntry> filtration;
  UModuleReport u_even, u_odd;
  Verdict verdict;
  std::vector<std::string> diagnostics;
};

HodgeReport hodge_report(const AlgebraSpec &a, const DegreeWindow &window, int N);

/// Free ranks (even, odd) in one graded slot.
struct SlotRanks {
  std::optional<int> weight;
  std::size_t even = 0;
  std::size_t odd = 0;
  friend bool operator==(const SlotRanks &, const SlotRanks &) = default;
};

struct SlotComparison {
  std::optional<int> weight_boundary;   ///< slot of the boundary-only complex
  std::optional<int> weight_mixed;      ///< slot of the boundary + u B complex
  SlotRanks boundary_only;
  SlotRanks mixed;
  bool agree;
};

struct CharPComparison {
  std::uint64_t p;
  DegreeWindow window;
  int truncation;
  /// weight w against weight w
  std::vector<SlotComparison> untwisted;
  /// weight w of the boundary-only complex against weight p w of the mixed one
  std::vector<SlotComparison> twisted;
  /// mixed slots with weight prime to p, which should carry no free rank
  std::vector<SlotRanks> off_frobenius;
  bool untwisted_agree;
  bool twisted_agree;
};

/// Per-slot free ranks of the boundary + u B and boundary-only complexes over
/// F_p[u]/u^N on the guard-safe slots. Throws Unsupported over Q.
CharPComparison char_p_compare(const AlgebraSpec &a, const DegreeWindow &window, int N);

struct ConnesSlot {
  std::optional<int> weight;
  std::size_t free = 0;
  std::size_t torsion = 0;
  std::size_t unstable = 0;
  bool complete = false;
};

/// Characteristic 0 report on the polynomial boundary + u B complex: where
/// free rank survives in the window. Reported, never asserted.
std::vector<ConnesSlot> connes_report(const AlgebraSpec &a, const DegreeWindow &window, int N);

struct GradedPieceRanks {
  std::size_t ker_rot_mod_norm;  ///< ker(1 - sigma) / im(N)
  std::size_t ker_norm_mod_rot;  ///< ker(N) / im(1 - sigma)
  bool composites_vanish;
  bool acyclic() const { return ker_rot_mod_norm == 0 && ker_norm_mod_rot == 0; }
};

/// The 2-periodic complex (1 - sigma, 1 + sigma + .. + sigma^{n-1}) on
/// V^{(x) n}, dim V = dimV, with sigma the rotation carrying sign (-1)^{n-1}.
GradedPieceRanks graded_piece_analysis(int dimV, int n, const Field &f);

/// (dim ker, dim coker) of 1 - sigma on V^{(x) k}.
std::pair<std::size_t, std::size_t> rotation_complex_ranks(int dimV, int k, const Field &f);

} // namespace ncg
