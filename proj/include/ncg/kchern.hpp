#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ncg/hochschild.hpp"

namespace ncg {

/// Element of the negative cyclic complex mod u^N: terms[k] is the
/// coefficient chain of u^k.
struct UChain {
  int truncation = 1;
  std::vector<Chain> terms;
  bool empty() const;
};

struct CycleCertificate {
  bool cycle = true;
  /// First nonzero coefficient of (boundary + u B) x, when not a cycle.
  int power = -1;
  Word word;
  Scalar value;
};

/// (boundary + u B) x mod u^N.
UChain apply_mixed(const AlgebraSpec &a, const UChain &x);
CycleCertificate check_negative_cycle(const AlgebraSpec &a, const UChain &x);
UChain uchain_sub(const UChain &x, const UChain &y, const Field &f);

/// Whether x is (boundary + u B) of something mod u^N, decided by a linear
/// solve over the full chain groups in the Z-degree of x.
bool is_negative_boundary(const AlgebraSpec &a, const UChain &x);

struct ChernResult {
  UChain chain;
  CycleCertificate certificate;
  /// Coordinates of the u^0 term in A/[A,A].
  std::vector<Scalar> hh0_class;
  bool hh0_nonzero = false;
  /// Regular-representation trace of the idempotent (vanishes on commutators).
  Scalar trace;
};

/// ch(p) = p + sum_{1 <= k < N} (-1)^k (2k)!/k! (p - 1/2) (x) p^{(x) 2k} u^k.
/// Throws ContractViolation if p is not idempotent or if the emitted chain is
/// not a cycle, Unsupported in characteristic <= 2N.
ChernResult chern_idempotent(const AlgebraSpec &a, const SparseVec &p, int N);

/// Tr(L_x), L_x = left multiplication by x.
Scalar regular_trace(const AlgebraSpec &a, const SparseVec &x);

/// Diagonal idempotents sum_{i in S} e_ii of mat(m) in its basis (S nonempty).
std::vector<SparseVec> diagonal_idempotents(std::size_t m, const AlgebraSpec &mat);

struct PPowerCertificate {
  bool pass = true;
  std::string witness;
};

struct PPowerResult {
  std::uint64_t p;
  /// Basis indices representing A/[A,A].
  std::vector<Index> representatives;
  /// matrix[r][c]: coordinate r of (rep_c)^p.
  std::vector<std::vector<Scalar>> matrix;
  PPowerCertificate well_defined;
  PPowerCertificate additive;
  PPowerCertificate semilinear;
  /// The map composed with itself equals a -> a^{p^2} on A/[A,A].
  PPowerCertificate composition;
};

/// a -> a^p on A/[A,A] over F_p.
PPowerResult ppower_on_hh0(const AlgebraSpec &a);

/// a^2 + (1; a, a) u over F_2, with its cycle certificate.
struct LiftResult {
  UChain chain;
  CycleCertificate certificate;
};
LiftResult ppower_lift_p2(const AlgebraSpec &a, const SparseVec &x);

/// The p >= 3 lift is not implemented; throws Unsupported describing the
/// known shape of the formula.
LiftResult ppower_lift(const AlgebraSpec &a, const SparseVec &x);

} // namespace ncg
