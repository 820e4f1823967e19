#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "ncg/field.hpp"

namespace ncg {

// Polynomial differential forms on affine v-space. A term x^e dx_S stores S
// as a bit mask (bit i is dx_i), so S is increasing by construction.

using Exponent = std::vector<int>;

struct FormKey {
  Exponent exp;
  std::uint32_t mask = 0;
  friend auto operator<=>(const FormKey &, const FormKey &) = default;
};

class PolyForm {
public:
  PolyForm(int vars, Field f);

  static PolyForm constant(int vars, const Scalar &c, const Field &f);
  static PolyForm coordinate(int vars, int i, const Field &f);
  static PolyForm monomial(Exponent e, std::uint32_t mask, const Scalar &c, const Field &f);

  int vars() const { return vars_; }
  const Field &field() const { return field_; }
  const std::map<FormKey, Scalar> &terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Largest |e| among the terms, -1 for the zero form.
  int coefficient_degree() const;
  /// True when every term has form degree 0.
  bool is_function() const;

  void add_term(const FormKey &k, const Scalar &c);
  PolyForm plus(const PolyForm &o, const Scalar &scale = Scalar(1)) const;
  PolyForm scaled(const Scalar &c) const;
  /// Wedge product (functions multiply as polynomials).
  PolyForm wedge(const PolyForm &o) const;
  /// Terms of form degree exactly k.
  PolyForm part(int k) const;

  friend bool operator==(const PolyForm &a, const PolyForm &b) {
    return a.vars_ == b.vars_ && a.terms_ == b.terms_;
  }

  std::string to_text() const;

private:
  int vars_;
  Field field_;
  std::map<FormKey, Scalar> terms_;
};

/// alpha = sum_{i<j} alpha^{ij} d_i ^ d_j, scaled by hbar in every operator.
struct Bivector {
  int vars = 0;
  Field field = Field::rationals();
  std::map<std::pair<int, int>, PolyForm> components; ///< keys i < j, functions only
  Scalar hbar = 1;

  Bivector(int v, Field f) : vars(v), field(f) {}
  void set(int i, int j, const PolyForm &f);
  /// alpha^{ij} with alpha^{ji} = -alpha^{ij}.
  PolyForm component(int i, int j) const;
  int coefficient_degree() const;
  /// The common coefficient degree when all components are homogeneous of one degree.
  std::optional<int> homogeneous_degree() const;
};

/// Standard symplectic form sum dx_i ^ dy_i on 2n variables ordered
/// x_1, y_1, x_2, y_2, ...
struct ConstantSymplectic {
  int pairs = 1;
  int vars() const { return 2 * pairs; }
  /// alpha = omega^{-1} = sum d/dx_i ^ d/dy_i.
  Bivector inverse(const Field &f) const;
  PolyForm omega(const Field &f) const;
};

/// Recognises the standard constant symplectic structure from its bivector;
/// anything else is Unsupported.
ConstantSymplectic symplectic_from_bivector(const Bivector &a);

PolyForm partial(const PolyForm &f, int i);
PolyForm exterior_d(const PolyForm &f);
/// Contraction with d/dx_i.
PolyForm interior(const PolyForm &f, int i);
/// iota_alpha, with iota_{d_i ^ d_j} = iota_j iota_i so <d_x ^ d_y, dx ^ dy> = 1.
PolyForm iota(const Bivector &a, const PolyForm &f);
/// L_alpha = iota d - d iota.
PolyForm lie_derivative(const Bivector &a, const PolyForm &f);
/// exp(s iota_alpha), a finite sum.
PolyForm exp_iota(const Bivector &a, const PolyForm &f, const Scalar &s = Scalar(1));

PolyForm poisson_bracket(const PolyForm &f, const PolyForm &g, const Bivector &a);

/// Every monomial x^e dx_S with |e| <= D.
std::vector<PolyForm> monomial_forms(int vars, int D, const Field &f);
/// Every monomial function x^e with |e| <= D.
std::vector<PolyForm> monomial_functions(int vars, int D, const Field &f);

struct JacobiResult {
  bool pass = true;
  /// {f, {g, h}} + cyclic, nonzero at the witness.
  std::optional<std::array<PolyForm, 3>> witness;
  std::optional<PolyForm> value;
};

/// Coordinate triples first, then monomial triples of degree <= D.
JacobiResult jacobi_check(const Bivector &a, int D);

struct FormWitness {
  PolyForm input;
  PolyForm lhs;
  PolyForm rhs;
};

struct IdentityCheck {
  bool pass = true;
  std::size_t checked = 0;
  std::optional<FormWitness> witness;
};

/// exp(iota) d exp(-iota) = d + L_alpha on every monomial form of degree <= D.
IdentityCheck conjugation_check(const Bivector &a, int D);

struct BrylinskiCheck {
  IdentityCheck anticommutes; ///< L d + d L = 0
  IdentityCheck squares_zero; ///< L^2 = 0
};
BrylinskiCheck brylinski_check(const Bivector &a, int D);

/// Odd Fourier transform: on each pair 1 -> dx dy, dx dy -> -1, dx and dy fixed.
PolyForm hodge_star(const PolyForm &f, const ConstantSymplectic &w);

struct StarCheck {
  /// exp(omega ^) = exp(iota) * exp(iota)
  IdentityCheck weyl;
  /// exp(omega ^) = exp(iota) * exp(-iota), reported for comparison
  IdentityCheck literal;
};
StarCheck star_identity_check(const ConstantSymplectic &w, int D, const Field &f = Field::rationals());

struct PoissonPiece {
  int grade;
  std::size_t even = 0;
  std::size_t odd = 0;
  bool stable = false;
};

struct PoissonHomology {
  int alpha_degree = 0;
  int guard = 2;
  int D = 0;
  std::vector<PoissonPiece> pieces;
  /// Sums over stable pieces.
  std::size_t even = 0;
  std::size_t odd = 0;
};

/// Homology of d + L_alpha on forms of coefficient degree <= D, split by
/// form-degree parity. Forms are graded by 2|e| + a|S| (a = coefficient degree
/// of alpha); a piece is stable when every form its homology touches has
/// |e| <= D - max(2, a). Requires a homogeneous Poisson bivector.
PoissonHomology poisson_homology_ranks(const Bivector &a, int D);

/// "ncg-bivector/1": {format, field, vars, hbar?, components: [{i, j, terms: [{exp, coeff}]}]}.
Bivector bivector_from_json(const nlohmann::json &j);
nlohmann::json bivector_to_json(const Bivector &a);
/// {vars, terms: [{exp, dx: [indices], coeff}]}
PolyForm form_from_json(const nlohmann::json &j, const Field &f);
nlohmann::json form_to_json(const PolyForm &f);

} // namespace ncg
