#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace ncg {

using Scalar = mpq_class;

/// Raised when inputs are structurally inconsistent (bad indices, mismatched
/// fields, malformed files). Distinct from validation failures, which are data.
class StructuralError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Raised when an operation's contract is violated (non-idempotent input,
/// differential that does not square to zero, window too small, ...).
class ContractViolation : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Raised for requests that are well-formed but outside what is supported
/// (e.g. HKR in characteristic p).
class Unsupported : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// The ground field: either Q or F_p. Elements are carried as mpq values;
/// over F_p they are always normalized to integers in [0, p).
class Field {
public:
  enum class Kind { rationals, prime };

  static Field rationals() { return Field(Kind::rationals, 0); }
  static Field prime(std::uint64_t p);
  /// Parses "Q", "QQ", "F2", "F_3", "GF(5)".
  static Field parse(const std::string &text);

  Kind kind() const { return kind_; }
  bool is_prime() const { return kind_ == Kind::prime; }
  std::uint64_t characteristic() const { return p_; }
  std::string name() const;

  Scalar normalize(const Scalar &x) const;
  Scalar add(const Scalar &a, const Scalar &b) const { return normalize(a + b); }
  Scalar sub(const Scalar &a, const Scalar &b) const { return normalize(a - b); }
  Scalar mul(const Scalar &a, const Scalar &b) const { return normalize(a * b); }
  Scalar neg(const Scalar &a) const { return normalize(-a); }
  Scalar inv(const Scalar &a) const;
  Scalar div(const Scalar &a, const Scalar &b) const { return mul(a, inv(b)); }
  bool is_zero(const Scalar &a) const { return normalize(a) == 0; }
  /// True when the rational has a representative in this field
  /// (over F_p: denominator prime to p).
  bool contains(const Scalar &x) const;

  /// Residue of x in [0, p) as a machine word. Prime fields only.
  std::uint64_t residue(const Scalar &x) const;

  friend bool operator==(const Field &a, const Field &b) {
    return a.kind_ == b.kind_ && a.p_ == b.p_;
  }

private:
  Field(Kind k, std::uint64_t p) : kind_(k), p_(p) {}
  Kind kind_;
  std::uint64_t p_;
};

bool is_prime(std::uint64_t n);

/// "num/den" or "num" text form used by every file format.
std::string to_text(const Scalar &x);
Scalar parse_scalar(const std::string &text);

} // namespace ncg
