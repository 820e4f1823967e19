#include "ncg/field.hpp"

#include <cctype>

namespace ncg {

bool is_prime(std::uint64_t n) {
  if (n < 2)
    return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0)
      return false;
  return true;
}

Field Field::prime(std::uint64_t p) {
  if (!ncg::is_prime(p))
    throw StructuralError("field characteristic " + std::to_string(p) + " is not prime");
  if (p >= (std::uint64_t{1} << 31))
    throw Unsupported("prime fields are limited to p < 2^31");
  return Field(Kind::prime, p);
}

Field Field::parse(const std::string &text) {
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c)))
      t.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  if (t == "Q" || t == "QQ" || t == "RATIONALS")
    return rationals();
  std::string digits;
  for (char c : t)
    if (std::isdigit(static_cast<unsigned char>(c)))
      digits.push_back(c);
  const bool shape = t.rfind("F", 0) == 0 || t.rfind("GF", 0) == 0;
  if (!shape || digits.empty())
    throw StructuralError("unrecognized field '" + text + "' (expected Q or F<p>)");
  return prime(std::stoull(digits));
}

std::string Field::name() const {
  return kind_ == Kind::rationals ? "Q" : "F" + std::to_string(p_);
}

Scalar Field::normalize(const Scalar &x) const {
  if (kind_ == Kind::rationals) {
    Scalar r = x;
    r.canonicalize();
    return r;
  }
  return Scalar(mpz_class(residue(x)));
}

std::uint64_t Field::residue(const Scalar &x) const {
  if (kind_ != Kind::prime)
    throw StructuralError("residue requested over Q");
  const mpz_class pz(static_cast<unsigned long>(p_));
  mpz_class num = x.get_num() % pz;
  mpz_class den = x.get_den() % pz;
  if (num < 0)
    num += pz;
  if (den < 0)
    den += pz;
  if (den == 0)
    throw StructuralError("rational " + x.get_str() + " has no residue mod " + std::to_string(p_));
  mpz_class inv;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), pz.get_mpz_t());
  mpz_class r = (num * inv) % pz;
  return r.get_ui();
}

bool Field::contains(const Scalar &x) const {
  if (kind_ == Kind::rationals)
    return true;
  return x.get_den() % mpz_class(static_cast<unsigned long>(p_)) != 0;
}

Scalar Field::inv(const Scalar &a) const {
  Scalar n = normalize(a);
  if (n == 0)
    throw ContractViolation("division by zero in " + name());
  if (kind_ == Kind::rationals)
    return 1 / n;
  mpz_class r;
  const mpz_class pz(static_cast<unsigned long>(p_));
  mpz_invert(r.get_mpz_t(), n.get_num().get_mpz_t(), pz.get_mpz_t());
  return Scalar(r);
}

std::string to_text(const Scalar &x) {
  Scalar c = x;
  c.canonicalize();
  if (c.get_den() == 1)
    return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Scalar parse_scalar(const std::string &text) {
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c)))
      t.push_back(c);
  if (t.empty())
    throw StructuralError("empty rational literal");
  for (char c : t)
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '/' || c == '-' || c == '+'))
      throw StructuralError("malformed rational literal '" + text + "'");
  Scalar r;
  if (r.set_str(t, 10) != 0)
    throw StructuralError("malformed rational literal '" + text + "'");
  if (r.get_den() == 0)
    throw StructuralError("zero denominator in '" + text + "'");
  r.canonicalize();
  return r;
}

} // namespace ncg
