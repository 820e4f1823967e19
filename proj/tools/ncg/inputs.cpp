#include "inputs.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>

#include "ncg/algebra_io.hpp"

namespace ncg::cli {

using nlohmann::json;

namespace {

bool in_catalogue(const std::string &name) {
  const auto &c = catalogue();
  return std::any_of(c.begin(), c.end(), [&](const CatalogueEntry &e) { return e.name == name; });
}

BuiltinParams parse_params(const std::vector<std::string> &params) {
  BuiltinParams out;
  for (const auto &p : params) {
    const auto eq = p.find('=');
    if (eq == std::string::npos || eq == 0)
      throw StructuralError("parameter '" + p + "' is not of the form key=value");
    out[p.substr(0, eq)] = p.substr(eq + 1);
  }
  return out;
}

AlgebraSpec algebra_ref(const json &ref, const BuiltinParams &params, const std::optional<std::string> &field,
                        const std::filesystem::path &base) {
  if (ref.is_object()) {
    auto a = algebra_from_json(ref);
    return field ? a.over(Field::parse(*field)) : a;
  }
  if (!ref.is_string())
    throw StructuralError("algebra reference must be a name, a path or an object");
  const auto name = ref.get<std::string>();
  if (in_catalogue(name))
    return builtin(name, params, field ? Field::parse(*field) : Field::rationals());
  if (!params.empty())
    throw StructuralError("parameters only apply to catalogue algebras, not to " + name);
  std::filesystem::path p(name);
  if (p.is_relative() && !base.empty())
    p = base / p;
  auto a = algebra_from_json(read_json_file(p.string()));
  return field ? a.over(Field::parse(*field)) : a;
}

} // namespace

AlgebraSpec load_algebra(const std::string &ref, const std::vector<std::string> &params,
                         const std::optional<std::string> &field) {
  return algebra_ref(json(ref), parse_params(params), field, {});
}

IdempotentInput load_idempotent(const std::string &path) {
  const json j = read_json_file(path);
  check_keys(j, {"format", "algebra", "params", "field", "coefficients"}, {"format", "algebra", "coefficients"},
             "idempotent");
  if (j["format"] != "ncg-idempotent/1")
    throw StructuralError("idempotent: format must be \"ncg-idempotent/1\"");
  BuiltinParams params;
  if (j.contains("params")) {
    if (!j["params"].is_object())
      throw StructuralError("idempotent.params must be an object of strings");
    for (const auto &[k, v] : j["params"].items()) {
      if (!v.is_string())
        throw StructuralError("idempotent.params." + k + " must be a string");
      params[k] = v.get<std::string>();
    }
  }
  std::optional<std::string> field;
  if (j.contains("field")) {
    if (!j["field"].is_string())
      throw StructuralError("idempotent.field must be a string");
    field = j["field"].get<std::string>();
  }
  auto a = algebra_ref(j["algebra"], params, field, std::filesystem::path(path).parent_path());
  const auto &c = j["coefficients"];
  if (!c.is_array() || c.size() != a.dim())
    throw StructuralError("idempotent.coefficients must list " + std::to_string(a.dim()) + " rationals");
  VecBuilder b(a.field());
  for (std::size_t i = 0; i < c.size(); ++i)
    b.add(static_cast<Index>(i), scalar_from_json(c[i], "idempotent.coefficients[" + std::to_string(i) + "]"));
  return {std::move(a), b.finish()};
}

SparseVec parse_coefficients(const std::string &text, const AlgebraSpec &a) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : text) {
    if (ch == ',') {
      parts.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(ch))) {
      cur += ch;
    }
  }
  parts.push_back(cur);
  if (parts.size() != a.dim())
    throw StructuralError("expected " + std::to_string(a.dim()) + " coefficients, got " +
                          std::to_string(parts.size()));
  VecBuilder b(a.field());
  for (std::size_t i = 0; i < parts.size(); ++i)
    b.add(static_cast<Index>(i), parse_scalar(parts[i]));
  return b.finish();
}

std::vector<std::string> bivector_names() { return {"plane", "symplectic4", "so3", "zero2", "nonjacobi4"}; }

Bivector load_bivector(const std::string &ref, const std::optional<std::string> &field) {
  const Field f = field ? Field::parse(*field) : Field::rationals();
  auto x = [&](int vars, int i) { return PolyForm::coordinate(vars, i, f); };
  if (ref == "plane")
    return ConstantSymplectic{1}.inverse(f);
  if (ref == "symplectic4")
    return ConstantSymplectic{2}.inverse(f);
  if (ref == "zero2")
    return Bivector(2, f);
  if (ref == "so3") {
    Bivector a(3, f);
    a.set(0, 1, x(3, 2));
    a.set(1, 2, x(3, 0));
    a.set(2, 0, x(3, 1));
    return a;
  }
  if (ref == "nonjacobi4") {
    Bivector a(4, f);
    a.set(0, 3, PolyForm::constant(4, Scalar(1), f));
    a.set(1, 2, x(4, 0));
    return a;
  }
  auto a = bivector_from_json(read_json_file(ref));
  if (field && !(a.field == f))
    throw StructuralError("bivector file is over " + a.field.name() + ", not " + f.name());
  return a;
}

namespace {

class FormParser {
public:
  FormParser(const std::string &s, int vars, const Field &f) : s_(s), vars_(vars), f_(f) {}

  PolyForm parse() {
    PolyForm out(vars_, f_);
    skip();
    bool first = true;
    while (pos_ < s_.size()) {
      Scalar sign(1);
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? Scalar(-1) : Scalar(1);
        ++pos_;
        skip();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      out = out.plus(term(), sign);
      first = false;
      skip();
    }
    return out;
  }

private:
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }
  [[noreturn]] void fail(const std::string &what) const {
    throw StructuralError("form '" + s_ + "' at column " + std::to_string(pos_ + 1) + ": " + what);
  }
  std::string digits() {
    std::string d;
    while (std::isdigit(static_cast<unsigned char>(peek())))
      d += s_[pos_++];
    if (d.empty())
      fail("expected a number");
    return d;
  }
  int variable() {
    const int i = std::stoi(digits());
    if (i < 1 || i > vars_)
      fail("variable index out of range 1.." + std::to_string(vars_));
    return i - 1;
  }

  PolyForm factor() {
    skip();
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      std::string num = digits();
      if (peek() == '/') {
        ++pos_;
        num += "/" + digits();
      }
      return PolyForm::constant(vars_, parse_scalar(num), f_);
    }
    if (s_.compare(pos_, 2, "dx") == 0) {
      pos_ += 2;
      const int i = variable();
      return PolyForm::monomial(Exponent(static_cast<std::size_t>(vars_), 0), std::uint32_t{1} << i, Scalar(1), f_);
    }
    if (peek() == 'x') {
      ++pos_;
      const int i = variable();
      int e = 1;
      if (peek() == '^') {
        ++pos_;
        e = std::stoi(digits());
      }
      Exponent ex(static_cast<std::size_t>(vars_), 0);
      ex[static_cast<std::size_t>(i)] = e;
      return PolyForm::monomial(ex, 0, Scalar(1), f_);
    }
    fail("expected a number, x<i> or dx<i>");
  }

  PolyForm term() {
    PolyForm t = factor();
    skip();
    while (peek() == '*') {
      ++pos_;
      t = t.wedge(factor());
      skip();
    }
    return t;
  }

  const std::string &s_;
  int vars_;
  Field f_;
  std::size_t pos_ = 0;
};

} // namespace

PolyForm parse_form(const std::string &text, int vars, const Field &f) {
  if (text.find_first_not_of(" \t") == std::string::npos)
    throw StructuralError("empty form");
  return FormParser(text, vars, f).parse();
}

std::string text_of(const PolyForm &f) { return f.to_text(); }

} // namespace ncg::cli
