#include "ncg/algebra_io.hpp"

#include <algorithm>
#include <fstream>

namespace ncg {

using nlohmann::json;

void check_keys(const json &j, const std::vector<std::string> &allowed, const std::vector<std::string> &required,
                const std::string &what) {
  if (!j.is_object())
    throw StructuralError(what + " must be a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
      throw StructuralError(what + " has unknown field '" + it.key() + "'");
  for (const auto &k : required)
    if (!j.contains(k))
      throw StructuralError(what + " is missing field '" + k + "'");
}

Scalar scalar_from_json(const json &j, const std::string &where) {
  if (j.is_number_integer())
    return Scalar(mpz_class(std::to_string(j.get<long long>())));
  if (j.is_string())
    return parse_scalar(j.get<std::string>());
  throw StructuralError(where + ": expected a rational as \"num/den\" or an integer");
}

json read_json_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw StructuralError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error &e) {
    throw StructuralError(path + ": " + e.what());
  }
}

namespace {

bool is_index(const json &j) { return j.is_number_integer() && j.get<long long>() >= 0; }

std::vector<int> int_table(const json &j, const std::string &what) {
  if (!j.is_array())
    throw StructuralError(what + " must be an array of integers");
  std::vector<int> out;
  for (const auto &x : j) {
    if (!x.is_number_integer())
      throw StructuralError(what + " must be an array of integers");
    out.push_back(x.get<int>());
  }
  return out;
}

std::vector<StructureTerm> quad_list(const json &j, const std::string &what) {
  if (!j.is_array())
    throw StructuralError(what + " must be an array");
  std::vector<StructureTerm> out;
  for (std::size_t n = 0; n < j.size(); ++n) {
    const auto &t = j[n];
    const std::string where = what + "[" + std::to_string(n) + "]";
    if (!t.is_array() || t.size() != 4)
      throw StructuralError(where + " must be [i, j, k, value]");
    for (int c = 0; c < 3; ++c)
      if (!is_index(t[c]))
        throw StructuralError(where + " has a non-index entry");
    out.push_back({t[0].get<Index>(), t[1].get<Index>(), t[2].get<Index>(), scalar_from_json(t[3], where)});
  }
  return out;
}

json quad_json(Index i, Index j, Index k, const Scalar &v) { return json::array({i, j, k, to_text(v)}); }

} // namespace

json algebra_to_json(const AlgebraSpec &a) {
  json j;
  j["format"] = "ncg-algebra/1";
  j["name"] = a.name();
  j["field"] = a.field().name();
  j["dim"] = a.dim();
  json s = json::array();
  for (const auto &t : a.terms())
    s.push_back(quad_json(t.i, t.j, t.k, t.value));
  j["structure"] = s;
  if (a.weights())
    j["weights"] = *a.weights();
  if (a.parities())
    j["parity"] = *a.parities();
  if (a.weight_cutoff())
    j["weight_cutoff"] = *a.weight_cutoff();
  return j;
}

AlgebraSpec algebra_from_json(const json &j) {
  check_keys(j, {"format", "name", "field", "dim", "unit", "structure", "weights", "parity", "weight_cutoff"},
             {"format", "field", "dim", "structure"}, "algebra");
  if (j["format"] != "ncg-algebra/1")
    throw StructuralError("unsupported algebra schema " + j["format"].dump());
  if (!j["field"].is_string())
    throw StructuralError("algebra field must be a string");
  if (!is_index(j["dim"]))
    throw StructuralError("algebra dim must be a non-negative integer");
  const Field f = Field::parse(j["field"].get<std::string>());
  const auto dim = j["dim"].get<std::size_t>();
  auto terms = quad_list(j["structure"], "structure");
  std::optional<std::vector<int>> w, p;
  if (j.contains("weights"))
    w = int_table(j["weights"], "weights");
  if (j.contains("parity"))
    p = int_table(j["parity"], "parity");
  Index unit = 0;
  if (j.contains("unit")) {
    if (!is_index(j["unit"]) || j["unit"].get<std::size_t>() >= dim)
      throw StructuralError("unit must be a basis index below dim");
    unit = j["unit"].get<Index>();
  }
  if (unit != 0) {
    auto swap = [&](Index x) { return x == unit ? 0 : (x == 0 ? unit : x); };
    for (auto &t : terms) {
      if (t.i >= dim || t.j >= dim || t.k >= dim)
        continue; // reported by the constructor
      t = {swap(t.i), swap(t.j), swap(t.k), t.value};
    }
    if (w && w->size() == dim)
      std::swap((*w)[0], (*w)[unit]);
    if (p && p->size() == dim)
      std::swap((*p)[0], (*p)[unit]);
  }
  const std::string name = j.contains("name") ? j["name"].get<std::string>() : "algebra";
  AlgebraSpec a(name, f, dim, terms, w, p);
  if (j.contains("weight_cutoff")) {
    if (!j["weight_cutoff"].is_number_integer())
      throw StructuralError("weight_cutoff must be an integer");
    a.set_weight_cutoff(j["weight_cutoff"].get<int>());
  }
  return a;
}

BimoduleSpec bimodule_from_json(const json &j, const AlgebraSpec &left, const AlgebraSpec &right) {
  check_keys(j, {"format", "dim", "left_action", "right_action", "weights", "parity"},
             {"format", "dim", "left_action", "right_action"}, "bimodule");
  if (j["format"] != "ncg-bimodule/1")
    throw StructuralError("unsupported bimodule schema " + j["format"].dump());
  BimoduleSpec m;
  m.left = &left;
  m.right = &right;
  if (!is_index(j["dim"]))
    throw StructuralError("bimodule dim must be a non-negative integer");
  m.dim = j["dim"].get<std::size_t>();
  m.left_action = quad_list(j["left_action"], "left_action");
  m.right_action = quad_list(j["right_action"], "right_action");
  if (j.contains("weights"))
    m.weights = int_table(j["weights"], "weights");
  if (j.contains("parity"))
    m.parity = int_table(j["parity"], "parity");
  return m;
}

json bimodule_to_json(const BimoduleSpec &m) {
  json j;
  j["format"] = "ncg-bimodule/1";
  j["dim"] = m.dim;
  json l = json::array(), r = json::array();
  for (const auto &t : m.left_action)
    l.push_back(quad_json(t.i, t.j, t.k, t.value));
  for (const auto &t : m.right_action)
    r.push_back(quad_json(t.i, t.j, t.k, t.value));
  j["left_action"] = l;
  j["right_action"] = r;
  if (m.weights)
    j["weights"] = *m.weights;
  if (m.parity)
    j["parity"] = *m.parity;
  return j;
}

} // namespace ncg
