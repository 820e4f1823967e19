#include "ncg/algebra.hpp"

#include <algorithm>
#include <functional>

namespace ncg {
namespace {

int int_param(const BuiltinParams &p, const std::string &key, int def) {
  auto it = p.find(key);
  if (it == p.end())
    return def;
  try {
    std::size_t used = 0;
    int v = std::stoi(it->second, &used);
    if (used != it->second.size())
      throw std::invalid_argument(key);
    return v;
  } catch (const std::logic_error &) {
    throw ContractViolation("parameter " + key + " must be an integer, got '" + it->second + "'");
  }
}

Scalar scalar_param(const BuiltinParams &p, const std::string &key, const Scalar &def) {
  auto it = p.find(key);
  return it == p.end() ? def : parse_scalar(it->second);
}

void reject_unknown(const BuiltinParams &p, const std::vector<std::string> &known, const std::string &name) {
  for (const auto &[k, v] : p)
    if (std::find(known.begin(), known.end(), k) == known.end())
      throw ContractViolation("algebra " + name + " has no parameter '" + k + "'");
}

AlgebraSpec point(const Field &f) { return AlgebraSpec("point", f, 1, {{0, 0, 0, Scalar(1)}}, std::vector<int>{0}); }

AlgebraSpec truncated_poly(int m, const Field &f) {
  if (m < 1)
    throw ContractViolation("truncated_poly needs m >= 1, got " + std::to_string(m));
  std::vector<StructureTerm> ts;
  std::vector<int> w;
  for (int a = 0; a < m; ++a) {
    w.push_back(a);
    for (int b = 0; a + b < m; ++b)
      ts.push_back({static_cast<Index>(a), static_cast<Index>(b), static_cast<Index>(a + b), Scalar(1)});
  }
  AlgebraSpec out("truncated_poly(" + std::to_string(m) + ")", f, static_cast<std::size_t>(m), ts, w);
  return out;
}

// Monomials in `vars` variables of total degree <= max_weight, ordered by
// degree and then lexicographically with x_1 largest.
std::vector<std::vector<int>> monomials(int vars, int max_weight) {
  std::vector<std::vector<int>> out;
  for (int deg = 0; deg <= max_weight; ++deg) {
    std::vector<std::vector<int>> level;
    std::vector<int> e(static_cast<std::size_t>(vars), 0);
    std::function<void(int, int)> rec = [&](int i, int left) {
      if (i == vars - 1) {
        e[static_cast<std::size_t>(i)] = left;
        level.push_back(e);
        return;
      }
      for (int k = left; k >= 0; --k) {
        e[static_cast<std::size_t>(i)] = k;
        rec(i + 1, left - k);
      }
    };
    if (vars == 0) {
      if (deg == 0)
        level.push_back({});
    } else {
      rec(0, deg);
    }
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

AlgebraSpec commutative_truncated(int vars, int max_weight, const Field &f) {
  if (vars < 0 || max_weight < 0)
    throw ContractViolation("poly_truncated needs vars >= 0 and max_weight >= 0");
  auto mons = monomials(vars, max_weight);
  if (mons.size() > 4096)
    throw ContractViolation("poly_truncated(" + std::to_string(vars) + ", " + std::to_string(max_weight) +
                            ") is too large");
  std::map<std::vector<int>, Index> pos;
  for (Index i = 0; i < mons.size(); ++i)
    pos[mons[i]] = i;
  std::vector<StructureTerm> ts;
  std::vector<int> w;
  for (Index i = 0; i < mons.size(); ++i) {
    int deg = 0;
    for (int x : mons[i])
      deg += x;
    w.push_back(deg);
    for (Index j = 0; j < mons.size(); ++j) {
      std::vector<int> e = mons[i];
      for (std::size_t k = 0; k < e.size(); ++k)
        e[k] += mons[j][k];
      if (auto it = pos.find(e); it != pos.end())
        ts.push_back({i, j, it->second, Scalar(1)});
    }
  }
  AlgebraSpec out("poly_truncated(" + std::to_string(vars) + ", " + std::to_string(max_weight) + ")", f,
                  mons.size(), ts, w);
  out.set_weight_cutoff(max_weight);
  return out;
}

AlgebraSpec quantum_plane(const Scalar &q, int max_weight, const Field &f) {
  if (!f.contains(q) || f.is_zero(q))
    throw ContractViolation("quantum_plane needs q nonzero in " + f.name() + ", got " + to_text(q));
  if (max_weight < 0)
    throw ContractViolation("quantum_plane needs max_weight >= 0");
  auto mons = monomials(2, max_weight);
  std::map<std::vector<int>, Index> pos;
  for (Index i = 0; i < mons.size(); ++i)
    pos[mons[i]] = i;
  std::vector<StructureTerm> ts;
  std::vector<int> w;
  for (Index i = 0; i < mons.size(); ++i) {
    w.push_back(mons[i][0] + mons[i][1]);
    for (Index j = 0; j < mons.size(); ++j) {
      // (x^a y^b)(x^c y^d) = q^{bc} x^{a+c} y^{b+d}
      const int a = mons[i][0], b = mons[i][1], c = mons[j][0], d = mons[j][1];
      auto it = pos.find({a + c, b + d});
      if (it == pos.end())
        continue;
      Scalar v(1);
      for (int k = 0; k < b * c; ++k)
        v *= q;
      ts.push_back({i, j, it->second, v});
    }
  }
  AlgebraSpec out("quantum_plane(" + to_text(q) + ", " + std::to_string(max_weight) + ")", f, mons.size(), ts, w);
  out.set_weight_cutoff(max_weight);
  return out;
}

} // namespace

const std::vector<CatalogueEntry> &catalogue() {
  static const std::vector<CatalogueEntry> entries = {
      {"point", "", "the ground field k"},
      {"dual_numbers", "", "k[e]/e^2, e of weight 1"},
      {"truncated_poly", "m=3", "k[x]/x^m, x of weight 1"},
      {"poly_truncated", "vars=2 max_weight=2", "k[x_1..x_v] modulo monomials of degree > max_weight"},
      {"quantum_plane", "q=2 max_weight=2", "k<x,y>/(yx - q xy) modulo degree > max_weight"},
      {"mat", "m=2", "m x m matrices over k"},
      {"group_z2", "", "group algebra k[Z/2], ungraded"},
      {"clifford1", "", "k[xi]/(xi^2 - 1) with xi odd"},
      {"a2_path", "", "path algebra of the A2 quiver (upper-triangular 2x2 matrices)"},
      {"k_times_k", "", "k x k, glued along the zero bimodule"},
  };
  return entries;
}

AlgebraSpec builtin(const std::string &name, const BuiltinParams &params, const Field &field) {
  AlgebraSpec out = [&]() -> AlgebraSpec {
    if (name == "point") {
      reject_unknown(params, {}, name);
      return point(field);
    }
    if (name == "dual_numbers") {
      reject_unknown(params, {}, name);
      return truncated_poly(2, field).renamed("dual_numbers");
    }
    if (name == "truncated_poly") {
      reject_unknown(params, {"m"}, name);
      return truncated_poly(int_param(params, "m", 3), field);
    }
    if (name == "poly_truncated") {
      reject_unknown(params, {"vars", "max_weight"}, name);
      return commutative_truncated(int_param(params, "vars", 2), int_param(params, "max_weight", 2), field);
    }
    if (name == "quantum_plane") {
      reject_unknown(params, {"q", "max_weight"}, name);
      return quantum_plane(scalar_param(params, "q", Scalar(2)), int_param(params, "max_weight", 2), field);
    }
    if (name == "mat") {
      reject_unknown(params, {"m"}, name);
      const int m = int_param(params, "m", 2);
      if (m < 1)
        throw ContractViolation("mat needs m >= 1");
      return matrix_algebra(point(field), static_cast<std::size_t>(m)).renamed("mat(" + std::to_string(m) + ")");
    }
    if (name == "group_z2") {
      reject_unknown(params, {}, name);
      return AlgebraSpec("group_z2", field, 2,
                         {{0, 0, 0, Scalar(1)}, {0, 1, 1, Scalar(1)}, {1, 0, 1, Scalar(1)}, {1, 1, 0, Scalar(1)}});
    }
    if (name == "clifford1") {
      reject_unknown(params, {}, name);
      return AlgebraSpec("clifford1", field, 2,
                         {{0, 0, 0, Scalar(1)}, {0, 1, 1, Scalar(1)}, {1, 0, 1, Scalar(1)}, {1, 1, 0, Scalar(1)}},
                         std::nullopt, std::vector<int>{0, 1});
    }
    if (name == "a2_path") {
      reject_unknown(params, {}, name);
      const AlgebraSpec k = point(field);
      return glue(k, k, BimoduleSpec::unit_actions(k, k, 1)).renamed("a2_path");
    }
    if (name == "k_times_k") {
      reject_unknown(params, {}, name);
      const AlgebraSpec k = point(field);
      return glue(k, k, BimoduleSpec::zero(k, k)).renamed("k_times_k");
    }
    throw StructuralError("unknown algebra '" + name + "'");
  }();
  require_valid(out);
  return out;
}

std::vector<AlgebraSpec> default_catalogue(const Field &field) {
  std::vector<AlgebraSpec> out;
  for (const auto &e : catalogue()) {
    BuiltinParams params;
    // q = 2 vanishes in characteristic 2
    if (e.name == "quantum_plane" && field.is_prime() && field.characteristic() == 2)
      params["q"] = "1";
    out.push_back(builtin(e.name, params, field));
  }
  return out;
}

} // namespace ncg
