#pragma once

#include <string>

#include "json.hpp"
#include "ncg/algebra.hpp"

namespace ncg {

/// "ncg-algebra/1": {format, name, field, dim, unit?, structure: [[i, j, k, "num/den"], ...],
/// weights?, parity?, weight_cutoff?}. Unknown fields are rejected. When
/// "unit" names a basis element other than 0 it is swapped into position 0.
nlohmann::json algebra_to_json(const AlgebraSpec &a);
AlgebraSpec algebra_from_json(const nlohmann::json &j);

/// "ncg-bimodule/1": {format, dim, left_action: [[i, x, y, v]], right_action: [[x, j, y, v]],
/// weights?, parity?}. The returned spec points at the given algebras.
BimoduleSpec bimodule_from_json(const nlohmann::json &j, const AlgebraSpec &left, const AlgebraSpec &right);
nlohmann::json bimodule_to_json(const BimoduleSpec &m);

/// Rationals are written as "num/den" strings; integers are also accepted on input.
Scalar scalar_from_json(const nlohmann::json &j, const std::string &where);

nlohmann::json read_json_file(const std::string &path);

/// Strict object check: every key must be in `allowed` and every key in `required` present.
void check_keys(const nlohmann::json &j, const std::vector<std::string> &allowed,
                const std::vector<std::string> &required, const std::string &what);

} // namespace ncg
