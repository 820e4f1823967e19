#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "ncg/algebra.hpp"
#include "ncg/poisson.hpp"

namespace ncg::cli {

/// A catalogue name (with "key=value" parameters) or a path to an
/// "ncg-algebra/1" file. An explicit field re-reads a file algebra over it.
AlgebraSpec load_algebra(const std::string &ref, const std::vector<std::string> &params,
                         const std::optional<std::string> &field);

/// "ncg-idempotent/1": {format, algebra, params?, field?, coefficients}. The
/// algebra is a catalogue name, a path relative to the file, or an inline
/// "ncg-algebra/1" object; coefficients is a dense list of rationals.
struct IdempotentInput {
  AlgebraSpec algebra;
  SparseVec element;
};
IdempotentInput load_idempotent(const std::string &path);

/// Comma-separated dense coefficient list, e.g. "0,1,0,0".
SparseVec parse_coefficients(const std::string &text, const AlgebraSpec &a);

/// Names: plane, symplectic4, so3, zero2, nonjacobi4; anything else is read
/// as an "ncg-bivector/1" file.
Bivector load_bivector(const std::string &ref, const std::optional<std::string> &field);
std::vector<std::string> bivector_names();

/// Polynomial forms such as "x1^2*x2 - 3/2*x1*dx1*dx2" (variables and
/// differentials numbered from 1; dx factors are wedged in the order written).
PolyForm parse_form(const std::string &text, int vars, const Field &f);

std::string text_of(const PolyForm &f);

} // namespace ncg::cli
