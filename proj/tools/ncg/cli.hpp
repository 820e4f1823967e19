#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ncg::cli {

/// Runs one command line (without the program name). Exit codes: 0 success,
/// 1 structural or usage error, 2 validation failure, 3 inconclusive verdict
/// under --strict.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace ncg::cli
