#pragma once

#include <functional>
#include <map>
#include <string>

namespace ncg::fixtures {

/// For each registered fixture id, the same value computed through the main
/// library, formatted exactly as the oracle formats it.
const std::map<std::string, std::function<std::string()>> &main_values();

} // namespace ncg::fixtures
