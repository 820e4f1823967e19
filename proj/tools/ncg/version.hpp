#pragma once

namespace ncg::cli {

inline constexpr const char *tool_version = NCG_VERSION;

} // namespace ncg::cli
