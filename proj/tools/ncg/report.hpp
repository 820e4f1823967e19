#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace ncg::cli {

struct Table {
  std::string title;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

/// What a command computed. The header (field, window, guard flags, ...) is
/// attached separately so it can be part of the cache key.
struct Report {
  nlohmann::json result = nlohmann::json::object();
  std::vector<Table> tables;
  std::vector<std::string> diagnostics;
  std::optional<std::string> verdict;
  bool inconclusive = false;
  bool validation_failed = false;
};

enum class Format { json, csv, markdown };

Format parse_format(const std::string &s);

std::string render(const std::string &command, const nlohmann::json &header, const Report &r, Format f);

} // namespace ncg::cli
