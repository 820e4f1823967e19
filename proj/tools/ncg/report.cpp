#include "report.hpp"

#include <sstream>

#include "ncg/field.hpp"
#include "version.hpp"

namespace ncg::cli {

using nlohmann::json;

Format parse_format(const std::string &s) {
  if (s == "json")
    return Format::json;
  if (s == "csv")
    return Format::csv;
  if (s == "md" || s == "markdown")
    return Format::markdown;
  throw StructuralError("unknown output format '" + s + "' (json, csv, md)");
}

namespace {

std::string scalar_text(const json &v) {
  if (v.is_string())
    return v.get<std::string>();
  if (v.is_null())
    return "-";
  return v.dump();
}

std::string csv_field(const std::string &s) {
  if (s.find_first_of(",\"\n") == std::string::npos)
    return s;
  std::string q = "\"";
  for (char c : s)
    q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

json full_json(const std::string &command, const json &header, const Report &r) {
  json j = header;
  j["format"] = "ncg-report/1";
  j["tool"] = "ncg";
  j["version"] = tool_version;
  j["command"] = command;
  j["diagnostics"] = r.diagnostics;
  j["verdict"] = r.verdict ? json(*r.verdict) : json(nullptr);
  j["result"] = r.result;
  json tables = json::array();
  for (const auto &t : r.tables)
    tables.push_back({{"title", t.title}, {"columns", t.columns}, {"rows", t.rows}});
  j["tables"] = tables;
  return j;
}

// Header fields flattened to "key: value" lines, nested objects as dotted keys.
void flatten(const json &j, const std::string &prefix, std::vector<std::pair<std::string, std::string>> &out) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
    if (it->is_object())
      flatten(*it, key, out);
    else
      out.emplace_back(key, it->is_array() ? it->dump() : scalar_text(*it));
  }
}

std::vector<std::pair<std::string, std::string>> header_lines(const std::string &command, const json &header,
                                                              const Report &r) {
  std::vector<std::pair<std::string, std::string>> lines = {
      {"format", "ncg-report/1"}, {"tool", "ncg"}, {"version", tool_version}, {"command", command}};
  flatten(header, "", lines);
  if (r.verdict)
    lines.emplace_back("verdict", *r.verdict);
  return lines;
}

// Nested result values are flattened; long embedded objects (a glued
// algebra) stay in the JSON form only.
std::vector<std::pair<std::string, std::string>> result_lines(const Report &r) {
  std::vector<std::pair<std::string, std::string>> out;
  json shown = r.result;
  shown.erase("algebra");
  shown.erase("form");
  flatten(shown, "result", out);
  return out;
}

} // namespace

std::string render(const std::string &command, const json &header, const Report &r, Format f) {
  std::ostringstream os;
  switch (f) {
  case Format::json:
    os << full_json(command, header, r).dump(2) << "\n";
    break;
  case Format::csv:
    for (const auto &[k, v] : header_lines(command, header, r))
      os << "# " << k << ": " << v << "\n";
    for (const auto &d : r.diagnostics)
      os << "# diagnostic: " << d << "\n";
    for (const auto &[k, v] : result_lines(r))
      os << "# " << k << ": " << v << "\n";
    for (const auto &t : r.tables) {
      os << "# table: " << t.title << "\n";
      for (std::size_t i = 0; i < t.columns.size(); ++i)
        os << (i ? "," : "") << csv_field(t.columns[i]);
      os << "\n";
      for (const auto &row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
          os << (i ? "," : "") << csv_field(row[i]);
        os << "\n";
      }
    }
    break;
  case Format::markdown:
    os << "# ncg " << command << "\n\n";
    for (const auto &[k, v] : header_lines(command, header, r))
      os << "- " << k << ": `" << v << "`\n";
    for (const auto &[k, v] : result_lines(r))
      os << "- " << k << ": `" << v << "`\n";
    if (!r.diagnostics.empty()) {
      os << "\n## Diagnostics\n\n";
      for (const auto &d : r.diagnostics)
        os << "- " << d << "\n";
    }
    for (const auto &t : r.tables) {
      os << "\n## " << t.title << "\n\n|";
      for (const auto &c : t.columns)
        os << " " << c << " |";
      os << "\n|";
      for (std::size_t i = 0; i < t.columns.size(); ++i)
        os << "---|";
      os << "\n";
      for (const auto &row : t.rows) {
        os << "|";
        for (const auto &c : row)
          os << " " << c << " |";
        os << "\n";
      }
    }
    break;
  }
  return os.str();
}

} // namespace ncg::cli
