#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

namespace ncg::cli {

std::string sha256_hex(const std::string &data);

struct CachedRun {
  int exit_code = 0;
  std::string output;
};

/// Content-addressed store of rendered reports. Every entry carries the hash
/// of its body; entries that fail the check are reported and ignored.
class Cache {
public:
  /// The flag wins over NCG_CACHE_DIR; no directory means caching is off.
  static std::optional<std::filesystem::path> directory(const std::optional<std::string> &flag);

  Cache(std::filesystem::path dir, std::ostream &warnings) : dir_(std::move(dir)), warn_(warnings) {}

  std::optional<CachedRun> load(const std::string &key);
  /// Failures to write are warnings, never errors.
  void store(const std::string &key, const CachedRun &run);

private:
  std::filesystem::path entry(const std::string &key) const { return dir_ / (key + ".ncg-cache"); }
  std::filesystem::path dir_;
  std::ostream &warn_;
};

} // namespace ncg::cli
