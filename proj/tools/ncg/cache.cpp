#include "cache.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace ncg::cli {

namespace fs = std::filesystem;

std::string sha256_hex(const std::string &data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 digest failed");
  static const char *hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

std::optional<fs::path> Cache::directory(const std::optional<std::string> &flag) {
  if (flag && !flag->empty())
    return fs::path(*flag);
  if (const char *env = std::getenv("NCG_CACHE_DIR"); env && *env)
    return fs::path(env);
  return std::nullopt;
}

// Entry layout: "ncg-cache/1 <exit code> <sha256 of body>\n" followed by the body.
std::optional<CachedRun> Cache::load(const std::string &key) {
  const fs::path p = entry(key);
  std::error_code ec;
  if (!fs::exists(p, ec))
    return std::nullopt;
  std::ifstream in(p, std::ios::binary);
  std::string tag, digest;
  int code = -1;
  std::string line;
  if (in && std::getline(in, line)) {
    std::istringstream hs(line);
    hs >> tag >> code >> digest;
  }
  std::ostringstream body;
  body << in.rdbuf();
  if (tag != "ncg-cache/1" || code < 0 || code > 3 || digest != sha256_hex(body.str())) {
    warn_ << "warning: corrupted cache entry " << p.string() << ", recomputing\n";
    return std::nullopt;
  }
  return CachedRun{code, body.str()};
}

void Cache::store(const std::string &key, const CachedRun &run) {
  std::error_code ec;
  fs::create_directories(dir_, ec);
  const fs::path p = entry(key);
  const fs::path tmp = p.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (out)
      out << "ncg-cache/1 " << run.exit_code << " " << sha256_hex(run.output) << "\n" << run.output;
    if (!out) {
      warn_ << "warning: cache directory " << dir_.string() << " is not writable, continuing uncached\n";
      fs::remove(tmp, ec);
      return;
    }
  }
  fs::rename(tmp, p, ec);
  if (ec) {
    warn_ << "warning: could not write cache entry " << p.string() << ": " << ec.message() << "\n";
    fs::remove(tmp, ec);
  }
}

} // namespace ncg::cli
