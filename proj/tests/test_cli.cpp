#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cache.hpp"
#include "cli.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli_run(const std::vector<std::string> &args) {
  std::ostringstream out, err;
  const int code = ncg::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string &name) { return std::string(NCG_TEST_DATA) + "/" + name; }

fs::path scratch(const std::string &name) {
  auto p = fs::temp_directory_path() / ("ncg-cli-test-" + name);
  fs::remove_all(p);
  return p;
}

std::size_t entries(const fs::path &dir) {
  if (!fs::exists(dir))
    return 0;
  return static_cast<std::size_t>(std::distance(fs::directory_iterator(dir), fs::directory_iterator()));
}

} // namespace

TEST_CASE("hh table for the dual numbers") {
  auto r = cli_run({"hh", "--algebra", "dual_numbers", "--field", "Q", "--n-max", "4"});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["format"] == "ncg-report/1");
  CHECK(j["result"]["totals"] == json::array({2, 1, 1, 1, 1}));
  CHECK(j["field"] == "Q");
  CHECK(j["window"]["n_max"] == 4);
  CHECK(j.contains("version"));
  CHECK(j.contains("guard"));
}

TEST_CASE("hp of the super example") {
  auto r = cli_run({"hp", "--algebra", "clifford1", "--field", "Q", "--n-max", "8", "--u-trunc", "3"});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["result"]["even"] == 0);
  CHECK(j["result"]["odd"] == 1);
  CHECK(j["result"]["conclusive"] == true);
  CHECK(j["truncation"] == 3);
}

TEST_CASE("validate reports a witnessing triple with exit 2") {
  auto r = cli_run({"validate", "--algebra", data("broken.json")});
  CHECK(r.code == 2);
  const auto j = json::parse(r.out);
  CHECK(j["result"]["ok"] == false);
  CHECK(j["result"]["violations"][0]["triple"] == json::array({1, 1, 1}));
  CHECK(cli_run({"validate", "--algebra", "mat"}).code == 0);
  // computing on an invalid algebra is a validation failure as well
  CHECK(cli_run({"hh", "--algebra", data("broken.json")}).code == 2);
}

TEST_CASE("schema violations are structural errors with a location") {
  auto unknown = cli_run({"hh", "--algebra", data("unknown_field.json")});
  CHECK(unknown.code == 1);
  CHECK(unknown.err.find("colour") != std::string::npos);
  auto malformed = cli_run({"hh", "--algebra", data("malformed.json")});
  CHECK(malformed.code == 1);
  CHECK(malformed.err.find("line 6") != std::string::npos);
  CHECK(cli_run({"hh", "--algebra", "no_such_algebra"}).code == 1);
  CHECK(cli_run({"hh", "--algebra", "mat", "--param", "m=0"}).code == 2);
  CHECK(cli_run({"bogus"}).code == 1);
}

TEST_CASE("window precondition for cyclic commands") {
  auto r = cli_run({"hc", "--algebra", "dual_numbers", "--n-max", "4", "--u-trunc", "3"});
  CHECK(r.code == 2);
  CHECK(r.err.find("n-max") != std::string::npos);
}

TEST_CASE("strict turns an inconclusive verdict into exit 3") {
  const std::vector<std::string> hp = {"hp", "--algebra", "dual_numbers", "--n-max", "4", "--u-trunc", "2"};
  CHECK(cli_run(hp).code == 0);
  auto strict = hp;
  strict.insert(strict.begin(), "--strict");
  CHECK(cli_run(strict).code == 3);
  CHECK(cli_run({"--strict", "hp", "--algebra", "dual_numbers", "--n-max", "8", "--u-trunc", "3"}).code == 0);
}

TEST_CASE("output formats carry the report header") {
  auto csv = cli_run({"--format", "csv", "hh", "--algebra", "dual_numbers"});
  REQUIRE(csv.code == 0);
  CHECK(csv.out.find("# format: ncg-report/1") != std::string::npos);
  CHECK(csv.out.find("# field: Q") != std::string::npos);
  CHECK(csv.out.find("n,weight,rank,trusted\n0,0,1,yes") != std::string::npos);
  auto md = cli_run({"hh", "--algebra", "dual_numbers", "--format", "md"});
  REQUIRE(md.code == 0);
  CHECK(md.out.find("# ncg hh") == 0);
  CHECK(md.out.find("| n | weight | rank | trusted |") != std::string::npos);
  CHECK(cli_run({"--format", "xml", "hh", "--algebra", "point"}).code == 1);
}

TEST_CASE("reports are deterministic") {
  const std::vector<std::string> args = {"charp-compare", "--algebra", "dual_numbers", "--field", "F2"};
  CHECK(cli_run(args).out == cli_run(args).out);
}

TEST_CASE("cache: replay, invalidation and corruption") {
  const auto dir = scratch("cache");
  const std::vector<std::string> q2 = {"--cache-dir", dir.string(), "hh", "--algebra", "quantum_plane",
                                       "--param", "q=2", "--n-max", "2"};
  auto first = cli_run(q2);
  REQUIRE(first.code == 0);
  CHECK(entries(dir) == 1);
  auto second = cli_run(q2);
  CHECK(second.out == first.out);
  CHECK(entries(dir) == 1);

  // a hit is served from the entry itself
  const auto entry = fs::directory_iterator(dir)->path();
  {
    std::ofstream planted(entry, std::ios::trunc);
    planted << "ncg-cache/1 0 " << ncg::cli::sha256_hex("planted") << "\nplanted";
  }
  CHECK(cli_run(q2).out == "planted");

  auto q3 = q2;
  q3[6] = "q=3";
  auto third = cli_run(q3);
  CHECK(third.code == 0);
  CHECK(third.out != first.out);
  CHECK(entries(dir) == 2);

  {
    std::ofstream corrupt(entry, std::ios::trunc);
    corrupt << "ncg-cache/1 0 " << ncg::cli::sha256_hex("planted") << "\ntampered";
  }
  auto fourth = cli_run(q2);
  CHECK(fourth.out == first.out);
  CHECK(fourth.err.find("corrupted cache entry") != std::string::npos);
  auto fifth = cli_run(q2);
  CHECK(fifth.err.empty());
  CHECK(fifth.out == first.out);
  fs::remove_all(dir);
}

TEST_CASE("cache: unwritable directory warns and proceeds") {
  const auto base = scratch("unwritable");
  fs::create_directories(base);
  const auto file = base / "plain-file";
  std::ofstream(file) << "x";
  auto r = cli_run({"--cache-dir", (file / "sub").string(), "hh", "--algebra", "point"});
  CHECK(r.code == 0);
  CHECK(r.err.find("warning") != std::string::npos);
  CHECK(json::parse(r.out)["result"]["totals"][0] == 1);
  fs::remove_all(base);
}

TEST_CASE("cache: the flag wins over the environment") {
  const auto env_dir = scratch("env"), flag_dir = scratch("flag");
  setenv("NCG_CACHE_DIR", env_dir.string().c_str(), 1);
  CHECK(cli_run({"hh", "--algebra", "point"}).code == 0);
  CHECK(entries(env_dir) == 1);
  CHECK(cli_run({"--cache-dir", flag_dir.string(), "hh", "--algebra", "dual_numbers"}).code == 0);
  CHECK(entries(flag_dir) == 1);
  CHECK(entries(env_dir) == 1);
  CHECK(cli_run({"--no-cache", "hh", "--algebra", "group_z2"}).code == 0);
  CHECK(entries(env_dir) == 1);
  unsetenv("NCG_CACHE_DIR");
  fs::remove_all(env_dir);
  fs::remove_all(flag_dir);
}

TEST_CASE("chern from an idempotent file and from coefficients") {
  auto f = cli_run({"chern", "--idempotent", data("e11.json"), "--u-trunc", "3"});
  REQUIRE(f.code == 0);
  const auto j = json::parse(f.out);
  CHECK(j["result"]["certificate"]["cycle"] == true);
  CHECK(j["result"]["hh0_nonzero"] == true);
  auto c = cli_run({"chern", "--algebra", "mat", "--coefficients", "1,0,0,-1", "--u-trunc", "3"});
  CHECK(json::parse(c.out)["result"] == j["result"]);
  CHECK(cli_run({"chern", "--algebra", "mat", "--coefficients", "0,1,0,0"}).code == 2);
  CHECK(cli_run({"chern", "--algebra", "mat", "--coefficients", "1,0"}).code == 1);
}

TEST_CASE("remaining algebra commands") {
  auto f = cli_run({"filtration", "--algebra", "dual_numbers"});
  REQUIRE(f.code == 0);
  CHECK(json::parse(f.out)["tables"][0]["rows"][0] == json::array({"0", "1", "0", "yes"}));
  auto d = cli_run({"degeneration", "--algebra", "mat", "--n-max", "4", "--u-trunc", "2"});
  CHECK(json::parse(d.out)["verdict"] == "collapses-in-window");
  auto hc = cli_run({"hc", "--algebra", data("dual_inline.json"), "--n-max", "6"});
  REQUIRE(hc.code == 0);
  CHECK(json::parse(hc.out)["result"]["even"]["free_rank"] == 1);
  auto pp = cli_run({"ppower", "--algebra", "mat", "--field", "F2"});
  REQUIRE(pp.code == 0);
  const auto pj = json::parse(pp.out);
  CHECK(pj["result"]["hh0_rank"] == 1);
  CHECK(pj["result"]["lifts_are_cycles"] == true);
  CHECK(pj["verdict"] == "certified");
  CHECK(cli_run({"ppower", "--algebra", "mat"}).code == 1);
  auto g = cli_run({"graded-pieces", "--dim-v", "1", "--n", "3", "--field", "F2"});
  CHECK(json::parse(g.out)["result"]["acyclic"] == true);
  auto cp = cli_run({"charp-compare", "--algebra", "dual_numbers", "--field", "F2"});
  CHECK(json::parse(cp.out)["verdict"] == "agree");
}

TEST_CASE("glue and catalogue") {
  auto g = cli_run({"glue", "--a", "point", "--b", "point", "--bimodule", "unit"});
  REQUIRE(g.code == 0);
  const auto j = json::parse(g.out);
  CHECK(j["result"]["dim"] == 3);
  CHECK(j["result"]["valid"] == true);
  CHECK(j["result"]["direct_sum"] == true);
  CHECK(j["result"]["algebra"]["format"] == "ncg-algebra/1");
  auto c = cli_run({"catalogue"});
  REQUIRE(c.code == 0);
  CHECK(json::parse(c.out)["tables"][0]["rows"].size() >= 9);
}

TEST_CASE("poisson subcommands") {
  auto b = cli_run({"poisson", "bracket", "--bivector", "plane", "--f", "x1^2", "--g", "x2"});
  REQUIRE(b.code == 0);
  CHECK(json::parse(b.out)["result"]["bracket"] == "(2) x1");
  auto l = cli_run({"poisson", "lie", "--bivector", "plane", "--form", "x1*dx2"});
  CHECK(json::parse(l.out)["result"]["lie"] == "(1)");
  CHECK(json::parse(cli_run({"poisson", "jacobi", "--bivector", data("so3.json")}).out)["verdict"] == "pass");
  auto nj = json::parse(cli_run({"poisson", "jacobi", "--bivector", "nonjacobi4", "--degree", "2"}).out);
  CHECK(nj["verdict"] == "fail");
  CHECK(nj["result"]["witness"]["jacobiator"] == "(-1)");
  CHECK(json::parse(cli_run({"poisson", "conjugation", "--bivector", "so3"}).out)["verdict"] == "pass");
  auto s = json::parse(cli_run({"poisson", "star", "--bivector", "plane", "--degree", "6"}).out);
  CHECK(s["result"]["weyl"]["pass"] == true);
  CHECK(s["result"]["literal"]["pass"] == false);
  CHECK(cli_run({"poisson", "star", "--bivector", "so3"}).code == 1);
  auto h = json::parse(cli_run({"poisson", "homology", "--bivector", "plane"}).out);
  CHECK(h["result"]["even"] == 1);
  CHECK(h["result"]["odd"] == 0);
  CHECK(cli_run({"poisson", "lie", "--bivector", "plane", "--form", "x3"}).code == 1);
  auto hbar = json::parse(cli_run({"poisson", "lie", "--bivector", "plane", "--hbar", "3", "--form", "x1*dx2"}).out);
  CHECK(hbar["result"]["lie"] == "(3)");
}

TEST_CASE("help and version") {
  CHECK(cli_run({"--help"}).code == 0);
  CHECK(cli_run({"--version"}).code == 0);
}
