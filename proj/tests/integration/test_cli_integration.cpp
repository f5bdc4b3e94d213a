#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "isobar3/coeff_io.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path& work() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / "isobar3_cli_integration";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

struct Run {
  int code;
  std::string out;
};

// Runs the CLI inside the work directory; stdout and stderr are captured together.
Run cli(const std::string& args, const std::string& env = "") {
  const auto log = work() / "last.log";
  const std::string cmd = "cd '" + work().string() + "' && " + env + " '" + ISOBAR3_CLI_PATH + "' " + args + " > '" +
                          log.string() + "' 2>&1";
  const int status = std::system(cmd.c_str());
  std::ifstream in(log);
  std::stringstream ss;
  ss << in.rdbuf();
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, ss.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("help documents every flag and subcommand") {
  const auto r = cli("--help");
  CHECK(r.code == 0);
  for (const char* flag : {"--config", "--n", "--weight", "--label", "--coefficient-file", "--cap", "--threads", "--out",
                           "--cache-dir", "--compare", "--grid-lo", "--grid-hi", "--grid-points", "--window-base",
                           "--window-exponent", "--window-count", "--seed", "--probe-x", "--probe-t-exponent",
                           "--depth", "--oracle-n", "--audit-n", "--timing-n", "ISOBAR3_CACHE_DIR"})
    CHECK_MESSAGE(contains(r.out, flag), flag);
  for (const char* sub : {"sieve", "sums", "fit", "pairs", "budget", "probe", "verify-all"}) CHECK(contains(r.out, sub));
  const auto b = cli("budget --help");
  CHECK(b.code == 0);
  CHECK(contains(b.out, "--p"));
  CHECK(contains(b.out, "--q"));
}

TEST_CASE("sieve writes the cache once") {
  auto r = cli("sieve --n 10000 --cache-dir c1");
  REQUIRE(r.code == 0);
  const auto cache = work() / "c1" / "lambda_delta_k12_n10000.ib3";
  REQUIRE(fs::exists(cache));
  CHECK(fs::file_size(cache) == isobar3::coeff::kCacheHeaderBytes + 10'000 * 8);
  const auto header = isobar3::coeff::read_cache_header(cache);
  REQUIRE(header);
  CHECK(header->n == 10'000);
  CHECK(header->weight == 12);
  CHECK(fs::exists(work() / "c1" / "tau_delta_golden.txt"));
  CHECK(contains(slurp(work() / "c1" / "tau_delta_golden.txt"), "2\t-24\n"));
  CHECK(fs::exists(work() / "c1" / "manifest.json"));

  const auto stamp = fs::last_write_time(cache);
  const auto bytes = slurp(cache);
  r = cli("sieve --n 10000 --cache-dir c1");
  CHECK(r.code == 0);
  CHECK(contains(r.out, "up to date"));
  CHECK(fs::last_write_time(cache) == stamp);
  CHECK(slurp(cache) == bytes);
}

TEST_CASE("capacity is a config error naming the cap") {
  auto r = cli("sieve --n 20000000 --cache-dir c2");
  CHECK(r.code == 2);
  CHECK(contains(r.out, "10000000"));
  CHECK(contains(r.out, "cap"));
  CHECK_FALSE(fs::exists(work() / "c2"));
  r = cli("sieve --n 5000 --cap 1000 --cache-dir c2");
  CHECK(r.code == 2);
  CHECK(contains(r.out, "1000"));
}

TEST_CASE("corrupted cache fails its checksum") {
  REQUIRE(cli("sieve --n 5000 --cache-dir c3").code == 0);
  const auto cache = work() / "c3" / "lambda_delta_k12_n5000.ib3";
  {
    std::fstream f(cache, std::ios::in | std::ios::out | std::ios::binary);
    f.seekp(4000);
    f.put('\x55');
    f.put('\x66');
  }
  auto r = cli("sieve --n 5000 --cache-dir c3");
  CHECK(r.code == 3);
  CHECK(contains(r.out, "checksum"));
  r = cli("verify-all --n 5000 --cache-dir c3 --out o3");
  CHECK(r.code == 3);
  CHECK_FALSE(fs::exists(work() / "o3" / "summary.json"));
}

TEST_CASE("environment overrides the cache location") {
  const auto r = cli("sieve --n 3000", "ISOBAR3_CACHE_DIR='" + (work() / "envcache").string() + "'");
  CHECK(r.code == 0);
  CHECK(fs::exists(work() / "envcache" / "lambda_delta_k12_n3000.ib3"));
}

TEST_CASE("rejected configs write nothing") {
  std::ofstream(work() / "bad.toml") << "[run]\nn = 10000\nbogus = 1\n";
  auto r = cli("sieve --config bad.toml --cache-dir c4 --out o4");
  CHECK(r.code == 2);
  CHECK(contains(r.out, "bogus"));
  CHECK_FALSE(fs::exists(work() / "c4"));
  CHECK_FALSE(fs::exists(work() / "o4"));

  std::ofstream(work() / "broken.toml") << "[run\n";
  CHECK(cli("sieve --config broken.toml").code == 2);
  CHECK(cli("sieve --config missing.toml").code == 2);
  CHECK(cli("frobnicate").code == 2);
  CHECK(cli("").code == 2);
  CHECK(cli("sieve --n 4096 --weight 13 --cache-dir c4").code == 2);
  CHECK(cli("budget --p 1/2 --out o4").code == 2);
  CHECK(cli("budget --p 3/4 --q 1/4 --out o4").code == 2);
  CHECK_FALSE(fs::exists(work() / "c4"));
  CHECK_FALSE(fs::exists(work() / "o4"));
}

TEST_CASE("unwritable output is an I/O error") {
  std::ofstream(work() / "plainfile") << "x";
  const auto r = cli("budget --out plainfile/sub");
  CHECK(r.code == 4);
}

TEST_CASE("budget and pairs") {
  auto r = cli("budget --out o5");
  CHECK(r.code == 0);
  CHECK(contains(r.out, "4/739"));
  CHECK(contains(slurp(work() / "o5" / "budget.json"), "\"delta_max\": \"4/739\""));
  r = cli("budget --p 13/194 --q 76/97 --out o5");
  CHECK(r.code == 0);
  CHECK(contains(r.out, "4/739"));
  r = cli("budget --p 0 --q 1 --out o5");
  CHECK(r.code == 3);
  CHECK(contains(r.out, "exponent_calculus"));
  r = cli("pairs --depth 8 --out o5");
  CHECK(r.code == 0);
  CHECK(contains(slurp(work() / "o5" / "pairs.json"), "\"theta_min\": \"731/1478\""));
}

TEST_CASE("sums, fit and probe write their tables") {
  const std::string common = " --n 131072 --cache-dir c6 --out o6";
  REQUIRE(cli("sums" + common).code == 0);
  CHECK(slurp(work() / "o6" / "partial_sums.csv").rfind("X,A,E\n1024,", 0) == 0);
  CHECK(slurp(work() / "o6" / "windows.csv").rfind("X,Y,mean\n", 0) == 0);
  CHECK(fs::exists(work() / "o6" / "sums.json"));
  CHECK(fs::exists(work() / "c6" / "l1_delta_k12_n131072.txt"));

  REQUIRE(cli("fit" + common + " --grid-lo 11").code == 0);
  CHECK(contains(slurp(work() / "o6" / "fit.json"), "\"slope\""));

  REQUIRE(cli("sums" + common + " --grid-points 10 100 1000").code == 0);
  CHECK(slurp(work() / "o6" / "partial_sums.csv").rfind("X,A,E\n10,", 0) == 0);
  CHECK(cli("sums" + common + " --grid-points 10 200000").code == 2);

  REQUIRE(cli("probe" + common).code == 0);
  CHECK(slurp(work() / "o6" / "probe_0.csv").rfind("L,measured,predicted,ratio\n", 0) == 0);
  CHECK(contains(slurp(work() / "o6" / "probe.json"), "\"max_ratio\""));
}

TEST_CASE("verify-all at N = 1e6 passes and is byte-stable in comparison mode") {
  auto r = cli("verify-all --n 1000000 --cache-dir c7 --out o7a --compare");
  INFO(r.out);
  REQUIRE(r.code == 0);
  const auto first = slurp(work() / "o7a" / "summary.json");
  CHECK(contains(first, "\"passed\": true"));
  CHECK(contains(first, "\"delta_max\": \"4/739\""));
  CHECK_FALSE(contains(first, "\"seconds\""));

  r = cli("verify-all --n 1000000 --cache-dir c7 --out o7b --compare --threads 2");
  REQUIRE(r.code == 0);
  CHECK(slurp(work() / "o7b" / "summary.json") == first);

  r = cli("verify-all --n 1000000 --cache-dir c7 --out o7c --timing-n 0");
  REQUIRE(r.code == 0);
  CHECK(contains(slurp(work() / "o7c" / "summary.json"), "\"seconds\""));
}
