#include "isobar3/cli/config.hpp"

#include <cstdlib>
#include <set>

#include <toml.hpp>

#include "isobar3/error.hpp"

namespace isobar3::cli {
namespace {

constexpr const char* kModule = "cli_orchestrator";

[[noreturn]] void fail(const std::string& msg) { throw Error(Errc::config_error, kModule, msg); }

void check_keys(const toml::table& t, const std::string& where, std::initializer_list<std::string_view> allowed) {
  const std::set<std::string_view> ok(allowed);
  for (const auto& [k, v] : t)
    if (!ok.count(k.str())) fail("unknown key '" + std::string(k.str()) + "' in [" + where + "]");
}

template <class T>
void read_int(const toml::table& t, std::string_view key, T& out) {
  if (auto node = t.get(key)) {
    auto v = node->value<std::int64_t>();
    if (!v || *v < 0) fail("'" + std::string(key) + "' must be a non-negative integer");
    out = static_cast<T>(*v);
  }
}

void read_real(const toml::table& t, std::string_view key, double& out) {
  if (auto node = t.get(key)) {
    auto v = node->value<double>();
    if (!v) fail("'" + std::string(key) + "' must be a number");
    out = *v;
  }
}

void read_string(const toml::table& t, std::string_view key, std::string& out) {
  if (auto node = t.get(key)) {
    auto v = node->value<std::string>();
    if (!v) fail("'" + std::string(key) + "' must be a string");
    out = *v;
  }
}

const toml::table* sub(const toml::table& root, std::string_view key) {
  if (auto node = root.get(key)) {
    if (auto t = node->as_table()) return t;
    fail("'" + std::string(key) + "' must be a table");
  }
  return nullptr;
}

ProbeConfig read_probe(const toml::table& t) {
  check_keys(t, "probe", {"x", "t_exponent"});
  ProbeConfig p;
  read_real(t, "x", p.x);
  read_real(t, "t_exponent", p.t_exponent);
  return p;
}

}  // namespace

RunConfig parse_config(const std::string& text, const std::string& source) {
  toml::table root;
  try {
    root = toml::parse(text, source);
  } catch (const toml::parse_error& e) {
    fail(source + ": " + std::string(e.description()));
  }
  check_keys(root, "root", {"run", "grid", "windows", "probe", "verify"});
  RunConfig cfg;
  if (auto run = sub(root, "run")) {
    check_keys(*run, "run", {"n", "weight", "label", "cap", "threads", "output_dir", "cache_dir", "coefficient_file",
                             "compare"});
    read_int(*run, "n", cfg.n);
    read_int(*run, "weight", cfg.weight);
    read_string(*run, "label", cfg.label);
    read_int(*run, "cap", cfg.cap);
    read_int(*run, "threads", cfg.threads);
    std::string s;
    if (run->contains("output_dir")) {
      read_string(*run, "output_dir", s);
      cfg.output_dir = s;
    }
    if (run->contains("cache_dir")) {
      read_string(*run, "cache_dir", s);
      cfg.cache_dir = s;
    }
    if (run->contains("coefficient_file")) {
      read_string(*run, "coefficient_file", s);
      cfg.coefficient_file = s;
    }
    if (auto node = run->get("compare")) {
      auto v = node->value<bool>();
      if (!v) fail("'compare' must be a boolean");
      cfg.compare = *v;
    }
  }
  if (auto grid = sub(root, "grid")) {
    check_keys(*grid, "grid", {"kind", "lo", "hi", "points"});
    read_string(*grid, "kind", cfg.grid.kind);
    read_int(*grid, "lo", cfg.grid.lo);
    read_int(*grid, "hi", cfg.grid.hi);
    if (auto node = grid->get("points")) {
      auto arr = node->as_array();
      if (!arr) fail("'points' must be an array");
      for (const auto& e : *arr) {
        auto v = e.value<std::int64_t>();
        if (!v || *v < 1) fail("grid points must be positive integers");
        cfg.grid.points.push_back(static_cast<std::uint64_t>(*v));
      }
    }
  }
  if (auto w = sub(root, "windows")) {
    check_keys(*w, "windows", {"base_x", "exponent", "count", "seed"});
    read_int(*w, "base_x", cfg.windows.base_x);
    read_real(*w, "exponent", cfg.windows.exponent);
    read_int(*w, "count", cfg.windows.count);
    read_int(*w, "seed", cfg.windows.seed);
  }
  if (auto node = root.get("probe")) {
    cfg.probes.clear();
    if (auto t = node->as_table())
      cfg.probes.push_back(read_probe(*t));
    else if (auto arr = node->as_array())
      for (const auto& e : *arr) {
        auto t = e.as_table();
        if (!t) fail("[[probe]] entries must be tables");
        cfg.probes.push_back(read_probe(*t));
      }
    else
      fail("'probe' must be a table or an array of tables");
  }
  if (auto v = sub(root, "verify")) {
    check_keys(*v, "verify", {"oracle_n", "audit_n", "convolution_n", "timing_n", "timing_limit_seconds",
                              "pair_depth", "seed"});
    read_int(*v, "oracle_n", cfg.verify.oracle_n);
    read_int(*v, "audit_n", cfg.verify.audit_n);
    read_int(*v, "convolution_n", cfg.verify.convolution_n);
    read_int(*v, "timing_n", cfg.verify.timing_n);
    read_real(*v, "timing_limit_seconds", cfg.verify.timing_limit_seconds);
    read_int(*v, "pair_depth", cfg.verify.pair_depth);
    read_int(*v, "seed", cfg.verify.seed);
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  toml::table root;
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) fail("config file not found: " + path.string());
  try {
    root = toml::parse_file(path.string());
  } catch (const toml::parse_error& e) {
    fail(path.string() + ": " + std::string(e.description()));
  }
  std::ostringstream os;
  os << root;
  return parse_config(os.str(), path.string());
}

void apply_environment(RunConfig& cfg) {
  if (const char* dir = std::getenv("ISOBAR3_CACHE_DIR"); dir && *dir) cfg.cache_dir = dir;
}

void validate(const RunConfig& cfg) {
  if (cfg.n < 1) fail("n must be >= 1");
  if (cfg.n > cfg.cap)
    throw Error(Errc::capacity_exceeded, kModule,
                "n = " + std::to_string(cfg.n) + " exceeds the configured cap of " + std::to_string(cfg.cap));
  if (cfg.weight < 12 || cfg.weight % 2) fail("weight must be even and >= 12");
  if (cfg.label.empty()) fail("label must not be empty");
  if (cfg.threads < 1 || cfg.threads > 256) fail("threads must be in 1..256");
  if (cfg.grid.kind != "dyadic" && cfg.grid.kind != "points") fail("grid.kind must be 'dyadic' or 'points'");
  if (cfg.grid.kind == "points" && cfg.grid.points.empty()) fail("grid.kind = 'points' needs grid.points");
  for (auto p : cfg.grid.points)
    if (p > cfg.n) fail("grid point " + std::to_string(p) + " exceeds n");
  if (cfg.grid.kind == "dyadic") {
    if (cfg.grid.hi != 0 && cfg.grid.lo > cfg.grid.hi) fail("grid.lo > grid.hi");
    if (cfg.grid.hi > 62 || (cfg.grid.hi != 0 && (std::uint64_t(1) << cfg.grid.hi) > cfg.n))
      fail("grid.hi exceeds log2(n)");
    if ((std::uint64_t(1) << cfg.grid.lo) > cfg.n) fail("grid.lo exceeds log2(n)");
  }
  if (!(cfg.windows.exponent > 0 && cfg.windows.exponent < 1)) fail("windows.exponent must lie in (0, 1)");
  if (cfg.windows.count < 2) fail("windows.count must be >= 2");
  if (cfg.windows.base_x < 1) fail("windows.base_x must be >= 1");
  for (const auto& p : cfg.probes)
    if (!(p.x > 1) || !(p.t_exponent > 0)) fail("probe needs x > 1 and t_exponent > 0");
  if (cfg.verify.pair_depth > 16) fail("verify.pair_depth must be <= 16");
  if (cfg.verify.oracle_n < 5 || cfg.verify.oracle_n > 20000) fail("verify.oracle_n must be in 5..20000");
  if (cfg.verify.timing_n > cfg.cap) fail("verify.timing_n exceeds the cap");
  if (cfg.output_dir.empty() || cfg.cache_dir.empty()) fail("output_dir and cache_dir must be set");
  if (cfg.label != "delta" && !cfg.coefficient_file)
    fail("forms other than delta need run.coefficient_file");
}

}  // namespace isobar3::cli
