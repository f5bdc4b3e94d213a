#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace isobar3::cli {

struct GridConfig {
  std::string kind = "dyadic";  // "dyadic" or "points"
  unsigned lo = 10;
  unsigned hi = 0;  // 0: largest power of two <= n
  std::vector<std::uint64_t> points;
};

struct WindowConfig {
  std::uint64_t base_x = 1'000'000;
  double exponent = 0.495;  // Y = X^exponent
  std::size_t count = 200;
  std::uint64_t seed = 42;
};

struct ProbeConfig {
  double x = 1e6;
  double t_exponent = 0.52;  // T = X^t_exponent
};

struct VerifyConfig {
  std::size_t oracle_n = 2000;
  std::size_t audit_n = 100'000;
  std::size_t convolution_n = 10'000;
  std::size_t timing_n = 1'000'000;
  double timing_limit_seconds = 60;
  unsigned pair_depth = 8;
  std::uint64_t seed = 20260;
};

struct RunConfig {
  std::size_t n = std::size_t(1) << 22;
  int weight = 12;
  std::string label = "delta";
  std::size_t cap = 10'000'000;
  unsigned threads = 1;
  GridConfig grid;
  WindowConfig windows;
  std::vector<ProbeConfig> probes{ProbeConfig{}};
  VerifyConfig verify;
  std::filesystem::path output_dir = "isobar3-out";
  std::filesystem::path cache_dir = "isobar3-cache";
  std::optional<std::filesystem::path> coefficient_file;  // golden tau file for other forms
  bool compare = false;  // omit timings so summaries are byte-stable
};

// Throws Error(config_error) on unreadable or malformed TOML and unknown keys.
RunConfig load_config(const std::filesystem::path& path);
RunConfig parse_config(const std::string& toml_text, const std::string& source = "<string>");
// ISOBAR3_CACHE_DIR overrides cache_dir.
void apply_environment(RunConfig& cfg);
// Throws Error(config_error) or Error(capacity_exceeded); nothing is written.
void validate(const RunConfig& cfg);

}  // namespace isobar3::cli
