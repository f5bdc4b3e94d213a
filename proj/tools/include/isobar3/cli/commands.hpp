#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>

#include "isobar3/cli/checks.hpp"
#include "isobar3/cli/config.hpp"
#include "isobar3/error.hpp"
#include "isobar3/exponent_pairs.hpp"
#include "isobar3/oscillatory.hpp"

namespace isobar3::cli {

enum ExitCode : int { exit_pass = 0, exit_config = 2, exit_check = 3, exit_io = 4 };

int exit_code_for(Errc code) noexcept;

sums::GridSpec make_grid(const RunConfig& cfg);
// Dyadic exponents used for block maxima: the grid's range, or 10..floor(log2 n).
std::pair<unsigned, unsigned> dyadic_range(const RunConfig& cfg);
json sweep_json(const osc::ProbeSweep& sweep);
// windows.base_x, lowered when the windows would run past the table end.
std::uint64_t effective_window_base(const RunConfig& cfg);

// File names inside the cache directory.
struct CacheNames {
  std::string lambda;  // lambda_<label>_k<weight>_n<N>.ib3
  std::string golden;  // tau_<label>_golden.txt
  std::string l1;      // l1_<label>_k<weight>_n<N>.txt
  static CacheNames for_config(const RunConfig& cfg);
};

struct SieveOutcome {
  bool rebuilt = false;
  std::filesystem::path cache;
};

// Builds the coefficient cache and golden tau file unless a verified cache with
// a matching header is already present. A cache that fails its checksum is an
// IntegrityError, never silently rebuilt.
SieveOutcome cmd_sieve(const RunConfig& cfg, std::ostream& log);

// Sieves if needed, then loads and verifies the cache.
coeff::LambdaTable load_lambda(const RunConfig& cfg, std::ostream& log);
// L(1, phi) from the golden L1 file, computing and storing it on first use.
lfun::L1Value load_l1(const RunConfig& cfg, const coeff::LambdaTable& lambda, std::ostream& log);

int cmd_sums(const RunConfig& cfg, std::ostream& log);
int cmd_fit(const RunConfig& cfg, std::ostream& log);
int cmd_pairs(const RunConfig& cfg, std::ostream& log);
// Defaults to A applied to the Bourgain pair.
int cmd_budget(const RunConfig& cfg, const std::optional<expo::ExponentPair>& pair, std::ostream& log);
int cmd_probe(const RunConfig& cfg, std::ostream& log);
int cmd_verify_all(const RunConfig& cfg, std::ostream& log);

}  // namespace isobar3::cli
