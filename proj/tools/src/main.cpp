#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "isobar3/cli/commands.hpp"
#include "isobar3/cli/config.hpp"
#include "isobar3/error.hpp"
#include "isobar3/rational.hpp"

namespace {

using namespace isobar3;
using namespace isobar3::cli;

struct Overrides {
  std::string config;
  std::optional<std::size_t> n, cap, window_count, oracle_n, audit_n, timing_n;
  std::optional<int> weight;
  std::optional<unsigned> threads, grid_lo, grid_hi, depth;
  std::optional<std::string> label, out, cache_dir, coefficient_file;
  std::optional<std::uint64_t> seed, window_base;
  std::optional<double> window_exponent, probe_x, probe_t_exponent;
  std::vector<std::uint64_t> grid_points;
  bool compare = false;
  std::optional<std::string> p, q;
};

void add_common(CLI::App& app, Overrides& o) {
  app.add_option("-c,--config", o.config, "TOML run configuration")->check(CLI::ExistingFile);
  app.add_option("--n", o.n, "Coefficient table length N");
  app.add_option("--weight", o.weight, "Weight k of the form");
  app.add_option("--label", o.label, "Form label (delta is built natively)");
  app.add_option("--coefficient-file", o.coefficient_file, "Golden tau file for forms other than delta");
  app.add_option("--cap", o.cap, "Largest admissible N");
  app.add_option("-j,--threads", o.threads, "Worker threads");
  app.add_option("-o,--out", o.out, "Output directory");
  app.add_option("--cache-dir", o.cache_dir, "Cache directory (env ISOBAR3_CACHE_DIR)");
  app.add_flag("--compare", o.compare, "Comparison mode: no timings in JSON output");
  app.add_option("--grid-lo", o.grid_lo, "Dyadic grid: smallest exponent");
  app.add_option("--grid-hi", o.grid_hi, "Dyadic grid: largest exponent (0 = log2 N)");
  app.add_option("--grid-points", o.grid_points, "Explicit grid points (switches grid kind to points)");
  app.add_option("--window-base", o.window_base, "Short windows: X drawn from [base, 2 base)");
  app.add_option("--window-exponent", o.window_exponent, "Short windows: Y = X^exponent");
  app.add_option("--window-count", o.window_count, "Short windows: number of windows");
  app.add_option("--seed", o.seed, "Short windows: RNG seed");
  app.add_option("--probe-x", o.probe_x, "Oscillatory probe: X (replaces the probe list)");
  app.add_option("--probe-t-exponent", o.probe_t_exponent, "Oscillatory probe: T = X^exponent");
  app.add_option("--depth", o.depth, "Exponent-pair search depth");
  app.add_option("--oracle-n", o.oracle_n, "verify-all: naive oracle length");
  app.add_option("--audit-n", o.audit_n, "verify-all: exact Hecke audit limit");
  app.add_option("--timing-n", o.timing_n, "verify-all: timed build length (0 skips)");
}

RunConfig resolve(const Overrides& o) {
  RunConfig cfg = o.config.empty() ? RunConfig{} : load_config(o.config);
  apply_environment(cfg);
  if (o.n) cfg.n = *o.n;
  if (o.weight) cfg.weight = *o.weight;
  if (o.label) cfg.label = *o.label;
  if (o.coefficient_file) cfg.coefficient_file = *o.coefficient_file;
  if (o.cap) cfg.cap = *o.cap;
  if (o.threads) cfg.threads = *o.threads;
  if (o.out) cfg.output_dir = *o.out;
  if (o.cache_dir) cfg.cache_dir = *o.cache_dir;
  if (o.compare) cfg.compare = true;
  if (o.grid_lo) cfg.grid.lo = *o.grid_lo;
  if (o.grid_hi) cfg.grid.hi = *o.grid_hi;
  if (!o.grid_points.empty()) {
    cfg.grid.kind = "points";
    cfg.grid.points = o.grid_points;
  }
  if (o.window_base) cfg.windows.base_x = *o.window_base;
  if (o.window_exponent) cfg.windows.exponent = *o.window_exponent;
  if (o.window_count) cfg.windows.count = *o.window_count;
  if (o.seed) cfg.windows.seed = *o.seed;
  if (o.probe_x || o.probe_t_exponent) {
    ProbeConfig p = cfg.probes.empty() ? ProbeConfig{} : cfg.probes.front();
    if (o.probe_x) p.x = *o.probe_x;
    if (o.probe_t_exponent) p.t_exponent = *o.probe_t_exponent;
    cfg.probes = {p};
  }
  if (o.depth) cfg.verify.pair_depth = *o.depth;
  if (o.oracle_n) cfg.verify.oracle_n = *o.oracle_n;
  if (o.audit_n) cfg.verify.audit_n = *o.audit_n;
  if (o.timing_n) cfg.verify.timing_n = *o.timing_n;
  validate(cfg);
  return cfg;
}

std::optional<expo::ExponentPair> budget_pair(const Overrides& o) {
  if (!o.p && !o.q) return std::nullopt;
  if (!o.p || !o.q) throw Error(Errc::config_error, "cli_orchestrator", "--p and --q go together");
  expo::ExponentPair pair{expo::Rational::parse(*o.p), expo::Rational::parse(*o.q), "", "user"};
  if (!expo::is_valid(pair))
    throw Error(Errc::config_error, "cli_orchestrator", "(" + *o.p + ", " + *o.q + ") is not an exponent pair");
  return pair;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"isobar3: coefficient tables, isobaric sums and exponent-pair checks"};
  app.require_subcommand(1);
  Overrides o;
  add_common(app, o);

  auto* sieve = app.add_subcommand("sieve", "Build the coefficient cache and golden tau file");
  auto* sums = app.add_subcommand("sums", "Partial sums on the grid and short-window averages (CSV)");
  auto* fit = app.add_subcommand("fit", "Fit the error-term exponent and dyadic block maxima");
  auto* pairs = app.add_subcommand("pairs", "Exponent-pair search over both seeds");
  auto* budget = app.add_subcommand("budget", "Verify the exponent budget for a pair");
  budget->add_option("--p", o.p, "Pair first coordinate, e.g. 13/194");
  budget->add_option("--q", o.q, "Pair second coordinate, e.g. 76/97");
  auto* probe = app.add_subcommand("probe", "Oscillatory exponential-sum probe sweeps");
  auto* verify = app.add_subcommand("verify-all", "Run every check and write summary.json");
  for (auto* sub : {sieve, sums, fit, pairs, budget, probe, verify}) sub->fallthrough();

  app.footer(
      "Exit codes: 0 pass, 2 config error, 3 check failure, 4 I/O error.\n"
      "ISOBAR3_CACHE_DIR overrides the cache location from the config file.");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : exit_config;
  }

  try {
    const RunConfig cfg = resolve(o);
    auto& log = std::cerr;
    if (sieve->parsed()) return (cmd_sieve(cfg, log), exit_pass);
    if (sums->parsed()) return cmd_sums(cfg, log);
    if (fit->parsed()) return cmd_fit(cfg, log);
    if (pairs->parsed()) return cmd_pairs(cfg, log);
    if (budget->parsed()) return cmd_budget(cfg, budget_pair(o), log);
    if (probe->parsed()) return cmd_probe(cfg, log);
    if (verify->parsed()) return cmd_verify_all(cfg, log);
  } catch (const Error& e) {
    std::cerr << "error [" << errc_name(e.code()) << "] " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_check;
  }
  return exit_config;
}
