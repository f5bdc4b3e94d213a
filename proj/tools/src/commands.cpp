#include "isobar3/cli/commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "isobar3/budget.hpp"
#include "isobar3/cli/manifest.hpp"
#include "isobar3/coeff_io.hpp"

namespace isobar3::cli {
namespace {

namespace fs = std::filesystem;
constexpr const char* kModule = "cli_orchestrator";

coeff::CuspFormSpec form_of(const RunConfig& cfg) { return {cfg.weight, 1, cfg.label}; }

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(Errc::io_error, kModule, "cannot create " + dir.string() + ": " + ec.message());
}

void write_output(const RunConfig& cfg, const std::string& name, const std::string& text, std::ostream& log) {
  ensure_dir(cfg.output_dir);
  coeff::write_file_atomic(cfg.output_dir / name, text);
  log << "wrote " << (cfg.output_dir / name).string() << "\n";
}

void write_json(const RunConfig& cfg, const std::string& name, const json& j, std::ostream& log) {
  write_output(cfg, name, j.dump(2) + "\n", log);
}

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json config_json(const RunConfig& cfg) {
  json probes = json::array();
  for (const auto& p : cfg.probes) probes.push_back({{"x", num(p.x)}, {"t_exponent", num(p.t_exponent)}});
  json grid = {{"kind", cfg.grid.kind}};
  if (cfg.grid.kind == "points") {
    grid["points"] = cfg.grid.points;
  } else {
    const auto [lo, hi] = dyadic_range(cfg);
    grid["lo"] = lo;
    grid["hi"] = hi;
  }
  return {{"n", cfg.n},
          {"weight", cfg.weight},
          {"label", cfg.label},
          {"grid", grid},
          {"windows",
           {{"base_x", cfg.windows.base_x},
            {"exponent", num(cfg.windows.exponent)},
            {"count", cfg.windows.count},
            {"seed", cfg.windows.seed}}},
          {"probes", probes},
          {"verify",
           {{"oracle_n", cfg.verify.oracle_n},
            {"audit_n", cfg.verify.audit_n},
            {"convolution_n", cfg.verify.convolution_n},
            {"timing_n", cfg.verify.timing_n},
            {"pair_depth", cfg.verify.pair_depth},
            {"seed", cfg.verify.seed}}}};
}

json pair_json(const expo::ExponentPair& p) {
  json j = {{"p", p.p.str()}, {"q", p.q.str()}, {"seed", p.seed}, {"word", p.word}};
  try {
    j["theta"] = expo::objective_theta(p).str();
  } catch (const Error&) {
    j["theta"] = nullptr;
  }
  return j;
}

}  // namespace

int exit_code_for(Errc code) noexcept {
  switch (code) {
    case Errc::config_error:
    case Errc::capacity_exceeded:
    case Errc::invalid_argument:
    case Errc::unsupported_form:
    case Errc::grid_out_of_range:
    case Errc::bad_geometry:
    case Errc::table_too_short:
      return exit_config;
    case Errc::io_error:
      return exit_io;
    default:
      return exit_check;
  }
}

sums::GridSpec make_grid(const RunConfig& cfg) {
  if (cfg.grid.kind == "points") return sums::GridSpec::points(cfg.grid.points);
  const auto [lo, hi] = dyadic_range(cfg);
  return sums::GridSpec::dyadic(lo, hi);
}

std::pair<unsigned, unsigned> dyadic_range(const RunConfig& cfg) {
  unsigned top = 0;
  while (top < 62 && (std::uint64_t(2) << top) <= cfg.n) ++top;
  const unsigned lo = cfg.grid.kind == "dyadic" ? cfg.grid.lo : 10;
  const unsigned hi = cfg.grid.kind == "dyadic" && cfg.grid.hi != 0 ? cfg.grid.hi : top;
  return {lo, hi};
}

json sweep_json(const osc::ProbeSweep& sweep) {
  json pts = json::array();
  for (const auto& p : sweep.points)
    pts.push_back({{"L", num(p.L)},
                   {"M", num(p.M)},
                   {"measured", num(p.measured_abs)},
                   {"mean_inner", num(p.mean_inner)},
                   {"predicted", num(p.predicted)},
                   {"ratio", num(p.ratio)}});
  const json head = sweep.points.empty()
                        ? json::object()
                        : json{{"X", num(sweep.points.front().X)}, {"T", num(sweep.points.front().T)}};
  json j = head;
  j["points"] = std::move(pts);
  j["inner_slope"] = num(sweep.inner_slope);
  j["predicted_slope"] = num(sweep.predicted_slope);
  j["max_ratio"] = num(sweep.max_ratio);
  return j;
}

std::uint64_t effective_window_base(const RunConfig& cfg) {
  const auto fits = [&](std::uint64_t b) {
    const double top = 2.0 * static_cast<double>(b);
    return top + std::pow(top, cfg.windows.exponent) <= static_cast<double>(cfg.n);
  };
  std::uint64_t b = cfg.windows.base_x;
  if (fits(b)) return b;
  std::uint64_t lo = 1, hi = b;  // fits(lo) may still fail for tiny tables
  while (lo + 1 < hi) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    (fits(mid) ? lo : hi) = mid;
  }
  return lo;
}

CacheNames CacheNames::for_config(const RunConfig& cfg) {
  const std::string tail = "_k" + std::to_string(cfg.weight) + "_n" + std::to_string(cfg.n);
  return {"lambda_" + cfg.label + tail + ".ib3", "tau_" + cfg.label + "_golden.txt", "l1_" + cfg.label + tail + ".txt"};
}

SieveOutcome cmd_sieve(const RunConfig& cfg, std::ostream& log) {
  const auto names = CacheNames::for_config(cfg);
  Manifest man(cfg.cache_dir);
  SieveOutcome out{false, cfg.cache_dir / names.lambda};
  std::error_code ec;
  if (fs::exists(out.cache, ec)) {
    man.load(names.lambda);
    const auto header = coeff::read_cache_header(out.cache);
    if (!header || header->n != cfg.n || header->weight != static_cast<std::uint32_t>(cfg.weight))
      throw Error(Errc::integrity_error, kModule, out.cache.string() + " does not match its file name");
    log << "cache up to date: " << out.cache.string() << "\n";
    return out;
  }

  const auto spec = form_of(cfg);
  const coeff::BuildOptions opts{.cap = cfg.cap, .threads = cfg.threads};
  if (spec.is_delta()) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto tau = coeff::build_tau_table(cfg.n, spec, opts);
    const auto lambda = coeff::normalize(tau, spec, opts);
    log << "built tau table N=" << cfg.n << " in "
        << std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() << " s\n";
    man.store(names.golden, coeff::format_golden_tau(tau, std::min<std::size_t>(cfg.n, 10'000)));
    man.store(names.lambda, coeff::encode_cache(lambda));
  } else {
    if (!cfg.coefficient_file)
      throw Error(Errc::unsupported_form, kModule, "form '" + cfg.label + "' needs a coefficient file");
    const auto tau = coeff::read_golden_tau(*cfg.coefficient_file, spec);
    if (tau.size() < cfg.n)
      throw Error(Errc::table_too_short, kModule,
                  cfg.coefficient_file->string() + " has " + std::to_string(tau.size()) + " coefficients, need " +
                      std::to_string(cfg.n));
    const auto full = coeff::normalize(tau, spec, opts);
    std::vector<double> head(full.values().begin(), full.values().begin() + static_cast<std::ptrdiff_t>(cfg.n));
    man.store(names.lambda, coeff::encode_cache(coeff::LambdaTable(cfg.weight, std::move(head))));
  }
  log << "wrote " << out.cache.string() << "\n";
  out.rebuilt = true;
  return out;
}

coeff::LambdaTable load_lambda(const RunConfig& cfg, std::ostream& log) {
  cmd_sieve(cfg, log);
  const auto names = CacheNames::for_config(cfg);
  const auto bytes = Manifest(cfg.cache_dir).load(names.lambda);
  return coeff::decode_cache(bytes);
}

lfun::L1Value load_l1(const RunConfig& cfg, const coeff::LambdaTable& lambda, std::ostream& log) {
  const auto names = CacheNames::for_config(cfg);
  Manifest man(cfg.cache_dir);
  if (man.has(names.l1)) {
    const auto bytes = man.load(names.l1);
    std::istringstream in(std::string(bytes.begin(), bytes.end()));
    lfun::L1Value v;
    if (!(in >> v.value >> v.scheme_a >> v.scheme_b >> v.digits))
      throw Error(Errc::integrity_error, kModule, "malformed " + names.l1);
    v.difference = std::abs(v.scheme_a - v.scheme_b);
    return v;
  }
  const auto v = lfun::l1_phi(lambda, 10);
  man.store(names.l1, g17(v.value) + "\n" + g17(v.scheme_a) + "\n" + g17(v.scheme_b) + "\n" +
                          std::to_string(v.digits) + "\n");
  log << "L(1, phi) = " << g17(v.value) << " (schemes differ by " << v.difference << ")\n";
  return v;
}

int cmd_sums(const RunConfig& cfg, std::ostream& log) {
  const auto lambda = load_lambda(cfg, log);
  const auto table = sums::build_isobaric(lambda, cfg.threads);
  const auto l1 = load_l1(cfg, lambda, log);
  const auto series = sums::partial_sums(table, make_grid(cfg), l1.value);
  const auto& w = cfg.windows;
  const auto scan = sums::short_interval_scan(table, effective_window_base(cfg), w.exponent, w.count, l1.value, w.seed);
  write_output(cfg, "partial_sums.csv", sums::to_csv(series), log);
  write_output(cfg, "windows.csv", sums::to_csv(scan), log);
  write_json(cfg, "sums.json",
             {{"config", config_json(cfg)},
              {"l1", num(l1.value)},
              {"grid_points", series.grid.size()},
              {"windows",
               {{"aggregate_mean", num(scan.aggregate_mean)},
                {"standard_error", num(scan.standard_error)},
                {"deviation", num(scan.deviation)},
                {"z_score", num(scan.z_score)}}}},
             log);
  return exit_pass;
}

int cmd_fit(const RunConfig& cfg, std::ostream& log) {
  const auto lambda = load_lambda(cfg, log);
  const auto table = sums::build_isobaric(lambda, cfg.threads);
  const auto l1 = load_l1(cfg, lambda, log);
  const auto series = sums::partial_sums(table, make_grid(cfg), l1.value);
  const auto fit = sums::fit_error_exponent(series);
  const auto [lo, hi] = dyadic_range(cfg);
  const auto blocks = sums::dyadic_block_maxima(table, l1.value, lo, hi);
  const auto trend = sums::quartile_trend(blocks.max_ratio);
  json bm = json::array();
  for (std::size_t i = 0; i < blocks.block_end.size(); ++i)
    bm.push_back({{"block_end", blocks.block_end[i]}, {"max_ratio", num(blocks.max_ratio[i])}});
  write_json(cfg, "fit.json",
             {{"config", config_json(cfg)},
              {"l1", num(l1.value)},
              {"slope", num(fit.slope)},
              {"intercept", num(fit.intercept)},
              {"r2", num(fit.r2)},
              {"points_used", fit.used},
              {"block_maxima", bm},
              {"first_quartile_mean", num(trend.first_quartile_mean)},
              {"last_quartile_mean", num(trend.last_quartile_mean)}},
             log);
  log << "fitted exponent " << fit.slope << " over " << fit.used << " points\n";
  return exit_pass;
}

int cmd_pairs(const RunConfig& cfg, std::ostream& log) {
  const auto search = expo::search_pairs(cfg.verify.pair_depth);
  json pairs = json::array();
  for (const auto& p : search.pairs) pairs.push_back(pair_json(p));
  write_json(cfg, "pairs.json",
             {{"depth", cfg.verify.pair_depth},
              {"words_enumerated", search.words_enumerated},
              {"theta_min", search.theta_min.str()},
              {"best", pair_json(search.best)},
              {"pairs", pairs}},
             log);
  log << "theta_min = " << search.theta_min.str() << " from " << search.best.seed << " with word '"
      << search.best.word << "'\n";
  return exit_pass;
}

int cmd_budget(const RunConfig& cfg, const std::optional<expo::ExponentPair>& pair, std::ostream& log) {
  const auto p = pair ? *pair : expo::a_process(expo::bourgain_pair());
  const auto b = expo::verify_budget(p);
  const auto regime = expo::jutila_regime_check();
  json corners = json::array();
  for (const auto& c : regime.corners) corners.push_back(c.str());
  write_json(cfg, "budget.json",
             {{"pair", pair_json(p)},
              {"case1", b.case1.str()},
              {"case2", b.case2.str()},
              {"threshold", {{"T", b.threshold_T_exponent.str()}, {"X", b.threshold_X_exponent.str()}}},
              {"balanced_bound", {{"T", b.case1_T_exponent.str()}, {"X", b.case1_X_exponent.str()}}},
              {"delta_max", b.delta_max.str()},
              {"trivial_range_delta", b.trivial_range_delta.str()},
              {"half_power_delta", b.half_power_delta.str()},
              {"jutila_range_delta", b.jutila_range_delta.str()},
              {"regime_corners", corners},
              {"regime_ok", regime.ok}},
             log);
  log << "balanced bound T^" << b.case1_T_exponent.str() << " X^" << b.case1_X_exponent.str() << "\n";
  log << "delta_max = " << b.delta_max.str() << "\n";
  return exit_pass;
}

int cmd_probe(const RunConfig& cfg, std::ostream& log) {
  const auto lambda = load_lambda(cfg, log);
  const auto pair = expo::a_process(expo::bourgain_pair());
  json all = json::array();
  for (std::size_t i = 0; i < cfg.probes.size(); ++i) {
    const auto& p = cfg.probes[i];
    const auto sweep = osc::exp_sum_sweep(p.x, std::pow(p.x, p.t_exponent), lambda, pair, cfg.threads);
    write_output(cfg, "probe_" + std::to_string(i) + ".csv", osc::to_csv(sweep), log);
    all.push_back(sweep_json(sweep));
    log << "probe " << i << ": max ratio " << sweep.max_ratio << "\n";
  }
  write_json(cfg, "probe.json", {{"pair", pair_json(pair)}, {"probes", all}}, log);
  return exit_pass;
}

int cmd_verify_all(const RunConfig& cfg, std::ostream& log) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto lambda = load_lambda(cfg, log);
  const auto table = sums::build_isobaric(lambda, cfg.threads);
  const auto l1 = load_l1(cfg, lambda, log);

  std::vector<mpz_class> golden;
  const auto names = CacheNames::for_config(cfg);
  Manifest man(cfg.cache_dir);
  if (form_of(cfg).is_delta() && man.has(names.golden)) {
    man.load(names.golden);
    const auto tau = coeff::read_golden_tau(cfg.cache_dir / names.golden, form_of(cfg));
    golden.reserve(tau.size());
    for (std::size_t n = 1; n <= tau.size(); ++n) golden.push_back(tau.at(n));
  }

  const CheckContext ctx{cfg, lambda, table, l1, std::move(golden)};
  const auto results = run_all_checks(ctx);

  json checks = json::array();
  json criteria = json::object();
  bool all = true;
  for (const auto& r : results) {
    checks.push_back(to_json(r, !cfg.compare));
    all = all && r.passed;
    if (r.criterion > 0) {
      const auto key = std::to_string(r.criterion);
      criteria[key] = criteria.value(key, true) && r.passed;
    }
    log << (r.passed ? "PASS " : "FAIL ") << r.id;
    if (!r.passed) log << ": " << r.detail;
    log << "\n";
  }
  json summary = {{"tool", "isobar3"},
                  {"config", config_json(cfg)},
                  {"l1", num(l1.value)},
                  {"checks", checks},
                  {"criteria", criteria},
                  {"passed", all}};
  if (!cfg.compare)
    summary["seconds"] = num(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  write_json(cfg, "summary.json", summary, log);
  return all ? exit_pass : exit_check;
}

}  // namespace isobar3::cli
