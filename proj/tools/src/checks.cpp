#include "isobar3/cli/checks.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <random>

#include "isobar3/budget.hpp"
#include "isobar3/cli/commands.hpp"
#include "isobar3/error.hpp"
#include "isobar3/exponent_pairs.hpp"
#include "isobar3/oscillatory.hpp"
#include "isobar3/reference/oracles.hpp"
#include "isobar3/window.hpp"

namespace isobar3::cli {
namespace {

using cplx = std::complex<double>;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

void require(CheckResult& r, bool ok, const std::string& what) {
  if (!ok) {
    r.passed = false;
    if (!r.detail.empty()) r.detail += "; ";
    r.detail += what;
  }
}

CheckResult start(std::string id, int criterion) {
  CheckResult r;
  r.id = std::move(id);
  r.criterion = criterion;
  r.passed = true;
  return r;
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

}  // namespace

double round12(double v) {
  if (!std::isfinite(v) || v == 0) return v;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

json num(double v) {
  if (!std::isfinite(v)) return nullptr;
  return round12(v);
}

json num(cplx z) { return json::array({num(z.real()), num(z.imag())}); }

CheckResult check_coeff_oracle(const CheckContext& ctx) {
  auto r = start("coeff_oracle", 1);
  const auto& v = ctx.cfg.verify;
  const auto fast = coeff::build_tau_table(v.oracle_n);
  const auto naive = reference::naive_tau(v.oracle_n);
  std::size_t mismatches = 0;
  for (std::size_t n = 1; n <= v.oracle_n; ++n)
    if (fast.at(n) != naive[n - 1]) ++mismatches;
  r.metrics["oracle_n"] = v.oracle_n;
  r.metrics["mismatches"] = mismatches;
  r.metrics["tau_2"] = fast.at(2).get_str();
  r.metrics["tau_oracle_n"] = fast.at(v.oracle_n).get_str();
  require(r, mismatches == 0, std::to_string(mismatches) + " entries differ from the naive expansion");

  if (!ctx.golden_tau.empty()) {
    const auto golden = coeff::build_tau_table(ctx.golden_tau.size());
    std::size_t bad = 0;
    for (std::size_t n = 1; n <= golden.size(); ++n)
      if (golden.at(n) != ctx.golden_tau[n - 1]) ++bad;
    r.metrics["golden_entries"] = ctx.golden_tau.size();
    r.metrics["golden_mismatches"] = bad;
    require(r, bad == 0, "golden tau file disagrees with a fresh build");
  }

  if (v.timing_n > 0) {
    const auto t0 = Clock::now();
    const auto tau = coeff::build_tau_table(v.timing_n, coeff::CuspFormSpec::delta(),
                                            {.cap = ctx.cfg.cap, .threads = ctx.cfg.threads});
    const auto lam = coeff::normalize(tau, coeff::CuspFormSpec::delta(), {.threads = ctx.cfg.threads});
    const double elapsed = seconds_since(t0);
    r.metrics["timing_n"] = v.timing_n;
    r.metrics["timing_limit_seconds"] = num(v.timing_limit_seconds);
    r.metrics["timing_within_limit"] = elapsed < v.timing_limit_seconds;
    require(r, elapsed < v.timing_limit_seconds,
            "build of N=" + std::to_string(v.timing_n) + " took " + fmt("%.1f s", elapsed));
    (void)lam;
  }
  return r;
}

CheckResult check_hecke_deligne(const CheckContext& ctx) {
  auto r = start("hecke_deligne", 2);
  const std::size_t n = std::min(ctx.cfg.verify.audit_n, ctx.lambda.size());
  const auto tau = coeff::build_tau_table(n, coeff::CuspFormSpec::delta(), {.cap = ctx.cfg.cap, .threads = ctx.cfg.threads});
  const auto audit = coeff::exact_audit(tau, n);
  r.metrics["limit"] = audit.limit;
  r.metrics["multiplicative_checks"] = audit.multiplicative_checks;
  r.metrics["recurrence_checks"] = audit.recurrence_checks;
  r.metrics["deligne_prime_checks"] = audit.deligne_prime_checks;
  r.metrics["divisor_bound_checks"] = audit.divisor_bound_checks;
  r.metrics["violations"] = audit.violation_count;
  require(r, audit.violation_count == 0, std::to_string(audit.violation_count) + " exact violations");

  const auto hecke = coeff::hecke_selfcheck(ctx.lambda);
  r.metrics["float_table_n"] = ctx.lambda.size();
  r.metrics["max_prime_square_deviation"] = num(hecke.max_prime_square_deviation);
  r.metrics["max_multiplicative_deviation"] = num(hecke.max_multiplicative_deviation);
  r.metrics["max_abs_lambda_p"] = num(hecke.max_prime_abs);
  r.metrics["max_lambda_over_divisors"] = num(hecke.max_divisor_ratio);
  return r;
}

CheckResult check_convolution_oracle(const CheckContext& ctx) {
  auto r = start("convolution_oracle", 0);
  const std::size_t n = std::min(ctx.cfg.verify.convolution_n, ctx.isobaric.size());
  double worst = 0;
  std::size_t worst_n = 1;
  for (std::size_t m = 1; m <= n; ++m) {
    const double want = reference::divisor_sum(ctx.lambda.values(), m);
    const double dev = std::abs(ctx.isobaric[m] - want) / std::max(1.0, std::abs(want));
    if (dev > worst) worst = dev, worst_n = m;
  }
  r.metrics["limit"] = n;
  r.metrics["max_relative_deviation"] = num(worst);
  r.metrics["worst_n"] = worst_n;
  require(r, worst <= 1e-10, "isobaric table deviates from the divisor-sum oracle by " + fmt("%.3e", worst));
  return r;
}

CheckResult check_functional_equation(const CheckContext& ctx) {
  auto r = start("functional_equation", 3);
  json pts = json::array();
  for (cplx s : {cplx(2, 0), cplx(1.5, 10), cplx(3, -4)}) {
    const auto fe = lfun::check_functional_equation(ctx.lambda, s);
    pts.push_back({{"s", num(s)},
                   {"lhs", num(fe.lhs)},
                   {"rhs", num(fe.rhs)},
                   {"residual", num(fe.residual)},
                   {"truncation_estimate", num(fe.truncation_estimate)}});
    require(r, fe.residual <= 1e-6, "residual " + fmt("%.3e", fe.residual) + " at s = " +
                                        fmt("%g", s.real()) + fmt("%+gi", s.imag()));
  }
  r.metrics["points"] = std::move(pts);

  const cplx g_half = lfun::gamma_ratio(0.5, ctx.lambda.weight());
  r.metrics["gamma_half"] = num(g_half);
  require(r, std::abs(g_half - 1.0) <= 1e-10, "gamma(1/2) deviates from 1");

  const auto g = lfun::GammaFactor::for_weight(ctx.lambda.weight());
  std::mt19937_64 rng(ctx.cfg.verify.seed);
  std::uniform_real_distribution<double> sig(-2.0, 3.0), tt(-40.0, 40.0);
  double worst = 0;
  for (int i = 0; i < 20; ++i) {
    const cplx s(sig(rng), tt(rng));
    const cplx a = lfun::gamma_ratio(s, ctx.lambda.weight());
    const cplx b = lfun::gamma_ratio_product(s, g);
    worst = std::max(worst, std::abs(a - b) / std::abs(b));
  }
  r.metrics["gamma_forms_points"] = 20;
  r.metrics["gamma_forms_max_relative_difference"] = num(worst);
  require(r, worst <= 1e-10, "gamma formulas differ by " + fmt("%.3e", worst));
  return r;
}

CheckResult check_l1_constant(const CheckContext& ctx) {
  auto r = start("l1_constant", 0);
  r.metrics["value"] = num(ctx.l1.value);
  r.metrics["scheme_a"] = num(ctx.l1.scheme_a);
  r.metrics["scheme_b"] = num(ctx.l1.scheme_b);
  r.metrics["difference"] = num(ctx.l1.difference);
  r.metrics["digits"] = ctx.l1.digits;
  require(r, ctx.l1.difference <= 1e-10 * std::max(1.0, std::abs(ctx.l1.scheme_b)), "schemes disagree");
  return r;
}

CheckResult check_exponent_pairs(const CheckContext& ctx) {
  auto r = start("exponent_pairs", 4);
  const auto t0 = Clock::now();
  const auto ab = expo::a_process(expo::bourgain_pair());
  r.metrics["a_of_bourgain"] = {ab.p.str(), ab.q.str()};
  require(r, ab.p == expo::Rational(13, 194) && ab.q == expo::Rational(76, 97), "A(13/84, 55/84) != (13/194, 76/97)");
  const auto theta = expo::objective_theta(ab);
  r.metrics["theta"] = theta.str();
  require(r, theta == expo::Rational(731, 1478), "theta != 731/1478");

  const auto b = expo::verify_budget(ab);
  r.metrics["budget"] = {{"case1", b.case1.str()},
                         {"case2", b.case2.str()},
                         {"threshold", {b.threshold_T_exponent.str(), b.threshold_X_exponent.str()}},
                         {"balanced_bound", {b.case1_T_exponent.str(), b.case1_X_exponent.str()}},
                         {"delta_max", b.delta_max.str()},
                         {"trivial_range_delta", b.trivial_range_delta.str()},
                         {"half_power_delta", b.half_power_delta.str()},
                         {"jutila_range_delta", b.jutila_range_delta.str()}};
  require(r, b.case1_T_exponent == expo::Rational(1195, 456) && b.case1_X_exponent == expo::Rational(-249, 304),
          "balanced bound is not T^{1195/456} X^{-249/304}");
  require(r, b.delta_max == expo::Rational(4, 739), "delta_max = " + b.delta_max.str() + ", expected 4/739");

  const auto search = expo::search_pairs(ctx.cfg.verify.pair_depth);
  r.metrics["search"] = {{"depth", ctx.cfg.verify.pair_depth},
                         {"words_enumerated", search.words_enumerated},
                         {"distinct_pairs", search.pairs.size()},
                         {"theta_min", search.theta_min.str()},
                         {"best", {search.best.p.str(), search.best.q.str()}},
                         {"best_seed", search.best.seed},
                         {"best_word", search.best.word}};
  require(r, search.theta_min == expo::Rational(731, 1478), "search theta_min = " + search.theta_min.str());
  const double elapsed = seconds_since(t0);
  require(r, elapsed < 5.0, "pair arithmetic took " + fmt("%.2f s", elapsed));
  return r;
}

CheckResult check_jutila_regime(const CheckContext&) {
  auto r = start("jutila_regime", 0);
  const auto rep = expo::jutila_regime_check();
  json corners = json::array();
  for (const auto& c : rep.corners) corners.push_back(c.str());
  r.metrics["corners"] = std::move(corners);
  r.metrics["binding"] = rep.binding;
  require(r, rep.ok, "regime violated");
  return r;
}

CheckResult check_error_exponent(const CheckContext& ctx) {
  auto r = start("error_exponent", 5);
  const auto t0 = Clock::now();
  const auto series = sums::partial_sums(ctx.isobaric, make_grid(ctx.cfg), ctx.l1.value);
  const auto fit = sums::fit_error_exponent(series);
  r.metrics["grid_first"] = series.grid.front();
  r.metrics["grid_last"] = series.grid.back();
  r.metrics["grid_points"] = series.grid.size();
  r.metrics["slope"] = num(fit.slope);
  r.metrics["intercept"] = num(fit.intercept);
  r.metrics["r2"] = num(fit.r2);
  r.metrics["points_used"] = fit.used;
  require(r, fit.slope < 0.5, "fitted exponent " + fmt("%.4f", fit.slope) + " is not below 1/2");

  const auto [lo, hi] = dyadic_range(ctx.cfg);
  const auto blocks = sums::dyadic_block_maxima(ctx.isobaric, ctx.l1.value, lo, hi);
  const auto trend = sums::quartile_trend(blocks.max_ratio);
  json bm = json::array();
  for (double v : blocks.max_ratio) bm.push_back(num(v));
  r.metrics["block_lo_exponent"] = lo;
  r.metrics["block_hi_exponent"] = hi;
  r.metrics["block_max_ratio"] = std::move(bm);
  r.metrics["first_quartile_mean"] = num(trend.first_quartile_mean);
  r.metrics["last_quartile_mean"] = num(trend.last_quartile_mean);
  require(r, trend.last_quartile_mean <= 2 * trend.first_quartile_mean, "block maxima grow");
  const double elapsed = seconds_since(t0);
  require(r, elapsed < 120, "error-term scan took " + fmt("%.1f s", elapsed));
  return r;
}

CheckResult check_short_windows(const CheckContext& ctx) {
  auto r = start("short_windows", 6);
  const auto& w = ctx.cfg.windows;
  const auto base = effective_window_base(ctx.cfg);
  const auto scan = sums::short_interval_scan(ctx.isobaric, base, w.exponent, w.count, ctx.l1.value, w.seed);
  r.metrics["windows"] = w.count;
  r.metrics["base_x_requested"] = w.base_x;
  r.metrics["base_x"] = base;
  r.metrics["exponent"] = num(w.exponent);
  r.metrics["seed"] = w.seed;
  r.metrics["aggregate_mean"] = num(scan.aggregate_mean);
  r.metrics["standard_error"] = num(scan.standard_error);
  r.metrics["target"] = num(ctx.l1.value);
  r.metrics["z_score"] = num(scan.z_score);
  require(r, std::abs(scan.z_score) <= 3, "aggregate mean is " + fmt("%.2f", scan.z_score) + " standard errors off");
  return r;
}

CheckResult check_stationary_phase(const CheckContext&) {
  auto r = start("stationary_phase", 7);
  json pts = json::array();
  double prev = INFINITY;
  for (double T : {100.0, 200.0, 400.0}) {
    // xi0 = 2 pi (nX)^{1/3} / T = 1 with n = 1
    const double X = std::pow(T / (2 * M_PI), 3);
    const auto sp = osc::stationary_phase_check(1, X, T);
    pts.push_back({{"T", num(T)},
                   {"xi0", num(sp.xi0)},
                   {"numeric", num(sp.numeric)},
                   {"leading", num(sp.leading)},
                   {"rel_err", num(sp.rel_err)},
                   {"bound", num(2 / T)}});
    require(r, sp.rel_err <= 2 / T, "rel_err " + fmt("%.3e", sp.rel_err) + " above 2/T at T = " + fmt("%g", T));
    require(r, sp.rel_err < prev, "rel_err not decreasing at T = " + fmt("%g", T));
    prev = sp.rel_err;
  }
  r.metrics["points"] = std::move(pts);
  return r;
}

CheckResult check_mellin_window(const CheckContext&) {
  auto r = start("mellin_window", 8);
  json pts = json::array();
  for (double ratio : {1e-2, 1e-3}) {
    const double X = 1e6;
    const auto w = osc::make_window(X, ratio * X);
    std::vector<cplx> samples;
    for (double t = 1; t <= 64 / ratio; t *= 2) samples.emplace_back(-0.01, t);
    const auto rep = osc::mellin_decay_check(w, samples);
    pts.push_back({{"X", num(X)},
                   {"Y", num(ratio * X)},
                   {"at_one", num(rep.at_one)},
                   {"at_one_deviation", num(rep.at_one_deviation)},
                   {"samples", samples.size()},
                   {"C1", num(rep.fitted_constants[0])},
                   {"C2", num(rep.fitted_constants[1])},
                   {"C3", num(rep.fitted_constants[2])},
                   {"form_disagreement", num(rep.max_form_disagreement)}});
    require(r, rep.at_one_deviation <= 5 * ratio, "W~(1) off by " + fmt("%.3e", rep.at_one_deviation));
    require(r, rep.fitted_constants[0] <= 10 && rep.fitted_constants[1] <= 10,
            "decay constants above 10 at Y/X = " + fmt("%g", ratio));
  }
  r.metrics["points"] = std::move(pts);
  return r;
}

CheckResult check_oscillatory_probe(const CheckContext& ctx) {
  auto r = start("oscillatory_probe", 9);
  const auto pair = expo::a_process(expo::bourgain_pair());
  json probes = json::array();
  for (const auto& p : ctx.cfg.probes) {
    const double T = std::pow(p.x, p.t_exponent);
    const auto sweep = osc::exp_sum_sweep(p.x, T, ctx.lambda, pair, ctx.cfg.threads);
    probes.push_back(sweep_json(sweep));
    require(r, sweep.max_ratio <= 10,
            "measured sum exceeds 10x the prediction (ratio " + fmt("%.3g", sweep.max_ratio) + ")");
  }
  r.metrics["pair"] = {pair.p.str(), pair.q.str()};
  r.metrics["probes"] = std::move(probes);
  return r;
}

std::vector<CheckResult> run_all_checks(const CheckContext& ctx) {
  using Fn = CheckResult (*)(const CheckContext&);
  struct Entry {
    const char* id;
    int criterion;
    Fn fn;
  };
  const Entry entries[] = {
      {"coeff_oracle", 1, check_coeff_oracle},
      {"hecke_deligne", 2, check_hecke_deligne},
      {"convolution_oracle", 0, check_convolution_oracle},
      {"functional_equation", 3, check_functional_equation},
      {"l1_constant", 0, check_l1_constant},
      {"exponent_pairs", 4, check_exponent_pairs},
      {"jutila_regime", 0, check_jutila_regime},
      {"error_exponent", 5, check_error_exponent},
      {"short_windows", 6, check_short_windows},
      {"stationary_phase", 7, check_stationary_phase},
      {"mellin_window", 8, check_mellin_window},
      {"oscillatory_probe", 9, check_oscillatory_probe},
  };
  std::vector<CheckResult> out;
  for (const auto& e : entries) {
    const auto t0 = Clock::now();
    CheckResult r;
    try {
      r = e.fn(ctx);
    } catch (const Error& err) {
      r = start(e.id, e.criterion);
      r.passed = false;
      r.detail = err.what();
      r.metrics["error"] = std::string(errc_name(err.code()));
    }
    r.seconds = seconds_since(t0);
    out.push_back(std::move(r));
  }
  return out;
}

json to_json(const CheckResult& r, bool with_timing) {
  json j;
  j["id"] = r.id;
  if (r.criterion > 0) j["criterion"] = r.criterion;
  j["passed"] = r.passed;
  if (!r.detail.empty()) j["detail"] = r.detail;
  j["metrics"] = r.metrics;
  if (with_timing) j["seconds"] = num(r.seconds);
  return j;
}

}  // namespace isobar3::cli
