#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fixtures.hpp"
#include "isobar3/error.hpp"
#include "isobar3/exponent_pairs.hpp"
#include "isobar3/oscillatory.hpp"
#include "isobar3/quadrature.hpp"
#include "isobar3/smooth.hpp"
#include "isobar3/window.hpp"

using namespace isobar3;
using namespace isobar3::osc;

namespace {

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an isobar3::Error");
  return Errc::invalid_argument;
}

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST_CASE("bump and smooth step") {
  CHECK(bump(0.0) == doctest::Approx(std::exp(-1.0)));
  CHECK(bump(1.0) == 0.0);
  CHECK(bump(-1.5) == 0.0);
  CHECK(bump_mass() == doctest::Approx(0.4439938161680794).epsilon(1e-13));
  CHECK(smooth_step(-0.1) == 0.0);
  CHECK(smooth_step(0.0) == 0.0);
  CHECK(smooth_step(1.0) == 1.0);
  CHECK(smooth_step(0.5) == doctest::Approx(0.5).epsilon(1e-14));
  auto rng = fixtures::rng(6);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double prev_x = 0, prev_s = 0;
  for (int i = 0; i < 500; ++i) {
    const double x = u(rng);
    CHECK(std::abs(smooth_step(x) + smooth_step(1 - x) - 1) <= 1e-14);
    if (x > prev_x) CHECK(smooth_step(x) >= prev_s - 1e-15);
    prev_x = x, prev_s = smooth_step(x);
    const double h = 1e-5;
    for (int k = 0; k < 3; ++k) {
      const double fd = (smooth_step_derivative(x + h, k) - smooth_step_derivative(x - h, k)) / (2 * h);
      const double an = smooth_step_derivative(x, k + 1);
      CHECK(std::abs(fd - an) <= 1e-5 * std::max(1.0, std::abs(an)));
    }
  }
  CHECK(code_of([] { smooth_step_derivative(0.5, 5); }) == Errc::invalid_argument);
  CHECK(code_of([] { bump_derivative(0.5, 4); }) == Errc::invalid_argument);
}

TEST_CASE("smooth window geometry") {
  const double X = 1e6, Y = 1e4;
  const auto w = make_window(X, Y);
  CHECK(w.ratio() == doctest::Approx(0.01));
  CHECK(w(0.75) == 1.0);
  CHECK(w(0.5) == 1.0);
  CHECK(w(1.0) == 1.0);
  CHECK(w(0.5 - Y / X - 0.01) == 0.0);
  CHECK(w(1 + Y / X + 0.01) == 0.0);
  double worst = 0;
  for (int i = 0; i <= 10'000; ++i) {
    const double u = w.support_lo() + (0.5 - w.support_lo()) * i / 10'000.0;
    worst = std::max(worst, std::abs(w.derivative(u, 1)));
  }
  CHECK(worst >= 0.5 * X / Y);
  CHECK(worst <= 20 * X / Y);
  CHECK(code_of([] { make_window(100, 25); }) == Errc::bad_geometry);
  CHECK(code_of([] { make_window(100, 0); }) == Errc::bad_geometry);
  CHECK(code_of([] { make_window(100, -1); }) == Errc::bad_geometry);
}

TEST_CASE("Mellin transform against independent quadrature") {
  for (double r : {1e-2, 1e-3}) {
    const auto w = make_window(1e6, r * 1e6);
    CHECK(std::abs(mellin_transform(w, 1.0) - (0.5 + r)) <= 1e-10);
    for (cplx s : {cplx(-0.01, 5), cplx(2, -3), cplx(0.5, 40)}) {
      const cplx direct = mellin_transform(w, s);
      auto f = [&](double u) { return w(u) * std::pow(cplx(u, 0), s - 1.0); };
      const double a = w.support_lo(), b = w.support_hi();
      const cplx oracle = quad::gauss_panels(f, a, 0.5, 3000) + quad::gauss_panels(f, 0.5, 1.0, 400) +
                          quad::gauss_panels(f, 1.0, b, 3000);
      CHECK(std::abs(direct - oracle) <= 1e-10 * std::max(1.0, std::abs(oracle)));
      for (int k : {1, 2}) CHECK(std::abs(mellin_transform(w, s, k) - direct) <= 1e-8 * std::abs(direct));
    }
  }
  const auto w = make_window(1e6, 1e4);
  CHECK(code_of([&] { mellin_transform(w, 1.0, 5); }) == Errc::invalid_argument);
}

TEST_CASE("Mellin decay envelopes") {
  for (double r : {1e-2, 1e-3}) {
    const auto w = make_window(1e6, r * 1e6);
    std::vector<cplx> samples;
    for (double t = 1; t <= 64 / r; t *= 2) samples.emplace_back(-0.01, t);
    const auto rep = mellin_decay_check(w, samples);
    CHECK(rep.at_one_deviation <= 5 * r);
    CHECK(rep.fitted_constants[0] <= 10);
    CHECK(rep.fitted_constants[1] <= 10);
    CHECK(rep.max_form_disagreement <= 1e-8);
    // the k = 1 envelope halves and the k = 2 envelope quarters as t doubles
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const double m = std::abs(rep.values[i]), s = std::abs(samples[i]);
      CHECK(m <= rep.fitted_constants[0] / s * (1 + 1e-12));
      CHECK(m <= rep.fitted_constants[1] / (s * s * r) * (1 + 1e-12));
    }
    // beyond |s| ~ X/Y the decay is faster than |s|^{-2}
    const double far = 16 / r;
    const cplx a = mellin_transform(w, cplx(-0.01, far)), b = mellin_transform(w, cplx(-0.01, 2 * far));
    CHECK(std::abs(b) <= 0.5 * std::abs(a));
  }
}

TEST_CASE("truncation at the upper end of T is a Mellin-decay statement") {
  const double X = 1e6, Y = 1e4;
  const auto w = make_window(X, Y);
  for (double T = 16 * X / Y; T <= 16 * 8 * X / Y; T *= 2)
    CHECK(std::pow(T, 2.5) * std::abs(mellin_transform(w, cplx(-0.01, T))) <= Y);
}

TEST_CASE("dyadic partition of unity") {
  const double X = 1e6, Y = 1e3;
  const double lo = std::pow(Y, 2.0 / 3), hi = X / Y;
  const DyadicPartition part(lo, hi);
  CHECK(part.size() >= 3);
  auto rng = fixtures::rng(7);
  std::uniform_real_distribution<double> logt(std::log(lo), std::log(hi));
  for (int i = 0; i < 2000; ++i) {
    const double t = std::exp(logt(rng));
    CHECK(std::abs(part.sum(t) - 1) <= 1e-12);
    for (std::size_t j = 0; j < part.size(); ++j) {
      const double v = part.piece(j, t);
      CHECK(v >= -1e-15);
      if (t < part.scale(j) / 2 || t > 2 * part.scale(j)) CHECK(v == 0.0);
    }
  }
  CHECK(std::abs(part.sum(lo) - 1) <= 1e-12);
  CHECK(std::abs(part.sum(hi) - 1) <= 1e-12);
  CHECK(code_of([] { DyadicPartition(0, 1); }) == Errc::invalid_argument);
}

TEST_CASE("phase and stationary point") {
  CHECK(stationary_point(1, 1, 2 * kPi) == doctest::Approx(1.0).epsilon(1e-15));
  auto rng = fixtures::rng(8);
  std::uniform_real_distribution<double> logu(0, 1);
  for (int i = 0; i < 50; ++i) {
    const double n = 1 + 100 * logu(rng), T = 50 + 1000 * logu(rng);
    const double X = std::pow(T * (0.5 + logu(rng)) / (2 * kPi), 3) / n;
    const double xi0 = stationary_point(n, X, T);
    const double h = 1e-4 * xi0;
    const double d1 = (phase(xi0 + h, n, X, T) - phase(xi0 - h, n, X, T)) / (2 * h);
    const double d2 = (phase(xi0 + h, n, X, T) - 2 * phase(xi0, n, X, T) + phase(xi0 - h, n, X, T)) / (h * h);
    CHECK(std::abs(d1) <= 1e-6 * T);
    CHECK(d2 == doctest::Approx(-3 * T / xi0).epsilon(1e-4));
    if (xi0 > 0.25 && xi0 < 1.75) {
      const auto r = stationary_phase_check(n, X, T);
      CHECK(r.h2 < 0);
      CHECK(r.h2 == doctest::Approx(-3 * T / r.xi0));
    }
  }
}

TEST_CASE("stationary phase approximation") {
  double prev = INFINITY;
  for (double T : {100.0, 200.0, 400.0}) {
    const double X = std::pow(T / (2 * kPi), 3);
    const auto r = stationary_phase_check(1, X, T);
    CHECK(r.stationary);
    CHECK(r.xi0 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.rel_err <= 2 / T);
    CHECK(r.rel_err < prev);
    prev = r.rel_err;
    // densities high enough that the panel count is not the 4000-node floor
    const auto dense = stationary_phase_check(1, X, T, {}, 2000);
    const auto denser = stationary_phase_check(1, X, T, {}, 4000);
    CHECK(denser.nodes > dense.nodes);
    CHECK(dense.nodes > r.nodes);
    CHECK(std::abs(denser.numeric - dense.numeric) <= 1e-8 * std::abs(dense.numeric));
    CHECK(std::abs(dense.numeric - r.numeric) <= 1e-8 * std::abs(r.numeric));
  }

  // xi0 = 4 lies outside the bump: only the numeric value is reported
  const double T = 400, X = std::pow(4 * T / (2 * kPi), 3);
  const auto far = stationary_phase_check(1, X, T);
  CHECK_FALSE(far.stationary);
  CHECK(std::abs(far.numeric) <= 1e-8 * BumpProfile{}.mass());
  CHECK(code_of([] { stationary_phase_check(1, std::pow(400 / (2 * kPi), 3), 100); }) ==
        Errc::no_stationary_point);
  CHECK(code_of([] { stationary_phase_check(1, 1, 40); }) == Errc::invalid_argument);
}

TEST_CASE("n-support of the truncated sum") {
  auto brute = [](double X, double T, std::size_t table) {
    const double lo = T * T * T / (4 * X), hi = 4 * T * T * T / X;
    std::uint64_t count = 0;
    for (std::uint64_t n = 1; n <= table; ++n) count += (n >= lo && n <= hi);
    return count;
  };
  auto rng = fixtures::rng(9);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 200; ++i) {
    const double X = 1e6, T = 10 + 400 * u(rng);
    const auto s = n_support(X, T, 5000);
    const auto c = brute(X, T, 5000);
    CHECK(s.empty == (c == 0));
    if (!s.empty) CHECK(s.last - s.first + 1 == c);
    CHECK(s.empty == (4 * T * T * T / X < 1 || T * T * T / (4 * X) > 5000));
  }

  // both ends of the T range empty out at X = 1e24, eps0 = 0.01, Y = X^{0.495}
  const double X = 1e24, eps0 = 0.01, Y = std::pow(X, 0.495);
  const std::size_t table = std::size_t(1) << 22;
  for (double f : {0.2, 0.5, 0.99}) CHECK(n_support(X, f * std::pow(X, 1.0 / 3 - eps0), table).empty);
  for (double f : {1.01, 2.0, 100.0}) CHECK(n_support(X, f * std::pow(X, 1 + eps0) / Y, table).empty);
  CHECK_FALSE(n_support(X, std::pow(X, 1.0 / 3 + 0.001), table).empty);
}

TEST_CASE("exponential sum probe") {
  const auto lam = fixtures::lambda(10'000);
  const auto pair = expo::a_process(expo::bourgain_pair());
  const double X = 1e6, T = std::pow(X, 0.52);
  const auto one = exp_sum_probe(X, T, 1, lam, pair);
  CHECK(one.l_first == 2);
  CHECK(one.l_last == 2);
  CHECK(one.mean_inner == doctest::Approx(1.0).epsilon(1e-12));
  for (double L : {4.0, 16.0, 64.0}) {
    const auto flat = exp_sum_probe(X, T, L, lam, pair, true);
    CHECK(flat.mean_inner == doctest::Approx(L).epsilon(1e-12));
    CHECK(flat.l_last - flat.l_first + 1 == std::uint64_t(L));
    const auto osc = exp_sum_probe(X, T, L, lam, pair);
    CHECK(osc.mean_inner <= L);
    CHECK(osc.M == doctest::Approx(T * T * T / (X * L)));
    CHECK(osc.predicted ==
          doctest::Approx(osc.M * std::pow(T / L, pair.p.to_double()) * std::pow(L, pair.q.to_double())));
  }
  const auto sweep = exp_sum_sweep(X, T, lam, pair);
  CHECK(sweep.points.size() >= 10);
  CHECK(sweep.max_ratio <= 10);
  CHECK(sweep.predicted_slope == doctest::Approx(139.0 / 194));
  for (const auto& p : sweep.points) CHECK(p.ratio == doctest::Approx(p.measured_abs / p.predicted));
  CHECK(to_csv(sweep).rfind("L,measured,predicted,ratio\n", 0) == 0);
  const auto par = exp_sum_sweep(X, T, lam, pair, 3);
  CHECK(to_csv(par) == to_csv(sweep));

  CHECK(code_of([&] { exp_sum_probe(X, T, 1, fixtures::lambda(1000), pair); }) == Errc::table_too_short);
  CHECK(code_of([&] { exp_sum_probe(X, T, 0.5, lam, pair); }) == Errc::invalid_argument);
}
