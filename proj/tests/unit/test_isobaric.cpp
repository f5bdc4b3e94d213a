#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "isobar3/error.hpp"
#include "isobar3/isobaric.hpp"
#include "isobar3/l_eval.hpp"
#include "isobar3/reference/oracles.hpp"

using namespace isobar3;
using namespace isobar3::sums;

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

PartialSumSeries synthetic(double (*error)(double)) {
  PartialSumSeries s;
  for (unsigned e = 10; e <= 22; ++e) {
    const std::uint64_t X = std::uint64_t(1) << e;
    s.grid.push_back(X);
    s.E.push_back(error(double(X)));
    s.A.push_back(s.E.back() + double(X));
  }
  s.L1 = 1;
  return s;
}

}  // namespace

TEST_CASE("isobaric coefficients at small n") {
  const auto lam = fixtures::lambda(100'000);
  const auto tab = build_isobaric(lam);
  CHECK(tab.size() == lam.size());
  CHECK(tab[1] == 1.0);
  for (std::uint64_t p : {2, 3, 5, 7, 99991})
    CHECK(tab[p] == doctest::Approx(1 + lam[p]).epsilon(1e-15));
  CHECK(tab[4] == doctest::Approx(1 + lam[2] + lam[4]).epsilon(1e-15));
}

TEST_CASE("convolution oracle to 1e4 and the triple divisor bound") {
  const auto lam = fixtures::lambda(100'000);
  const auto tab = build_isobaric(lam);
  for (std::uint64_t n = 1; n <= 10'000; ++n) {
    const double want = reference::divisor_sum(lam.values(), n);
    REQUIRE(std::abs(tab[n] - want) <= 1e-10 * std::max(1.0, std::abs(want)));
    REQUIRE(std::abs(tab[n]) <= double(reference::triple_divisor_count(n)) + 1e-9);
  }
}

TEST_CASE("parallel build is bit-identical") {
  const auto lam = fixtures::lambda(100'000);
  const auto a = build_isobaric(lam, 1);
  const auto b = build_isobaric(lam, 3);
  for (std::size_t n = 1; n <= a.size(); ++n) REQUIRE(a[n] == b[n]);
}

TEST_CASE("partial sums") {
  const auto lam = fixtures::lambda(100'000);
  const auto tab = build_isobaric(lam);
  const auto s = partial_sums(tab, GridSpec::points({4, 1, 4}), 0.8);
  REQUIRE(s.grid == std::vector<std::uint64_t>{1, 4});
  CHECK(s.A[0] == 1.0);
  const double a4 = 1 + (1 + lam[2]) + (1 + lam[3]) + (1 + lam[2] + lam[4]);
  CHECK(s.A[1] == doctest::Approx(a4).epsilon(1e-14));
  for (std::size_t i = 0; i < s.grid.size(); ++i) CHECK(s.E[i] == error_term(s.A[i], s.grid[i], s.L1));

  const auto def = partial_sums(tab, GridSpec::default_dyadic(), 1.0);
  CHECK(def.grid.front() == 1024);
  CHECK(def.grid.back() == 65536);
  CHECK(code_of([&] { partial_sums(tab, GridSpec::points({100'001}), 1.0); }) == Errc::grid_out_of_range);
  CHECK(code_of([&] { partial_sums(tab, GridSpec::dyadic(10, 17), 1.0); }) == Errc::grid_out_of_range);

  const auto csv = to_csv(s);
  CHECK(csv.rfind("X,A,E\n1,1,", 0) == 0);
}

TEST_CASE("prefix sums are consistent on random pairs") {
  const auto lam = fixtures::lambda(100'000);
  const auto tab = build_isobaric(lam);
  auto rng = fixtures::rng(2);
  std::uniform_int_distribution<std::uint64_t> pick(1, 100'000);
  std::vector<std::uint64_t> pts;
  for (int i = 0; i < 40; ++i) pts.push_back(pick(rng));
  const auto s = partial_sums(tab, GridSpec::points(pts), 1.0);
  for (std::size_t i = 1; i < s.grid.size(); ++i) {
    CompensatedSum direct;
    for (std::uint64_t n = s.grid[i - 1] + 1; n <= s.grid[i]; ++n) direct.add(tab[n]);
    REQUIRE(std::abs((s.A[i] - s.A[i - 1]) - direct.value()) <= 1e-8);
  }
}

TEST_CASE("error term at 1e6 stays below the square root") {
  const auto lam = fixtures::lambda(1'000'000);
  const auto tab = build_isobaric(lam);
  const double L1 = lfun::l1_phi(lam).value;
  const auto s = partial_sums(tab, GridSpec::points({1'000'000}), L1);
  CHECK(std::abs(s.E[0]) <= 1000.0);
}

TEST_CASE("fit_error_exponent on synthetic series") {
  const auto pow04 = fit_error_exponent(synthetic([](double x) { return std::pow(x, 0.4); }));
  CHECK(pow04.slope == doctest::Approx(0.4).epsilon(1e-6));
  CHECK(std::abs(pow04.slope - 0.4) <= 1e-6);
  CHECK(pow04.r2 == doctest::Approx(1.0));
  CHECK(pow04.used == 13);
  const auto flat = fit_error_exponent(synthetic([](double) { return 7.0; }));
  CHECK(std::abs(flat.slope) <= 1e-6);
  CHECK(flat.intercept == doctest::Approx(std::log(7.0)));

  // |E| below 1e-12 X is dropped; fewer than three points is degenerate
  auto tiny = synthetic([](double x) { return 1e-14 * x; });
  CHECK(code_of([&] { fit_error_exponent(tiny); }) == Errc::degenerate_fit);
  tiny.E[0] = 5;
  tiny.E[1] = 6;
  CHECK(code_of([&] { fit_error_exponent(tiny); }) == Errc::degenerate_fit);
  tiny.E[2] = 7;
  CHECK(fit_error_exponent(tiny).used == 3);
}

TEST_CASE("window averages") {
  const auto lam = fixtures::lambda(100'000);
  const auto tab = build_isobaric(lam);
  const auto whole = window_average(tab, 0, 100'000.0, 1.0);
  const auto A = partial_sums(tab, GridSpec::points({100'000}), 1.0).A[0];
  CHECK(whole.mean == doctest::Approx(A / 100'000).epsilon(1e-12));

  const auto w = window_average(tab, 10, 2.5, 0.8);
  CHECK(w.mean == doctest::Approx((tab[11] + tab[12]) / 2.5).epsilon(1e-15));
  CHECK(w.target == 0.8);
  CHECK(code_of([&] { window_average(tab, 10, 0.5, 1.0); }) == Errc::grid_out_of_range);
  CHECK(code_of([&] { window_average(tab, 99'990, 11.0, 1.0); }) == Errc::grid_out_of_range);
}

TEST_CASE("short interval scan") {
  const auto lam = fixtures::lambda(100'000);
  const auto tab = build_isobaric(lam);
  const double L1 = lfun::l1_phi(lam).value;
  const auto scan = short_interval_scan(tab, 40'000, 0.495, 200, L1, 42);
  REQUIRE(scan.windows.size() == 200);
  double sum = 0;
  for (const auto& w : scan.windows) {
    CHECK(w.X >= 40'000);
    CHECK(w.X < 80'000);
    CHECK(w.Y == doctest::Approx(std::pow(double(w.X), 0.495)));
    sum += w.mean;
  }
  CHECK(scan.aggregate_mean == doctest::Approx(sum / 200).epsilon(1e-12));
  CHECK(scan.deviation == doctest::Approx(scan.aggregate_mean - L1));
  CHECK(std::abs(scan.z_score) <= 3.0);

  const auto again = short_interval_scan(tab, 40'000, 0.495, 200, L1, 42);
  CHECK(to_csv(again) == to_csv(scan));
  CHECK(to_csv(scan).rfind("X,Y,mean\n", 0) == 0);
  CHECK(code_of([&] { short_interval_scan(tab, 60'000, 0.495, 10, L1, 1); }) == Errc::grid_out_of_range);
  CHECK(code_of([&] { short_interval_scan(tab, 100, 1.2, 10, L1, 1); }) == Errc::invalid_argument);
}

TEST_CASE("dyadic block maxima match brute force") {
  const auto lam = fixtures::lambda(100'000);
  const auto tab = build_isobaric(lam);
  const double L1 = 0.8393455120319;
  const auto bm = dyadic_block_maxima(tab, L1, 10, 14);
  REQUIRE(bm.max_ratio.size() == 5);
  CompensatedSum acc;
  std::uint64_t j = 10;
  double best = 0;
  for (std::uint64_t X = 1; X <= (1u << 14); ++X) {
    acc.add(tab[X]);
    if (X > (std::uint64_t(1) << (j - 1))) best = std::max(best, std::abs(acc.value() - L1 * double(X)) / std::sqrt(double(X)));
    if (X == (std::uint64_t(1) << j)) {
      CHECK(bm.block_end[j - 10] == X);
      CHECK(bm.max_ratio[j - 10] == doctest::Approx(best).epsilon(1e-9));
      best = 0;
      ++j;
    }
  }
}

TEST_CASE("quartile trend") {
  const std::vector<double> v{1, 2, 3, 4, 5, 6, 7, 8, 9};
  const auto q = quartile_trend(v);
  CHECK(q.first_quartile_mean == doctest::Approx(2.0));  // ceil(9/4) = 3 values
  CHECK(q.last_quartile_mean == doctest::Approx(8.0));
}

TEST_CASE("compensated summation") {
  CompensatedSum s;
  s.add(1.0);
  for (int i = 0; i < 1000; ++i) s.add(1e-16);
  s.add(-1.0);
  CHECK(s.value() == doctest::Approx(1e-13).epsilon(1e-9));
}
