#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "isobar3/coeff_engine.hpp"

namespace isobar3::sums {

// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0;
  double comp_ = 0;
};

// Coefficients of zeta(s) L(s, phi): sum over divisors m | n of lambda(m).
class IsobaricTable {
 public:
  explicit IsobaricTable(std::vector<double> values);  // values[i] = entry at n = i + 1

  std::size_t size() const noexcept { return v_->size(); }
  double operator[](std::size_t n) const noexcept { return (*v_)[n - 1]; }  // 1-based
  std::span<const double> values() const noexcept { return *v_; }

 private:
  std::shared_ptr<const std::vector<double>> v_;
};

// Divisor-sieve convolution with lambda, m-major ascending. With threads > 1 the
// output range is split into blocks that keep the same per-entry order, so the
// result is bit-identical to the sequential build.
IsobaricTable build_isobaric(const coeff::LambdaTable& lambda, unsigned threads = 1);

class GridSpec {
 public:
  // X = 2^lo, ..., 2^hi.
  static GridSpec dyadic(unsigned lo_exp, unsigned hi_exp);
  // Dyadic from 2^10 up to the largest power of two <= table size.
  static GridSpec default_dyadic() { return GridSpec{}; }
  static GridSpec points(std::vector<std::uint64_t> xs);

  // Sorted evaluation points; throws GridOutOfRange when a point exceeds table_size.
  std::vector<std::uint64_t> resolve(std::size_t table_size) const;

 private:
  enum class Kind { default_dyadic, dyadic, points } kind_ = Kind::default_dyadic;
  unsigned lo_ = 10, hi_ = 0;
  std::vector<std::uint64_t> points_;
};

struct PartialSumSeries {
  std::vector<std::uint64_t> grid;
  std::vector<double> A;  // sum_{n <= X} entries
  std::vector<double> E;  // A - L1 * X
  double L1 = 0;
};

PartialSumSeries partial_sums(const IsobaricTable& table, const GridSpec& grid, double L1);
// E recomputed from A and L1 exactly as partial_sums does.
double error_term(double A, std::uint64_t X, double L1) noexcept;
// "X,A,E" rows, 17 significant digits.
std::string to_csv(const PartialSumSeries& series);

struct PowerFit {
  double slope = 0;
  double intercept = 0;
  double r2 = 0;
  std::size_t used = 0;
};

// Least squares of log|E| against log X, dropping points with |E| < 1e-12 X.
// Throws DegenerateFit with fewer than three usable points.
PowerFit fit_error_exponent(const PartialSumSeries& series);

struct WindowAverage {
  std::uint64_t X = 0;
  double Y = 0;
  double mean = 0;    // (1/Y) sum_{X < n <= X + Y}
  double target = 0;  // L1
};

WindowAverage window_average(const IsobaricTable& table, std::uint64_t X, double Y, double target);

struct WindowScan {
  std::vector<WindowAverage> windows;
  double aggregate_mean = 0;
  double standard_error = 0;
  double deviation = 0;  // aggregate_mean - L1
  double z_score = 0;    // deviation / standard_error
};

// `count` windows with X drawn uniformly from [base_x, 2 base_x) and Y = X^exponent.
WindowScan short_interval_scan(const IsobaricTable& table, std::uint64_t base_x, double exponent, std::size_t count,
                               double L1, std::uint64_t seed);
// "X,Y,mean" rows, 17 significant digits.
std::string to_csv(const WindowScan& scan);

// max over integers X in (2^{j-1}, 2^j] of |A(X) - L1 X| / X^{exponent}, for j = lo..hi.
struct BlockMaxima {
  std::vector<std::uint64_t> block_end;
  std::vector<double> max_ratio;
};
BlockMaxima dyadic_block_maxima(const IsobaricTable& table, double L1, unsigned lo_exp, unsigned hi_exp,
                                double exponent = 0.5);

struct QuartileTrend {
  double first_quartile_mean = 0;
  double last_quartile_mean = 0;
};
// Means over the first and last ceil(n/4) entries.
QuartileTrend quartile_trend(std::span<const double> series);

}  // namespace isobar3::sums
