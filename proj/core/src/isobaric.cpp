#include "isobar3/isobaric.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <random>

#include "isobar3/error.hpp"
#include "isobar3/parallel.hpp"

namespace isobar3::sums {
namespace {

constexpr const char* kModule = "isobaric_sums";

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

IsobaricTable::IsobaricTable(std::vector<double> values)
    : v_(std::make_shared<const std::vector<double>>(std::move(values))) {}

IsobaricTable build_isobaric(const coeff::LambdaTable& lambda, unsigned threads) {
  const std::size_t n = lambda.size();
  std::vector<double> out(n, 0.0);
  const auto lam = lambda.values();
  if (threads <= 1) {
    for (std::size_t m = 1; m <= n; ++m) {
      const double v = lam[m - 1];
      for (std::size_t k = m; k <= n; k += m) out[k - 1] += v;
    }
    return IsobaricTable(std::move(out));
  }
  const std::size_t blocks = std::min<std::size_t>(threads, n);
  const std::size_t width = (n + blocks - 1) / blocks;
  parallel_for(blocks, threads, [&](std::size_t b) {
    const std::size_t lo = b * width + 1;
    const std::size_t hi = std::min(n, lo + width - 1);
    if (lo > hi) return;
    for (std::size_t m = 1; m <= hi; ++m) {
      const double v = lam[m - 1];
      for (std::size_t k = (lo + m - 1) / m * m; k <= hi; k += m) out[k - 1] += v;
    }
  });
  return IsobaricTable(std::move(out));
}

GridSpec GridSpec::dyadic(unsigned lo_exp, unsigned hi_exp) {
  if (lo_exp > hi_exp || hi_exp > 62) throw Error(Errc::invalid_argument, kModule, "bad dyadic grid exponents");
  GridSpec g;
  g.kind_ = Kind::dyadic;
  g.lo_ = lo_exp;
  g.hi_ = hi_exp;
  return g;
}

GridSpec GridSpec::points(std::vector<std::uint64_t> xs) {
  GridSpec g;
  g.kind_ = Kind::points;
  g.points_ = std::move(xs);
  return g;
}

std::vector<std::uint64_t> GridSpec::resolve(std::size_t table_size) const {
  std::vector<std::uint64_t> xs;
  switch (kind_) {
    case Kind::default_dyadic: {
      if (table_size < 1024) throw Error(Errc::grid_out_of_range, kModule, "table shorter than 2^10");
      const unsigned hi = std::bit_width(table_size) - 1;
      for (unsigned e = 10; e <= hi; ++e) xs.push_back(std::uint64_t(1) << e);
      break;
    }
    case Kind::dyadic:
      for (unsigned e = lo_; e <= hi_; ++e) xs.push_back(std::uint64_t(1) << e);
      break;
    case Kind::points:
      xs = points_;
      std::sort(xs.begin(), xs.end());
      xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
      break;
  }
  if (xs.empty()) throw Error(Errc::grid_out_of_range, kModule, "empty grid");
  if (xs.front() < 1 || xs.back() > table_size)
    throw Error(Errc::grid_out_of_range, kModule,
                "grid point " + std::to_string(xs.back()) + " outside table of length " + std::to_string(table_size));
  return xs;
}

double error_term(double A, std::uint64_t X, double L1) noexcept { return A - L1 * static_cast<double>(X); }

PartialSumSeries partial_sums(const IsobaricTable& table, const GridSpec& grid, double L1) {
  PartialSumSeries s;
  s.L1 = L1;
  s.grid = grid.resolve(table.size());
  CompensatedSum acc;
  std::size_t n = 0;
  for (std::uint64_t X : s.grid) {
    while (n < X) acc.add(table.values()[n++]);
    s.A.push_back(acc.value());
    s.E.push_back(error_term(s.A.back(), X, L1));
  }
  return s;
}

std::string to_csv(const PartialSumSeries& series) {
  std::string out = "X,A,E\n";
  for (std::size_t i = 0; i < series.grid.size(); ++i)
    out += std::to_string(series.grid[i]) + "," + fmt17(series.A[i]) + "," + fmt17(series.E[i]) + "\n";
  return out;
}

PowerFit fit_error_exponent(const PartialSumSeries& series) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < series.grid.size(); ++i) {
    const double X = static_cast<double>(series.grid[i]);
    const double e = std::abs(series.E[i]);
    if (!(e >= 1e-12 * X) || !std::isfinite(e)) continue;
    lx.push_back(std::log(X));
    ly.push_back(std::log(e));
  }
  if (lx.size() < 3) throw Error(Errc::degenerate_fit, kModule, "fewer than 3 usable points");
  const double k = static_cast<double>(lx.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= k;
  my /= k;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  if (sxx <= 0) throw Error(Errc::degenerate_fit, kModule, "grid points coincide");
  PowerFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r2 = syy > 0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  fit.used = lx.size();
  return fit;
}

WindowAverage window_average(const IsobaricTable& table, std::uint64_t X, double Y, double target) {
  if (!(Y >= 1.0)) throw Error(Errc::grid_out_of_range, kModule, "window length Y must be >= 1");
  const double end = static_cast<double>(X) + Y;
  if (end > static_cast<double>(table.size()))
    throw Error(Errc::grid_out_of_range, kModule, "window [X, X+Y] does not fit in the table");
  const auto last = static_cast<std::uint64_t>(std::floor(end));
  CompensatedSum acc;
  for (std::uint64_t n = X + 1; n <= last; ++n) acc.add(table[n]);
  return {X, Y, acc.value() / Y, target};
}

WindowScan short_interval_scan(const IsobaricTable& table, std::uint64_t base_x, double exponent, std::size_t count,
                               double L1, std::uint64_t seed) {
  if (!(exponent > 0 && exponent < 1)) throw Error(Errc::invalid_argument, kModule, "exponent must lie in (0, 1)");
  if (count < 2 || base_x < 1) throw Error(Errc::invalid_argument, kModule, "need base_x >= 1 and count >= 2");
  const double top = 2.0 * double(base_x) + std::pow(2.0 * double(base_x), exponent);
  if (top > static_cast<double>(table.size()))
    throw Error(Errc::grid_out_of_range, kModule, "windows near 2 base_x exceed the table");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> pick(base_x, 2 * base_x - 1);
  WindowScan scan;
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint64_t X = pick(rng);
    scan.windows.push_back(window_average(table, X, std::pow(double(X), exponent), L1));
  }
  CompensatedSum sum;
  for (const auto& w : scan.windows) sum.add(w.mean);
  const double k = double(count);
  scan.aggregate_mean = sum.value() / k;
  CompensatedSum sq;
  for (const auto& w : scan.windows) sq.add((w.mean - scan.aggregate_mean) * (w.mean - scan.aggregate_mean));
  scan.standard_error = std::sqrt(sq.value() / (k - 1)) / std::sqrt(k);
  scan.deviation = scan.aggregate_mean - L1;
  scan.z_score = scan.standard_error > 0 ? scan.deviation / scan.standard_error : 0.0;
  return scan;
}

std::string to_csv(const WindowScan& scan) {
  std::string out = "X,Y,mean\n";
  for (const auto& w : scan.windows) out += std::to_string(w.X) + "," + fmt17(w.Y) + "," + fmt17(w.mean) + "\n";
  return out;
}

BlockMaxima dyadic_block_maxima(const IsobaricTable& table, double L1, unsigned lo_exp, unsigned hi_exp,
                                double exponent) {
  if (lo_exp < 1 || lo_exp > hi_exp) throw Error(Errc::invalid_argument, kModule, "bad block exponents");
  if ((std::uint64_t(1) << hi_exp) > table.size())
    throw Error(Errc::grid_out_of_range, kModule, "last block exceeds the table");
  BlockMaxima out;
  CompensatedSum acc;
  std::uint64_t n = 0;
  const std::uint64_t start = std::uint64_t(1) << (lo_exp - 1);
  while (n < start) acc.add(table.values()[n++]);
  for (unsigned j = lo_exp; j <= hi_exp; ++j) {
    const std::uint64_t end = std::uint64_t(1) << j;
    double best = 0;
    while (n < end) {
      acc.add(table.values()[n++]);
      const double ratio = std::abs(error_term(acc.value(), n, L1)) / std::pow(double(n), exponent);
      best = std::max(best, ratio);
    }
    out.block_end.push_back(end);
    out.max_ratio.push_back(best);
  }
  return out;
}

QuartileTrend quartile_trend(std::span<const double> series) {
  if (series.empty()) throw Error(Errc::invalid_argument, kModule, "empty series");
  const std::size_t q = (series.size() + 3) / 4;
  QuartileTrend t;
  for (std::size_t i = 0; i < q; ++i) {
    t.first_quartile_mean += series[i];
    t.last_quartile_mean += series[series.size() - q + i];
  }
  t.first_quartile_mean /= double(q);
  t.last_quartile_mean /= double(q);
  return t;
}

}  // namespace isobar3::sums
