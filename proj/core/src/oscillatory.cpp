#include "isobar3/oscillatory.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "isobar3/error.hpp"
#include "isobar3/parallel.hpp"
#include "isobar3/quadrature.hpp"
#include "isobar3/smooth.hpp"

namespace isobar3::osc {
namespace {

constexpr const char* kModule = "oscillatory_lab";
constexpr double kPi = std::numbers::pi;

// e(x) using only the fractional part of x
cplx unit(double x) {
  const double f = x - std::floor(x);
  return {std::cos(2 * kPi * f), std::sin(2 * kPi * f)};
}

double probe_weight(double x) { return bump(2.0 * x - 3.0); }  // support [1, 2]

}  // namespace

double BumpProfile::operator()(double xi) const { return bump((xi - centre) / half_width); }
double BumpProfile::mass() const { return half_width * bump_mass(); }

double stationary_point(double n, double X, double T) { return 2 * kPi * std::cbrt(n * X) / T; }

double phase(double xi, double n, double X, double T) {
  const double xi0 = stationary_point(n, X, T);
  return 3.0 * T * xi * (1.0 + std::log(xi0 / xi));
}

StationaryPhaseResult stationary_phase_check(double n, double X, double T, const BumpProfile& profile,
                                             double nodes_per_period) {
  if (!(T >= 50)) throw Error(Errc::invalid_argument, kModule, "stationary phase check needs T >= 50");
  if (!(n > 0) || !(X > 0)) throw Error(Errc::invalid_argument, kModule, "need n > 0 and X > 0");
  StationaryPhaseResult r;
  r.xi0 = stationary_point(n, X, T);
  r.h2 = -3.0 * T / r.xi0;
  const double a = profile.lo(), b = profile.hi();
  // h'(xi) = 3T log(xi0 / xi)
  const double fmax = 3.0 * T * std::max(std::abs(std::log(r.xi0 / a)), std::abs(std::log(r.xi0 / b)));
  const double periods = (b - a) * fmax / (2 * kPi);
  const auto panels = static_cast<std::size_t>(std::ceil(std::max(periods * nodes_per_period, 4000.0) / 16.0));
  r.nodes = panels * 16;
  auto f = [&](double xi) { return profile(xi) * std::polar(1.0, phase(xi, n, X, T)); };
  r.numeric = quad::gauss_panels<16>(f, a, b, panels);
  r.stationary = r.xi0 > a && r.xi0 < b;
  if (!r.stationary) {
    if (std::abs(r.numeric) > 1e-8 * profile.mass())
      throw Error(Errc::no_stationary_point, kModule,
                  "stationary point outside the bump but |integral| = " + std::to_string(std::abs(r.numeric)));
    return r;
  }
  const double sgn = r.h2 < 0 ? -1.0 : 1.0;
  r.leading = std::polar(1.0, 3.0 * T * r.xi0) * profile(r.xi0) * std::sqrt(2 * kPi / std::abs(r.h2)) *
              std::polar(1.0, sgn * kPi / 4);
  r.rel_err = std::abs(r.numeric - r.leading) / std::abs(r.leading);
  return r;
}

NSupport n_support(double X, double T, std::size_t table_size) {
  NSupport s;
  const double centre = T * T * T / X;
  s.lo = centre / 4;
  s.hi = centre * 4;
  const double first = std::max(1.0, std::ceil(s.lo));
  const double last = std::min(double(table_size), std::floor(s.hi));
  if (first <= last) {
    s.first = static_cast<std::uint64_t>(first);
    s.last = static_cast<std::uint64_t>(last);
    s.empty = false;
  }
  return s;
}

OscProbe exp_sum_probe(double X, double T, double L, const coeff::LambdaTable& lambda,
                       const expo::ExponentPair& pair, bool flat_phase) {
  if (!(X > 0) || !(T > 0) || !(L >= 1)) throw Error(Errc::invalid_argument, kModule, "need X, T > 0 and L >= 1");
  OscProbe p;
  p.X = X;
  p.T = T;
  p.L = L;
  p.M = T * T * T / (X * L);
  p.pair = pair;
  p.flat_phase = flat_phase;
  if (!(p.M >= 1)) throw Error(Errc::invalid_argument, kModule, "M = T^3/(XL) below 1");
  p.l_first = static_cast<std::uint64_t>(std::floor(L)) + 1;
  p.l_last = static_cast<std::uint64_t>(std::floor(2 * L));
  p.m_first = static_cast<std::uint64_t>(std::floor(p.M)) + 1;
  p.m_last = static_cast<std::uint64_t>(std::ceil(2 * p.M)) - 1;
  if (p.m_last < p.m_first) p.m_last = p.m_first - 1;  // no interior integers
  if (p.m_last > lambda.size())
    throw Error(Errc::table_too_short, kModule,
                "probe needs m up to " + std::to_string(p.m_last) + ", table has " + std::to_string(lambda.size()));

  cplx total = 0;
  double inner_sum = 0, weight_sum = 0;
  for (std::uint64_t m = p.m_first; m <= p.m_last; ++m) {
    const double v = probe_weight(double(m) / p.M);
    if (v == 0) continue;
    cplx inner = 0;
    for (std::uint64_t l = p.l_first; l <= p.l_last; ++l)
      inner += flat_phase ? cplx(1.0) : unit(3.0 * std::cbrt(double(l) * double(m) * X));
    total += lambda[m] * v * inner;
    inner_sum += v * std::abs(inner);
    weight_sum += v;
  }
  p.measured = total;
  p.measured_abs = std::abs(total);
  p.mean_inner = weight_sum > 0 ? inner_sum / weight_sum : 0.0;
  p.predicted = p.M * std::pow(T / L, pair.p.to_double()) * std::pow(L, pair.q.to_double());
  p.ratio = p.measured_abs / p.predicted;
  return p;
}

ProbeSweep exp_sum_sweep(double X, double T, const coeff::LambdaTable& lambda, const expo::ExponentPair& pair,
                         unsigned threads) {
  std::vector<double> Ls;
  for (double L = 1; T * T * T / (X * L) >= 1; L *= 2) Ls.push_back(L);
  if (Ls.empty()) throw Error(Errc::invalid_argument, kModule, "T^3/X below 1: empty sweep");
  ProbeSweep s;
  s.points.resize(Ls.size());
  parallel_for(Ls.size(), threads, [&](std::size_t i) { s.points[i] = exp_sum_probe(X, T, Ls[i], lambda, pair); });
  s.predicted_slope = (pair.q - pair.p).to_double();
  std::vector<double> lx, ly;
  for (const auto& pt : s.points) {
    s.max_ratio = std::max(s.max_ratio, pt.ratio);
    if (pt.mean_inner > 0) {
      lx.push_back(std::log(pt.L));
      ly.push_back(std::log(pt.mean_inner));
    }
  }
  if (lx.size() >= 2) {
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
      mx += lx[i];
      my += ly[i];
    }
    mx /= double(lx.size());
    my /= double(lx.size());
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
      sxx += (lx[i] - mx) * (lx[i] - mx);
      sxy += (lx[i] - mx) * (ly[i] - my);
    }
    s.inner_slope = sxx > 0 ? sxy / sxx : 0.0;
  }
  return s;
}

std::string to_csv(const ProbeSweep& sweep) {
  std::string out = "L,measured,predicted,ratio\n";
  char buf[128];
  for (const auto& p : sweep.points) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", p.L, p.measured_abs, p.predicted, p.ratio);
    out += buf;
  }
  return out;
}

}  // namespace isobar3::osc
