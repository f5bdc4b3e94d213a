#include "isobar3/l_eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "isobar3/error.hpp"
#include "isobar3/smooth.hpp"

namespace isobar3::lfun {
namespace {

constexpr const char* kModule = "l_eval";
constexpr double kPi = std::numbers::pi;
const cplx kI(0, 1);

// B_{2k} / (2k)!
constexpr double kBernoulliScaled[] = {
    0.083333333333333333333,   -0.0013888888888888888889,  0.000033068783068783068783,
    -8.2671957671957671958e-7, 2.0876756987868098979e-8,   -5.2841901386874931848e-10,
    1.3382536530684678833e-11, -3.3896802963225828668e-13, 8.5860620562778445641e-15,
    -2.174868698558061873e-16, 5.5090028283602295152e-18,  -1.3954464685812523341e-19,
    3.5347070396294674717e-21, -8.9535174270375468504e-23, 2.2679524523376830603e-24,
};

bool is_pole(cplx z) { return z.imag() == 0 && z.real() <= 0 && z.real() == std::floor(z.real()); }

double kappa_of(int weight) { return 0.5 * (weight - 1); }

cplx root_number(int weight) {
  switch (((weight % 4) + 4) % 4) {
    case 0: return 1.0;
    case 1: return kI;
    case 2: return -1.0;
    default: return -kI;
  }
}

// log of Gamma(num) / Gamma(den); sets zero when den sits on a pole.
bool log_gamma_quotient(cplx num, cplx den, cplx& out) {
  if (is_pole(num)) throw Error(Errc::pole_encountered, kModule, "numerator Gamma pole");
  if (is_pole(den)) return false;
  out = log_gamma(num) - log_gamma(den);
  return true;
}

std::string fmt(cplx z) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.6g%+.6gi", z.real(), z.imag());
  return buf;
}

double cutoff_weight(double x) {
  if (x <= 0.25) return 1.0;
  if (x >= 1.0) return 0.0;
  return 1.0 - osc::smooth_step((x - 0.25) / 0.75);
}

void require_weight(const coeff::LambdaTable& lambda) {
  if (lambda.weight() < 2 || lambda.weight() % 2 != 0)
    throw Error(Errc::invalid_argument, kModule, "coefficient table carries an invalid weight");
}

}  // namespace

GammaFactor GammaFactor::for_weight(int weight) {
  GammaFactor g;
  g.weight = weight;
  g.kappas = {0.0, 0.5 * (weight - 1), 0.5 * (weight + 1)};
  g.Q = 1.0 / (2 * kPi);
  g.omega = std::exp(2 * kPi * kI * ((2.0 * weight - 3.0) / 8.0));
  g.root_number = lfun::root_number(weight);
  return g;
}

cplx gamma_ratio(cplx s, int weight) {
  const double kappa = kappa_of(weight);
  cplx a, b;
  if (!log_gamma_quotient(s / 2.0, (1.0 - s) / 2.0, a)) return 0.0;
  if (!log_gamma_quotient(s + kappa, 1.0 - s + kappa, b)) return 0.0;
  return std::exp((0.5 - s) * std::log(kPi) + (1.0 - 2.0 * s) * std::log(2 * kPi) + a + b);
}

cplx gamma_ratio_product(cplx s, const GammaFactor& g) {
  cplx total = -double(g.degree) * (s - 0.5) * std::log(kPi) + (s - 0.5) * std::log(double(g.conductor));
  for (double kappa : g.kappas) {
    cplx q;
    if (!log_gamma_quotient((s + kappa) / 2.0, (1.0 - s + kappa) / 2.0, q)) return 0.0;
    total += q;
  }
  return std::exp(total);
}

cplx gamma_leading(double sigma, double t, const GammaFactor& g) {
  if (!(t > 0)) throw Error(Errc::invalid_argument, kModule, "leading term needs t > 0");
  const double qt = g.Q * t;
  const double d = g.degree;
  return std::conj(g.omega) * std::pow(qt, d * (sigma - 0.5)) * std::exp(kI * (d * t) * (1.0 - std::log(qt)));
}

double gamma_correction_coefficient(double sigma, const GammaFactor& g) {
  auto b2 = [](double a) { return a * a - a + 1.0 / 6.0; };
  double c = 0;
  for (double kappa : g.kappas) c += b2((sigma + kappa) / 2) + b2((1 - sigma + kappa) / 2);
  return c;
}

cplx completed_factor(cplx s, int weight) {
  return std::exp(-s / 2.0 * std::log(kPi) + log_gamma(s / 2.0) - s * std::log(2 * kPi) +
                  log_gamma(s + kappa_of(weight)));
}

cplx zeta(cplx s) {
  if (s == cplx(1.0, 0.0)) throw Error(Errc::pole_encountered, kModule, "zeta pole at s = 1");
  if (s.real() < 0) {
    // zeta(s) = 2^s pi^{s-1} sin(pi s / 2) Gamma(1 - s) zeta(1 - s)
    if (s.imag() == 0 && std::fmod(s.real(), 2.0) == 0) return 0.0;
    return std::exp(s * std::log(2.0) + (s - 1.0) * std::log(kPi) + log_sin_pi(s / 2.0) + log_gamma(1.0 - s)) *
           zeta(1.0 - s);
  }
  const int N = 20 + static_cast<int>(std::ceil(std::abs(s)));
  cplx sum = 0;
  for (int n = 1; n < N; ++n) sum += std::exp(-s * std::log(double(n)));
  const double logN = std::log(double(N));
  const cplx Ns = std::exp(-s * logN);
  sum += std::exp((1.0 - s) * logN) / (s - 1.0) + 0.5 * Ns;
  // sum_k B_{2k}/(2k)! s(s+1)...(s+2k-2) N^{-s-2k+1}
  cplx rising = s;
  cplx pw = Ns / double(N);
  for (std::size_t k = 0; k < std::size(kBernoulliScaled); ++k) {
    const cplx term = kBernoulliScaled[k] * rising * pw;
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    rising *= (s + double(2 * k + 1)) * (s + double(2 * k + 2));
    pw /= double(N) * double(N);
  }
  return sum;
}

cplx l_phi(const coeff::LambdaTable& lambda, cplx s) {
  require_weight(lambda);
  const int k = lambda.weight();
  const double kappa = kappa_of(k);
  const cplx a1 = s + kappa, a2 = 1.0 - s + kappa;
  if (is_pole(a1)) throw Error(Errc::pole_encountered, kModule, "Gamma(s + kappa) pole");
  const cplx log_norm = s * std::log(2 * kPi) - log_gamma(a1);
  const cplx w = root_number(k);
  const double reach = std::max(std::abs(a1), std::abs(a2));
  cplx sum = 0;
  for (std::size_t n = 1;; ++n) {
    if (n > lambda.size())
      throw Error(Errc::precision_unreachable, kModule,
                  "table of length " + std::to_string(lambda.size()) + " too short for L(" + fmt(s) + ")");
    const double x = 2 * kPi * double(n);
    const double logx = std::log(x);
    const cplx t1 = std::exp(-s * logx + log_upper_gamma(a1, x) + log_norm);
    const cplx t2 = w * std::exp(-(1.0 - s) * logx + log_upper_gamma(a2, x) + log_norm);
    const cplx term = lambda[n] * (t1 + t2);
    sum += term;
    const double bound = std::abs(t1) + std::abs(t2);
    if (x > reach + 10 && bound < 1e-18 * std::max(std::abs(sum), 1e-300)) break;
  }
  return sum;
}

cplx l_phi_smoothed(const coeff::LambdaTable& lambda, cplx s, double M) {
  if (!(M >= 1)) throw Error(Errc::invalid_argument, kModule, "cutoff M must be >= 1");
  const auto last = std::min<std::size_t>(lambda.size(), static_cast<std::size_t>(M));
  cplx sum = 0;
  for (std::size_t n = 1; n <= last; ++n) {
    const double r = cutoff_weight(double(n) / M);
    if (r == 0) break;
    sum += lambda[n] * r * std::exp(-s * std::log(double(n)));
  }
  return sum;
}

cplx l_isobaric(const coeff::LambdaTable& lambda, cplx s) { return zeta(s) * l_phi(lambda, s); }

cplx completed_isobaric(const coeff::LambdaTable& lambda, cplx s) {
  return completed_factor(s, lambda.weight()) * l_isobaric(lambda, s);
}

FunctionalEquationCheck check_functional_equation(const coeff::LambdaTable& lambda, cplx s, double target) {
  require_weight(lambda);
  if (!(s.real() > 1)) throw Error(Errc::invalid_argument, kModule, "functional-equation check needs Re s > 1");
  if (lambda.size() < 8) throw Error(Errc::precision_unreachable, kModule, "coefficient table too short");
  const double M = double(lambda.size());
  const cplx full = l_phi_smoothed(lambda, s, M);
  const cplx half = l_phi_smoothed(lambda, s, M / 2);
  FunctionalEquationCheck c;
  c.s = s;
  c.truncation_estimate = std::abs(full - half) / std::abs(full);
  if (c.truncation_estimate > target)
    throw Error(Errc::precision_unreachable, kModule,
                "table of length " + std::to_string(lambda.size()) + " leaves truncation " +
                    std::to_string(c.truncation_estimate) + " at s = " + fmt(s));
  const int k = lambda.weight();
  c.rhs = root_number(k) * gamma_ratio(s, k) * zeta(s) * full;
  c.lhs = zeta(1.0 - s) * l_phi(lambda, 1.0 - s);
  c.residual = std::abs(c.lhs - c.rhs) / std::abs(c.rhs);
  return c;
}

double l1_scheme_a(const coeff::LambdaTable& lambda) {
  const double m_max = double(lambda.size()) / 40.0;
  if (m_max < 16)
    throw Error(Errc::precision_unreachable, kModule, "table too short for the damped-sum scheme");
  int levels = 0;
  while (levels < 8 && m_max / std::ldexp(1.0, levels + 1) >= 4) ++levels;
  // sums at M_j = m_max / 2^{levels - j}, j = 0..levels (ascending M)
  std::vector<double> row(levels + 1);
  for (int j = 0; j <= levels; ++j) {
    const double M = m_max / std::ldexp(1.0, levels - j);
    const auto last = std::min<std::size_t>(lambda.size(), static_cast<std::size_t>(40.0 * M));
    double sum = 0, comp = 0;
    for (std::size_t n = last; n >= 1; --n) {
      const double term = lambda[n] / double(n) * std::exp(-double(n) / M);
      const double y = term - comp;
      const double t = sum + y;
      comp = (t - sum) - y;
      sum = t;
    }
    row[j] = sum;
  }
  // Richardson in h = 1/M with ratio 2
  for (int i = 1; i <= levels; ++i) {
    const double f = std::ldexp(1.0, i) - 1.0;
    for (int j = levels; j >= i; --j) row[j] = row[j] + (row[j] - row[j - 1]) / f;
  }
  return row[levels];
}

L1Value l1_phi(const coeff::LambdaTable& lambda, int target_digits) {
  if (target_digits < 1 || target_digits > 15) throw Error(Errc::invalid_argument, kModule, "target digits in 1..15");
  L1Value r;
  r.digits = target_digits;
  r.scheme_a = l1_scheme_a(lambda);
  r.scheme_b = l_phi(lambda, 1.0).real();
  r.difference = std::abs(r.scheme_a - r.scheme_b);
  r.value = r.scheme_b;
  const double tol = std::pow(10.0, -target_digits) * std::max(1.0, std::abs(r.scheme_b));
  if (!(r.difference <= tol)) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "schemes disagree: damped %.17g vs completed %.17g", r.scheme_a, r.scheme_b);
    throw Error(Errc::schemes_disagree, kModule, buf);
  }
  return r;
}

}  // namespace isobar3::lfun
