#include "isobar3/complex_gamma.hpp"

#include <cmath>
#include <numbers>

#include "isobar3/error.hpp"

namespace isobar3::lfun {
namespace {

constexpr const char* kModule = "l_eval";
constexpr double kPi = std::numbers::pi;

// B_{2k} / (2k (2k-1)), k = 1..12
constexpr double kStirling[] = {
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
    77683.0 / 5796.0,
    -236364091.0 / 1506960.0,
};

bool at_pole(cplx z) {
  return z.imag() == 0 && z.real() <= 0 && z.real() == std::floor(z.real());
}

cplx stirling(cplx z) {
  cplx sum = 0;
  const cplx inv = 1.0 / z;
  const cplx inv2 = inv * inv;
  cplx pw = inv;
  for (double c : kStirling) {
    sum += c * pw;
    pw *= inv2;
  }
  return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2 * kPi) + sum;
}

}  // namespace

cplx log_sin_pi(cplx z) {
  const cplx i(0, 1);
  const double y = z.imag();
  if (std::abs(y) < 1) return std::log(std::sin(kPi * z));
  if (y > 0) return -i * kPi * z + std::log(0.5 * i) + std::log(1.0 - std::exp(2.0 * i * kPi * z));
  return i * kPi * z - std::log(2.0 * i) + std::log(1.0 - std::exp(-2.0 * i * kPi * z));
}

cplx log_gamma(cplx z) {
  if (at_pole(z)) throw Error(Errc::pole_encountered, kModule, "Gamma pole at " + std::to_string(z.real()));
  if (z.real() < 0.5) return std::log(kPi) - log_sin_pi(z) - log_gamma(1.0 - z);
  cplx shift = 0;
  while (std::abs(z) < 16 || z.real() < 8) {
    shift += std::log(z);
    z += 1.0;
  }
  return stirling(z) - shift;
}

cplx gamma(cplx z) { return std::exp(log_gamma(z)); }

cplx log_upper_gamma(cplx a, double x) {
  if (!(x > 0)) throw Error(Errc::invalid_argument, kModule, "incomplete gamma needs x > 0");
  const cplx log_pref = a * std::log(x) - x;
  if (x < std::abs(a) + 1.0) {
    // Gamma(a) - x^a e^-x sum x^j / (a (a+1) ... (a+j))
    if (at_pole(a)) throw Error(Errc::pole_encountered, kModule, "Gamma pole in incomplete gamma");
    cplx term = 1.0 / a, sum = term;
    for (int j = 1; j < 2000; ++j) {
      term *= x / (a + double(j));
      sum += term;
      if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return std::log(std::exp(log_gamma(a)) - std::exp(log_pref) * sum);
  }
  // modified Lentz on the Legendre continued fraction
  constexpr double tiny = 1e-300;
  cplx b = x + 1.0 - a;
  cplx c = 1.0 / tiny;
  cplx d = 1.0 / b;
  cplx h = d;
  for (int j = 1; j < 10000; ++j) {
    const cplx an = -double(j) * (double(j) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const cplx delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) return log_pref + std::log(h);
  }
  throw Error(Errc::precision_unreachable, kModule, "incomplete gamma continued fraction did not converge");
}

}  // namespace isobar3::lfun
