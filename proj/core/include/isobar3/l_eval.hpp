#pragma once

#include <array>
#include <complex>
#include <cstddef>

#include "isobar3/coeff_engine.hpp"
#include "isobar3/complex_gamma.hpp"

namespace isobar3::lfun {

// Archimedean data of zeta(s) L(s, phi) written as a degree-3 factor.
struct GammaFactor {
  int degree = 3;
  int conductor = 1;
  int weight = 12;
  std::array<double, 3> kappas{};  // 0, (k-1)/2, (k+1)/2
  double Q = 0;                    // 1 / (2 pi)
  cplx omega;                      // e((2k-3)/8)
  cplx root_number;                // i^k

  static GammaFactor for_weight(int weight);
};

// L(1-s) = w gamma(s) L(s). Ratio of four gamma functions.
cplx gamma_ratio(cplx s, int weight);
// The same quantity as pi^{-3(s-1/2)} prod_j Gamma((s+kappa_j)/2) / Gamma((1-s+kappa_j)/2).
cplx gamma_ratio_product(cplx s, const GammaFactor& g);
// Leading term conj(omega) (Qt)^{3(sigma-1/2)} (e/(Qt))^{3it} of gamma(sigma - it), t > 0.
cplx gamma_leading(double sigma, double t, const GammaFactor& g);
// c with gamma(sigma - it) / gamma_leading = 1 + i c / t + O(1/t^2).
double gamma_correction_coefficient(double sigma, const GammaFactor& g);

// pi^{-s/2} Gamma(s/2) (2 pi)^{-s} Gamma(s + (k-1)/2)
cplx completed_factor(cplx s, int weight);

// Riemann zeta by Euler-Maclaurin. Throws PoleEncountered at s = 1.
cplx zeta(cplx s);

// L(s, phi) through the incomplete-gamma expansion of the completed function.
// Throws PrecisionUnreachable when the table is too short for s.
cplx l_phi(const coeff::LambdaTable& lambda, cplx s);
// sum_n lambda(n) n^{-s} rho(n / M), rho = 1 on [0, 1/4] falling smoothly to 0 at 1.
cplx l_phi_smoothed(const coeff::LambdaTable& lambda, cplx s, double M);
// zeta(s) L(s, phi)
cplx l_isobaric(const coeff::LambdaTable& lambda, cplx s);
// completed_factor(s) zeta(s) L(s, phi)
cplx completed_isobaric(const coeff::LambdaTable& lambda, cplx s);

struct FunctionalEquationCheck {
  cplx s;
  cplx lhs;  // L(1 - s, 1+phi) from the completed expansion
  cplx rhs;  // w gamma(s) zeta(s) L(s, phi) with the smoothed direct sum
  double residual = 0;
  double truncation_estimate = 0;  // relative change of the direct sum between M = N/2 and M = N
};

// Requires Re s > 1. Throws PrecisionUnreachable when the truncation estimate exceeds target.
FunctionalEquationCheck check_functional_equation(const coeff::LambdaTable& lambda, cplx s, double target = 1e-6);

struct L1Value {
  double value = 0;     // agreed value (scheme b)
  double scheme_a = 0;  // exponentially damped sums with Richardson extrapolation
  double scheme_b = 0;  // completed-L expansion at s = 1
  double difference = 0;
  int digits = 0;
};

// Throws SchemesDisagree when |a - b| > 10^{-digits}; the message carries both values.
L1Value l1_phi(const coeff::LambdaTable& lambda, int target_digits = 10);
double l1_scheme_a(const coeff::LambdaTable& lambda);

}  // namespace isobar3::lfun
