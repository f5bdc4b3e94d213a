#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "isobar3/coeff_engine.hpp"
#include "isobar3/exponent_pairs.hpp"

namespace isobar3::osc {

using cplx = std::complex<double>;

// V(xi) = psi((xi - centre) / half_width)
struct BumpProfile {
  double centre = 1.0;
  double half_width = 0.75;
  double operator()(double xi) const;
  double lo() const { return centre - half_width; }
  double hi() const { return centre + half_width; }
  double mass() const;  // int V
};

// h(xi) = T xi log(nX / (T xi / (2 pi e))^3), written as 3 T xi (1 + log(xi0 / xi)).
double phase(double xi, double n, double X, double T);
double stationary_point(double n, double X, double T);  // 2 pi (nX)^{1/3} / T

struct StationaryPhaseResult {
  double xi0 = 0;
  double h2 = 0;  // h''(xi0) = -3T / xi0
  bool stationary = false;
  cplx numeric;
  cplx leading;  // e^{i h(xi0)} V(xi0) sqrt(2 pi / |h''|) e^{i pi/4 sgn h''}
  double rel_err = 0;
  std::size_t nodes = 0;
};

// Gauss panels with at least `nodes_per_period` nodes per period of the fastest
// oscillation. When xi0 lies outside the bump support the result carries only
// the numeric value; NoStationaryPoint is thrown if that value is not below
// 1e-8 times the bump mass.
StationaryPhaseResult stationary_phase_check(double n, double X, double T, const BumpProfile& bump = {},
                                             double nodes_per_period = 20);

// Integers n with n / (T^3 / X) in [1/4, 4], clipped to [1, table_size].
struct NSupport {
  double lo = 0, hi = 0;  // real interval T^3/(4X) .. 4 T^3 / X
  std::uint64_t first = 0, last = 0;
  bool empty = true;
};
NSupport n_support(double X, double T, std::size_t table_size);

struct OscProbe {
  double X = 0, T = 0, L = 0, M = 0;
  std::uint64_t l_first = 0, l_last = 0;  // l in (L, 2L]
  std::uint64_t m_first = 0, m_last = 0;  // support of V(m / M), V on [1, 2]
  bool flat_phase = false;                // replace e(3 (l m X)^{1/3}) by 1
  cplx measured;                          // B(L, M)
  double measured_abs = 0;
  double mean_inner = 0;   // mean over m of |sum_l e(...)|, weighted by V
  double predicted = 0;    // M (T/L)^p L^q
  double ratio = 0;        // measured_abs / predicted
  expo::ExponentPair pair;
};

// Throws TableTooShort when 2M exceeds the table.
OscProbe exp_sum_probe(double X, double T, double L, const coeff::LambdaTable& lambda,
                       const expo::ExponentPair& pair, bool flat_phase = false);

struct ProbeSweep {
  std::vector<OscProbe> points;
  double inner_slope = 0;      // fitted slope of log mean_inner against log L
  double predicted_slope = 0;  // q - p
  double max_ratio = 0;
};

// L = 1, 2, 4, ... while M = T^3 / (X L) >= 1.
ProbeSweep exp_sum_sweep(double X, double T, const coeff::LambdaTable& lambda, const expo::ExponentPair& pair,
                         unsigned threads = 1);

// "L,measured,predicted,ratio"
std::string to_csv(const ProbeSweep& sweep);

}  // namespace isobar3::osc
