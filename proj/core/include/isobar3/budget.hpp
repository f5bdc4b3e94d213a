#pragma once

#include <string>
#include <vector>

#include "isobar3/exponent_pairs.hpp"
#include "isobar3/rational.hpp"

namespace isobar3::expo {

// Exponents of a monomial X^x T^t L^l M^m.
struct LinearForm {
  Rational x, t, l, m;

  static LinearForm monomial(Rational x, Rational t, Rational l, Rational m) {
    return {std::move(x), std::move(t), std::move(l), std::move(m)};
  }

  LinearForm& operator+=(const LinearForm& o);
  LinearForm& operator-=(const LinearForm& o);
  friend LinearForm operator+(LinearForm a, const LinearForm& b) { return a += b; }
  friend LinearForm operator-(LinearForm a, const LinearForm& b) { return a -= b; }
  friend LinearForm operator*(const Rational& c, const LinearForm& f);
  friend bool operator==(const LinearForm& a, const LinearForm& b) = default;

  // M -> T^3 X^-1 L^-1
  LinearForm eliminate_m() const;
  // L -> T^lt X^lx
  LinearForm substitute_l(const Rational& lt, const Rational& lx) const;
  std::string str() const;
};

struct BoundBudget {
  LinearForm case1;  // M (T/L)^p L^q with M eliminated
  LinearForm case2;  // L T^{1/3} M^{1/2} with M eliminated
  Rational threshold_T_exponent, threshold_X_exponent;  // L* = T^a X^b where the two cases balance
  Rational case1_T_exponent, case1_X_exponent;
  Rational case2_T_exponent, case2_X_exponent;
  Rational delta_max;
  // Other constraints of the endgame, as upper bounds on delta.
  Rational trivial_range_delta;  // X^{165/346} <= X^{1/2 - delta}
  Rational half_power_delta;     // T^{1/2} <= X^{1/2 - delta} at T = X^{1/2 + delta}
  Rational jutila_range_delta;   // X^{1/2 + delta} <= X^{3/5}
};

// Throws InfeasibleBudget when delta_max <= 0 or no balancing threshold exists.
BoundBudget verify_budget(const ExponentPair& pair);

struct RegimeCorner {
  Rational tau;    // T = X^tau
  Rational ell;    // L = X^ell
  Rational mu;     // M = X^mu = T^3 / (X L)
  Rational lower_slack;  // tau - 3/4 mu   (M^{3/4} <= T)
  Rational upper_slack;  // 3/2 mu - tau   (T <= M^{3/2})
  bool holds() const { return lower_slack.sign() >= 0 && upper_slack.sign() >= 0; }
  std::string str() const;
};

struct RegimeReport {
  std::vector<RegimeCorner> corners;
  std::vector<std::size_t> binding;  // indices of corners where a slack is exactly 0
  bool ok = true;
};

// Corner evaluation over tau in [tau_lo, tau_hi], 0 <= log_X L <= 359/228 tau - 97/152.
RegimeReport jutila_regime_scan(const Rational& tau_lo = Rational(165, 346), const Rational& tau_hi = Rational(3, 5));
// Same, but throws RegimeViolated naming the first failing corner.
RegimeReport jutila_regime_check(const Rational& tau_lo = Rational(165, 346), const Rational& tau_hi = Rational(3, 5));

}  // namespace isobar3::expo
