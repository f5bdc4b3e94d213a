#include "isobar3/budget.hpp"

#include "isobar3/error.hpp"

namespace isobar3::expo {
namespace {

constexpr const char* kModule = "exponent_calculus";

const Rational& threshold_slope() {
  static const Rational v(359, 228);
  return v;
}
const Rational& threshold_offset() {
  static const Rational v(-97, 152);
  return v;
}

}  // namespace

LinearForm& LinearForm::operator+=(const LinearForm& o) {
  x += o.x;
  t += o.t;
  l += o.l;
  m += o.m;
  return *this;
}

LinearForm& LinearForm::operator-=(const LinearForm& o) {
  x -= o.x;
  t -= o.t;
  l -= o.l;
  m -= o.m;
  return *this;
}

LinearForm operator*(const Rational& c, const LinearForm& f) { return {c * f.x, c * f.t, c * f.l, c * f.m}; }

LinearForm LinearForm::eliminate_m() const {
  return {x - m, t + Rational(3) * m, l - m, Rational(0)};
}

LinearForm LinearForm::substitute_l(const Rational& lt, const Rational& lx) const {
  return {x + l * lx, t + l * lt, Rational(0), m};
}

std::string LinearForm::str() const {
  return "X^(" + x.str() + ") T^(" + t.str() + ") L^(" + l.str() + ") M^(" + m.str() + ")";
}

BoundBudget verify_budget(const ExponentPair& pair) {
  const Rational& p = pair.p;
  const Rational& q = pair.q;
  const Rational half(1, 2);
  BoundBudget b;

  // M (T/L)^p L^q
  b.case1 = LinearForm::monomial(0, p, q - p, 1).eliminate_m();
  // L T^{1/3} M^{1/2}
  b.case2 = LinearForm::monomial(0, Rational(1, 3), 1, half).eliminate_m();

  // Balance: case1 - case2 is linear in log L; solve for L = T^a X^b.
  const LinearForm diff = b.case1 - b.case2;
  if (diff.l.is_zero())
    throw Error(Errc::infeasible_budget, kModule, "case bounds have equal L-dependence; no threshold");
  b.threshold_T_exponent = -diff.t / diff.l;
  b.threshold_X_exponent = -diff.x / diff.l;

  const LinearForm c1 = b.case1.substitute_l(b.threshold_T_exponent, b.threshold_X_exponent);
  const LinearForm c2 = b.case2.substitute_l(b.threshold_T_exponent, b.threshold_X_exponent);
  if (!(c1 == c2)) throw Error(Errc::self_check_failed, kModule, "threshold does not balance the two cases");
  b.case1_T_exponent = c1.t;
  b.case1_X_exponent = c1.x;
  b.case2_T_exponent = c2.t;
  b.case2_X_exponent = c2.x;

  // (X/T^2) T^t X^x <= X^{1/2 - delta} at T = X^{1/2 + delta}:
  // 1 + x + (t - 2)(1/2 + delta) <= 1/2 - delta.
  const Rational& t = c1.t;
  const Rational& x = c1.x;
  if ((t - Rational(1)).sign() <= 0)
    throw Error(Errc::infeasible_budget, kModule, "T exponent " + t.str() + " <= 1");
  b.delta_max = (half - x - t * half) / (t - Rational(1));

  b.trivial_range_delta = half - Rational(165, 346);
  b.half_power_delta = Rational(1, 6);
  b.jutila_range_delta = Rational(3, 5) - half;

  if (b.delta_max.sign() <= 0)
    throw Error(Errc::infeasible_budget, kModule,
                "delta_max = " + b.delta_max.str() + " <= 0 for pair (" + p.str() + ", " + q.str() + ")");
  return b;
}

std::string RegimeCorner::str() const {
  return "(tau=" + tau.str() + ", ell=" + ell.str() + ", mu=" + mu.str() + ")";
}

RegimeReport jutila_regime_scan(const Rational& tau_lo, const Rational& tau_hi) {
  if (tau_hi < tau_lo) throw Error(Errc::invalid_argument, kModule, "tau range reversed");
  RegimeReport r;
  const Rational three_quarters(3, 4), three_halves(3, 2);
  auto add = [&](const Rational& tau, const Rational& ell) {
    RegimeCorner c;
    c.tau = tau;
    c.ell = ell;
    c.mu = Rational(3) * tau - Rational(1) - ell;
    c.lower_slack = tau - three_quarters * c.mu;
    c.upper_slack = three_halves * c.mu - tau;
    if (c.lower_slack.is_zero() || c.upper_slack.is_zero()) r.binding.push_back(r.corners.size());
    if (!c.holds()) r.ok = false;
    r.corners.push_back(std::move(c));
  };
  for (const Rational* tau : {&tau_lo, &tau_hi}) {
    const Rational top = threshold_slope() * *tau + threshold_offset();
    add(*tau, Rational(0));
    if (top.sign() > 0) add(*tau, top);
  }
  return r;
}

RegimeReport jutila_regime_check(const Rational& tau_lo, const Rational& tau_hi) {
  RegimeReport r = jutila_regime_scan(tau_lo, tau_hi);
  for (const auto& c : r.corners)
    if (!c.holds()) throw Error(Errc::regime_violated, kModule, "regime fails at corner " + c.str());
  return r;
}

}  // namespace isobar3::expo
