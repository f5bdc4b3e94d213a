#include "isobar3/smooth.hpp"

#include <cmath>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>

#include "isobar3/error.hpp"

namespace isobar3::osc {
namespace {

using Gauss = boost::math::quadrature::gauss<double, 16>;

// Cumulative integrals of psi on a uniform grid over [-1, 1].
struct StepTable {
  static constexpr int kCells = 2048;
  double h = 2.0 / kCells;
  std::vector<double> cum;  // cum[i] = int_{-1}^{-1 + i h} psi
  double mass = 0;

  StepTable() : cum(kCells + 1, 0.0) {
    for (int i = 0; i < kCells; ++i) {
      const double a = -1.0 + h * i;
      cum[i + 1] = cum[i] + Gauss::integrate(bump, a, a + h);
    }
    mass = cum[kCells];
  }

  double integral_to(double v) const {
    if (v <= -1) return 0;
    if (v >= 1) return mass;
    int i = static_cast<int>((v + 1.0) / h);
    if (i >= kCells) i = kCells - 1;
    const double a = -1.0 + h * i;
    return cum[i] + Gauss::integrate(bump, a, v);
  }
};

const StepTable& table() {
  static const StepTable t;
  return t;
}

}  // namespace

double bump(double v) {
  if (!(v > -1 && v < 1)) return 0;
  return std::exp(-1.0 / (1.0 - v * v));
}

double bump_derivative(double v, int order) {
  if (!(v > -1 && v < 1)) return 0;
  const double w = 1.0 - v * v;
  const double psi = std::exp(-1.0 / w);
  if (psi == 0) return 0;
  const double g1 = -2.0 * v / (w * w);
  const double g2 = -2.0 / (w * w) - 8.0 * v * v / (w * w * w);
  const double g3 = -24.0 * v / (w * w * w) - 48.0 * v * v * v / (w * w * w * w);
  switch (order) {
    case 0: return psi;
    case 1: return g1 * psi;
    case 2: return (g2 + g1 * g1) * psi;
    case 3: return (g3 + 3.0 * g1 * g2 + g1 * g1 * g1) * psi;
    default: throw Error(Errc::invalid_argument, "oscillatory_lab", "bump derivative order above 3");
  }
}

double bump_mass() { return table().mass; }

double smooth_step(double x) {
  if (x <= 0) return 0;
  if (x >= 1) return 1;
  const double v = 2.0 * x - 1.0;
  const auto& t = table();
  // psi is even, so the tail past v equals the head up to -v
  if (v > 0) return 1.0 - t.integral_to(-v) / t.mass;
  return t.integral_to(v) / t.mass;
}

double smooth_step_derivative(double x, int order) {
  if (order == 0) return smooth_step(x);
  if (order < 0 || order > 4) throw Error(Errc::invalid_argument, "oscillatory_lab", "step derivative order above 4");
  return std::ldexp(bump_derivative(2.0 * x - 1.0, order - 1), order) / bump_mass();
}

}  // namespace isobar3::osc
