#pragma once

namespace isobar3::osc {

// psi(v) = exp(-1 / (1 - v^2)) on (-1, 1), zero elsewhere.
double bump(double v);
// psi^{(order)}(v), order 0..3.
double bump_derivative(double v, int order);
// integral of psi over [-1, 1]
double bump_mass();

// C-infinity step: 0 for x <= 0, 1 for x >= 1, built from the integral of psi.
double smooth_step(double x);
// S^{(order)}(x), order 0..4.
double smooth_step_derivative(double x, int order);

}  // namespace isobar3::osc
