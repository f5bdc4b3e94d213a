#pragma once

#include <cmath>
#include <cstddef>
#include <string>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "isobar3/error.hpp"

namespace isobar3::quad {

// Composite Gauss-Legendre with `panels` equal panels of Points nodes each.
template <unsigned Points = 16, class F>
auto gauss_panels(F&& f, double a, double b, std::size_t panels) {
  using boost::math::quadrature::gauss;
  const double h = (b - a) / static_cast<double>(panels);
  decltype(f(a)) total{};
  for (std::size_t i = 0; i < panels; ++i) {
    const double lo = a + h * static_cast<double>(i);
    total += gauss<double, Points>::integrate(f, lo, lo + h);
  }
  return total;
}

// Adaptive Gauss-Kronrod (31 points). Throws QuadratureFailure when the error
// estimate stays above tol * max(|result|, floor).
template <class F>
auto adaptive(F&& f, double a, double b, double tol, double floor = 0.0, unsigned max_depth = 30) {
  using boost::math::quadrature::gauss_kronrod;
  double err = 0;
  auto r = gauss_kronrod<double, 31>::integrate(f, a, b, max_depth, tol, &err);
  using std::abs;
  const double scale = std::fmax(static_cast<double>(abs(r)), floor);
  if (!(err <= tol * scale) && !(err <= 1e-300))
    throw Error(Errc::quadrature_failure, "oscillatory_lab",
                "adaptive quadrature error estimate " + std::to_string(err) + " above tolerance");
  return r;
}

}  // namespace isobar3::quad
