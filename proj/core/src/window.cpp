#include "isobar3/window.hpp"

#include <algorithm>
#include <cmath>

#include "isobar3/error.hpp"
#include "isobar3/quadrature.hpp"
#include "isobar3/smooth.hpp"

namespace isobar3::osc {
namespace {

constexpr const char* kModule = "oscillatory_lab";

// int_a^b f(u) u^{s-1} du with panels fine enough for the oscillation of u^{it}.
template <class F>
cplx ramp_integral(F&& f, double a, double b, cplx s) {
  const double freq = std::abs(s.imag()) / a;  // max d/du of t log u
  const auto panels = static_cast<std::size_t>(std::ceil((b - a) * std::max(freq, 1.0) / 2.0)) + 96;
  auto g = [&](double u) { return f(u) * std::exp((s - 1.0) * std::log(u)); };
  return quad::gauss_panels<20>(g, a, b, panels);
}

}  // namespace

SmoothWindow::SmoothWindow(double X, double Y) : X_(X), Y_(Y), r_(Y / X) {
  if (!(X > 0) || !(Y > 0) || !(Y < X / 4))
    throw Error(Errc::bad_geometry, kModule, "window needs 0 < Y < X/4");
}

double SmoothWindow::operator()(double u) const { return derivative(u, 0); }

double SmoothWindow::derivative(double u, int order) const {
  if (u <= support_lo() || u >= support_hi()) return 0;
  if (u >= 0.5 && u <= 1.0) return order == 0 ? 1.0 : 0.0;
  const double scale = std::pow(r_, -order);
  if (u < 0.5) return scale * smooth_step_derivative((u - support_lo()) / r_, order);
  const double sign = (order % 2) ? -1.0 : 1.0;
  return sign * scale * smooth_step_derivative((support_hi() - u) / r_, order);
}

SmoothWindow make_window(double X, double Y) { return SmoothWindow(X, Y); }

cplx mellin_transform(const SmoothWindow& w, cplx s, int order) {
  if (order < 0 || order > 4) throw Error(Errc::invalid_argument, kModule, "Mellin order in 0..4");
  const double a = w.support_lo(), b = w.support_hi();
  if (order == 0) {
    cplx plateau;
    if (std::abs(s) < 1e-12)
      plateau = std::log(2.0);
    else
      plateau = (1.0 - std::exp(-s * std::log(2.0))) / s;
    auto W = [&](double u) { return w(u); };
    return ramp_integral(W, a, 0.5, s) + plateau + ramp_integral(W, 1.0, b, s);
  }
  cplx denom = 1.0;
  for (int j = 0; j < order; ++j) denom *= s + double(j);
  if (std::abs(denom) == 0) throw Error(Errc::quadrature_failure, kModule, "integration by parts through a pole");
  auto D = [&](double u) { return w.derivative(u, order); };
  const cplx shifted = s + double(order);
  const cplx body = ramp_integral(D, a, 0.5, shifted) + ramp_integral(D, 1.0, b, shifted);
  return ((order % 2) ? -1.0 : 1.0) * body / denom;
}

MellinDecayReport mellin_decay_check(const SmoothWindow& w, std::span<const cplx> samples) {
  MellinDecayReport rep;
  rep.at_one = mellin_transform(w, 1.0);
  rep.at_one_deviation = std::abs(rep.at_one - 0.5);
  const double xy = 1.0 / w.ratio();
  for (cplx s : samples) {
    const cplx direct = mellin_transform(w, s, 0);
    // k >= 3 loses ~ r^{1-k} digits to cancellation
    for (int k = 1; k <= 2; ++k) {
      const cplx ibp = mellin_transform(w, s, k);
      const double spread = std::abs(ibp - direct) / std::max(std::abs(direct), 1e-300);
      rep.max_form_disagreement = std::max(rep.max_form_disagreement, spread);
    }
    rep.samples.push_back(s);
    rep.values.push_back(direct);
    for (int k = 1; k <= 3; ++k) {
      const double c = std::abs(direct) * std::pow(std::abs(s), k) / std::pow(xy, k - 1);
      rep.fitted_constants[k - 1] = std::max(rep.fitted_constants[k - 1], c);
    }
  }
  if (rep.max_form_disagreement > 1e-8)
    throw Error(Errc::quadrature_failure, kModule,
                "Mellin forms disagree by " + std::to_string(rep.max_form_disagreement));
  return rep;
}

DyadicPartition::DyadicPartition(double lo, double hi) {
  if (!(lo > 0) || !(hi >= lo)) throw Error(Errc::invalid_argument, kModule, "partition needs 0 < lo <= hi");
  first_ = static_cast<int>(std::floor(std::log2(lo))) - 1;
  last_ = static_cast<int>(std::ceil(std::log2(hi)));
}

double DyadicPartition::scale(std::size_t i) const { return std::ldexp(1.0, first_ + static_cast<int>(i) + 1); }

double DyadicPartition::piece(std::size_t i, double t) const {
  if (!(t > 0)) return 0;
  const int j = first_ + static_cast<int>(i);
  const double l = std::log2(t);
  return smooth_step(l - j) - smooth_step(l - j - 1);
}

double DyadicPartition::sum(double t) const {
  double total = 0;
  for (std::size_t i = 0; i < size(); ++i) total += piece(i, t);
  return total;
}

}  // namespace isobar3::osc
