#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace isobar3::osc {

using cplx = std::complex<double>;

// W = 1 on [1/2, 1], 0 outside [1/2 - Y/X, 1 + Y/X], smooth steps on the two ramps.
class SmoothWindow {
 public:
  SmoothWindow(double X, double Y);  // throws BadGeometry unless 0 < Y < X/4

  double X() const noexcept { return X_; }
  double Y() const noexcept { return Y_; }
  double ratio() const noexcept { return r_; }  // Y / X
  double support_lo() const noexcept { return 0.5 - r_; }
  double support_hi() const noexcept { return 1.0 + r_; }

  double operator()(double u) const;
  double derivative(double u, int order) const;  // order 0..4

 private:
  double X_, Y_, r_;
};

SmoothWindow make_window(double X, double Y);

// int W(x) x^{s-1} dx. order 0 integrates W directly; order k >= 1 uses
// (-1)^k / (s (s+1) ... (s+k-1)) int W^{(k)}(u) u^{s+k-1} du.
cplx mellin_transform(const SmoothWindow& w, cplx s, int order = 0);

struct MellinDecayReport {
  cplx at_one;                 // W~(1)
  double at_one_deviation = 0; // |W~(1) - 1/2|
  std::vector<cplx> samples;
  std::vector<cplx> values;    // W~ at the samples (direct quadrature)
  std::array<double, 3> fitted_constants{};  // max |W~| |s|^k / (X/Y)^{k-1}, k = 1..3
  double max_form_disagreement = 0;          // relative spread of the k = 1, 2 forms against direct
};

// Throws QuadratureFailure when the quadrature forms disagree beyond 1e-8.
MellinDecayReport mellin_decay_check(const SmoothWindow& w, std::span<const cplx> samples);

// Smooth partition of unity by dyadic pieces V_j(t) = S(log2(t / 2^j)) - S(log2(t / 2^{j+1})),
// piece j supported on [2^j, 2^{j+2}]; the pieces sum to 1 on [lo, hi].
class DyadicPartition {
 public:
  DyadicPartition(double lo, double hi);

  std::size_t size() const noexcept { return static_cast<std::size_t>(last_ - first_ + 1); }
  double scale(std::size_t i) const;  // T = 2^{j+1}, the piece's dyadic centre
  double piece(std::size_t i, double t) const;
  double sum(double t) const;

 private:
  int first_, last_;
};

}  // namespace isobar3::osc
