#pragma once

#include <complex>

namespace isobar3::lfun {

using cplx = std::complex<double>;

// Principal-ish log Gamma: exp(log_gamma(z)) = Gamma(z). The imaginary part is
// not reduced to (-pi, pi]. Throws PoleEncountered at nonpositive integers.
cplx log_gamma(cplx z);
cplx gamma(cplx z);

// log sin(pi z) without overflow for large |Im z|.
cplx log_sin_pi(cplx z);

// Upper incomplete gamma Gamma(a, x) for complex a and real x > 0, as a log.
cplx log_upper_gamma(cplx a, double x);

}  // namespace isobar3::lfun
