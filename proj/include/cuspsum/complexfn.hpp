#pragma once

// Complex Gamma and zeta, accurate enough for vertical-line quadrature:
// relative error <= 1e-12 for |Im| <= 200 in the supported regions.

#include <complex>

#include "cuspsum/errors.hpp"

namespace cuspsum {

using cplx = std::complex<double>;

// Gamma(z).  Reflection formula for Re z < 0.5; throws pole_error at
// non-positive integers.
cplx gamma(cplx z);

// Continuous log-Gamma (real on the positive real axis, continuous on
// vertical lines away from poles).  exp(log_gamma(z)) == gamma(z).
cplx log_gamma(cplx z);

// zeta(z) for Re z > 0, z != 1, via Euler-Maclaurin.  No continuation to
// Re z <= 0: that region throws unsupported_error rather than extrapolating.
cplx zeta(cplx z);

// Euler-Maclaurin with explicit node count and correction order (order up
// to 20).  zeta(z) uses nodes = max(20, ceil|Im z|), order = 10; tests use
// doubled parameters as the independent oracle.
cplx zeta_em(cplx z, int nodes, int order);

}  // namespace cuspsum
