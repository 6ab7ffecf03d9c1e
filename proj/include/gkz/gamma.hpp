#pragma once

// Complex Gamma function in log form. Any branch of log Gamma is returned;
// callers only exponentiate sums of these.

#include <complex>

namespace gkz {

using cplx = std::complex<double>;

cplx log_gamma(cplx z);
cplx log_sin_pi(cplx z);  // log sin(pi z), any branch
cplx gamma(cplx z);
cplx rgamma(cplx z);  // 1/Gamma(z), exactly 0 at nonpositive integers

// Within tol of 0, -1, -2, ...
bool is_nonpositive_integer(cplx z, double tol = 1e-12);

}  // namespace gkz
