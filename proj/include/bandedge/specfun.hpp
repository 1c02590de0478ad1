#pragma once

#include <bandedge/errors.hpp>

namespace bandedge::specfun {

/// Γ(z) for complex z (Lanczos, g = 7, with reflection for Re z < 1/2).
/// Throws PoleError at nonpositive integers and OverflowError when |Γ(z)|
/// is not representable.
cplx complex_gamma(cplx z);

/// Principal log Γ(z), continuous away from the negative real axis.
cplx complex_lgamma(cplx z);

/// G(z) = e^z Γ(1/2, z) on the principal branch, evaluated without forming
/// e^z or Γ(1/2, z) separately. Bounded by roughly |z|^{-1/2} for large |z|.
cplx scaled_upper_gamma_half(cplx z);

/// e^{w^2} erfc(w) for any complex w. Reduces to G(w^2)/sqrt(pi) when w is the
/// principal root of w^2, and to 2 e^{w^2} - G(w^2)/sqrt(pi) otherwise.
cplx scaled_erfc(cplx w);

enum class WrightShift { none, minus_two };

struct WrightKernelParams {
    int n = 0;
    int k = 0;
    double alpha = 0.5;
    WrightShift shift = WrightShift::none;
};

struct WrightSum {
    cplx value;         // sum divided by its leading term n!/Γ(1 - b)
    int terms = 0;
    double max_term = 0;  // largest |term|, same normalization
};

/// Residue series of the H^{1,1}_{1,2} instance with parameters (-n,1);(0,1),(b,2):
///   Σ_m (-1)^m Γ(1+n+m) / (m! Γ(1 - b + 2m)) z^m,   b = αk - 3n  (or αk - 3n - 2).
cplx wright_kernel(const WrightKernelParams& params, cplx z);

/// Same series normalized by its m = 0 term, so it stays O(1) for large n.
/// Used by the double series, which carries the prefactor in log space.
WrightSum wright_kernel_normalized(const WrightKernelParams& params, cplx z);

}  // namespace bandedge::specfun
