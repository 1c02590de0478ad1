#pragma once

#include <bandedge/errors.hpp>

#include <vector>

namespace bandedge {

// Coefficients are stored lowest degree first: c[0] + c[1] z + ... + c[n] z^n.
using Polynomial = std::vector<cplx>;

cplx poly_eval(const Polynomial& c, cplx z);
cplx poly_derivative_eval(const Polynomial& c, cplx z);

/// Σ |c_j| |z|^j, the natural scale for judging a residual |p(z)|.
double poly_scale(const Polynomial& c, cplx z);

/// All roots of c (leading coefficient nonzero): eigenvalues of the companion
/// matrix, then a few Newton steps on the original polynomial.
std::vector<cplx> polynomial_roots(const Polynomial& c);

/// Coefficients of Π (z - r_j), lowest degree first.
Polynomial poly_from_roots(const std::vector<cplx>& roots);

}  // namespace bandedge
