#pragma once

#include <bandedge/decay_curve.hpp>
#include <bandedge/polyroots.hpp>
#include <bandedge/reservoir.hpp>

#include <array>
#include <vector>

namespace bandedge {

struct QuarticSolution {
    std::array<cplx, 4> roots;  // sorted by (Re, Im)
    cplx gamma_i;
    cplx phi_i;
    cplx delta_i;
    double max_residual = 0;  // max |Q(χ)| / Σ|q_j||χ|^j over the returned roots
    // Radical formulas evaluated on principal branches. When they miss the
    // residual bound the companion-matrix roots are returned instead.
    bool closed_form_accepted = false;
    double closed_form_residual = 0;
};

/// Q(z) = π sqrt(2/a) NA + i a z² + (1+i) a^{1/2} z³ + z⁴.
Polynomial half_quartic(const ReservoirParams& params);

QuarticSolution quartic_roots(const ReservoirParams& params);

/// (1-i)(a^{1/2}+z)(i a^{1/2}+z) / (2z((1+i)a + 3a^{1/2}z + 2(1-i)z²)).
cplx rational_r(cplx z, double a);

/// C(t) = Σ χ R(χ) e^{χ²t} erfc(-χ sqrt(t)), evaluated through the scaled kernel.
cplx amplitude_half(const ReservoirParams& params, double t);
cplx amplitude_half(const QuarticSolution& sol, double a, double t);

DecayCurve population_half(const ReservoirParams& params, const std::vector<double>& grid);

/// Σ χ R(χ) (χ²)^{-1/2} on the principal branch: the coefficient of the
/// t^{-1/2} term that would survive if every kernel took the principal form.
cplx half_power_coefficient(const QuarticSolution& sol, double a);

}  // namespace bandedge
