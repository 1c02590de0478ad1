#pragma once

#include <bandedge/errors.hpp>

namespace bandedge {

/// The reservoir J(ω) = 2A (ω-ω0)^α / (a² + (ω-ω0)²) for ω > ω0, zero below,
/// together with the number of atoms sharing it. Rotating-frame dynamics only
/// sees (alpha, bigA * n_atoms, a).
struct ReservoirParams {
    double alpha = 0.5;
    double bigA = 1.0;
    double a = 1.0;
    double omega0 = 0.0;
    int n_atoms = 1;

    double effective_amplitude() const { return bigA * n_atoms; }
    /// Throws UsageError naming the first violated constraint.
    void validate() const;
};

struct DerivedConstants {
    cplx z0;
    cplx z1;
    cplx z_alpha;
    double f0 = 0;
    // |z1| < 1e-12 a²: z1 is the difference of two nearly equal numbers.
    bool z1_cancellation = false;
};

struct SpectralPeak {
    double m_alpha = 0;
    double omega_alpha = 0;
};

double spectral_density(const ReservoirParams& params, double omega);

/// Location and height of the maximum of J. The location is a·sqrt(α/(2-α))
/// above the edge.
SpectralPeak spectral_peak(const ReservoirParams& params);

/// Constants of the Laplace-domain denominator s³ + z1 s + z_α s^α + z0,
/// all scaled by the atom number.
DerivedConstants derived_constants(const ReservoirParams& params);

/// Amplitude at which z1 vanishes for the given atom number.
double critical_amplitude(double alpha, double a, int n_atoms = 1);

/// f(τ) = N ∫ J(ω) e^{-i(ω-ω0)τ} dω, integrated along the ray arg x = -π/4.
cplx correlation(const ReservoirParams& params, double tau);

/// Same integral on the real axis, using Ooura's method for the oscillatory
/// tail. Slower; kept as an independent cross-check.
cplx correlation_direct(const ReservoirParams& params, double tau);

/// N ∫ J dω by quadrature.
double correlation_moment(const ReservoirParams& params);

/// k-fold antiderivative of f vanishing at τ = 0 to order k:
///   F_k(τ) = N ∫ J(x) τ^k φ_k(-ixτ) dx,  φ_k(z) = (e^z - Σ_{j<k} z^j/j!) / z^k.
cplx correlation_antiderivative(const ReservoirParams& params, int k, double tau);

ReservoirParams dicke_scale(const ReservoirParams& params, int n);

}  // namespace bandedge
