#pragma once

#include <bandedge/decay_curve.hpp>
#include <bandedge/reservoir.hpp>

#include <functional>
#include <string>
#include <vector>

namespace bandedge {

struct VolterraConfig {
    double dt = 1e-3;
    double t_max = 1.0;
    int scheme_order = 2;  // 1: piecewise-constant C, 2: piecewise-linear C

    void validate() const;
};

/// Second and third antiderivatives of a correlation function, vanishing at 0.
/// The integrated equation C(t) = 1 - ∫_0^t F1(t-s) C(s) ds only needs cell
/// moments of F1, and those are differences of F2 and F3.
struct KernelMoments {
    std::function<cplx(double)> f2;
    std::function<cplx(double)> f3;
    double f0 = 0;  // f(0), used for the step-size heuristic
};

KernelMoments reservoir_kernel(const ReservoirParams& params);
/// f(τ) ≡ c. The solution is cos(sqrt(c) t).
KernelMoments constant_kernel(double c);

/// Solves C' = -(f * C), C(0) = 1 on the uniform grid k·dt by product integration.
DecayCurve volterra_solve(const KernelMoments& kernel, const VolterraConfig& config);
DecayCurve volterra_solve(const ReservoirParams& params, const VolterraConfig& config);

struct ModeGrid {
    std::vector<double> frequencies;  // detunings ω_k - ω0
    std::vector<double> couplings;    // g_k >= 0
    double tail_mass = 0;             // N ∫ J beyond the cap
    std::string warning;
};

/// count cells, geometric near the edge and uniform further out, up to omega_cap
/// (a detuning). g_k² is the N-scaled weight of J in cell k, ω_k its centroid.
ModeGrid mode_discretize(const ReservoirParams& params, int count, double omega_cap);

struct ModeRun {
    DecayCurve curve;
    double max_unitarity_defect = 0;  // max_t | |C|² + Σ|Λ_k|² - 1 |
};

/// Strang splitting: exact phases e^{-iω dt/2} around an exact rotation in the
/// plane of C and the coupled bath mode. Norm-preserving for any dt.
ModeRun mode_evolve(const ModeGrid& grid, double t_max, double dt);

}  // namespace bandedge
