#pragma once

#include <bandedge/polyroots.hpp>
#include <bandedge/reservoir.hpp>

#include <optional>
#include <vector>

namespace bandedge {

struct RationalAlpha {
    int p = 1;
    int q = 2;

    double value() const { return double(p) / q; }
    /// Requires 0 < p < q and gcd(p, q) = 1.
    void validate() const;
    bool both_prime() const;
    /// Smallest q <= max_q with |alpha - p/q| <= 1e-12, if any.
    static std::optional<RationalAlpha> from_double(double alpha, int max_q = 64);
};

struct RationalRoot {
    cplx zeta;
    int multiplicity = 1;
    // b[k-1] multiplies (z - zeta)^{-k} in the partial fractions of (z^{2q} - a²)/Q(z).
    std::vector<cplx> b;
};

struct RationalRep {
    RationalAlpha ra;
    double a = 1;
    Polynomial q_poly;  // z^{3q} + z1 z^q + z_α z^p + z0
    std::vector<RationalRoot> roots;
    double max_residual = 0;

    /// Σ_l b_{l,1}; vanishes when q >= 2.
    cplx residue_sum() const;
};

RationalRep build_poly_roots(const ReservoirParams& params, const RationalAlpha& ra);

/// Φ(η, ξ) = Σ_l Σ_k (b_{l,k}/π) η^{k-1}/(k-1)! sin(βη) e^{-λ_l η},
///   β = ξ^{1/q} sin(π/q),  λ_l = ξ^{1/q} cos(π/q) - ζ_l,
/// over every root with a nonzero residue. Complex in general.
/// Throws DivergenceError when some Re λ_l <= 0.
cplx phi_kernel(const RationalRep& rep, double eta, double xi);

struct RationalValue {
    cplx value;
    double error = 0;
    cplx pole_part;
    // Roots whose η-integral was taken in closed form because neither the
    // direct nor the mirrored exponential decays fast enough.
    int analytic_fallbacks = 0;
};

/// C(t) = Σ_poles q ζ^{q-1} b e^{ζ^q t} + ∫_0^∞ dξ e^{-ξt} ∫_0^∞ dη Φ(η, ξ),
/// the first sum over roots with |arg ζ| < π/q.
RationalValue amplitude_rational(const RationalRep& rep, double t);
RationalValue amplitude_rational(const ReservoirParams& params, const RationalAlpha& ra, double t);

}  // namespace bandedge
