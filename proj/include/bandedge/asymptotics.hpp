#pragma once

#include <bandedge/decay_curve.hpp>
#include <bandedge/reservoir.hpp>
#include <bandedge/series.hpp>

#include <vector>

namespace bandedge {

enum class LawVariant { root_based, constant_based, n_scaled, limit };

std::string_view variant_name(LawVariant v);

/// P(t) ~ zeta t^{-power} for the decaying component, onset near tau.
struct AsymptoticLaw {
    double power = 3;
    double zeta = 0;
    double tau = 0;
    LawVariant variant = LawVariant::root_based;
    // |C(∞)|²: population held by the bound state below the band edge.
    double trapped_population = 0;
};

/// The pole of the Laplace transform at s = i·y, y > 0, on the physical sheet.
struct BoundState {
    double y = 0;
    cplx residue;  // C(t) contains residue·e^{iyt}
};

BoundState bound_state(const ReservoirParams& params);

/// α = 1/2: tau = max|χ|^{-2}, zeta = (1/4π)|Σ R(χ) χ^{-2}|².
AsymptoticLaw law_root_based(const ReservoirParams& params);

/// Any α: tau = max{1, |3/z0|^{1/3}, |3 z_α/z0|^{1/α}, 3|z1/z0|},
/// zeta = α² a⁴ |z_α|² / (|z0|⁴ Γ(1-α)²), power = 2(1+α).
AsymptoticLaw law_constant_based(const ReservoirParams& params);

/// Large-N limit of the constant-based time scale (N-independent).
AsymptoticLaw law_limit(double alpha, double a);

/// 4α² a^{4(1-α)} csc²(πα) sec⁴(πα/2) / (π² A² N² Γ(1-α)²), the decay factor
/// whose unit crossing defines critical_n.
double decay_factor_critical(const ReservoirParams& params);

/// floor(2α a^{3-α} csc(πα) sec²(πα/2) / (π A Γ(1-α))); may be zero.
long critical_n(const ReservoirParams& params);

/// zeta·t^{-power}. Throws DomainError for t <= 0.
double asymptotic_population(const AsymptoticLaw& law, double t);
/// True once t >= 10·tau.
bool asymptote_reliable(const AsymptoticLaw& law, double t);

/// residue·e^{iyt} + a² z_α / (z0² Γ(-α)) · t^{-1-α}
cplx asymptotic_amplitude(const ReservoirParams& params, double t);

/// Closed form for α = 1/2. Otherwise the series below its horizon and the
/// asymptotic amplitude from max(10·tau, horizon) on; GapError in between.
DecayCurve hybrid_population(const ReservoirParams& params, const std::vector<double>& grid,
                             const SeriesControls& controls = {});

}  // namespace bandedge
