#include <bandedge/asymptotics.hpp>

#include <bandedge/closed_half.hpp>
#include <bandedge/detail/fmt.hpp>
#include <bandedge/specfun.hpp>

#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace bandedge {

namespace {

constexpr double pi = std::numbers::pi;
constexpr cplx I{0.0, 1.0};

}  // namespace

std::string_view variant_name(LawVariant v) {
    switch (v) {
        case LawVariant::root_based: return "root-based";
        case LawVariant::constant_based: return "constant-based";
        case LawVariant::n_scaled: return "n-scaled";
        case LawVariant::limit: return "limit";
    }
    return "unknown";
}

BoundState bound_state(const ReservoirParams& params) {
    const DerivedConstants dc = derived_constants(params);
    const double al = params.alpha;
    const double na = params.effective_amplitude();
    const double z1 = dc.z1.real();
    const double c_al = 2.0 * pi * na / std::sin(pi * al);
    const double c_0 = pi * na * std::pow(params.a, al) / std::sin(pi * al / 2);
    // D(iy)/i with the physical branch (iy)^α = e^{iπα/2} y^α.
    auto h = [&](double y) { return -y * y * y + z1 * y - c_al * std::pow(y, al) + c_0; };

    double hi = std::max(1.0, std::cbrt(c_0));
    while (h(hi) > 0.0) hi *= 2.0;
    std::uintmax_t iters = 200;
    const auto [lo_y, hi_y] = boost::math::tools::toms748_solve(h, 0.0, hi, boost::math::tools::eps_tolerance<double>(52), iters);
    BoundState b;
    b.y = 0.5 * (lo_y + hi_y);
    const cplx s = I * b.y;
    const cplx s_al = std::polar(std::pow(b.y, al), pi * al / 2);
    const cplx d_prime = 3.0 * s * s + dc.z1 + al * dc.z_alpha * s_al / s;
    b.residue = (s * s - params.a * params.a) / d_prime;
    return b;
}

AsymptoticLaw law_root_based(const ReservoirParams& params) {
    const QuarticSolution sol = quartic_roots(params);
    AsymptoticLaw law;
    law.power = 3.0;
    law.variant = params.n_atoms > 1 ? LawVariant::n_scaled : LawVariant::root_based;
    cplx sum = 0.0;
    double tau = 0.0;
    for (const cplx& chi : sol.roots) {
        sum += rational_r(chi, params.a) / (chi * chi);
        tau = std::max(tau, 1.0 / std::norm(chi));
    }
    law.tau = tau;
    law.zeta = std::norm(sum) / (4.0 * pi);
    law.trapped_population = std::norm(bound_state(params).residue);
    return law;
}

AsymptoticLaw law_constant_based(const ReservoirParams& params) {
    const DerivedConstants dc = derived_constants(params);
    const double al = params.alpha;
    const double a = params.a;
    const double z0 = std::abs(dc.z0);
    const double za = std::abs(dc.z_alpha);
    AsymptoticLaw law;
    law.power = 2.0 * (1.0 + al);
    law.variant = params.n_atoms > 1 ? LawVariant::n_scaled : LawVariant::constant_based;
    law.tau = std::max({1.0, std::cbrt(3.0 / z0), std::pow(3.0 * za / z0, 1.0 / al), 3.0 * std::abs(dc.z1) / z0});
    const double g = std::tgamma(1.0 - al);
    law.zeta = al * al * std::pow(a, 4) * za * za / (z0 * z0 * z0 * z0 * g * g);
    law.trapped_population = std::norm(bound_state(params).residue);
    return law;
}

AsymptoticLaw law_limit(double alpha, double a) {
    if (!(alpha > 0.0 && alpha < 1.0) || !(a > 0.0)) throw UsageError("law_limit: need 0 < alpha < 1 and a > 0");
    AsymptoticLaw law;
    law.power = 2.0 * (1.0 + alpha);
    law.variant = LawVariant::limit;
    const double c = std::cos(pi * alpha / 2);
    law.tau = std::max({1.0, std::pow(3.0 / c, 1.0 / alpha) / a, 3.0 * std::tan(pi * alpha / 2) / a});
    law.zeta = 0.0;
    law.trapped_population = 0.25;
    return law;
}

double decay_factor_critical(const ReservoirParams& params) {
    params.validate();
    const double al = params.alpha;
    const double na = params.effective_amplitude();
    const double csc = 1.0 / std::sin(pi * al);
    const double sec = 1.0 / std::cos(pi * al / 2);
    const double g = std::tgamma(1.0 - al);
    return 4.0 * al * al * std::pow(params.a, 4.0 * (1.0 - al)) * csc * csc * std::pow(sec, 4) / (pi * pi * na * na * g * g);
}

long critical_n(const ReservoirParams& params) {
    params.validate();
    const double al = params.alpha;
    const double sec = 1.0 / std::cos(pi * al / 2);
    const double value = 2.0 * al * std::pow(params.a, 3.0 - al) / std::sin(pi * al) * sec * sec /
                         (pi * params.bigA * std::tgamma(1.0 - al));
    if (!(value < 9.2e18)) throw OverflowError("critical_n: value not representable");
    return long(std::floor(value));
}

double asymptotic_population(const AsymptoticLaw& law, double t) {
    if (!(t > 0.0)) throw DomainError("asymptotic_population: t must be positive");
    return law.zeta * std::pow(t, -law.power);
}

bool asymptote_reliable(const AsymptoticLaw& law, double t) { return t >= 10.0 * law.tau; }

cplx asymptotic_amplitude(const ReservoirParams& params, double t) {
    if (!(t > 0.0)) throw DomainError("asymptotic_amplitude: t must be positive");
    const DerivedConstants dc = derived_constants(params);
    const BoundState b = bound_state(params);
    const double al = params.alpha;
    const cplx tail = params.a * params.a * dc.z_alpha / (dc.z0 * dc.z0 * std::tgamma(-al));
    return b.residue * std::exp(I * b.y * t) + tail * std::pow(t, -1.0 - al);
}

DecayCurve hybrid_population(const ReservoirParams& params, const std::vector<double>& grid,
                             const SeriesControls& controls) {
    check_grid(grid);
    if (params.alpha == 0.5) return population_half(params, grid);

    const AsymptoticLaw law = law_constant_based(params);
    DecayCurve curve;
    curve.params = params;
    bool past_horizon = false;
    double worst = 0.0;
    bool overlap = false;
    for (double t : grid) {
        const bool asym_ok = t > 0.0 && asymptote_reliable(law, t);
        if (!past_horizon) {
            try {
                const cplx c = amplitude_series(params, t, controls).value;
                curve.push(t, c, Method::series);
                if (asym_ok) {
                    const double p_asym = std::norm(asymptotic_amplitude(params, t));
                    worst = std::max(worst, std::abs(p_asym - std::norm(c)) / std::norm(c));
                    overlap = true;
                }
                continue;
            } catch (const HorizonError&) {
                past_horizon = true;
            }
        }
        if (!asym_ok)
            throw GapError("no method covers t = " + detail::g6(t) + ": past the series horizon and below 10*tau = " +
                           detail::g6(10.0 * law.tau));
        curve.push(t, asymptotic_amplitude(params, t), Method::asymptotic);
    }
    if (overlap) curve.overlap_mismatch = worst;
    return curve;
}

}  // namespace bandedge
