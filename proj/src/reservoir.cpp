#include <bandedge/reservoir.hpp>

#include <bandedge/quadrature.hpp>

#include <boost/math/quadrature/ooura_fourier_integrals.hpp>

#include <cmath>
#include <numbers>
#include <string>

namespace bandedge {

namespace {

constexpr double pi = std::numbers::pi;
constexpr cplx I{0.0, 1.0};

// Ray x = r e^{-iπ/4}: e^{-ixτ} decays and the pole at x = -ia stays outside
// the sector swept from the real axis.
const cplx ray = std::polar(1.0, -pi / 4.0);

// φ_k(z) = Σ_j z^j / (j+k)!
cplx phi_k(int k, cplx z) {
    double fact = 1.0;
    for (int j = 2; j <= k; ++j) fact *= j;
    if (std::abs(z) < 2.0) {
        cplx term = 1.0 / fact;
        cplx sum = term;
        for (int j = 1; j < 60; ++j) {
            term *= z / double(j + k);
            sum += term;
            if (std::abs(term) < 1e-17 * std::abs(sum)) break;
        }
        return sum;
    }
    cplx poly = 0.0;
    cplx zj = 1.0;
    double jfact = 1.0;
    for (int j = 0; j < k; ++j) {
        if (j > 0) jfact *= j;
        poly += zj / jfact;
        zj *= z;
    }
    return (std::exp(z) - poly) / zj;
}

}  // namespace

void ReservoirParams::validate() const {
    if (!(alpha > 0.0 && alpha < 1.0)) throw UsageError("alpha must lie strictly between 0 and 1");
    if (!(bigA > 0.0) || !std::isfinite(bigA)) throw UsageError("A must be positive and finite");
    if (!(a > 0.0) || !std::isfinite(a)) throw UsageError("a must be positive and finite");
    if (!(omega0 >= 0.0) || !std::isfinite(omega0)) throw UsageError("omega0 must be nonnegative");
    if (n_atoms < 1) throw UsageError("n-atoms must be at least 1");
}

double spectral_density(const ReservoirParams& params, double omega) {
    if (!(omega >= 0.0)) throw DomainError("spectral_density: negative frequency");
    const double x = omega - params.omega0;
    if (x <= 0.0) return 0.0;
    return 2.0 * params.bigA * std::pow(x, params.alpha) / (params.a * params.a + x * x);
}

SpectralPeak spectral_peak(const ReservoirParams& params) {
    const double al = params.alpha;
    SpectralPeak peak;
    peak.omega_alpha = params.omega0 + params.a * std::sqrt(al / (2.0 - al));
    peak.m_alpha = params.bigA * std::pow(al, al / 2) * std::pow(params.a, al - 2) * std::pow(2.0 - al, 1 - al / 2);
    return peak;
}

DerivedConstants derived_constants(const ReservoirParams& params) {
    params.validate();
    const double al = params.alpha;
    const double na = params.effective_amplitude();
    const double a = params.a;
    DerivedConstants c;
    c.f0 = pi * na * std::pow(a, al - 1) / std::cos(pi * al / 2);
    c.z1 = c.f0 - a * a;
    c.z0 = I * pi * na * std::pow(a, al) / std::sin(pi * al / 2);
    c.z_alpha = -2.0 * I * pi * na * std::exp(-I * pi * al / 2.0) / std::sin(pi * al);
    c.z1_cancellation = std::abs(c.z1) < 1e-12 * a * a;
    return c;
}

double critical_amplitude(double alpha, double a, int n_atoms) {
    return std::pow(a, 3 - alpha) * std::cos(pi * alpha / 2) / pi / n_atoms;
}

cplx correlation(const ReservoirParams& params, double tau) {
    params.validate();
    if (!(tau >= 0.0)) throw DomainError("correlation: negative lag");
    const double a2 = params.a * params.a;
    const double al = params.alpha;
    const cplx phase = std::polar(1.0, -pi * al / 4.0);
    const cplx decay = -I * ray * tau;
    auto integrand = [&](double r) -> cplx {
        if (r == 0.0) return 0.0;
        return std::pow(r, al) * std::exp(decay * r) / cplx(a2, -r * r);
    };
    const auto est = quad::integrate_half_line(integrand, params.a, 1e-12, 1e-14, "correlation");
    return 2.0 * params.effective_amplitude() * ray * phase * est.value;
}

cplx correlation_direct(const ReservoirParams& params, double tau) {
    params.validate();
    if (!(tau >= 0.0)) throw DomainError("correlation_direct: negative lag");
    const double a2 = params.a * params.a;
    const double al = params.alpha;
    auto g = [&](double x) { return x <= 0.0 ? 0.0 : std::pow(x, al) / (a2 + x * x); };
    const double scale = 2.0 * params.effective_amplitude();
    if (tau == 0.0) {
        const auto est = quad::integrate_half_line(g, params.a, 1e-12, 1e-14, "correlation_direct");
        return scale * est.value;
    }
    boost::math::quadrature::ooura_fourier_cos<double> cos_rule(1e-12, 10);
    boost::math::quadrature::ooura_fourier_sin<double> sin_rule(1e-12, 10);
    const auto [re, re_err] = cos_rule.integrate(g, tau);
    const auto [im, im_err] = sin_rule.integrate(g, tau);
    const double err = std::max(std::abs(re_err * re), std::abs(im_err * im));
    if (!(err < 1e-9) || !std::isfinite(re) || !std::isfinite(im)) throw QuadratureError("correlation_direct", err);
    return scale * cplx(re, -im);
}

double correlation_moment(const ReservoirParams& params) {
    params.validate();
    auto j = [&](double x) { return spectral_density(params, params.omega0 + x); };
    return params.n_atoms * quad::integrate_half_line(j, params.a, 1e-12, 0.0, "correlation_moment").value;
}

cplx correlation_antiderivative(const ReservoirParams& params, int k, double tau) {
    if (k < 1) throw UsageError("correlation_antiderivative: k must be >= 1");
    if (!(tau >= 0.0)) throw DomainError("correlation_antiderivative: negative lag");
    if (tau == 0.0) return 0.0;
    const double a2 = params.a * params.a;
    const double al = params.alpha;
    const cplx phase = std::polar(1.0, -pi * al / 4.0);
    const cplx arg = -I * ray * tau;
    auto integrand = [&](double r) -> cplx {
        if (r == 0.0) return 0.0;
        return std::pow(r, al) / cplx(a2, -r * r) * phi_k(k, arg * r);
    };
    const auto est = quad::integrate_half_line(integrand, params.a, 1e-11, 1e-15,
                                               "correlation_antiderivative k=" + std::to_string(k));
    return 2.0 * params.effective_amplitude() * ray * phase * std::pow(tau, k) * est.value;
}

ReservoirParams dicke_scale(const ReservoirParams& params, int n) {
    if (n < 1) throw UsageError("dicke_scale: n must be >= 1");
    ReservoirParams out = params;
    out.n_atoms = n;
    return out;
}

}  // namespace bandedge
