#include <bandedge/closed_half.hpp>

#include <bandedge/detail/fmt.hpp>
#include <bandedge/specfun.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace bandedge {

namespace {

constexpr double pi = std::numbers::pi;
constexpr cplx I{0.0, 1.0};
constexpr double residual_bound = 1e-10;

void require_half(const ReservoirParams& params) {
    params.validate();
    if (params.alpha != 0.5) throw UsageError("closed-half requires alpha = 1/2");
}

double relative_residual(const Polynomial& q, cplx z) { return std::abs(poly_eval(q, z)) / poly_scale(q, z); }

}  // namespace

Polynomial half_quartic(const ReservoirParams& params) {
    const double a = params.a;
    const double sa = std::sqrt(a);
    return {pi * std::sqrt(2.0 / a) * params.effective_amplitude(), 0.0, I * a, (1.0 + I) * sa, 1.0};
}

QuarticSolution quartic_roots(const ReservoirParams& params) {
    require_half(params);
    const double a = params.a;
    const double na = params.effective_amplitude();
    const double sa = std::sqrt(a);
    const Polynomial q = half_quartic(params);

    QuarticSolution sol;
    const cplx delta = std::sqrt(cplx(26.0 * pi * pi * a * na * na - std::pow(2.0, 1.5) * pi * std::pow(a, 3.5) * na -
                                      128.0 * pi * pi * pi * std::sqrt(2.0 / (a * a * a)) * na * na * na));
    const cplx phi =
        std::pow(std::pow(3.0, 1.5) * delta - I * a * a * a - 9.0 * I * pi * std::sqrt(2.0 * a) * na, 1.0 / 3.0);
    const double k = 12.0 * pi * std::sqrt(2.0 / a) * na;
    const cplx gamma = std::sqrt(phi / 3.0 - I * a / 6.0 + k / (3.0 * phi));
    const cplx common = (a * a - k) / (3.0 * phi) - I * a / 3.0 - phi / 3.0;
    const cplx s12 = std::sqrt((I - 1.0) * std::pow(a, 1.5) / (2.0 * gamma) + common);
    const cplx s34 = std::sqrt((1.0 - I) * std::pow(a, 1.5) / (2.0 * gamma) + common);
    const cplx shift = -(1.0 + I) * sa / 4.0;
    sol.delta_i = delta;
    sol.phi_i = phi;
    sol.gamma_i = gamma;

    std::array<cplx, 4> closed = {shift + gamma / 2.0 + s12 / 2.0, shift + gamma / 2.0 - s12 / 2.0,
                                  shift - gamma / 2.0 + s34 / 2.0, shift - gamma / 2.0 - s34 / 2.0};
    double closed_res = 0.0;
    for (const cplx& z : closed) {
        const double r = relative_residual(q, z);
        closed_res = std::isfinite(r) ? std::max(closed_res, r) : INFINITY;
    }
    sol.closed_form_residual = closed_res;
    sol.closed_form_accepted = closed_res <= residual_bound;

    if (sol.closed_form_accepted) {
        sol.roots = closed;
    } else {
        const auto numeric = polynomial_roots(q);
        std::copy(numeric.begin(), numeric.end(), sol.roots.begin());
    }
    std::sort(sol.roots.begin(), sol.roots.end(), [](cplx x, cplx y) {
        return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
    });

    double scale = 0.0;
    for (const cplx& z : sol.roots) {
        sol.max_residual = std::max(sol.max_residual, relative_residual(q, z));
        scale = std::max(scale, std::abs(z));
    }
    if (!(sol.max_residual <= residual_bound))
        throw RootQualityError("quartic roots: residual " + detail::g6(sol.max_residual) + " exceeds bound");
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (std::abs(sol.roots[i] - sol.roots[j]) <= 1e-9 * scale)
                throw MultiplicityError("quartic roots: two roots coincide");
    return sol;
}

cplx rational_r(cplx z, double a) {
    if (!(a > 0.0)) throw UsageError("rational_r: a must be positive");
    const double sa = std::sqrt(a);
    const cplx cubic = (1.0 + I) * a + 3.0 * sa * z + 2.0 * (1.0 - I) * z * z;
    const cplx den = 2.0 * z * cubic;
    const double den_scale = 2.0 * std::abs(z) * (std::sqrt(2.0) * a + 3.0 * sa * std::abs(z) + std::sqrt(8.0) * std::norm(z));
    if (z == 0.0 || std::abs(den) <= 1e-14 * den_scale) throw PoleError("rational_r: pole");
    return (1.0 - I) * (sa + z) * (I * sa + z) / den;
}

cplx amplitude_half(const QuarticSolution& sol, double a, double t) {
    if (!(t >= 0.0)) throw DomainError("amplitude_half: negative time");
    const double st = std::sqrt(t);
    cplx sum = 0.0;
    for (const cplx& chi : sol.roots) sum += chi * rational_r(chi, a) * specfun::scaled_erfc(-chi * st);
    return sum;
}

cplx amplitude_half(const ReservoirParams& params, double t) {
    return amplitude_half(quartic_roots(params), params.a, t);
}

DecayCurve population_half(const ReservoirParams& params, const std::vector<double>& grid) {
    check_grid(grid);
    const QuarticSolution sol = quartic_roots(params);
    DecayCurve curve;
    curve.params = params;
    curve.samples.reserve(grid.size());
    for (double t : grid) {
        const cplx c = t == 0.0 ? cplx(1.0) : amplitude_half(sol, params.a, t);
        curve.push(t, c, Method::closed_half);
    }
    return curve;
}

cplx half_power_coefficient(const QuarticSolution& sol, double a) {
    cplx sum = 0.0;
    for (const cplx& chi : sol.roots) sum += chi * rational_r(chi, a) / std::sqrt(chi * chi);
    return sum;
}

}  // namespace bandedge
