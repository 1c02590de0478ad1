#include <bandedge/specfun.hpp>

#include <bandedge/detail/compensated_sum.hpp>
#include <bandedge/detail/fmt.hpp>

#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace bandedge::specfun {

namespace {

constexpr double pi = std::numbers::pi;
const double sqrt_pi = std::sqrt(pi);

constexpr double lanczos_g = 7.0;
constexpr std::array<double, 9> lanczos_coeff = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

// log Γ(z) for Re z >= 1/2.
cplx lanczos_lgamma(cplx z) {
    z -= 1.0;
    cplx series = lanczos_coeff[0];
    for (std::size_t i = 1; i < lanczos_coeff.size(); ++i) series += lanczos_coeff[i] / (z + double(i));
    const cplx t = z + lanczos_g + 0.5;
    return 0.5 * std::log(2.0 * pi) + (z + 0.5) * std::log(t) - t + std::log(series);
}

bool is_nonpositive_integer(cplx z) {
    return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::round(z.real());
}

constexpr double max_exp_arg = 709.78;

// Σ (-z)^n / (n! (n + 1/2)) so that γ(1/2, z) = sqrt(z) * sum.
cplx lower_gamma_half_series(cplx z) {
    cplx term = 1.0;
    cplx sum = 2.0;
    for (int n = 1; n < 2000; ++n) {
        term *= -z / double(n);
        const cplx add = term / (n + 0.5);
        sum += add;
        if (std::abs(add) <= 1e-17 * std::abs(sum)) return sum;
    }
    throw ConvergenceError("lower incomplete gamma series did not converge");
}

// Legendre continued fraction for e^z Γ(1/2, z), modified Lentz.
//   Γ(a,z) e^z z^{-a} = 1/(z + (1-a)/(1 + 1/(z + (2-a)/(1 + 2/(z + ...)))))
// written in the even contraction
//   1/(z+1-a- 1(1-a)/(z+3-a- 2(2-a)/(z+5-a- ...)))
cplx upper_gamma_half_cf(cplx z) {
    constexpr double a = 0.5;
    constexpr double tiny = 1e-300;
    cplx b = z + 1.0 - a;
    cplx c = 1.0 / tiny;
    cplx d = 1.0 / b;
    cplx h = d;
    for (int i = 1; i < 200000; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const cplx delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16) return std::sqrt(z) * h;
    }
    throw ConvergenceError("incomplete gamma continued fraction did not converge");
}

// z^{-1/2} Σ (-1)^n (1/2)_n z^{-n}, truncated at the smallest term.
cplx upper_gamma_half_asymptotic(cplx z) {
    cplx term = 1.0;
    cplx sum = 1.0;
    double last = 1.0;
    for (int n = 1; n < 400; ++n) {
        term *= -(n - 0.5) / z;
        const double mag = std::abs(term);
        if (mag > last) break;
        sum += term;
        last = mag;
        if (mag < 1e-17 * std::abs(sum)) break;
    }
    return sum / std::sqrt(z);
}

}  // namespace

cplx complex_lgamma(cplx z) {
    if (is_nonpositive_integer(z)) throw PoleError("log-gamma pole at nonpositive integer " + detail::g6(z.real()));
    if (z.real() >= 0.5) return lanczos_lgamma(z);
    // Reflection; the branch of log sin is irrelevant for exp() consumers.
    return std::log(pi) - std::log(std::sin(pi * z)) - lanczos_lgamma(1.0 - z);
}

cplx complex_gamma(cplx z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw DomainError("complex_gamma: nonfinite argument");
    if (is_nonpositive_integer(z)) throw PoleError("gamma pole at nonpositive integer " + detail::g6(z.real()));
    if (z.real() >= 0.5) {
        const cplx lg = lanczos_lgamma(z);
        if (lg.real() > max_exp_arg) throw OverflowError("complex_gamma overflow");
        return std::exp(lg);
    }
    const cplx reflected = complex_gamma(1.0 - z);
    const cplx s = std::sin(pi * z);
    const cplx value = pi / (s * reflected);
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) throw OverflowError("complex_gamma overflow");
    return value;
}

cplx scaled_upper_gamma_half(cplx z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw DomainError("scaled_upper_gamma_half: nonfinite argument");
    const double r = std::abs(z);
    if (r == 0.0) return sqrt_pi;
    if (r >= 38.0) return upper_gamma_half_asymptotic(z);
    // Close to the negative real axis the continued fraction stalls, while the
    // power series has no cancellation there: all terms share the phase of -z.
    const bool near_negative_axis = z.real() < 0.0 && std::abs(z.imag()) < 0.25 * std::abs(z.real());
    if (r <= 4.0 || near_negative_axis) {
        if (z.real() > max_exp_arg) throw OverflowError("scaled_upper_gamma_half overflow");
        return std::exp(z) * (sqrt_pi - std::sqrt(z) * lower_gamma_half_series(z));
    }
    return upper_gamma_half_cf(z);
}

cplx scaled_erfc(cplx w) {
    const cplx z = w * w;
    const bool principal = w.real() > 0.0 || (w.real() == 0.0 && w.imag() >= 0.0);
    const cplx g = scaled_upper_gamma_half(z) / sqrt_pi;
    if (principal) return g;
    if (z.real() > max_exp_arg) throw OverflowError("scaled_erfc overflow");
    return 2.0 * std::exp(z) - g;
}

WrightSum wright_kernel_normalized(const WrightKernelParams& params, cplx z) {
    if (params.n < 0 || params.k < 0 || params.k > params.n)
        throw UsageError("wright_kernel: need 0 <= k <= n");
    if (!(params.alpha > 0.0 && params.alpha < 1.0)) throw UsageError("wright_kernel: alpha must lie in (0,1)");
    const double b = params.alpha * params.k - 3.0 * params.n - (params.shift == WrightShift::minus_two ? 2.0 : 0.0);
    const double c = 1.0 - b;  // >= 1 for every admissible (n, k)

    constexpr double abs_tol = 1e-14;
    constexpr double rel_tol = 1e-12;
    constexpr int max_terms = 1000000;
    constexpr int quiet_needed = 5;

    WrightSum out;
    cplx term = 1.0;
    detail::CompensatedSum sum;
    sum.add(1.0);
    double max_term = 1.0;
    int quiet = 0;
    for (int m = 0; m < max_terms; ++m) {
        const cplx ratio = -z * double(params.n + m + 1) / (double(m + 1) * (c + 2.0 * m) * (c + 2.0 * m + 1.0));
        term *= ratio;
        sum.add(term);
        const double mag = std::abs(term);
        max_term = std::max(max_term, mag);
        const double threshold = std::max(abs_tol, rel_tol * std::abs(sum.value()));
        const double r = std::abs(ratio);
        const double tail = r < 0.5 ? mag * r / (1.0 - r) : mag;
        quiet = (mag <= threshold) ? quiet + 1 : 0;
        if (quiet >= quiet_needed && tail <= threshold) {
            out.value = sum.value();
            out.terms = m + 1;
            out.max_term = max_term;
            return out;
        }
    }
    throw ConvergenceError("wright_kernel: no convergence within 1e6 terms");
}

cplx wright_kernel(const WrightKernelParams& params, cplx z) {
    const WrightSum s = wright_kernel_normalized(params, z);
    const double b = params.alpha * params.k - 3.0 * params.n - (params.shift == WrightShift::minus_two ? 2.0 : 0.0);
    const double lead = std::lgamma(params.n + 1.0) - std::lgamma(1.0 - b);
    return std::exp(lead) * s.value;
}

}  // namespace bandedge::specfun
