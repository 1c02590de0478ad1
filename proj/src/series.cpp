#include <bandedge/series.hpp>

#include <bandedge/detail/compensated_sum.hpp>
#include <bandedge/detail/fmt.hpp>
#include <bandedge/specfun.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace bandedge {

namespace {

constexpr double eps = std::numeric_limits<double>::epsilon();

struct Term {
    double exponent;
    cplx value;
    double magnitude_bound;  // prefactor times the largest kernel term
};

// Sum of the collected terms in increasing power of t.
SeriesValue finish(std::vector<Term>& terms, double t, int outer, double last_block, const SeriesControls& controls) {
    std::stable_sort(terms.begin(), terms.end(), [](const Term& x, const Term& y) { return x.exponent < y.exponent; });
    detail::CompensatedSum sum;
    double max_term = 0.0;
    double rounding = 0.0;
    for (const Term& term : terms) {
        sum.add(term.value);
        max_term = std::max(max_term, std::abs(term.value));
        rounding += term.magnitude_bound;
    }
    SeriesValue out;
    out.value = sum.value();
    out.outer_terms = outer;
    out.error = 4.0 * eps * rounding + last_block;
    out.cancellation = max_term / std::abs(out.value);
    if (!(out.cancellation <= controls.cancellation_limit) || !(out.error <= controls.max_error))
        throw HorizonError("series beyond its reliable horizon at t = " + detail::g6(t) + " (error estimate " +
                               detail::g6(out.error) + ")",
                           out.value, t);
    return out;
}

template <class BlockFn>
SeriesValue run_series(double t, const SeriesControls& controls, BlockFn&& block) {
    controls.validate();
    if (!(t >= 0.0)) throw DomainError("series: negative time");
    if (t == 0.0) return SeriesValue{1.0, 0.0, 0, 1.0};
    std::vector<Term> terms;
    int quiet = 0;
    double previous = INFINITY;
    double last = 0.0;
    for (int n = 0; n < controls.max_outer_terms; ++n) {
        const double block_max = block(n, terms);
        last = block_max;
        // Stop after two consecutive small, shrinking blocks.
        const bool small = block_max <= controls.abs_tol && block_max <= previous;
        quiet = small ? quiet + 1 : 0;
        previous = block_max;
        if (quiet >= 2 && n >= 2) return finish(terms, t, n + 1, block_max, controls);
    }
    SeriesValue partial = finish(terms, t, controls.max_outer_terms, last, controls);
    if (last > controls.horizon_guard * std::abs(partial.value))
        throw HorizonError("series did not settle within " + std::to_string(controls.max_outer_terms) +
                               " outer terms at t = " + detail::g6(t),
                           partial.value, t);
    return partial;
}

}  // namespace

void SeriesControls::validate() const {
    if (!(abs_tol > 0.0)) throw UsageError("series: abs_tol must be positive");
    if (max_outer_terms < 10) throw UsageError("series: max_outer_terms must be at least 10");
    if (!(horizon_guard > 0.0) || !(cancellation_limit > 1.0) || !(max_error > 0.0))
        throw UsageError("series: invalid horizon controls");
}

SeriesValue amplitude_series(const ReservoirParams& params, double t, const SeriesControls& controls) {
    const DerivedConstants dc = derived_constants(params);
    const double al = params.alpha;
    const double a2 = params.a * params.a;
    const cplx z = dc.z1.real() * t * t;
    const double log_t = std::log(t > 0 ? t : 1.0);
    const double log_za = std::log(std::abs(dc.z_alpha));
    const double log_z0 = std::log(std::abs(dc.z0));
    const cplx unit_za = dc.z_alpha / std::abs(dc.z_alpha);
    const cplx unit_z0 = dc.z0 / std::abs(dc.z0);

    auto block = [&](int n, std::vector<Term>& terms) {
        double block_max = 0.0;
        // phase = (-1)^n unit_za^k unit_z0^{n-k}, advanced by multiplication in k.
        cplx phase = (n % 2 ? -1.0 : 1.0);
        for (int j = 0; j < n; ++j) phase *= unit_z0;
        for (int k = 0; k <= n; ++k) {
            if (k > 0) phase *= unit_za / unit_z0;
            const double e = 3.0 * n - al * k;
            const double log_pre = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) + k * log_za +
                                   (n - k) * log_z0 + e * log_t;
            const double log_lead = log_pre - std::lgamma(e + 1.0);
            const double log_lead_shift = log_pre - std::lgamma(e + 3.0) + std::log(a2) + 2.0 * log_t;
            const auto w = specfun::wright_kernel_normalized({n, k, al, specfun::WrightShift::none}, z);
            const auto ws = specfun::wright_kernel_normalized({n, k, al, specfun::WrightShift::minus_two}, z);
            const double lead = std::exp(log_lead);
            const double lead_shift = std::exp(log_lead_shift);
            const cplx value = phase * (lead * w.value - lead_shift * ws.value);
            const double bound = lead * w.max_term + lead_shift * ws.max_term;
            terms.push_back({e, value, bound});
            block_max = std::max(block_max, std::abs(value));
        }
        return block_max;
    };
    return run_series(t, controls, block);
}

SeriesValue amplitude_series_z1zero(const ReservoirParams& params, double t, const SeriesControls& controls) {
    const DerivedConstants dc = derived_constants(params);
    const double a2 = params.a * params.a;
    if (std::abs(dc.z1) > 1e-10 * a2)
        throw UsageError("series-z1zero requires z1 = 0 (A at the critical amplitude)");
    const double al = params.alpha;
    const double log_t = std::log(t > 0 ? t : 1.0);
    const double log_za = std::log(std::abs(dc.z_alpha));
    const double log_z0 = std::log(std::abs(dc.z0));
    const cplx unit_za = dc.z_alpha / std::abs(dc.z_alpha);
    const cplx unit_z0 = dc.z0 / std::abs(dc.z0);

    auto block = [&](int n, std::vector<Term>& terms) {
        double block_max = 0.0;
        cplx phase = (n % 2 ? -1.0 : 1.0);
        for (int j = 0; j < n; ++j) phase *= unit_z0;
        for (int k = 0; k <= n; ++k) {
            if (k > 0) phase *= unit_za / unit_z0;
            const double e = 3.0 * n - al * k;
            const double log_lead = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) +
                                    k * log_za + (n - k) * log_z0 + e * log_t - std::lgamma(e + 1.0);
            const double lead = std::exp(log_lead);
            const double correction = a2 * t * t / ((e + 1.0) * (e + 2.0));
            const cplx value = phase * lead * (1.0 - correction);
            terms.push_back({e, value, lead * (1.0 + correction)});
            block_max = std::max(block_max, std::abs(value));
        }
        return block_max;
    };
    return run_series(t, controls, block);
}

DecayCurve population_series(const ReservoirParams& params, const std::vector<double>& grid,
                             const SeriesControls& controls) {
    check_grid(grid);
    DecayCurve curve;
    curve.params = params;
    for (double t : grid) {
        try {
            curve.push(t, amplitude_series(params, t, controls).value, Method::series);
        } catch (const HorizonError& e) {
            curve.notes.push_back("dropped t = " + detail::g6(t) + ": " + e.what());
        }
    }
    return curve;
}

}  // namespace bandedge
