#include <bandedge/oracles.hpp>

#include <bandedge/detail/fmt.hpp>
#include <bandedge/quadrature.hpp>

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <thread>

namespace bandedge {

namespace {

constexpr cplx I{0.0, 1.0};
using cell_rule = boost::math::quadrature::gauss<double, 20>;

// Fills out[m] = f(m h) for m = 0..n using a few worker threads.
void tabulate(const std::function<cplx(double)>& f, double h, std::vector<cplx>& out) {
    const std::size_t n = out.size();
    const unsigned workers = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
    if (n < 64 || workers == 1) {
        for (std::size_t m = 0; m < n; ++m) out[m] = f(m * h);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            try {
                for (std::size_t m = w; m < n; m += workers) out[m] = f(m * h);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

// ∫_0^x u^p / (a² + u²) du for x well below a.
double edge_moment(double p, double x, double a2) {
    double sum = 0.0;
    double term = std::pow(x, p + 1.0) / a2;
    for (int j = 0; j < 40; ++j) {
        sum += term / (p + 1.0 + 2.0 * j);
        term *= -x * x / a2;
    }
    return sum;
}

}  // namespace

void VolterraConfig::validate() const {
    if (!(dt > 0.0) || !(t_max > 0.0)) throw UsageError("volterra: dt and t_max must be positive");
    if (dt > t_max) throw UsageError("volterra: dt exceeds t_max");
    if (scheme_order != 1 && scheme_order != 2) throw UsageError("volterra: scheme_order must be 1 or 2");
}

KernelMoments reservoir_kernel(const ReservoirParams& params) {
    params.validate();
    KernelMoments k;
    k.f2 = [params](double tau) { return correlation_antiderivative(params, 2, tau); };
    k.f3 = [params](double tau) { return correlation_antiderivative(params, 3, tau); };
    k.f0 = derived_constants(params).f0;
    return k;
}

KernelMoments constant_kernel(double c) {
    KernelMoments k;
    k.f2 = [c](double tau) { return cplx(c * tau * tau / 2.0); };
    k.f3 = [c](double tau) { return cplx(c * tau * tau * tau / 6.0); };
    k.f0 = c;
    return k;
}

DecayCurve volterra_solve(const KernelMoments& kernel, const VolterraConfig& config) {
    config.validate();
    const double h = config.dt;
    const int steps = int(std::ceil(config.t_max / h - 1e-9));

    std::vector<cplx> f2(steps + 1), f3(steps + 1);
    tabulate(kernel.f2, h, f2);
    if (config.scheme_order == 2) tabulate(kernel.f3, h, f3);

    // Cell moments of F1 over u in [m h, (m+1) h].
    std::vector<cplx> m0(steps), m1(steps);
    for (int m = 0; m < steps; ++m) {
        m0[m] = f2[m + 1] - f2[m];
        if (config.scheme_order == 2) m1[m] = (h * f2[m + 1] - (f3[m + 1] - f3[m])) / h;
    }

    DecayCurve curve;
    if (h * std::sqrt(std::abs(kernel.f0)) > 0.1)
        curve.notes.push_back("dt*sqrt(f0) = " + detail::g6(h * std::sqrt(std::abs(kernel.f0))) + " exceeds 0.1");

    std::vector<cplx> c(steps + 1);
    c[0] = 1.0;
    for (int n = 1; n <= steps; ++n) {
        cplx rhs = 1.0;
        cplx diag;
        if (config.scheme_order == 1) {
            for (int j = 0; j < n; ++j) rhs -= m0[n - 1 - j] * c[j];
            diag = 1.0;
        } else {
            // Cell m couples C_{n-m} with weight m0 - m1 and C_{n-m-1} with weight m1.
            for (int m = 1; m < n; ++m) rhs -= (m0[m] - m1[m]) * c[n - m];
            for (int m = 0; m < n; ++m) rhs -= m1[m] * c[n - m - 1];
            diag = 1.0 + m0[0] - m1[0];
        }
        c[n] = rhs / diag;
        if (std::abs(c[n]) > 1.0 + 1e-3)
            throw InstabilityError("volterra: |C| = " + detail::g6(std::abs(c[n])) + " at t = " + detail::g6(n * h));
    }
    curve.samples.reserve(steps + 1);
    for (int n = 0; n <= steps; ++n) curve.push(n * h, c[n], Method::volterra);
    return curve;
}

DecayCurve volterra_solve(const ReservoirParams& params, const VolterraConfig& config) {
    DecayCurve curve = volterra_solve(reservoir_kernel(params), config);
    curve.params = params;
    return curve;
}

ModeGrid mode_discretize(const ReservoirParams& params, int count, double omega_cap) {
    params.validate();
    if (count < 10) throw UsageError("mode_discretize: count must be at least 10");
    if (!(omega_cap > params.a)) throw UsageError("mode_discretize: omega_cap must exceed a");

    // Edges: geometric from 1e-6 a to half the cap, uniform beyond.
    const double x_s = omega_cap / 2.0;
    const int n_geo = (3 * count) / 4;
    const int n_lin = count - n_geo - 1;
    std::vector<double> edges{0.0};
    const double x0 = 1e-6 * params.a;
    for (int i = 0; i <= n_geo; ++i) edges.push_back(x0 * std::pow(x_s / x0, double(i) / n_geo));
    for (int i = 1; i <= n_lin; ++i) edges.push_back(x_s + (omega_cap - x_s) * i / n_lin);

    const double scale = 2.0 * params.effective_amplitude();
    const double a2 = params.a * params.a;
    const double al = params.alpha;
    auto weight = [&](double x) { return x <= 0.0 ? 0.0 : std::pow(x, al) / (a2 + x * x); };
    auto first = [&](double x) { return x * weight(x); };

    ModeGrid grid;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        const double lo = edges[i];
        const double hi = edges[i + 1];
        const bool edge = lo == 0.0;
        // Cells are narrow against the scale of J, so fixed Gauss-Legendre is exact to rounding.
        const double mass = edge ? edge_moment(al, hi, a2) : cell_rule::integrate(weight, lo, hi);
        const double moment = edge ? edge_moment(al + 1.0, hi, a2) : cell_rule::integrate(first, lo, hi);
        grid.couplings.push_back(std::sqrt(scale * mass));
        grid.frequencies.push_back(moment / mass);
    }
    grid.tail_mass =
        scale * quad::integrate_half_line([&](double x) { return weight(x + omega_cap); }, omega_cap, 1e-10, 0.0,
                                          "mode tail")
                    .value;
    const double f0 = derived_constants(params).f0;
    if (grid.tail_mass > 1e-4 * f0)
        grid.warning = "omega_cap too small: truncated tail holds " + detail::g6(grid.tail_mass / f0) + " of f0";
    return grid;
}

ModeRun mode_evolve(const ModeGrid& grid, double t_max, double dt) {
    const std::size_t k = grid.frequencies.size();
    if (k == 0 || grid.couplings.size() != k) throw UsageError("mode_evolve: malformed grid");
    if (!(dt > 0.0) || !(t_max > 0.0)) throw UsageError("mode_evolve: dt and t_max must be positive");
    double w_max = 0.0;
    for (double w : grid.frequencies) w_max = std::max(w_max, std::abs(w));
    if (dt * w_max > 0.1)
        throw ResolutionError("mode_evolve: dt*max|omega| = " + detail::g6(dt * w_max) + " exceeds 0.1");

    double g2 = 0.0;
    for (double g : grid.couplings) g2 += g * g;
    const double big_g = std::sqrt(g2);
    std::vector<double> unit(k);
    for (std::size_t i = 0; i < k; ++i) unit[i] = big_g > 0 ? grid.couplings[i] / big_g : 0.0;

    std::vector<cplx> half_phase(k);
    for (std::size_t i = 0; i < k; ++i) half_phase[i] = std::exp(-I * grid.frequencies[i] * (dt / 2));
    const double cs = std::cos(big_g * dt);
    const double sn = std::sin(big_g * dt);

    ModeRun run;
    const int steps = int(std::ceil(t_max / dt - 1e-9));
    run.curve.samples.reserve(steps + 1);
    cplx c = 1.0;
    std::vector<cplx> d(k, 0.0);
    run.curve.push(0.0, c, Method::modes);
    for (int n = 1; n <= steps; ++n) {
        for (std::size_t i = 0; i < k; ++i) d[i] *= half_phase[i];
        cplx b = 0.0;
        for (std::size_t i = 0; i < k; ++i) b += unit[i] * d[i];
        const cplx c_new = cs * c - I * sn * b;
        const cplx db = (cs - 1.0) * b - I * sn * c;
        for (std::size_t i = 0; i < k; ++i) d[i] += unit[i] * db;
        c = c_new;
        double norm = std::norm(c);
        for (std::size_t i = 0; i < k; ++i) {
            d[i] *= half_phase[i];
            norm += std::norm(d[i]);
        }
        run.max_unitarity_defect = std::max(run.max_unitarity_defect, std::abs(norm - 1.0));
        run.curve.push(n * dt, c, Method::modes);
    }
    return run;
}

}  // namespace bandedge
