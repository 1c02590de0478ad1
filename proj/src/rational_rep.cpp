#include <bandedge/rational_rep.hpp>

#include <bandedge/detail/fmt.hpp>
#include <bandedge/quadrature.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace bandedge {

namespace {

constexpr double pi = std::numbers::pi;
constexpr cplx I{0.0, 1.0};
constexpr double cluster_radius = 1e-7;
constexpr double residual_bound = 1e-9;

bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

cplx ipow(cplx z, int n) {
    cplx r = 1.0;
    for (int i = 0; i < n; ++i) r *= z;
    return r;
}

// (z^{2q} - a²) / Q(z)
cplx transfer(const RationalRep& rep, cplx z) {
    return (ipow(z, 2 * rep.ra.q) - rep.a * rep.a) / poly_eval(rep.q_poly, z);
}

// Laurent coefficients of the transfer function at a cluster centre, by the
// trapezoid rule on a circle enclosing the cluster and nothing else.
std::vector<cplx> laurent_coefficients(const RationalRep& rep, cplx centre, double radius, int order) {
    constexpr int points = 128;
    std::vector<cplx> b(order, 0.0);
    for (int j = 0; j < points; ++j) {
        const cplx u = radius * std::polar(1.0, 2.0 * pi * (j + 0.5) / points);
        const cplx f = transfer(rep, centre + u);
        cplx uk = u;
        for (int k = 0; k < order; ++k) {
            b[k] += f * uk;
            uk *= u;
        }
    }
    for (cplx& x : b) x /= double(points);
    return b;
}

bool removable(const RationalRoot& root, double b_scale) {
    return std::all_of(root.b.begin(), root.b.end(), [&](cplx x) { return std::abs(x) <= 1e-12 * b_scale; });
}

double b_scale(const RationalRep& rep) {
    double s = 0.0;
    for (const auto& r : rep.roots)
        for (cplx x : r.b) s = std::max(s, std::abs(x));
    return s;
}

// (1/2i)[(λ - iβ)^{-k} - (λ + iβ)^{-k}] = ∫ η^{k-1}/(k-1)! sin(βη) e^{-λη} dη  (Re λ > 0)
cplx eta_integral_closed(cplx lambda, double beta, int k) {
    return (std::pow(lambda - I * beta, -k) - std::pow(lambda + I * beta, -k)) / (2.0 * I);
}

double factorial(int k) {
    double f = 1.0;
    for (int j = 2; j <= k; ++j) f *= j;
    return f;
}

}  // namespace

void RationalAlpha::validate() const {
    if (!(p > 0 && p < q)) throw UsageError("rational alpha needs 0 < p < q");
    if (std::gcd(p, q) != 1) throw UsageError("rational alpha needs coprime p and q");
}

bool RationalAlpha::both_prime() const { return is_prime(p) && is_prime(q); }

std::optional<RationalAlpha> RationalAlpha::from_double(double alpha, int max_q) {
    for (int q = 2; q <= max_q; ++q) {
        const int p = int(std::lround(alpha * q));
        if (p > 0 && p < q && std::gcd(p, q) == 1 && std::abs(alpha - double(p) / q) <= 1e-12) return RationalAlpha{p, q};
    }
    return std::nullopt;
}

cplx RationalRep::residue_sum() const {
    cplx s = 0.0;
    for (const auto& r : roots) s += r.b.at(0);
    return s;
}

RationalRep build_poly_roots(const ReservoirParams& params, const RationalAlpha& ra) {
    ra.validate();
    if (std::abs(params.alpha - ra.value()) > 1e-12)
        throw UsageError("rational representation: alpha does not equal p/q");
    const DerivedConstants dc = derived_constants(params);

    RationalRep rep;
    rep.ra = ra;
    rep.a = params.a;
    rep.q_poly.assign(3 * ra.q + 1, 0.0);
    rep.q_poly[3 * ra.q] = 1.0;
    rep.q_poly[ra.q] += dc.z1;
    rep.q_poly[ra.p] += dc.z_alpha;
    rep.q_poly[0] += dc.z0;

    std::vector<cplx> raw = polynomial_roots(rep.q_poly);
    double scale = 0.0;
    for (cplx z : raw) scale = std::max(scale, std::abs(z));

    std::vector<bool> used(raw.size(), false);
    std::vector<std::vector<cplx>> clusters;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (used[i]) continue;
        std::vector<cplx> cluster{raw[i]};
        used[i] = true;
        for (std::size_t j = i + 1; j < raw.size(); ++j)
            if (!used[j] && std::abs(raw[j] - raw[i]) <= cluster_radius * scale) {
                cluster.push_back(raw[j]);
                used[j] = true;
            }
        clusters.push_back(std::move(cluster));
    }

    for (const auto& cluster : clusters) {
        if (cluster.size() > 2)
            throw MultiplicityError("rational representation: root of multiplicity " + std::to_string(cluster.size()) +
                                    " near " + detail::g6(cluster[0].real()) + (cluster[0].imag() < 0 ? "" : "+") +
                                    detail::g6(cluster[0].imag()) + "i is not supported");
        RationalRoot root;
        root.multiplicity = int(cluster.size());
        root.zeta = std::accumulate(cluster.begin(), cluster.end(), cplx(0.0)) / double(cluster.size());
        const double res = std::abs(poly_eval(rep.q_poly, root.zeta)) / poly_scale(rep.q_poly, root.zeta);
        const double bound = root.multiplicity == 1 ? residual_bound : 1e-6;
        if (!(res <= bound)) throw RootQualityError("rational representation: root residual " + detail::g6(res));
        if (root.multiplicity == 1) rep.max_residual = std::max(rep.max_residual, res);
        rep.roots.push_back(root);
    }

    for (auto& root : rep.roots) {
        if (root.multiplicity == 1) {
            const cplx z = root.zeta;
            root.b = {(ipow(z, 2 * ra.q) - rep.a * rep.a) / poly_derivative_eval(rep.q_poly, z)};
        } else {
            double gap = INFINITY;
            for (const auto& other : rep.roots)
                if (&other != &root) gap = std::min(gap, std::abs(other.zeta - root.zeta));
            root.b = laurent_coefficients(rep, root.zeta, 0.25 * std::min(gap, scale), 2);
        }
    }
    return rep;
}

cplx phi_kernel(const RationalRep& rep, double eta, double xi) {
    if (!(eta >= 0.0) || !(xi >= 0.0)) throw DomainError("phi_kernel: eta and xi must be nonnegative");
    if (eta == 0.0 || xi == 0.0) return 0.0;
    const int q = rep.ra.q;
    const double w = std::pow(xi, 1.0 / q);
    const double beta = w * std::sin(pi / q);
    const double bs = b_scale(rep);
    cplx sum = 0.0;
    for (const auto& root : rep.roots) {
        if (removable(root, bs)) continue;
        const cplx lambda = w * std::cos(pi / q) - root.zeta;
        if (lambda.real() <= 0.0)
            throw DivergenceError("phi_kernel: eta integral diverges (Re zeta >= cos(pi/q) xi^(1/q))");
        const cplx damp = std::exp(-lambda * eta) * std::sin(beta * eta);
        double eta_pow = 1.0;
        for (std::size_t k = 1; k <= root.b.size(); ++k) {
            sum += root.b[k - 1] / pi * eta_pow / factorial(int(k) - 1) * damp;
            eta_pow *= eta;
        }
    }
    return sum;
}

RationalValue amplitude_rational(const RationalRep& rep, double t) {
    if (!(t >= 0.0)) throw DomainError("amplitude_rational: negative time");
    const int q = rep.ra.q;
    const double bs = b_scale(rep);
    RationalValue out;

    // Poles of the Laplace transform on the principal sheet.
    for (const auto& root : rep.roots) {
        if (removable(root, bs)) continue;
        if (!(std::abs(std::arg(root.zeta)) < pi / q)) continue;
        const cplx z = root.zeta;
        const cplx e = std::exp(ipow(z, q) * t);
        cplx term = root.b[0] * double(q) * ipow(z, q - 1) * e;
        if (root.multiplicity == 2) {
            const cplx d = (double(q) * (q - 1) * (q >= 2 ? ipow(z, q - 2) : 1.0 / z) + double(q * q) * ipow(z, 2 * q - 2) * t) * e;
            term += root.b[1] * d;
        }
        out.pole_part += term;
    }

    double scale = 1.0;
    for (const auto& root : rep.roots) scale = std::max(scale, std::pow(std::abs(root.zeta), q));

    int fallbacks = 0;
    auto inner = [&](double xi) -> cplx {
        if (xi == 0.0) return 0.0;
        const double w = std::pow(xi, 1.0 / q);
        const double beta = w * std::sin(pi / q);
        cplx sum = 0.0;
        for (const auto& root : rep.roots) {
            if (removable(root, bs)) continue;
            const cplx lambda = w * std::cos(pi / q) - root.zeta;
            const double re = lambda.real();
            for (std::size_t k = 1; k <= root.b.size(); ++k) {
                const int kk = int(k);
                cplx value;
                if (std::abs(re) >= 0.1 * std::abs(std::abs(lambda.imag()) + beta) && std::abs(re) > 0.0) {
                    // Mirror the exponential when it grows; the closed form is even (k odd) or odd (k even) in λ.
                    const cplx lam = re > 0.0 ? lambda : -lambda;
                    const double sign = re > 0.0 ? 1.0 : (kk % 2 ? 1.0 : -1.0);
                    auto f = [&](double eta) -> cplx {
                        return std::pow(eta, kk - 1) / factorial(kk - 1) * std::sin(beta * eta) * std::exp(-lam * eta);
                    };
                    try {
                        value = sign * quad::integrate_half_line(f, 1.0 / lam.real(), 1e-10, 1e-13, "eta integral").value;
                    } catch (const QuadratureError&) {
                        value = eta_integral_closed(lambda, beta, kk);
                        ++fallbacks;
                    }
                } else {
                    value = eta_integral_closed(lambda, beta, kk);
                    ++fallbacks;
                }
                sum += root.b[k - 1] / pi * value;
            }
        }
        return sum * std::exp(-xi * t);
    };
    // The cut density decays like ξ^{-3-1/q}, but partial-fraction cancellation
    // leaves a rounding floor of order eps/ξ^{1/q}, so the range is truncated
    // where the algebraic tail bound drops below 1e-10.
    const double decay = 2.0 + 1.0 / q;
    double cap = 10.0 * scale;
    double tail = INFINITY;
    for (int i = 0; i < 12; ++i, cap *= 10.0) {
        tail = std::abs(inner(cap)) * cap / decay;
        if (tail < 1e-10) break;
    }
    if (!(tail < 1e-4)) throw DivergenceError("amplitude_rational: cut integral tail bound " + detail::g6(tail));

    cplx cut = 0.0;
    double error = tail;
    for (double lo = 0.0, hi = scale; lo < cap; lo = hi, hi = std::min(cap, hi * 10.0)) {
        const auto est = quad::integrate([&](double u) { return inner(lo + u); }, 0.0, hi - lo, 1e-8, 1e-11, "amplitude_rational");
        cut += est.value;
        error += est.error;
    }
    out.value = out.pole_part + cut;
    out.error = error;
    out.analytic_fallbacks = fallbacks;
    return out;
}

RationalValue amplitude_rational(const ReservoirParams& params, const RationalAlpha& ra, double t) {
    return amplitude_rational(build_poly_roots(params, ra), t);
}

}  // namespace bandedge
