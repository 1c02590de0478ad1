#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bandedge/asymptotics.hpp>
#include <bandedge/closed_half.hpp>
#include <bandedge/oracles.hpp>

#include <chrono>
#include <cmath>
#include <numbers>

using namespace bandedge;

namespace {

ReservoirParams make(double alpha, double bigA, double a = 1.0, int n = 1) {
    ReservoirParams p;
    p.alpha = alpha;
    p.bigA = bigA;
    p.a = a;
    p.n_atoms = n;
    return p;
}

constexpr double pi = std::numbers::pi;

}  // namespace

TEST_CASE("root-based time scales for Dicke ensembles") {
    CHECK(law_root_based(make(0.5, 1e-4, 1.0, 3)).tau == doctest::Approx(789.0).epsilon(5e-3));
    CHECK(law_root_based(make(0.5, 1e-4, 1.0, 12)).tau == doctest::Approx(206.9).epsilon(5e-3));
    CHECK(law_root_based(make(0.5, 1e-4, 1.0, 60)).tau == doctest::Approx(46.1).epsilon(5e-3));
    CHECK(law_root_based(make(0.5, 1e-4, 1.0, 10000)).tau == doctest::Approx(0.84).epsilon(5e-3));
    const AsymptoticLaw law = law_root_based(make(0.5, 1e-4, 1.0, 3));
    CHECK(law.power == 3.0);
    CHECK(law.variant == LawVariant::n_scaled);
    CHECK(law_root_based(make(0.5, 1.0)).variant == LawVariant::root_based);
}

TEST_CASE("root-based law needs alpha = 1/2") {
    CHECK_THROWS_AS(law_root_based(make(0.4, 1.0)), UsageError);
}

TEST_CASE("the two decay-factor routes coincide at alpha = 1/2") {
    for (double e = -4.0; e <= 2.0; e += 0.25) {
        const double bigA = std::pow(10.0, e);
        const ReservoirParams p = make(0.5, bigA);
        const double zr = law_root_based(p).zeta;
        CHECK(law_constant_based(p).zeta == doctest::Approx(zr).epsilon(1e-6));
        CHECK(zr == doctest::Approx(1.0 / (4 * pi * pi * pi * bigA * bigA)).epsilon(1e-6));
    }
}

TEST_CASE("constant-based law") {
    const AsymptoticLaw law = law_constant_based(make(0.5, 1e-4));
    CHECK(law.tau == doctest::Approx(6749.37).epsilon(1e-5));
    CHECK(law.power == 3.0);
    CHECK(law_constant_based(make(0.25, 1.0)).power == 2.5);
    for (double alpha : {0.25, 0.5, 0.75}) {
        const double z1 = law_constant_based(make(alpha, 0.3)).zeta;
        for (int n : {2, 5, 40}) {
            const AsymptoticLaw ln = law_constant_based(make(alpha, 0.3, 1.0, n));
            CHECK(ln.zeta == doctest::Approx(z1 / (n * n)).epsilon(1e-12));
            CHECK(ln.power == 2.0 * (1.0 + alpha));
            CHECK(ln.variant == LawVariant::n_scaled);
        }
    }
}

TEST_CASE("large-N limit of the time scale") {
    for (double alpha : {0.25, 0.5, 0.75}) {
        const AsymptoticLaw lim = law_limit(alpha, 1.0);
        const AsymptoticLaw big = law_constant_based(make(alpha, 1e-4, 1.0, 100000000));
        CHECK(big.tau == doctest::Approx(lim.tau).epsilon(1e-6));
        CHECK(lim.variant == LawVariant::limit);
    }
    CHECK(law_limit(0.5, 1.0).tau == doctest::Approx(18.0).epsilon(1e-12));
    CHECK(law_root_based(make(0.5, 1e8)).trapped_population == doctest::Approx(law_limit(0.5, 1.0).trapped_population).epsilon(1e-2));
}

TEST_CASE("critical atom number") {
    const auto start = std::chrono::steady_clock::now();
    CHECK(critical_n(make(0.5, 1e-4)) == 3591);
    CHECK(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() < 1e-3);
    CHECK(critical_n(make(0.5, 2e-4)) == 1795);
    CHECK(critical_n(make(0.5, 10.0)) == 0);
    long previous = critical_n(make(0.5, 1e-6));
    for (double e = -6.0; e <= 1.0; e += 0.1) {
        const long n = critical_n(make(0.5, std::pow(10.0, e)));
        CHECK(n <= previous);
        previous = n;
    }
}

TEST_CASE("decay factor at the critical number is of order one") {
    for (double alpha : {0.25, 0.5, 0.75}) {
        const ReservoirParams p = make(alpha, 1e-4);
        const long n = critical_n(p);
        const double z = decay_factor_critical(make(alpha, 1e-4, 1.0, int(n)));
        CHECK(z >= 0.5);
        CHECK(z <= 2.0);
    }
}

TEST_CASE("asymptotic population") {
    AsymptoticLaw law;
    law.zeta = 2.0;
    law.power = 3.0;
    law.tau = 1.0;
    CHECK(asymptotic_population(law, 2.0) == doctest::Approx(0.25));
    CHECK(asymptotic_population(law, 8.0) / asymptotic_population(law, 4.0) == doctest::Approx(0.125));
    CHECK_THROWS_AS(asymptotic_population(law, 0.0), DomainError);
    CHECK_FALSE(asymptote_reliable(law, 9.0));
    CHECK(asymptote_reliable(law, 10.0));
}

TEST_CASE("bound state") {
    const ReservoirParams p = make(0.5, 1.0);
    const BoundState b = bound_state(p);
    CHECK(b.y == doctest::Approx(1.19016514).epsilon(1e-8));
    const QuarticSolution s = quartic_roots(p);
    // the amplitude settles onto the bound-state oscillation
    for (double t : {2e3, 1e5}) {
        const cplx c = amplitude_half(s, p.a, t);
        CHECK(std::abs(c - b.residue * std::exp(cplx(0, b.y * t))) < 2.0 * std::sqrt(law_root_based(p).zeta * std::pow(t, -3.0)));
    }
    // weak coupling traps almost everything, strong coupling tends to a quarter
    CHECK(std::norm(bound_state(make(0.5, 1e-6)).residue) > 0.99);
    // the approach is slow: the relative correction scales like f0^{(α-1)/2}
    CHECK(std::norm(bound_state(make(0.75, 1e8)).residue) == doctest::Approx(0.25).epsilon(0.05));
    CHECK(std::norm(bound_state(make(0.5, 1e12)).residue) == doctest::Approx(0.25).epsilon(1e-3));
}

TEST_CASE("free part of the closed form decays as zeta t^-3") {
    const ReservoirParams p = make(0.5, 1.0);
    const QuarticSolution s = quartic_roots(p);
    const AsymptoticLaw law = law_root_based(p);
    const BoundState b = bound_state(p);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const int n = 40;
    for (int i = 0; i < n; ++i) {
        const double t = law.tau * std::pow(10.0, 2.0 + 2.0 * i / (n - 1));
        const double y = std::log(std::norm(amplitude_half(s, p.a, t) - b.residue * std::exp(cplx(0, b.y * t))));
        const double x = std::log(t);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double intercept = std::exp((sy - slope * sx) / n);
    CHECK(slope == doctest::Approx(-3.0).epsilon(0.05 / 3));
    CHECK(intercept == doctest::Approx(law.zeta).epsilon(0.05));
}

TEST_CASE("general-alpha asymptote agrees with the Volterra oracle at 10 tau") {
    const ReservoirParams p = make(0.75, 1.0);
    const AsymptoticLaw law = law_constant_based(p);
    VolterraConfig cfg;
    cfg.dt = 0.02;
    cfg.t_max = 10.0 * law.tau;
    const DecayCurve vol = volterra_solve(p, cfg);
    const Sample& last = vol.samples.back();
    const double pa = std::norm(asymptotic_amplitude(p, last.t));
    CHECK(std::abs(pa - last.p) / last.p < 0.1);
}

TEST_CASE("hybrid evaluator") {
    const DecayCurve half = hybrid_population(make(0.5, 1.0), log_grid(1e4, 50));
    for (const Sample& s : half.samples) CHECK(s.method == Method::closed_half);

    const DecayCurve zero = hybrid_population(make(0.75, 1.0), {0.0});
    REQUIRE(zero.samples.size() == 1);
    CHECK(zero.samples[0].p == 1.0);

    const ReservoirParams p = make(0.75, critical_amplitude(0.75, 1.0));
    const double tau = law_constant_based(p).tau;
    // double-precision series stops well before 10·tau here, so a dense grid hits the gap
    CHECK_THROWS_AS(hybrid_population(p, linear_grid(100.0 * tau, 200)), GapError);

    const DecayCurve sparse = hybrid_population(p, {0.0, 1.0, 5.0, 20.0 * tau, 100.0 * tau});
    REQUIRE(sparse.samples.size() == 5);
    CHECK(sparse.samples[2].method == Method::series);
    CHECK(sparse.samples[3].method == Method::asymptotic);
    CHECK(sparse.samples[4].method == Method::asymptotic);
}
