#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bandedge/closed_half.hpp>
#include <bandedge/oracles.hpp>
#include <bandedge/series.hpp>

#include <cmath>
#include <numbers>

using namespace bandedge;

namespace {

ReservoirParams make(double alpha, double bigA, double a = 1.0) {
    ReservoirParams p;
    p.alpha = alpha;
    p.bigA = bigA;
    p.a = a;
    return p;
}

double max_dev_from_closed(const DecayCurve& c, const ReservoirParams& p) {
    const QuarticSolution s = quartic_roots(p);
    double worst = 0.0;
    for (const Sample& x : c.samples) worst = std::max(worst, std::abs(x.c - amplitude_half(s, p.a, x.t)));
    return worst;
}

}  // namespace

TEST_CASE("volterra: constant kernel gives cos(sqrt(c) t)") {
    VolterraConfig cfg;
    cfg.t_max = std::numbers::pi;
    cfg.dt = std::numbers::pi / 2000;
    const DecayCurve c = volterra_solve(constant_kernel(1.0), cfg);
    CHECK(c.samples.front().c == cplx(1.0));
    CHECK(std::abs(c.samples.back().c + 1.0) < 1e-6);

    cfg.t_max = 2.0;
    cfg.dt = 1e-3;
    const DecayCurve c4 = volterra_solve(constant_kernel(4.0), cfg);
    for (const Sample& s : c4.samples) CHECK(std::abs(s.c - std::cos(2.0 * s.t)) < 1e-5);
}

TEST_CASE("volterra: second-order Richardson ratio") {
    const ReservoirParams p = make(0.5, 1.0);
    double devs[3];
    const double steps[] = {2e-2, 1e-2, 5e-3};
    for (int i = 0; i < 3; ++i) {
        VolterraConfig cfg;
        cfg.t_max = 2.0;
        cfg.dt = steps[i];
        devs[i] = max_dev_from_closed(volterra_solve(p, cfg), p);
    }
    for (int i = 0; i < 2; ++i) {
        const double ratio = devs[i] / devs[i + 1];
        CHECK(ratio >= 3.0);
        CHECK(ratio <= 5.0);
    }
}

TEST_CASE("volterra: first-order scheme is also consistent") {
    VolterraConfig cfg;
    cfg.t_max = 1.0;
    cfg.dt = 1e-3;
    cfg.scheme_order = 1;
    const ReservoirParams p = make(0.5, 1.0);
    CHECK(max_dev_from_closed(volterra_solve(p, cfg), p) < 5e-3);
}

TEST_CASE("volterra: agreement with the closed form") {
    const ReservoirParams p = make(0.5, 1.0);
    VolterraConfig cfg;
    cfg.t_max = 2.0;
    cfg.dt = 1e-3;
    const DecayCurve c = volterra_solve(p, cfg);
    CHECK(c.samples.front().p == 1.0);
    CHECK(max_dev_from_closed(c, p) < 1e-6);
    for (const Sample& s : c.samples) CHECK(std::abs(s.c) <= 1.0);
}

TEST_CASE("volterra: configuration checks and step-size note") {
    VolterraConfig bad;
    bad.dt = 0.0;
    CHECK_THROWS_AS(volterra_solve(make(0.5, 1.0), bad), UsageError);
    bad.dt = 2.0;
    bad.t_max = 1.0;
    CHECK_THROWS_AS(volterra_solve(make(0.5, 1.0), bad), UsageError);
    bad = VolterraConfig{};
    bad.scheme_order = 3;
    CHECK_THROWS_AS(volterra_solve(make(0.5, 1.0), bad), UsageError);

    VolterraConfig coarse;
    coarse.t_max = 0.5;
    coarse.dt = 0.05;
    const DecayCurve c = volterra_solve(make(0.5, 100.0), coarse);
    CHECK_FALSE(c.notes.empty());
}

TEST_CASE("modes: single resonant mode gives vacuum Rabi oscillation") {
    ModeGrid g;
    g.frequencies = {0.0};
    g.couplings = {0.7};
    const ModeRun run = mode_evolve(g, 10.0, 1e-3);
    for (const Sample& s : run.curve.samples) CHECK(std::abs(s.c - std::cos(0.7 * s.t)) < 1e-10);
    CHECK(run.max_unitarity_defect < 1e-12);
}

TEST_CASE("modes: grid moments and tail") {
    const ReservoirParams p = make(0.5, 1.0);
    const double f0 = derived_constants(p).f0;
    const ModeGrid g = mode_discretize(p, 1000, 2000.0);
    REQUIRE(g.frequencies.size() == g.couplings.size());
    double sum = 0.0;
    for (double c : g.couplings) sum += c * c;
    CHECK(sum + g.tail_mass == doctest::Approx(f0).epsilon(1e-6));
    for (std::size_t i = 1; i < g.frequencies.size(); ++i) CHECK(g.frequencies[i] > g.frequencies[i - 1]);

    // J ~ ω^{-3/2} leaves 2·ω_cap^{-1/2} of the moment beyond the cap
    const ModeGrid small = mode_discretize(p, 4000, 200.0);
    CHECK(small.tail_mass / f0 == doctest::Approx(2.0 / std::sqrt(200.0) / (std::numbers::pi * std::sqrt(2.0))).epsilon(0.05));
    CHECK_FALSE(small.warning.empty());

    CHECK_THROWS_AS(mode_discretize(p, 5, 200.0), UsageError);
    CHECK_THROWS_AS(mode_discretize(p, 100, 0.5), UsageError);
}

TEST_CASE("modes: resolution precondition") {
    const ModeGrid g = mode_discretize(make(0.5, 1.0), 100, 200.0);
    CHECK_THROWS_AS(mode_evolve(g, 1.0, 0.01), ResolutionError);
}

TEST_CASE("modes: cross-oracle agreement and refinement") {
    const ReservoirParams p = make(0.5, 1.0);
    const double cap = 2000.0;
    const ModeRun coarse = mode_evolve(mode_discretize(p, 1000, cap), 2.0, 0.1 / cap);
    const double dev_coarse = max_dev_from_closed(coarse.curve, p);
    CHECK(dev_coarse < 1e-4);
    CHECK(coarse.max_unitarity_defect < 1e-8);
    const ModeRun fine = mode_evolve(mode_discretize(p, 2000, cap), 2.0, 0.1 / cap);
    CHECK(max_dev_from_closed(fine.curve, p) < dev_coarse);
}

TEST_CASE("modes and volterra agree for general alpha") {
    for (double alpha : {0.25, 0.75}) {
        const ReservoirParams p = make(alpha, 1.0);
        const double cap = 2000.0;
        const ModeGrid g = mode_discretize(p, 1000, cap);
        const ModeRun run = mode_evolve(g, 2.0, 0.1 / cap);
        VolterraConfig cfg;
        cfg.t_max = 2.0;
        cfg.dt = 1e-3;
        const DecayCurve vol = volterra_solve(p, cfg);
        const DecayCurve on_modes = resample(run.curve, linear_grid(2.0, 201));
        const DecayCurve on_vol = resample(vol, linear_grid(2.0, 201));
        double worst = 0.0;
        for (std::size_t i = 0; i < on_modes.samples.size(); ++i)
            worst = std::max(worst, std::abs(on_modes.samples[i].c - on_vol.samples[i].c));
        const double f0 = derived_constants(p).f0;
        INFO("alpha " << alpha << " tail fraction " << g.tail_mass / f0);
        CHECK(worst < std::max(1e-4, 2.0 * g.tail_mass / f0));
    }
}

TEST_CASE("resample interpolates linearly") {
    DecayCurve c;
    c.push(0.0, 1.0, Method::volterra);
    c.push(1.0, cplx(0.0, 1.0), Method::volterra);
    const DecayCurve r = resample(c, {0.0, 0.25, 1.0});
    REQUIRE(r.samples.size() == 3);
    CHECK(std::abs(r.samples[1].c - cplx(0.75, 0.25)) < 1e-15);
    CHECK(r.samples[2].c == cplx(0.0, 1.0));
    CHECK_THROWS_AS(resample(c, {0.0, 2.0}), UsageError);
}
