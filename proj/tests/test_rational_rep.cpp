#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bandedge/closed_half.hpp>
#include <bandedge/rational_rep.hpp>

#include <algorithm>
#include <cmath>

using namespace bandedge;

namespace {

ReservoirParams make(double alpha, double bigA, double a = 1.0) {
    ReservoirParams p;
    p.alpha = alpha;
    p.bigA = bigA;
    p.a = a;
    return p;
}

}  // namespace

TEST_CASE("rational alpha validation") {
    CHECK_NOTHROW((RationalAlpha{1, 2}.validate()));
    CHECK_NOTHROW((RationalAlpha{3, 4}.validate()));
    CHECK_THROWS_AS((RationalAlpha{2, 4}.validate()), UsageError);
    CHECK_THROWS_AS((RationalAlpha{3, 2}.validate()), UsageError);
    CHECK_THROWS_AS((RationalAlpha{0, 5}.validate()), UsageError);
    CHECK((RationalAlpha{2, 3}.both_prime()));
    CHECK_FALSE((RationalAlpha{1, 2}.both_prime()));
    CHECK_FALSE((RationalAlpha{3, 4}.both_prime()));

    const auto r = RationalAlpha::from_double(0.75);
    REQUIRE(r);
    CHECK(r->p == 3);
    CHECK(r->q == 4);
    const auto third = RationalAlpha::from_double(1.0 / 3);
    REQUIRE(third);
    CHECK(third->q == 3);
    CHECK_FALSE(RationalAlpha::from_double(0.7853981633974483));
}

TEST_CASE("polynomial roots utility") {
    const Polynomial p = poly_from_roots({1.0, cplx(0, 2), cplx(-1, -1)});
    std::vector<cplx> r = polynomial_roots(p);
    REQUIRE(r.size() == 3);
    for (const cplx& z : r) CHECK(std::abs(poly_eval(p, z)) < 1e-12);
    CHECK(std::abs(poly_derivative_eval({0.0, 0.0, 1.0}, 3.0) - 6.0) < 1e-15);
}

TEST_CASE("degree-3q representation at alpha = 1/2") {
    const ReservoirParams p = make(0.5, 1.0);
    const RationalRep rep = build_poly_roots(p, {1, 2});
    int degree = 0;
    cplx sum = 0.0;
    std::vector<cplx> zs;
    for (const RationalRoot& r : rep.roots) {
        degree += r.multiplicity;
        for (int m = 0; m < r.multiplicity; ++m) {
            sum += r.zeta;
            zs.push_back(r.zeta);
        }
    }
    CHECK(degree == 6);
    CHECK(std::abs(sum) < 1e-12);
    CHECK(rep.max_residual < 1e-9);
    CHECK(std::abs(rep.residue_sum()) < 1e-8);

    const Polynomial rebuilt = poly_from_roots(zs);
    REQUIRE(rebuilt.size() == rep.q_poly.size());
    double worst = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < rebuilt.size(); ++i) {
        worst = std::max(worst, std::abs(rebuilt[i] - rep.q_poly[i]));
        scale = std::max(scale, std::abs(rep.q_poly[i]));
    }
    CHECK(worst < 1e-8 * scale);

    // the squares of the principal roots reproduce the bound-state pole s = χ²
    const QuarticSolution s = quartic_roots(p);
    for (const cplx& chi : s.roots) {
        const double best = std::abs(*std::min_element(zs.begin(), zs.end(), [&](cplx x, cplx y) {
            return std::abs(x - chi) < std::abs(y - chi);
        }) - chi);
        CHECK(best < 1e-9);
    }
}

TEST_CASE("coefficient pattern of Q for alpha = 3/4") {
    const ReservoirParams p = make(0.75, 0.4, 1.3);
    const RationalRep rep = build_poly_roots(p, {3, 4});
    const DerivedConstants dc = derived_constants(p);
    REQUIRE(rep.q_poly.size() == 13);
    for (int j = 0; j <= 12; ++j) {
        cplx expect = 0.0;
        if (j == 12) expect = 1.0;
        if (j == 4) expect = dc.z1;
        if (j == 3) expect = dc.z_alpha;
        if (j == 0) expect = dc.z0;
        CHECK(std::abs(rep.q_poly[j] - expect) < 1e-15);
    }
    CHECK(std::abs(rep.residue_sum()) < 1e-8);
}

TEST_CASE("alpha = 3/4 at z1 = 0: roots group into a quartic in z^3") {
    const ReservoirParams p = make(0.75, critical_amplitude(0.75, 1.0));
    const RationalRep rep = build_poly_roots(p, {3, 4});
    const DerivedConstants dc = derived_constants(p);
    int degree = 0;
    for (const RationalRoot& r : rep.roots) {
        degree += r.multiplicity;
        const cplx w = r.zeta * r.zeta * r.zeta;
        const cplx value = w * w * w * w + dc.z_alpha * w + dc.z0;
        const double scale = std::norm(std::norm(w)) + std::abs(dc.z_alpha * w) + std::abs(dc.z0);
        CHECK(std::abs(value) < 1e-8 * scale);
    }
    CHECK(degree == 12);
}

TEST_CASE("phi kernel vanishes on the axes") {
    const RationalRep rep = build_poly_roots(make(0.5, 1.0), {1, 2});
    CHECK(std::abs(phi_kernel(rep, 0.0, 2.0)) == 0.0);
    CHECK(std::abs(phi_kernel(rep, 1.5, 0.0)) == 0.0);
    CHECK_THROWS_AS(phi_kernel(rep, -1.0, 1.0), DomainError);
}

TEST_CASE("phi kernel divergence is detected") {
    // the bound-state root lies on the principal sheet, so small ξ leaves its η integral undamped
    const RationalRep rep = build_poly_roots(make(0.5, 1.0), {1, 2});
    CHECK_THROWS_AS(phi_kernel(rep, 1.0, 1e-6), DivergenceError);
}

TEST_CASE("rational amplitude against contour-inversion references") {
    struct Ref {
        double alpha, bigA, a, t;
        RationalAlpha ra;
        cplx c;
    };
    const Ref refs[] = {
        {0.5, 1, 1, 1, {1, 2}, {0.19259606724331565279, 0.42712126744639369731}},
        {0.5, 100, 1, 1, {1, 2}, {0.29487086686551552988, -0.46575465976170280681}},
        {0.25, 1, 1, 1, {1, 4}, {0.16426213154250698174, 0.36165501805937562282}},
        {0.75, 1, 1, 1, {3, 4}, {0.17198221016745874814, 0.50995766918813393513}},
        {0.75, 0.3, 2, 1, {3, 4}, {0.85382706291100211113, 0.16702052894737499601}},
        {1.0 / 3, 1, 1, 1, {1, 3}, {0.1790305097533926893, 0.38168740060591440112}},
    };
    for (const Ref& r : refs) {
        INFO("alpha " << r.alpha << " A " << r.bigA << " a " << r.a);
        const RationalValue v = amplitude_rational(make(r.alpha, r.bigA, r.a), r.ra, r.t);
        CHECK(std::abs(v.value - r.c) < 1e-8);
        CHECK(v.error < 1e-6);
    }
}

TEST_CASE("rational amplitude normalization and long-time limit") {
    const ReservoirParams p = make(0.5, 1.0);
    const RationalRep rep = build_poly_roots(p, {1, 2});
    CHECK(std::abs(amplitude_rational(rep, 0.0).value - 1.0) < 1e-8);
    for (double t : {0.5, 2.0}) CHECK(std::abs(amplitude_rational(rep, t).value - amplitude_half(p, t)) < 1e-8);
    // the cut contribution dies out, leaving the bound-state pole
    const RationalValue late = amplitude_rational(rep, 50.0);
    CHECK(std::abs(late.value - late.pole_part) < 1e-3);
    CHECK(std::abs(late.value - amplitude_half(p, 50.0)) < 1e-8);
}

TEST_CASE("alpha mismatch is a usage error") {
    CHECK_THROWS_AS(build_poly_roots(make(0.5, 1.0), {1, 3}), UsageError);
}
