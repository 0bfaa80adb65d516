#include "exitbound/constants.hpp"
#include "exitbound/errors.hpp"

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace exitbound;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

// Direct transcriptions used as oracles.
double oracle_multidim(double alpha, int d, double C_alpha) {
    const double general = std::pow(d, 1.0 + std::max(alpha - 1.0, 0.0)) * C_alpha;
    if (alpha < 1.0) return std::min(general, std::pow(d, alpha / 2.0) * std::pow(alpha, -alpha) / (1.0 - alpha));
    return general;
}

double oracle_sphere(double alpha, int d, double R, double r) {
    const double c = (2.0 - alpha) / (4.0 - alpha);
    const double C = oracle_multidim(alpha, d, (4.0 - alpha) / (2.0 - alpha));
    return C * std::exp(alpha) * (4.0 / ((1.0 - alpha) * c) + std::pow((R - r) / r * d, alpha / 2.0)) + 1.0;
}

} // namespace

TEST_CASE("bdg_constants examples") {
    auto canon = bdg_constants(0.5, Policy::Canonical);
    CHECK(canon.c_lower == Approx(3.0 / 7.0).epsilon(1e-14));
    CHECK(canon.C_upper == Approx(7.0 / 3.0).epsilon(1e-14));
    CHECK(canon.c_lower == Approx(0.42857).epsilon(1e-5));

    auto best = bdg_constants(0.5, Policy::Best);
    CHECK(best.c_lower == Approx(1.06066).epsilon(1e-5));
    CHECK(best.C_upper == Approx(1.88562).epsilon(1e-5));

    auto best3 = bdg_constants(3.0, Policy::Best);
    CHECK(best3.c_lower == Approx(1.0 / (6.0 * std::sqrt(2.0))).epsilon(1e-13));
    CHECK(best3.C_upper == Approx(6.0 * std::sqrt(2.0)).epsilon(1e-13));
    CHECK(best3.variants_used == std::vector<std::string>{"alpha_gt_1_lower", "alpha_gt_1_upper"});

    CHECK_THROWS_AS(bdg_constants(0.0, Policy::Canonical), DomainError);
    CHECK_THROWS_AS(bdg_constants(-1.0, Policy::Best), DomainError);
}

TEST_CASE("best policy dominates canonical on an alpha grid") {
    for (int i = 1; i <= 50; ++i) {
        const double alpha = 4.0 * i / 50.0;
        CAPTURE(alpha);
        const auto c = bdg_constants(alpha, Policy::Canonical);
        const auto b = bdg_constants(alpha, Policy::Best);
        CHECK(b.c_lower >= c.c_lower);
        CHECK(b.C_upper <= c.C_upper);
        CHECK(b.c_lower > 0.0);
        CHECK(b.c_lower <= b.C_upper);
    }
}

TEST_CASE("multidim_bdg_constant examples") {
    CHECK(multidim_bdg_constant(0.5, 2, Policy::Canonical) == Approx(3.36359).epsilon(1e-5));
    CHECK(multidim_bdg_constant(0.5, 2, Policy::Canonical)
          == Approx(std::min(std::pow(2.0, 0.25) * 2.0 * std::sqrt(2.0), 2.0 * 7.0 / 3.0)).epsilon(1e-13));
    CHECK(multidim_bdg_constant(2.0, 3, Policy::Best) == Approx(9.0 * 4.0 * std::sqrt(2.0)).epsilon(1e-13));
    CHECK(multidim_bdg_constant(0.5, 1, Policy::Canonical) == Approx(7.0 / 3.0).epsilon(1e-13));
}

TEST_CASE("uniform_moment_constant examples") {
    CHECK(uniform_moment_constant(1.0, 4) == Approx(0.25).epsilon(1e-14));
    CHECK(uniform_moment_constant(0.5, 2) == Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
    CHECK(uniform_moment_constant(2.0, 2) == Approx(4.0 * 4.0 * std::sqrt(2.0) / 2.0).epsilon(1e-13));
    CHECK(uniform_moment_constant(2.0, 2) == Approx(11.3137).epsilon(1e-5));
    CHECK_THROWS_AS(uniform_moment_constant(0.0, 2), DomainError);
}

TEST_CASE("doob_factor") {
    CHECK(doob_factor(0.5) == Approx(2.0).epsilon(1e-14));
    CHECK(doob_factor(2.0) == Approx(4.0).epsilon(1e-14));
    CHECK_THROWS_AS(doob_factor(1.0), DomainError);
}

TEST_CASE("source_constant examples") {
    // d = 2: diam^{2(g-q)/(gq)} (4 pi)^{-1/q} Gamma(g/(g-q)+1)^{(g-q)/(gq)}
    const double d2 = std::pow(boost::math::tgamma(3.0), 0.25) / std::sqrt(4.0 * kPi);
    CHECK(source_constant(2, 1.0, 4.0, 2.0) == Approx(d2).epsilon(1e-12));
    CHECK(source_constant(2, 1.0, 4.0, 2.0) == Approx(0.33546).epsilon(1e-4));
    CHECK(source_constant(2, 2.0, 4.0, 2.0) == Approx(d2 * std::sqrt(2.0)).epsilon(1e-12));
    CHECK(source_constant(2, 2.0, 4.0, 2.0) == Approx(0.47441).epsilon(1e-4));
    CHECK(source_constant(3, 1.0, 3.0, 1.5) == Approx(std::cbrt(1.0 / (4.0 * kPi))).epsilon(1e-12));
    CHECK(source_constant(3, 1.0, 3.0, 1.5) == Approx(0.43013).epsilon(1e-4));
    CHECK_THROWS_AS(source_constant(3, 1.0, 3.0, 2.0), VacuousBoundError);
    CHECK_THROWS_AS(source_constant(3, 1.0, 3.0, 2.0), std::domain_error);
}

TEST_CASE("source_constant diameter scaling") {
    for (int d : {3, 4, 5})
        for (double gamma : {4.0, 7.5, 12.0})
            for (double q : {1.25, 1.5}) {
                if (!(2.0 * gamma - q * d > 0.0)) continue;
                const double p = q / (q - 1.0);
                const double ratio = source_constant(d, 2.0, gamma, q) / source_constant(d, 1.0, gamma, q);
                CHECK(ratio == Approx(std::pow(2.0, (2.0 * gamma - q * d) / (p * q))).epsilon(1e-12));
            }
    // in the plane the diameter enters with exponent 2(g-q)/(gq)
    for (double gamma : {3.0, 5.0}) {
        const double q = 2.0;
        const double ratio = source_constant(2, 2.0, gamma, q) / source_constant(2, 1.0, gamma, q);
        CHECK(ratio == Approx(std::pow(2.0, 2.0 * (gamma - q) / (gamma * q))).epsilon(1e-12));
    }
}

TEST_CASE("sphere_constant") {
    CHECK(sphere_constant(0.5, 2, 2.0, 1.0, Policy::Canonical) == Approx(oracle_sphere(0.5, 2, 2.0, 1.0)).epsilon(1e-12));
    // 111.13 as printed, 111.113 to more digits
    CHECK(sphere_constant(0.5, 2, 2.0, 1.0, Policy::Canonical) == Approx(111.13).epsilon(2e-4));
    CHECK(sphere_constant(0.5, 2, 1.0001, 1.0, Policy::Canonical)
          == Approx(oracle_sphere(0.5, 2, 1.0001, 1.0)).epsilon(1e-12));
    // small-alpha continuity of the fixed branch
    const double a = 1e-7;
    CHECK(sphere_constant(a, 2, 2.0, 1.0, Policy::Canonical) == Approx(oracle_sphere(a, 2, 2.0, 1.0)).epsilon(1e-9));
    CHECK(sphere_constant(0.5, 2, 2.0, 1.0, Policy::Best) <= sphere_constant(0.5, 2, 2.0, 1.0, Policy::Canonical));
    CHECK_THROWS_AS(sphere_constant(0.5, 2, 1.0, 1.0, Policy::Canonical), GeometryError);
    CHECK_THROWS_AS(sphere_constant(1.0, 2, 2.0, 1.0, Policy::Canonical), DomainError);
}

TEST_CASE("tilde_omega") {
    CHECK(tilde_omega(0.0) == Approx(0.5).epsilon(1e-15));
    CHECK(tilde_omega(kPi / 2) == Approx(1.0).epsilon(1e-15));
    CHECK(tilde_omega(kPi / 4) == Approx(2.0 / 3.0).epsilon(1e-14));
    for (int i = 0; i < 100; ++i) {
        const double w = kPi / 2 * i / 100.0;
        CHECK(tilde_omega(w) >= 0.5);
        CHECK(tilde_omega(w) < 1.0);
    }
    CHECK_THROWS_AS(tilde_omega(kPi), DomainError);
}

TEST_CASE("delta_omega_bound") {
    CHECK(delta_omega_bound(kPi / 2, 3) == Approx(1.0 - 1.0 / 6.0).epsilon(1e-13));
    CHECK(delta_omega_bound(kPi / 6, 3) == Approx(1.0 - (1.0 - std::cos(kPi / 6)) / 6.0).epsilon(1e-12));
    CHECK(delta_omega_bound(kPi / 6, 3) == Approx(0.97767).epsilon(1e-5));
    CHECK(delta_omega_bound(kPi / 2, 4) == Approx(1.0 - 1.0 / 9.0).epsilon(1e-13));
    for (int d : {3, 4, 5}) {
        double prev = 1.0;
        for (int i = 1; i <= 100; ++i) {
            const double w = kPi / 2 * i / 100.0;
            const double v = delta_omega_bound(w, d);
            CHECK(v < 1.0);
            CHECK(v <= prev + 1e-15);
            const double oracle = 1.0 - 0.375 * std::pow(2.0 / 3.0, d - 1)
                                            * boost::math::ibeta(0.5 * (d - 1), 0.5, std::pow(std::sin(w), 2));
            CHECK(v == Approx(oracle).epsilon(1e-12));
            prev = v;
        }
    }
    CHECK_THROWS_AS(delta_omega_bound(kPi / 2, 2), DomainError);
}

TEST_CASE("cone constants") {
    // C2(0.5, 1) = doob(0.5) / c_0.5 * 2^0.5 * (1 + 1)
    CHECK(cone_moment_constant(0.5, 1.0, Policy::Canonical) == Approx(2.0 * 7.0 / 3.0 * std::sqrt(2.0) * 2.0).epsilon(1e-13));
    CHECK(cone_C3(0.5, kPi / 2, 1.0, Policy::Canonical)
          == Approx(2.0 * cone_moment_constant(0.5, 1.0, Policy::Canonical)).epsilon(1e-14));
    CHECK(cone_C7(kPi / 2, 1.0, 2.0, Policy::Canonical)
          == Approx(cone_C3(2.0, kPi / 2, 1.0, Policy::Canonical) + cone_C4(2.0, kPi / 2, 1.0, 2.0, Policy::Canonical))
                 .epsilon(1e-14));
    CHECK_THROWS_AS(cone_C5(1.0, kPi / 2, 1.0, Policy::Canonical), DomainError);
    CHECK_THROWS_AS(cone_C3(1.0, kPi / 2, 1.0, Policy::Canonical), DomainError);
    CHECK_THROWS_AS(wedge_C9(1.5, kPi / 2, 1.0, Policy::Canonical), DomainError);
}

TEST_CASE("Green constants") {
    CHECK(green_gamma_d(3) == Approx(boost::math::tgamma(0.5) / std::pow(4.0 * kPi, 1.5)).epsilon(1e-13));
    CHECK(green_gamma_d(3) == Approx(0.039789).epsilon(1e-4));
    CHECK_THROWS_AS(green_gamma_d(2), UnsupportedError);
}

TEST_CASE("reverse doubling constants") {
    const double c = reverse_doubling_c(3, 0.5, Policy::Canonical);
    CHECK(c == Approx(std::pow(3.0, 0.5) * 7.0 / 3.0 * 2.0 * std::pow(3.0, -1.0 + 0.25 * 3.0)).epsilon(1e-13));
    auto rd = reverse_doubling_constants(0.5, 3, 5.0 / 6.0, 1.0, 2.0, Policy::Canonical);
    CHECK_FALSE(rd.log_case);
    CHECK(rd.tilde_C1 == 0.0);
    CHECK(rd.C2 > 0.0);
    auto lc = reverse_doubling_constants(2.0, 3, 0.25, 1.0, 2.0, Policy::Canonical);
    CHECK(lc.log_case);
}

TEST_CASE("derived_constants table") {
    HolderParams p;
    p.alpha = 0.5;
    for (const auto& dom : {DomainSpec::annulus({0, 0}, 1, 2), DomainSpec::ball_minus_cone(2, kPi / 2, 1),
                            DomainSpec::cylinder_minus_wedge(kPi / 2, 1, 1), DomainSpec::ball_minus_cone(3, kPi / 3, 1),
                            DomainSpec::ball({0, 0, 0}, 1)}) {
        CAPTURE(describe(dom));
        for (Policy pol : {Policy::Canonical, Policy::Best}) {
            const auto t = derived_constants(p, dom, pol);
            CHECK(t.has("c_alpha"));
            CHECK(t.has("C1_half_alpha_d"));
            for (const auto& [k, v] : t.entries) {
                CAPTURE(k);
                CHECK(std::isfinite(v));
                CHECK(v > 0.0);
            }
        }
    }
    const auto annulus = derived_constants(p, DomainSpec::annulus({0, 0}, 1, 2), Policy::Canonical);
    CHECK(annulus.at("C_alpha_d_R_r") == Approx(oracle_sphere(0.5, 2, 2, 1)).epsilon(1e-12));
    CHECK_THROWS_AS(annulus.at("C3"), DomainError);
    const auto cone = derived_constants(p, DomainSpec::ball_minus_cone(2, kPi / 2, 1), Policy::Canonical);
    CHECK(cone.at("C7") == Approx(cone_C7(kPi / 2, 1, 2, Policy::Canonical)).epsilon(1e-14));

    HolderParams one;
    one.alpha = 1.0;
    CHECK_NOTHROW(derived_constants(one, DomainSpec::ball({0, 0}, 1), Policy::Canonical));
    CHECK_THROWS_AS(derived_constants(one, DomainSpec::annulus({0, 0}, 1, 2), Policy::Canonical), DomainError);
}

TEST_CASE("derived_constants is invariant under translation") {
    HolderParams p;
    p.alpha = 0.3;
    p.gamma = 6.0;
    for (Policy pol : {Policy::Canonical, Policy::Best}) {
        CHECK(derived_constants(p, DomainSpec::annulus({0, 0, 0}, 1, 2), pol).entries
              == derived_constants(p, DomainSpec::annulus({3.5, -2, 7}, 1, 2), pol).entries);
        CHECK(derived_constants(p, DomainSpec::ball({0, 0}, 1.5), pol).entries
              == derived_constants(p, DomainSpec::ball({-1, 4}, 1.5), pol).entries);
    }
}

TEST_CASE("HolderParams validation") {
    CHECK_NOTHROW(HolderParams::with_q(0.5, 4.0, 2.0).validate());
    HolderParams bad;
    bad.alpha = 0.5;
    bad.p = 3.0;
    bad.q = 3.0;
    CHECK_THROWS_AS(bad.validate(), DomainError);
    HolderParams neg;
    neg.alpha = -0.1;
    CHECK_THROWS_AS(neg.validate(), DomainError);
}
