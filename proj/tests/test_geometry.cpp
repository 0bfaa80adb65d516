#include "exitbound/errors.hpp"
#include "exitbound/geometry.hpp"
#include "exitbound/philox.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>
#include <numbers>
#include <vector>

using namespace exitbound;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

struct Seg2 {
    double ax, ay, bx, by;
};

// Polyline samples of a planar curve.
using Curve = std::vector<std::pair<double, double>>;

Curve build_arc(double radius, double t0, double t1, int n) {
    Curve c;
    for (int i = 0; i <= n; ++i) {
        const double t = t0 + (t1 - t0) * i / n;
        c.emplace_back(radius * std::cos(t), radius * std::sin(t));
    }
    return c;
}

Curve build_ray(double angle, double length, int n) {
    Curve c;
    for (int i = 0; i <= n; ++i) c.emplace_back(length * i / n * std::cos(angle), length * i / n * std::sin(angle));
    return c;
}

const Curve& cached(char kind, double a, double b, double c, int n) {
    static std::map<std::tuple<char, double, double, double, int>, Curve> cache;
    const auto key = std::make_tuple(kind, a, b, c, n);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, kind == 'a' ? build_arc(a, b, c, n) : build_ray(a, b, n)).first;
    return it->second;
}

const Curve& arc(double radius, double t0, double t1, int n) { return cached('a', radius, t0, t1, n); }
const Curve& ray(double angle, double length, int n) { return cached('r', angle, length, 0.0, n); }

double curve_dist(const Curve& c, double px, double py) {
    double best = INFINITY;
    for (const auto& [x, y] : c) best = std::min(best, std::hypot(px - x, py - y));
    return best;
}

// Brute-force distance to the boundary from dense samples of generating curves.
// Rotationally symmetric pieces are handled in the meridian half-plane (x1, |x_perp|).
double brute_force_dist(const DomainSpec& dom, const Point& x) {
    constexpr int n = 200000;
    switch (dom.kind) {
    case DomainKind::Ball:
    case DomainKind::Annulus: {
        double a = x[0] - dom.center[0];
        double b = 0.0;
        for (std::size_t k = 1; k < x.size(); ++k) b += (x[k] - dom.center[k]) * (x[k] - dom.center[k]);
        b = std::sqrt(b);
        double best = curve_dist(arc(dom.R, 0.0, kPi, n), a, b);
        if (dom.kind == DomainKind::Annulus) best = std::min(best, curve_dist(arc(dom.r, 0.0, kPi, n), a, b));
        return best;
    }
    case DomainKind::BallMinusCone: {
        if (dom.d == 2) {
            const Curve& outer = arc(dom.r, dom.omega, 2.0 * kPi - dom.omega, n);
            return std::min({curve_dist(outer, x[0], x[1]), curve_dist(ray(dom.omega, dom.r, n), x[0], x[1]),
                             curve_dist(ray(-dom.omega, dom.r, n), x[0], x[1])});
        }
        double b = 0.0;
        for (std::size_t k = 1; k < x.size(); ++k) b += x[k] * x[k];
        b = std::sqrt(b);
        return std::min(curve_dist(arc(dom.r, dom.omega, kPi, n), x[0], b),
                        curve_dist(ray(dom.omega, dom.r, n), x[0], b));
    }
    case DomainKind::CylinderMinusWedge: {
        const double h = 0.5 * dom.l;
        const double z_gap = std::max(0.0, std::abs(x[2]) - h);
        const Curve& outer = arc(dom.r, dom.omega, 2.0 * kPi - dom.omega, n);
        const Curve& f1 = ray(dom.omega, dom.r, n);
        const Curve& f2 = ray(-dom.omega, dom.r, n);
        // lateral pieces are (planar curve) x [-h, h]
        const double planar = std::min({curve_dist(outer, x[0], x[1]), curve_dist(f1, x[0], x[1]),
                                        curve_dist(f2, x[0], x[1])});
        const double lateral = std::hypot(planar, z_gap);
        // end caps are the planar cross-section at z = +-h
        const double angle = std::abs(std::atan2(x[1], x[0]));
        const bool over_section = std::hypot(x[0], x[1]) <= dom.r && angle >= dom.omega;
        const double cap_planar = over_section ? 0.0 : planar;
        const double cap = std::hypot(cap_planar, h - std::abs(x[2]));
        return std::min(lateral, cap);
    }
    }
    return NAN;
}

std::vector<Point> random_interior(const DomainSpec& dom, int count, std::uint64_t seed) {
    PathRng rng(seed, 0);
    std::vector<Point> out;
    const double half = 0.5 * diameter(dom) + 0.1;
    while (static_cast<int>(out.size()) < count) {
        Point p(static_cast<std::size_t>(dom.d));
        for (int k = 0; k < dom.d; ++k) p[k] = dom.center[k] + (2.0 * rng.uniform() - 1.0) * half;
        if (contains(dom, p)) out.push_back(p);
    }
    return out;
}

std::vector<DomainSpec> sample_domains() {
    return {DomainSpec::ball({0.3, -0.2}, 1.0),
            DomainSpec::ball({0, 0, 0}, 1.0),
            DomainSpec::annulus({0, 0}, 1, 2),
            DomainSpec::annulus({0.5, 0, -1}, 1, 2),
            DomainSpec::ball_minus_cone(2, kPi / 2, 1),
            DomainSpec::ball_minus_cone(2, kPi / 4, 1),
            DomainSpec::ball_minus_cone(3, kPi / 3, 1),
            DomainSpec::ball_minus_cone(3, kPi / 6, 1.5),
            DomainSpec::cylinder_minus_wedge(kPi / 2, 1, 1),
            DomainSpec::cylinder_minus_wedge(kPi / 4, 1, 1)};
}

} // namespace

TEST_CASE("contains: examples") {
    const auto A = DomainSpec::annulus({0, 0}, 1, 2);
    CHECK(contains(A, {1.5, 0}));
    CHECK_FALSE(contains(A, {1, 0}));
    CHECK_FALSE(contains(DomainSpec::ball_minus_cone(2, kPi / 4, 1), {0.5, 0}));
    CHECK(contains(DomainSpec::ball_minus_cone(2, kPi / 4, 1), {-0.5, 0}));
    CHECK_FALSE(contains(DomainSpec::ball_minus_cone(2, kPi / 4, 1), {0, 0}));
    CHECK_THROWS_AS(contains(A, {1.5, 0, 0}), GeometryError);
}

TEST_CASE("dist_to_boundary: examples") {
    CHECK(dist_to_boundary(DomainSpec::annulus({0, 0}, 1, 2), {1.5, 0}) == Approx(0.5).epsilon(1e-15));
    CHECK(dist_to_boundary(DomainSpec::ball({0, 0, 0}, 1), {0, 0, 0}) == Approx(1.0).epsilon(1e-15));
    CHECK(dist_to_boundary(DomainSpec::ball_minus_cone(2, kPi / 2, 1), {-0.5, 0}) == Approx(0.5).epsilon(1e-15));
    CHECK_THROWS_AS(dist_to_boundary(DomainSpec::annulus({0, 0}, 1, 2), {0.5, 0}), GeometryError);
    CHECK(dist_to_boundary(DomainSpec::annulus({0, 0}, 1, 2), {1.0, 0}) == 0.0);
}

TEST_CASE("dist_to_boundary agrees with a brute-force boundary sampling oracle") {
    std::uint64_t seed = 5;
    for (const auto& dom : sample_domains()) {
        CAPTURE(describe(dom));
        int checked = 0;
        for (const auto& x : random_interior(dom, 100, seed++)) {
            const double exact = dist_to_boundary(dom, x);
            const double oracle = brute_force_dist(dom, x);
            CAPTURE(x[0]);
            CAPTURE(x[1]);
            CHECK(std::abs(exact - oracle) <= 1e-3);
            ++checked;
        }
        CHECK(checked == 100);
    }
}

TEST_CASE("nearest_boundary_point realizes the distance") {
    std::uint64_t seed = 77;
    for (const auto& dom : sample_domains()) {
        CAPTURE(describe(dom));
        for (const auto& x : random_interior(dom, 200, seed++)) {
            const Point y = nearest_boundary_point(dom, x);
            CHECK(distance(x, y) == Approx(dist_to_boundary(dom, x)).epsilon(1e-9).scale(1.0));
            CHECK(std::abs(dist_to_boundary_unchecked(dom, y)) <= boundary_tolerance(dom));
        }
    }
}

TEST_CASE("classify_boundary: examples") {
    const auto cone = DomainSpec::ball_minus_cone(2, kPi / 4, 1);
    const DecompositionSpec faces{Decomposition::ConeFaces, 0.0};
    CHECK(classify_boundary(cone, {-1, 0}, faces).label == BoundaryLabel::Gamma1);
    CHECK(classify_boundary(cone, {0.5 * std::cos(kPi / 4), 0.5 * std::sin(kPi / 4)}, faces).label
          == BoundaryLabel::Gamma0);
    CHECK(classify_boundary(cone, {0, 0}, faces).label == BoundaryLabel::Gamma0);
    const auto wedge = DomainSpec::cylinder_minus_wedge(kPi / 4, 1, 1);
    CHECK(classify_boundary(wedge, {-0.3, 0.1, 0.5}, faces).label == BoundaryLabel::Gamma1);
    CHECK(classify_boundary(wedge, {-1, 0, 0.2}, faces).label == BoundaryLabel::Gamma1);
    CHECK(classify_boundary(wedge, {0.5 * std::cos(kPi / 4), -0.5 * std::sin(kPi / 4), 0.1}, faces).label
          == BoundaryLabel::Gamma0);
    const auto A = DomainSpec::annulus({0, 0}, 1, 2);
    CHECK(classify_boundary(A, {0, 1}, {Decomposition::InnerSphere, 0.0}).label == BoundaryLabel::Gamma0);
    CHECK(classify_boundary(A, {0, -2}, {Decomposition::InnerSphere, 0.0}).label == BoundaryLabel::Gamma1);
    CHECK(classify_boundary(A, {0, -2}, {Decomposition::Whole, 0.0}).label == BoundaryLabel::Gamma0);
    CHECK(classify_boundary(cone, {-1, 0}, {Decomposition::LocalBall, 0.5}).label == BoundaryLabel::Gamma1);
    CHECK(classify_boundary(cone, {0.1, 0.1}, {Decomposition::LocalBall, 0.5}).label == BoundaryLabel::Gamma0);
    CHECK_THROWS_AS(classify_boundary(A, {0, 1.5}, {Decomposition::InnerSphere, 0.0}), GeometryError);
    CHECK_THROWS_AS(classify_boundary(A, {0, 1}, faces), GeometryError);
}

TEST_CASE("classify_boundary labels every sampled boundary point exactly once") {
    std::uint64_t seed = 901;
    for (const auto& dom : sample_domains()) {
        std::vector<DecompositionSpec> decs{{Decomposition::Whole, 0.0}, {Decomposition::LocalBall, 0.4}};
        if (dom.kind == DomainKind::Annulus) decs.push_back({Decomposition::InnerSphere, 0.0});
        if (dom.kind == DomainKind::BallMinusCone || dom.kind == DomainKind::CylinderMinusWedge)
            decs.push_back({Decomposition::ConeFaces, 0.0});
        for (const auto& dec : decs) {
            int g0 = 0;
            int g1 = 0;
            for (const auto& x : random_interior(dom, 300, seed++)) {
                const auto label = classify_boundary(dom, nearest_boundary_point(dom, x), dec).label;
                (label == BoundaryLabel::Gamma0 ? g0 : g1)++;
            }
            CHECK(g0 + g1 == 300);
            if (dec.kind == Decomposition::Whole) CHECK(g1 == 0);
        }
    }
}

TEST_CASE("contains respects the symmetry of each domain") {
    PathRng rng(3, 3);
    const auto cone3 = DomainSpec::ball_minus_cone(3, kPi / 3, 1);
    const auto wedge = DomainSpec::cylinder_minus_wedge(kPi / 4, 1, 1);
    const auto cone2 = DomainSpec::ball_minus_cone(2, kPi / 5, 1);
    for (int i = 0; i < 2000; ++i) {
        Point p{2.4 * rng.uniform() - 1.2, 2.4 * rng.uniform() - 1.2, 1.4 * rng.uniform() - 0.7};
        const double t = 2.0 * kPi * rng.uniform();
        const Point rotated{p[0], std::cos(t) * p[1] - std::sin(t) * p[2], std::sin(t) * p[1] + std::cos(t) * p[2]};
        CHECK(contains(cone3, p) == contains(cone3, rotated));
        CHECK(contains(wedge, p) == contains(wedge, {p[0], p[1], -p[2]}));
        CHECK(contains(wedge, p) == contains(wedge, {p[0], -p[1], p[2]}));
        CHECK(contains(cone2, {p[0], p[1]}) == contains(cone2, {p[0], -p[1]}));
    }
}

TEST_CASE("diameter") {
    CHECK(diameter(DomainSpec::annulus({0, 0}, 1, 2)) == 4.0);
    CHECK(diameter(DomainSpec::ball({0, 0}, 1)) == 2.0);
    CHECK(diameter(DomainSpec::cylinder_minus_wedge(kPi / 4, 1, 1)) == Approx(std::sqrt(5.0)).epsilon(1e-15));
    // dense pair sampling of the cylinder never exceeds the reported value
    const auto w = DomainSpec::cylinder_minus_wedge(kPi / 4, 1, 1);
    const auto pts = random_interior(w, 400, 42);
    double widest = 0.0;
    for (const auto& a : pts)
        for (const auto& b : pts) widest = std::max(widest, distance(a, b));
    CHECK(widest <= diameter(w));
    CHECK(widest >= 0.9 * diameter(w));
}

TEST_CASE("domain validation") {
    CHECK_THROWS_AS(DomainSpec::annulus({0, 0}, 2, 1), GeometryError);
    CHECK_THROWS_AS(DomainSpec::ball({0, 0}, 0.0), GeometryError);
    CHECK_THROWS_AS(DomainSpec::ball_minus_cone(2, 2.0, 1.0), GeometryError);
    CHECK_THROWS_AS(DomainSpec::cylinder_minus_wedge(kPi / 4, 1, 0), GeometryError);
    CHECK_NOTHROW(DomainSpec::ball({0}, 1.0));
    CHECK(parse_domain_kind("annulus") == DomainKind::Annulus);
    CHECK(to_string(DomainKind::CylinderMinusWedge) == "cylinder_minus_wedge");
    CHECK_THROWS_AS(parse_domain_kind("torus"), GeometryError);
}

TEST_CASE("anchor_point") {
    const auto A = DomainSpec::annulus({0, 0}, 1, 2);
    const Point x0 = anchor_point(A, {-1.2, 0});
    CHECK(x0[0] == Approx(-1.0));
    CHECK(x0[1] == Approx(0.0));
    CHECK(anchor_point(DomainSpec::ball_minus_cone(2, kPi / 2, 1), {-0.2, 0.1}) == Point{0, 0});
}
