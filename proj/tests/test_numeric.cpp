#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "zolo/error.hpp"
#include "zolo/numeric.hpp"

#include <algorithm>
#include <random>

using namespace zolo;

namespace {

const cplx I(0.0, 1.0);

// Greedy match of computed to planted roots; returns the worst distance.
double match_roots(std::vector<cplx> got, const std::vector<cplx>& want)
{
    REQUIRE(got.size() == want.size());
    double worst = 0.0;
    for (const cplx w : want) {
        auto it = std::min_element(got.begin(), got.end(),
                                   [&](cplx a, cplx b) { return std::abs(a - w) < std::abs(b - w); });
        worst = std::max(worst, std::abs(*it - w));
        got.erase(it);
    }
    return worst;
}

SpherePoint random_point(std::mt19937_64& rng)
{
    std::normal_distribution<double> g;
    return cplx(g(rng), g(rng));
}

} // namespace

TEST_CASE("Poly basics")
{
    const Poly p({1.0, 2.0, 0.0, 0.0});
    CHECK(p.degree() == 1);
    CHECK(Poly().is_zero());
    CHECK(Poly().degree() == -1);
    CHECK(p(3.0) == cplx(7.0));
    const Poly q({0.0, 1.0});
    CHECK((p * q).degree() == 2);
    CHECK(((p * q) - p * q).is_zero());
    CHECK((p + q)(1.0) == cplx(4.0));
    CHECK(Poly({1.0, 1.0, 1.0}).derivative().coeffs() == std::vector<cplx>{1.0, 2.0});
    const std::vector<cplx> r{1.0, -2.0, I};
    const Poly f = Poly::from_roots(r, 3.0);
    CHECK(f.degree() == 3);
    for (cplx z : r)
        CHECK(std::abs(f(z)) < 1e-14);
    CHECK(f.coeff(3) == cplx(3.0));
    CHECK(f.coeff(9) == cplx(0.0));
}

TEST_CASE("poly_roots recovers planted roots")
{
    std::mt19937_64 rng(2024);
    std::normal_distribution<double> g;
    for (int deg = 1; deg <= 30; ++deg) {
        std::vector<cplx> planted;
        for (int i = 0; i < deg; ++i)
            planted.emplace_back(g(rng), g(rng));
        const Poly p = Poly::from_roots(planted, cplx(g(rng), g(rng)));
        const auto roots = poly_roots(p);
        for (cplx r : roots)
            CHECK(root_residual(p, r) < 1e-13);
        if (deg <= 14)
            CHECK(match_roots(roots, planted) < 1e-9);
    }
}

TEST_CASE("poly_roots: wide dynamic range and zero roots")
{
    const std::vector<cplx> planted{1e-6, 1.0, 1e6, cplx(0, -3e3)};
    const auto roots = poly_roots(Poly::from_roots(planted));
    for (cplx w : planted) {
        double best = 1e300;
        for (cplx r : roots)
            best = std::min(best, std::abs(r - w) / std::abs(w));
        CHECK(best < 1e-10);
    }
    const auto z = poly_roots(Poly({0.0, 0.0, 1.0, 1.0}));
    CHECK(std::count(z.begin(), z.end(), cplx(0.0)) == 2);
}

TEST_CASE("poly_roots: multiple root")
{
    const Poly p = Poly::from_roots(std::vector<cplx>{1.0, 1.0, 1.0});
    const auto roots = poly_roots(p);
    REQUIRE(roots.size() == 3);
    for (cplx r : roots) {
        CHECK(std::abs(r - 1.0) < 1e-4); // cube-root sensitivity
        CHECK(root_residual(p, r) < 1e-14);
    }
}

TEST_CASE("poly_roots errors")
{
    CHECK_THROWS_WITH_AS(poly_roots(Poly()), "poly_roots: zero polynomial", Error);
    CHECK_THROWS_WITH_AS(poly_roots(Poly({2.0})), "poly_roots: polynomial has no roots", Error);
}

TEST_CASE("evaluate_rational on the sphere")
{
    const Poly num({0.0, 0.0, 1.0}), den({1.0});
    CHECK(evaluate_rational(num, den, SpherePoint::infinity()).is_infinite());
    CHECK(evaluate_rational(num, den, 2.0) == SpherePoint(4.0));
    // (x^2 + 1) / (2 x^2 - x) at infinity is 1/2, at 0 infinite
    const Poly n2({1.0, 0.0, 1.0}), d2({0.0, -1.0, 2.0});
    CHECK(chordal_distance(evaluate_rational(n2, d2, SpherePoint::infinity()), 0.5) < 1e-15);
    CHECK(evaluate_rational(n2, d2, 0.0).is_infinite());
    // formal degree: x / 1 at infinity
    CHECK(evaluate_rational(Poly({0.0, 1.0}), Poly({1.0}), SpherePoint::infinity()).is_infinite());
    CHECK(chordal_distance(evaluate_rational(Poly({1.0}), Poly({0.0, 1.0}), SpherePoint::infinity()), 0.0) == 0.0);
}

TEST_CASE("chordal distance")
{
    CHECK(chordal_distance(0.0, SpherePoint::infinity()) == doctest::Approx(2.0));
    CHECK(chordal_distance(1.0, -1.0) == doctest::Approx(2.0));
    CHECK(chordal_distance(1.0, I) == doctest::Approx(std::sqrt(2.0)));
    CHECK(chordal_distance(SpherePoint::infinity(), SpherePoint::infinity()) == 0.0);
    std::mt19937_64 rng(1);
    for (int i = 0; i < 100; ++i) {
        const SpherePoint a = random_point(rng), b = random_point(rng);
        CHECK(chordal_distance(a, b) == doctest::Approx(chordal_distance(a.reciprocal(), b.reciprocal())));
        CHECK(chordal_distance(SpherePoint::from_unit_vector(a.to_unit_vector()), a) < 1e-14);
    }
}

TEST_CASE("Moebius maps")
{
    const MobiusMap f(1.0, 2.0, 3.0, 4.0);
    CHECK(chordal_distance(f(0.0), 0.5) < 1e-15);
    CHECK(chordal_distance(f(SpherePoint::infinity()), 1.0 / 3.0) < 1e-15);
    CHECK(f(-4.0 / 3.0).is_infinite());
    CHECK_THROWS_WITH_AS(MobiusMap(1.0, 2.0, 2.0, 4.0), "singular Moebius map", Error);

    std::mt19937_64 rng(4);
    const MobiusMap g(I, 1.0, 2.0, cplx(0.5, -1.0));
    for (int i = 0; i < 50; ++i) {
        const SpherePoint z = random_point(rng);
        CHECK(chordal_distance((f * g)(z), f(g(z))) < 1e-13);
        CHECK(chordal_distance(f.inverse()(f(z)), z) < 1e-13);
    }
    CHECK((f * f.inverse()).distance_up_to_scale(MobiusMap::identity()) < 1e-15);
    CHECK(MobiusMap(2.0, 4.0, 6.0, 8.0).distance_up_to_scale(f) < 1e-15);
    CHECK(MobiusMap(-2.0 * I, -4.0 * I, -6.0 * I, -8.0 * I).distance_up_to_scale(f) < 1e-15);
    CHECK(g.distance_up_to_scale(f) > 0.1);
}

TEST_CASE("mobius_from_three_points")
{
    const SpherePoint inf = SpherePoint::infinity();
    // Images only; the map itself is determined up to scale.
    const MobiusMap m = mobius_from_three_points(0.0, 1.0, inf, 1.0, I, -1.0);
    CHECK(chordal_distance(m(0.0), 1.0) < 1e-14);
    CHECK(chordal_distance(m(1.0), I) < 1e-14);
    CHECK(chordal_distance(m(inf), -1.0) < 1e-14);

    std::mt19937_64 rng(8);
    for (int i = 0; i < 50; ++i) {
        const MobiusMap h(cplx(1, i), cplx(2, -1), cplx(0.5, 0.5), cplx(-1, 3));
        const SpherePoint z1 = random_point(rng), z2 = random_point(rng), z3 = random_point(rng);
        const MobiusMap r = mobius_from_three_points(z1, z2, z3, h(z1), h(z2), h(z3));
        CHECK(r.distance_up_to_scale(h) < 1e-10);
    }
    CHECK_THROWS_WITH_AS(mobius_from_three_points(1.0, 1.0, 2.0, 0.0, 1.0, inf),
                         "mobius_from_three_points: coincident points", Error);
    CHECK_THROWS_WITH_AS(mobius_from_three_points(1.0, 3.0, 2.0, 0.0, inf, inf),
                         "mobius_from_three_points: coincident points", Error);
}

TEST_CASE("cluster_points")
{
    const std::vector<SpherePoint> pts{0.0, 1e-8, 1.0, SpherePoint::infinity(), 1e9, 1.0 + 1e-9, -1.0};
    const auto c = cluster_points(pts, 1e-6);
    REQUIRE(c.size() == 4);
    CHECK(c[0].members == std::vector<std::size_t>{0, 1});
    CHECK(c[1].members == std::vector<std::size_t>{2, 5});
    CHECK(c[2].members == std::vector<std::size_t>{3, 4});
    CHECK(c[3].members == std::vector<std::size_t>{6});
    CHECK(chordal_distance(c[1].representative, 1.0) < 1e-8);
    CHECK(c[3].representative == SpherePoint(-1.0));
    // Single linkage chains; near 0 the chordal metric is 2 |z - w|.
    const std::vector<SpherePoint> chain{0.0, 0.4e-6, 0.8e-6, 1.2e-6};
    CHECK(cluster_points(chain, 1e-6).size() == 1);
    CHECK(cluster_points(std::vector<SpherePoint>{}, 1e-6).empty());
    CHECK_THROWS_AS(cluster_points(pts, 0.0), Error);
}

TEST_CASE("fit_rational recovers a planted map")
{
    std::mt19937_64 rng(17);
    for (int deg = 1; deg <= 8; ++deg) {
        std::normal_distribution<double> g;
        std::vector<cplx> nc, dc;
        for (int i = 0; i <= deg; ++i) {
            nc.emplace_back(g(rng), g(rng));
            dc.emplace_back(g(rng), g(rng));
        }
        const Poly num(nc), den(dc);
        std::vector<Sample> s;
        for (int i = 0; i < 2 * (4 * deg + 8); ++i) {
            const SpherePoint x = random_point(rng);
            s.push_back({x, evaluate_rational(num, den, x)});
        }
        const FitResult f = fit_rational(s, deg);
        CHECK(f.residual < 1e-10);
        for (int i = 0; i < 50; ++i) {
            const SpherePoint x = random_point(rng);
            CHECK(chordal_distance(evaluate_rational(f.num, f.den, x), evaluate_rational(num, den, x)) < 1e-9);
        }
    }
}

TEST_CASE("fit_rational: infinity in the data and failure on wrong degree")
{
    // y = (x^2 + 1) / x, so x = 0 and x = inf both map to inf.
    std::vector<Sample> s{{0.0, SpherePoint::infinity()}, {SpherePoint::infinity(), SpherePoint::infinity()}};
    std::mt19937_64 rng(3);
    for (int i = 0; i < 20; ++i) {
        const SpherePoint x = random_point(rng);
        s.push_back({x, (x.value() * x.value() + 1.0) / x.value()});
    }
    const FitResult f = fit_rational(s, 2);
    CHECK(f.residual < 1e-12);
    CHECK(chordal_distance(evaluate_rational(f.num, f.den, 2.0), 2.5) < 1e-12);
    CHECK_THROWS_AS(fit_rational(s, 1), Error);
    CHECK_THROWS_AS(fit_rational(std::span<const Sample>(s.data(), 3), 2), Error);
    CHECK_THROWS_AS(fit_rational(s, 0), Error);
}
