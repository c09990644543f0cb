#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "zolo/elliptic.hpp"
#include "zolo/error.hpp"
#include "zolo/fraction.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace zolo;
using std::numbers::pi;

namespace {

const cplx I(0.0, 1.0);

// Reference values computed with mpmath at 30 digits (jtheta, ellipk, kleinj,
// ellipfun) and frozen here.
struct Ref {
    cplx tau, t2, t3, t4, K, kleinj;
};

const Ref kRefs[] = {
    {I, 0.913579138156116821407, 1.086434811213308014575, 0.913579138156116821407, 1.854074677301371918434, 1.0},
    {1.5 * I, 0.615777631605248565831, 1.017966595067083128701, 0.982033430982565415618,
     1.627747100625931121380, 7.610924006394010578586},
    {cplx(0.3, 1.1), cplx(0.819266995090862266487, 0.197510038271500587811),
     cplx(1.037103586782127499545, 0.051069749640418107443),
     cplx(0.962893201320360311398, -0.051072083220556307409),
     cplx(1.685426336033571391996, 0.166393262751384843436),
     cplx(0.206393467452970022807, -0.452027669265077411061)},
    {std::polar(1.0, pi / 3), cplx(0.931886650192744228335, 0.386000089104266868605),
     cplx(1.000037557066632685136, 0.131657442069020102717),
     cplx(1.000037557066632685136, -0.131657442069020102717), 0.0, 0.0},
};

double dist(const SpherePoint& a, const SpherePoint& b) { return chordal_distance(a, b); }

// Truncated Eisenstein sum for p over a symmetric box of half-width n.
cplx wp_oracle(cplx u, const Lattice& lat, int n)
{
    cplx s = 1.0 / (u * u);
    for (int a = -n; a <= n; ++a)
        for (int b = -n; b <= n; ++b) {
            if (a == 0 && b == 0)
                continue;
            const cplx w = double(a) * lat.omega1 + double(b) * lat.omega2;
            s += 1.0 / ((u - w) * (u - w)) - 1.0 / (w * w);
        }
    return s;
}

cplx klein_j_of(const Lattice& lat) { return j_invariant(cross_ratio(lattice_branch_set(lat))); }

} // namespace

TEST_CASE("theta constants match frozen references")
{
    for (const auto& r : kRefs) {
        const Tau tau(r.tau);
        const auto th = theta_constants(tau);
        CHECK(std::abs(th.theta2 - r.t2) < 1e-14);
        CHECK(std::abs(th.theta3 - r.t3) < 1e-14);
        CHECK(std::abs(th.theta4 - r.t4) < 1e-14);
        CHECK(std::abs(theta(2, 0.0, tau) - r.t2) < 1e-14);
        CHECK(std::abs(theta(3, 0.0, tau) - r.t3) < 1e-14);
        if (std::abs(r.K) > 0)
            CHECK(std::abs(ellint_K(tau) - r.K) < 1e-14);
    }
}

TEST_CASE("theta1 at a complex argument")
{
    const cplx v = theta(1, cplx(0.3, 0.2), Tau(cplx(0.3, 1.1)));
    CHECK(std::abs(v - cplx(0.209939411292948483112, 0.216497495772913294415)) < 1e-14);
    CHECK_THROWS_WITH_AS(theta(5, 0.0, Tau(I)), "theta index must be 1..4", Error);
}

TEST_CASE("nome, K and sqrt k")
{
    CHECK(std::abs(nome(Tau(I)) - std::exp(-pi)) < 1e-16);
    const Tau t(1.5 * I);
    // m = k^2 from mpmath
    CHECK(std::abs(std::pow(sqrt_k(t), 4) - 0.133894127265743502237) < 1e-14);
    CHECK(std::abs(ellint_Kprime(t) - cplx(0, -1) * 1.5 * I * ellint_K(t)) < 1e-14);
    // K(i) equals K'(i) and pi / (2 agm(1, 1/sqrt2)).
    CHECK(std::abs(ellint_K(Tau(I)) - ellint_Kprime(Tau(I))) < 1e-14);
}

TEST_CASE("Jacobi identity theta3^4 = theta2^4 + theta4^4")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> re(-0.5, 0.5), im(0.3, 3.0);
    for (int i = 0; i < 200; ++i) {
        const auto th = theta_constants(Tau(cplx(re(rng), im(rng))));
        const cplx lhs = std::pow(th.theta3, 4);
        const cplx rhs = std::pow(th.theta2, 4) + std::pow(th.theta4, 4);
        CHECK(std::abs(lhs - rhs) < 1e-12 * std::abs(lhs));
    }
}

TEST_CASE("sn and cd frozen values")
{
    const Tau t(1.5 * I);
    CHECK(std::abs(jacobi_sn(0.37, t).value() - 0.360590665465979399259) < 1e-14);
    CHECK(std::abs(jacobi_cd(0.37, t).value() - 0.940950952601078268097) < 1e-14);
    CHECK(std::abs(jacobi_sn(cplx(0.4, 0.7), t).value()
                   - cplx(0.502731649235330044254, 0.693479777217624161691))
          < 1e-14);
    CHECK(std::abs(jacobi_cd(cplx(0.4, 0.7), t).value()
                   - cplx(1.141863394074750370096, -0.246966428984502007942))
          < 1e-14);
}

TEST_CASE("sn and cd: parity, periodicity, poles")
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> un(-1.0, 1.0);
    for (cplx tv : {cplx(0, 0.9), cplx(0, 1.7), cplx(0.2, 1.2)}) {
        const Tau t(tv);
        const cplx K = ellint_K(t), Kp = ellint_Kprime(t);
        for (int i = 0; i < 50; ++i) {
            const cplx z = un(rng) * K + un(rng) * I * Kp;
            const SpherePoint s = jacobi_sn(z, t), c = jacobi_cd(z, t);
            CHECK(dist(jacobi_sn(-z, t), SpherePoint(-s.value())) < 1e-10);
            CHECK(dist(jacobi_cd(-z, t), c) < 1e-10);
            CHECK(dist(jacobi_sn(z + 4.0 * K, t), s) < 1e-10);
            CHECK(dist(jacobi_sn(z + 2.0 * I * Kp, t), s) < 1e-10);
            CHECK(dist(jacobi_cd(z + 4.0 * K, t), c) < 1e-10);
            CHECK(dist(jacobi_cd(z + 2.0 * I * Kp, t), c) < 1e-10);
            // sn(z + K) = cd(z)
            CHECK(dist(jacobi_sn(z + K, t), c) < 1e-10);
        }
        CHECK(dist(jacobi_sn(K, t), 1.0) < 1e-13);
        CHECK(dist(jacobi_sn(I * Kp, t), SpherePoint::infinity()) < 1e-12);
        CHECK(dist(jacobi_sn(0.0, t), 0.0) < 1e-15);
        CHECK(dist(jacobi_sn(K + I * Kp, t), SpherePoint(1.0 / sqrt_k(t) / sqrt_k(t))) < 1e-12);
    }
}

TEST_CASE("p against a truncated lattice sum")
{
    const Lattice lats[] = {{1.0, I}, {1.0, cplx(0.3, 1.1)}, {cplx(0.7, 0.2), cplx(-0.4, 1.3)}};
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> un(0.05, 0.95);
    for (const auto& lat : lats)
        for (int i = 0; i < 3; ++i) {
            const cplx u = un(rng) * lat.omega1 + un(rng) * lat.omega2;
            const cplx ref = wp_oracle(u, lat, 600);
            const SpherePoint w = wp(u, lat);
            REQUIRE(w.is_finite());
            CHECK(std::abs(w.value() - ref) < 1e-5 * std::max(1.0, std::abs(ref)));
        }
}

TEST_CASE("p: parity, periodicity, scaling, basis change")
{
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> un(0.05, 0.95);
    const Lattice lat(cplx(0.9, -0.1), cplx(0.35, 1.2));
    const cplx c(1.7, -0.6);
    const Lattice changed(lat.omega1 + 2.0 * lat.omega2, lat.omega2 - lat.omega1 - 2.0 * lat.omega2);
    REQUIRE(same_lattice(lat, changed));
    for (int i = 0; i < 50; ++i) {
        const cplx u = un(rng) * lat.omega1 + un(rng) * lat.omega2;
        const cplx w = wp(u, lat).value();
        CHECK(std::abs(wp(-u, lat).value() - w) < 1e-10 * std::abs(w));
        CHECK(std::abs(wp(u + lat.omega1, lat).value() - w) < 1e-10 * std::abs(w));
        CHECK(std::abs(wp(u - 3.0 * lat.omega2, lat).value() - w) < 1e-10 * std::abs(w));
        CHECK(std::abs(wp(c * u, lat.scaled(c)).value() - w / (c * c)) < 1e-10 * std::abs(w / (c * c)));
        CHECK(std::abs(wp(u, changed).value() - w) < 1e-10 * std::abs(w));
    }
    CHECK(wp(0.0, lat).is_infinite());
    CHECK(dist(wp(lat.omega1 + lat.omega2, lat), SpherePoint::infinity()) < 1e-12);
}

TEST_CASE("half-period values")
{
    for (const Lattice& lat : {Lattice(1.0, I), Lattice(1.0, cplx(0.3, 1.1)), Lattice(2.0, cplx(0.1, 0.4))}) {
        const auto e = half_period_values(lat);
        const double m = std::max({std::abs(e[0]), std::abs(e[1]), std::abs(e[2])});
        CHECK(std::abs(e[0] + e[1] + e[2]) < 1e-12 * m);
        CHECK(std::abs(wp(lat.omega1 / 2.0, lat).value() - e[0]) < 1e-12 * m);
        CHECK(std::abs(wp(lat.omega2 / 2.0, lat).value() - e[1]) < 1e-12 * m);
    }
    // Square lattice: e2 = -e1, e3 = 0.
    const auto sq = half_period_values(Lattice(1.0, I));
    CHECK(std::abs(sq[0] + sq[1]) < 1e-12);
    CHECK(std::abs(sq[2]) < 1e-12);
}

TEST_CASE("lattice j matches Klein's j")
{
    for (const auto& r : kRefs)
        CHECK(std::abs(klein_j_of(Lattice(1.0, r.tau)) - r.kleinj) < 1e-12);
    // j only depends on the lattice up to homothety and basis change.
    const Lattice lat(1.0, cplx(0.3, 1.1));
    CHECK(std::abs(klein_j_of(lat.scaled(cplx(2.0, 3.0))) - kRefs[2].kleinj) < 1e-12);
    CHECK(std::abs(klein_j_of(Lattice(lat.omega2, -lat.omega1)) - kRefs[2].kleinj) < 1e-12);
}

TEST_CASE("LatticeCoordinate is a Moebius image of p")
{
    const Lattice lat(1.0, cplx(0.21, 2.7));
    const LatticeCoordinate x(lat);
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> un(0.05, 0.95);
    for (int i = 0; i < 30; ++i) {
        const cplx u = un(rng) + un(rng) * lat.omega2;
        const SpherePoint w = wp(u, lat);
        CHECK(dist(x.from_wp(w), x(u)) < 1e-12);
        CHECK(std::abs(x.to_wp(x(u)).value() - w.value()) < 1e-10 * std::abs(w.value()));
        CHECK(dist(x(-u), x(u)) < 1e-12);
    }
    const auto b = x.branch_points();
    CHECK(b[3].is_infinite());
    const auto e = x.half_period_values();
    for (int k = 0; k < 3; ++k)
        CHECK(dist(x.from_wp(e[k]), b[k]) < 1e-12);
    CHECK(x(0.0).is_infinite());
}

TEST_CASE("gauss_reduce")
{
    const Lattice lat(1.0, cplx(3.4, 0.05));
    const ReducedLattice r = gauss_reduce(lat);
    const cplx t = r.basis.tau();
    CHECK(std::abs(t) >= 1.0 - 1e-12);
    CHECK(std::abs(t.real()) <= 0.5 + 1e-12);
    CHECK(same_lattice(lat, r.basis));
    CHECK(std::abs(r.change.det()) == 1);
}

TEST_CASE("error paths")
{
    CHECK_THROWS_WITH_AS(Tau(cplx(0.3, 0.0)), "tau must lie in the upper half-plane", Error);
    CHECK_THROWS_WITH_AS(Tau(cplx(0.3, -1.0)), "tau must lie in the upper half-plane", Error);
    CHECK_THROWS_WITH_AS(theta_constants(Tau(cplx(0.0, 1e-4))), "nome too close to unit circle", Error);
    CHECK_THROWS_WITH_AS(Lattice(1.0, 2.0), "degenerate lattice basis", Error);
    CHECK_THROWS_WITH_AS(Lattice(0.0, I), "degenerate lattice basis", Error);
    // Orientation is normalized.
    CHECK(Lattice(1.0, -I).tau().imag() > 0);
}
