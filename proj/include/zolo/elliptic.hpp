#pragma once

// Theta constants, Jacobi elliptic functions and the Weierstrass p-function.
//
// Naming: tau is the period ratio (what the classical literature calls the
// nome parameter's exponent, q = exp(i pi tau)). Complete integrals are
// written K(tau), K'(tau) as functions of tau, so "modulus tau" below means
// the period ratio, not the Jacobi modulus k. The modulus itself appears
// only through sqrt_k(tau) = theta2 / theta3.
//
// All series are truncated at the first term below 1e-18 relative to the
// running sum, with a hard cap of 64 terms.

#include "zolo/lattice.hpp"
#include "zolo/sphere.hpp"

#include <array>
#include <utility>

namespace zolo {

// A point of the upper half-plane.
class Tau {
public:
    // Throws zolo::Error unless Im(value) > 0.
    explicit Tau(cplx value);
    cplx value() const { return v_; }

private:
    cplx v_;
};

// Below this imaginary part the q-series are refused.
inline constexpr double kMinImTau = 1e-3;

struct ThetaConstants {
    cplx theta2, theta3, theta4;
};

cplx nome(const Tau& tau);
ThetaConstants theta_constants(const Tau& tau);

// Jacobi theta functions theta_k(v | tau) with the convention
// theta3(v) = 1 + 2 sum q^{n^2} cos(2 n v). `which` is 1..4.
cplx theta(int which, cplx v, const Tau& tau);

cplx ellint_K(const Tau& tau);      // (pi/2) theta3^2
cplx ellint_Kprime(const Tau& tau); // -i tau K(tau)
cplx sqrt_k(const Tau& tau);        // theta2 / theta3

SpherePoint jacobi_sn(cplx z, const Tau& tau);
SpherePoint jacobi_cd(cplx z, const Tau& tau);

// Rank-2 lattice with Im(omega2 / omega1) > 0.
struct Lattice {
    cplx omega1, omega2;

    // Normalizes orientation by negating omega2 if needed; throws if the
    // basis is degenerate.
    Lattice(cplx w1, cplx w2);

    cplx tau() const { return omega2 / omega1; }

    // M = Z (p w1 + l w2) + Z (q w2).
    Lattice sublattice(const HnfSublattice& s) const;
    Lattice scaled(cplx c) const { return Lattice(c * omega1, c * omega2); }
};

// Does `z` lie in the lattice, up to `tol` in the integer coordinates?
bool lattice_member(const Lattice& lat, cplx z, double tol = 1e-9);
// Do the two bases generate the same lattice?
bool same_lattice(const Lattice& a, const Lattice& b, double tol = 1e-9);

struct ReducedLattice {
    Lattice basis;
    // Rows give the reduced basis in terms of the input basis:
    // (w1', w2')^T = change * (w1, w2)^T.
    IntMatrix2 change;
};

// Gauss reduction: |tau| >= 1, |Re tau| <= 1/2, Im tau > 0.
ReducedLattice gauss_reduce(const Lattice& lat);

SpherePoint wp(cplx u, const Lattice& lat);

// p at omega1/2, omega2/2, (omega1 + omega2)/2 of the given basis.
std::array<cplx, 3> half_period_values(const Lattice& lat);

// A Moebius-normalized p-function for one lattice,
//
//     x(u) = (p(u) - e_k) / s,
//
// with e_k the branch value nearest to another one and s the geometric mean
// of the two remaining distances |e_i - e_k|. The difference p(u) - e_k is
// evaluated from a theta quotient, so x keeps full relative precision even
// when two branch values nearly coincide (elongated lattices), which raw
// p-values cannot. Internally everything is carried in long double.
class LatticeCoordinate {
public:
    explicit LatticeCoordinate(const Lattice& lat);
    // Chart of the sublattice m of lat; its basis is formed in extended
    // precision so it is an exact sublattice of lat to that precision.
    LatticeCoordinate(const Lattice& lat, const HnfSublattice& m);

    SpherePoint operator()(cplx u) const { return ext(u).narrow(); }
    ExtSpherePoint ext(cplx u) const;

    // Raw p(u) through the same theta quotients.
    SpherePoint wp(cplx u) const;

    // p at omega1/2, omega2/2, (omega1 + omega2)/2 of the input basis.
    std::array<cplx, 3> half_period_values() const;

    // Images of the three half-period values (order of half_period_values)
    // and of infinity: the branch set of x.
    std::array<SpherePoint, 4> branch_points() const;

    // Raw p-value -> coordinate, and back.
    SpherePoint from_wp(const SpherePoint& w) const;
    SpherePoint to_wp(const SpherePoint& x) const;

    const Lattice& reduced() const { return reduced_; }

private:
    void init(lcplx b1, lcplx b2, const IntMatrix2& change);
    ExtSpherePoint difference(lcplx u, int idx) const;
    lcplx branch_difference(int idx) const;

    Lattice reduced_{1.0, cplx(0.0, 1.0)};
    lcplx w1_, w2_, tau_;
    lcplx scale_; // (pi / w1)^2
    lcplx t2_, t3_, t4_;
    std::array<lcplx, 3> e_; // p at w1/2, w2/2, (w1+w2)/2 of the reduced basis
    int k_ = 0;
    lcplx sigma_;
    std::array<int, 3> input_class_{};
};

// Extended-precision variants used for sampling. tau is passed as a raw
// value so that multiples like n tau are formed without double rounding;
// it is validated like Tau.
lcplx ellint_K_ext(lcplx tau);
lcplx sqrt_k_ext(lcplx tau);
ExtSpherePoint jacobi_sn_ext(lcplx z, lcplx tau);
ExtSpherePoint jacobi_cd_ext(lcplx z, lcplx tau);

} // namespace zolo
