#pragma once

// Twisted Zolotarev fractions: construction from lattice pairs, critical
// data, j-invariants, and the classical Zolotarev / Chebyshev-Blaschke
// families with their Moebius renormalizations.

#include "zolo/elliptic.hpp"
#include "zolo/lattice.hpp"
#include "zolo/numeric.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <vector>

namespace zolo {

inline constexpr std::uint64_t kDefaultSeed = 0x5eed2024;

// Cluster radius for critical values and minimal separation of distinct
// critical points, both chordal.
inline constexpr double kValueClusterTol = 1e-6;
inline constexpr double kSimpleSeparation = 1e-4;

class RationalMap {
public:
    // Normalizes so the largest coefficient of num and den is exactly 1.
    // Throws if both are zero.
    RationalMap(Poly num, Poly den);

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    int degree() const { return std::max(num_.degree(), den_.degree()); }

    SpherePoint operator()(const SpherePoint& x) const { return evaluate_rational(num_, den_, x); }

    // Max chordal misfit on the fitting samples; 0 for maps given exactly.
    double fit_residual = 0.0;

private:
    Poly num_, den_;
};

// x -> m2(R(m1(x))) as a rational map of the same degree.
RationalMap compose(const MobiusMap& m2, const RationalMap& r, const MobiusMap& m1);

// Max chordal distance between two maps over `points` random sphere points.
double map_distance(const RationalMap& a, const RationalMap& b, int points = 50,
                    std::uint64_t seed = kDefaultSeed);

struct BranchSet {
    std::array<SpherePoint, 4> points;
};

// ((z1-z3)(z2-z4)) / ((z1-z4)(z2-z3)), factors through infinity dropped.
// Throws "degenerate branch set" on coincident points.
cplx cross_ratio(const BranchSet& b);

// (4/27) (l^2 - l + 1)^3 / (l^2 (1 - l)^2); throws for l in {0, 1}.
cplx j_invariant(cplx lambda);

// {e1, e2, e3, infinity} of the lattice.
BranchSet lattice_branch_set(const Lattice& lat);

struct CriticalData {
    // With multiplicity; infinity appears as SpherePoint::infinity().
    std::vector<SpherePoint> critical_points;
    std::vector<Cluster> value_clusters;
    std::optional<cplx> j;

    // Smallest chordal distance between two listed critical points.
    double min_separation = 0.0;
    bool all_simple = false; // every pair separated by > kSimpleSeparation
};

// Critical points are the roots of num' den - num den' plus infinity with
// the multiplicity lost in the degree drop. Requires degree >= 2.
CriticalData critical_data(const RationalMap& r);

// Simple preimages of the four branch values, summed. Throws if b does not
// match the critical values of r.
int noncritical_fiber_count(const RationalMap& r, const BranchSet& b);
int noncritical_fiber_count(const RationalMap& r, const CriticalData& cd);

// The degree-|L:M| map R with R(x_M(u)) = x_L(u), x the normalized
// p-coordinate of LatticeCoordinate. Throws "sampling inconsistent" when
// the fit does not reproduce fresh samples to 1e-8.
RationalMap build_fraction(const Lattice& lat, const HnfSublattice& m, std::uint64_t seed = kDefaultSeed);

// Z_n(sn(K(n tau) u | n tau) | tau) = sn(K(tau) u | tau). Any n >= 1 is
// accepted; n >= 3 gives the twisted Zolotarev fractions.
RationalMap zolotarev_fraction(int n, const Tau& tau, std::uint64_t seed = kDefaultSeed);

// Y_n(sqrt k(tau) cd(2K(tau) u | tau)) = sqrt k(n tau) cd(2K(n tau) n u | n tau).
RationalMap chebyshev_blaschke(int n, const Tau& tau, std::uint64_t seed = kDefaultSeed);

// l_tau(w) = -(1/sqrt k) (sqrt k0 w - 1) / (sqrt k0 w + 1), sqrt k0 = sqrt_k(-4/tau)
// and 1/sqrt k = (1 + sqrt k0) / (1 - sqrt k0).
MobiusMap mobius_l_tau(const Tau& tau);

// Max chordal error of cd(2K(tau) u | tau) = l_tau(cd(i K'(tau0) u | tau0)),
// tau0 = -4/tau, over random u in the cell of Span{2, tau}.
double verify_cd_identity(const Tau& tau, int trials, std::uint64_t seed = kDefaultSeed);

// Max chordal distance between Y_n(. | tau) and
// l0_{n tau} o Z_n(. | tau1) o (l0_tau)^{-1}, tau1 = -4/(n tau), l0 = sqrt k l.
double classmate_residual(int n, const Tau& tau, int trials, std::uint64_t seed = kDefaultSeed);

struct ClassInvariants {
    bool degrees_equal = false;
    double j_distance = 0.0;
};

// Necessary conditions for two fractions to be in one class. Throws unless
// both have exactly four critical value clusters.
ClassInvariants same_class_invariants(const RationalMap& a, const RationalMap& b);

} // namespace zolo
