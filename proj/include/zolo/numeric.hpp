#pragma once

// Polynomial, Moebius and clustering utilities on the Riemann sphere.

#include "zolo/sphere.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace zolo {

// Polynomial with complex coefficients in ascending degree. The zero
// polynomial is the empty sequence; trailing exact zeros are dropped.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<cplx> coeffs);

    static Poly from_roots(std::span<const cplx> roots, cplx leading = 1.0);

    // -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<cplx>& coeffs() const { return c_; }
    cplx coeff(int i) const { return i >= 0 && i < int(c_.size()) ? c_[i] : cplx(0.0, 0.0); }

    cplx operator()(cplx x) const;
    double max_abs_coeff() const;

    Poly derivative() const;
    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(cplx s, const Poly& a);

private:
    std::vector<cplx> c_;
};

// All complex roots with multiplicity (Aberth-Ehrlich iteration in extended
// precision, started from Newton-polygon radii, then one Newton polish).
// Each root r satisfies |p(r)| <= 1e-8 * sum_i |a_i| |r|^i. Throws on the
// zero or constant polynomial.
std::vector<cplx> poly_roots(const Poly& p);

// P(x)/Q(x) on the sphere, evaluated in extended precision; both are read
// with the formal degree max(deg P, deg Q) so x = infinity is handled.
SpherePoint evaluate_rational(const Poly& num, const Poly& den, const SpherePoint& x);

// Backward-error residual |p(r)| / sum_i |a_i| |r|^i.
double root_residual(const Poly& p, cplx r);

// z -> (a z + b) / (c z + d)
class MobiusMap {
public:
    MobiusMap() = default;
    // Throws zolo::Error if a d - b c vanishes.
    MobiusMap(cplx a, cplx b, cplx c, cplx d);

    static MobiusMap identity() { return {}; }

    SpherePoint operator()(const SpherePoint& z) const;
    MobiusMap inverse() const;
    // (f * g)(z) = f(g(z))
    friend MobiusMap operator*(const MobiusMap& f, const MobiusMap& g);

    cplx a() const { return a_; }
    cplx b() const { return b_; }
    cplx c() const { return c_; }
    cplx d() const { return d_; }
    cplx det() const { return a_ * d_ - b_ * c_; }

    // Max over entries of |this - s * other| with s the best scalar; both
    // matrices normalized to unit Frobenius norm first.
    double distance_up_to_scale(const MobiusMap& other) const;

private:
    cplx a_{1.0, 0.0}, b_{0.0, 0.0}, c_{0.0, 0.0}, d_{1.0, 0.0};
};

// Unique Moebius map with z_i -> w_i. Throws if two z's (or two w's) coincide.
MobiusMap mobius_from_three_points(const SpherePoint& z1, const SpherePoint& z2, const SpherePoint& z3,
                                   const SpherePoint& w1, const SpherePoint& w2, const SpherePoint& w3);

struct Cluster {
    std::vector<std::size_t> members; // indices into the input
    SpherePoint representative;       // chordal centroid
};

// Single-linkage clustering under the chordal metric. Clusters are ordered
// by their smallest member index.
std::vector<Cluster> cluster_points(std::span<const SpherePoint> pts, double tol);

struct Sample {
    SpherePoint x;
    SpherePoint y;
};

// Same in extended precision; the fit can be no better than its data.
struct ExtSample {
    ExtSpherePoint x;
    ExtSpherePoint y;
};

struct FitOptions {
    // Max chordal misfit accepted on the samples (times ZK_TOLERANCE_SCALE).
    double residual_tol = 1e-6;
};

struct FitResult {
    Poly num, den;
    double residual = 0.0;          // max chordal |R(x_i) - y_i|
    double smallest_singular = 0.0; // of the scaled homogeneous system
    double singular_gap = 0.0;      // second smallest / smallest
};

// Least-squares rational fit y = P(x)/Q(x), deg P, deg Q <= degree: the unit
// coefficient vector minimizing sum |P(x_i) - y_i Q(x_i)|^2 after row and
// column equilibration. Largest coefficient normalized to 1.
FitResult fit_rational(std::span<const Sample> samples, int degree, const FitOptions& opt = {});
FitResult fit_rational(std::span<const ExtSample> samples, int degree, const FitOptions& opt = {});

} // namespace zolo
