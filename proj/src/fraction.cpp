#include "zolo/fraction.hpp"

#include "zolo/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

namespace zolo {

namespace {

using ld = long double;
using lcplx = std::complex<long double>;

constexpr double kVerifyTol = 1e-8;
constexpr int kVerifyPoints = 50;
constexpr double kAvoidRadius = 1e-2;
// Roots of R = b closer than this are one multiple root.
constexpr double kFiberMergeTol = 1e-6;
// Points this close to infinity (|z| > 2e12) are infinity to fit accuracy.
constexpr double kInfinitySnap = 1e-12;

const cplx I(0.0, 1.0);

lcplx widen(cplx z) { return {z.real(), z.imag()}; }
cplx narrow(lcplx z) { return {double(z.real()), double(z.imag())}; }

// Uniform in the cell of (w1, w2), away from the grid (i/div) w1 + (j/div) w2.
cplx sample_cell(std::mt19937_64& rng, cplx w1, cplx w2, int div)
{
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const double radius = kAvoidRadius * std::min(std::abs(w1), std::abs(w2));
    for (;;) {
        const double a = uni(rng), b = uni(rng);
        const cplx u = a * w1 + b * w2;
        bool ok = true;
        for (int i = 0; i <= div && ok; ++i)
            for (int j = 0; j <= div && ok; ++j)
                if (std::abs(u - (double(i) / div) * w1 - (double(j) / div) * w2) < radius)
                    ok = false;
        if (ok)
            return u;
    }
}

SpherePoint random_sphere_point(std::mt19937_64& rng)
{
    std::normal_distribution<double> g;
    std::array<double, 3> v{g(rng), g(rng), g(rng)};
    const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    for (double& c : v)
        c /= n;
    return SpherePoint::from_unit_vector(v);
}

template <class Param>
RationalMap fit_and_verify(int degree, Param&& param, std::mt19937_64& rng, const char* what)
{
    const std::size_t count = 2 * std::size_t(4 * degree + 8);
    std::vector<ExtSample> samples;
    samples.reserve(count);
    for (std::size_t i = 0; i < count; ++i)
        samples.push_back(param(rng));
    FitResult fit;
    try {
        fit = fit_rational(std::span<const ExtSample>(samples), degree);
    } catch (const Error& e) {
        throw Error(std::string(what) + ": sampling inconsistent (" + e.what() + ")");
    }
    RationalMap r(fit.num, fit.den);
    double err = 0.0;
    for (int i = 0; i < kVerifyPoints; ++i) {
        const ExtSample s = param(rng);
        err = std::max(err, chordal_distance(r(s.x.narrow()), s.y.narrow()));
    }
    const double tol = kVerifyTol * tolerance_scale();
    if (!(err <= tol)) {
        std::ostringstream msg;
        msg << what << ": sampling inconsistent (fresh-point error " << err << " > " << tol << ")";
        throw Error(msg.str());
    }
    r.fit_residual = std::max(fit.residual, err);
    return r;
}

void require_degree(int n, int min, const char* what)
{
    if (n < min)
        throw Error(std::string(what) + ": degree must be at least " + std::to_string(min));
}

void require_safe(const Tau& tau, const char* what)
{
    if (tau.value().imag() < kMinImTau) {
        std::ostringstream msg;
        msg << what << ": tau = " << tau.value() << " outside the numerically safe region (Im < " << kMinImTau
            << ")";
        throw Error(msg.str());
    }
}

Tau checked_tau(cplx t, const char* what)
{
    if (!(t.imag() > 0.0))
        throw Error(std::string(what) + ": derived tau not in the upper half-plane");
    Tau tau(t);
    require_safe(tau, what);
    return tau;
}

// sum_i c_i (a x + b)^i (c x + d)^{n-i}
Poly homogenize(const Poly& p, int n, const MobiusMap& m)
{
    Poly out;
    const Poly lin_num(std::vector<cplx>{m.b(), m.a()});
    const Poly lin_den(std::vector<cplx>{m.d(), m.c()});
    for (int i = 0; i <= n; ++i) {
        if (p.coeff(i) == cplx(0.0, 0.0))
            continue;
        Poly term(std::vector<cplx>{p.coeff(i)});
        for (int k = 0; k < i; ++k)
            term = term * lin_num;
        for (int k = i; k < n; ++k)
            term = term * lin_den;
        out = out + term;
    }
    return out;
}

SpherePoint snap_infinity(const SpherePoint& p)
{
    return chordal_distance(p, SpherePoint::infinity()) < kInfinitySnap ? SpherePoint::infinity() : p;
}

std::vector<SpherePoint> fiber(const RationalMap& r, const SpherePoint& b)
{
    const int n = r.degree();
    Poly f;
    if (b.is_infinite())
        f = r.den();
    else if (std::abs(b.value()) <= 1.0)
        f = r.num() - b.value() * r.den();
    else
        f = (1.0 / b.value()) * r.num() - r.den();
    std::vector<SpherePoint> out;
    if (f.is_zero())
        throw Error("constant rational map");
    if (f.degree() >= 1)
        for (const cplx z : poly_roots(f))
            out.push_back(SpherePoint::from(z));
    for (int k = std::max(f.degree(), 0); k < n; ++k)
        out.push_back(SpherePoint::infinity());
    return out;
}

} // namespace

RationalMap::RationalMap(Poly num, Poly den)
{
    const double m = std::max(num.max_abs_coeff(), den.max_abs_coeff());
    if (!(m > 0.0))
        throw Error("rational map with zero numerator and denominator");
    if (den.is_zero())
        throw Error("rational map with zero denominator");
    // Divide by the first coefficient (num, then den) of near-maximal size;
    // the slack keeps the choice stable under rounding.
    cplx pivot;
    for (const Poly* p : {&num, &den})
        for (const cplx c : p->coeffs())
            if (pivot == cplx(0.0, 0.0) && std::abs(c) >= m * (1.0 - 1e-6))
                pivot = c;
    num_ = (1.0 / pivot) * num;
    den_ = (1.0 / pivot) * den;
}

RationalMap compose(const MobiusMap& m2, const RationalMap& r, const MobiusMap& m1)
{
    const int n = r.degree();
    const Poly p = homogenize(r.num(), n, m1);
    const Poly q = homogenize(r.den(), n, m1);
    return RationalMap(m2.a() * p + m2.b() * q, m2.c() * p + m2.d() * q);
}

double map_distance(const RationalMap& a, const RationalMap& b, int points, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    double m = 0.0;
    for (int i = 0; i < points; ++i) {
        const SpherePoint x = random_sphere_point(rng);
        m = std::max(m, chordal_distance(a(x), b(x)));
    }
    return m;
}

cplx cross_ratio(const BranchSet& b)
{
    const auto& z = b.points;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (chordal_distance(z[i], z[j]) < 1e-14)
                throw Error("degenerate branch set");
    auto d = [&](int i, int j) { return z[i].value() - z[j].value(); };
    if (z[0].is_infinite())
        return d(1, 3) / d(1, 2);
    if (z[1].is_infinite())
        return d(0, 2) / d(0, 3);
    if (z[2].is_infinite())
        return d(1, 3) / d(0, 3);
    if (z[3].is_infinite())
        return d(0, 2) / d(1, 2);
    return (d(0, 2) * d(1, 3)) / (d(0, 3) * d(1, 2));
}

cplx j_invariant(cplx l)
{
    if (!std::isfinite(l.real()) || !std::isfinite(l.imag()) || std::abs(l) < 1e-14
        || std::abs(1.0 - l) < 1e-14)
        throw Error("degenerate branch set");
    const cplx s = l * l - l + 1.0;
    const cplx m = l * (1.0 - l);
    return (4.0 / 27.0) * s * s * s / (m * m);
}

BranchSet lattice_branch_set(const Lattice& lat)
{
    const auto e = half_period_values(lat);
    return {{SpherePoint(e[0]), SpherePoint(e[1]), SpherePoint(e[2]), SpherePoint::infinity()}};
}

CriticalData critical_data(const RationalMap& r)
{
    const int n = r.degree();
    if (n < 2)
        throw Error("critical_data: degree must be at least 2");
    const Poly& p = r.num();
    const Poly& q = r.den();

    // W = p' q - p q', coefficient k collects i + j = k + 1 with weight i - j.
    const int top = 2 * n - 2;
    std::vector<cplx> w(top + 1);
    std::vector<ld> mag(top + 1, 0);
    for (int k = 0; k <= top; ++k) {
        lcplx s = 0;
        for (int i = 0; i <= k + 1; ++i) {
            const int j = k + 1 - i;
            if (i > n || j > n || i == j)
                continue;
            const lcplx pi(p.coeff(i).real(), p.coeff(i).imag());
            const lcplx qj(q.coeff(j).real(), q.coeff(j).imag());
            const lcplx t = ld(i - j) * pi * qj;
            s += t;
            mag[k] += std::abs(t);
        }
        w[k] = {double(s.real()), double(s.imag())};
    }
    // Drop top coefficients that are pure cancellation noise.
    int deg = top;
    while (deg >= 0 && std::abs(w[deg]) <= 64.0 * std::numeric_limits<double>::epsilon() * double(mag[deg]))
        --deg;
    w.resize(std::size_t(deg + 1));
    const Poly wp(std::move(w));

    CriticalData out;
    if (wp.degree() >= 1)
        for (const cplx z : poly_roots(wp))
            out.critical_points.push_back(snap_infinity(SpherePoint::from(z)));
    for (int k = std::max(wp.degree(), 0); k < top; ++k)
        out.critical_points.push_back(SpherePoint::infinity());

    out.min_separation = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < out.critical_points.size(); ++i)
        for (std::size_t j = i + 1; j < out.critical_points.size(); ++j)
            out.min_separation =
                std::min(out.min_separation, chordal_distance(out.critical_points[i], out.critical_points[j]));
    out.all_simple = int(out.critical_points.size()) == top && out.min_separation > kSimpleSeparation;

    std::vector<SpherePoint> values;
    values.reserve(out.critical_points.size());
    for (const SpherePoint& c : out.critical_points)
        values.push_back(snap_infinity(r(c)));
    out.value_clusters = cluster_points(values, kValueClusterTol * tolerance_scale());
    for (Cluster& k : out.value_clusters)
        k.representative = snap_infinity(k.representative);
    if (out.value_clusters.size() == 4) {
        BranchSet b;
        for (int i = 0; i < 4; ++i)
            b.points[i] = out.value_clusters[i].representative;
        out.j = j_invariant(cross_ratio(b));
    }
    return out;
}

int noncritical_fiber_count(const RationalMap& r, const CriticalData& cd)
{
    BranchSet b;
    if (cd.value_clusters.size() != 4) {
        // Degenerate: count over whatever values there are.
        int count = 0;
        for (const Cluster& c : cd.value_clusters) {
            const auto pts = fiber(r, c.representative);
            for (const Cluster& k : cluster_points(pts, kFiberMergeTol))
                if (k.members.size() == 1)
                    ++count;
        }
        return count;
    }
    for (int i = 0; i < 4; ++i)
        b.points[i] = cd.value_clusters[i].representative;
    return noncritical_fiber_count(r, b);
}

int noncritical_fiber_count(const RationalMap& r, const BranchSet& b)
{
    const CriticalData cd = critical_data(r);
    const double tol = kValueClusterTol * tolerance_scale();
    for (const SpherePoint& v : b.points) {
        const bool match = std::any_of(cd.value_clusters.begin(), cd.value_clusters.end(), [&](const Cluster& c) {
            return chordal_distance(c.representative, v) < tol;
        });
        if (!match)
            throw Error("branch set does not match the critical values");
    }
    int count = 0;
    for (const SpherePoint& v : b.points) {
        const auto pts = fiber(r, v);
        for (const Cluster& k : cluster_points(pts, kFiberMergeTol))
            if (k.members.size() == 1)
                ++count;
    }
    return count;
}

RationalMap build_fraction(const Lattice& lat, const HnfSublattice& m, std::uint64_t seed)
{
    const int n = int(m.index());
    require_degree(n, 2, "build_fraction");
    const Lattice sub = lat.sublattice(m);
    const LatticeCoordinate xl(lat), xm(lat, m);
    std::mt19937_64 rng(seed);
    auto param = [&](std::mt19937_64& g) {
        const cplx u = sample_cell(g, sub.omega1, sub.omega2, 2);
        return ExtSample{xm.ext(u), xl.ext(u)};
    };
    return fit_and_verify(n, param, rng, "build_fraction");
}

RationalMap zolotarev_fraction(int n, const Tau& tau, std::uint64_t seed)
{
    require_degree(n, 1, "zolotarev_fraction");
    require_safe(tau, "zolotarev_fraction");
    const lcplx t1 = widen(tau.value()), tn = ld(n) * t1;
    const lcplx k1 = ellint_K_ext(t1), kn = ellint_K_ext(tn);
    std::mt19937_64 rng(seed);
    auto param = [&](std::mt19937_64& g) {
        const lcplx u = widen(sample_cell(g, 4.0, 2.0 * narrow(tn), 4));
        return ExtSample{jacobi_sn_ext(kn * u, tn), jacobi_sn_ext(k1 * u, t1)};
    };
    return fit_and_verify(n, param, rng, "zolotarev_fraction");
}

RationalMap chebyshev_blaschke(int n, const Tau& tau, std::uint64_t seed)
{
    require_degree(n, 1, "chebyshev_blaschke");
    require_safe(tau, "chebyshev_blaschke");
    const lcplx t1 = widen(tau.value()), tn = ld(n) * t1;
    const lcplx k1 = ellint_K_ext(t1), kn = ellint_K_ext(tn);
    const lcplx s1 = sqrt_k_ext(t1), sn = sqrt_k_ext(tn);
    std::mt19937_64 rng(seed);
    auto scale = [](lcplx s, const ExtSpherePoint& v) { return v.inf ? v : ExtSpherePoint::from(s * v.z); };
    auto param = [&](std::mt19937_64& g) {
        const lcplx u = widen(sample_cell(g, 2.0, tau.value(), 4));
        return ExtSample{scale(s1, jacobi_cd_ext(2.0L * k1 * u, t1)),
                         scale(sn, jacobi_cd_ext(2.0L * kn * ld(n) * u, tn))};
    };
    return fit_and_verify(n, param, rng, "chebyshev_blaschke");
}

MobiusMap mobius_l_tau(const Tau& tau)
{
    const Tau tau0 = checked_tau(-4.0 / tau.value(), "mobius_l_tau");
    const cplx s0 = sqrt_k(tau0);
    const cplx inv_sk = (1.0 + s0) / (1.0 - s0);
    return MobiusMap(-inv_sk * s0, inv_sk, s0, 1.0);
}

double verify_cd_identity(const Tau& tau, int trials, std::uint64_t seed)
{
    if (trials < 1)
        throw Error("verify_cd_identity: trials must be positive");
    const Tau tau0 = checked_tau(-4.0 / tau.value(), "verify_cd_identity");
    const MobiusMap l = mobius_l_tau(tau);
    const cplx k = ellint_K(tau), kp0 = ellint_Kprime(tau0);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    double err = 0.0;
    for (int i = 0; i < trials; ++i) {
        const cplx u = uni(rng) * 2.0 + uni(rng) * tau.value();
        const SpherePoint lhs = jacobi_cd(2.0 * k * u, tau);
        const SpherePoint rhs = l(jacobi_cd(I * kp0 * u, tau0));
        err = std::max(err, chordal_distance(lhs, rhs));
    }
    return err;
}

double classmate_residual(int n, const Tau& tau, int trials, std::uint64_t seed)
{
    require_degree(n, 1, "classmate_residual");
    if (trials < 1)
        throw Error("classmate_residual: trials must be positive");
    const Tau ntau(double(n) * tau.value());
    const Tau tau1 = checked_tau(-4.0 / (double(n) * tau.value()), "classmate_residual");

    auto l0 = [](const Tau& t) {
        const MobiusMap l = mobius_l_tau(t);
        const cplx s = sqrt_k(t);
        return MobiusMap(s * l.a(), s * l.b(), l.c(), l.d());
    };
    const RationalMap y = chebyshev_blaschke(n, tau, seed);
    const RationalMap z = zolotarev_fraction(n, tau1, seed);
    const MobiusMap pre = l0(tau).inverse(), post = l0(ntau);

    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    double err = 0.0;
    for (int i = 0; i < trials; ++i) {
        const SpherePoint x = random_sphere_point(rng);
        err = std::max(err, chordal_distance(y(x), post(z(pre(x)))));
    }
    return err;
}

ClassInvariants same_class_invariants(const RationalMap& a, const RationalMap& b)
{
    const CriticalData ca = critical_data(a), cb = critical_data(b);
    if (!ca.j || !cb.j)
        throw Error("same_class_invariants: both maps need exactly four critical values");
    return {a.degree() == b.degree(), std::abs(*ca.j - *cb.j)};
}

} // namespace zolo
