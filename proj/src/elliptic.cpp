#include "zolo/elliptic.hpp"

#include "zolo/error.hpp"

#include <cmath>
#include <numbers>

namespace zolo {

namespace {

using ld = long double;

constexpr ld kPi = std::numbers::pi_v<ld>;
constexpr ld kSeriesRelTol = 1e-18L;
constexpr int kMaxTerms = 64;
const lcplx I(0.0L, 1.0L);

lcplx widen(cplx z) { return {z.real(), z.imag()}; }
cplx narrow(lcplx z) { return {double(z.real()), double(z.imag())}; }

void check_tau(lcplx tau)
{
    if (!(tau.imag() > 0.0L) || !std::isfinite(tau.real()) || !std::isfinite(tau.imag()))
        throw Error("tau must lie in the upper half-plane");
    if (tau.imag() < kMinImTau)
        throw Error("nome too close to unit circle");
}

[[noreturn]] void not_converged()
{
    throw Error("theta series did not converge within 64 terms");
}

// exp(i pi tau x) for real x; the branch is fixed by tau, not by q.
lcplx qpow(lcplx tau, ld x)
{
    return std::exp(I * kPi * tau * x);
}

lcplx theta_series(int which, lcplx v, lcplx tau)
{
    check_tau(tau);
    lcplx sum(0.0L, 0.0L);
    switch (which) {
    case 1:
    case 2:
        for (int n = 0; n < kMaxTerms; ++n) {
            const ld h = n + 0.5L;
            lcplx t = qpow(tau, h * h);
            if (which == 1)
                t *= (n % 2 == 0 ? 2.0L : -2.0L) * std::sin(ld(2 * n + 1) * v);
            else
                t *= 2.0L * std::cos(ld(2 * n + 1) * v);
            sum += t;
            if (n > 0 && std::abs(t) <= kSeriesRelTol * std::abs(sum))
                return sum;
        }
        not_converged();
    case 3:
    case 4:
        sum = 1.0L;
        for (int n = 1; n < kMaxTerms; ++n) {
            lcplx t = 2.0L * qpow(tau, ld(n) * n) * std::cos(ld(2 * n) * v);
            if (which == 4 && n % 2 == 1)
                t = -t;
            sum += t;
            if (std::abs(t) <= kSeriesRelTol * std::abs(sum))
                return sum;
        }
        not_converged();
    default:
        throw Error("theta index must be 1..4");
    }
}

struct ThetaL {
    lcplx t2, t3, t4;
};

ThetaL theta_constants_ext(lcplx tau)
{
    return {theta_series(2, 0.0L, tau), theta_series(3, 0.0L, tau), theta_series(4, 0.0L, tau)};
}

// Writes v = pi (a + b tau) and shifts (a, b) into [-period_a/2, period_a/2) x [-1/2, 1/2).
lcplx reduce_theta_argument(lcplx v, lcplx tau, ld period_a)
{
    const lcplx w = v / kPi;
    ld b = w.imag() / tau.imag();
    ld a = w.real() - b * tau.real();
    b -= std::round(b);
    a -= period_a * std::round(a / period_a);
    return kPi * (a + b * tau);
}

// Real coordinates (a, b) with z = a w1 + b w2.
std::pair<ld, ld> lattice_coords(lcplx z, lcplx w1, lcplx w2)
{
    const lcplx t = w2 / w1;
    const lcplx s = z / w1;
    const ld b = s.imag() / t.imag();
    const ld a = s.real() - b * t.real();
    return {a, b};
}

ExtSpherePoint quotient(lcplx num, lcplx den)
{
    if (den == lcplx(0.0L, 0.0L))
        return ExtSpherePoint::infinity();
    return ExtSpherePoint::from(num / den);
}

} // namespace

Tau::Tau(cplx value) : v_(value)
{
    if (!(value.imag() > 0.0) || !std::isfinite(value.real()) || !std::isfinite(value.imag()))
        throw Error("tau must lie in the upper half-plane");
}

cplx nome(const Tau& tau)
{
    return std::exp(cplx(0.0, std::numbers::pi) * tau.value());
}

cplx theta(int which, cplx v, const Tau& tau)
{
    return narrow(theta_series(which, widen(v), widen(tau.value())));
}

ThetaConstants theta_constants(const Tau& tau)
{
    const ThetaL t = theta_constants_ext(widen(tau.value()));
    return {narrow(t.t2), narrow(t.t3), narrow(t.t4)};
}

lcplx ellint_K_ext(lcplx tau)
{
    const lcplx t3 = theta_series(3, 0.0L, tau);
    return 0.5L * kPi * t3 * t3;
}

lcplx sqrt_k_ext(lcplx tau)
{
    return theta_series(2, 0.0L, tau) / theta_series(3, 0.0L, tau);
}

cplx ellint_K(const Tau& tau)
{
    return narrow(ellint_K_ext(widen(tau.value())));
}

cplx ellint_Kprime(const Tau& tau)
{
    const lcplx t = widen(tau.value());
    return narrow(-I * t * ellint_K_ext(t));
}

cplx sqrt_k(const Tau& tau)
{
    return narrow(sqrt_k_ext(widen(tau.value())));
}

ExtSpherePoint jacobi_sn_ext(lcplx z, lcplx tau)
{
    const ThetaL th = theta_constants_ext(tau);
    // v = pi z / (2K); sn has periods 2 pi and pi tau in v.
    const lcplx v = reduce_theta_argument(z / (th.t3 * th.t3), tau, 2.0L);
    return quotient(th.t3 * theta_series(1, v, tau), th.t2 * theta_series(4, v, tau));
}

ExtSpherePoint jacobi_cd_ext(lcplx z, lcplx tau)
{
    const ThetaL th = theta_constants_ext(tau);
    const lcplx v = reduce_theta_argument(z / (th.t3 * th.t3), tau, 2.0L);
    return quotient(th.t3 * theta_series(2, v, tau), th.t2 * theta_series(3, v, tau));
}

SpherePoint jacobi_sn(cplx z, const Tau& tau)
{
    return jacobi_sn_ext(widen(z), widen(tau.value())).narrow();
}

SpherePoint jacobi_cd(cplx z, const Tau& tau)
{
    return jacobi_cd_ext(widen(z), widen(tau.value())).narrow();
}

Lattice::Lattice(cplx w1, cplx w2) : omega1(w1), omega2(w2)
{
    if (w1 == cplx(0.0, 0.0))
        throw Error("degenerate lattice basis");
    const double im = (w2 / w1).imag();
    if (!std::isfinite(im) || std::abs(im) < 1e-14 * std::max(1.0, std::abs(w2 / w1)))
        throw Error("degenerate lattice basis");
    if (im < 0.0)
        omega2 = -omega2;
}

Lattice Lattice::sublattice(const HnfSublattice& s) const
{
    return Lattice(double(s.p) * omega1 + double(s.l) * omega2, double(s.q) * omega2);
}

bool lattice_member(const Lattice& lat, cplx z, double tol)
{
    const auto [a, b] = lattice_coords(widen(z), widen(lat.omega1), widen(lat.omega2));
    return std::abs(a - std::round(a)) <= tol && std::abs(b - std::round(b)) <= tol;
}

bool same_lattice(const Lattice& x, const Lattice& y, double tol)
{
    return lattice_member(x, y.omega1, tol) && lattice_member(x, y.omega2, tol)
           && lattice_member(y, x.omega1, tol) && lattice_member(y, x.omega2, tol);
}

ReducedLattice gauss_reduce(const Lattice& lat)
{
    cplx w1 = lat.omega1, w2 = lat.omega2;
    IntMatrix2 u = IntMatrix2::identity();
    for (int iter = 0; iter < 10000; ++iter) {
        const cplx t = w2 / w1;
        const auto m = static_cast<std::int64_t>(std::llround(t.real()));
        if (m != 0) {
            w2 -= double(m) * w1;
            u = IntMatrix2{1, 0, -m, 1} * u;
        }
        if (std::abs(w2) < std::abs(w1) * (1.0 - 1e-12)) {
            const cplx tmp = w1;
            w1 = w2;
            w2 = -tmp;
            u = IntMatrix2{0, 1, -1, 0} * u;
            continue;
        }
        return {Lattice(w1, w2), u};
    }
    throw Error("lattice reduction did not terminate");
}

LatticeCoordinate::LatticeCoordinate(const Lattice& lat)
{
    init(widen(lat.omega1), widen(lat.omega2), gauss_reduce(lat).change);
}

LatticeCoordinate::LatticeCoordinate(const Lattice& lat, const HnfSublattice& m)
{
    const lcplx b1 = ld(m.p) * widen(lat.omega1) + ld(m.l) * widen(lat.omega2);
    const lcplx b2 = ld(m.q) * widen(lat.omega2);
    init(b1, b2, gauss_reduce(lat.sublattice(m)).change);
}

void LatticeCoordinate::init(lcplx b1, lcplx b2, const IntMatrix2& change)
{
    w1_ = ld(change.a) * b1 + ld(change.b) * b2;
    w2_ = ld(change.c) * b1 + ld(change.d) * b2;
    reduced_ = Lattice(narrow(w1_), narrow(w2_));
    tau_ = w2_ / w1_;
    scale_ = (kPi / w1_) * (kPi / w1_);
    const ThetaL th = theta_constants_ext(tau_);
    t2_ = th.t2;
    t3_ = th.t3;
    t4_ = th.t4;
    const lcplx p2 = std::pow(t2_, 4), p3 = std::pow(t3_, 4), p4 = std::pow(t4_, 4);
    e_ = {scale_ / 3.0L * (p2 + 2.0L * p4), -scale_ / 3.0L * (2.0L * p2 + p4), scale_ / 3.0L * (p2 - p4)};

    // Exact pairwise differences (no cancellation): e0-e1, e0-e2, e2-e1.
    const ld d01 = std::abs(scale_ * p3), d02 = std::abs(scale_ * p4), d21 = std::abs(scale_ * p2);
    const ld dist[3][3] = {{0.0L, d01, d02}, {d01, 0.0L, d21}, {d02, d21, 0.0L}};
    auto nearest = [&](int k) {
        ld m = 1e300L;
        for (int i = 0; i < 3; ++i)
            if (i != k)
                m = std::min(m, dist[k][i]);
        return m;
    };
    auto total = [&](int k) { return dist[k][0] + dist[k][1] + dist[k][2]; };
    auto less = [](ld a, ld b) { return a < b * (1.0L - 1e-9L); };
    k_ = 0;
    for (int k = 1; k < 3; ++k) {
        if (less(nearest(k), nearest(k_)) || (!less(nearest(k_), nearest(k)) && less(total(k), total(k_))))
            k_ = k;
    }
    ld prod = 1.0L;
    for (int i = 0; i < 3; ++i)
        if (i != k_)
            prod *= dist[k_][i];
    // The phase of scale_ makes x invariant under L -> c L, not just |c|.
    sigma_ = std::sqrt(prod) * scale_ / std::abs(scale_);

    // Which reduced half-period class each input half-period falls into.
    const std::int64_t det = change.det();
    const IntMatrix2 inv{change.d * det, -change.b * det, -change.c * det, change.a * det};
    auto cls = [](std::int64_t x, std::int64_t y) {
        const bool ox = (x % 2) != 0, oy = (y % 2) != 0;
        return ox && !oy ? 0 : (!ox && oy ? 1 : 2);
    };
    input_class_ = {cls(inv.a, inv.b), cls(inv.c, inv.d), cls(inv.a + inv.c, inv.b + inv.d)};
}

ExtSpherePoint LatticeCoordinate::difference(lcplx u, int idx) const
{
    auto [a, b] = lattice_coords(u, w1_, w2_);
    a -= std::round(a);
    b -= std::round(b);
    if (a == 0.0L && b == 0.0L)
        return ExtSpherePoint::infinity();
    const lcplx z = kPi * (a + b * tau_);
    const lcplx t1 = theta_series(1, z, tau_);
    lcplx num;
    switch (idx) {
    case 0:
        num = t3_ * t4_ * theta_series(2, z, tau_);
        break;
    case 1:
        num = t2_ * t3_ * theta_series(4, z, tau_);
        break;
    default:
        num = t2_ * t4_ * theta_series(3, z, tau_);
        break;
    }
    const ExtSpherePoint r = quotient(num, t1);
    if (r.inf)
        return r;
    return ExtSpherePoint::from(scale_ * r.z * r.z);
}

ExtSpherePoint LatticeCoordinate::ext(cplx u) const
{
    const ExtSpherePoint d = difference(widen(u), k_);
    if (d.inf)
        return d;
    return ExtSpherePoint::from(d.z / sigma_);
}

SpherePoint LatticeCoordinate::wp(cplx u) const
{
    const ExtSpherePoint d = difference(widen(u), 0);
    if (d.inf)
        return SpherePoint::infinity();
    return SpherePoint::from(narrow(d.z + e_[0]));
}

lcplx LatticeCoordinate::branch_difference(int i) const
{
    // e_i - e_k from the exact differences e0-e1 = c t3^4, e0-e2 = c t4^4, e2-e1 = c t2^4.
    const lcplx p2 = std::pow(t2_, 4), p3 = std::pow(t3_, 4), p4 = std::pow(t4_, 4);
    auto diff = [&](int a, int b) -> lcplx {
        if (a == b)
            return 0.0L;
        if (a == 0 && b == 1)
            return scale_ * p3;
        if (a == 0 && b == 2)
            return scale_ * p4;
        if (a == 2 && b == 1)
            return scale_ * p2;
        if (a == 1 && b == 0)
            return -scale_ * p3;
        if (a == 2 && b == 0)
            return -scale_ * p4;
        return -scale_ * p2; // a == 1, b == 2
    };
    return diff(i, k_);
}

std::array<SpherePoint, 4> LatticeCoordinate::branch_points() const
{
    std::array<SpherePoint, 4> out;
    for (int i = 0; i < 3; ++i)
        out[i] = SpherePoint(narrow(branch_difference(input_class_[i]) / sigma_));
    out[3] = SpherePoint::infinity();
    return out;
}

std::array<cplx, 3> LatticeCoordinate::half_period_values() const
{
    return {narrow(e_[input_class_[0]]), narrow(e_[input_class_[1]]), narrow(e_[input_class_[2]])};
}

SpherePoint LatticeCoordinate::from_wp(const SpherePoint& w) const
{
    if (w.is_infinite())
        return w;
    return SpherePoint::from(narrow((widen(w.value()) - e_[k_]) / sigma_));
}

SpherePoint LatticeCoordinate::to_wp(const SpherePoint& x) const
{
    if (x.is_infinite())
        return x;
    return SpherePoint::from(narrow(widen(x.value()) * sigma_ + e_[k_]));
}

SpherePoint wp(cplx u, const Lattice& lat)
{
    return LatticeCoordinate(lat).wp(u);
}

std::array<cplx, 3> half_period_values(const Lattice& lat)
{
    return LatticeCoordinate(lat).half_period_values();
}

} // namespace zolo
