#include "zolo/numeric.hpp"

#include "zolo/error.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

namespace zolo {

namespace {

using ld = long double;

lcplx widen(cplx z) { return {z.real(), z.imag()}; }
cplx narrow(lcplx z) { return {double(z.real()), double(z.imag())}; }

constexpr ld kEps = std::numeric_limits<ld>::epsilon();

struct Evaluation {
    lcplx ratio; // p / p'
    ld residual; // |p| / sum |a_i| |z|^i
    bool exact_zero;
};

// Horner on ascending coefficients a, optionally reversed, with derivative.
void horner(const std::vector<lcplx>& a, bool reversed, lcplx z, lcplx& value, lcplx& deriv, ld& bound)
{
    const int d = int(a.size()) - 1;
    value = 0;
    deriv = 0;
    bound = 0;
    const ld az = std::abs(z);
    for (int i = d; i >= 0; --i) {
        const lcplx c = reversed ? a[d - i] : a[i];
        deriv = deriv * z + value;
        value = value * z + c;
        bound = bound * az + std::abs(c);
    }
}

Evaluation evaluate(const std::vector<lcplx>& a, lcplx z)
{
    const int d = int(a.size()) - 1;
    lcplx v, dv;
    ld bound;
    if (std::abs(z) <= 1.0L) {
        horner(a, false, z, v, dv, bound);
        if (v == lcplx(0))
            return {0, 0, true};
        return {v / dv, std::abs(v) / bound, false};
    }
    const lcplx y = 1.0L / z;
    horner(a, true, y, v, dv, bound);
    if (v == lcplx(0))
        return {0, 0, true};
    // p(z) = z^d r(y),  p'(z) = z^{d-1} (d r - y r')
    return {z * v / (ld(d) * v - y * dv), std::abs(v) / bound, false};
}

std::vector<lcplx> initial_guesses(const std::vector<lcplx>& a)
{
    const int d = int(a.size()) - 1;
    std::vector<ld> lg(d + 1);
    for (int i = 0; i <= d; ++i)
        lg[i] = a[i] == lcplx(0) ? -std::numeric_limits<ld>::infinity() : std::log(std::abs(a[i]));

    // Upper convex hull of (i, log|a_i|).
    std::vector<int> hull;
    for (int i = 0; i <= d; ++i) {
        if (!std::isfinite(lg[i]))
            continue;
        while (hull.size() >= 2) {
            const int i1 = hull[hull.size() - 2], i2 = hull.back();
            const ld cross = (i2 - i1) * (lg[i] - lg[i1]) - (i - i1) * (lg[i2] - lg[i1]);
            if (cross >= 0)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(i);
    }

    std::vector<lcplx> z;
    z.reserve(d);
    const ld sigma = 0.7L;
    for (std::size_t h = 0; h + 1 < hull.size(); ++h) {
        const int k0 = hull[h], k1 = hull[h + 1];
        const int count = k1 - k0;
        const ld radius = std::exp((lg[k0] - lg[k1]) / ld(count));
        for (int m = 0; m < count; ++m) {
            const ld ang = 2.0L * std::numbers::pi_v<ld> * ld(m) / ld(count)
                           + 2.0L * std::numbers::pi_v<ld> * ld(h) / ld(d) + sigma;
            z.push_back(std::polar(radius, ang));
        }
    }
    return z;
}

std::vector<lcplx> aberth(const std::vector<lcplx>& a)
{
    const int d = int(a.size()) - 1;
    std::vector<lcplx> z = initial_guesses(a);
    std::vector<bool> done(d, false);
    for (int iter = 0; iter < 2000; ++iter) {
        bool all = true;
        for (int i = 0; i < d; ++i) {
            if (done[i])
                continue;
            const Evaluation e = evaluate(a, z[i]);
            if (e.exact_zero || e.residual <= 4.0L * kEps) {
                done[i] = true;
                continue;
            }
            lcplx s = 0;
            for (int j = 0; j < d; ++j)
                if (j != i)
                    s += 1.0L / (z[i] - z[j]);
            const lcplx w = e.ratio / (1.0L - e.ratio * s);
            z[i] -= w;
            if (std::abs(w) <= 4.0L * kEps * std::abs(z[i]))
                done[i] = true;
            else
                all = false;
        }
        if (all)
            break;
    }
    return z;
}

std::vector<lcplx> widened(const Poly& p)
{
    std::vector<lcplx> a;
    a.reserve(p.coeffs().size());
    for (const cplx c : p.coeffs())
        a.push_back(widen(c));
    return a;
}

lcplx horner_value(const std::vector<lcplx>& a, int degree, bool reversed, lcplx z)
{
    lcplx v = 0;
    for (int i = degree; i >= 0; --i) {
        const int idx = reversed ? degree - i : i;
        v = v * z + (idx < int(a.size()) ? a[idx] : lcplx(0));
    }
    return v;
}

} // namespace

Poly::Poly(std::vector<cplx> coeffs) : c_(std::move(coeffs))
{
    while (!c_.empty() && c_.back() == cplx(0.0, 0.0))
        c_.pop_back();
}

Poly Poly::from_roots(std::span<const cplx> roots, cplx leading)
{
    std::vector<lcplx> c{widen(leading)};
    for (const cplx r : roots) {
        std::vector<lcplx> next(c.size() + 1, 0);
        for (std::size_t i = 0; i < c.size(); ++i) {
            next[i + 1] += c[i];
            next[i] -= c[i] * widen(r);
        }
        c = std::move(next);
    }
    std::vector<cplx> out;
    for (const auto& v : c)
        out.push_back(narrow(v));
    return Poly(std::move(out));
}

cplx Poly::operator()(cplx x) const
{
    lcplx v = 0;
    const lcplx lx = widen(x);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
        v = v * lx + widen(*it);
    return narrow(v);
}

double Poly::max_abs_coeff() const
{
    double m = 0.0;
    for (const cplx c : c_)
        m = std::max(m, std::abs(c));
    return m;
}

Poly Poly::derivative() const
{
    if (c_.size() <= 1)
        return Poly();
    std::vector<cplx> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i)
        d[i - 1] = double(i) * c_[i];
    return Poly(std::move(d));
}

Poly operator+(const Poly& a, const Poly& b)
{
    std::vector<cplx> c(std::max(a.c_.size(), b.c_.size()), 0.0);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i)
        c[i] += b.c_[i];
    return Poly(std::move(c));
}

Poly operator-(const Poly& a, const Poly& b)
{
    return a + cplx(-1.0, 0.0) * b;
}

Poly operator*(const Poly& a, const Poly& b)
{
    if (a.is_zero() || b.is_zero())
        return Poly();
    std::vector<lcplx> c(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j)
            c[i + j] += widen(a.c_[i]) * widen(b.c_[j]);
    std::vector<cplx> out;
    for (const auto& v : c)
        out.push_back(narrow(v));
    return Poly(std::move(out));
}

Poly operator*(cplx s, const Poly& a)
{
    std::vector<cplx> c = a.c_;
    for (auto& v : c)
        v *= s;
    return Poly(std::move(c));
}

std::vector<cplx> poly_roots(const Poly& p)
{
    if (p.is_zero())
        throw Error("poly_roots: zero polynomial");
    if (p.degree() < 1)
        throw Error("poly_roots: polynomial has no roots");

    std::vector<lcplx> a = widened(p);
    std::vector<cplx> roots;
    // Exact zero roots.
    std::size_t lead_zeros = 0;
    while (lead_zeros < a.size() && a[lead_zeros] == lcplx(0))
        ++lead_zeros;
    roots.assign(lead_zeros, cplx(0.0, 0.0));
    a.erase(a.begin(), a.begin() + long(lead_zeros));
    if (a.size() <= 1)
        return roots;

    std::vector<lcplx> z = aberth(a);
    for (lcplx& r : z) {
        const Evaluation e = evaluate(a, r);
        if (!e.exact_zero) {
            const lcplx cand = r - e.ratio;
            const Evaluation e2 = evaluate(a, cand);
            if (e2.exact_zero || e2.residual < e.residual)
                r = cand;
        }
        roots.push_back(narrow(r));
    }
    return roots;
}

double root_residual(const Poly& p, cplx r)
{
    const std::vector<lcplx> a = widened(p);
    const Evaluation e = evaluate(a, widen(r));
    return e.exact_zero ? 0.0 : double(e.residual);
}

SpherePoint evaluate_rational(const Poly& num, const Poly& den, const SpherePoint& x)
{
    const int n = std::max(num.degree(), den.degree());
    if (n < 0)
        throw Error("rational map with zero numerator and denominator");
    const std::vector<lcplx> a = widened(num), b = widened(den);
    lcplx pv, qv;
    if (x.is_infinite()) {
        pv = n < int(a.size()) ? a[n] : lcplx(0);
        qv = n < int(b.size()) ? b[n] : lcplx(0);
    } else {
        const lcplx z = widen(x.value());
        if (std::abs(z) <= 1.0L) {
            pv = horner_value(a, n, false, z);
            qv = horner_value(b, n, false, z);
        } else {
            const lcplx y = 1.0L / z;
            pv = horner_value(a, n, true, y);
            qv = horner_value(b, n, true, y);
        }
    }
    if (qv == lcplx(0))
        return SpherePoint::infinity();
    return SpherePoint::from(narrow(pv / qv));
}

MobiusMap::MobiusMap(cplx a, cplx b, cplx c, cplx d) : a_(a), b_(b), c_(c), d_(d)
{
    const double scale = std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
    if (!(scale > 0.0) || std::abs(det()) <= 1e-15 * scale * scale)
        throw Error("singular Moebius map");
}

SpherePoint MobiusMap::operator()(const SpherePoint& z) const
{
    if (z.is_infinite()) {
        if (c_ == cplx(0.0, 0.0))
            return SpherePoint::infinity();
        return SpherePoint::from(a_ / c_);
    }
    const cplx w = z.value();
    // For large |w| divide through by w to avoid overflow.
    if (std::abs(w) > 1.0) {
        const cplx iw = 1.0 / w;
        const cplx den = c_ + d_ * iw;
        if (den == cplx(0.0, 0.0))
            return SpherePoint::infinity();
        return SpherePoint::from((a_ + b_ * iw) / den);
    }
    const cplx den = c_ * w + d_;
    if (den == cplx(0.0, 0.0))
        return SpherePoint::infinity();
    return SpherePoint::from((a_ * w + b_) / den);
}

MobiusMap MobiusMap::inverse() const
{
    return MobiusMap(d_, -b_, -c_, a_);
}

MobiusMap operator*(const MobiusMap& f, const MobiusMap& g)
{
    return MobiusMap(f.a_ * g.a_ + f.b_ * g.c_, f.a_ * g.b_ + f.b_ * g.d_, f.c_ * g.a_ + f.d_ * g.c_,
                     f.c_ * g.b_ + f.d_ * g.d_);
}

double MobiusMap::distance_up_to_scale(const MobiusMap& other) const
{
    const cplx x[4] = {a_, b_, c_, d_};
    const cplx y[4] = {other.a_, other.b_, other.c_, other.d_};
    double nx = 0.0, ny = 0.0;
    for (int i = 0; i < 4; ++i) {
        nx += std::norm(x[i]);
        ny += std::norm(y[i]);
    }
    nx = std::sqrt(nx);
    ny = std::sqrt(ny);
    // Best phase s minimizing |x/nx - s y/ny|: s = <y, x> / |<y, x>|.
    cplx inner = 0.0;
    for (int i = 0; i < 4; ++i)
        inner += std::conj(y[i]) * x[i];
    const cplx s = std::abs(inner) > 0.0 ? inner / std::abs(inner) : cplx(1.0, 0.0);
    double m = 0.0;
    for (int i = 0; i < 4; ++i)
        m = std::max(m, std::abs(x[i] / nx - s * y[i] / ny));
    return m;
}

namespace {

// Sends (p1, p2, p3) to (0, infinity, 1).
MobiusMap to_standard(const SpherePoint& p1, const SpherePoint& p2, const SpherePoint& p3)
{
    constexpr double kCoincide = 1e-14;
    if (chordal_distance(p1, p2) < kCoincide || chordal_distance(p1, p3) < kCoincide
        || chordal_distance(p2, p3) < kCoincide)
        throw Error("mobius_from_three_points: coincident points");
    if (p1.is_infinite()) {
        const cplx z2 = p2.value(), z3 = p3.value();
        return MobiusMap(0.0, z3 - z2, 1.0, -z2);
    }
    if (p2.is_infinite()) {
        const cplx z1 = p1.value(), z3 = p3.value();
        return MobiusMap(1.0, -z1, 0.0, z3 - z1);
    }
    if (p3.is_infinite()) {
        const cplx z1 = p1.value(), z2 = p2.value();
        return MobiusMap(1.0, -z1, 1.0, -z2);
    }
    const cplx z1 = p1.value(), z2 = p2.value(), z3 = p3.value();
    return MobiusMap(z3 - z2, -z1 * (z3 - z2), z3 - z1, -z2 * (z3 - z1));
}

} // namespace

MobiusMap mobius_from_three_points(const SpherePoint& z1, const SpherePoint& z2, const SpherePoint& z3,
                                   const SpherePoint& w1, const SpherePoint& w2, const SpherePoint& w3)
{
    return to_standard(w1, w2, w3).inverse() * to_standard(z1, z2, z3);
}

std::vector<Cluster> cluster_points(std::span<const SpherePoint> pts, double tol)
{
    if (!(tol > 0.0))
        throw Error("cluster_points: tolerance must be positive");
    const std::size_t n = pts.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t i) {
        while (parent[i] != i) {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        return i;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (chordal_distance(pts[i], pts[j]) < tol) {
                const std::size_t ri = find(i), rj = find(j);
                if (ri != rj)
                    parent[std::max(ri, rj)] = std::min(ri, rj);
            }

    std::vector<Cluster> out;
    std::vector<long> slot(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t r = find(i);
        if (slot[r] < 0) {
            slot[r] = long(out.size());
            out.push_back({});
        }
        out[std::size_t(slot[r])].members.push_back(i);
    }
    for (Cluster& c : out) {
        std::array<double, 3> acc{0.0, 0.0, 0.0};
        for (std::size_t i : c.members) {
            const auto v = pts[i].to_unit_vector();
            for (int k = 0; k < 3; ++k)
                acc[k] += v[k];
        }
        c.representative = SpherePoint::from_unit_vector(acc);
        if (c.members.size() == 1)
            c.representative = pts[c.members.front()];
    }
    return out;
}

FitResult fit_rational(std::span<const Sample> samples, int degree, const FitOptions& opt)
{
    std::vector<ExtSample> ext;
    ext.reserve(samples.size());
    for (const Sample& s : samples)
        ext.push_back({ExtSpherePoint::of(s.x), ExtSpherePoint::of(s.y)});
    return fit_rational(std::span<const ExtSample>(ext), degree, opt);
}

FitResult fit_rational(std::span<const ExtSample> samples, int degree, const FitOptions& opt)
{
    if (degree < 1)
        throw Error("fit_rational: degree must be positive");
    const int n = degree;
    const int cols = 2 * (n + 1);
    const Eigen::Index rows = Eigen::Index(samples.size());
    if (samples.size() < std::size_t(2 * cols))
        throw Error("fit_rational: need at least 2 (2 degree + 2) samples");

    // Dilation preconditioner: geometric mean of the finite nonzero |x|.
    ld log_sum = 0;
    int log_count = 0;
    for (const ExtSample& s : samples)
        if (!s.x.inf && s.x.z != lcplx(0)) {
            log_sum += std::log(std::abs(s.x.z));
            ++log_count;
        }
    const ld sigma = log_count > 0 ? std::exp(log_sum / log_count) : 1.0L;

    // Row r is [pf pw | qf pw] with pw the powers of x / sigma (divided by
    // (x / sigma)^n when |x| > sigma) and (pf, qf) = (1, -y), (1/y, -1) or
    // (0, -1) by the size of y.
    using Mat = Eigen::Matrix<lcplx, Eigen::Dynamic, Eigen::Dynamic>;
    using Vec = Eigen::Matrix<lcplx, Eigen::Dynamic, 1>;
    Mat pw = Mat::Zero(rows, n + 1);
    std::vector<lcplx> pf(samples.size(), 1), qf(samples.size(), 0);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const ExtSample& s = samples[std::size_t(r)];
        if (s.x.inf) {
            pw(r, n) = 1;
        } else {
            const lcplx t = s.x.z / sigma;
            if (std::abs(t) <= 1.0L) {
                lcplx v = 1;
                for (int j = 0; j <= n; ++j, v *= t)
                    pw(r, j) = v;
            } else {
                const lcplx it = 1.0L / t;
                lcplx v = 1;
                for (int j = n; j >= 0; --j, v *= it)
                    pw(r, j) = v;
            }
        }
        if (s.y.inf) {
            pf[r] = 0;
            qf[r] = -1;
        } else if (std::abs(s.y.z) <= 1.0L) {
            qf[r] = -s.y.z;
        } else {
            pf[r] = 1.0L / s.y.z;
            qf[r] = -1;
        }
    }

    auto solve = [&](const std::vector<ld>& weight, Vec& coef, ld& smin, ld& gap) {
        Mat A(rows, cols);
        for (Eigen::Index r = 0; r < rows; ++r)
            for (int j = 0; j <= n; ++j) {
                A(r, j) = weight[r] * pf[r] * pw(r, j);
                A(r, n + 1 + j) = weight[r] * qf[r] * pw(r, j);
            }
        std::vector<ld> colnorm(cols, 1);
        for (int j = 0; j < cols; ++j) {
            const ld cn = A.col(j).norm();
            if (cn > 0) {
                colnorm[j] = cn;
                A.col(j) /= cn;
            }
        }
        Eigen::JacobiSVD<Mat> svd(A, Eigen::ComputeFullV);
        const auto& sv = svd.singularValues();
        coef = svd.matrixV().col(cols - 1);
        for (int j = 0; j < cols; ++j)
            coef(j) /= colnorm[j];
        smin = sv(cols - 1);
        gap = sv(cols - 1) > 0 ? sv(cols - 2) / sv(cols - 1) : std::numeric_limits<ld>::infinity();
    };

    auto finish = [&](const Vec& c, ld smin, ld gap) {
        std::vector<lcplx> coef(cols);
        for (int j = 0; j <= n; ++j) {
            const ld sp = std::pow(sigma, ld(j));
            coef[j] = c(j) / sp;
            coef[n + 1 + j] = c(n + 1 + j) / sp;
        }
        ld cmax = 0;
        for (const auto& v : coef)
            cmax = std::max(cmax, std::abs(v));
        std::vector<cplx> num(n + 1), den(n + 1);
        for (int j = 0; j <= n; ++j) {
            num[j] = narrow(coef[j] / cmax);
            den[j] = narrow(coef[n + 1 + j] / cmax);
        }
        FitResult out;
        out.num = Poly(std::move(num));
        out.den = Poly(std::move(den));
        out.smallest_singular = double(smin);
        out.singular_gap = double(gap);
        if (out.den.is_zero()) {
            out.residual = std::numeric_limits<double>::infinity();
            return out;
        }
        for (const ExtSample& s : samples)
            out.residual = std::max(out.residual,
                                    chordal_distance(evaluate_rational(out.num, out.den, s.x.narrow()), s.y.narrow()));
        return out;
    };

    // First pass with unit rows; then reweight each row by 1 / |(P, Q)| at its
    // sample so the algebraic residual tracks the chordal misfit.
    std::vector<ld> weight(samples.size());
    for (Eigen::Index r = 0; r < rows; ++r) {
        const ld rn = std::sqrt((std::norm(pf[r]) + std::norm(qf[r])) * pw.row(r).squaredNorm());
        weight[r] = rn > 0 ? 1.0L / rn : 1.0L;
    }
    Vec c;
    ld smin = 0, gap = 0;
    solve(weight, c, smin, gap);
    FitResult best = finish(c, smin, gap);
    for (int pass = 0; pass < 3; ++pass) {
        const Vec pv = pw * c.head(n + 1);
        const Vec qv = pw * c.tail(n + 1);
        bool usable = true;
        for (Eigen::Index r = 0; r < rows; ++r) {
            const ld m = std::sqrt(std::norm(pv(r)) + std::norm(qv(r)));
            if (!(m > 0) || !std::isfinite(m)) {
                usable = false;
                break;
            }
            weight[r] = 1.0L / m;
        }
        if (!usable)
            break;
        // Keep the weights on a sane scale for the SVD.
        const ld wmax = *std::max_element(weight.begin(), weight.end());
        for (ld& w : weight)
            w /= wmax;
        solve(weight, c, smin, gap);
        FitResult next = finish(c, smin, gap);
        if (!(next.residual < best.residual))
            break;
        best = std::move(next);
    }

    if (best.den.is_zero())
        throw Error("samples not rational of this degree (vanishing denominator)");
    const double tol = opt.residual_tol * tolerance_scale();
    if (!(best.residual <= tol)) {
        std::ostringstream msg;
        msg << "samples not rational of this degree (residual " << best.residual << " > " << tol << ")";
        throw Error(msg.str());
    }
    return best;
}

} // namespace zolo
