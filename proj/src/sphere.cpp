#include "zolo/sphere.hpp"

#include "zolo/error.hpp"

#include <cmath>
#include <cstdlib>
#include <ostream>

namespace zolo {

double tolerance_scale()
{
    static const double scale = [] {
        const char* env = std::getenv("ZK_TOLERANCE_SCALE");
        if (env == nullptr || *env == '\0')
            return 1.0;
        char* end = nullptr;
        const double v = std::strtod(env, &end);
        if (end == env || !(v > 0.0) || !std::isfinite(v))
            return 1.0;
        return v;
    }();
    return scale;
}

SpherePoint SpherePoint::from(cplx z)
{
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        return infinity();
    return SpherePoint(z);
}

ExtSpherePoint ExtSpherePoint::from(lcplx z)
{
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        return infinity();
    return {z, false};
}

ExtSpherePoint ExtSpherePoint::of(const SpherePoint& p)
{
    if (p.is_infinite())
        return infinity();
    return {{p.value().real(), p.value().imag()}, false};
}

SpherePoint ExtSpherePoint::narrow() const
{
    if (inf)
        return SpherePoint::infinity();
    return SpherePoint::from({double(z.real()), double(z.imag())});
}

std::array<double, 3> SpherePoint::to_unit_vector() const
{
    if (inf_)
        return {0.0, 0.0, 1.0};
    const double r2 = std::norm(z_);
    if (!std::isfinite(r2))
        return {0.0, 0.0, 1.0};
    const double d = 1.0 + r2;
    return {2.0 * z_.real() / d, 2.0 * z_.imag() / d, (r2 - 1.0) / d};
}

SpherePoint SpherePoint::from_unit_vector(const std::array<double, 3>& v)
{
    const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    if (n == 0.0)
        return SpherePoint(0.0);
    const double x = v[0] / n, y = v[1] / n, h = v[2] / n;
    // Invert from whichever pole is farther away to avoid cancellation.
    if (h <= 0.0)
        return SpherePoint(cplx(x, y) / (1.0 - h));
    const cplx w = cplx(x, -y) / (1.0 + h); // 1/z
    if (w == cplx(0.0, 0.0))
        return infinity();
    return SpherePoint(1.0 / w);
}

SpherePoint SpherePoint::reciprocal() const
{
    if (inf_)
        return SpherePoint(0.0);
    if (z_ == cplx(0.0, 0.0))
        return infinity();
    return from(1.0 / z_);
}

double chordal_distance(const SpherePoint& a, const SpherePoint& b)
{
    if (a.is_infinite() && b.is_infinite())
        return 0.0;
    if (a.is_infinite())
        return 2.0 / std::sqrt(1.0 + std::norm(b.value()));
    if (b.is_infinite())
        return 2.0 / std::sqrt(1.0 + std::norm(a.value()));
    const cplx z = a.value(), w = b.value();
    // Both large: compare reciprocals, which keeps precision near infinity.
    if (std::abs(z) > 1.0 && std::abs(w) > 1.0) {
        const cplx iz = 1.0 / z, iw = 1.0 / w;
        return 2.0 * std::abs(iz - iw) / std::sqrt((1.0 + std::norm(iz)) * (1.0 + std::norm(iw)));
    }
    return 2.0 * std::abs(z - w) / std::sqrt((1.0 + std::norm(z)) * (1.0 + std::norm(w)));
}

std::ostream& operator<<(std::ostream& os, const SpherePoint& p)
{
    if (p.is_infinite())
        return os << "inf";
    return os << p.value();
}

} // namespace zolo
