#pragma once

#include <array>
#include <complex>
#include <iosfwd>

namespace zolo {

using cplx = std::complex<double>;

// A point of the Riemann sphere: a finite complex number or infinity.
class SpherePoint {
public:
    constexpr SpherePoint() = default;
    constexpr SpherePoint(cplx z) : z_(z) {}
    constexpr SpherePoint(double x) : z_(x, 0.0) {}

    static constexpr SpherePoint infinity()
    {
        SpherePoint p;
        p.inf_ = true;
        return p;
    }

    // Non-finite complex values (overflow, division by zero) map to infinity.
    static SpherePoint from(cplx z);

    constexpr bool is_infinite() const { return inf_; }
    constexpr bool is_finite() const { return !inf_; }

    // Finite value; meaningless when is_infinite().
    constexpr cplx value() const { return z_; }

    // Unit vector of the stereographic image on S^2.
    std::array<double, 3> to_unit_vector() const;
    static SpherePoint from_unit_vector(const std::array<double, 3>& v);

    // Reciprocal 1/z with 0 <-> infinity.
    SpherePoint reciprocal() const;

    friend bool operator==(const SpherePoint& a, const SpherePoint& b)
    {
        if (a.inf_ || b.inf_)
            return a.inf_ == b.inf_;
        return a.z_ == b.z_;
    }

private:
    cplx z_{0.0, 0.0};
    bool inf_ = false;
};

// Extended-precision carrier for sampled data, where double rounding of the
// samples themselves would limit fit accuracy.
using lcplx = std::complex<long double>;

struct ExtSpherePoint {
    lcplx z{0.0L, 0.0L};
    bool inf = false;

    static ExtSpherePoint infinity() { return {{0.0L, 0.0L}, true}; }
    // Non-finite values map to infinity.
    static ExtSpherePoint from(lcplx z);
    static ExtSpherePoint of(const SpherePoint& p);
    SpherePoint narrow() const;
};

// Chordal distance on the unit-diameter-2 sphere: 2|z-w| / sqrt((1+|z|^2)(1+|w|^2)).
// Values lie in [0, 2].
double chordal_distance(const SpherePoint& a, const SpherePoint& b);

std::ostream& operator<<(std::ostream& os, const SpherePoint& p);

} // namespace zolo
