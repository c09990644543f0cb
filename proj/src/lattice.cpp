#include "zolo/lattice.hpp"

#include "zolo/error.hpp"

#include <algorithm>
#include <cstdlib>
#include <ostream>
#include <set>
#include <string>

namespace zolo {

namespace {

std::int64_t checked_mul(std::int64_t x, std::int64_t y)
{
    std::int64_t r = 0;
    if (__builtin_mul_overflow(x, y, &r))
        throw Error("integer overflow in lattice arithmetic");
    return r;
}

std::int64_t checked_add(std::int64_t x, std::int64_t y)
{
    std::int64_t r = 0;
    if (__builtin_add_overflow(x, y, &r))
        throw Error("integer overflow in lattice arithmetic");
    return r;
}

std::int64_t checked_sub(std::int64_t x, std::int64_t y)
{
    std::int64_t r = 0;
    if (__builtin_sub_overflow(x, y, &r))
        throw Error("integer overflow in lattice arithmetic");
    return r;
}

std::int64_t floor_mod(std::int64_t x, std::int64_t m)
{
    const std::int64_t r = x % m;
    return r < 0 ? r + m : r;
}

std::int64_t isqrt(std::int64_t n)
{
    std::int64_t r = 0;
    while ((r + 1) * (r + 1) <= n)
        ++r;
    return r;
}

void require_positive(std::int64_t n, const char* what)
{
    if (n < 1)
        throw Error(std::string(what) + ": argument must be a positive integer");
}

} // namespace

std::int64_t IntMatrix2::det() const
{
    return checked_sub(checked_mul(a, d), checked_mul(b, c));
}

IntMatrix2 operator*(const IntMatrix2& x, const IntMatrix2& y)
{
    return {checked_add(checked_mul(x.a, y.a), checked_mul(x.b, y.c)),
            checked_add(checked_mul(x.a, y.b), checked_mul(x.b, y.d)),
            checked_add(checked_mul(x.c, y.a), checked_mul(x.d, y.c)),
            checked_add(checked_mul(x.c, y.b), checked_mul(x.d, y.d))};
}

HnfSublattice::HnfSublattice(std::int64_t p_, std::int64_t l_, std::int64_t q_) : p(p_), l(l_), q(q_)
{
    if (p < 1 || q < 1 || l < 0 || l >= q)
        throw Error("invalid Hermite normal form: need p >= 1, q >= 1, 0 <= l < q");
}

const char* to_string(LatticeSymmetry s)
{
    switch (s) {
    case LatticeSymmetry::Generic:
        return "generic";
    case LatticeSymmetry::Square:
        return "square";
    case LatticeSymmetry::Hexagonal:
        return "hexagonal";
    }
    return "?";
}

std::ostream& operator<<(std::ostream& os, const HnfSublattice& s)
{
    return os << '(' << s.p << ',' << s.l << ',' << s.q << ')';
}

HnfSublattice hnf_reduce(const IntMatrix2& m)
{
    if (m.det() == 0)
        throw Error("rank-deficient sublattice");

    // Row reduce the first column with the Euclidean algorithm.
    std::int64_t r1[2] = {m.a, m.b};
    std::int64_t r2[2] = {m.c, m.d};
    while (r2[0] != 0) {
        const std::int64_t k = r1[0] / r2[0];
        r1[0] = checked_sub(r1[0], checked_mul(k, r2[0]));
        r1[1] = checked_sub(r1[1], checked_mul(k, r2[1]));
        std::swap(r1, r2);
    }
    if (r1[0] < 0) {
        r1[0] = -r1[0];
        r1[1] = -r1[1];
    }
    const std::int64_t q = std::abs(r2[1]);
    return HnfSublattice(r1[0], floor_mod(r1[1], q), q);
}

bool lattice_contains(const IntMatrix2& basis, std::int64_t x, std::int64_t y)
{
    // Solve (s, t) * basis = (x, y) by Cramer's rule; integral iff in lattice.
    const std::int64_t det = basis.det();
    if (det == 0)
        throw Error("rank-deficient sublattice");
    const std::int64_t s_num = checked_sub(checked_mul(x, basis.d), checked_mul(y, basis.c));
    const std::int64_t t_num = checked_sub(checked_mul(y, basis.a), checked_mul(x, basis.b));
    return s_num % det == 0 && t_num % det == 0;
}

std::vector<HnfSublattice> hnf_sublattices(std::int64_t n)
{
    require_positive(n, "hnf_sublattices");
    std::vector<HnfSublattice> out;
    for (std::int64_t p = 1; p <= n; ++p) {
        if (n % p != 0)
            continue;
        const std::int64_t q = n / p;
        for (std::int64_t l = 0; l < q; ++l)
            out.emplace_back(p, l, q);
    }
    return out;
}

std::int64_t sigma1(std::int64_t n)
{
    require_positive(n, "sigma1");
    std::int64_t sum = 0;
    for (std::int64_t d = 1; d * d <= n; ++d) {
        if (n % d != 0)
            continue;
        sum = checked_add(sum, d);
        if (d != n / d)
            sum = checked_add(sum, n / d);
    }
    return sum;
}

std::int64_t s2(std::int64_t n)
{
    require_positive(n, "s2");
    std::int64_t count = 0;
    for (std::int64_t p = 1; p * p <= n; ++p) {
        const std::int64_t rest = n - p * p;
        const std::int64_t q = isqrt(rest);
        if (q * q == rest)
            ++count;
    }
    return count;
}

std::int64_t hex_h(std::int64_t n)
{
    require_positive(n, "hex_h");
    std::int64_t count = 0;
    for (std::int64_t p = 1; p * p <= n; ++p) {
        // q^2 + p q + p^2 - n = 0, q >= 0
        const std::int64_t disc = 4 * n - 3 * p * p;
        if (disc < 0)
            continue;
        const std::int64_t s = isqrt(disc);
        if (s * s != disc || (s - p) < 0 || (s - p) % 2 != 0)
            continue;
        ++count;
    }
    return count;
}

HnfSublattice rotate_sublattice(const HnfSublattice& s, LatticeSymmetry sym)
{
    // Coordinates (x, y) of x + y w2 after multiplication by the unit.
    auto rot = [sym](std::int64_t x, std::int64_t y) -> std::pair<std::int64_t, std::int64_t> {
        if (sym == LatticeSymmetry::Square)
            return {checked_sub(0, y), x}; // i (x + y i) = -y + x i
        return {checked_sub(0, y), checked_add(x, y)}; // eps (x + y eps) = -y + (x + y) eps
    };
    if (sym == LatticeSymmetry::Generic)
        throw Error("no rotation symmetry");
    const auto [a, b] = rot(s.p, s.l);
    const auto [c, d] = rot(0, s.q);
    return hnf_reduce({a, b, c, d});
}

HnfSublattice canonical_representative(const HnfSublattice& s, LatticeSymmetry sym)
{
    if (sym == LatticeSymmetry::Generic)
        return s;
    HnfSublattice best = s;
    HnfSublattice cur = rotate_sublattice(s, sym);
    while (cur != s) {
        best = std::min(best, cur);
        cur = rotate_sublattice(cur, sym);
    }
    return best;
}

std::int64_t orbit_count_bruteforce(std::int64_t n, LatticeSymmetry sym)
{
    require_positive(n, "orbit_count_bruteforce");
    if (sym == LatticeSymmetry::Generic)
        return sigma1(n);
    std::set<HnfSublattice> reps;
    for (const auto& s : hnf_sublattices(n))
        reps.insert(canonical_representative(s, sym));
    return static_cast<std::int64_t>(reps.size());
}

bool is_exceptional(const HnfSublattice& s)
{
    return s.index() == 2 || (s.p == 2 && s.l == 0 && s.q == 2);
}

std::int64_t orbit_count_formula(std::int64_t n, LatticeSymmetry sym)
{
    switch (sym) {
    case LatticeSymmetry::Generic:
        return sigma1(n);
    case LatticeSymmetry::Square:
        return (sigma1(n) + s2(n)) / 2;
    case LatticeSymmetry::Hexagonal:
        return (sigma1(n) + 2 * hex_h(n)) / 3;
    }
    return 0;
}

std::int64_t class_count(std::int64_t n, LatticeSymmetry sym)
{
    if (n < 3)
        throw Error("degree below twisted-Zolotarev range");
    // At n = 4 the sublattice 2L is rotation invariant and exceptional.
    return orbit_count_formula(n, sym) - (n == 4 ? 1 : 0);
}

} // namespace zolo
