#pragma once

// Exact integer combinatorics of sublattices of a rank-2 lattice.
//
// A sublattice M of L = Z w1 + Z w2 is written by an integer matrix whose rows
// are the coordinates of a basis of M in (w1, w2). Changing the basis of M
// multiplies that matrix on the left by a unimodular matrix; every left class
// holds exactly one Hermite normal form
//
//     | p  l |
//     | 0  q |      p, q > 0,  0 <= l < q,  index = p q,
//
// i.e. M = Z (p w1 + l w2) + Z (q w2).

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <vector>

namespace zolo {

struct IntMatrix2 {
    std::int64_t a = 1, b = 0, c = 0, d = 1;

    std::int64_t det() const;

    static IntMatrix2 identity() { return {}; }
    friend IntMatrix2 operator*(const IntMatrix2& x, const IntMatrix2& y);
    friend bool operator==(const IntMatrix2&, const IntMatrix2&) = default;
};

struct HnfSublattice {
    std::int64_t p = 1;
    std::int64_t l = 0;
    std::int64_t q = 1;

    // Throws zolo::Error unless p >= 1, q >= 1 and 0 <= l < q.
    HnfSublattice(std::int64_t p, std::int64_t l, std::int64_t q);
    HnfSublattice() = default;

    std::int64_t index() const { return p * q; }
    IntMatrix2 matrix() const { return {p, l, 0, q}; }

    friend auto operator<=>(const HnfSublattice&, const HnfSublattice&) = default;
};

enum class LatticeSymmetry { Generic, Square, Hexagonal };

const char* to_string(LatticeSymmetry s);
std::ostream& operator<<(std::ostream& os, const HnfSublattice& s);

// Unique HNF of the left-unimodular class of m. Throws on det(m) == 0.
HnfSublattice hnf_reduce(const IntMatrix2& m);

// Does the integer vector (x, y) lie in the row lattice of `basis`?
// Exact 2x2 elimination; basis must be nonsingular.
bool lattice_contains(const IntMatrix2& basis, std::int64_t x, std::int64_t y);

// All index-n sublattices, lexicographic in (p, l, q). Length sigma1(n).
std::vector<HnfSublattice> hnf_sublattices(std::int64_t n);

std::int64_t sigma1(std::int64_t n);

// #{(p, q) : p > 0, q >= 0, p^2 + q^2 = n}
std::int64_t s2(std::int64_t n);

// #{(p, q) : p > 0, q >= 0, p^2 + p q + q^2 = n}
std::int64_t hex_h(std::int64_t n);

// HNF of i M (Square, ambient basis {1, i}) or eps M (Hexagonal, ambient
// basis {1, eps}, eps = exp(i pi / 3), eps^2 = eps - 1).
HnfSublattice rotate_sublattice(const HnfSublattice& s, LatticeSymmetry sym);

// Smallest HNF triple in the rotation orbit of s; s itself for Generic.
HnfSublattice canonical_representative(const HnfSublattice& s, LatticeSymmetry sym);

// Number of rotation orbits among the index-n sublattices.
std::int64_t orbit_count_bruteforce(std::int64_t n, LatticeSymmetry sym);

// Index 2, or M = 2L.
bool is_exceptional(const HnfSublattice& s);

// Closed-form orbit counts, valid for every n >= 1.
std::int64_t orbit_count_formula(std::int64_t n, LatticeSymmetry sym);

// Number of classes of twisted Zolotarev fractions of degree n >= 3 whose
// critical values have the j-invariant of `sym`.
std::int64_t class_count(std::int64_t n, LatticeSymmetry sym);

} // namespace zolo
