#pragma once

// Per-cell check that a (lattice, sublattice) pair yields a twisted
// Zolotarev fraction with the expected critical data. Shared by the
// command-line tool and the acceptance runner.

#include "zolo/fraction.hpp"

#include <string>
#include <vector>

namespace zolo {

struct SweepLattice {
    std::string name;
    Lattice lattice;
};

// generic tau = 0.3 + 1.1i, square tau = i, hexagonal tau = exp(i pi / 3).
std::vector<SweepLattice> standard_sweep_lattices();

struct SweepCell {
    std::string lattice;
    HnfSublattice sublattice;
    int degree = 0;
    bool exceptional = false;

    int critical_points = 0;
    int clusters = 0;
    int fiber_count = 0;
    double min_separation = 0.0;
    bool all_simple = false;
    double fit_residual = 0.0;
    double j_error = -1.0; // |j(values) - j(lattice)|; -1 without 4 clusters
    std::string error;     // set if construction threw

    bool pass = false;
};

// Expected: 4 clusters, 2n - 2 simple points, fiber count 4 and
// j error <= 1e-8 (scaled); index 2 -> 2 clusters; M = 2L -> 3 clusters.
SweepCell check_cell(const SweepLattice& lat, const HnfSublattice& m, std::uint64_t seed = kDefaultSeed);

// All HNF sublattices of index in [lo, hi] over the given lattices, in
// (lattice, index, HNF) order. Cells run on `threads` workers (0 = hardware
// concurrency); the result order does not depend on the thread count.
std::vector<SweepCell> theorem1_sweep(const std::vector<SweepLattice>& lattices, int lo, int hi,
                                      std::uint64_t seed = kDefaultSeed, unsigned threads = 0);

} // namespace zolo
