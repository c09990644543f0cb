#include "zolo/sweep.hpp"

#include "zolo/error.hpp"

#include <atomic>
#include <numbers>
#include <thread>

namespace zolo {

namespace {

constexpr double kJTol = 1e-8;

} // namespace

std::vector<SweepLattice> standard_sweep_lattices()
{
    return {{"generic", Lattice(1.0, cplx(0.3, 1.1))},
            {"square", Lattice(1.0, cplx(0.0, 1.0))},
            {"hexagonal", Lattice(1.0, std::polar(1.0, std::numbers::pi / 3))}};
}

SweepCell check_cell(const SweepLattice& lat, const HnfSublattice& m, std::uint64_t seed)
{
    SweepCell c;
    c.lattice = lat.name;
    c.sublattice = m;
    c.degree = int(m.index());
    c.exceptional = is_exceptional(m);
    try {
        const RationalMap r = build_fraction(lat.lattice, m, seed);
        c.fit_residual = r.fit_residual;
        const CriticalData cd = critical_data(r);
        c.critical_points = int(cd.critical_points.size());
        c.clusters = int(cd.value_clusters.size());
        c.min_separation = cd.min_separation;
        c.all_simple = cd.all_simple;
        c.fiber_count = noncritical_fiber_count(r, cd);
        if (cd.j) {
            const cplx jl = j_invariant(cross_ratio(lattice_branch_set(lat.lattice)));
            c.j_error = std::abs(*cd.j - jl);
        }
    } catch (const Error& e) {
        c.error = e.what();
        return c;
    }
    if (c.degree == 2)
        c.pass = c.clusters == 2;
    else if (c.exceptional)
        c.pass = c.clusters == 3;
    else
        c.pass = c.clusters == 4 && c.critical_points == 2 * c.degree - 2 && c.all_simple && c.fiber_count == 4
                 && c.j_error >= 0.0 && c.j_error <= kJTol * tolerance_scale();
    return c;
}

std::vector<SweepCell> theorem1_sweep(const std::vector<SweepLattice>& lattices, int lo, int hi, std::uint64_t seed,
                                      unsigned threads)
{
    if (lo < 2 || hi < lo)
        throw Error("theorem1_sweep: need 2 <= lo <= hi");
    struct Job {
        const SweepLattice* lat;
        HnfSublattice m;
    };
    std::vector<Job> jobs;
    for (const auto& lat : lattices)
        for (int n = lo; n <= hi; ++n)
            for (const auto& m : hnf_sublattices(n))
                jobs.push_back({&lat, m});

    std::vector<SweepCell> out(jobs.size());
    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, unsigned(jobs.size()));
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < jobs.size();)
            out[i] = check_cell(*jobs[i].lat, jobs[i].m, seed);
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t)
        pool.emplace_back(work);
    work();
    for (auto& t : pool)
        t.join();
    return out;
}

} // namespace zolo
