// zk: counting, enumeration, construction and verification of twisted
// Zolotarev fractions. One JSON document per run (or CSV for tables).
//
// Exit codes: 0 all checks pass, 1 verification failure, 2 usage error.

#include "CLI11.hpp"
#include "json.hpp"

#include "zolo/error.hpp"
#include "zolo/fraction.hpp"
#include "zolo/sweep.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <regex>
#include <set>
#include <sstream>

using json = nlohmann::ordered_json;
using namespace zolo;

namespace {

constexpr const char* kSchema = "zk/1";

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

// Documented tolerances before ZK_TOLERANCE_SCALE.
constexpr double kCdTol = 1e-10;
constexpr double kClassmateTol = 1e-9;
constexpr double kFitVerifyTol = 1e-8;
constexpr double kJTol = 1e-8;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------- parsing

cplx parse_tau(const std::string& text)
{
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c)))
            s += c;
    static const std::regex num(R"([+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?)");
    static const std::regex imag(R"(([+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?|[+-]?)\*?[ij])");
    static const std::regex both(
        R"(([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)([+-](?:(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?)\*?[ij])");
    auto coeff = [](const std::string& c) {
        if (c.empty() || c == "+")
            return 1.0;
        if (c == "-")
            return -1.0;
        return std::stod(c);
    };
    std::smatch m;
    if (std::regex_match(s, m, both))
        return {std::stod(m[1]), coeff(m[2])};
    if (std::regex_match(s, m, imag))
        return {0.0, coeff(m[1])};
    if (std::regex_match(s, m, num))
        return {std::stod(s), 0.0};
    throw UsageError("cannot parse tau '" + text + "' (expected a+bi, bi or i)");
}

std::pair<int, int> parse_range(const std::string& text, int min)
{
    static const std::regex range(R"((\d+)(?:\.\.(\d+))?)");
    std::smatch m;
    if (!std::regex_match(text, m, range))
        throw UsageError("cannot parse range '" + text + "' (expected N or A..B)");
    const int lo = std::stoi(m[1]);
    const int hi = m[2].matched ? std::stoi(m[2]) : lo;
    if (lo < min || hi < lo)
        throw UsageError("invalid range '" + text + "': need " + std::to_string(min) + " <= A <= B");
    return {lo, hi};
}

LatticeSymmetry parse_symmetry(const std::string& s)
{
    if (s == "generic")
        return LatticeSymmetry::Generic;
    if (s == "square" || s == "1")
        return LatticeSymmetry::Square;
    if (s == "hexagonal" || s == "hex" || s == "0")
        return LatticeSymmetry::Hexagonal;
    throw UsageError("unknown symmetry '" + s + "' (generic, square, hexagonal)");
}

// Refuses tau where the q-series cannot be trusted.
Tau safe_tau(cplx t, const std::string& label)
{
    std::ostringstream why;
    if (!(t.imag() > 0.0)) {
        why << label << " = " << t << " is not in the upper half-plane";
        throw UsageError(why.str());
    }
    if (t.imag() < kMinImTau) {
        why << label << " = " << t << " is outside the numerically safe region (Im < " << kMinImTau << ")";
        throw UsageError(why.str());
    }
    Tau tau(t);
    try {
        (void)theta_constants(tau);
    } catch (const Error& e) {
        why << label << " = " << t << " is outside the numerically safe region (" << e.what() << ")";
        throw UsageError(why.str());
    }
    return tau;
}

// The four critical values must be told apart after clustering; near the
// ends of the tau range two of them merge (k -> 1 or k -> 0).
void require_resolvable(cplx a, cplx b, const std::string& what)
{
    const std::array<SpherePoint, 4> v{SpherePoint(a), SpherePoint(-a), SpherePoint::from(b), SpherePoint::from(-b)};
    double sep = 2.0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            sep = std::min(sep, chordal_distance(v[i], v[j]));
    if (!(sep > kSimpleSeparation)) {
        std::ostringstream why;
        why << what << ": critical values are not resolvable at this tau (chordal separation " << sep << " <= "
            << kSimpleSeparation << ")";
        throw UsageError(why.str());
    }
}

// ---------------------------------------------------------------- output

json cj(cplx z) { return json::array({z.real(), z.imag()}); }

json sj(const SpherePoint& p) { return p.is_infinite() ? json("inf") : cj(p.value()); }

json poly_json(const Poly& p)
{
    json a = json::array();
    for (cplx c : p.coeffs())
        a.push_back(cj(c));
    return a;
}

const char* sym_name(LatticeSymmetry s) { return to_string(s); }

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

std::string csv_cell(const json& v)
{
    if (v.is_string())
        return v.get<std::string>();
    if (v.is_null())
        return "";
    std::string s = v.dump();
    if (s.find(',') != std::string::npos)
        s = "\"" + s + "\"";
    return s;
}

Table table_from(const json& rows)
{
    Table t;
    for (const auto& row : rows) {
        if (t.header.empty())
            for (auto it = row.begin(); it != row.end(); ++it)
                t.header.push_back(it.key());
        std::vector<std::string> cells;
        for (const auto& k : t.header)
            cells.push_back(row.contains(k) ? csv_cell(row[k]) : "");
        t.rows.push_back(std::move(cells));
    }
    return t;
}

struct Common {
    std::string format = "json";
    std::string out;
    std::uint64_t seed = kDefaultSeed;
    bool timing = false;
};

json envelope(const std::string& command, json params)
{
    json doc;
    doc["schema"] = kSchema;
    doc["command"] = command;
    doc["parameters"] = std::move(params);
    return doc;
}

json tolerance_block(std::initializer_list<std::pair<const char*, double>> base)
{
    const double s = tolerance_scale();
    json t;
    t["scale"] = s;
    for (const auto& [name, v] : base)
        t[name] = v * s;
    return t;
}

void write(const Common& c, const json& doc, const std::optional<json>& rows)
{
    std::ostringstream os;
    if (c.format == "csv") {
        if (!rows)
            throw UsageError("--format csv is only available for tabular output (count, enumerate, theorem1-sweep)");
        const Table t = table_from(*rows);
        for (std::size_t i = 0; i < t.header.size(); ++i)
            os << (i ? "," : "") << t.header[i];
        os << "\n";
        for (const auto& r : t.rows) {
            for (std::size_t i = 0; i < r.size(); ++i)
                os << (i ? "," : "") << r[i];
            os << "\n";
        }
    } else {
        os << doc.dump(2) << "\n";
    }
    if (c.out.empty()) {
        std::cout << os.str();
        return;
    }
    std::ofstream f(c.out);
    if (!f)
        throw UsageError("cannot open output file '" + c.out + "'");
    f << os.str();
}

class Stopwatch {
public:
    double seconds() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
    }

private:
    std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

void finish(const Common& c, json& doc, bool pass, const Stopwatch& sw, const std::optional<json>& rows)
{
    doc["pass"] = pass;
    if (c.timing)
        doc["elapsed_seconds"] = sw.seconds();
    write(c, doc, rows);
}

// ---------------------------------------------------------------- commands

struct CountArgs {
    std::string degree;
    std::string j = "generic";
    bool all_j = false;
    bool check = false;
};

std::int64_t brute_class_count(std::int64_t n, LatticeSymmetry sym)
{
    std::set<HnfSublattice> reps;
    for (const auto& s : hnf_sublattices(n))
        if (!is_exceptional(s))
            reps.insert(canonical_representative(s, sym));
    return std::int64_t(reps.size());
}

int cmd_count(const Common& c, const CountArgs& a)
{
    Stopwatch sw;
    const auto [lo, hi] = parse_range(a.degree, 3);
    std::vector<LatticeSymmetry> syms;
    if (a.all_j)
        syms = {LatticeSymmetry::Hexagonal, LatticeSymmetry::Square, LatticeSymmetry::Generic};
    else
        syms = {parse_symmetry(a.j)};

    json rows = json::array();
    bool pass = true;
    for (int n = lo; n <= hi; ++n)
        for (auto sym : syms) {
            json r;
            r["degree"] = n;
            r["symmetry"] = sym_name(sym);
            r["sigma1"] = sigma1(n);
            r["s2"] = s2(n);
            r["h"] = hex_h(n);
            r["orbits_formula"] = orbit_count_formula(n, sym);
            r["orbits_bruteforce"] = orbit_count_bruteforce(n, sym);
            r["classes"] = class_count(n, sym);
            bool ok = r["orbits_formula"] == r["orbits_bruteforce"];
            if (a.check) {
                r["classes_bruteforce"] = brute_class_count(n, sym);
                ok = ok && r["classes"] == r["classes_bruteforce"];
            }
            r["agree"] = ok;
            pass = pass && ok;
            rows.push_back(std::move(r));
        }

    json params;
    params["degree"] = {lo, hi};
    json sj_arr = json::array();
    for (auto s : syms)
        sj_arr.push_back(sym_name(s));
    params["symmetries"] = sj_arr;
    params["check"] = a.check;
    json doc = envelope("count", params);
    doc["tolerances"] = tolerance_block({});
    doc["results"] = rows;
    finish(c, doc, pass, sw, rows);
    return pass ? kExitPass : kExitFail;
}

int cmd_enumerate(const Common& c, int n)
{
    Stopwatch sw;
    if (n < 1)
        throw UsageError("enumerate: index must be at least 1");
    const auto subs = hnf_sublattices(n);
    auto orbit_ids = [&](LatticeSymmetry sym) {
        std::map<HnfSublattice, int> id;
        std::vector<int> out;
        for (const auto& s : subs) {
            const auto rep = canonical_representative(s, sym);
            auto it = id.find(rep);
            if (it == id.end())
                it = id.emplace(rep, int(id.size())).first;
            out.push_back(it->second);
        }
        return out;
    };
    const auto sq = orbit_ids(LatticeSymmetry::Square);
    const auto hx = orbit_ids(LatticeSymmetry::Hexagonal);
    json rows = json::array();
    for (std::size_t i = 0; i < subs.size(); ++i) {
        json r;
        r["p"] = subs[i].p;
        r["l"] = subs[i].l;
        r["q"] = subs[i].q;
        r["exceptional"] = is_exceptional(subs[i]);
        r["square_orbit"] = sq[i];
        r["hexagonal_orbit"] = hx[i];
        rows.push_back(std::move(r));
    }
    json params;
    params["index"] = n;
    json doc = envelope("enumerate", params);
    doc["tolerances"] = tolerance_block({});
    doc["results"] = {{"count", subs.size()}, {"sublattices", rows}};
    finish(c, doc, true, sw, rows);
    return kExitPass;
}

struct BuildArgs {
    std::string tau;
    std::string sublattice;
    int zolotarev = 0;
    int blaschke = 0;
    bool allow_exceptional = false;
};

HnfSublattice parse_triple(const std::string& s)
{
    static const std::regex triple(R"(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*)");
    std::smatch m;
    if (!std::regex_match(s, m, triple))
        throw UsageError("cannot parse sublattice '" + s + "' (expected p,l,q)");
    try {
        return HnfSublattice(std::stoll(m[1]), std::stoll(m[2]), std::stoll(m[3]));
    } catch (const Error& e) {
        throw UsageError(e.what());
    }
}

int cmd_build(const Common& c, const BuildArgs& a)
{
    Stopwatch sw;
    const int kinds = int(!a.sublattice.empty()) + int(a.zolotarev != 0) + int(a.blaschke != 0);
    if (kinds != 1)
        throw UsageError("build: give exactly one of --sublattice, --zolotarev, --blaschke");
    const cplx t = parse_tau(a.tau);
    const Tau tau = safe_tau(t, "tau");

    json params;
    params["tau"] = cj(t);
    params["seed"] = c.seed;
    params["allow_exceptional"] = a.allow_exceptional;
    bool exceptional = false;
    std::optional<RationalMap> r;
    std::optional<cplx> expected_j;
    try {
        if (!a.sublattice.empty()) {
            const HnfSublattice m = parse_triple(a.sublattice);
            if (m.index() < 2)
                throw UsageError("build: sublattice index must be at least 2");
            exceptional = is_exceptional(m);
            if (exceptional && !a.allow_exceptional)
                throw UsageError("build: sublattice is exceptional (index 2 or M = 2L); pass --allow-exceptional");
            params["kind"] = "sublattice";
            params["sublattice"] = {m.p, m.l, m.q};
            const Lattice lat(1.0, t);
            expected_j = j_invariant(cross_ratio(lattice_branch_set(lat)));
            r = build_fraction(lat, m, c.seed);
        } else if (a.zolotarev != 0) {
            if (a.zolotarev < 1)
                throw UsageError("build: --zolotarev needs n >= 1");
            safe_tau(double(a.zolotarev) * t, "n tau");
            const cplx sk = sqrt_k(tau);
            require_resolvable(1.0, 1.0 / (sk * sk), "build --zolotarev"); // +-1, +-1/k
            exceptional = a.zolotarev < 3;
            if (exceptional && !a.allow_exceptional)
                throw UsageError("build: degree below 3 has fewer than 4 critical values; pass --allow-exceptional");
            params["kind"] = "zolotarev";
            params["n"] = a.zolotarev;
            expected_j = j_invariant(cross_ratio(lattice_branch_set(Lattice(4.0, 2.0 * t))));
            r = zolotarev_fraction(a.zolotarev, tau, c.seed);
        } else {
            if (a.blaschke < 1)
                throw UsageError("build: --blaschke needs n >= 1");
            const Tau ntau = safe_tau(double(a.blaschke) * t, "n tau");
            const cplx sk = sqrt_k(ntau);
            require_resolvable(sk, 1.0 / sk, "build --blaschke");
            exceptional = a.blaschke < 3;
            if (exceptional && !a.allow_exceptional)
                throw UsageError("build: degree below 3 has fewer than 4 critical values; pass --allow-exceptional");
            params["kind"] = "blaschke";
            params["n"] = a.blaschke;
            r = chebyshev_blaschke(a.blaschke, tau, c.seed);
        }
    } catch (const UsageError&) {
        throw;
    } catch (const Error& e) {
        json doc = envelope("build", params);
        doc["tolerances"] = tolerance_block({{"fit_verify", kFitVerifyTol}});
        doc["results"] = nullptr;
        doc["error"] = e.what();
        finish(c, doc, false, sw, std::nullopt);
        std::cerr << "zk build: " << e.what() << "\n";
        return kExitFail;
    }

    json res;
    res["degree"] = r->degree();
    res["numerator"] = poly_json(r->num());
    res["denominator"] = poly_json(r->den());
    res["fit_residual"] = r->fit_residual;
    res["exceptional"] = exceptional;
    bool pass = true;
    if (r->degree() >= 2) {
        const CriticalData cd = critical_data(*r);
        json pts = json::array();
        for (const auto& p : cd.critical_points)
            pts.push_back(sj(p));
        res["critical_points"] = pts;
        res["min_separation"] = cd.min_separation;
        res["all_simple"] = cd.all_simple;
        json cl = json::array();
        for (const auto& k : cd.value_clusters)
            cl.push_back({{"value", sj(k.representative)}, {"size", k.members.size()}});
        res["value_clusters"] = cl;
        res["j"] = cd.j ? cj(*cd.j) : json(nullptr);
        res["noncritical_fiber_count"] = noncritical_fiber_count(*r, cd);
        if (cd.j && expected_j) {
            res["lattice_j"] = cj(*expected_j);
            res["j_error"] = std::abs(*cd.j - *expected_j);
        }
        if (cd.value_clusters.size() != 4 && !(exceptional && a.allow_exceptional))
            pass = false;
        if (cd.j && expected_j && std::abs(*cd.j - *expected_j) > kJTol * tolerance_scale())
            pass = false;
    } else {
        res["critical_points"] = json::array();
        res["value_clusters"] = json::array();
        res["j"] = nullptr;
        pass = a.allow_exceptional;
    }
    json doc = envelope("build", params);
    doc["tolerances"] = tolerance_block({{"fit_verify", kFitVerifyTol},
                                         {"value_cluster", kValueClusterTol},
                                         {"j", kJTol}});
    doc["tolerances"]["simple_separation"] = kSimpleSeparation;
    doc["results"] = res;
    finish(c, doc, pass, sw, std::nullopt);
    return pass ? kExitPass : kExitFail;
}

struct VerifyArgs {
    std::string which;
    std::string tau;
    int n = 3;
    int trials = 100;
    std::string degrees = "3..8";
    unsigned threads = 0;
};

int cmd_verify(const Common& c, const VerifyArgs& a)
{
    Stopwatch sw;
    json params;
    params["which"] = a.which;
    params["seed"] = c.seed;
    if (a.trials < 1)
        throw UsageError("verify: --trials must be positive");

    if (a.which == "cd-identity" || a.which == "classmates") {
        if (a.tau.empty())
            throw UsageError("verify " + a.which + ": --tau is required");
        const cplx t = parse_tau(a.tau);
        const Tau tau = safe_tau(t, "tau");
        params["tau"] = cj(t);
        params["trials"] = a.trials;
        double err = 0.0, tol = 0.0;
        if (a.which == "cd-identity") {
            safe_tau(-4.0 / t, "tau0 = -4/tau");
            tol = kCdTol * tolerance_scale();
            err = verify_cd_identity(tau, a.trials, c.seed);
        } else {
            if (a.n < 1)
                throw UsageError("verify classmates: --n must be at least 1");
            params["n"] = a.n;
            safe_tau(double(a.n) * t, "n tau");
            safe_tau(-4.0 / (double(a.n) * t), "tau1 = -4/(n tau)");
            tol = kClassmateTol * tolerance_scale();
            try {
                err = classmate_residual(a.n, tau, a.trials, c.seed);
            } catch (const Error& e) {
                json doc = envelope("verify", params);
                doc["tolerances"] = tolerance_block({{"max_error", kClassmateTol}});
                doc["results"] = nullptr;
                doc["error"] = e.what();
                finish(c, doc, false, sw, std::nullopt);
                std::cerr << "zk verify: " << e.what() << "\n";
                return kExitFail;
            }
        }
        const bool pass = err < tol;
        json doc = envelope("verify", params);
        doc["tolerances"] = tolerance_block({{"max_error", a.which == "cd-identity" ? kCdTol : kClassmateTol}});
        doc["results"] = {{"max_error", err}};
        finish(c, doc, pass, sw, std::nullopt);
        return pass ? kExitPass : kExitFail;
    }

    if (a.which == "theorem1-sweep") {
        const auto [lo, hi] = parse_range(a.degrees, 2);
        params["degrees"] = {lo, hi};
        const auto cells = theorem1_sweep(standard_sweep_lattices(), lo, hi, c.seed, a.threads);
        json rows = json::array();
        int failures = 0;
        for (const auto& cell : cells) {
            json r;
            r["lattice"] = cell.lattice;
            r["p"] = cell.sublattice.p;
            r["l"] = cell.sublattice.l;
            r["q"] = cell.sublattice.q;
            r["degree"] = cell.degree;
            r["exceptional"] = cell.exceptional;
            r["critical_points"] = cell.critical_points;
            r["clusters"] = cell.clusters;
            r["noncritical_fiber_count"] = cell.fiber_count;
            r["all_simple"] = cell.all_simple;
            r["min_separation"] = cell.min_separation;
            r["fit_residual"] = cell.fit_residual;
            r["j_error"] = cell.j_error < 0.0 ? json(nullptr) : json(cell.j_error);
            r["error"] = cell.error.empty() ? json(nullptr) : json(cell.error);
            r["pass"] = cell.pass;
            failures += cell.pass ? 0 : 1;
            rows.push_back(std::move(r));
        }
        json doc = envelope("verify", params);
        doc["tolerances"] = tolerance_block({{"fit_verify", kFitVerifyTol},
                                             {"value_cluster", kValueClusterTol},
                                             {"j", kJTol}});
        doc["tolerances"]["simple_separation"] = kSimpleSeparation;
        doc["results"] = {{"cells", rows.size()}, {"failures", failures}, {"cell_results", rows}};
        finish(c, doc, failures == 0, sw, rows);
        return failures == 0 ? kExitPass : kExitFail;
    }
    throw UsageError("verify: unknown check '" + a.which + "' (cd-identity, classmates, theorem1-sweep)");
}

void check_environment()
{
    const char* env = std::getenv("ZK_TOLERANCE_SCALE");
    if (env == nullptr || *env == '\0')
        return;
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0.0) || !std::isfinite(v))
        throw UsageError(std::string("ZK_TOLERANCE_SCALE must be a positive number, got '") + env + "'");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Twisted Zolotarev fractions: counting, enumeration, construction, verification"};
    app.require_subcommand(1);
    Common common;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", common.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--out", common.out, "write to this file instead of stdout");
        sub->add_option("--seed", common.seed, "random seed")->capture_default_str();
        sub->add_flag("--timing", common.timing, "include elapsed_seconds (output no longer reproducible)");
    };

    CountArgs count;
    auto* c_count = app.add_subcommand("count", "class counts by degree and j");
    c_count->add_option("--degree", count.degree, "N or A..B (>= 3)")->required();
    c_count->add_option("--j", count.j, "generic, square (j = 1) or hexagonal (j = 0)");
    c_count->add_flag("--all-j", count.all_j, "all three columns");
    c_count->add_flag("--check", count.check, "also count classes by orbit enumeration");
    add_common(c_count);

    int enum_n = 0;
    auto* c_enum = app.add_subcommand("enumerate", "HNF sublattices of one index");
    c_enum->add_option("n", enum_n, "index")->required();
    add_common(c_enum);

    BuildArgs build;
    auto* c_build = app.add_subcommand("build", "construct a fraction and its critical data");
    c_build->add_option("--tau", build.tau, "period ratio, e.g. 0.3+1.1i")->required();
    c_build->add_option("--sublattice", build.sublattice, "HNF triple p,l,q of M in L = (1, tau)");
    c_build->add_option("--zolotarev", build.zolotarev, "Zolotarev fraction Z_n");
    c_build->add_option("--blaschke", build.blaschke, "Chebyshev-Blaschke product Y_n");
    c_build->add_flag("--allow-exceptional", build.allow_exceptional, "accept fewer than 4 critical values");
    add_common(c_build);

    VerifyArgs verify;
    auto* c_verify = app.add_subcommand("verify", "numerical identity checks");
    c_verify->add_option("which", verify.which, "cd-identity, classmates or theorem1-sweep")->required();
    c_verify->add_option("--tau", verify.tau, "period ratio");
    c_verify->add_option("--n", verify.n, "degree for classmates")->capture_default_str();
    c_verify->add_option("--trials", verify.trials, "random points per check")->capture_default_str();
    c_verify->add_option("--degrees", verify.degrees, "index range for theorem1-sweep")->capture_default_str();
    c_verify->add_option("--threads", verify.threads, "sweep workers (0 = all cores)");
    add_common(c_verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        check_environment();
        if (c_count->parsed())
            return cmd_count(common, count);
        if (c_enum->parsed())
            return cmd_enumerate(common, enum_n);
        if (c_build->parsed())
            return cmd_build(common, build);
        return cmd_verify(common, verify);
    } catch (const UsageError& e) {
        std::cerr << "zk: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "zk: " << e.what() << "\n";
        return kExitFail;
    }
}
