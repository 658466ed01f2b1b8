#include "cslopes/conjectures.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <memory>
#include <numeric>
#include <thread>

#include "cslopes/errors.hpp"
#include "cslopes/fusion.hpp"

namespace cslopes {

std::pair<bool, std::vector<long long>> check_conjecture_b(const QuasiPoly& qp) {
    bool nonpos = true;
    std::vector<long long> zeros;
    long long period = qp.b().period();
    for (long long i = 0; i < period; ++i) {
        const Rational& bi = qp.b().at(i);
        if (bi > Rational(0)) nonpos = false;
        if (bi == Rational(0)) zeros.push_back(i);
    }
    return {nonpos, zeros};
}

bool check_slope(const std::set<Rational>& js, const std::set<Rational>& bs) {
    for (const Rational& s : js)
        if (!bs.count(s)) return false;
    return true;
}

namespace {

unsigned sweep_threads() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("CABLE_SLOPES_THREADS")) {
        long v = std::atol(env);
        if (v >= 1 && static_cast<unsigned>(v) < hw) return static_cast<unsigned>(v);
    }
    return hw;
}

SlopeReport base_report(const std::string& name, const QuasiPoly& qp) {
    SlopeReport r;
    r.knot = name;
    Rational four_a = Rational(4) * qp.a().at(0);
    r.js = {four_a};
    // the paper provides no full boundary-slope lists; {4a} is the candidate
    // set certified by the slope theorem for the base
    r.bs_candidates = {four_a};
    r.containment = check_slope(r.js, r.bs_candidates);
    auto [nonpos, zeros] = check_conjecture_b(qp);
    r.b_nonpositive = nonpos;
    r.b_zero_residues = std::move(zeros);
    return r;
}

SlopeReport cable_report(const std::string& base_name, const DegreeProvider& base,
                         const QuasiPoly& base_qp, const CableParams& pq) {
    SlopeReport r;
    r.knot = base_name + " cable(" + std::to_string(pq.p) + "," + std::to_string(pq.q) + ")";
    r.cable_p = pq.p;
    r.cable_q = pq.q;
    try {
        CableQuasiPoly c = cable_quasipoly(base, pq);
        r.regime = c.regime;
        r.A = c.A;
        r.fit_verified = c.fit_verified;
        Rational four_a = Rational(4) * base_qp.a().at(0);
        r.js = {Rational(4) * c.A};
        r.bs_candidates = boundary_slopes_cable({four_a}, pq);
        r.containment = check_slope(r.js, r.bs_candidates);
        auto [nonpos, zeros] = check_conjecture_b(c.qp);
        r.b_nonpositive = nonpos;
        r.b_zero_residues = std::move(zeros);
    } catch (const Error& e) {
        r.error = e.what();
    }
    return r;
}

/// Cable parameter values to try: p within the window of both thresholds,
/// coprime with q and admissible.
std::vector<CableParams> grid_cables(const SlopeConditions& sc, long long q,
                                     long long window) {
    std::vector<CableParams> out;
    Rational four_a = Rational(4) * sc.a_const;
    Rational thL = (four_a - sc.M1) * Rational(q);
    Rational thR = (four_a + sc.M1) * Rational(q) + sc.M2max;
    auto add_range = [&](const Rational& th) {
        long long lo = (th - Rational(window)).floor().get_si();
        long long hi = (th + Rational(window)).ceil().get_si();
        for (long long p = lo; p <= hi; ++p) {
            if (std::gcd(p < 0 ? -p : p, q) != 1) continue;
            CableParams pq(p, q);
            if (!admissible(sc, pq).ok) continue;
            bool dup = false;
            for (const auto& e : out)
                if (e.p == p && e.q == q) dup = true;
            if (!dup) out.emplace_back(pq);
        }
    };
    add_range(thL);
    add_range(thR);
    std::sort(out.begin(), out.end(),
              [](const CableParams& a, const CableParams& b) { return a.p < b.p; });
    return out;
}

struct Entry {
    std::string name;
    std::optional<FusionParams> fusion;
    std::optional<QuasiPoly> qp; // for extra bases
};

std::vector<SlopeReport> run_entry(const Entry& e, const GridSpec& grid) {
    std::vector<SlopeReport> out;
    std::unique_ptr<DegreeProvider> provider;
    if (e.fusion)
        provider = std::make_unique<ClosedFormProvider>(fusion_degree(*e.fusion));
    else
        provider = std::make_unique<ClosedFormProvider>(*e.qp, std::map<long long, Rational>{},
                                                        e.name);
    const QuasiPoly& qp = *provider->quasipoly();
    out.push_back(base_report(e.name, qp));
    try {
        SlopeConditions sc = m_constants(qp);
        for (long long q : grid.q_values)
            for (const CableParams& pq : grid_cables(sc, q, grid.p_window))
                out.push_back(cable_report(e.name, *provider, qp, pq));
    } catch (const Error& err) {
        SlopeReport r;
        r.knot = e.name + " cables";
        r.error = err.what();
        out.push_back(r);
    }
    return out;
}

} // namespace

VerifyResult verify_grid(const GridSpec& grid) {
    VerifyResult result;
    if (grid.empty) return result;

    std::vector<Entry> entries;
    for (long long m1 = grid.m1_lo; m1 <= grid.m1_hi; ++m1)
        for (long long m2 = grid.m2_lo; m2 <= grid.m2_hi; ++m2) {
            if (m2 == -1 || m2 == 0) continue; // torus reroute, out of sweep scope
            Entry e;
            e.name = "fusion:" + std::to_string(m1) + "," + std::to_string(m2);
            e.fusion = FusionParams{m1, m2};
            entries.push_back(std::move(e));
        }
    for (const ExtraBase& x : grid.extra_bases) {
        Entry e;
        e.name = x.name;
        e.qp = x.qp;
        entries.push_back(std::move(e));
    }

    std::vector<std::vector<SlopeReport>> results(entries.size());
    unsigned nthreads = sweep_threads();
    if (entries.size() < 2 || nthreads < 2) {
        for (std::size_t i = 0; i < entries.size(); ++i)
            results[i] = run_entry(entries[i], grid);
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&]() {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= entries.size()) return;
                results[i] = run_entry(entries[i], grid);
            }
        };
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    for (auto& batch : results)
        for (auto& r : batch) {
            if (!r.passed()) result.all_pass = false;
            result.reports.push_back(std::move(r));
        }
    return result;
}

} // namespace cslopes
