#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cslopes/cabling.hpp"
#include "cslopes/quasipoly.hpp"

namespace cslopes {

/// Verdict record for one knot (base or cable): the Jones slope cluster set,
/// the boundary-slope candidate set, and the two conjecture checks.
struct SlopeReport {
    std::string knot;
    std::set<Rational> js;
    std::set<Rational> bs_candidates;
    bool containment = false;
    bool b_nonpositive = false;
    std::vector<long long> b_zero_residues;
    // cable-only fields
    std::optional<long long> cable_p, cable_q;
    std::optional<Branch> regime;
    std::optional<Rational> A;
    std::optional<bool> fit_verified;
    // set when the entry errored instead of producing verdicts
    std::optional<std::string> error;

    bool passed() const {
        return !error && containment && b_nonpositive &&
               (!fit_verified || *fit_verified);
    }
};

/// b_K(n) <= 0 over all residues of the canonical period; also reports the
/// residues where b vanishes.
std::pair<bool, std::vector<long long>> check_conjecture_b(const QuasiPoly& qp);

/// js ⊆ bs.
bool check_slope(const std::set<Rational>& js, const std::set<Rational>& bs);

/// One extra closed-form base to include in a sweep (e.g. a golden file).
struct ExtraBase {
    std::string name;
    QuasiPoly qp;
};

struct GridSpec {
    long long m1_lo = -4, m1_hi = 4;
    long long m2_lo = -4, m2_hi = 4;
    std::vector<long long> q_values{2, 3};
    long long p_window = 3; // p within +-window of the admissibility thresholds
    bool empty = false;
    std::vector<ExtraBase> extra_bases;
};

struct VerifyResult {
    std::vector<SlopeReport> reports;
    bool all_pass = true;
};

/// Runs base and cable reports over the grid: for every fusion knot with
/// m2 outside {-1,0} (and every extra base), the base verdicts, then for every
/// q in the grid and p within p_window of the two admissibility thresholds,
/// the cable verdicts via cable_quasipoly. Entries are ordered by ascending
/// parameter tuples; per-entry errors are recorded without aborting the
/// sweep. Parallelism is capped by the CABLE_SLOPES_THREADS environment
/// variable (default: all cores); output order is independent of it.
VerifyResult verify_grid(const GridSpec& grid);

} // namespace cslopes
