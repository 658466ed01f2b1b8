#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cslopes/quarter_laurent.hpp"
#include "cslopes/quasipoly.hpp"
#include "cslopes/rational.hpp"

namespace cslopes {

/// Cable parameters (p,q): coprime, q > 1. Negative q and q = 1 are rejected;
/// reorientation goes through the mirror identity K_{-p,-q} = rK_{p,q}, never
/// silently.
struct CableParams {
    long long p;
    long long q;
    CableParams(long long p_, long long q_);
};

/// Source of d_+[J_K(n)] for n >= 1, with J_K(1) = 1 (degree 0).
/// Providers may expose an exact-polynomial face and/or a closed-form
/// quasi-polynomial face; when both exist their degrees agree everywhere.
class DegreeProvider {
public:
    virtual ~DegreeProvider() = default;

    /// d_+[J_K(color)] for color >= 1.
    virtual Rational degree(long long color) const = 0;

    /// Closed-form face, or nullptr.
    virtual const QuasiPoly* quasipoly() const { return nullptr; }

    virtual bool has_exact() const { return false; }
    /// J_K(color) as an exact polynomial, color >= 1. Throws NoExactForm when
    /// has_exact() is false.
    virtual QuarterLaurent polynomial(long long color) const;

    virtual std::string name() const = 0;
};

/// ClosedForm provider: a quasi-polynomial for n >= valid_from plus an exact
/// tail table for 1 <= n < valid_from.
class ClosedFormProvider : public DegreeProvider {
public:
    ClosedFormProvider(QuasiPoly qp, std::map<long long, Rational> tail, std::string name);
    Rational degree(long long color) const override;
    const QuasiPoly* quasipoly() const override { return &qp_; }
    std::string name() const override { return name_; }

private:
    QuasiPoly qp_;
    std::map<long long, Rational> tail_;
    std::string name_;
};

/// Unknot: J_U(n) is the quantum integer with degrees ±(n-1)/2; the
/// closed-form face is (a, b, d) = (0, 1/2, -1/2). Note b > 0, so the unknot
/// is served by the exact engine, not by cable_quasipoly.
class UnknotProvider : public DegreeProvider {
public:
    UnknotProvider();
    Rational degree(long long color) const override;
    const QuasiPoly* quasipoly() const override { return &qp_; }
    bool has_exact() const override { return true; }
    QuarterLaurent polynomial(long long color) const override;
    std::string name() const override { return "unknot"; }

private:
    QuasiPoly qp_;
};

/// Torus knot T(p,q) realized as the (p,q)-cable of the unknot. Exact
/// polynomials come from the cabling sum; the closed-form face is fitted
/// lazily from exact degrees.
class TorusProvider : public DegreeProvider {
public:
    TorusProvider(CableParams pq);
    Rational degree(long long color) const override;
    const QuasiPoly* quasipoly() const override;
    bool has_exact() const override { return true; }
    QuarterLaurent polynomial(long long color) const override;
    std::string name() const override;

private:
    const QuarterLaurent& poly_cached(long long color) const;
    CableParams pq_;
    UnknotProvider unknot_;
    mutable std::mutex mu_;
    mutable std::map<long long, QuarterLaurent> cache_;
    mutable std::optional<QuasiPoly> qp_;
};

/// The summation index set S_n: all k with |k| <= (n-1)/2, integers for odd
/// n, half-integers for even n, ascending.
std::vector<Rational> sample_set(long long n);
/// Same set with k represented as 2k (integer), ascending.
std::vector<long long> sample_set_twice(long long n);

/// Literal evaluation of the cabling sum
///   J_{K_{p,q}}(n) = v^{pq(n^2-1)/4} sum_{k in S_n} v^{-pk(qk+1)} J_K(2qk+1)
/// with J_K(-m) = -J_K(m) (the color 2qk+1 is never zero for q > 1).
QuarterLaurent cable_exact(const DegreeProvider& base, const CableParams& pq, long long n);

/// Per-color record of the maximizer of f(k) = -pk(qk+1) + d_+[J_K(|2qk+1|)]
/// over S_n. runner_up_gap is the distance to the best competing k (absent
/// when S_n is a singleton); unique holds iff exactly one k attains the max.
struct MaxCertificate {
    long long n;
    long long argmax_twice_k; // 2k
    Rational max_value;
    std::optional<Rational> runner_up_gap;
    bool unique;

    Rational argmax_k() const { return Rational(argmax_twice_k, 2); }
    /// pq(n^2-1)/4 + max_value: the cable degree when unique.
    Rational implied_degree(const CableParams& pq) const {
        return Rational(pq.p * pq.q * (n * n - 1), 4) + max_value;
    }
};

MaxCertificate cable_degree_per_n(const DegreeProvider& base, const CableParams& pq,
                                  long long n);

enum class Branch { L, R };

struct Admissibility {
    bool ok;
    std::optional<Branch> branch;
};

/// Theorem 1.1 conditions: branch L iff p - (4a - M1)q < 0, branch R iff
/// p - (4a + M1)q > max{0, M2}. The branches are mutually exclusive.
Admissibility admissible(const SlopeConditions& sc, const CableParams& pq);

/// Result of the closed-form cable degree computation (Proposition 2.1):
/// d_+[J_{K_{p,q}}(n)] = A n^2 + B(n) n + D(n) for n >= qp.valid_from(), with
/// A = q^2 a on branch L (B < 0) and A = pq/4 on branch R (B = 0).
struct CableQuasiPoly {
    QuasiPoly qp;
    Branch regime;
    Rational A;
    QuasiPoly fitted;  // independent fit over per-n engine output
    bool fit_verified; // closed form == fitted on the common window
};

/// Assembles the cable quasi-polynomial by stabilizing the per-n argmax
/// sequence of cable_degree_per_n over a window past the base's valid_from
/// and instantiating the regime formulas, then self-checks against
/// fit_quasipoly over the same window. Requires a closed-form base with
/// constant a and b <= 0, and an admissible (p,q).
CableQuasiPoly cable_quasipoly(const DegreeProvider& base, const CableParams& pq);

/// Theorem 2.4 transform: q^2 * bs ∪ {pq}.
std::set<Rational> boundary_slopes_cable(const std::set<Rational>& bs,
                                         const CableParams& pq);

} // namespace cslopes
