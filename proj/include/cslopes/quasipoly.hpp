#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "cslopes/rational.hpp"

namespace cslopes {

/// Periodic function Z -> Q given by one value per residue class.
/// Index i holds the value at arguments n with n ≡ i (mod period).
/// Canonical form has minimal period.
class PeriodicSeq {
public:
    PeriodicSeq() : values_{Rational(0)} {}
    explicit PeriodicSeq(std::vector<Rational> values);
    static PeriodicSeq constant(Rational v) { return PeriodicSeq({std::move(v)}); }

    long long period() const { return static_cast<long long>(values_.size()); }
    const std::vector<Rational>& values() const { return values_; }

    const Rational& at(long long n) const {
        long long p = period();
        return values_[static_cast<std::size_t>(((n % p) + p) % p)];
    }

    bool is_constant() const { return values_.size() == 1; }

    /// Values re-listed at a period that is a multiple of this one.
    std::vector<Rational> expanded(long long target_period) const;

    friend bool operator==(const PeriodicSeq& a, const PeriodicSeq& b) {
        return a.values_ == b.values_;
    }

private:
    std::vector<Rational> values_; // minimal period
};

/// Quadratic quasi-polynomial a(n)n^2 + b(n)n + d(n), valid for n >= valid_from.
/// Stored canonically: each coefficient sequence at its minimal period,
/// period() is their lcm.
class QuasiPoly {
public:
    QuasiPoly();
    QuasiPoly(PeriodicSeq a, PeriodicSeq b, PeriodicSeq d, long long valid_from);

    const PeriodicSeq& a() const { return a_; }
    const PeriodicSeq& b() const { return b_; }
    const PeriodicSeq& d() const { return d_; }
    long long valid_from() const { return valid_from_; }

    /// lcm of the three component periods.
    long long period() const;

    /// Exact value at n. Throws BelowValidity for n < valid_from.
    Rational eval(long long n) const;

    /// (a,b,d) -> (-a,-b,-d); eval of the result is the negation of eval.
    QuasiPoly mirrored() const;

    /// Coefficient-wise equality (periods and all residue values; valid_from
    /// is not part of the value).
    bool same_coefficients(const QuasiPoly& o) const {
        return a_ == o.a_ && b_ == o.b_ && d_ == o.d_;
    }
    friend bool operator==(const QuasiPoly& x, const QuasiPoly& y) {
        return x.same_coefficients(y) && x.valid_from_ == y.valid_from_;
    }

private:
    PeriodicSeq a_, b_, d_;
    long long valid_from_;
};

/// Admissibility data extracted from a quasi-polynomial with constant a and
/// b(n) <= 0 (Theorem 1.1's M_1, max{0, M_2}).
struct SlopeConditions {
    Rational a_const;
    Rational M1;
    Rational M2max; // max{0, M2}
};

/// Computes M1 = max |b(i)-b(j)| and M2 = max 2b(i)+|b(i)-b(j)|+|d(i)-d(j)|
/// over pairs i ≡ j (mod 2) ranging across one window of length 2*period(qp).
/// Throws NonConstantSlope if a is not constant, PositiveLinearTerm if some
/// b(i) > 0.
SlopeConditions m_constants(const QuasiPoly& qp);

/// Recovers the unique quasi-polynomial of period <= max_period that agrees
/// with the samples from some n onward. Samples must be at consecutive n and
/// cover at least 4*max_period values (InsufficientSamples otherwise). For
/// each candidate period, the three last samples of every residue class pin a
/// quadratic which is then verified against all remaining samples; the fit is
/// accepted when the maximal agreeing suffix spans >= 4*max_period samples,
/// and valid_from is the least n of that suffix. Minimal period wins.
/// Throws NoFit when no period qualifies.
QuasiPoly fit_quasipoly(const std::vector<std::pair<long long, Rational>>& samples,
                        long long max_period);

} // namespace cslopes
