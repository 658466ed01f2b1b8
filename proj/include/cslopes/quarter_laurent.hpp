#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <string>

#include "cslopes/rational.hpp"

namespace cslopes {

/// Sparse Laurent polynomial in v^{1/4} with integer coefficients.
///
/// Exponents are stored as integers in units of 1/4: the key e represents the
/// monomial v^{e/4}. Zero coefficients are never stored; the zero polynomial
/// is the empty map. Values are immutable in spirit: every operation returns
/// a fresh polynomial.
class QuarterLaurent {
public:
    using term_map = std::map<long long, mpz_class>;

    QuarterLaurent() = default;

    /// Monomial c * v^{quarter_exp/4}.
    static QuarterLaurent monomial(mpz_class coeff, long long quarter_exp);
    static QuarterLaurent zero() { return QuarterLaurent(); }
    static QuarterLaurent one() { return monomial(1, 0); }

    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const term_map& terms() const { return terms_; }

    /// Coefficient of v^{quarter_exp/4} (zero if absent).
    mpz_class coeff(long long quarter_exp) const;

    /// d_+ : highest exponent divided by 4. Throws ZeroPolynomial on 0.
    Rational degree_hi() const;
    /// d_- : lowest exponent divided by 4. Throws ZeroPolynomial on 0.
    Rational degree_lo() const;

    QuarterLaurent operator-() const;
    /// Multiplication by the monomial v^{quarter_exp/4}.
    QuarterLaurent shifted(long long quarter_exp) const;
    /// Substitution v -> v^{-1} (exponent negation). Swaps d_+ and d_- with
    /// a sign flip; realizes the mirror relation at the polynomial level.
    QuarterLaurent mirrored() const;

    friend QuarterLaurent operator+(const QuarterLaurent& f, const QuarterLaurent& g);
    friend QuarterLaurent operator-(const QuarterLaurent& f, const QuarterLaurent& g);
    friend QuarterLaurent operator*(const QuarterLaurent& f, const QuarterLaurent& g);
    QuarterLaurent& operator+=(const QuarterLaurent& g);

    friend bool operator==(const QuarterLaurent& f, const QuarterLaurent& g) {
        return f.terms_ == g.terms_;
    }

    /// Canonical text form, decreasing exponents with reduced powers:
    /// "1*v^(3/2) - 2*v^(0) + 1*v^(-1/2)"; "0" for the zero polynomial.
    std::string str() const;

private:
    void add_term(long long quarter_exp, const mpz_class& coeff);
    term_map terms_;
};

} // namespace cslopes
