#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>

#include "cslopes/errors.hpp"

namespace cslopes {

/// Exact rational number, always stored in lowest terms with positive
/// denominator. All arithmetic is arbitrary precision; there is no floating
/// point anywhere in this library.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long long n) : v_(static_cast<long>(n)) {}
    Rational(int n) : v_(n) {}
    Rational(const mpz_class& n) : v_(n) {}
    Rational(long long num, long long den)
        : v_(static_cast<long>(num), static_cast<long>(den)) {
        if (den == 0) throw Error("rational with zero denominator");
        v_.canonicalize();
    }
    Rational(const mpz_class& num, const mpz_class& den) : v_(num, den) {
        if (den == 0) throw Error("rational with zero denominator");
        v_.canonicalize();
    }
    explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }

    /// Parses "num/den" or "num". Throws ParseError on malformed input.
    static Rational parse(const std::string& s);

    mpz_class numerator() const { return v_.get_num(); }
    mpz_class denominator() const { return v_.get_den(); }
    bool is_integer() const { return v_.get_den() == 1; }
    bool is_zero() const { return v_ == 0; }
    int sign() const { return sgn(v_); }

    /// Canonical string: "num/den", or just "num" when the denominator is 1.
    std::string str() const { return v_.get_str(); }

    mpz_class floor() const;
    mpz_class ceil() const;
    /// True iff this is a half-odd-integer (denominator exactly 2).
    bool is_half_integer() const { return v_.get_den() == 2; }

    Rational operator-() const { return Rational(mpq_class(-v_), already_canonical{}); }
    Rational abs() const { return v_ < 0 ? -*this : *this; }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(mpq_class(a.v_ + b.v_), already_canonical{});
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return Rational(mpq_class(a.v_ - b.v_), already_canonical{});
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(mpq_class(a.v_ * b.v_), already_canonical{});
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero()) throw Error("rational division by zero");
        return Rational(mpq_class(a.v_ / b.v_), already_canonical{});
    }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) { *this = *this / o; return *this; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r);

private:
    struct already_canonical {};
    Rational(mpq_class q, already_canonical) : v_(std::move(q)) {}
    mpq_class v_;
};

inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }
inline Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }

} // namespace cslopes
