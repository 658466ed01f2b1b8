#include "cslopes/quarter_laurent.hpp"

#include <sstream>

namespace cslopes {

QuarterLaurent QuarterLaurent::monomial(mpz_class coeff, long long quarter_exp) {
    QuarterLaurent p;
    if (coeff != 0) p.terms_.emplace(quarter_exp, std::move(coeff));
    return p;
}

mpz_class QuarterLaurent::coeff(long long quarter_exp) const {
    auto it = terms_.find(quarter_exp);
    return it == terms_.end() ? mpz_class(0) : it->second;
}

Rational QuarterLaurent::degree_hi() const {
    if (terms_.empty()) throw ZeroPolynomial();
    return Rational(terms_.rbegin()->first, 4);
}

Rational QuarterLaurent::degree_lo() const {
    if (terms_.empty()) throw ZeroPolynomial();
    return Rational(terms_.begin()->first, 4);
}

QuarterLaurent QuarterLaurent::operator-() const {
    QuarterLaurent r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

QuarterLaurent QuarterLaurent::shifted(long long quarter_exp) const {
    QuarterLaurent r;
    auto hint = r.terms_.end();
    for (const auto& [e, c] : terms_)
        hint = r.terms_.emplace_hint(r.terms_.end(), e + quarter_exp, c);
    (void)hint;
    return r;
}

QuarterLaurent QuarterLaurent::mirrored() const {
    QuarterLaurent r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(-e, c);
    return r;
}

void QuarterLaurent::add_term(long long e, const mpz_class& c) {
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

QuarterLaurent& QuarterLaurent::operator+=(const QuarterLaurent& g) {
    for (const auto& [e, c] : g.terms_) add_term(e, c);
    return *this;
}

QuarterLaurent operator+(const QuarterLaurent& f, const QuarterLaurent& g) {
    QuarterLaurent r = f;
    r += g;
    return r;
}

QuarterLaurent operator-(const QuarterLaurent& f, const QuarterLaurent& g) {
    QuarterLaurent r = f;
    for (const auto& [e, c] : g.terms_) r.add_term(e, -c);
    return r;
}

QuarterLaurent operator*(const QuarterLaurent& f, const QuarterLaurent& g) {
    QuarterLaurent r;
    mpz_class prod;
    for (const auto& [e1, c1] : f.terms_)
        for (const auto& [e2, c2] : g.terms_) {
            prod = c1 * c2;
            r.add_term(e1 + e2, prod);
        }
    return r;
}

std::string QuarterLaurent::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const mpz_class& c = it->second;
        if (first) {
            if (c < 0) os << "-";
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        os << mpz_class(abs(c)).get_str() << "*v^(" << Rational(it->first, 4).str() << ")";
    }
    return os.str();
}

} // namespace cslopes
