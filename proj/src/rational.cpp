#include "cslopes/rational.hpp"

#include <ostream>

namespace cslopes {

Rational Rational::parse(const std::string& s) {
    if (s.empty()) throw ParseError("empty rational string");
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            mpz_class n(s);
            return Rational(n);
        }
        mpz_class num(s.substr(0, slash));
        mpz_class den(s.substr(slash + 1));
        if (den == 0) throw ParseError("zero denominator in '" + s + "'");
        return Rational(num, den);
    } catch (const std::invalid_argument&) {
        throw ParseError("malformed rational '" + s + "'");
    }
}

mpz_class Rational::floor() const {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
    return q;
}

mpz_class Rational::ceil() const {
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
    return q;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.v_;
}

} // namespace cslopes
