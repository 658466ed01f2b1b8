#include "cslopes/quasipoly.hpp"

#include <numeric>

#include "cslopes/errors.hpp"

namespace cslopes {

namespace {

long long lcm_ll(long long a, long long b) {
    return a / std::gcd(a, b) * b;
}

} // namespace

PeriodicSeq::PeriodicSeq(std::vector<Rational> values) : values_(std::move(values)) {
    if (values_.empty()) throw Error("PeriodicSeq requires at least one value");
    // reduce to the minimal period
    long long p = period();
    for (long long q = 1; q < p; ++q) {
        if (p % q != 0) continue;
        bool ok = true;
        for (long long i = q; i < p && ok; ++i)
            ok = values_[static_cast<std::size_t>(i)] ==
                 values_[static_cast<std::size_t>(i % q)];
        if (ok) {
            values_.resize(static_cast<std::size_t>(q));
            return;
        }
    }
}

std::vector<Rational> PeriodicSeq::expanded(long long target_period) const {
    if (target_period % period() != 0)
        throw Error("expanded(): target period must be a multiple of the period");
    std::vector<Rational> out;
    out.reserve(static_cast<std::size_t>(target_period));
    for (long long i = 0; i < target_period; ++i) out.push_back(at(i));
    return out;
}

QuasiPoly::QuasiPoly() : a_(), b_(), d_(), valid_from_(1) {}

QuasiPoly::QuasiPoly(PeriodicSeq a, PeriodicSeq b, PeriodicSeq d, long long valid_from)
    : a_(std::move(a)), b_(std::move(b)), d_(std::move(d)), valid_from_(valid_from) {
    if (valid_from_ < 1) throw Error("valid_from must be positive");
}

long long QuasiPoly::period() const {
    return lcm_ll(lcm_ll(a_.period(), b_.period()), d_.period());
}

Rational QuasiPoly::eval(long long n) const {
    if (n < valid_from_)
        throw BelowValidity("eval at n = " + std::to_string(n) + " below valid_from = " +
                            std::to_string(valid_from_));
    Rational nn(n);
    return a_.at(n) * nn * nn + b_.at(n) * nn + d_.at(n);
}

QuasiPoly QuasiPoly::mirrored() const {
    auto neg = [](const PeriodicSeq& s) {
        std::vector<Rational> v;
        v.reserve(s.values().size());
        for (const auto& x : s.values()) v.push_back(-x);
        return PeriodicSeq(std::move(v));
    };
    return QuasiPoly(neg(a_), neg(b_), neg(d_), valid_from_);
}

SlopeConditions m_constants(const QuasiPoly& qp) {
    if (!qp.a().is_constant())
        throw NonConstantSlope("m_constants requires a constant quadratic coefficient");
    for (const auto& bi : qp.b().values())
        if (bi > Rational(0))
            throw PositiveLinearTerm("m_constants requires b(n) <= 0 for all residues");

    // One full window of length 2*period covers every (residue, parity)
    // combination; pairs are ordered because M2 is not symmetric in (i, j).
    long long w = 2 * qp.period();
    std::vector<Rational> bb, dd;
    bb.reserve(static_cast<std::size_t>(w));
    dd.reserve(static_cast<std::size_t>(w));
    for (long long i = 0; i < w; ++i) {
        bb.push_back(qp.b().at(i));
        dd.push_back(qp.d().at(i));
    }
    Rational M1(0), M2;
    bool have_m2 = false;
    for (long long i = 0; i < w; ++i)
        for (long long j = i % 2; j < w; j += 2) {
            Rational bdiff = (bb[i] - bb[j]).abs();
            M1 = max(M1, bdiff);
            Rational m2 = bb[i] + bb[i] + bdiff + (dd[i] - dd[j]).abs();
            if (!have_m2 || m2 > M2) {
                M2 = m2;
                have_m2 = true;
            }
        }
    return SlopeConditions{qp.a().at(0), M1, max(Rational(0), M2)};
}

QuasiPoly fit_quasipoly(const std::vector<std::pair<long long, Rational>>& samples,
                        long long max_period) {
    if (max_period < 1) throw InsufficientSamples("max_period must be positive");
    long long count = static_cast<long long>(samples.size());
    if (count < 4 * max_period)
        throw InsufficientSamples("need at least 4*max_period = " +
                                  std::to_string(4 * max_period) + " samples, got " +
                                  std::to_string(count));
    for (std::size_t i = 1; i < samples.size(); ++i)
        if (samples[i].first != samples[i - 1].first + 1)
            throw InsufficientSamples("samples must be at consecutive n");
    if (samples.front().first < 1)
        throw InsufficientSamples("samples must start at n >= 1");

    for (long long p = 1; p <= max_period; ++p) {
        // solve the quadratic of each residue class from its last three samples
        std::vector<Rational> ca(static_cast<std::size_t>(p)),
            cb(static_cast<std::size_t>(p)), cd(static_cast<std::size_t>(p));
        bool solvable = true;
        for (long long r = 0; r < p && solvable; ++r) {
            std::vector<std::pair<long long, Rational>> cls;
            for (auto it = samples.rbegin(); it != samples.rend() && cls.size() < 3; ++it)
                if (((it->first % p) + p) % p == r) cls.push_back(*it);
            if (cls.size() < 3) {
                solvable = false;
                break;
            }
            // cls holds (n3,v3),(n2,v2),(n1,v1) with n1 < n2 < n3
            Rational n1(cls[2].first), n2(cls[1].first), n3(cls[0].first);
            const Rational &v1 = cls[2].second, &v2 = cls[1].second, &v3 = cls[0].second;
            Rational d21 = (v2 - v1) / (n2 - n1);
            Rational d32 = (v3 - v2) / (n3 - n2);
            Rational a = (d32 - d21) / (n3 - n1);
            Rational b = d21 - a * (n1 + n2);
            Rational d = v1 - a * n1 * n1 - b * n1;
            std::size_t ri = static_cast<std::size_t>(r);
            ca[ri] = a;
            cb[ri] = b;
            cd[ri] = d;
        }
        if (!solvable) continue;

        // maximal agreeing suffix
        long long agree_from = -1;
        for (auto it = samples.rbegin(); it != samples.rend(); ++it) {
            long long n = it->first;
            std::size_t ri = static_cast<std::size_t>(((n % p) + p) % p);
            Rational nn(n);
            if (ca[ri] * nn * nn + cb[ri] * nn + cd[ri] == it->second)
                agree_from = n;
            else
                break;
        }
        if (agree_from < 0) continue;
        long long suffix = samples.back().first - agree_from + 1;
        if (suffix < 4 * max_period) continue;

        // residue index i corresponds to n ≡ i (mod p)
        return QuasiPoly(PeriodicSeq(std::move(ca)), PeriodicSeq(std::move(cb)),
                         PeriodicSeq(std::move(cd)), agree_from);
    }
    throw NoFit("no quasi-polynomial of period <= " + std::to_string(max_period) +
                " fits the samples");
}

} // namespace cslopes
