#include "cslopes/cabling.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

#include "cslopes/errors.hpp"

namespace cslopes {

namespace {

long long lcm_ll(long long a, long long b) {
    return a / std::gcd(a, b) * b;
}

long long pos_mod(long long n, long long p) {
    return ((n % p) + p) % p;
}

} // namespace

CableParams::CableParams(long long p_, long long q_) : p(p_), q(q_) {
    if (q <= 1)
        throw InvalidCableParams(
            "cable parameters require q > 1; for q < 0 reorient via the mirror identity "
            "K_{-p,-q} = rK_{p,q} (q = 1 cables are isotopic to the companion)");
    if (std::gcd(p < 0 ? -p : p, q) != 1)
        throw InvalidCableParams("cable parameters must be coprime");
}

QuarterLaurent DegreeProvider::polynomial(long long) const {
    throw NoExactForm("provider '" + name() + "' has no exact polynomial face");
}

// ---------------------------------------------------------------------------
// providers

ClosedFormProvider::ClosedFormProvider(QuasiPoly qp, std::map<long long, Rational> tail,
                                       std::string name)
    : qp_(std::move(qp)), tail_(std::move(tail)), name_(std::move(name)) {
    for (long long n = 1; n < qp_.valid_from(); ++n)
        if (!tail_.count(n))
            throw Error("closed-form provider '" + name_ + "' missing tail degree at n = " +
                        std::to_string(n));
}

Rational ClosedFormProvider::degree(long long color) const {
    if (color < 1) throw Error("degree requires color >= 1");
    if (color < qp_.valid_from()) return tail_.at(color);
    return qp_.eval(color);
}

UnknotProvider::UnknotProvider()
    : qp_(PeriodicSeq::constant(Rational(0)), PeriodicSeq::constant(Rational(1, 2)),
          PeriodicSeq::constant(Rational(-1, 2)), 1) {}

Rational UnknotProvider::degree(long long color) const {
    if (color < 1) throw Error("degree requires color >= 1");
    return Rational(color - 1, 2);
}

QuarterLaurent UnknotProvider::polynomial(long long color) const {
    if (color < 1) throw Error("polynomial requires color >= 1");
    QuarterLaurent p;
    for (long long j = 0; j < color; ++j)
        p += QuarterLaurent::monomial(1, 2 * (color - 1) - 4 * j);
    return p;
}

TorusProvider::TorusProvider(CableParams pq) : pq_(pq) {}

const QuarterLaurent& TorusProvider::poly_cached(long long color) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(color);
    if (it == cache_.end())
        it = cache_.emplace(color, cable_exact(unknot_, pq_, color)).first;
    return it->second;
}

Rational TorusProvider::degree(long long color) const {
    if (color < 1) throw Error("degree requires color >= 1");
    return poly_cached(color).degree_hi();
}

QuarterLaurent TorusProvider::polynomial(long long color) const {
    if (color < 1) throw Error("polynomial requires color >= 1");
    return poly_cached(color);
}

const QuasiPoly* TorusProvider::quasipoly() const {
    std::lock_guard<std::mutex> lock(mu_);
    if (!qp_) {
        std::vector<std::pair<long long, Rational>> samples;
        const long long max_period = 4; // torus degree sequences have period <= 2
        for (long long n = 1; n <= 8 * max_period + 8; ++n) {
            auto it = cache_.find(n);
            if (it == cache_.end())
                it = cache_.emplace(n, cable_exact(unknot_, pq_, n)).first;
            samples.emplace_back(n, it->second.degree_hi());
        }
        qp_ = fit_quasipoly(samples, max_period);
    }
    return &*qp_;
}

std::string TorusProvider::name() const {
    return "torus:" + std::to_string(pq_.p) + "," + std::to_string(pq_.q);
}

// ---------------------------------------------------------------------------
// engine

std::vector<long long> sample_set_twice(long long n) {
    if (n < 1) throw Error("sample_set requires n >= 1");
    std::vector<long long> out;
    out.reserve(static_cast<std::size_t>(n));
    for (long long t = -(n - 1); t <= n - 1; t += 2) out.push_back(t);
    return out;
}

std::vector<Rational> sample_set(long long n) {
    std::vector<Rational> out;
    for (long long t : sample_set_twice(n)) out.emplace_back(t, 2);
    return out;
}

QuarterLaurent cable_exact(const DegreeProvider& base, const CableParams& pq, long long n) {
    if (!base.has_exact())
        throw NoExactForm("cable_exact requires an exact-polynomial base");
    QuarterLaurent total;
    for (long long t : sample_set_twice(n)) {
        long long color = pq.q * t + 1; // odd multiple structure: never 0 for q > 1
        assert(color != 0);
        QuarterLaurent jk =
            color > 0 ? base.polynomial(color) : -base.polynomial(-color);
        // v^{-pk(qk+1)} has quarter-exponent -p(q t^2 + 2 t) for k = t/2
        total += jk.shifted(-pq.p * (pq.q * t * t + 2 * t));
    }
    return total.shifted(pq.p * pq.q * (n * n - 1));
}

MaxCertificate cable_degree_per_n(const DegreeProvider& base, const CableParams& pq,
                                  long long n) {
    MaxCertificate cert;
    cert.n = n;
    bool first = true;
    Rational best, second;
    bool have_second = false;
    long long best_t = 0;
    int best_count = 0;
    for (long long t : sample_set_twice(n)) {
        long long color = pq.q * t + 1;
        Rational f = Rational(-pq.p * (pq.q * t * t + 2 * t), 4) +
                     base.degree(color > 0 ? color : -color);
        if (first) {
            best = f;
            best_t = t;
            best_count = 1;
            first = false;
        } else if (f > best) {
            second = best;
            have_second = true;
            best = f;
            best_t = t;
            best_count = 1;
        } else if (f == best) {
            ++best_count;
        } else if (!have_second || f > second) {
            second = f;
            have_second = true;
        }
    }
    cert.argmax_twice_k = best_t;
    cert.max_value = best;
    cert.unique = best_count == 1;
    if (!cert.unique)
        cert.runner_up_gap = Rational(0);
    else if (have_second)
        cert.runner_up_gap = best - second;
    // singleton S_n: no runner-up, gap absent, maximizer trivially unique
    return cert;
}

Admissibility admissible(const SlopeConditions& sc, const CableParams& pq) {
    Rational p(pq.p), q(pq.q);
    Rational four_a = Rational(4) * sc.a_const;
    if (p - (four_a - sc.M1) * q < Rational(0)) return {true, Branch::L};
    if (p - (four_a + sc.M1) * q > sc.M2max) return {true, Branch::R};
    return {false, std::nullopt};
}

CableQuasiPoly cable_quasipoly(const DegreeProvider& base, const CableParams& pq) {
    const QuasiPoly* qp = base.quasipoly();
    if (!qp)
        throw NoClosedForm("cable_quasipoly requires a closed-form base; '" + base.name() +
                           "' provides none");
    SlopeConditions sc = m_constants(*qp);
    Admissibility adm = admissible(sc, pq);
    if (!adm.ok)
        throw NotAdmissible("(p,q) = (" + std::to_string(pq.p) + "," + std::to_string(pq.q) +
                            ") satisfies neither p - (4a-M1)q < 0 nor p - (4a+M1)q > max{0,M2}");

    const Rational a = sc.a_const;
    const Rational p_minus_4qa = Rational(pq.p) - Rational(4 * pq.q) * a;
    const Branch regime = p_minus_4qa < Rational(0) ? Branch::L : Branch::R;
    const Rational A =
        regime == Branch::L ? Rational(pq.q * pq.q) * a : Rational(pq.p * pq.q, 4);

    const long long base_period = qp->period();
    const long long max_period = 2 * pq.q * lcm_ll(base_period, 2);
    const long long N1 = 2;

    // per-n reduced data alongside the implied-degree samples
    struct Reduced {
        long long s2;    // 2*s_n (regime L) or 2*k_n (regime R)
        int eps;         // sign of the color 2qk+1
        long long color; // |2qk+1|
        bool valid;      // unique maximizer, and (L) color inside qp validity
    };
    std::vector<Reduced> red;
    std::vector<std::pair<long long, Rational>> samples;

    auto key_equal = [&](const Reduced& x, const Reduced& y) {
        if (regime == Branch::L)
            return x.s2 == y.s2 && x.eps == y.eps &&
                   pos_mod(x.color, base_period) == pos_mod(y.color, base_period);
        return x.s2 == y.s2;
    };

    // Smallest period rho whose tail stabilizes within the first half of the
    // window, verified against the remainder. The pre-periodic head scales
    // with the size of the linear terms, not with the period, so the window
    // doubles on failure before giving up.
    long long rho = 0, start = 0;
    for (int attempt = 0; attempt < 5 && rho == 0; ++attempt) {
        const long long W = (8 * max_period) << attempt;
        const long long n_end = N1 + W - 1;
        for (long long n = N1 + static_cast<long long>(samples.size()); n <= n_end; ++n) {
            MaxCertificate cert = cable_degree_per_n(base, pq, n);
            samples.emplace_back(n, cert.implied_degree(pq));
            long long signed_color = pq.q * cert.argmax_twice_k + 1;
            Reduced r;
            r.eps = signed_color > 0 ? 1 : -1;
            r.color = signed_color > 0 ? signed_color : -signed_color;
            r.s2 = regime == Branch::L ? r.eps * cert.argmax_twice_k - n : cert.argmax_twice_k;
            r.valid = cert.unique && (regime == Branch::R || r.color >= qp->valid_from());
            red.push_back(r);
        }
        for (long long cand = 1; cand <= max_period && rho == 0; ++cand) {
            long long ok_from = -1;
            for (long long n = n_end; n >= N1; --n) {
                const Reduced& r = red[static_cast<std::size_t>(n - N1)];
                if (!r.valid) break;
                if (n + cand <= n_end &&
                    !key_equal(r, red[static_cast<std::size_t>(n + cand - N1)]))
                    break;
                ok_from = n;
            }
            if (ok_from >= 0 && ok_from <= N1 + W / 2 - 1 && n_end - ok_from + 1 >= 2 * cand) {
                rho = cand;
                start = ok_from;
            }
        }
    }
    if (rho == 0)
        throw StabilizationFailure("argmax sequence of '" + base.name() +
                                   "' cable did not stabilize within the sampling window");

    std::vector<Rational> B(static_cast<std::size_t>(rho)), D(static_cast<std::size_t>(rho));
    for (long long n = start; n < start + rho; ++n) {
        const Reduced& r = red[static_cast<std::size_t>(n - N1)];
        std::size_t idx = static_cast<std::size_t>(pos_mod(n, rho));
        if (regime == Branch::L) {
            Rational s(r.s2, 2);
            Rational eps(r.eps);
            Rational bi = qp->b().at(r.color);
            Rational di = qp->d().at(r.color);
            Rational q(pq.q);
            B[idx] = -p_minus_4qa * (q * s + eps / Rational(2)) + q * bi;
            D[idx] = Rational(-pq.p * pq.q, 4) - p_minus_4qa * s * (q * s + eps) +
                     Rational(2) * q * bi * s + a + bi * eps + di;
        } else {
            // k_n stays bounded: D comes from f(k_n) evaluated through the
            // provider, so tail colors below the base validity stay exact
            Rational f = Rational(-pq.p * (pq.q * r.s2 * r.s2 + 2 * r.s2), 4) +
                         base.degree(r.color);
            B[idx] = Rational(0);
            D[idx] = Rational(-pq.p * pq.q, 4) + f;
        }
    }
    for (const Rational& bn : B) {
        if (regime == Branch::L && !(bn < Rational(0)))
            throw StabilizationFailure("regime L produced a non-negative B(n)");
        if (bn > Rational(0))
            throw StabilizationFailure("cable linear term B(n) came out positive");
    }

    CableQuasiPoly out{
        QuasiPoly(PeriodicSeq::constant(A), PeriodicSeq(std::move(B)),
                  PeriodicSeq(std::move(D)), start),
        regime, A, QuasiPoly(), false};

    try {
        out.fitted = fit_quasipoly(samples, max_period);
    } catch (const NoFit&) {
        throw StabilizationFailure("per-n degrees of '" + base.name() +
                                   "' cable admit no quasi-polynomial fit on the window");
    }
    out.fit_verified = out.qp.same_coefficients(out.fitted);
    return out;
}

std::set<Rational> boundary_slopes_cable(const std::set<Rational>& bs,
                                         const CableParams& pq) {
    std::set<Rational> out;
    Rational q2(pq.q * pq.q);
    for (const Rational& s : bs) out.insert(q2 * s);
    out.insert(Rational(pq.p * pq.q));
    return out;
}

} // namespace cslopes
