#include "cslopes/fusion.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

#include "cslopes/errors.hpp"

namespace cslopes {

namespace {

using int128 = __int128;

void check_nondegenerate(const FusionParams& p) {
    if (p.m2 == -1 || p.m2 == 0) throw DegenerateM2();
}

bool lattice_ok(long long n, long long k1, long long k2) {
    if (n < 0 || k1 < 0 || k1 > n) return false;
    long long lo = n - 2 * k1;
    if (lo < 0) lo = -lo;
    long long mid = n + 2 * k2;
    return lo <= mid && mid <= n + 2 * k1;
}

/// 2*Q(n,k1,k2): every term of Q is a half-integer, so twice the value is an
/// integer. int128 keeps the evaluation exact far beyond any realistic n.
int128 twoQ(long long m1, long long m2, long long n, long long k1, long long k2) {
    int128 K1 = k1, K2 = k2, N = n, M1 = m1, M2 = m2;
    int128 l1 = 2 * K1 + N, l2 = 2 * K1 + K2 + N, l3 = K2 + 2 * N;
    int128 L = std::min(l1, std::min(l2, l3));
    return K1 - 3 * K1 * K1 - 6 * K1 * K2 - 2 * K2 * K2 - 2 * K1 * M1 - 2 * K1 * K1 * M1 -
           2 * K2 * M2 - 2 * K2 * K2 * M2 - 12 * K1 * N - 6 * K2 * N + 4 * M1 * N +
           8 * M2 * N - 2 * K2 * M2 * N - 4 * N * N + 2 * M1 * N * N + 4 * M2 * N * N +
           (1 + 8 * K1 + 4 * K2 + 8 * N) * L - 3 * L * L;
}

Rational from_int128_halves(int128 twice) {
    bool neg = twice < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-twice)
                              : static_cast<unsigned __int128>(twice);
    mpz_class z(static_cast<unsigned long>(u >> 64));
    z <<= 64;
    z += static_cast<unsigned long>(u & 0xffffffffffffffffULL);
    if (neg) z = -z;
    return Rational(z, mpz_class(2));
}

Rational q_value(const FusionParams& p, long long n, long long k1, long long k2) {
    return from_int128_halves(twoQ(p.m1, p.m2, n, k1, k2));
}

/// Integers closest to c (two of them when c is a half-odd-integer).
std::vector<long long> closest_ints(const Rational& c) {
    mpz_class fl = c.floor();
    if (Rational(fl) == c) return {fl.get_si()};
    if (c.is_half_integer()) return {fl.get_si(), fl.get_si() + 1};
    Rational frac = c - Rational(fl);
    return {frac < Rational(1, 2) ? fl.get_si() : fl.get_si() + 1};
}

long long clamp_ll(long long v, long long lo, long long hi) {
    return std::max(lo, std::min(hi, v));
}

enum class Case { A, B1, B2, C1, C2 };

Case dispatch(const FusionParams& p) {
    if (p.m2 >= 1) {
        if (p.m1 >= 1) return Case::A;
        // m1 <= 0
        long long s = 1 + p.m1 + p.m2;
        if (s <= 0 || (s > 0 && 1 + 2 * p.m1 + p.m2 < 0)) return Case::B1;
        return Case::B2;
    }
    // m2 <= -2
    return 2 * p.m1 <= -3 * p.m2 ? Case::C1 : Case::C2;
}

Rational c3_of(const FusionParams& p, long long n) {
    return Rational(-3 + 2 * (p.m1 + p.m2) + 2 * (1 + p.m2) * n,
                    2 * (1 - 2 * p.m1 - 2 * p.m2));
}

/// Maximum of Q along a case line over clamped nearest-integer candidates.
/// When the critical point is a half-integer both neighbors are genuinely
/// closest and the paper asserts they tie; that tie is checked.
Rational line_max(const FusionParams& p, long long n, const Rational& c, long long lo,
                  long long hi, long long k2_of_k1_mul, long long k2_of_k1_add,
                  bool assert_tie) {
    std::vector<long long> cands;
    for (long long k : closest_ints(c)) cands.push_back(clamp_ll(k, lo, hi));
    std::sort(cands.begin(), cands.end());
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
    bool first = true;
    Rational best;
    std::vector<Rational> vals;
    for (long long k1 : cands) {
        Rational v = q_value(p, n, k1, k2_of_k1_mul * k1 + k2_of_k1_add * n);
        vals.push_back(v);
        if (first || v > best) best = v;
        first = false;
    }
    if (assert_tie && vals.size() == 2 && c.is_half_integer() && cands[1] - cands[0] == 1 &&
        vals[0] != vals[1])
        throw Error("closest-integer tie did not give equal Q values");
    return best;
}

/// Region-dependent bound on the period of d_+[J_K(n)] (denominators of the
/// critical points c1/c2/c3 and of the I6 divisibility progression).
long long period_bound(const FusionParams& p) {
    switch (region(p)) {
        case RegionTag::I1:
        case RegionTag::I2:
            return 2 * (p.m1 + p.m2 - 1);
        case RegionTag::I4:
            return 2 * (1 + p.m1 + p.m2);
        case RegionTag::I6:
            return 2 * (p.m1 + p.m2) - 1;
        default:
            return 1;
    }
}

} // namespace

std::string to_string(RegionTag r) {
    switch (r) {
        case RegionTag::I1: return "I1";
        case RegionTag::I2: return "I2";
        case RegionTag::I3: return "I3";
        case RegionTag::I4: return "I4";
        case RegionTag::I5: return "I5";
        case RegionTag::I6: return "I6";
    }
    return "?";
}

RegionTag region(const FusionParams& p) {
    check_nondegenerate(p);
    if (p.m2 >= 1) {
        if (p.m1 >= 2) return RegionTag::I1;
        if (p.m1 == 1) return RegionTag::I2;
        if (2 * p.m1 < -(p.m2 + 1)) return RegionTag::I3;
        return RegionTag::I4;
    }
    return 2 * p.m1 <= -3 * p.m2 ? RegionTag::I5 : RegionTag::I6;
}

Rational q_lattice_value(const FusionParams& params, long long n, long long k1,
                         long long k2) {
    if (!lattice_ok(n, k1, k2))
        throw OutsideLattice("(k1,k2) = (" + std::to_string(k1) + "," + std::to_string(k2) +
                             ") outside the lattice at n = " + std::to_string(n));
    return q_value(params, n, k1, k2);
}

Rational delta_bruteforce(const FusionParams& params, long long n) {
    check_nondegenerate(params);
    if (n < 0) throw Error("delta requires n >= 0");
    bool first = true;
    int128 best = 0;
    for (long long k1 = 0; k1 <= n; ++k1) {
        long long lo = n - 2 * k1;
        if (lo < 0) lo = -lo;
        lo -= n; // 2*k2 >= lo
        long long k2lo = lo >= 0 ? (lo + 1) / 2 : -((-lo) / 2);
        for (long long k2 = k2lo; k2 <= k1; ++k2) {
            int128 v = twoQ(params.m1, params.m2, n, k1, k2);
            if (first || v > best) best = v;
            first = false;
        }
    }
    Rational result = from_int128_halves(best);
    if (dispatch(params) == Case::C2) {
        Rational c3 = c3_of(params, n);
        if (c3.is_half_integer()) result -= c3 + Rational(1, 2);
    }
    return result;
}

Rational delta_closed(const FusionParams& params, long long n) {
    check_nondegenerate(params);
    if (n < 0) throw Error("delta requires n >= 0");
    long long m1 = params.m1, m2 = params.m2;
    switch (dispatch(params)) {
        case Case::A: {
            Rational c1(1 - m1 + m2 + m2 * n, 2 * (-1 + m1 + m2));
            return line_max(params, n, c1, 0, n / 2, -1, 0, /*assert_tie=*/true);
        }
        case Case::B1:
            return q_value(params, n, n, 0);
        case Case::B2: {
            Rational c2(1 - m1 - m2 + (1 + m2) * n, 2 * (1 + m1 + m2));
            return line_max(params, n, c2, (n + 1) / 2, n, 1, -1, /*assert_tie=*/false);
        }
        case Case::C1:
            return q_value(params, n, n, n);
        case Case::C2: {
            Rational c3 = c3_of(params, n);
            Rational v = line_max(params, n, c3, 0, n, 1, 0, /*assert_tie=*/false);
            if (c3.is_half_integer()) v -= c3 + Rational(1, 2);
            return v;
        }
    }
    throw Error("unreachable");
}

Rational fusion_dplus(const FusionParams& params, long long n) {
    if (n < 1) throw Error("fusion_dplus requires n >= 1");
    return delta_closed(params, n - 1) + Rational(n - 1, 2);
}

Rational jones_slope_coefficient(const FusionParams& p) {
    long long m1 = p.m1, m2 = p.m2;
    switch (region(p)) {
        case RegionTag::I1:
        case RegionTag::I2:
            return Rational(m1 + 2 * m2) + Rational(1, 2) +
                   Rational(m2 * m2, 4 * (-1 + m1 + m2));
        case RegionTag::I3:
            return Rational(1, 2) + Rational(2 * m2);
        case RegionTag::I4:
            return Rational(3 + 3 * m1 + 9 * m2, 4) + Rational(m1 * m1, 4 * (1 + m1 + m2));
        case RegionTag::I5:
            return Rational(0);
        case RegionTag::I6:
            return Rational((2 * m1 + 3 * m2) * (2 * m1 + 3 * m2),
                            2 * (-1 + 2 * m1 + 2 * m2));
    }
    throw Error("unreachable");
}

Rational linear_term(const FusionParams& p, long long n) {
    long long m1 = p.m1, m2 = p.m2;
    switch (region(p)) {
        case RegionTag::I1:
        case RegionTag::I2:
            return Rational(m2 * (1 - m1), 2 * (-1 + m1 + m2));
        case RegionTag::I3:
            return Rational(1 + m1);
        case RegionTag::I4:
            return Rational(m1 * (m2 - 1), 2 * (1 + m1 + m2));
        case RegionTag::I5:
            return Rational(5, 2) + Rational(m1 + 3 * m2);
        case RegionTag::I6: {
            long long den = -1 + 2 * m1 + 2 * m2;
            long long num = -1 + (1 + m2) * (n - 1);
            bool divisible = num % den == 0;
            long long factor = divisible ? -3 + 2 * m1 : -5 + 2 * m1;
            return Rational(factor * (1 + m2), 2 * den);
        }
    }
    throw Error("unreachable");
}

SlopeConditions fusion_m_constants(const FusionParams& params) {
    check_nondegenerate(params);
    Rational a = jones_slope_coefficient(params);
    long long pi = period_bound(params);
    long long L = std::lcm(pi, 2LL);
    long long N0 = 2 * pi + 2;

    // residue data straight from the case closed forms
    auto b_at = [&](long long n) { return linear_term(params, n); };
    auto d_at = [&](long long n) {
        Rational nn(n);
        return fusion_dplus(params, n) - a * nn * nn - b_at(n) * nn;
    };

    std::vector<Rational> bb, dd;
    for (long long n = N0; n < N0 + 2 * L; ++n) {
        bb.push_back(b_at(n));
        dd.push_back(d_at(n));
    }
    // stationarity: the same residues must repeat over the next window
    for (long long n = N0; n < N0 + 2 * L; ++n) {
        std::size_t i = static_cast<std::size_t>(n - N0);
        if (b_at(n + 2 * L) != bb[i] || d_at(n + 2 * L) != dd[i])
            throw Error("fusion residue data not periodic at the expected period");
    }

    Rational M1(0), M2;
    bool have_m2 = false;
    std::size_t w = bb.size();
    for (std::size_t i = 0; i < w; ++i)
        for (std::size_t j = i % 2; j < w; j += 2) {
            Rational bdiff = (bb[i] - bb[j]).abs();
            M1 = max(M1, bdiff);
            Rational m2v = bb[i] + bb[i] + bdiff + (dd[i] - dd[j]).abs();
            if (!have_m2 || m2v > M2) {
                M2 = m2v;
                have_m2 = true;
            }
        }
    return SlopeConditions{a, M1, max(Rational(0), M2)};
}

ClosedFormProvider fusion_degree(const FusionParams& params) {
    check_nondegenerate(params);
    long long pi = period_bound(params);
    std::vector<std::pair<long long, Rational>> samples;
    for (long long n = 1; n <= 8 * pi + 20; ++n)
        samples.emplace_back(n, fusion_dplus(params, n));
    QuasiPoly qp = fit_quasipoly(samples, pi);
    std::map<long long, Rational> tail;
    for (long long n = 1; n < qp.valid_from(); ++n) tail.emplace(n, fusion_dplus(params, n));
    return ClosedFormProvider(std::move(qp), std::move(tail),
                              "fusion:" + std::to_string(params.m1) + "," +
                                  std::to_string(params.m2));
}

CableBullet cable_region_bullet(const FusionParams& p) {
    long long m1 = p.m1, m2 = p.m2;
    switch (region(p)) {
        case RegionTag::I1: {
            Rational t = Rational(4 * m1 + 8 * m2 + 2) + Rational(m2 * m2, m1 + m2 - 1);
            return {t, t, Rational((1 - m1 + m2) * (1 - m1 + m2), 4 * (m1 + m2 - 1))};
        }
        case RegionTag::I2: {
            Rational t(9 * m2 + 6);
            return {t, t, Rational(3 * m2, 4)};
        }
        case RegionTag::I4: {
            Rational t = Rational(3 * m1 + 9 * m2 + 3) + Rational(m1 * m1, m1 + m2 + 1);
            Rational r = Rational(m1 + m2 - 1, 4) + Rational(m1 * (m2 - 1), m1 + m2 + 1);
            return {t, t, max(r, Rational(0))};
        }
        case RegionTag::I6: {
            long long sq = (2 * m1 + 3 * m2) * (2 * m1 + 3 * m2);
            long long den = 2 * m1 + 2 * m2 - 1;
            Rational lo(2 * sq + m2 + 1, den);
            Rational hi(2 * sq - (m2 + 1), den);
            Rational r = Rational(den, 8) + Rational((2 * m1 - 6) * (m2 + 1), den);
            return {lo, hi, max(r, Rational(0))};
        }
        default:
            throw UnspecifiedRegion(
                "no cable-region bullet is given for " + to_string(region(p)) +
                "; use admissible() with fusion_m_constants instead");
    }
}

bool cable_region_membership(const FusionParams& params, const CableParams& pq) {
    CableBullet b = cable_region_bullet(params);
    Rational p(pq.p), q(pq.q);
    return p - b.lo_coeff * q < Rational(0) || p - b.hi_coeff * q > b.rhs;
}

std::optional<SpecialForm> special_forms(const FusionParams& p) {
    SpecialForm f;
    if (p.m2 == 0) {
        f.kind = SpecialForm::Kind::Torus;
        f.torus_k = 2 * p.m1 + 1;
        return f;
    }
    if (p.m2 == -1) {
        f.kind = SpecialForm::Kind::Torus;
        f.torus_k = 2 * p.m1 - 3;
        return f;
    }
    if (p.m1 == -1 && p.m2 == 1) {
        f.kind = SpecialForm::Kind::Torus;
        f.torus_k = 5;
        return f;
    }
    if (p.m1 == 1) {
        f.kind = SpecialForm::Kind::MirrorFusion;
        f.mirror_m1 = 0;
        f.mirror_m2 = -p.m2 - 1;
        return f;
    }
    return std::nullopt;
}

} // namespace cslopes
