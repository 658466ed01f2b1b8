#include <doctest.h>

#include "cslopes/cabling.hpp"
#include "cslopes/errors.hpp"

using namespace cslopes;

namespace {

Rational R(long long n, long long d = 1) { return Rational(n, d); }

QuarterLaurent mono(long long c, long long e) {
    return QuarterLaurent::monomial(mpz_class(static_cast<long>(c)), e);
}

ClosedFormProvider make_820() {
    return ClosedFormProvider(
        QuasiPoly(PeriodicSeq::constant(R(2, 3)),
                  PeriodicSeq({R(-5, 6), R(-1, 2), R(-1, 2)}),
                  PeriodicSeq({R(-1, 2), R(-1, 6), R(-1, 6)}), 1),
        {}, "820");
}

ClosedFormProvider make_943() {
    return ClosedFormProvider(
        QuasiPoly(PeriodicSeq::constant(R(8, 3)),
                  PeriodicSeq({R(-5, 6), R(-1, 2), R(-1, 2)}),
                  PeriodicSeq({R(-7, 2), R(-13, 6), R(-13, 6)}), 1),
        {}, "943");
}

ClosedFormProvider make_zero() {
    return ClosedFormProvider(QuasiPoly(PeriodicSeq::constant(R(0)),
                                        PeriodicSeq::constant(R(0)),
                                        PeriodicSeq::constant(R(0)), 1),
                              {}, "zero");
}

} // namespace

TEST_CASE("cable parameter validation") {
    CHECK_NOTHROW(CableParams(7, 2));
    CHECK_NOTHROW(CableParams(-3, 2));
    CHECK_THROWS_AS(CableParams(2, 1), InvalidCableParams);
    CHECK_THROWS_AS(CableParams(3, -2), InvalidCableParams);
    CHECK_THROWS_AS(CableParams(4, 2), InvalidCableParams);
    CHECK_THROWS_AS(CableParams(0, 2), InvalidCableParams);
}

TEST_CASE("sample set") {
    CHECK(sample_set(1) == std::vector<Rational>{R(0)});
    CHECK(sample_set(2) == std::vector<Rational>{R(-1, 2), R(1, 2)});
    CHECK(sample_set(5) == std::vector<Rational>{R(-2), R(-1), R(0), R(1), R(2)});
    CHECK_THROWS_AS(sample_set(0), Error);
}

TEST_CASE("unknot provider") {
    UnknotProvider u;
    CHECK(u.degree(1) == R(0));
    CHECK(u.degree(4) == R(3, 2));
    CHECK(u.polynomial(2) == mono(1, 2) + mono(1, -2));
    CHECK(u.polynomial(1) == QuarterLaurent::one());
    CHECK(u.polynomial(3).degree_lo() == R(-1));
}

TEST_CASE("cable_exact of the unknot at small colors") {
    UnknotProvider u;
    CableParams pq(2, 3);
    CHECK(cable_exact(u, pq, 1) == QuarterLaurent::one());

    // n = 2: the sum has exactly the terms k = ±1/2; expanded by hand,
    //   v^{18/4} * ( v^{-10/4} J(4) - v^{-2/4} J(2) )
    QuarterLaurent expected = mono(1, 2) + mono(1, 6) + mono(1, 10) + mono(-1, 18);
    QuarterLaurent got = cable_exact(u, pq, 2);
    CHECK(got == expected);
    CHECK(got.degree_hi() == R(9, 2));
}

TEST_CASE("certificates at small n") {
    UnknotProvider u;
    CableParams pq(2, 3);
    MaxCertificate c1 = cable_degree_per_n(u, pq, 1);
    CHECK(c1.argmax_k() == R(0));
    CHECK(c1.max_value == R(0));
    CHECK(c1.unique);
    CHECK_FALSE(c1.runner_up_gap.has_value());

    MaxCertificate c2 = cable_degree_per_n(u, pq, 2);
    CHECK(c2.argmax_k() == R(-1, 2));
    CHECK(c2.max_value == R(0));
    CHECK(c2.runner_up_gap == R(1));
    CHECK(c2.unique);
    CHECK(c2.implied_degree(pq) == R(9, 2));
}

TEST_CASE("degree engine agrees with the exact engine for unknot cables") {
    UnknotProvider u;
    for (auto [p, q] : {std::pair<long long, long long>{2, 3}, {3, 2}, {-5, 3}, {7, 2}}) {
        CableParams pq(p, q);
        for (long long n = 1; n <= 20; ++n) {
            MaxCertificate cert = cable_degree_per_n(u, pq, n);
            Rational dhi = cable_exact(u, pq, n).degree_hi();
            if (cert.unique)
                CHECK(dhi == cert.implied_degree(pq));
            else
                CHECK(dhi <= cert.implied_degree(pq));
        }
    }
}

TEST_CASE("mirror identity at the exact level") {
    UnknotProvider u;
    for (long long n = 1; n <= 8; ++n) {
        QuarterLaurent right = cable_exact(u, CableParams(2, 3), n);
        QuarterLaurent left = cable_exact(u, CableParams(-2, 3), n);
        CHECK(left == right.mirrored());
    }
}

TEST_CASE("admissibility branches") {
    auto p820 = make_820();
    SlopeConditions sc = m_constants(*p820.quasipoly());
    CHECK(admissible(sc, CableParams(1, 2)).ok);
    CHECK(admissible(sc, CableParams(1, 2)).branch == Branch::L);
    CHECK_FALSE(admissible(sc, CableParams(5, 2)).ok);
    CHECK(admissible(sc, CableParams(7, 2)).branch == Branch::R);

    auto p943 = make_943();
    SlopeConditions sc943 = m_constants(*p943.quasipoly());
    CHECK(admissible(sc943, CableParams(23, 2)).branch == Branch::R);
}

TEST_CASE("cable quasi-polynomial of 8_20, branch L") {
    auto base = make_820();
    CableQuasiPoly c = cable_quasipoly(base, CableParams(1, 2));
    CHECK(c.regime == Branch::L);
    CHECK(c.A == R(8, 3)); // q^2 a
    CHECK(c.fit_verified);
    CHECK(c.qp.a().is_constant());
    // frozen from the per-n engine + fit cross-check
    CHECK(c.qp.b().at(0) == R(-19, 6));
    CHECK(c.qp.b().at(1) == R(-19, 6));
    CHECK(c.qp.b().at(2) == R(-23, 6));
    for (const Rational& b : c.qp.b().values()) CHECK(b < R(0));
}

TEST_CASE("cable quasi-polynomial of 8_20, branch R") {
    auto base = make_820();
    CableQuasiPoly c = cable_quasipoly(base, CableParams(7, 2));
    CHECK(c.regime == Branch::R);
    CHECK(c.A == R(7, 2)); // pq/4
    CHECK(c.fit_verified);
    for (const Rational& b : c.qp.b().values()) CHECK(b == R(0));
}

TEST_CASE("cable quasi-polynomial of a degree-zero provider") {
    auto base = make_zero();
    CableQuasiPoly c = cable_quasipoly(base, CableParams(1, 2));
    CHECK(c.regime == Branch::R);
    CHECK(c.A == R(1, 2));
    for (const Rational& b : c.qp.b().values()) CHECK(b == R(0));
    CHECK(c.fit_verified);
}

TEST_CASE("per-n certificate feeds the fitted cable quasi-polynomial") {
    auto base = make_820();
    CableParams pq(1, 2);
    CableQuasiPoly c = cable_quasipoly(base, pq);
    MaxCertificate cert = cable_degree_per_n(base, pq, 15);
    CHECK(cert.unique);
    CHECK(cert.implied_degree(pq) == c.fitted.eval(15));
    CHECK(cert.implied_degree(pq) == c.qp.eval(15));
}

TEST_CASE("cable_quasipoly rejections") {
    auto base = make_820();
    CHECK_THROWS_AS(cable_quasipoly(base, CableParams(5, 2)), NotAdmissible);
    UnknotProvider unknot; // b = +1/2
    CHECK_THROWS_AS(cable_quasipoly(unknot, CableParams(7, 2)), PositiveLinearTerm);
}

TEST_CASE("torus provider has both faces and supports iterated cables") {
    TorusProvider t23{CableParams(2, 3)};
    const QuasiPoly* qp = t23.quasipoly();
    REQUIRE(qp != nullptr);
    CHECK(qp->a().is_constant());
    CHECK(qp->a().at(0) == R(3, 2)); // pq/4 for the unknot cable
    UnknotProvider u;
    for (long long n = 1; n <= 10; ++n)
        CHECK(t23.degree(n) == cable_exact(u, CableParams(2, 3), n).degree_hi());

    CableQuasiPoly it = cable_quasipoly(t23, CableParams(7, 2));
    CHECK(it.regime == Branch::L); // 7 - 4*2*(3/2) < 0
    CHECK(it.A == R(6));           // q^2 a = 4 * 3/2
    CHECK(it.fit_verified);
}

TEST_CASE("boundary slope transform") {
    CableParams pq23(2, 3);
    CHECK(boundary_slopes_cable({}, pq23) == std::set<Rational>{R(6)});
    CHECK(boundary_slopes_cable({R(0)}, pq23) == std::set<Rational>{R(0), R(6)});
    CHECK(boundary_slopes_cable({R(8, 3)}, CableParams(1, 2)) ==
          std::set<Rational>{R(32, 3), R(2)});
}

TEST_CASE("closed-form provider requires a complete tail") {
    QuasiPoly qp(PeriodicSeq::constant(R(1)), PeriodicSeq::constant(R(0)),
                 PeriodicSeq::constant(R(0)), 3);
    CHECK_THROWS_AS(ClosedFormProvider(qp, {}, "incomplete"), Error);
    std::map<long long, Rational> tail{{1, R(0)}, {2, R(4)}};
    ClosedFormProvider ok(qp, tail, "complete");
    CHECK(ok.degree(2) == R(4));
    CHECK(ok.degree(3) == R(9));
}
