#include <doctest.h>

#include "cslopes/conjectures.hpp"
#include "cslopes/errors.hpp"
#include "cslopes/fusion.hpp"
#include "cslopes/io.hpp"

using namespace cslopes;

namespace {

Rational R(long long n, long long d = 1) { return Rational(n, d); }

QuasiPoly qp_820() {
    return QuasiPoly(PeriodicSeq::constant(R(2, 3)),
                     PeriodicSeq({R(-5, 6), R(-1, 2), R(-1, 2)}),
                     PeriodicSeq({R(-1, 2), R(-1, 6), R(-1, 6)}), 1);
}

} // namespace

TEST_CASE("conjecture B checks") {
    auto [ok820, zeros820] = check_conjecture_b(qp_820());
    CHECK(ok820);
    CHECK(zeros820.empty());

    // fusion (0,2): b vanishes identically
    auto [ok02, zeros02] = check_conjecture_b(*fusion_degree({0, 2}).quasipoly());
    CHECK(ok02);
    CHECK(zeros02 == std::vector<long long>{0});

    // unknot convention b = +1/2
    QuasiPoly unknot_qp(PeriodicSeq::constant(R(0)), PeriodicSeq::constant(R(1, 2)),
                        PeriodicSeq::constant(R(-1, 2)), 1);
    auto [oku, zerosu] = check_conjecture_b(unknot_qp);
    CHECK_FALSE(oku);
    CHECK(zerosu.empty());
}

TEST_CASE("slope containment check") {
    CHECK(check_slope({R(37, 2)}, {R(37, 2), R(0)}));
    CHECK_FALSE(check_slope({R(37, 2)}, {R(0)}));
    CHECK(check_slope({}, {}));
}

TEST_CASE("verify a single fusion entry") {
    GridSpec grid;
    grid.m1_lo = grid.m1_hi = 2;
    grid.m2_lo = grid.m2_hi = 1;
    grid.q_values = {2};
    grid.p_window = 2;
    VerifyResult res = verify_grid(grid);
    CHECK(res.all_pass);
    REQUIRE(!res.reports.empty());
    CHECK(res.reports.front().knot == "fusion:2,1");
    bool saw_cable = false;
    for (const SlopeReport& r : res.reports) {
        CHECK(r.passed());
        if (r.cable_p) {
            saw_cable = true;
            REQUIRE(r.A.has_value());
            // 4A lands in the transformed candidate set
            CHECK(r.bs_candidates.count(R(4) * *r.A));
        }
    }
    CHECK(saw_cable);
}

TEST_CASE("verify on the empty grid") {
    GridSpec grid;
    grid.empty = true;
    VerifyResult res = verify_grid(grid);
    CHECK(res.all_pass);
    CHECK(res.reports.empty());
}

TEST_CASE("a corrupted golden fails the sweep") {
    GridSpec grid;
    grid.m1_lo = 1; // empty fusion range
    grid.m1_hi = 0;
    grid.extra_bases.push_back(
        ExtraBase{"corrupt", load_quasipoly_file(std::string(FIXTURE_DIR) + "/820_corrupt.json")});
    VerifyResult res = verify_grid(grid);
    CHECK_FALSE(res.all_pass);
    REQUIRE(!res.reports.empty());
    CHECK_FALSE(res.reports.front().b_nonpositive);
}

TEST_CASE("golden 8_20 file passes as an extra base") {
    GridSpec grid;
    grid.m1_lo = 1;
    grid.m1_hi = 0;
    grid.q_values = {2};
    grid.extra_bases.push_back(
        ExtraBase{"820", load_quasipoly_file(std::string(GOLDEN_DIR) + "/820.json")});
    VerifyResult res = verify_grid(grid);
    CHECK(res.all_pass);
    // base + cables near both thresholds
    CHECK(res.reports.size() > 3);
}

TEST_CASE("sweep output is deterministic") {
    GridSpec grid;
    grid.m1_lo = -1;
    grid.m1_hi = 2;
    grid.m2_lo = 1;
    grid.m2_hi = 2;
    grid.q_values = {2};
    grid.p_window = 1;
    VerifyResult r1 = verify_grid(grid);
    VerifyResult r2 = verify_grid(grid);
    REQUIRE(r1.reports.size() == r2.reports.size());
    for (std::size_t i = 0; i < r1.reports.size(); ++i)
        CHECK(report_to_json(r1.reports[i]) == report_to_json(r2.reports[i]));
}
