#pragma once

#include <optional>
#include <string>

#include "cslopes/cabling.hpp"
#include "cslopes/quasipoly.hpp"
#include "cslopes/rational.hpp"

namespace cslopes {

/// Parameters of the 2-fusion knot K(m1, m2). The closed-form machinery
/// requires m2 outside {-1, 0}; those values are torus knots served by
/// special_forms and the exact engine.
struct FusionParams {
    long long m1;
    long long m2;
};

enum class RegionTag { I1, I2, I3, I4, I5, I6 };

std::string to_string(RegionTag r);

/// The region of parameter space (m2 not in {-1,0}); the six regions
/// partition the plane minus the two degenerate lines.
RegionTag region(const FusionParams& params);

/// The lattice function Q(n, k1, k2), defined for 0 <= k1 <= n and
/// |n - 2k1| <= n + 2k2 <= n + 2k1. Throws OutsideLattice otherwise.
Rational q_lattice_value(const FusionParams& params, long long n, long long k1,
                         long long k2);

/// Exhaustive maximization of Q over the full lattice, minus the C-2
/// half-integer correction when it applies. Independent oracle for
/// delta_closed.
Rational delta_bruteforce(const FusionParams& params, long long n);

/// delta_K(n) by the case analysis (A, B-1, B-2, C-1, C-2): evaluation of Q
/// on the case's line, at the integers closest to the case's critical point
/// (both candidates when tied, larger value taken, Case A capped at n/2).
Rational delta_closed(const FusionParams& params, long long n);

/// d_+[J_K(n)] = delta_K(n-1) + (n-1)/2 for n >= 1.
Rational fusion_dplus(const FusionParams& params, long long n);

/// Theorem 3.2 table: the quadratic coefficient a_K (the Jones slope is 4 a_K).
Rational jones_slope_coefficient(const FusionParams& params);

/// Theorem 3.3 table: b_K(n), including the I6 divisibility branch.
Rational linear_term(const FusionParams& params, long long n);

/// True M1 and max{0, M2} of d_+[J_K(n)], computed from the closed-form case
/// data (b from Theorem 3.3, d(n) = d_+(n) - a n^2 - b(n) n) by the same
/// parity-respecting maximization as qpoly::m_constants.
SlopeConditions fusion_m_constants(const FusionParams& params);

/// Closed-form degree provider: quasi-polynomial fitted from fusion_dplus
/// samples (period bounded by the region's denominators) plus the exact tail.
ClosedFormProvider fusion_degree(const FusionParams& params);

/// A literal cable-region bullet: admissible iff p - lo_coeff*q < 0 or
/// p - hi_coeff*q > rhs.
struct CableBullet {
    Rational lo_coeff;
    Rational hi_coeff;
    Rational rhs;
};

/// The paper's bullet for the params' region (I1, I2, I4, I6 only; I3 and I5
/// have no bullet and raise UnspecifiedRegion — use admissible() with
/// fusion_m_constants instead).
CableBullet cable_region_bullet(const FusionParams& params);

/// Membership of (p,q) in the cable region S_{m1,m2} per the literal bullet.
bool cable_region_membership(const FusionParams& params, const CableParams& pq);

/// Torus or mirror identification for the listed special parameter values.
struct SpecialForm {
    enum class Kind { Torus, MirrorFusion };
    Kind kind;
    // Torus: T(2, torus_k). MirrorFusion: mirror image of K(mirror_m1, mirror_m2).
    long long torus_k = 0;
    long long mirror_m1 = 0;
    long long mirror_m2 = 0;
};

std::optional<SpecialForm> special_forms(const FusionParams& params);

} // namespace cslopes
