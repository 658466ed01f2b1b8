#pragma once

#include <stdexcept>
#include <string>

namespace cslopes {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// exactpoly
struct ZeroPolynomial : Error {
    ZeroPolynomial() : Error("degree of the zero polynomial is undefined") {}
};

// qpoly
struct BelowValidity : Error {
    using Error::Error;
};
struct NonConstantSlope : Error {
    using Error::Error;
};
struct PositiveLinearTerm : Error {
    using Error::Error;
};
struct NoFit : Error {
    using Error::Error;
};
struct InsufficientSamples : Error {
    using Error::Error;
};

// cabling
struct InvalidCableParams : Error {
    using Error::Error;
};
struct NotAdmissible : Error {
    using Error::Error;
};
struct StabilizationFailure : Error {
    using Error::Error;
};
struct NoExactForm : Error {
    using Error::Error;
};
struct NoClosedForm : Error {
    using Error::Error;
};

// fusion
struct OutsideLattice : Error {
    using Error::Error;
};
struct DegenerateM2 : Error {
    DegenerateM2() : Error("m2 in {-1,0} is degenerate: use special_forms and the exact engine") {}
};
struct UnspecifiedRegion : Error {
    using Error::Error;
};

// io / cli
struct ParseError : Error {
    using Error::Error;
};

} // namespace cslopes
