#pragma once

#include <stdexcept>
#include <string>

namespace kf {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DomainError : Error {
    using Error::Error;
};

struct IndexError : Error {
    using Error::Error;
};

struct InvalidInput : Error {
    using Error::Error;
};

struct NoRealRoot : Error {
    NoRealRoot() : Error("polynomial has no real root") {}
};

struct DivisionByZeroSeries : Error {
    DivisionByZeroSeries() : Error("series inverse requires nonzero constant term") {}
};

struct ArcCollapse : Error {
    ArcCollapse() : Error("all image components vanish identically on the arc") {}
};

struct GenericityFailure : Error {
    using Error::Error;
};

struct UnsupportedCase : Error {
    using Error::Error;
};

struct NoPolynomialForCase6 : UnsupportedCase {
    NoPolynomialForCase6() : UnsupportedCase("no characteristic polynomial for case Odd6") {}
};

// A blowup tower that stops at level j because the forward and backward
// centers separate there.
struct SequenceBlocked : Error {
    int level;
    explicit SequenceBlocked(int j)
        : Error("ep/ip tower blocked at level " + std::to_string(j)), level(j) {}
};

struct PoleAtU : Error {
    using Error::Error;
};

struct AmbiguousTarget : Error {
    using Error::Error;
};

struct DegenerateSamples : Error {
    using Error::Error;
};

struct InputNotInKernel : Error {
    using Error::Error;
};

} // namespace kf
