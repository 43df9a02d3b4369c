#pragma once

#include <stdexcept>
#include <string>

namespace machin {

struct Error : std::runtime_error {
    explicit Error(const std::string& m) : std::runtime_error(m) {}
};

// Input outside an operation's mathematical domain (sqrt of a negative,
// log of zero, series argument outside its convergence region, ...).
struct DomainError : Error {
    explicit DomainError(const std::string& m) : Error(m) {}
};

// An iteration failed to settle within its configured cap.
struct ConvergenceError : Error {
    explicit ConvergenceError(const std::string& m) : Error(m) {}
};

// The requested accuracy cannot be certified at the current working precision.
struct PrecisionError : Error {
    explicit PrecisionError(const std::string& m) : Error(m) {}
};

// A floor could not be certified: the value sits within its error bound of an
// integer even after the allowed precision escalations.
struct FloorAmbiguityError : PrecisionError {
    explicit FloorAmbiguityError(const std::string& m) : PrecisionError(m) {}
};

// A tangent evaluation ran too close to an odd multiple of pi/2.
struct PoleProximityError : PrecisionError {
    explicit PoleProximityError(const std::string& m) : PrecisionError(m) {}
};

// Two computations that must agree did not (internal cross-check failure).
struct ConsistencyError : Error {
    explicit ConsistencyError(const std::string& m) : Error(m) {}
};

// Malformed formula JSON or unparseable input.
struct ParseError : Error {
    explicit ParseError(const std::string& m) : Error(m) {}
};

} // namespace machin
