#pragma once

#include <stdexcept>
#include <string>

namespace liex {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// characteristic polynomial has a root outside Q(i); residual holds the unfactored part
struct SplitFailure : Error {
    SplitFailure(const std::string& what, std::string residual_poly)
        : Error(what), residual(std::move(residual_poly)) {}
    std::string residual;
};

struct NotCommuting : Error {
    NotCommuting(int a, int b)
        : Error("NotCommuting: family members " + std::to_string(a) + " and " + std::to_string(b)), first(a), second(b) {}
    int first, second;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

struct ZeroParameter : Error {
    using Error::Error;
};

struct NotSolvable : Error {
    using Error::Error;
};

struct NotTriangular : Error {
    using Error::Error;
};

struct DegenerateEigenvalueMismatch : Error {
    using Error::Error;
};

struct PreconditionViolation : Error {
    using Error::Error;
};

struct OrderTooHigh : Error {
    using Error::Error;
};

// the reduction needs a square root that Q(i) does not contain
struct NoRationalWitness : Error {
    using Error::Error;
};

struct SynthesisObstruction : Error {
    using Error::Error;
};

struct IndexOutOfRange : Error {
    using Error::Error;
};

struct NonFinite : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

}  // namespace liex
