#pragma once

#include <stdexcept>
#include <string>

namespace synaptic {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

struct NotHermitian : Error {
    using Error::Error;
};

struct NotPositive : Error {
    using Error::Error;
};

struct InvalidResolution : Error {
    using Error::Error;
};

struct DomainError : Error {
    using Error::Error;
};

struct NotSharp : Error {
    using Error::Error;
};

struct OverlappingAtoms : Error {
    using Error::Error;
};

// Carries the first offending pair and its commutator norm so callers can
// report an explicit witness.
struct NonCommutingRange : Error {
    NonCommutingRange(std::size_t i, std::size_t j, double norm, const std::string& msg)
        : Error(msg), first(i), second(j), commutator_norm(norm) {}
    std::size_t first;
    std::size_t second;
    double commutator_norm;
};

struct NonCommutingInput : Error {
    using Error::Error;
};

struct KernelViolation : Error {
    KernelViolation(std::size_t r, const std::string& cond, const std::string& msg)
        : Error(msg), row(r), condition(cond) {}
    std::size_t row;
    std::string condition;
};

struct IdealMismatch : Error {
    using Error::Error;
};

struct EffectAlgebraError : Error {
    using Error::Error;
};

struct MeetUndefined : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

} // namespace synaptic
