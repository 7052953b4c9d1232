#pragma once

#include <stdexcept>
#include <string>

namespace rs {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed input: shape mismatch, parameter mismatch, bad file contents.
struct StructuralError : Error {
    using Error::Error;
};

/// A precondition on argument values failed.
struct ArgumentError : Error {
    using Error::Error;
};

/// A matrix required to be invertible is singular under the relative-sigma rule.
struct SingularityError : Error {
    SingularityError(const std::string& what, double smallest)
        : Error(what), lambda_min(smallest) {}
    double lambda_min;
};

/// Combinatorial or resource cap exceeded (e.g. LR enumeration, erasure scan).
struct CapError : Error {
    using Error::Error;
};

/// A numerical construction did not reach its residual target.
struct ConvergenceError : Error {
    ConvergenceError(const std::string& what, double res)
        : Error(what), residual(res) {}
    double residual;
};

/// Projection pair outside the local chart of the polar section.
struct OutOfChartError : Error {
    using Error::Error;
};

/// Randomized construction degenerated past its retry budget.
struct DegeneracyError : Error {
    using Error::Error;
};

}  // namespace rs
