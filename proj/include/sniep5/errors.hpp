#pragma once

#include <stdexcept>
#include <string>

namespace sniep5 {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Input contains NaN or infinity.
class NonFiniteError : public Error {
public:
    using Error::Error;
};

/// Spectrum sum is not zero within tolerance.
class NonZeroTraceError : public Error {
public:
    using Error::Error;
};

/// |lambda5| exceeds lambda1: the spectral radius would not be the Perron root.
class NotPerronDominantError : public Error {
public:
    using Error::Error;
};

/// lambda1 <= 0 while the spectrum is not identically zero.
class NonPositiveLeadingError : public Error {
public:
    using Error::Error;
};

/// A tuple that must be non-increasing is not.
class NotOrderedError : public Error {
public:
    using Error::Error;
};

/// Argument outside the mathematical domain of a boundary function.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A construction was invoked outside its supported region.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Fiedler glue called with alpha1 < beta1 or eps < 0.
class GluePreconditionError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

/// The u entry of the explicit B family degenerated to ~0.
class DegenerateUError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

/// An internal self-check failed; indicates a bug, never expected.
class VerificationError : public Error {
public:
    using Error::Error;
};

/// A user-supplied matrix violates symmetry, nonnegativity, or zero trace.
class MatrixPropertyError : public Error {
public:
    using Error::Error;
};

/// Jacobi sweeps did not converge (not expected for order <= 5).
class NoConvergenceError : public Error {
public:
    using Error::Error;
};

/// No eigenvector of the top eigenvalue could be sign-normalized nonnegative.
class NotPerronLikeError : public Error {
public:
    using Error::Error;
};

} // namespace sniep5
