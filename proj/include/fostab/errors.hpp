#pragma once

#include <stdexcept>
#include <string>

namespace fostab {

/// Base class of every error thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A matrix entry is NaN or infinite.
class NonFiniteError : public Error {
public:
    using Error::Error;
};

/// Matrix dimensions do not match the operation's requirements.
class ShapeMismatchError : public Error {
public:
    using Error::Error;
};

/// A matrix handed to a Hermitian-only routine is not Hermitian within tolerance.
class NotHermitianError : public Error {
public:
    using Error::Error;
};

/// An iterative eigensolver exhausted its sweep budget.
class NoConvergenceError : public Error {
public:
    using Error::Error;
};

/// The Lyapunov equation has no positive definite solution, so the
/// coefficient matrix cannot have a spectrum strictly in the open left
/// half plane.
class NotHurwitzError : public Error {
public:
    using Error::Error;
};

/// A matrix required to be positive definite is not.
class NotPositiveDefiniteError : public Error {
public:
    using Error::Error;
};

/// Interval bounds are inverted (some lower entry exceeds its upper entry).
class BoundsViolationError : public Error {
public:
    using Error::Error;
};

/// The number of interval vertices exceeds the configured cap.
class VertexExplosionError : public Error {
public:
    using Error::Error;
};

/// The grid oracle would have to evaluate more points than its cap allows.
class GridExplosionError : public Error {
public:
    using Error::Error;
};

/// The fractional order alpha lies outside [1, 2).
class OrderOutOfRangeError : public Error {
public:
    using Error::Error;
};

/// A per-point certificate was requested for a matrix that is not stable.
class NotPointStableError : public Error {
public:
    using Error::Error;
};

/// The general eigenvalue iteration failed to converge.
class SpectrumFailureError : public Error {
public:
    using Error::Error;
};

/// A configuration record violates its invariants.
class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace fostab
