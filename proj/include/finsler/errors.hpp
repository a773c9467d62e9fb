#ifndef FINSLER_ERRORS_HPP
#define FINSLER_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace finsler {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// An argument lies outside the mathematical domain of the operation
/// (point outside the unit disk, radius out of range, bad grid spec, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A direction argument that must be nonzero is the zero vector.
class ZeroVectorError : public Error {
public:
    using Error::Error;
};

/// A curve that must be closed has mismatched endpoints.
class NotClosedError : public Error {
public:
    using Error::Error;
};

/// Too few samples for the requested discrete operation.
class TooCoarseError : public Error {
public:
    using Error::Error;
};

/// An iterative scheme failed to reach its tolerance within its budget.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// Interval or sequence arguments are not in the required order.
class OrderError : public Error {
public:
    using Error::Error;
};

/// A curve leaves the admissible radial band of the unit disk.
class OutOfDiskError : public Error {
public:
    using Error::Error;
};

/// No radial rescaling inside the disk attains the requested length.
class UnreachableLengthError : public Error {
public:
    using Error::Error;
};

/// An accepted optimizer step decreased the objective beyond tolerance.
class NonMonotoneError : public Error {
public:
    using Error::Error;
};

} // namespace finsler

#endif // FINSLER_ERRORS_HPP
