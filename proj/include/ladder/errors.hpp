#pragma once

#include <stdexcept>
#include <string>

namespace ladder {

/// Base class for every domain failure raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Some lambda_j^2 required by a window is negative: the parameters leave the
/// real-lambda (Hermitian) representation.
class NonUnitaryRegime : public Error {
public:
    using Error::Error;
};

/// A tan/sec argument sits on (or within 1e-9 of) a pole.
class PoleError : public Error {
public:
    using Error::Error;
};

/// A series did not converge in its admissible region or term budget.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// An intermediate matrix norm left the floating range.
class OverflowError : public Error {
public:
    using Error::Error;
};

/// A denominator q -/+ c sigma tan q vanished in the U2 factors.
class DivisionByZero : public Error {
public:
    using Error::Error;
};

/// The rotation parameter s = cos w - i cos t sin w vanished.
class SingularS : public Error {
public:
    using Error::Error;
};

/// The requested operation has no meaning for the given algebra
/// (e.g. ordering the phase-operator exponential).
class UnsupportedAlgebra : public Error {
public:
    using Error::Error;
};

} // namespace ladder
