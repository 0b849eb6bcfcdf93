#pragma once

#include <stdexcept>
#include <string>

namespace qdsp {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invalid parameter value (probabilities, rates, orders, ...).
struct DomainError : Error {
    using Error::Error;
};

/// Path enumeration would exceed the configured cap.
struct CapExceeded : Error {
    using Error::Error;
};

/// Register size outside the supported range.
struct SizeError : Error {
    using Error::Error;
};

/// Qubit index out of range or duplicated.
struct IndexError : Error {
    using Error::Error;
};

/// Gate of an unexpected kind passed to a transformation.
struct WrongGateKind : Error {
    using Error::Error;
};

/// Branching factor not supported by the circuit construction.
struct UnsupportedK : Error {
    using Error::Error;
};

/// A required characteristic-function evaluation is missing.
struct MissingEval : Error {
    using Error::Error;
};

/// Adaptive quadrature failed to reach the requested tolerance.
struct QuadratureFailure : Error {
    using Error::Error;
};

} // namespace qdsp
