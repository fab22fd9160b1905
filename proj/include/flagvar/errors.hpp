#pragma once

#include <stdexcept>
#include <string>

namespace flagvar {

/// Base class of every error thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Scalars from different ground fields were combined.
struct FieldMismatchError : Error {
    using Error::Error;
};

/// Inversion or division by the zero element.
struct DivisionByZeroError : Error {
    using Error::Error;
};

/// A matrix required to be invertible is singular.
struct SingularMatrixError : Error {
    using Error::Error;
};

/// Join or meet of coincident projective objects.
struct DegenerateJoinError : Error {
    using Error::Error;
};

/// A (point, line, plane) triple violates an incidence required of a flag.
struct IncidenceError : Error {
    using Error::Error;
};

/// Exhaustive enumeration requested over an infinite field.
struct EnumerationError : Error {
    using Error::Error;
};

/// An exhaustive computation was requested for a field above its size guard.
struct SizeLimitError : Error {
    using Error::Error;
};

/// A flag map does not induce a well-defined line map.
struct NotPluckerMapError : Error {
    using Error::Error;
};

/// A map table is not a bijection.
struct NonBijectiveError : Error {
    using Error::Error;
};

/// A verified reconstruction failed its own consistency check.
struct InternalInconsistencyError : Error {
    using Error::Error;
};

/// Vectors from ambient spaces of different dimension were combined.
struct DimensionMismatchError : Error {
    using Error::Error;
};

}  // namespace flagvar
