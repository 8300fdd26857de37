#pragma once

#include <stdexcept>
#include <string>

namespace discordlab {

// Base class for everything thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Incompatible tensor/matrix shapes.
struct DimensionError : Error {
    using Error::Error;
};

// Input outside the mathematical domain of an operation (negative entry
// under a logarithm, |alpha| >= 1, ...).
struct DomainError : Error {
    using Error::Error;
};

// A precondition on values was violated (unnormalized distribution,
// parameter out of range, empty batch, ...).
struct ContractError : Error {
    using Error::Error;
};

// Message size beyond the factorial guard.
struct CapacityError : Error {
    using Error::Error;
};

// Nonzero numerator over zero denominator in element-wise division.
struct DivisionError : Error {
    using Error::Error;
};

// Evaluation at a singular point (mu = 1/2 for the entropy chain rule).
struct SingularPointError : Error {
    using Error::Error;
};

// Least-squares design is rank deficient.
struct DegenerateFitError : Error {
    using Error::Error;
};

// Malformed input file.
struct ParseError : Error {
    using Error::Error;
};

}  // namespace discordlab
