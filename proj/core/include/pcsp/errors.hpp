#pragma once

#include <stdexcept>
#include <string>

namespace pcsp {

// Base class for all errors raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Two structures do not share a signature (relation count / arities differ).
struct SignatureError : Error { using Error::Error; };

// A value lies outside the domain it is supposed to range over.
struct DomainError : Error { using Error::Error; };

// A construction would exceed the configured capacity bound.
struct CapacityError : Error { using Error::Error; };

// A numeric parameter violates its documented range.
struct ParamError : Error { using Error::Error; };

// A template specification violates its invariants.
struct SpecError : Error { using Error::Error; };

// A template pair fails validation (no homomorphism from A to B).
struct TemplateError : Error { using Error::Error; };

// Dimension mismatch between a function and a matrix of inputs.
struct DimError : Error { using Error::Error; };

// A certificate case was requested outside its hypotheses.
struct CaseError : Error { using Error::Error; };

// An operation's documented precondition does not hold.
struct PreconditionError : Error { using Error::Error; };

// Internal invariant violated; indicates a bug, not bad input.
struct InternalError : Error { using Error::Error; };

}  // namespace pcsp
