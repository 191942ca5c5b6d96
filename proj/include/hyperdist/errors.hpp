#pragma once

#include <stdexcept>
#include <string>

namespace hyperdist {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// numeric domain problems (log of 0, ball touching a branch cut, ...)
struct DomainError : Error { using Error::Error; };
// gamma / elliptic-K evaluated at a pole
struct PoleError : Error { using Error::Error; };
struct DivergentSeries : Error { using Error::Error; };
// the requested accuracy could not be certified
struct PrecisionExhausted : Error { using Error::Error; };
struct UnboundSymbol : Error { using Error::Error; };
struct EvaluationError : Error { using Error::Error; };

// transform preconditions
struct InvalidSpec : Error { using Error::Error; };
struct NotIntegerDifference : Error { using Error::Error; };
struct VanishingPochhammer : Error { using Error::Error; };
struct DuplicateParameter : Error { using Error::Error; };

// theorem application
struct SideConditionViolated : Error { using Error::Error; };
struct PoleInRHS : Error { using Error::Error; };

// corpus / io
struct ParseError : Error { using Error::Error; };
struct ValidationError : Error { using Error::Error; };
struct ConstraintViolated : Error { using Error::Error; };

} // namespace hyperdist
