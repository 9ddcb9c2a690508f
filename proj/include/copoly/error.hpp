#pragma once

#include <stdexcept>
#include <string>

namespace copoly {

// Base class for every error raised by the library. The CLI maps these to
// exit codes, so subclasses only differ in their name.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define COPOLY_ERROR(Name)               \
  class Name : public Error {            \
   public:                               \
    using Error::Error;                  \
  };

COPOLY_ERROR(ZeroDenominator)
COPOLY_ERROR(NotSquare)
COPOLY_ERROR(DimensionMismatch)
COPOLY_ERROR(ParseError)
COPOLY_ERROR(Unbounded)
COPOLY_ERROR(EmptyPolytope)
COPOLY_ERROR(NotMember)
COPOLY_ERROR(UnsupportedSize)
COPOLY_ERROR(MarginMismatch)
COPOLY_ERROR(NonIncreasingMargins)
COPOLY_ERROR(BadBoundary)
COPOLY_ERROR(OutOfRange)
COPOLY_ERROR(PreconditionFailed)
COPOLY_ERROR(InsufficientData)
COPOLY_ERROR(Infeasible)
COPOLY_ERROR(NoInterior)
COPOLY_ERROR(InvalidArgument)

#undef COPOLY_ERROR

class NotConverged : public Error {
 public:
  NotConverged(long iterations, double residual)
      : Error("maxent did not converge after " + std::to_string(iterations) +
              " iterations (residual " + std::to_string(residual) + ")"),
        iterations(iterations),
        residual(residual) {}
  long iterations;
  double residual;
};

}  // namespace copoly
