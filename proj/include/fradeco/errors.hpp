#pragma once

#include <stdexcept>
#include <string>

namespace fradeco {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Precondition / input errors.
struct ShapeMismatchError : Error { using Error::Error; };
struct ZeroColumnError : Error { using Error::Error; };
struct NotUnitQuaternionError : Error { using Error::Error; };
struct UnsupportedRankError : Error { using Error::Error; };
struct OrderTooSmallError : Error { using Error::Error; };
struct UnknownEquationError : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

// Computation outcomes reported as errors.
struct SamplingFailedError : Error { using Error::Error; };
struct NotRankDeficientError : Error { using Error::Error; };
struct SingularPointError : Error { using Error::Error; };
struct RepeatedRootsError : Error { using Error::Error; };
struct FullRankError : Error { using Error::Error; };
struct RankTooLowError : Error { using Error::Error; };
struct NotFoundError : Error { using Error::Error; };
struct BudgetExceededError : Error { using Error::Error; };

/// A singular-value gap test failed: the integer answer cannot be trusted.
struct IndeterminateError : Error { using Error::Error; };

}  // namespace fradeco
