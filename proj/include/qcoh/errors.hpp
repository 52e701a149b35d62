#pragma once

#include <stdexcept>

namespace qcoh {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotHermitianError : Error { using Error::Error; };
struct NoConvergenceError : Error { using Error::Error; };
struct NegativeEigenvalueError : Error { using Error::Error; };
struct WrongDimensionError : Error { using Error::Error; };
struct DimensionMismatchError : Error { using Error::Error; };
struct InvalidStateError : Error { using Error::Error; };
struct AlphaOutOfRangeError : Error { using Error::Error; };
struct SupportMismatchError : Error { using Error::Error; };
struct IncompleteKrausError : Error { using Error::Error; };
struct NotIncoherentChannelError : Error { using Error::Error; };
struct ParamOutOfRangeError : Error { using Error::Error; };
struct SumMismatchError : Error { using Error::Error; };
struct UnknownFigureError : Error { using Error::Error; };

}  // namespace qcoh
