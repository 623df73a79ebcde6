#pragma once

#include <stdexcept>
#include <string>

namespace ubk {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input/shape problems.
struct DimensionMismatch : Error { using Error::Error; };
struct InvalidParameter : Error { using Error::Error; };
struct InvalidStart : Error { using Error::Error; };
struct AdjointUnavailable : Error { using Error::Error; };
struct InverseUnavailable : Error { using Error::Error; };
struct InvalidVerblunsky : Error { using Error::Error; };

// Numerical failures.
struct NotHermitian : Error { using Error::Error; };
struct IndefiniteMatrix : Error { using Error::Error; };
struct SingularMatrix : Error { using Error::Error; };
struct ConvergenceFailure : Error { using Error::Error; };
struct NotNormal : Error { using Error::Error; };

} // namespace ubk
