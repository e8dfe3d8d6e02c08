// errors.hpp - exception types shared across the library
#pragma once

#include <stdexcept>

namespace qkt {

// Base class for every error thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DomainError : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct NotDensityMatrix : Error { using Error::Error; };
struct NotHermitian : Error { using Error::Error; };
struct NotOnSphere : Error { using Error::Error; };
struct IndivisibleBlock : Error { using Error::Error; };
struct SupportMismatch : Error { using Error::Error; };
struct WindowError : Error { using Error::Error; };

// Numerical guarantees broken at run time (norm drift, hermiticity drift,
// identity violations).
struct NumericError : Error { using Error::Error; };

// Bad CLI arguments or config files; maps to exit code 2 in the CLI.
struct ConfigError : Error { using Error::Error; };

}  // namespace qkt
