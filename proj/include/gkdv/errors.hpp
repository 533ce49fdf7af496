#pragma once

#include <stdexcept>
#include <string>

namespace gkdv {

// Error taxonomy shared across the library.  All of these derive from the
// standard exception hierarchy so callers that don't care about the precise
// kind can still catch std::exception.

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct GridMismatchError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Hermitian symmetry violated where a real-valued function was required.
struct SymmetryError : std::domain_error {
  using std::domain_error::domain_error;
};

// Division by a vanishing symbol (e.g. |xi|^a at xi = 0 with a < 0).
struct SingularityError : std::domain_error {
  using std::domain_error::domain_error;
};

struct PreconditionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Spectral padding too small for the requested polynomial degree.
struct AliasingError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A dense lattice sum would exceed the configured term budget.
struct SizeOverflowError : std::length_error {
  using std::length_error::length_error;
};

struct ResolutionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Ratio with an exactly-zero denominator requested.
struct UndefinedRatioError : std::domain_error {
  using std::domain_error::domain_error;
};

}  // namespace gkdv
