#pragma once

#include <complex>
#include <stdexcept>

namespace hermitia {

using cplx = std::complex<double>;

// Coefficients with magnitude at or below this are dropped after every
// algebraic operation, so forms never accumulate numerical dust.
inline constexpr double kPruneTol = 1e-14;

// Default tolerance for validation, identity checks and verdicts.
inline constexpr double kDefaultTol = 1e-9;

inline constexpr const char* kToolVersion = "0.1.0";

// Connection parameters outside the admissible set, model inputs outside
// their domain (zero base point, n too small), and similar.
struct OutsideDomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// A linear solve inside an operation produced no consistent solution.
// Indicates broken input data or a convention mismatch, never a tolerance
// issue.
struct InconsistentEquationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input file.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace hermitia
