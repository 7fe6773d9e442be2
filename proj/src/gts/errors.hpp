#pragma once

#include <stdexcept>
#include <string>

namespace gts {

// Argument outside the mathematical domain of an operation (gamma pole,
// MGF strip violation, branch-cut crossing, x = 0 in the Levy density, ...).
struct DomainError : std::domain_error {
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// The martingale equation has no root in the admissible interval.
struct NoSolutionError : std::runtime_error {
    explicit NoSolutionError(const std::string& what) : std::runtime_error(what) {}
};

// Risk-neutral parameters violate the integrability needed for pricing
// (shifted lambda_plus must stay above 1).
struct InvalidMeasureError : std::runtime_error {
    explicit InvalidMeasureError(const std::string& what) : std::runtime_error(what) {}
};

// A transform grid was too narrow for the requested inversion: the
// characteristic function had not decayed at the frequency edge, or the
// reconstructed CDF needed more than cosmetic monotonicity repair.
struct TruncationError : std::runtime_error {
    explicit TruncationError(const std::string& what) : std::runtime_error(what) {}
};

// The contour integral failed its consistency checks (imaginary residual).
struct ContourError : std::runtime_error {
    explicit ContourError(const std::string& what) : std::runtime_error(what) {}
};

// Query point outside a grid's span.
struct OutOfRangeError : std::out_of_range {
    explicit OutOfRangeError(const std::string& what) : std::out_of_range(what) {}
};

// Malformed input file; message carries the line number.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

struct EmptySeriesError : std::runtime_error {
    explicit EmptySeriesError(const std::string& what) : std::runtime_error(what) {}
};

// Likelihood or one of its derivatives became non-finite during a fit.
struct NonFiniteError : std::runtime_error {
    explicit NonFiniteError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gts
