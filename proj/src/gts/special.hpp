#pragma once

namespace gts {

// Gamma function with explicit pole detection. Arguments at or numerically
// indistinguishable from a non-positive integer raise DomainError.
double gamma_fn(double x);

// Digamma and trigamma for real non-pole arguments, needed by the
// parameter derivatives of the characteristic exponent.
double digamma(double x);
double trigamma(double x);

// Standard normal CDF, accurate to ~1e-15 (erfc based).
double norm_cdf(double x);

}  // namespace gts
