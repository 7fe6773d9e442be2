#pragma once

#include <complex>

#include "gts/params.hpp"

namespace gts {

using cplx = std::complex<double>;

// Levy density at x != 0:
//   alpha+ e^{-lambda+ x} / x^{1+beta+}      for x > 0
//   alpha- e^{-lambda- |x|} / |x|^{1+beta-}  for x < 0
double levy_density(const GtsParams& p, double x);

enum class LevyActivity { FiniteActivity, InfiniteActivity };

struct LevyMass {
    double value = 0.0;  // +infinity when any active side has beta >= 0
    LevyActivity activity = LevyActivity::FiniteActivity;
};

// Total mass of the Levy measure. A side with alpha > 0 and beta >= 0
// contributes infinite activity; a tempered side with beta < 0 contributes
// alpha * lambda^beta * Gamma(-beta).
LevyMass total_levy_mass(const GtsParams& p);

// Characteristic exponent (principal branch):
//   Psi(xi) = i mu xi + alpha+ G(-beta+) ((lambda+ - i xi)^beta+ - lambda+^beta+)
//           + alpha- G(-beta-) ((lambda- + i xi)^beta- - lambda-^beta-)
// Valid for complex xi as long as both power arguments stay off the closed
// negative real axis.
cplx characteristic_exponent(const GtsParams& p, cplx xi);

// Exponent of the moment generating function, Psi(-ih) evaluated without
// leaving the real line. Requires -lambda- < h < lambda+.
double mgf_exponent(const GtsParams& p, double h);

// M(h, t) = exp(t * Psi(-ih)).
double mgf(const GtsParams& p, double h, double t);

// Esscher exponent Psi_h(z) = Psi(-i(h+z)) - Psi(-ih); both h and h+z must
// lie inside the MGF strip.
double esscher_exponent(const GtsParams& p, double h, double z);

// Tilt the tail decay rates: lambda+ -> lambda+ - h, lambda- -> lambda- + h.
GtsParams esscher_shift(const GtsParams& p, double h_star);

// Root of Psi_h(1) = r over h in (-lambda-, lambda+ - 1), which exists and
// is unique because Psi_h(1) is strictly increasing in h. Bracketing
// bisection refined by secant steps; |Psi_h*(1) - r| < 1e-10 on return.
// Throws NoSolutionError when r is outside the attainable range and
// InvalidMeasureError when the tilted lambda+ does not exceed 1.
EsscherSolution solve_esscher(const GtsParams& p, double rate);

// n-th cumulant of the time-1 distribution, n in 1..4:
//   k1 = mu + alpha+ G(1-beta+) lambda+^{beta+-1} - alpha- G(1-beta-) lambda-^{beta--1}
//   kn = alpha+ G(n-beta+) lambda+^{beta+-n} + (-1)^n alpha- G(n-beta-) lambda-^{beta--n}
double cumulant(const GtsParams& p, int n);

CumulantSet cumulants(const GtsParams& p);

}  // namespace gts
