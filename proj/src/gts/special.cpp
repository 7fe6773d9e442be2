#include "gts/special.hpp"

#include <cmath>
#include <string>

#include "gts/errors.hpp"

namespace gts {

namespace {

bool near_nonpositive_integer(double x) {
    if (x > 0.5) return false;
    const double nearest = std::round(x);
    return nearest <= 0.0 && std::abs(x - nearest) < 1e-12;
}

}  // namespace

double gamma_fn(double x) {
    if (!std::isfinite(x)) throw DomainError("gamma: non-finite argument");
    if (near_nonpositive_integer(x))
        throw DomainError("gamma: pole at " + std::to_string(x));
    return std::tgamma(x);
}

// Recurrence up to x >= 10, then the Bernoulli asymptotic series. Negative
// non-pole arguments are lifted with psi(x) = psi(x+1) - 1/x.
double digamma(double x) {
    if (!std::isfinite(x)) throw DomainError("digamma: non-finite argument");
    if (near_nonpositive_integer(x))
        throw DomainError("digamma: pole at " + std::to_string(x));
    double result = 0.0;
    while (x < 10.0) {
        result -= 1.0 / x;
        x += 1.0;
    }
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    result += std::log(x) - 0.5 * inv
            - inv2 * (1.0 / 12.0 -
                      inv2 * (1.0 / 120.0 -
                              inv2 * (1.0 / 252.0 -
                                      inv2 * (1.0 / 240.0 -
                                              inv2 * (1.0 / 132.0 - inv2 * 691.0 / 32760.0)))));
    return result;
}

double trigamma(double x) {
    if (!std::isfinite(x)) throw DomainError("trigamma: non-finite argument");
    if (near_nonpositive_integer(x))
        throw DomainError("trigamma: pole at " + std::to_string(x));
    double result = 0.0;
    while (x < 10.0) {
        result += 1.0 / (x * x);
        x += 1.0;
    }
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    result += inv * (1.0 +
                     inv * (0.5 +
                            inv * (1.0 / 6.0 -
                                   inv2 * (1.0 / 30.0 -
                                           inv2 * (1.0 / 42.0 -
                                                   inv2 * (1.0 / 30.0 -
                                                           inv2 * 5.0 / 66.0))))));
    return result;
}

double norm_cdf(double x) {
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

}  // namespace gts
