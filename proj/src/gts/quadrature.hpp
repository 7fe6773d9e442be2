#pragma once

#include <array>
#include <complex>
#include <functional>

namespace gts {

// Closed Newton-Cotes weights of order 12 (13 equispaced nodes per panel),
// normalized so that Int_{x0}^{x0+12h} p = h * sum_j W_j p(x0 + j h) holds
// exactly for polynomials of degree <= 12. Computed from the moment
// conditions in exact integer arithmetic, not transcribed literals.
std::array<double, 13> newton_cotes_weights(int order = 12);

// Composite rule over [a, b] with n subintervals grouped into n/12 panels.
struct CompositeRule {
    double a = 0.0;
    double b = 20.0;
    int points_per_panel = 12;   // Q
    long subintervals = 60000;   // n, multiple of Q
    std::array<double, 13> weights = newton_cotes_weights();

    double step() const { return (b - a) / static_cast<double>(subintervals); }
    void validate() const;
};

CompositeRule make_rule(double a, double b, long subintervals);

// Composite integration of a complex-valued integrand with compensated
// (Kahan) accumulation; the order-12 weights alternate in sign and the
// 60000-term default sum would otherwise shed digits.
std::complex<double> integrate(const std::function<std::complex<double>(double)>& f,
                               const CompositeRule& rule);

double integrate_real(const std::function<double(double)>& f, const CompositeRule& rule);

}  // namespace gts
