#include "gts/quadrature.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "gts/errors.hpp"

namespace gts {

namespace {

using int128 = __int128;

long double to_long_double(int128 v) {
    const bool neg = v < 0;
    if (neg) v = -v;
    const auto hi = static_cast<unsigned long long>(static_cast<unsigned __int128>(v) >> 64);
    const auto lo = static_cast<unsigned long long>(static_cast<unsigned __int128>(v));
    long double r = std::ldexp(static_cast<long double>(hi), 64) + static_cast<long double>(lo);
    return neg ? -r : r;
}

// W_j = Int_0^{12} prod_{m != j} (t - m) / (j - m) dt, evaluated exactly:
// the Lagrange numerator has integer coefficients, Int t^k = 12^{k+1}/(k+1),
// and lcm(1..13) clears the denominators so every intermediate is an
// integer. The alternating-sign cancellation that ruins floating-point
// evaluation of these integrals never happens.
std::array<double, 13> compute_weights_order12() {
    constexpr int q = 12;
    constexpr int128 lcm_1_13 = 360360;  // lcm(1..13)

    std::array<double, 13> w{};
    for (int j = 0; j <= q; ++j) {
        // coefficients of prod_{m != j} (t - m), degree 12
        std::vector<int128> poly{1};
        for (int m = 0; m <= q; ++m) {
            if (m == j) continue;
            std::vector<int128> next(poly.size() + 1, 0);
            for (std::size_t c = 0; c < poly.size(); ++c) {
                next[c + 1] += poly[c];
                next[c] -= poly[c] * m;
            }
            poly = std::move(next);
        }

        int128 numerator = 0;  // lcm * Int_0^{12} numerator polynomial
        int128 power = 12;     // 12^{k+1}
        for (std::size_t k = 0; k < poly.size(); ++k) {
            numerator += poly[k] * power * (lcm_1_13 / static_cast<int128>(k + 1));
            power *= 12;
        }

        int128 denominator = lcm_1_13;  // lcm * prod_{m != j} (j - m)
        for (int m = 0; m <= q; ++m)
            if (m != j) denominator *= (j - m);

        w[j] = static_cast<double>(to_long_double(numerator) / to_long_double(denominator));
    }
    return w;
}

}  // namespace

std::array<double, 13> newton_cotes_weights(int order) {
    if (order != 12)
        throw DomainError("newton_cotes_weights: only order 12 is supported");
    static const std::array<double, 13> weights = compute_weights_order12();
    return weights;
}

void CompositeRule::validate() const {
    if (points_per_panel != 12)
        throw DomainError("CompositeRule: only Q = 12 is supported");
    if (subintervals <= 0 || subintervals % points_per_panel != 0)
        throw DomainError("CompositeRule: n must be a positive multiple of Q");
    if (!(b > a)) throw DomainError("CompositeRule: requires b > a");
}

CompositeRule make_rule(double a, double b, long subintervals) {
    CompositeRule rule;
    rule.a = a;
    rule.b = b;
    rule.subintervals = subintervals;
    rule.validate();
    return rule;
}

std::complex<double> integrate(const std::function<std::complex<double>(double)>& f,
                               const CompositeRule& rule) {
    rule.validate();
    const double h = rule.step();
    const long panels = rule.subintervals / rule.points_per_panel;

    double sum_re = 0.0, c_re = 0.0;
    double sum_im = 0.0, c_im = 0.0;
    auto accumulate = [&](double wre, double wim) {
        double y = wre - c_re;
        double t = sum_re + y;
        c_re = (t - sum_re) - y;
        sum_re = t;
        y = wim - c_im;
        t = sum_im + y;
        c_im = (t - sum_im) - y;
        sum_im = t;
    };

    for (long p = 0; p < panels; ++p) {
        for (int j = 0; j <= rule.points_per_panel; ++j) {
            const long node = p * rule.points_per_panel + j;
            const double x = rule.a + h * static_cast<double>(node);
            const std::complex<double> v = f(x);
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw DomainError("integrate: integrand not finite at x = " + std::to_string(x));
            const double w = rule.weights[static_cast<std::size_t>(j)];
            accumulate(w * v.real(), w * v.imag());
        }
    }
    return {h * sum_re, h * sum_im};
}

double integrate_real(const std::function<double(double)>& f, const CompositeRule& rule) {
    return integrate([&](double x) { return std::complex<double>(f(x), 0.0); }, rule).real();
}

}  // namespace gts
