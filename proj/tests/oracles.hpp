#pragma once

// Test-only oracles, independent of the implementation paths they check.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

namespace oracles {

using cplx = std::complex<double>;

// O(N^2) evaluation of G_k = sum_j x_j exp(-2 pi i j k delta).
inline std::vector<cplx> direct_fractional_sum(const std::vector<cplx>& input, double delta) {
    const std::size_t n = input.size();
    std::vector<cplx> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        cplx acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double angle = -2.0 * std::numbers::pi *
                                 static_cast<double>(j) * static_cast<double>(k) * delta;
            acc += input[j] * cplx(std::cos(angle), std::sin(angle));
        }
        out[k] = acc;
    }
    return out;
}

// Adaptive Simpson for complex integrands.
namespace detail {
inline cplx simpson(const std::function<cplx(double)>& f, double a, double b,
                    cplx fa, cplx fm, cplx fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline cplx adapt(const std::function<cplx(double)>& f, double a, double b,
                  cplx fa, cplx fm, cplx fb, cplx whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const cplx fl = f(0.5 * (a + m));
    const cplx fr = f(0.5 * (m + b));
    const cplx left = simpson(f, a, m, fa, fl, fm);
    const cplx right = simpson(f, m, b, fm, fr, fb);
    const cplx delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adapt(f, a, m, fa, fl, fm, left, tol / 2.0, depth - 1) +
           adapt(f, m, b, fm, fr, fb, right, tol / 2.0, depth - 1);
}
}  // namespace detail

inline cplx adaptive_integral(const std::function<cplx(double)>& f, double a, double b,
                              double tol = 1e-13) {
    const cplx fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const cplx whole = detail::simpson(f, a, b, fa, fm, fb);
    return detail::adapt(f, a, b, fa, fm, fb, whole, tol, 40);
}

// Long-double Gaussian elimination with partial pivoting; the independent
// route to the Newton-Cotes weights via the moment system.
inline std::vector<long double> solve_longdouble(std::vector<long double> a,
                                                 std::vector<long double> b, int n) {
    auto at = [&](int r, int c) -> long double& {
        return a[static_cast<std::size_t>(r * n + c)];
    };
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int r = col + 1; r < n; ++r)
            if (fabsl(at(r, col)) > fabsl(at(pivot, col))) pivot = r;
        for (int c = col; c < n; ++c) std::swap(at(pivot, c), at(col, c));
        std::swap(b[static_cast<std::size_t>(pivot)], b[static_cast<std::size_t>(col)]);
        for (int r = col + 1; r < n; ++r) {
            const long double factor = at(r, col) / at(col, col);
            for (int c = col; c < n; ++c) at(r, c) -= factor * at(col, c);
            b[static_cast<std::size_t>(r)] -= factor * b[static_cast<std::size_t>(col)];
        }
    }
    std::vector<long double> x(static_cast<std::size_t>(n));
    for (int r = n - 1; r >= 0; --r) {
        long double s = b[static_cast<std::size_t>(r)];
        for (int c = r + 1; c < n; ++c) s -= at(r, c) * x[static_cast<std::size_t>(c)];
        x[static_cast<std::size_t>(r)] = s / at(r, r);
    }
    return x;
}

// Central finite difference of a scalar function.
inline double central_diff(const std::function<double(double)>& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

}  // namespace oracles
