#include "gts/frft.hpp"

#include <cmath>
#include <numbers>

#include "gts/errors.hpp"

namespace gts {

namespace {

using cvec = std::vector<std::complex<double>>;

std::size_t next_pow2(std::size_t n) {
    std::size_t m = 1;
    while (m < n) m <<= 1;
    return m;
}

// exp(i pi j^2 delta) with the quadratic phase reduced before the trig call;
// j^2 * delta can reach 1e3 and the reduction keeps the argument accurate.
std::complex<double> quad_phase(std::size_t j, double delta, double sign) {
    const double jd = static_cast<double>(j);
    double turns = 0.5 * jd * jd * delta;       // phase in units of 2 pi
    turns -= std::floor(turns);
    const double angle = sign * 2.0 * std::numbers::pi * turns;
    return {std::cos(angle), std::sin(angle)};
}

}  // namespace

void fft_pow2(cvec& a, bool inverse) {
    const std::size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw DomainError("fft_pow2: length must be a power of two");

    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }

    // Per-stage twiddles from a shared table built with direct trig calls.
    static thread_local cvec table;
    if (table.size() < n / 2 + 1) {
        table.resize(n / 2 + 1);
        for (std::size_t k = 0; k <= n / 2; ++k) {
            const double ang = -2.0 * std::numbers::pi * static_cast<double>(k) /
                               static_cast<double>(n);
            table[k] = {std::cos(ang), std::sin(ang)};
        }
    }
    const std::size_t table_n = 2 * (table.size() - 1);

    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t stride = table_n / len;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                std::complex<double> w = table[k * stride];
                if (inverse) w = std::conj(w);
                const std::complex<double> u = a[i + k];
                const std::complex<double> v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
            }
        }
    }
    if (inverse) {
        const double scale = 1.0 / static_cast<double>(n);
        for (auto& x : a) x *= scale;
    }
}

std::vector<std::complex<double>> frft(const cvec& input, double delta) {
    const std::size_t n = input.size();
    if (n == 0) throw DomainError("frft: empty input");
    if (n == 1) return {input[0]};

    // jk = (j^2 + k^2 - (k - j)^2) / 2 turns the kernel into a convolution:
    //   G_k = e^{-i pi k^2 d} * sum_j (x_j e^{-i pi j^2 d}) e^{+i pi (k-j)^2 d}
    const std::size_t m = next_pow2(2 * n);
    cvec y(m, {0.0, 0.0});
    cvec z(m, {0.0, 0.0});
    for (std::size_t j = 0; j < n; ++j)
        y[j] = input[j] * quad_phase(j, delta, -1.0);
    z[0] = {1.0, 0.0};
    for (std::size_t j = 1; j < n; ++j) {
        const std::complex<double> v = quad_phase(j, delta, +1.0);
        z[j] = v;
        z[m - j] = v;
    }

    fft_pow2(y, false);
    fft_pow2(z, false);
    for (std::size_t j = 0; j < m; ++j) y[j] *= z[j];
    fft_pow2(y, true);

    cvec out(n);
    for (std::size_t k = 0; k < n; ++k)
        out[k] = quad_phase(k, delta, -1.0) * y[k];
    return out;
}

}  // namespace gts
