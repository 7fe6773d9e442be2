#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "gts/params.hpp"

namespace gts {

// Discretization of the Fourier inversion. The fractional transform
// decouples the frequency spacing (set by characteristic-function decay)
// from the spatial spacing (set by the target support).
struct FrftConfig {
    std::size_t n_points = 1 << 14;  // power of two, >= 64
    double freq_step = 0.0;
    double space_step = 0.0;

    double delta() const;  // freq_step * space_step / (2 pi)
    void validate() const;
};

enum class GridKind { Density, Cdf };

// Uniform grid of density or CDF values with its provenance hash.
struct TransformGrid {
    GridKind kind = GridKind::Density;
    double x0 = 0.0;
    double dx = 0.0;
    std::vector<double> values;
    std::uint64_t params_fingerprint = 0;

    std::size_t size() const { return values.size(); }
    double x(std::size_t i) const { return x0 + dx * static_cast<double>(i); }
    double x_min() const { return x0; }
    double x_max() const { return x(values.empty() ? 0 : values.size() - 1); }
};

// Frequency span sized so |exp(tau Psi)| decays below 1e-12 at the edge,
// spatial span covering mean +- 12 standard deviations (widened to
// min_halfwidth when a caller needs more support, e.g. to cover data).
FrftConfig auto_config(const GtsParams& p, double tau, double min_halfwidth = 0.0,
                       std::size_t n_points = 1 << 14);

// f(x, tau) = (1/2pi) Int exp(i x z + tau Psi(-z)) dz on the configured
// grid, centered at k1*tau. Throws TruncationError when the integrand has
// not decayed at the frequency edge.
TransformGrid density_grid(const GtsParams& p, double tau, const FrftConfig& cfg);

// F(x, tau) = (1/2pi) Int exp(i x z + tau Psi(-z)) / (iz) dz + 1/2 with the
// zero-frequency bin excluded (the principal value) and the analytic 1/2
// added back. A running-maximum pass repairs residual ringing; repairs
// above 1e-6 raise TruncationError.
TransformGrid cdf_grid(const GtsParams& p, double tau, const FrftConfig& cfg);

// Linear interpolation at x. Density values clamp at 0, CDF values clamp
// to [0,1]. Throws OutOfRangeError outside the span.
double query(const TransformGrid& grid, double x);

// Shared inversion core: recovers (dz/2pi) sum_j c_j exp(i x_k z_j) on the
// spatial grid x_k = x0 + k dx for z_j = (j - N/2) dz. The coefficients
// must already include any trapezoid end weights.
std::vector<double> invert_spectrum(std::vector<std::complex<double>> coeffs,
                                    const FrftConfig& cfg, double x0);

}  // namespace gts
