#include "gts/transform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "gts/errors.hpp"
#include "gts/frft.hpp"
#include "gts/process.hpp"

namespace gts {

namespace {

constexpr double kEdgeDecay = 1e-12;
constexpr double kMaxRepair = 1e-6;

double edge_magnitude(const GtsParams& p, double tau, double z) {
    return std::abs(std::exp(tau * characteristic_exponent(p, cplx(-z, 0.0))));
}

}  // namespace

double FrftConfig::delta() const {
    return freq_step * space_step / (2.0 * std::numbers::pi);
}

void FrftConfig::validate() const {
    if (n_points < 64 || (n_points & (n_points - 1)) != 0)
        throw DomainError("FrftConfig: n_points must be a power of two >= 64");
    if (!(freq_step > 0.0) || !(space_step > 0.0))
        throw DomainError("FrftConfig: steps must be positive");
}

FrftConfig auto_config(const GtsParams& p, double tau, double min_halfwidth,
                       std::size_t n_points) {
    p.validate();
    if (!(tau > 0.0)) throw DomainError("auto_config: tau must be positive");
    const double k2 = cumulant(p, 2);
    if (!(k2 > 0.0))
        throw TruncationError("auto_config: zero variance, nothing to invert");
    const double sigma = std::sqrt(k2 * tau);

    // Spatial span: 12 standard deviations, widened when the exponential
    // tails decay slowly (lambda h >= 30 keeps the lost tail mass near
    // e^-30) or when the caller needs more support.
    double lambda_min = 0.0;
    if (p.alpha_plus > 0.0) lambda_min = p.lambda_plus;
    if (p.alpha_minus > 0.0)
        lambda_min = lambda_min > 0.0 ? std::min(lambda_min, p.lambda_minus) : p.lambda_minus;
    double halfwidth = std::max(12.0 * sigma, min_halfwidth);
    if (lambda_min > 0.0) halfwidth = std::max(halfwidth, 30.0 / lambda_min);

    FrftConfig cfg;
    cfg.n_points = n_points;
    cfg.space_step = 2.0 * halfwidth / static_cast<double>(n_points);

    // Frequency span: grow until the characteristic function has decayed at
    // both edges, then tighten by bisection so the span is not overshot.
    // The aliasing period 2pi/dz must stay clear of twice the spatial span,
    // which bounds how far the growth may go.
    const double z_limit = std::numbers::pi * static_cast<double>(n_points) /
                           (4.0 * halfwidth);
    auto decayed = [&](double z) {
        return edge_magnitude(p, tau, z) <= kEdgeDecay &&
               edge_magnitude(p, tau, -z) <= kEdgeDecay;
    };
    double z_max = std::min(8.0 / sigma, z_limit);
    while (!decayed(z_max)) {
        if (z_max >= z_limit)
            throw TruncationError(
                "auto_config: characteristic function decays too slowly for n_points=" +
                std::to_string(n_points));
        z_max = std::min(z_max * 1.5, z_limit);
    }
    // Tighten to the decay threshold. Running the bisection down to
    // rounding keeps the grid geometry a smooth function of the parameters,
    // which the finite-difference checks of the fitter rely on.
    double lo = z_max / 1.5;
    if (lo > 0.0 && !decayed(lo)) {
        while (z_max - lo > 1e-10 * z_max) {
            const double mid = 0.5 * (lo + z_max);
            (decayed(mid) ? z_max : lo) = mid;
        }
    }
    cfg.freq_step = 2.0 * std::min(1.05 * z_max, z_limit) / static_cast<double>(n_points);
    cfg.validate();
    return cfg;
}

std::vector<double> invert_spectrum(std::vector<std::complex<double>> coeffs,
                                    const FrftConfig& cfg, double x0) {
    const std::size_t n = cfg.n_points;
    const double dz = cfg.freq_step;
    const double dx = cfg.space_step;
    const double half = static_cast<double>(n) / 2.0;

    for (std::size_t j = 0; j < n; ++j) {
        const double zj = (static_cast<double>(j) - half) * dz;
        coeffs[j] *= std::exp(cplx(0.0, x0 * zj));
    }
    // Kernel exp(+i j k dx dz) corresponds to a negative fractional exponent.
    const auto spectrum = frft(coeffs, -cfg.delta());

    std::vector<double> out(n);
    const double scale = dz / (2.0 * std::numbers::pi);
    for (std::size_t k = 0; k < n; ++k) {
        const double angle = -static_cast<double>(k) * dx * half * dz;
        const cplx rot(std::cos(angle), std::sin(angle));
        out[k] = scale * (rot * spectrum[k]).real();
    }
    return out;
}

namespace {

// Characteristic-function samples exp(tau Psi(-z_j)) with trapezoid end
// weights, plus the edge decay check shared by both grid builders.
std::vector<cplx> spectrum_samples(const GtsParams& p, double tau, const FrftConfig& cfg) {
    const std::size_t n = cfg.n_points;
    const double half = static_cast<double>(n) / 2.0;
    std::vector<cplx> phi(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double zj = (static_cast<double>(j) - half) * cfg.freq_step;
        phi[j] = std::exp(tau * characteristic_exponent(p, cplx(-zj, 0.0)));
    }
    if (std::abs(phi.front()) > kEdgeDecay || std::abs(phi.back()) > kEdgeDecay)
        throw TruncationError("transform: characteristic function not decayed at grid edge (|phi| = " +
                              std::to_string(std::max(std::abs(phi.front()), std::abs(phi.back()))) + ")");
    phi.front() *= 0.5;
    phi.back() *= 0.5;
    return phi;
}

double grid_origin(const GtsParams& p, double tau, const FrftConfig& cfg) {
    const double center = cumulant(p, 1) * tau;
    return center - cfg.space_step * (static_cast<double>(cfg.n_points) / 2.0);
}

}  // namespace

TransformGrid density_grid(const GtsParams& p, double tau, const FrftConfig& cfg) {
    p.validate();
    cfg.validate();
    if (!(tau > 0.0)) throw DomainError("density_grid: tau must be positive");

    auto phi = spectrum_samples(p, tau, cfg);
    const double x0 = grid_origin(p, tau, cfg);

    TransformGrid grid;
    grid.kind = GridKind::Density;
    grid.x0 = x0;
    grid.dx = cfg.space_step;
    grid.values = invert_spectrum(std::move(phi), cfg, x0);

    double min_value = 0.0;
    for (double v : grid.values) min_value = std::min(min_value, v);
    if (min_value < -1e-9)
        throw TruncationError("density_grid: ringing below -1e-9 (min = " +
                              std::to_string(min_value) + ")");

    std::uint64_t h = fingerprint(p, tau);
    h = fingerprint_mix(h, static_cast<double>(cfg.n_points));
    h = fingerprint_mix(h, cfg.freq_step);
    h = fingerprint_mix(h, cfg.space_step);
    grid.params_fingerprint = fingerprint_mix(h, 1.0);
    return grid;
}

TransformGrid cdf_grid(const GtsParams& p, double tau, const FrftConfig& cfg) {
    p.validate();
    cfg.validate();
    if (!(tau > 0.0)) throw DomainError("cdf_grid: tau must be positive");

    auto phi = spectrum_samples(p, tau, cfg);
    const std::size_t n = cfg.n_points;
    const double half = static_cast<double>(n) / 2.0;
    for (std::size_t j = 0; j < n; ++j) {
        if (j == n / 2) {
            phi[j] = 0.0;  // principal value: drop the singular bin
            continue;
        }
        const double zj = (static_cast<double>(j) - half) * cfg.freq_step;
        phi[j] /= cplx(0.0, zj);
    }

    const double x0 = grid_origin(p, tau, cfg);
    TransformGrid grid;
    grid.kind = GridKind::Cdf;
    grid.x0 = x0;
    grid.dx = cfg.space_step;
    grid.values = invert_spectrum(std::move(phi), cfg, x0);

    // The dropped bin removed the pole (its principal value is zero by
    // symmetry) but also the regular part of the integrand, whose value at
    // z = 0 is x - k1 tau. Restore that node explicitly; otherwise the CDF
    // acquires a linear tilt of size dz/2pi per unit x.
    const double center = cumulant(p, 1) * tau;
    const double node_scale = cfg.freq_step / (2.0 * std::numbers::pi);
    for (std::size_t k = 0; k < grid.values.size(); ++k)
        grid.values[k] += 0.5 + node_scale * (grid.x(k) - center);

    // Monotonicity repair: ringing is bounded by construction, so each
    // individual repair must stay cosmetic.
    double running = 0.0;
    double worst = 0.0;
    for (double& v : grid.values) {
        v = std::clamp(v, 0.0, 1.0);
        if (v < running) {
            worst = std::max(worst, running - v);
            v = running;
        } else {
            running = v;
        }
    }
    if (worst > kMaxRepair)
        throw TruncationError("cdf_grid: monotonicity repair of " + std::to_string(worst) +
                              " exceeds " + std::to_string(kMaxRepair));

    std::uint64_t h = fingerprint(p, tau);
    h = fingerprint_mix(h, static_cast<double>(cfg.n_points));
    h = fingerprint_mix(h, cfg.freq_step);
    h = fingerprint_mix(h, cfg.space_step);
    grid.params_fingerprint = fingerprint_mix(h, 2.0);
    return grid;
}

double query(const TransformGrid& grid, double x) {
    if (grid.values.size() < 2) throw OutOfRangeError("query: degenerate grid");
    const double t = (x - grid.x0) / grid.dx;
    const double max_index = static_cast<double>(grid.values.size() - 1);
    if (t < 0.0 || t > max_index)
        throw OutOfRangeError("query: x = " + std::to_string(x) + " outside grid span [" +
                              std::to_string(grid.x_min()) + ", " +
                              std::to_string(grid.x_max()) + "]");
    std::size_t i = static_cast<std::size_t>(t);
    if (i >= grid.values.size() - 1) i = grid.values.size() - 2;
    const double w = t - static_cast<double>(i);
    double v = (1.0 - w) * grid.values[i] + w * grid.values[i + 1];
    if (grid.kind == GridKind::Density) return std::max(v, 0.0);
    return std::clamp(v, 0.0, 1.0);
}

}  // namespace gts
