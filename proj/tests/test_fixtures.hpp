#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "gts/params.hpp"
#include "gts/market_data.hpp"
#include "gts/process.hpp"
#include "gts/transform.hpp"

namespace fixtures {

// Fitted S&P 500 parameters (percent per day).
inline gts::GtsParams table1() {
    return {-0.693477, 0.682290, 0.242579, 0.458582,
            0.414443,  0.822222, 0.727607, gts::Unit::PercentDaily};
}

inline constexpr double kDaysPerYear = 360.0;
inline constexpr double kRate = 0.06;
inline constexpr double kSpot = 4437.86;

inline gts::GtsParams table1_annual() {
    return gts::to_decimal_annual(table1(), kDaysPerYear);
}

inline gts::EsscherSolution risk_neutral() {
    return gts::solve_esscher(table1_annual(), kRate);
}

// Deterministic draws: a fixed 64-bit LCG supplies uniforms which are fed
// through the inverse CDF. Reproducible everywhere, no <random> semantics
// involved, and the sample keeps realistic tails (equally spaced quantiles
// would underweight them and push the ML toward the beta boundary).
inline std::vector<double> inverse_cdf_sample(const gts::GtsParams& p, int n) {
    const gts::TransformGrid grid = gts::cdf_grid(p, 1.0, gts::auto_config(p, 1.0, 0.0, 1 << 13));
    std::vector<double> sample;
    sample.reserve(static_cast<std::size_t>(n));
    std::uint64_t state = 0x853c49e6748fea9bULL;
    for (int i = 0; i < n; ++i) {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        const double u = static_cast<double>(state >> 11) * 0x1.0p-53;
        const double target = std::min(std::max(u, 1e-6), 1.0 - 1e-6);
        double lo = grid.x_min(), hi = grid.x_max();
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (lo + hi);
            (gts::query(grid, mid) < target ? lo : hi) = mid;
        }
        sample.push_back(0.5 * (lo + hi));
    }
    return sample;
}

inline gts::GtsParams synthetic_params() {
    return {0.05, 0.55, 0.45, 0.6, 0.5, 1.4, 1.1, gts::Unit::PercentDaily};
}

inline gts::ReturnSeries synthetic_returns(int n = 120) {
    gts::ReturnSeries series;
    series.returns = inverse_cdf_sample(synthetic_params(), n);
    series.dates.assign(series.returns.size(), gts::Date{});
    return series;
}

// Data for full optimizer runs. Seven GTS parameters need a few thousand
// observations before the likelihood pins an interior maximum; smaller
// samples drift along the beta/drift degeneracy toward the boundary.
inline gts::ReturnSeries fit_fixture_returns(int n = 3000) {
    gts::ReturnSeries series;
    series.returns = inverse_cdf_sample(table1(), n);
    series.dates.assign(series.returns.size(), gts::Date{});
    return series;
}

inline gts::GtsParams perturbed_table1(double factor = 1.05) {
    gts::GtsParams p = table1();
    p.mu *= factor;
    p.beta_plus *= factor;
    p.beta_minus *= factor;
    p.alpha_plus *= factor;
    p.alpha_minus *= factor;
    p.lambda_plus *= factor;
    p.lambda_minus *= factor;
    return p;
}

}  // namespace fixtures
