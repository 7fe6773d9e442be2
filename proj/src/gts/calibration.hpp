#pragma once

#include <array>
#include <vector>

#include "gts/market_data.hpp"
#include "gts/params.hpp"

namespace gts {

// Parameter vector order used throughout the fitter:
//   (mu, beta+, beta-, alpha+, alpha-, lambda+, lambda-)
inline constexpr int kNumFitParams = 7;

struct FitState {
    GtsParams params;
    double log_ml = 0.0;
    double grad_norm = 0.0;   // || d log ML / dV ||
    double max_eigen = 0.0;   // largest Hessian eigenvalue
    int iteration = 0;
};

// Sum of log densities at the observations, densities floored at 1e-300.
// The density grid is sized to cover the sample (never narrower than
// min_halfwidth around the mean); points that still fall outside raise
// OutOfRangeError.
double log_likelihood(const GtsParams& p, const ReturnSeries& data,
                      std::size_t n_points = 1 << 14, double min_halfwidth = 0.0);

struct ScoreResult {
    std::array<double, kNumFitParams> gradient{};
    std::array<double, kNumFitParams * kNumFitParams> hessian{};  // row-major, symmetric
    double max_eigen = 0.0;
    double log_ml = 0.0;
};

// Gradient and Hessian of the log likelihood. The density derivatives come
// from inverse-transforming the analytically differentiated characteristic
// function, not from finite differences of densities.
ScoreResult score_and_hessian(const GtsParams& p, const ReturnSeries& data,
                              std::size_t n_points = 1 << 14);

struct FitOptions {
    double tol = 1e-3;    // stop when grad_norm falls below
    int max_iter = 200;
    std::size_t n_points = 1 << 14;
};

// Damped Newton ascent: Newton step while the Hessian is negative definite,
// gradient ascent otherwise, with a halving line search that only accepts
// strict log-likelihood increases. Betas are projected into (0, 1) and
// alphas/lambdas kept positive. Returns the full trajectory; the last entry
// is the converged (or best reached) state.
std::vector<FitState> fit(const ReturnSeries& data, const GtsParams& init,
                          const FitOptions& options = {});

// Moment-matching starting point: symmetric split with betas at 1/2,
// lambda from the kurtosis/variance ratio.
GtsParams default_init(const ReturnSeries& data);

}  // namespace gts
