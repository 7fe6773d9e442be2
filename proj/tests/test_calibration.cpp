#include <doctest.h>

#include <cmath>
#include <vector>

#include "gts/calibration.hpp"
#include "gts/errors.hpp"
#include "gts/params.hpp"
#include "gts/process.hpp"
#include "gts/transform.hpp"
#include "test_fixtures.hpp"

using namespace gts;

namespace {

constexpr std::size_t kTestGrid = 1 << 13;

ReturnSeries series_of(std::vector<double> values) {
    ReturnSeries s;
    s.dates.assign(values.size(), Date{});
    s.returns = std::move(values);
    return s;
}

std::array<double, kNumFitParams> pack(const GtsParams& p) {
    return {p.mu,          p.beta_plus,   p.beta_minus, p.alpha_plus,
            p.alpha_minus, p.lambda_plus, p.lambda_minus};
}

GtsParams unpack(const std::array<double, kNumFitParams>& v) {
    return {v[0], v[1], v[2], v[3], v[4], v[5], v[6], Unit::PercentDaily};
}

}  // namespace

TEST_CASE("log likelihood decomposes over observations") {
    const GtsParams p = fixtures::synthetic_params();
    const ReturnSeries data = series_of({-1.2, -0.3, 0.1, 0.6, 2.1});

    // same series twice: likelihood doubles (identical grid either way)
    ReturnSeries doubled = data;
    doubled.returns.insert(doubled.returns.end(), data.returns.begin(), data.returns.end());
    doubled.dates.assign(doubled.returns.size(), Date{});
    const double single = log_likelihood(p, data, kTestGrid);
    CHECK(std::abs(log_likelihood(p, doubled, kTestGrid) - 2.0 * single) <
          1e-10 * std::abs(single));

    // per-point oracle on one shared grid (pinned by a common halfwidth)
    const double halfwidth = 30.0;
    const std::size_t wide_grid = 1 << 13;
    const double whole = log_likelihood(p, data, wide_grid, halfwidth);
    double per_point = 0.0;
    for (double y : data.returns)
        per_point += log_likelihood(p, series_of({y}), wide_grid, halfwidth);
    CHECK(std::abs(whole - per_point) < 1e-10 * std::abs(whole));

    CHECK_THROWS_AS(log_likelihood(p, series_of({}), kTestGrid), EmptySeriesError);
}

TEST_CASE("analytic score matches central finite differences") {
    const ReturnSeries data = fixtures::synthetic_returns(120);
    const GtsParams base = fixtures::synthetic_params();

    // three admissible parameter points
    std::vector<GtsParams> points{base};
    {
        GtsParams p2 = base;
        p2.mu += 0.08;
        p2.beta_plus = 0.62;
        p2.lambda_minus = 1.3;
        points.push_back(p2);
        GtsParams p3 = base;
        p3.beta_minus = 0.35;
        p3.alpha_plus = 0.45;
        p3.lambda_plus = 1.8;
        points.push_back(p3);
    }

    const std::size_t grid_n = 1 << 14;
    for (const auto& p : points) {
        const ScoreResult score = score_and_hessian(p, data, grid_n);
        const auto v0 = pack(p);
        for (int i = 0; i < kNumFitParams; ++i) {
            const double h = 1e-5 * std::max(1.0, std::abs(v0[static_cast<std::size_t>(i)]));
            auto vp = v0, vm = v0;
            vp[static_cast<std::size_t>(i)] += h;
            vm[static_cast<std::size_t>(i)] -= h;
            const double fd = (log_likelihood(unpack(vp), data, grid_n) -
                               log_likelihood(unpack(vm), data, grid_n)) /
                              (2.0 * h);
            const double analytic = score.gradient[static_cast<std::size_t>(i)];
            // 1e-4 relative, with an absolute floor for near-zero components
            CHECK(std::abs(analytic - fd) <= std::max(1e-4 * std::abs(analytic), 2e-6));
        }
    }
}

TEST_CASE("analytic hessian matches finite differences of the score") {
    const ReturnSeries data = fixtures::synthetic_returns(120);
    const GtsParams p = fixtures::synthetic_params();
    const ScoreResult base = score_and_hessian(p, data, kTestGrid);

    const auto v0 = pack(p);
    for (int i = 0; i < kNumFitParams; ++i) {
        const double h = 1e-5 * std::max(1.0, std::abs(v0[static_cast<std::size_t>(i)]));
        auto vp = v0, vm = v0;
        vp[static_cast<std::size_t>(i)] += h;
        vm[static_cast<std::size_t>(i)] -= h;
        const ScoreResult sp = score_and_hessian(unpack(vp), data, kTestGrid);
        const ScoreResult sm = score_and_hessian(unpack(vm), data, kTestGrid);
        for (int j = 0; j < kNumFitParams; ++j) {
            const double fd = (sp.gradient[static_cast<std::size_t>(j)] -
                               sm.gradient[static_cast<std::size_t>(j)]) /
                              (2.0 * h);
            const double analytic = base.hessian[static_cast<std::size_t>(i * kNumFitParams + j)];
            CHECK(std::abs(analytic - fd) <= 1e-3 * std::max(std::abs(analytic), 1.0));
        }
    }

    // symmetry comes out of the construction
    for (int i = 0; i < kNumFitParams; ++i)
        for (int j = 0; j < kNumFitParams; ++j)
            CHECK(base.hessian[static_cast<std::size_t>(i * kNumFitParams + j)] ==
                  doctest::Approx(base.hessian[static_cast<std::size_t>(j * kNumFitParams + i)])
                      .epsilon(1e-12));
}

TEST_CASE("fit climbs monotonically to a certified maximum") {
    const ReturnSeries data = fixtures::fit_fixture_returns();

    FitOptions options;
    options.tol = 1e-2;
    options.max_iter = 120;
    options.n_points = kTestGrid;

    const GtsParams init = fixtures::perturbed_table1();

    const auto trajectory = fit(data, init, options);
    REQUIRE(!trajectory.empty());
    for (std::size_t i = 1; i < trajectory.size(); ++i) {
        CHECK(trajectory[i].log_ml >= trajectory[i - 1].log_ml);
        CHECK(trajectory[i].iteration == static_cast<int>(i));
    }
    const FitState& last = trajectory.back();
    CHECK(last.grad_norm < options.tol);
    CHECK(last.max_eigen < 0.0);

    // restarting from the optimum terminates immediately
    const auto rerun = fit(data, last.params, options);
    CHECK(rerun.size() <= 2);
    CHECK(std::abs(rerun.back().log_ml - last.log_ml) < 1e-6 * std::abs(last.log_ml));
}

TEST_CASE("fit is equivariant under amplitude rescaling") {
    const ReturnSeries data = fixtures::fit_fixture_returns();
    ReturnSeries scaled = data;
    for (double& y : scaled.returns) y *= 0.5;

    FitOptions options;
    options.tol = 5e-3;
    options.max_iter = 150;
    options.n_points = kTestGrid;

    const GtsParams init = fixtures::perturbed_table1();
    const GtsParams scaled_init = rescale(init, 0.5, 1.0, init.unit);

    const auto base_fit = fit(data, init, options);
    const auto scaled_fit = fit(scaled, scaled_init, options);
    const GtsParams expected = rescale(base_fit.back().params, 0.5, 1.0, init.unit);
    const GtsParams actual = scaled_fit.back().params;

    const auto e = pack(expected), a = pack(actual);
    for (int i = 0; i < kNumFitParams; ++i)
        CHECK(std::abs(a[static_cast<std::size_t>(i)] - e[static_cast<std::size_t>(i)]) <=
              1e-2 * std::max(std::abs(e[static_cast<std::size_t>(i)]), 0.1));
}

TEST_CASE("default initialization is admissible and finite") {
    const ReturnSeries data = fixtures::synthetic_returns(120);
    const GtsParams init = default_init(data);
    CHECK(init.pricing_betas());
    CHECK(init.alpha_plus > 0.0);
    CHECK(init.lambda_plus > 0.0);
    CHECK(std::isfinite(log_likelihood(init, data, kTestGrid)));
}

TEST_CASE("non-admissible parameters are rejected") {
    const ReturnSeries data = series_of({0.1, -0.2});
    GtsParams bad = fixtures::synthetic_params();
    bad.beta_plus = 1.2;
    CHECK_THROWS_AS(log_likelihood(bad, data, kTestGrid), DomainError);
    bad = fixtures::synthetic_params();
    bad.alpha_minus = 0.0;
    CHECK_THROWS_AS(score_and_hessian(bad, data, kTestGrid), DomainError);
}
