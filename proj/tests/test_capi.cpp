#include <doctest.h>

#include <gtspricer.h>

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "test_fixtures.hpp"

namespace {

const std::string kData = GTS_TEST_DATA_DIR;

gts_params* make_table1() {
    gts_params* p = nullptr;
    REQUIRE(gts_params_create(-0.693477, 0.682290, 0.242579, 0.458582, 0.414443, 0.822222,
                              0.727607, GTS_UNIT_PERCENT_DAILY, &p) == GTS_OK);
    return p;
}

}  // namespace

TEST_CASE("capi: version and status names") {
    CHECK(std::strlen(gts_version()) > 0);
    CHECK(std::string(gts_status_name(GTS_OK)) == "GTS_OK");
    CHECK(std::string(gts_status_name(GTS_EDOMAIN)) == "GTS_EDOMAIN");
}

TEST_CASE("capi: parameter lifecycle and distribution calls") {
    gts_params* p = make_table1();

    double fields[7];
    int unit = -1;
    CHECK(gts_params_get(p, fields, &unit) == GTS_OK);
    CHECK(unit == GTS_UNIT_PERCENT_DAILY);
    CHECK(fields[5] == doctest::Approx(0.822222));

    double density = 0.0;
    CHECK(gts_levy_density(p, 1.0, &density) == GTS_OK);
    CHECK(density == doctest::Approx(0.458582 * std::exp(-0.822222)).epsilon(1e-13));
    CHECK(gts_levy_density(p, 0.0, &density) == GTS_EDOMAIN);
    CHECK(std::strlen(gts_last_error()) > 0);

    double mass = 0.0;
    int infinite = 0;
    CHECK(gts_levy_mass(p, &mass, &infinite) == GTS_OK);
    CHECK(infinite == 1);
    CHECK(std::isinf(mass));

    double re = 0.0, im = 0.0;
    CHECK(gts_char_exponent(p, 0.0, 0.0, &re, &im) == GTS_OK);
    CHECK(std::abs(re) < 1e-15);
    CHECK(std::abs(im) < 1e-15);

    double m = 0.0;
    CHECK(gts_mgf(p, 0.0, 1.0, &m) == GTS_OK);
    CHECK(m == doctest::Approx(1.0));
    CHECK(gts_mgf(p, 5.0, 1.0, &m) == GTS_EDOMAIN);

    double k2 = 0.0;
    CHECK(gts_cumulant(p, 2, &k2) == GTS_OK);
    CHECK(k2 > 0.0);
    CHECK(gts_cumulant(p, 7, &k2) == GTS_EDOMAIN);

    CHECK(gts_params_create(0.0, 3.0, 0.5, 1.0, 1.0, 1.0, 1.0, GTS_UNIT_PERCENT_DAILY,
                            nullptr) == GTS_EINVAL);
    gts_params* bad = nullptr;
    CHECK(gts_params_create(0.0, 3.0, 0.5, 1.0, 1.0, 1.0, 1.0, GTS_UNIT_PERCENT_DAILY, &bad) ==
          GTS_EDOMAIN);

    gts_params_free(p);
}

TEST_CASE("capi: esscher solve, pricing and grids") {
    gts_params* daily = make_table1();
    gts_params* annual = nullptr;
    REQUIRE(gts_params_to_annual(daily, fixtures::kDaysPerYear, &annual) == GTS_OK);

    gts_esscher* esscher = nullptr;
    REQUIRE(gts_esscher_solve(annual, fixtures::kRate, &esscher) == GTS_OK);
    double h_star = 0.0, rate = 0.0;
    CHECK(gts_esscher_get(esscher, &h_star, &rate) == GTS_OK);
    CHECK(std::abs(h_star - (-2.4448)) < 1e-3);
    CHECK(rate == fixtures::kRate);

    // lambda+ + lambda- <= 1: no admissible Esscher parameter exists
    gts_params* small = nullptr;
    REQUIRE(gts_params_create(0.0, 0.5, 0.5, 1.0, 1.0, 0.3, 0.3, GTS_UNIT_DECIMAL_ANNUAL,
                              &small) == GTS_OK);
    gts_esscher* none = nullptr;
    CHECK(gts_esscher_solve(small, 0.05, &none) == GTS_ENOSOLUTION);
    gts_params_free(small);

    gts_pricer* pricer = nullptr;
    REQUIRE(gts_pricer_create(esscher, fixtures::kSpot, fixtures::kRate, nullptr, &pricer) ==
            GTS_OK);
    double sigma = 0.0;
    CHECK(gts_pricer_sigma_star(pricer, &sigma) == GTS_OK);
    CHECK(sigma == doctest::Approx(0.2077).epsilon(1e-3));

    double extended = 0.0, generalized = 0.0, bsm = 0.0;
    CHECK(gts_pricer_price(pricer, GTS_ENGINE_EXTENDED, fixtures::kSpot, 0.25, &extended) ==
          GTS_OK);
    CHECK(gts_pricer_price(pricer, GTS_ENGINE_GENERALIZED, fixtures::kSpot, 0.25,
                           &generalized) == GTS_OK);
    CHECK(gts_pricer_price(pricer, GTS_ENGINE_BLACK_SCHOLES, fixtures::kSpot, 0.25, &bsm) ==
          GTS_OK);
    CHECK(std::abs(extended - 218.45) < 0.01);
    CHECK(std::abs(extended - generalized) < 0.01);
    CHECK(std::abs(bsm - 217.36) < 0.01);
    CHECK(gts_pricer_price(pricer, 42, fixtures::kSpot, 0.25, &extended) == GTS_EDOMAIN);
    CHECK(gts_pricer_price(pricer, GTS_ENGINE_EXTENDED, -1.0, 0.25, &extended) == GTS_EDOMAIN);

    gts_params* shifted = nullptr;
    REQUIRE(gts_esscher_shifted_params(esscher, &shifted) == GTS_OK);
    gts_grid* grid = nullptr;
    REQUIRE(gts_grid_create(shifted, 0.25, GTS_GRID_CDF, 0, &grid) == GTS_OK);
    long n = 0;
    CHECK(gts_grid_size(grid, &n) == GTS_OK);
    CHECK(n == 1 << 14);
    double x = 0.0, value = 0.0;
    CHECK(gts_grid_point(grid, 0, &x, &value) == GTS_OK);
    CHECK(value <= 1e-4);
    CHECK(gts_grid_point(grid, n, &x, &value) == GTS_ERANGE);
    double q = 0.0;
    CHECK(gts_grid_query(grid, 0.0, &q) == GTS_OK);
    CHECK(q > 0.0);
    CHECK(q < 1.0);
    CHECK(gts_grid_query(grid, 1e9, &q) == GTS_ERANGE);

    gts_grid_free(grid);
    gts_params_free(shifted);
    gts_pricer_free(pricer);
    gts_esscher_free(esscher);
    gts_params_free(annual);
    gts_params_free(daily);
}

TEST_CASE("capi: payoff transform helpers") {
    double value = 0.0;
    CHECK(gts_payoff_inverse_fourier(2.0, 1.0, -1.5, 200.0, 36000, &value) == GTS_OK);
    CHECK(value == doctest::Approx(std::exp(2.0) - 1.0).epsilon(1e-3));
    CHECK(gts_payoff_inverse_fourier(2.0, 1.0, -0.5, 20.0, 3600, &value) == GTS_EDOMAIN);

    double er = 0.0;
    CHECK(gts_payoff_error(1.0, -2.0, 20.0, 3600, 4.0, 801, &er) == GTS_OK);
    CHECK(er > 0.0);

    double q_opt = 0.0, er_min = 0.0;
    CHECK(gts_optimal_q(1.0, -4.0, -1.05, 20.0, 1200, 2.0, 201, &q_opt, &er_min) == GTS_OK);
    CHECK(q_opt < -1.0);
    CHECK(er_min > 0.0);
}

TEST_CASE("capi: market data and calibration") {
    gts_returns* returns = nullptr;
    REQUIRE(gts_returns_load_prices_csv((kData + "/prices_small.csv").c_str(), nullptr, nullptr,
                                        &returns) == GTS_OK);
    long n = 0;
    CHECK(gts_returns_size(returns, &n) == GTS_OK);
    CHECK(n == 2);
    double y = 0.0;
    CHECK(gts_returns_value(returns, 0, &y) == GTS_OK);
    CHECK(y == doctest::Approx(100.0 * std::log(100.75 / 100.0)).epsilon(1e-12));
    CHECK(std::string(gts_returns_date(returns, 0)) == "2023-01-03");
    gts_returns_free(returns);

    gts_returns* missing = nullptr;
    CHECK(gts_returns_load_prices_csv((kData + "/nope.csv").c_str(), nullptr, nullptr,
                                      &missing) == GTS_EPARSE);

    // synthetic series through the array constructor
    const std::vector<double> sample = fixtures::inverse_cdf_sample(fixtures::synthetic_params(), 60);
    gts_returns* synth = nullptr;
    REQUIRE(gts_returns_create(sample.data(), static_cast<long>(sample.size()), &synth) == GTS_OK);

    gts_summary_stats stats;
    CHECK(gts_returns_summary(synth, 360.0, &stats) == GTS_OK);
    CHECK(stats.count == 60);
    CHECK(stats.variance > 0.0);

    gts_params* init = nullptr;
    const gts::GtsParams sp = fixtures::synthetic_params();
    REQUIRE(gts_params_create(sp.mu, sp.beta_plus, sp.beta_minus, sp.alpha_plus, sp.alpha_minus,
                              sp.lambda_plus, sp.lambda_minus, GTS_UNIT_PERCENT_DAILY,
                              &init) == GTS_OK);

    double ll = 0.0;
    CHECK(gts_log_likelihood(init, synth, &ll) == GTS_OK);
    CHECK(std::isfinite(ll));

    double grad[7];
    double max_eigen = 0.0;
    CHECK(gts_score(init, synth, grad, nullptr, &max_eigen) == GTS_OK);

    gts_fit_result* fit = nullptr;
    REQUIRE(gts_fit(synth, init, 5e-2, 40, &fit) == GTS_OK);
    long steps = 0;
    CHECK(gts_fit_result_size(fit, &steps) == GTS_OK);
    CHECK(steps >= 1);
    gts_fit_row row;
    CHECK(gts_fit_result_row(fit, steps - 1, &row) == GTS_OK);
    CHECK(std::isfinite(row.log_ml));
    CHECK(row.log_ml >= ll - 1e-9);  // the fit never goes downhill
    gts_fit_row first;
    CHECK(gts_fit_result_row(fit, 0, &first) == GTS_OK);
    CHECK(row.log_ml >= first.log_ml);
    CHECK(gts_fit_result_row(fit, steps, &row) == GTS_ERANGE);

    gts_params* fitted = nullptr;
    CHECK(gts_fit_result_params(fit, &fitted) == GTS_OK);
    double fields[7];
    CHECK(gts_params_get(fitted, fields, nullptr) == GTS_OK);
    CHECK(fields[1] > 0.0);
    CHECK(fields[1] < 1.0);

    gts_params_free(fitted);
    gts_fit_result_free(fit);
    gts_params_free(init);
    gts_returns_free(synth);
}
