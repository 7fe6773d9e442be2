#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "gts/errors.hpp"
#include "gts/process.hpp"
#include "gts/special.hpp"
#include "gts/transform.hpp"
#include "oracles.hpp"
#include "test_fixtures.hpp"

using namespace gts;
using fixtures::table1;
using fixtures::table1_annual;

TEST_CASE("levy density shape and symmetry") {
    const GtsParams p = table1();
    // direct scalar evaluation at x = 1
    CHECK(levy_density(p, 1.0) ==
          doctest::Approx(0.458582 * std::exp(-0.822222)).epsilon(1e-14));
    CHECK(levy_density(p, -0.5) ==
          doctest::Approx(0.414443 * std::exp(-0.727607 * 0.5) /
                          std::pow(0.5, 1.0 + 0.242579)).epsilon(1e-14));
    CHECK_THROWS_AS(levy_density(p, 0.0), DomainError);

    GtsParams sym = p;
    sym.beta_minus = sym.beta_plus;
    sym.alpha_minus = sym.alpha_plus;
    sym.lambda_minus = sym.lambda_plus;
    for (double x : {0.1, 0.7, 2.3})
        CHECK(levy_density(sym, x) == doctest::Approx(levy_density(sym, -x)).epsilon(1e-14));

    GtsParams no_plus = p;
    no_plus.alpha_plus = 0.0;
    CHECK(levy_density(no_plus, 0.5) == 0.0);
}

TEST_CASE("total levy mass and activity classification") {
    const LevyMass infinite = total_levy_mass(table1());
    CHECK(std::isinf(infinite.value));
    CHECK(infinite.activity == LevyActivity::InfiniteActivity);

    GtsParams compound{0.0, -0.5, -0.5, 1.0, 1.0, 1.0, 1.0, Unit::PercentDaily};
    const LevyMass finite = total_levy_mass(compound);
    CHECK(finite.activity == LevyActivity::FiniteActivity);
    CHECK(finite.value ==
          doctest::Approx(2.0 * std::sqrt(std::numbers::pi)).epsilon(1e-13));

    compound.alpha_plus = 0.0;
    compound.alpha_minus = 0.0;
    const LevyMass zero = total_levy_mass(compound);
    CHECK(zero.value == 0.0);
    CHECK(zero.activity == LevyActivity::FiniteActivity);
}

TEST_CASE("characteristic exponent basics") {
    const GtsParams p = table1();
    CHECK(std::abs(characteristic_exponent(p, 0.0)) < 1e-15);

    GtsParams sym = p;
    sym.mu = 0.0;
    sym.beta_minus = sym.beta_plus;
    sym.alpha_minus = sym.alpha_plus;
    sym.lambda_minus = sym.lambda_plus;
    for (double xi : {0.3, 1.0, 4.0})
        CHECK(std::abs(characteristic_exponent(sym, xi).imag()) < 1e-14);

    // Hermitian symmetry and |phi| <= 1 on the real line
    for (double xi : {0.1, 0.9, 3.7, 12.0}) {
        const cplx a = characteristic_exponent(p, xi);
        const cplx b = characteristic_exponent(p, -xi);
        CHECK(std::abs(std::conj(a) - b) < 1e-13 * (1.0 + std::abs(a)));
        CHECK(a.real() <= 1e-15);
    }

    GtsParams pole = p;
    pole.beta_plus = 1.0;
    CHECK_THROWS_AS(characteristic_exponent(pole, 1.0), DomainError);
}

TEST_CASE("characteristic exponent round trip through the inverted density") {
    // E[exp(i Y)] from the transform grid must equal exp(Psi(1)).
    const GtsParams p = table1();
    const auto grid = density_grid(p, 1.0, auto_config(p, 1.0));
    cplx expectation = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double w = (i == 0 || i == grid.size() - 1) ? 0.5 : 1.0;
        expectation += w * grid.values[i] * std::exp(cplx(0.0, grid.x(i))) * grid.dx;
    }
    const cplx expected = std::exp(characteristic_exponent(p, 1.0));
    CHECK(std::abs(expectation - expected) < 1e-8);
}

TEST_CASE("mgf normalization, multiplicativity and quadrature oracle") {
    const GtsParams p = table1();
    CHECK(mgf(p, 0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(mgf(p, 0.1, 2.0) == doctest::Approx(mgf(p, 0.1, 1.0) * mgf(p, 0.1, 1.0)).epsilon(1e-13));
    CHECK_THROWS_AS(mgf(p, p.lambda_plus + 0.1, 1.0), DomainError);
    CHECK_THROWS_AS(mgf(p, -p.lambda_minus - 0.1, 1.0), DomainError);

    // trapezoid integral of exp(h x) against the inverted density; the
    // weight blows up the far right tail, so stop where the true integrand
    // is already below 1e-12 of the total rather than amplify grid ringing
    const auto grid = density_grid(p, 1.0, auto_config(p, 1.0));
    double integral = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (grid.x(i) > 30.0) break;
        const double w = (i == 0 || i == grid.size() - 1) ? 0.5 : 1.0;
        integral += w * grid.values[i] * std::exp(0.5 * grid.x(i)) * grid.dx;
    }
    CHECK(integral == doctest::Approx(mgf(p, 0.5, 1.0)).epsilon(1e-5));
}

TEST_CASE("esscher exponent reductions and reference value") {
    const GtsParams p = table1();
    CHECK(esscher_exponent(p, -0.3, 0.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(esscher_exponent(p, 0.0, 0.5) ==
          doctest::Approx(std::log(mgf(p, 0.5, 1.0))).epsilon(1e-13));

    // annualized parameters: Psi_h(1) at the reported h* equals the 6% rate
    const GtsParams annual = table1_annual();
    CHECK(esscher_exponent(annual, -2.4448, 1.0) == doctest::Approx(0.06).epsilon(2e-3));
    CHECK(std::abs(esscher_exponent(annual, -2.4448, 1.0) - 0.06) < 1e-4);

    CHECK_THROWS_AS(esscher_exponent(p, -0.3, p.lambda_plus + 0.5), DomainError);
}

TEST_CASE("esscher shift arithmetic and involution") {
    const GtsParams p = table1();
    const GtsParams id = esscher_shift(p, 0.0);
    CHECK(id == p);

    const GtsParams shifted = esscher_shift(p, 0.1);
    CHECK(shifted.lambda_plus == doctest::Approx(0.722222).epsilon(1e-12));
    CHECK(shifted.lambda_minus == doctest::Approx(0.827607).epsilon(1e-12));
    CHECK(shifted.mu == p.mu);
    CHECK(shifted.alpha_plus == p.alpha_plus);

    const GtsParams back = esscher_shift(shifted, -0.1);
    CHECK(back.lambda_plus == doctest::Approx(p.lambda_plus).epsilon(1e-15));
    CHECK(back.lambda_minus == doctest::Approx(p.lambda_minus).epsilon(1e-15));

    // MGF consistency of the tilt: M_shifted(z) = M(h+z) / M(h)
    for (double z : {-0.4, -0.1, 0.2, 0.5})
        CHECK(mgf(shifted, z, 1.0) ==
              doctest::Approx(mgf(p, 0.1 + z, 1.0) / mgf(p, 0.1, 1.0)).epsilon(1e-12));

    CHECK_THROWS_AS(esscher_shift(p, p.lambda_plus + 1.0), DomainError);
}

TEST_CASE("esscher exponent is strictly increasing in h") {
    const GtsParams annual = table1_annual();
    const double lo = -annual.lambda_minus + 1e-4;
    const double hi = annual.lambda_plus - 1.0 - 1e-4;
    double previous = esscher_exponent(annual, lo, 1.0);
    for (int i = 1; i <= 100; ++i) {
        const double h = lo + (hi - lo) * i / 100.0;
        const double value = esscher_exponent(annual, h, 1.0);
        CHECK(value > previous);
        previous = value;
    }
}

TEST_CASE("solve_esscher round trip and reference solution") {
    const GtsParams annual = table1_annual();

    const double h0 = -1.7;
    const double rate = esscher_exponent(annual, h0, 1.0);
    const EsscherSolution round = solve_esscher(annual, rate);
    CHECK(round.h_star == doctest::Approx(h0).epsilon(1e-9));
    CHECK(std::abs(esscher_exponent(annual, round.h_star, 1.0) - rate) < 1e-10);

    const EsscherSolution sol = solve_esscher(annual, fixtures::kRate);
    CHECK(std::abs(sol.h_star - (-2.4448)) < 1e-3);
    CHECK(sol.shifted.lambda_plus == doctest::Approx(annual.lambda_plus - sol.h_star).epsilon(1e-14));
    CHECK(sol.shifted.lambda_minus == doctest::Approx(annual.lambda_minus + sol.h_star).epsilon(1e-14));
    CHECK(sol.shifted.lambda_plus > 1.0);

    // constructed symmetric case with root at exactly h = 0
    GtsParams sym{0.0, 0.5, 0.5, 0.3, 0.3, 2.0, 2.0, Unit::DecimalAnnual};
    const double r0 = 0.05;
    sym.mu = r0 -
             sym.alpha_plus * gamma_fn(-0.5) * (std::pow(1.0, 0.5) - std::pow(2.0, 0.5)) -
             sym.alpha_minus * gamma_fn(-0.5) * (std::pow(3.0, 0.5) - std::pow(2.0, 0.5));
    const EsscherSolution zero = solve_esscher(sym, r0);
    CHECK(std::abs(zero.h_star) < 1e-6);

    CHECK_THROWS_AS(solve_esscher(annual, 1e6), NoSolutionError);
    // lambda+ + lambda- <= 1 leaves no admissible h at all
    GtsParams small{0.0, 0.5, 0.5, 1.0, 1.0, 0.3, 0.3, Unit::DecimalAnnual};
    CHECK_THROWS_AS(solve_esscher(small, 0.05), NoSolutionError);
}

TEST_CASE("cumulants against finite differences of the log MGF") {
    const GtsParams p = table1();

    GtsParams sym = p;
    sym.mu = 0.0;
    sym.beta_minus = sym.beta_plus;
    sym.alpha_minus = sym.alpha_plus;
    sym.lambda_minus = sym.lambda_plus;
    CHECK(std::abs(cumulant(sym, 1)) < 1e-13);
    CHECK(std::abs(cumulant(sym, 3)) < 1e-13);

    GtsParams drift = p;
    drift.alpha_plus = 0.0;
    drift.alpha_minus = 0.0;
    CHECK(cumulant(drift, 1) == doctest::Approx(p.mu).epsilon(1e-15));
    CHECK(cumulant(drift, 2) == 0.0);

    auto log_mgf = [&](double h) { return std::log(mgf(p, h, 1.0)); };

    // second derivative, central stencil, step 1e-4
    const double h2 = 1e-4;
    const double fd2 = (log_mgf(h2) - 2.0 * log_mgf(0.0) + log_mgf(-h2)) / (h2 * h2);
    CHECK(cumulant(p, 2) == doctest::Approx(fd2).epsilon(1e-5));

    // first, third and fourth derivatives
    const double fd1 = oracles::central_diff(log_mgf, 0.0, 1e-5);
    CHECK(cumulant(p, 1) == doctest::Approx(fd1).epsilon(1e-4));

    const double h3 = 3e-3;
    const double fd3 = (log_mgf(2 * h3) - 2.0 * log_mgf(h3) + 2.0 * log_mgf(-h3) -
                        log_mgf(-2 * h3)) /
                       (2.0 * h3 * h3 * h3);
    CHECK(cumulant(p, 3) == doctest::Approx(fd3).epsilon(1e-4));

    const double h4 = 3e-3;
    const double fd4 = (log_mgf(2 * h4) - 4.0 * log_mgf(h4) + 6.0 * log_mgf(0.0) -
                        4.0 * log_mgf(-h4) + log_mgf(-2 * h4)) /
                       (h4 * h4 * h4 * h4);
    CHECK(cumulant(p, 4) == doctest::Approx(fd4).epsilon(1e-4));

    GtsParams bad = p;
    bad.beta_plus = 1.0;
    CHECK_THROWS_AS(cumulant(bad, 1), DomainError);

    const CumulantSet set = cumulants(p);
    for (int n = 1; n <= 4; ++n)
        CHECK(set(n) == doctest::Approx(cumulant(p, n)).epsilon(1e-15));
    CHECK(set(2) > 0.0);  // any active side forces positive variance
}

TEST_CASE("rescale identities") {
    const GtsParams p = table1();
    const GtsParams same = rescale(p, 1.0, 1.0, p.unit);
    CHECK(same == p);

    // scaling law at the exponent level: Psi_scaled(xi) = s Psi(c xi)
    const double c = 0.25, s = 3.0;
    const GtsParams scaled = rescale(p, c, s, Unit::PercentDaily);
    for (double xi : {-3.0, -0.5, 0.7, 2.0, 11.0}) {
        const cplx lhs = characteristic_exponent(scaled, xi);
        const cplx rhs = s * characteristic_exponent(p, c * xi);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * (1.0 + std::abs(rhs)));
    }

    // annualization arithmetic
    const GtsParams annual = rescale(p, 0.01, 365.0, Unit::DecimalAnnual);
    CHECK(annual.lambda_plus == doctest::Approx(82.2222).epsilon(1e-10));
    CHECK(annual.lambda_minus == doctest::Approx(72.7607).epsilon(1e-10));
    CHECK(annual.alpha_plus ==
          doctest::Approx(365.0 * 0.458582 * std::pow(0.01, 0.682290)).epsilon(1e-13));
    CHECK(annual.mu == doctest::Approx(365.0 * 0.01 * -0.693477).epsilon(1e-13));
    CHECK(annual.beta_plus == p.beta_plus);

    CHECK_THROWS_AS(rescale(p, -1.0, 1.0, p.unit), DomainError);
    CHECK_THROWS_AS(to_decimal_annual(annual, 360.0), DomainError);
}
