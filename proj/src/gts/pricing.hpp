#pragma once

#include <map>
#include <utility>
#include <vector>

#include "gts/params.hpp"
#include "gts/quadrature.hpp"
#include "gts/transform.hpp"

namespace gts {

enum class Engine { BlackScholes, GtsExtended, GtsGeneralized };

struct PricingRequest {
    double spot = 0.0;
    double strike = 0.0;
    double tau = 0.0;     // years
    double rate = 0.0;    // continuously compounded, per year
    EsscherSolution riskneutral;
    Engine engine = Engine::GtsExtended;

    void validate() const;
};

// Benchmark volatility. The fitted distribution's own annualized standard
// deviation reproduces the reference prices; a hand-set value is accepted
// for experiments.
struct BsParams {
    double sigma_star = 0.2077;
};

// Recover the physical (pre-tilt) parameters from a risk-neutral solution.
GtsParams physical_params(const EsscherSolution& rn);

// sqrt(k2) of an annualized parameter set; the sigma* the benchmark needs.
double derive_sigma_star(const EsscherSolution& rn);

// Contour placement and quadrature for the transform pricer. When
// auto_extend is set, the truncation point b grows (node spacing kept) until
// the integrand envelope has decayed by kEnvelopeDecay relative to its value
// at xi = 0; the reference b = 20 with n = 60000 is kept as the base rule.
struct ContourConfig {
    double q = -3.0;
    CompositeRule rule = CompositeRule{};  // a = 0, b = 20, n = 5000 * 12
    bool auto_extend = true;

    static constexpr double kEnvelopeDecay = 1e-12;
    void validate() const;  // q < -1
};

// Closed-form Black-Scholes call.
double bs_price(const PricingRequest& req, const BsParams& bs);

// Extended formula: S [1 - F(log(K/S), tau, h*+1)] - K e^{-r tau} [1 - F(log(K/S), tau, h*)]
// with both CDFs recovered by Fourier inversion of the tilted processes.
double gts_call_extended(const PricingRequest& req, std::size_t n_points = 1 << 14);

// Generalized formula: (K/2pi) Int over Im(xi) = q of
//   exp(i xi log(S/K) - tau (r - Psi~(xi))) / (i xi (i xi - 1)) d xi
// evaluated two-sided so the imaginary residual is a genuine consistency
// check; |Im| above 1e-6 of the price raises ContourError.
double gts_call_generalized(const PricingRequest& req, const ContourConfig& contour);

// Damped-payoff inverse transform: reconstructs (e^x - k)^+ from
//   (1/2pi) Int e^{iyx} k e^{-iy log k} / (iy (iy - 1)) dy,  Im(y) = q < -1.
double payoff_inverse_fourier(double x, double k, double q, const CompositeRule& rule);

// Sampling layout for the payoff reconstruction error ER(k, q): m equally
// spaced points on [-halfwidth, halfwidth]. The window is deliberately
// wider than the moneyness band so the truncation blowup of a badly
// chosen q is visible in the RMS.
struct PayoffGridSpec {
    double halfwidth = 4.0;
    int m = 801;
};

// Root-mean-square gap between the true payoff and its reconstruction.
double payoff_error(double k, double q, const CompositeRule& rule, const PayoffGridSpec& grid);

struct OptimalQ {
    double q = 0.0;
    double er = 0.0;
};

// Arg-min of ER(k, .) over [q_lo, q_hi]: coarse scan refined by golden
// section. Deterministic for fixed inputs.
OptimalQ optimal_q(double k, double q_lo, double q_hi, const CompositeRule& rule,
                   const PayoffGridSpec& grid);

// Caches the per-maturity CDF grids of the two tilted measures so a full
// price table reuses one inversion per maturity. Not safe for concurrent
// use of a single instance.
class PriceEngine {
  public:
    struct Options {
        BsParams bs{0.0};          // <= 0 selects derive_sigma_star
        ContourConfig contour{};
        std::size_t n_points = 1 << 14;
    };

    PriceEngine(EsscherSolution rn, double spot, double rate);
    PriceEngine(EsscherSolution rn, double spot, double rate, Options options);

    double price(Engine engine, double strike, double tau);
    double sigma_star() const { return sigma_star_; }
    double spot() const { return spot_; }
    double rate() const { return rate_; }
    const EsscherSolution& riskneutral() const { return riskneutral_; }
    const Options& options() const { return options_; }

  private:
    const std::pair<TransformGrid, TransformGrid>& grids_for(double tau);

    EsscherSolution riskneutral_;
    double spot_;
    double rate_;
    Options options_;
    double sigma_star_;
    std::map<double, std::pair<TransformGrid, TransformGrid>> grid_cache_;
};

struct PriceTableCell {
    double k = 0.0;       // moneyness S/K
    double strike = 0.0;
    double tau = 0.0;
    double bs = 0.0;
    double extended = 0.0;
    double generalized = 0.0;
};

// Full moneyness x maturity table, k = S/K. Cells ordered tau-major within k.
std::vector<PriceTableCell> price_table(PriceEngine& engine,
                                        const std::vector<double>& k_grid,
                                        const std::vector<double>& tau_grid);

struct SurfaceCell {
    double k = 0.0;
    double tau = 0.0;
    double error = 0.0;  // extended GTS price minus Black-Scholes price
};

std::vector<SurfaceCell> error_surface(PriceEngine& engine,
                                       const std::vector<double>& k_grid,
                                       const std::vector<double>& tau_grid);

}  // namespace gts
