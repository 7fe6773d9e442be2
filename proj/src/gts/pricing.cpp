#include "gts/pricing.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "gts/errors.hpp"
#include "gts/process.hpp"
#include "gts/special.hpp"

namespace gts {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double query_or_limit(const TransformGrid& grid, double x) {
    if (x < grid.x_min()) return 0.0;  // far left tail, CDF indistinguishable from 0
    if (x > grid.x_max()) return 1.0;
    return query(grid, x);
}

}  // namespace

void PricingRequest::validate() const {
    if (!(spot > 0.0) || !(strike > 0.0) || !(tau > 0.0))
        throw DomainError("PricingRequest: spot, strike and tau must be positive");
    if (!std::isfinite(rate)) throw DomainError("PricingRequest: non-finite rate");
}

void ContourConfig::validate() const {
    if (!(q < -1.0)) throw DomainError("ContourConfig: requires q < -1");
    rule.validate();
    if (rule.a != 0.0) throw DomainError("ContourConfig: base rule must start at 0");
}

GtsParams physical_params(const EsscherSolution& rn) {
    return esscher_shift(rn.shifted, -rn.h_star);
}

double derive_sigma_star(const EsscherSolution& rn) {
    return std::sqrt(cumulant(physical_params(rn), 2));
}

double bs_price(const PricingRequest& req, const BsParams& bs) {
    req.validate();
    if (req.engine != Engine::BlackScholes)
        throw DomainError("bs_price: request is tagged for a different engine");
    if (!(bs.sigma_star > 0.0)) throw DomainError("bs_price: sigma* must be positive");
    const double sig_sqrt_tau = bs.sigma_star * std::sqrt(req.tau);
    const double d1 = (std::log(req.spot / req.strike) +
                       (req.rate + 0.5 * bs.sigma_star * bs.sigma_star) * req.tau) /
                      sig_sqrt_tau;
    const double d2 = d1 - sig_sqrt_tau;
    return req.spot * norm_cdf(d1) - req.strike * std::exp(-req.rate * req.tau) * norm_cdf(d2);
}

double gts_call_extended(const PricingRequest& req, std::size_t n_points) {
    req.validate();
    if (req.engine != Engine::GtsExtended)
        throw DomainError("gts_call_extended: request is tagged for a different engine");
    const GtsParams& p0 = req.riskneutral.shifted;
    if (!(p0.lambda_plus > 1.0))
        throw InvalidMeasureError("gts_call_extended: tilted lambda+ must exceed 1");
    const GtsParams p1 = esscher_shift(p0, 1.0);

    const TransformGrid g0 = cdf_grid(p0, req.tau, auto_config(p0, req.tau, 0.0, n_points));
    const TransformGrid g1 = cdf_grid(p1, req.tau, auto_config(p1, req.tau, 0.0, n_points));

    const double x = std::log(req.strike / req.spot);
    return req.spot * (1.0 - query_or_limit(g1, x)) -
           req.strike * std::exp(-req.rate * req.tau) * (1.0 - query_or_limit(g0, x));
}

namespace {

// |integrand| envelope along the contour, up to factors constant in xi.
double contour_envelope(const GtsParams& p, double tau, double q, double xi) {
    const cplx w(xi, q);
    const cplx iw = cplx(0.0, 1.0) * w;
    const double re_psi = characteristic_exponent(p, w).real();
    return std::exp(tau * re_psi) / (std::abs(iw) * std::abs(iw - 1.0));
}

CompositeRule extended_rule(const GtsParams& p, double tau, const ContourConfig& contour) {
    CompositeRule rule = contour.rule;
    if (!contour.auto_extend) return rule;
    // Doubling b and n together keeps the node spacing of the base rule.
    const double reference = contour_envelope(p, tau, contour.q, 0.0);
    while (contour_envelope(p, tau, contour.q, rule.b) >
           ContourConfig::kEnvelopeDecay * reference) {
        rule.b *= 2.0;
        rule.subintervals *= 2;
        if (rule.b > 4096.0)
            throw ContourError("gts_call_generalized: integrand decays too slowly (b > " +
                               std::to_string(rule.b) + ")");
    }
    return rule;
}

}  // namespace

double gts_call_generalized(const PricingRequest& req, const ContourConfig& contour) {
    req.validate();
    if (req.engine != Engine::GtsGeneralized)
        throw DomainError("gts_call_generalized: request is tagged for a different engine");
    contour.validate();
    const GtsParams& p0 = req.riskneutral.shifted;
    if (!(-contour.q < p0.lambda_plus))
        throw InvalidMeasureError("gts_call_generalized: contour leaves the analyticity strip");

    const double x = std::log(req.spot / req.strike);
    const double tau = req.tau;
    const double r = req.rate;
    const double q = contour.q;

    const CompositeRule one_sided = extended_rule(p0, tau, contour);
    // Evaluate both half-lines so the imaginary part is a real consistency
    // check instead of vanishing by construction.
    const CompositeRule rule = make_rule(-one_sided.b, one_sided.b, 2 * one_sided.subintervals);

    auto integrand = [&](double xi) {
        const cplx w(xi, q);
        const cplx iw = cplx(0.0, 1.0) * w;
        return std::exp(iw * x - tau * (r - characteristic_exponent(p0, w))) /
               (kTwoPi * iw * (iw - 1.0));
    };
    const cplx total = integrate(integrand, rule);
    const double price = req.strike * total.real();
    const double residual = req.strike * std::abs(total.imag());
    if (residual > 1e-6 * std::max(std::abs(price), 1e-8))
        throw ContourError("gts_call_generalized: imaginary residual " +
                           std::to_string(residual) + " for price " + std::to_string(price));
    return price;
}

namespace {

// Shared node coefficients for the damped payoff transform: evaluating the
// inverse at many x values reuses the frequency samples.
struct PayoffReconstructor {
    double q = 0.0;
    double step = 0.0;
    std::vector<cplx> coeffs;  // h * W_j * F[g](y_j) / 2pi on [0, b]
    std::vector<double> xi;

    PayoffReconstructor(double k, double q_in, const CompositeRule& rule) : q(q_in) {
        rule.validate();
        if (!(q < -1.0)) throw DomainError("payoff transform: requires q < -1");
        if (!(k > 0.0)) throw DomainError("payoff transform: strike ratio must be positive");
        const double h = rule.step();
        const double log_k = std::log(k);
        const long panels = rule.subintervals / rule.points_per_panel;
        coeffs.reserve(static_cast<std::size_t>(rule.subintervals + panels));
        xi.reserve(coeffs.capacity());
        for (long p = 0; p < panels; ++p) {
            for (int j = 0; j <= rule.points_per_panel; ++j) {
                const double xi_j = rule.a + h * static_cast<double>(p * rule.points_per_panel + j);
                const cplx y(xi_j, q);
                const cplx iy = cplx(0.0, 1.0) * y;
                const cplx transform = k * std::exp(-iy * log_k) / (iy * (iy - 1.0));
                coeffs.push_back(rule.weights[static_cast<std::size_t>(j)] * h * transform / kTwoPi);
                xi.push_back(xi_j);
            }
        }
    }

    // 2 Re of the one-sided sum; the mirror half is its conjugate.
    double eval(double x) const {
        double acc_re = 0.0;
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            const double angle = xi[i] * x;
            const cplx rot(std::cos(angle), std::sin(angle));
            acc_re += (coeffs[i] * rot).real();
        }
        return 2.0 * std::exp(-q * x) * acc_re;
    }
};

}  // namespace

double payoff_inverse_fourier(double x, double k, double q, const CompositeRule& rule) {
    return PayoffReconstructor(k, q, rule).eval(x);
}

double payoff_error(double k, double q, const CompositeRule& rule, const PayoffGridSpec& grid) {
    if (grid.m < 2) throw DomainError("payoff_error: need at least two sample points");
    const PayoffReconstructor recon(k, q, rule);
    double sum_sq = 0.0;
    for (int j = 0; j < grid.m; ++j) {
        const double x = -grid.halfwidth +
                         2.0 * grid.halfwidth * static_cast<double>(j) /
                             static_cast<double>(grid.m - 1);
        const double exact = std::max(std::exp(x) - k, 0.0);
        const double diff = exact - recon.eval(x);
        sum_sq += diff * diff;
    }
    return std::sqrt(sum_sq / static_cast<double>(grid.m));
}

OptimalQ optimal_q(double k, double q_lo, double q_hi, const CompositeRule& rule,
                   const PayoffGridSpec& grid) {
    if (!(q_lo < q_hi) || !(q_hi < -1.0))
        throw DomainError("optimal_q: range must satisfy q_lo < q_hi < -1");

    auto er = [&](double q) { return payoff_error(k, q, rule, grid); };

    const int scan = 40;
    double best_q = q_lo, best_er = er(q_lo);
    for (int i = 1; i <= scan; ++i) {
        const double q = q_lo + (q_hi - q_lo) * static_cast<double>(i) / scan;
        const double e = er(q);
        if (e < best_er) {
            best_er = e;
            best_q = q;
        }
    }

    // Golden-section refinement inside the bracketing scan cells.
    const double cell = (q_hi - q_lo) / scan;
    double a = std::max(q_lo, best_q - cell);
    double b = std::min(q_hi, best_q + cell);
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = er(x1), f2 = er(x2);
    while (b - a > 1e-3) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = er(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = er(x2);
        }
    }
    const double q_mid = 0.5 * (a + b);
    const double e_mid = er(q_mid);
    if (e_mid < best_er) {
        best_er = e_mid;
        best_q = q_mid;
    }
    return {best_q, best_er};
}

PriceEngine::PriceEngine(EsscherSolution rn, double spot, double rate)
    : PriceEngine(std::move(rn), spot, rate, Options()) {}

PriceEngine::PriceEngine(EsscherSolution rn, double spot, double rate, Options options)
    : riskneutral_(std::move(rn)), spot_(spot), rate_(rate), options_(options) {
    if (!(spot_ > 0.0)) throw DomainError("PriceEngine: spot must be positive");
    if (!(riskneutral_.shifted.lambda_plus > 1.0))
        throw InvalidMeasureError("PriceEngine: tilted lambda+ must exceed 1");
    options_.contour.validate();
    sigma_star_ = options_.bs.sigma_star > 0.0 ? options_.bs.sigma_star
                                               : derive_sigma_star(riskneutral_);
}

const std::pair<TransformGrid, TransformGrid>& PriceEngine::grids_for(double tau) {
    auto it = grid_cache_.find(tau);
    if (it != grid_cache_.end()) return it->second;
    const GtsParams& p0 = riskneutral_.shifted;
    const GtsParams p1 = esscher_shift(p0, 1.0);
    auto grids = std::make_pair(
        cdf_grid(p0, tau, auto_config(p0, tau, 0.0, options_.n_points)),
        cdf_grid(p1, tau, auto_config(p1, tau, 0.0, options_.n_points)));
    return grid_cache_.emplace(tau, std::move(grids)).first->second;
}

double PriceEngine::price(Engine engine, double strike, double tau) {
    PricingRequest req;
    req.spot = spot_;
    req.strike = strike;
    req.tau = tau;
    req.rate = rate_;
    req.riskneutral = riskneutral_;
    req.engine = engine;
    req.validate();

    switch (engine) {
        case Engine::BlackScholes:
            return bs_price(req, BsParams{sigma_star_});
        case Engine::GtsGeneralized:
            return gts_call_generalized(req, options_.contour);
        case Engine::GtsExtended: {
            const auto& [g0, g1] = grids_for(tau);
            const double x = std::log(strike / spot_);
            return spot_ * (1.0 - query_or_limit(g1, x)) -
                   strike * std::exp(-rate_ * tau) * (1.0 - query_or_limit(g0, x));
        }
    }
    throw DomainError("PriceEngine: unknown engine");
}

std::vector<PriceTableCell> price_table(PriceEngine& engine,
                                        const std::vector<double>& k_grid,
                                        const std::vector<double>& tau_grid) {
    if (k_grid.empty() || tau_grid.empty())
        throw DomainError("price_table: grids must be nonempty");
    std::vector<PriceTableCell> cells;
    cells.reserve(k_grid.size() * tau_grid.size());
    for (double k : k_grid) {
        for (double tau : tau_grid) {
            PriceTableCell cell;
            cell.k = k;
            cell.strike = engine.spot() / k;
            cell.tau = tau;
            cell.bs = engine.price(Engine::BlackScholes, cell.strike, tau);
            cell.extended = engine.price(Engine::GtsExtended, cell.strike, tau);
            cell.generalized = engine.price(Engine::GtsGeneralized, cell.strike, tau);
            cells.push_back(cell);
        }
    }
    return cells;
}

std::vector<SurfaceCell> error_surface(PriceEngine& engine,
                                       const std::vector<double>& k_grid,
                                       const std::vector<double>& tau_grid) {
    if (k_grid.empty() || tau_grid.empty())
        throw DomainError("error_surface: grids must be nonempty");
    std::vector<SurfaceCell> cells;
    cells.reserve(k_grid.size() * tau_grid.size());
    for (double k : k_grid) {
        for (double tau : tau_grid) {
            const double strike = engine.spot() / k;
            SurfaceCell cell;
            cell.k = k;
            cell.tau = tau;
            try {
                cell.error = engine.price(Engine::GtsExtended, strike, tau) -
                             engine.price(Engine::BlackScholes, strike, tau);
            } catch (const std::exception& e) {
                throw TruncationError("error_surface: cell (k=" + std::to_string(k) +
                                      ", tau=" + std::to_string(tau) + "): " + e.what());
            }
            cells.push_back(cell);
        }
    }
    return cells;
}

}  // namespace gts
