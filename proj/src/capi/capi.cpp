#include "gtspricer.h"

#include <complex>
#include <cstring>
#include <string>
#include <vector>

#include "gts/calibration.hpp"
#include "gts/errors.hpp"
#include "gts/market_data.hpp"
#include "gts/params.hpp"
#include "gts/pricing.hpp"
#include "gts/process.hpp"
#include "gts/transform.hpp"

namespace {

thread_local std::string g_last_error;

void set_error(const char* what) { g_last_error = what ? what : ""; }

// Maps the core exception types onto status codes; used by every entry point.
template <typename Fn>
int guarded(Fn&& fn) {
    try {
        fn();
        return GTS_OK;
    } catch (const gts::DomainError& e) {
        set_error(e.what());
        return GTS_EDOMAIN;
    } catch (const gts::NoSolutionError& e) {
        set_error(e.what());
        return GTS_ENOSOLUTION;
    } catch (const gts::InvalidMeasureError& e) {
        set_error(e.what());
        return GTS_EINVALIDMEASURE;
    } catch (const gts::TruncationError& e) {
        set_error(e.what());
        return GTS_ETRUNCATION;
    } catch (const gts::ContourError& e) {
        set_error(e.what());
        return GTS_ECONTOUR;
    } catch (const gts::OutOfRangeError& e) {
        set_error(e.what());
        return GTS_ERANGE;
    } catch (const gts::ParseError& e) {
        set_error(e.what());
        return GTS_EPARSE;
    } catch (const gts::EmptySeriesError& e) {
        set_error(e.what());
        return GTS_EEMPTY;
    } catch (const gts::NonFiniteError& e) {
        set_error(e.what());
        return GTS_ENONFINITE;
    } catch (const std::exception& e) {
        set_error(e.what());
        return GTS_EINTERNAL;
    } catch (...) {
        set_error("unknown error");
        return GTS_EINTERNAL;
    }
}

int require(bool ok, const char* what) {
    if (ok) return GTS_OK;
    set_error(what);
    return GTS_EINVAL;
}

gts::Unit to_unit(int unit) {
    if (unit == GTS_UNIT_PERCENT_DAILY) return gts::Unit::PercentDaily;
    if (unit == GTS_UNIT_DECIMAL_ANNUAL) return gts::Unit::DecimalAnnual;
    throw gts::DomainError("unknown unit tag");
}

}  // namespace

struct gts_params_s {
    gts::GtsParams value;
};

struct gts_esscher_s {
    gts::EsscherSolution value;
};

struct gts_grid_s {
    gts::TransformGrid value;
};

struct gts_pricer_s {
    gts::PriceEngine engine;
};

struct gts_returns_s {
    gts::ReturnSeries series;
    long dropped = 0;
};

struct gts_fit_result_s {
    std::vector<gts::FitState> trajectory;
};

extern "C" {

const char* gts_version(void) { return "1.0.0"; }

const char* gts_last_error(void) { return g_last_error.c_str(); }

const char* gts_status_name(int status) {
    switch (status) {
        case GTS_OK: return "GTS_OK";
        case GTS_EINVAL: return "GTS_EINVAL";
        case GTS_EDOMAIN: return "GTS_EDOMAIN";
        case GTS_ENOSOLUTION: return "GTS_ENOSOLUTION";
        case GTS_EINVALIDMEASURE: return "GTS_EINVALIDMEASURE";
        case GTS_ETRUNCATION: return "GTS_ETRUNCATION";
        case GTS_ECONTOUR: return "GTS_ECONTOUR";
        case GTS_ERANGE: return "GTS_ERANGE";
        case GTS_EPARSE: return "GTS_EPARSE";
        case GTS_EEMPTY: return "GTS_EEMPTY";
        case GTS_ENONFINITE: return "GTS_ENONFINITE";
        default: return "GTS_EINTERNAL";
    }
}

int gts_params_create(double mu, double beta_plus, double beta_minus,
                      double alpha_plus, double alpha_minus,
                      double lambda_plus, double lambda_minus,
                      int unit, gts_params** out) {
    if (int rc = require(out != nullptr, "gts_params_create: out is NULL")) return rc;
    return guarded([&] {
        gts::GtsParams p{mu, beta_plus, beta_minus, alpha_plus, alpha_minus,
                         lambda_plus, lambda_minus, to_unit(unit)};
        p.validate();
        *out = new gts_params_s{p};
    });
}

void gts_params_free(gts_params* p) { delete p; }

int gts_params_get(const gts_params* p, double fields[7], int* unit) {
    if (int rc = require(p && fields, "gts_params_get: NULL argument")) return rc;
    fields[0] = p->value.mu;
    fields[1] = p->value.beta_plus;
    fields[2] = p->value.beta_minus;
    fields[3] = p->value.alpha_plus;
    fields[4] = p->value.alpha_minus;
    fields[5] = p->value.lambda_plus;
    fields[6] = p->value.lambda_minus;
    if (unit) *unit = p->value.unit == gts::Unit::PercentDaily ? GTS_UNIT_PERCENT_DAILY
                                                               : GTS_UNIT_DECIMAL_ANNUAL;
    return GTS_OK;
}

int gts_params_rescale(const gts_params* p, double amplitude_c, double time_factor_s,
                       int new_unit, gts_params** out) {
    if (int rc = require(p && out, "gts_params_rescale: NULL argument")) return rc;
    return guarded([&] {
        *out = new gts_params_s{gts::rescale(p->value, amplitude_c, time_factor_s,
                                             to_unit(new_unit))};
    });
}

int gts_params_to_annual(const gts_params* p, double days_per_year, gts_params** out) {
    if (int rc = require(p && out, "gts_params_to_annual: NULL argument")) return rc;
    return guarded([&] {
        *out = new gts_params_s{gts::to_decimal_annual(p->value, days_per_year)};
    });
}

int gts_params_esscher_shift(const gts_params* p, double h, gts_params** out) {
    if (int rc = require(p && out, "gts_params_esscher_shift: NULL argument")) return rc;
    return guarded([&] { *out = new gts_params_s{gts::esscher_shift(p->value, h)}; });
}

int gts_levy_density(const gts_params* p, double x, double* out) {
    if (int rc = require(p && out, "gts_levy_density: NULL argument")) return rc;
    return guarded([&] { *out = gts::levy_density(p->value, x); });
}

int gts_levy_mass(const gts_params* p, double* mass, int* infinite_activity) {
    if (int rc = require(p && mass, "gts_levy_mass: NULL argument")) return rc;
    return guarded([&] {
        const gts::LevyMass m = gts::total_levy_mass(p->value);
        *mass = m.value;
        if (infinite_activity)
            *infinite_activity = m.activity == gts::LevyActivity::InfiniteActivity ? 1 : 0;
    });
}

int gts_char_exponent(const gts_params* p, double xi_re, double xi_im,
                      double* out_re, double* out_im) {
    if (int rc = require(p && out_re && out_im, "gts_char_exponent: NULL argument")) return rc;
    return guarded([&] {
        const std::complex<double> psi =
            gts::characteristic_exponent(p->value, {xi_re, xi_im});
        *out_re = psi.real();
        *out_im = psi.imag();
    });
}

int gts_mgf(const gts_params* p, double h, double t, double* out) {
    if (int rc = require(p && out, "gts_mgf: NULL argument")) return rc;
    return guarded([&] { *out = gts::mgf(p->value, h, t); });
}

int gts_esscher_exponent(const gts_params* p, double h, double z, double* out) {
    if (int rc = require(p && out, "gts_esscher_exponent: NULL argument")) return rc;
    return guarded([&] { *out = gts::esscher_exponent(p->value, h, z); });
}

int gts_cumulant(const gts_params* p, int n, double* out) {
    if (int rc = require(p && out, "gts_cumulant: NULL argument")) return rc;
    return guarded([&] { *out = gts::cumulant(p->value, n); });
}

int gts_esscher_solve(const gts_params* p, double rate, gts_esscher** out) {
    if (int rc = require(p && out, "gts_esscher_solve: NULL argument")) return rc;
    return guarded([&] { *out = new gts_esscher_s{gts::solve_esscher(p->value, rate)}; });
}

void gts_esscher_free(gts_esscher* e) { delete e; }

int gts_esscher_get(const gts_esscher* e, double* h_star, double* rate) {
    if (int rc = require(e != nullptr, "gts_esscher_get: NULL handle")) return rc;
    if (h_star) *h_star = e->value.h_star;
    if (rate) *rate = e->value.risk_free_rate;
    return GTS_OK;
}

int gts_esscher_shifted_params(const gts_esscher* e, gts_params** out) {
    if (int rc = require(e && out, "gts_esscher_shifted_params: NULL argument")) return rc;
    *out = new gts_params_s{e->value.shifted};
    return GTS_OK;
}

int gts_grid_create(const gts_params* p, double tau, int kind, long n_points,
                    gts_grid** out) {
    if (int rc = require(p && out, "gts_grid_create: NULL argument")) return rc;
    return guarded([&] {
        const std::size_t n = n_points > 0 ? static_cast<std::size_t>(n_points) : (1u << 14);
        const gts::FrftConfig cfg = gts::auto_config(p->value, tau, 0.0, n);
        if (kind == GTS_GRID_DENSITY)
            *out = new gts_grid_s{gts::density_grid(p->value, tau, cfg)};
        else if (kind == GTS_GRID_CDF)
            *out = new gts_grid_s{gts::cdf_grid(p->value, tau, cfg)};
        else
            throw gts::DomainError("gts_grid_create: unknown grid kind");
    });
}

void gts_grid_free(gts_grid* g) { delete g; }

int gts_grid_size(const gts_grid* g, long* n) {
    if (int rc = require(g && n, "gts_grid_size: NULL argument")) return rc;
    *n = static_cast<long>(g->value.size());
    return GTS_OK;
}

int gts_grid_point(const gts_grid* g, long i, double* x, double* value) {
    if (int rc = require(g && x && value, "gts_grid_point: NULL argument")) return rc;
    if (i < 0 || static_cast<std::size_t>(i) >= g->value.size()) {
        set_error("gts_grid_point: index out of range");
        return GTS_ERANGE;
    }
    *x = g->value.x(static_cast<std::size_t>(i));
    *value = g->value.values[static_cast<std::size_t>(i)];
    return GTS_OK;
}

int gts_grid_query(const gts_grid* g, double x, double* out) {
    if (int rc = require(g && out, "gts_grid_query: NULL argument")) return rc;
    return guarded([&] { *out = gts::query(g->value, x); });
}

int gts_pricer_options_init(gts_pricer_options* options) {
    if (int rc = require(options != nullptr, "gts_pricer_options_init: NULL argument")) return rc;
    options->sigma_star = 0.0;
    options->contour_q = -3.0;
    options->contour_b = 20.0;
    options->contour_n = 60000;
    options->auto_extend = 1;
    options->frft_n_points = 1 << 14;
    return GTS_OK;
}

int gts_pricer_create(const gts_esscher* e, double spot, double rate,
                      const gts_pricer_options* options, gts_pricer** out) {
    if (int rc = require(e && out, "gts_pricer_create: NULL argument")) return rc;
    return guarded([&] {
        gts_pricer_options opt;
        gts_pricer_options_init(&opt);
        if (options) opt = *options;
        gts::PriceEngine::Options engine_opt;
        engine_opt.bs.sigma_star = opt.sigma_star;
        engine_opt.contour.q = opt.contour_q;
        engine_opt.contour.rule = gts::make_rule(0.0, opt.contour_b, opt.contour_n);
        engine_opt.contour.auto_extend = opt.auto_extend != 0;
        if (opt.frft_n_points <= 0)
            throw gts::DomainError("gts_pricer_create: frft_n_points must be positive");
        engine_opt.n_points = static_cast<std::size_t>(opt.frft_n_points);
        *out = new gts_pricer_s{gts::PriceEngine(e->value, spot, rate, engine_opt)};
    });
}

void gts_pricer_free(gts_pricer* p) { delete p; }

int gts_pricer_sigma_star(const gts_pricer* p, double* out) {
    if (int rc = require(p && out, "gts_pricer_sigma_star: NULL argument")) return rc;
    *out = p->engine.sigma_star();
    return GTS_OK;
}

int gts_pricer_price(gts_pricer* p, int engine, double strike, double tau, double* out) {
    if (int rc = require(p && out, "gts_pricer_price: NULL argument")) return rc;
    return guarded([&] {
        gts::Engine e;
        switch (engine) {
            case GTS_ENGINE_BLACK_SCHOLES: e = gts::Engine::BlackScholes; break;
            case GTS_ENGINE_EXTENDED: e = gts::Engine::GtsExtended; break;
            case GTS_ENGINE_GENERALIZED: e = gts::Engine::GtsGeneralized; break;
            default: throw gts::DomainError("gts_pricer_price: unknown engine");
        }
        *out = p->engine.price(e, strike, tau);
    });
}

int gts_payoff_inverse_fourier(double x, double k, double q, double b, long n,
                               double* out) {
    if (int rc = require(out != nullptr, "gts_payoff_inverse_fourier: out is NULL")) return rc;
    return guarded([&] {
        *out = gts::payoff_inverse_fourier(x, k, q, gts::make_rule(0.0, b, n));
    });
}

int gts_payoff_error(double k, double q, double b, long n, double halfwidth,
                     int m, double* out) {
    if (int rc = require(out != nullptr, "gts_payoff_error: out is NULL")) return rc;
    return guarded([&] {
        *out = gts::payoff_error(k, q, gts::make_rule(0.0, b, n),
                                 gts::PayoffGridSpec{halfwidth, m});
    });
}

int gts_optimal_q(double k, double q_lo, double q_hi, double b, long n,
                  double halfwidth, int m, double* q_opt, double* er_min) {
    if (int rc = require(q_opt && er_min, "gts_optimal_q: NULL argument")) return rc;
    return guarded([&] {
        const gts::OptimalQ res = gts::optimal_q(k, q_lo, q_hi, gts::make_rule(0.0, b, n),
                                                 gts::PayoffGridSpec{halfwidth, m});
        *q_opt = res.q;
        *er_min = res.er;
    });
}

int gts_returns_load_prices_csv(const char* path, const char* date_column,
                                const char* close_column, gts_returns** out) {
    if (int rc = require(path && out, "gts_returns_load_prices_csv: NULL argument")) return rc;
    return guarded([&] {
        gts::CsvSchema schema;
        if (date_column) schema.date_column = date_column;
        if (close_column) schema.close_column = close_column;
        const gts::PriceSeries prices = gts::load_prices(path, schema);
        auto* handle = new gts_returns_s;
        handle->series = gts::log_returns(prices);
        handle->dropped = prices.dropped_rows;
        *out = handle;
    });
}

int gts_returns_create(const double* values, long n, gts_returns** out) {
    if (int rc = require(values && out, "gts_returns_create: NULL argument")) return rc;
    if (n <= 0) {
        set_error("gts_returns_create: n must be positive");
        return GTS_EEMPTY;
    }
    auto* handle = new gts_returns_s;
    handle->series.returns.assign(values, values + n);
    handle->series.dates.assign(static_cast<std::size_t>(n), gts::Date{});
    *out = handle;
    return GTS_OK;
}

void gts_returns_free(gts_returns* r) { delete r; }

int gts_returns_size(const gts_returns* r, long* n) {
    if (int rc = require(r && n, "gts_returns_size: NULL argument")) return rc;
    *n = static_cast<long>(r->series.size());
    return GTS_OK;
}

int gts_returns_value(const gts_returns* r, long i, double* out) {
    if (int rc = require(r && out, "gts_returns_value: NULL argument")) return rc;
    if (i < 0 || static_cast<std::size_t>(i) >= r->series.size()) {
        set_error("gts_returns_value: index out of range");
        return GTS_ERANGE;
    }
    *out = r->series.returns[static_cast<std::size_t>(i)];
    return GTS_OK;
}

const char* gts_returns_date(const gts_returns* r, long i) {
    static thread_local std::string buffer;
    if (!r || i < 0 || static_cast<std::size_t>(i) >= r->series.dates.size()) return "";
    const gts::Date& d = r->series.dates[static_cast<std::size_t>(i)];
    buffer = d.year == 0 ? std::string() : d.iso();
    return buffer.c_str();
}

int gts_returns_dropped_rows(const gts_returns* r, long* out) {
    if (int rc = require(r && out, "gts_returns_dropped_rows: NULL argument")) return rc;
    *out = r->dropped;
    return GTS_OK;
}

int gts_returns_write_csv(const gts_returns* r, const char* path) {
    if (int rc = require(r && path, "gts_returns_write_csv: NULL argument")) return rc;
    return guarded([&] { gts::write_returns_csv(r->series, path); });
}

int gts_returns_summary(const gts_returns* r, double days_per_year,
                        gts_summary_stats* out) {
    if (int rc = require(r && out, "gts_returns_summary: NULL argument")) return rc;
    return guarded([&] {
        const gts::SummaryStats s = gts::summary(r->series, days_per_year);
        out->mean = s.mean;
        out->variance = s.variance;
        out->skewness = s.skewness;
        out->excess_kurtosis = s.excess_kurtosis;
        out->min = s.min;
        out->max = s.max;
        out->count = s.count;
        out->annualized_vol = s.annualized_vol;
    });
}

int gts_log_likelihood(const gts_params* p, const gts_returns* r, double* out) {
    if (int rc = require(p && r && out, "gts_log_likelihood: NULL argument")) return rc;
    return guarded([&] { *out = gts::log_likelihood(p->value, r->series); });
}

int gts_score(const gts_params* p, const gts_returns* r, double grad[7],
              double hess[49], double* max_eigen) {
    if (int rc = require(p && r && grad, "gts_score: NULL argument")) return rc;
    return guarded([&] {
        const gts::ScoreResult s = gts::score_and_hessian(p->value, r->series);
        std::memcpy(grad, s.gradient.data(), sizeof(double) * 7);
        if (hess) std::memcpy(hess, s.hessian.data(), sizeof(double) * 49);
        if (max_eigen) *max_eigen = s.max_eigen;
    });
}

int gts_fit(const gts_returns* r, const gts_params* init, double tol,
            long max_iter, gts_fit_result** out) {
    if (int rc = require(r && out, "gts_fit: NULL argument")) return rc;
    return guarded([&] {
        gts::FitOptions options;
        if (tol > 0.0) options.tol = tol;
        if (max_iter > 0) options.max_iter = static_cast<int>(max_iter);
        const gts::GtsParams start =
            init ? init->value : gts::default_init(r->series);
        *out = new gts_fit_result_s{gts::fit(r->series, start, options)};
    });
}

void gts_fit_result_free(gts_fit_result* f) { delete f; }

int gts_fit_result_size(const gts_fit_result* f, long* n) {
    if (int rc = require(f && n, "gts_fit_result_size: NULL argument")) return rc;
    *n = static_cast<long>(f->trajectory.size());
    return GTS_OK;
}

int gts_fit_result_row(const gts_fit_result* f, long i, gts_fit_row* out) {
    if (int rc = require(f && out, "gts_fit_result_row: NULL argument")) return rc;
    if (i < 0 || static_cast<std::size_t>(i) >= f->trajectory.size()) {
        set_error("gts_fit_result_row: index out of range");
        return GTS_ERANGE;
    }
    const gts::FitState& s = f->trajectory[static_cast<std::size_t>(i)];
    out->iteration = s.iteration;
    out->mu = s.params.mu;
    out->beta_plus = s.params.beta_plus;
    out->beta_minus = s.params.beta_minus;
    out->alpha_plus = s.params.alpha_plus;
    out->alpha_minus = s.params.alpha_minus;
    out->lambda_plus = s.params.lambda_plus;
    out->lambda_minus = s.params.lambda_minus;
    out->log_ml = s.log_ml;
    out->grad_norm = s.grad_norm;
    out->max_eigen = s.max_eigen;
    return GTS_OK;
}

int gts_fit_result_params(const gts_fit_result* f, gts_params** out) {
    if (int rc = require(f && out, "gts_fit_result_params: NULL argument")) return rc;
    if (f->trajectory.empty()) {
        set_error("gts_fit_result_params: empty trajectory");
        return GTS_EEMPTY;
    }
    *out = new gts_params_s{f->trajectory.back().params};
    return GTS_OK;
}

}  // extern "C"
