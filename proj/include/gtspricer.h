/*
 * gtspricer: European call pricing when the log price follows a generalized
 * tempered stable process.
 *
 * C interface around the C++ core. All objects are opaque handles owned by
 * the library; every function returns GTS_OK (0) on success or a negative
 * status code, with a thread-local message available from gts_last_error().
 * Unless stated otherwise, out-parameters are written only on success.
 */
#ifndef GTSPRICER_H
#define GTSPRICER_H

#ifdef __cplusplus
extern "C" {
#endif

typedef struct gts_params_s gts_params;
typedef struct gts_esscher_s gts_esscher;
typedef struct gts_grid_s gts_grid;
typedef struct gts_pricer_s gts_pricer;
typedef struct gts_returns_s gts_returns;
typedef struct gts_fit_result_s gts_fit_result;

enum gts_status {
    GTS_OK = 0,
    GTS_EINVAL = -1,          /* bad argument / null handle */
    GTS_EDOMAIN = -2,         /* outside a mathematical domain */
    GTS_ENOSOLUTION = -3,     /* martingale equation has no root */
    GTS_EINVALIDMEASURE = -4, /* tilted measure not usable for pricing */
    GTS_ETRUNCATION = -5,     /* transform grid too narrow */
    GTS_ECONTOUR = -6,        /* contour integral failed its residual check */
    GTS_ERANGE = -7,          /* query outside a grid span */
    GTS_EPARSE = -8,          /* malformed input file */
    GTS_EEMPTY = -9,          /* empty series */
    GTS_ENONFINITE = -10,     /* likelihood became non-finite */
    GTS_EINTERNAL = -99
};

enum gts_unit { GTS_UNIT_PERCENT_DAILY = 0, GTS_UNIT_DECIMAL_ANNUAL = 1 };

enum gts_engine {
    GTS_ENGINE_BLACK_SCHOLES = 0,
    GTS_ENGINE_EXTENDED = 1,    /* Fourier-inverted CDFs */
    GTS_ENGINE_GENERALIZED = 2  /* contour integral, Newton-Cotes */
};

enum gts_grid_kind { GTS_GRID_DENSITY = 0, GTS_GRID_CDF = 1 };

const char* gts_version(void);
const char* gts_status_name(int status);
/* Message describing the most recent failure on this thread. */
const char* gts_last_error(void);

/* ------------------------------------------------------------------ */
/* Parameters                                                          */

int gts_params_create(double mu, double beta_plus, double beta_minus,
                      double alpha_plus, double alpha_minus,
                      double lambda_plus, double lambda_minus,
                      int unit, gts_params** out);
void gts_params_free(gts_params* p);

/* fields[7] = {mu, beta+, beta-, alpha+, alpha-, lambda+, lambda-} */
int gts_params_get(const gts_params* p, double fields[7], int* unit);

/* Amplitude scaling Y -> c Y composed with s-fold time aggregation. */
int gts_params_rescale(const gts_params* p, double amplitude_c, double time_factor_s,
                       int new_unit, gts_params** out);

/* Percent-daily to decimal-annual: c = 1/100, s = days_per_year. */
int gts_params_to_annual(const gts_params* p, double days_per_year, gts_params** out);

/* lambda+ -> lambda+ - h, lambda- -> lambda- + h. */
int gts_params_esscher_shift(const gts_params* p, double h, gts_params** out);

/* ------------------------------------------------------------------ */
/* Distribution quantities                                             */

int gts_levy_density(const gts_params* p, double x, double* out);

/* 1 when any active side has a nonnegative stability index. */
int gts_levy_mass(const gts_params* p, double* mass, int* infinite_activity);

int gts_char_exponent(const gts_params* p, double xi_re, double xi_im,
                      double* out_re, double* out_im);

int gts_mgf(const gts_params* p, double h, double t, double* out);

/* Psi_h(z) = Psi(-i(h+z)) - Psi(-ih). */
int gts_esscher_exponent(const gts_params* p, double h, double z, double* out);

/* n in 1..4. */
int gts_cumulant(const gts_params* p, int n, double* out);

/* ------------------------------------------------------------------ */
/* Risk neutralization                                                 */

/* Solves Psi_h(1) = rate for the unique admissible h*. */
int gts_esscher_solve(const gts_params* p, double rate, gts_esscher** out);
void gts_esscher_free(gts_esscher* e);
int gts_esscher_get(const gts_esscher* e, double* h_star, double* rate);
int gts_esscher_shifted_params(const gts_esscher* e, gts_params** out);

/* ------------------------------------------------------------------ */
/* Transform grids                                                     */

/* n_points <= 0 selects the default (16384). */
int gts_grid_create(const gts_params* p, double tau, int kind, long n_points,
                    gts_grid** out);
void gts_grid_free(gts_grid* g);
int gts_grid_size(const gts_grid* g, long* n);
int gts_grid_point(const gts_grid* g, long i, double* x, double* value);
int gts_grid_query(const gts_grid* g, double x, double* out);

/* ------------------------------------------------------------------ */
/* Pricing                                                             */

typedef struct gts_pricer_options_s {
    double sigma_star;   /* <= 0: derive from the fitted variance */
    double contour_q;    /* imaginary contour shift, must be < -1 */
    double contour_b;    /* base truncation point of the contour rule */
    long contour_n;      /* base subinterval count, multiple of 12 */
    int auto_extend;     /* grow b until the integrand has decayed */
    long frft_n_points;  /* CDF grid size, power of two */
} gts_pricer_options;

/* Fills the defaults: sigma* derived, q = -3, b = 20, n = 60000,
 * auto_extend = 1, frft_n_points = 16384. */
int gts_pricer_options_init(gts_pricer_options* options);

int gts_pricer_create(const gts_esscher* e, double spot, double rate,
                      const gts_pricer_options* options /* may be NULL */,
                      gts_pricer** out);
void gts_pricer_free(gts_pricer* p);
int gts_pricer_sigma_star(const gts_pricer* p, double* out);
int gts_pricer_price(gts_pricer* p, int engine, double strike, double tau, double* out);

/* ------------------------------------------------------------------ */
/* Damped payoff transform diagnostics                                 */

/* Reconstruction of (e^x - k)^+ from its Fourier transform along
 * Im(y) = q < -1, integrating over [0, b] with n subintervals. */
int gts_payoff_inverse_fourier(double x, double k, double q, double b, long n,
                               double* out);

/* RMS reconstruction error over m points on [-halfwidth, halfwidth]. */
int gts_payoff_error(double k, double q, double b, long n, double halfwidth,
                     int m, double* out);

int gts_optimal_q(double k, double q_lo, double q_hi, double b, long n,
                  double halfwidth, int m, double* q_opt, double* er_min);

/* ------------------------------------------------------------------ */
/* Market data and calibration                                         */

int gts_returns_load_prices_csv(const char* path, const char* date_column,
                                const char* close_column, gts_returns** out);
int gts_returns_create(const double* values, long n, gts_returns** out);
void gts_returns_free(gts_returns* r);
int gts_returns_size(const gts_returns* r, long* n);
int gts_returns_value(const gts_returns* r, long i, double* out);
/* ISO date of observation i; empty string when the series carries none.
 * The pointer stays valid while the handle lives. */
const char* gts_returns_date(const gts_returns* r, long i);
int gts_returns_dropped_rows(const gts_returns* r, long* out);
int gts_returns_write_csv(const gts_returns* r, const char* path);

typedef struct gts_summary_stats_s {
    double mean;
    double variance;
    double skewness;
    double excess_kurtosis;
    double min;
    double max;
    long count;
    double annualized_vol;
} gts_summary_stats;

int gts_returns_summary(const gts_returns* r, double days_per_year,
                        gts_summary_stats* out);

int gts_log_likelihood(const gts_params* p, const gts_returns* r, double* out);

/* grad[7] and hess[49] in the order (mu, b+, b-, a+, a-, l+, l-). */
int gts_score(const gts_params* p, const gts_returns* r, double grad[7],
              double hess[49], double* max_eigen);

typedef struct gts_fit_row_s {
    long iteration;
    double mu, beta_plus, beta_minus, alpha_plus, alpha_minus,
        lambda_plus, lambda_minus;
    double log_ml;
    double grad_norm;
    double max_eigen;
} gts_fit_row;

/* init may be NULL: a moment-matching start is used. tol <= 0 and
 * max_iter <= 0 select the defaults (1e-3, 200). */
int gts_fit(const gts_returns* r, const gts_params* init, double tol,
            long max_iter, gts_fit_result** out);
void gts_fit_result_free(gts_fit_result* f);
int gts_fit_result_size(const gts_fit_result* f, long* n);
int gts_fit_result_row(const gts_fit_result* f, long i, gts_fit_row* out);
/* Parameters of the final trajectory state. */
int gts_fit_result_params(const gts_fit_result* f, gts_params** out);

#ifdef __cplusplus
}
#endif

#endif /* GTSPRICER_H */
