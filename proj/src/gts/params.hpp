#pragma once

#include <cstdint>

namespace gts {

// Unit bookkeeping for a parameter set. Fitted parameters live in percent
// log-return per trading day; pricing happens in decimal log-return per year.
enum class Unit { PercentDaily, DecimalAnnual };

// The seven parameters of the generalized tempered stable distribution:
// location mu, stability indexes beta+-, jump intensities alpha+-, and
// tail decay rates lambda+-.
struct GtsParams {
    double mu = 0.0;
    double beta_plus = 0.0;
    double beta_minus = 0.0;
    double alpha_plus = 0.0;
    double alpha_minus = 0.0;
    double lambda_plus = 0.0;
    double lambda_minus = 0.0;
    Unit unit = Unit::PercentDaily;

    // Throws DomainError when a structural invariant fails: alpha, lambda
    // must be nonnegative and both stability indexes below 2.
    void validate() const;

    // True when both betas lie in (0, 1), as the pricing formulas require.
    bool pricing_betas() const;

    bool operator==(const GtsParams&) const = default;
};

// Y -> c*Y amplitude scaling composed with an s-fold time aggregation:
//   amplitude: mu -> c*mu, alpha -> alpha*c^beta, lambda -> lambda/c
//   time:      mu -> s*mu, alpha -> s*alpha
// Betas are untouched by both.
GtsParams rescale(const GtsParams& p, double amplitude_c, double time_factor_s,
                  Unit new_unit);

// The standard percent-daily -> decimal-annual bridge: c = 1/100 and
// s = days_per_year.
GtsParams to_decimal_annual(const GtsParams& p, double days_per_year);

// Risk-neutralization result: the Esscher parameter h*, the rate it was
// solved for, and the tilted parameter set (lambda+ - h*, lambda- + h*).
struct EsscherSolution {
    double h_star = 0.0;
    double risk_free_rate = 0.0;
    GtsParams shifted;
};

// Cumulants k1..k4 of the time-1 distribution.
struct CumulantSet {
    double kappa[4] = {0.0, 0.0, 0.0, 0.0};
    double operator()(int n) const { return kappa[n - 1]; }
};

// Order-insensitive hash of a parameter set plus context values, used to
// stamp transform grids with the inputs that produced them.
std::uint64_t fingerprint(const GtsParams& p, double tau, std::uint64_t seed = 0);
std::uint64_t fingerprint_mix(std::uint64_t h, double value);

}  // namespace gts
