#include "gts/params.hpp"

#include <cmath>
#include <cstring>

#include "gts/errors.hpp"

namespace gts {

void GtsParams::validate() const {
    const double fields[] = {mu,          beta_plus,   beta_minus, alpha_plus,
                             alpha_minus, lambda_plus, lambda_minus};
    for (double f : fields)
        if (!std::isfinite(f)) throw DomainError("GtsParams: non-finite field");
    if (alpha_plus < 0.0 || alpha_minus < 0.0)
        throw DomainError("GtsParams: alpha must be nonnegative");
    if (lambda_plus < 0.0 || lambda_minus < 0.0)
        throw DomainError("GtsParams: lambda must be nonnegative");
    if (beta_plus >= 2.0 || beta_minus >= 2.0)
        throw DomainError("GtsParams: stability index must be below 2");
}

bool GtsParams::pricing_betas() const {
    return beta_plus > 0.0 && beta_plus < 1.0 && beta_minus > 0.0 && beta_minus < 1.0;
}

GtsParams rescale(const GtsParams& p, double amplitude_c, double time_factor_s,
                  Unit new_unit) {
    p.validate();
    if (!(amplitude_c > 0.0) || !(time_factor_s > 0.0))
        throw DomainError("rescale: scale factors must be positive");
    GtsParams out = p;
    out.mu = time_factor_s * amplitude_c * p.mu;
    out.alpha_plus = time_factor_s * p.alpha_plus * std::pow(amplitude_c, p.beta_plus);
    out.alpha_minus = time_factor_s * p.alpha_minus * std::pow(amplitude_c, p.beta_minus);
    out.lambda_plus = p.lambda_plus / amplitude_c;
    out.lambda_minus = p.lambda_minus / amplitude_c;
    out.unit = new_unit;
    return out;
}

GtsParams to_decimal_annual(const GtsParams& p, double days_per_year) {
    if (p.unit != Unit::PercentDaily)
        throw DomainError("to_decimal_annual: parameters are not percent-daily");
    return rescale(p, 0.01, days_per_year, Unit::DecimalAnnual);
}

std::uint64_t fingerprint_mix(std::uint64_t h, double value) {
    std::uint64_t bits = 0;
    std::memcpy(&bits, &value, sizeof bits);
    h ^= bits;
    h *= 0x100000001b3ULL;  // FNV-1a prime
    return h;
}

std::uint64_t fingerprint(const GtsParams& p, double tau, std::uint64_t seed) {
    std::uint64_t h = seed ? seed : 0xcbf29ce484222325ULL;
    for (double v : {p.mu, p.beta_plus, p.beta_minus, p.alpha_plus, p.alpha_minus,
                     p.lambda_plus, p.lambda_minus,
                     static_cast<double>(static_cast<int>(p.unit)), tau})
        h = fingerprint_mix(h, v);
    return h;
}

}  // namespace gts
