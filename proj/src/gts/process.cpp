#include "gts/process.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "gts/errors.hpp"
#include "gts/special.hpp"

namespace gts {

namespace {

bool is_pole_beta(double beta) {
    // Gamma(-beta) poles at beta = 0, 1 (betas are < 2 by invariant).
    return std::abs(beta) < 1e-12 || std::abs(beta - 1.0) < 1e-12;
}

void check_beta_poles(const GtsParams& p) {
    if ((p.alpha_plus != 0.0 && is_pole_beta(p.beta_plus)) ||
        (p.alpha_minus != 0.0 && is_pole_beta(p.beta_minus)))
        throw DomainError("characteristic exponent: beta at a Gamma(-beta) pole");
}

// Principal-branch power with an explicit branch-cut guard.
cplx branch_pow(cplx base, double expnt) {
    if (base.imag() == 0.0 && base.real() <= 0.0)
        throw DomainError("characteristic exponent: power argument on the branch cut");
    return std::pow(base, expnt);
}

}  // namespace

double levy_density(const GtsParams& p, double x) {
    p.validate();
    if (x == 0.0) throw DomainError("levy_density: singular at x = 0");
    if (x > 0.0)
        return p.alpha_plus * std::exp(-p.lambda_plus * x) / std::pow(x, 1.0 + p.beta_plus);
    const double ax = -x;
    return p.alpha_minus * std::exp(-p.lambda_minus * ax) / std::pow(ax, 1.0 + p.beta_minus);
}

LevyMass total_levy_mass(const GtsParams& p) {
    p.validate();
    LevyMass out;
    double total = 0.0;
    bool infinite = false;
    const double alphas[2] = {p.alpha_plus, p.alpha_minus};
    const double betas[2] = {p.beta_plus, p.beta_minus};
    const double lambdas[2] = {p.lambda_plus, p.lambda_minus};
    for (int side = 0; side < 2; ++side) {
        if (alphas[side] == 0.0) continue;
        if (betas[side] >= 0.0) {
            infinite = true;
        } else {
            total += alphas[side] * std::pow(lambdas[side], betas[side]) * gamma_fn(-betas[side]);
        }
    }
    if (infinite) {
        out.value = std::numeric_limits<double>::infinity();
        out.activity = LevyActivity::InfiniteActivity;
    } else {
        out.value = total;
        out.activity = LevyActivity::FiniteActivity;
    }
    return out;
}

cplx characteristic_exponent(const GtsParams& p, cplx xi) {
    p.validate();
    check_beta_poles(p);
    const cplx i(0.0, 1.0);
    cplx psi = p.mu * xi * i;
    if (p.alpha_plus != 0.0) {
        const cplx arg = p.lambda_plus - i * xi;
        psi += p.alpha_plus * gamma_fn(-p.beta_plus) *
               (branch_pow(arg, p.beta_plus) - std::pow(p.lambda_plus, p.beta_plus));
    }
    if (p.alpha_minus != 0.0) {
        const cplx arg = p.lambda_minus + i * xi;
        psi += p.alpha_minus * gamma_fn(-p.beta_minus) *
               (branch_pow(arg, p.beta_minus) - std::pow(p.lambda_minus, p.beta_minus));
    }
    return psi;
}

double mgf_exponent(const GtsParams& p, double h) {
    p.validate();
    check_beta_poles(p);
    if (!(h > -p.lambda_minus) || !(h < p.lambda_plus))
        throw DomainError("mgf: h outside (-lambda-, lambda+)");
    double psi = p.mu * h;
    if (p.alpha_plus != 0.0)
        psi += p.alpha_plus * gamma_fn(-p.beta_plus) *
               (std::pow(p.lambda_plus - h, p.beta_plus) - std::pow(p.lambda_plus, p.beta_plus));
    if (p.alpha_minus != 0.0)
        psi += p.alpha_minus * gamma_fn(-p.beta_minus) *
               (std::pow(p.lambda_minus + h, p.beta_minus) - std::pow(p.lambda_minus, p.beta_minus));
    return psi;
}

double mgf(const GtsParams& p, double h, double t) {
    if (!(t > 0.0)) throw DomainError("mgf: t must be positive");
    return std::exp(t * mgf_exponent(p, h));
}

double esscher_exponent(const GtsParams& p, double h, double z) {
    // Both evaluation points must sit inside the MGF strip.
    if (!(h > -p.lambda_minus) || !(h < p.lambda_plus) ||
        !(h + z > -p.lambda_minus) || !(h + z < p.lambda_plus))
        throw DomainError("esscher_exponent: (h, h+z) outside the MGF strip");
    return mgf_exponent(p, h + z) - mgf_exponent(p, h);
}

GtsParams esscher_shift(const GtsParams& p, double h_star) {
    p.validate();
    if (!(h_star > -p.lambda_minus) || !(h_star < p.lambda_plus))
        throw DomainError("esscher_shift: h outside (-lambda-, lambda+)");
    GtsParams out = p;
    out.lambda_plus = p.lambda_plus - h_star;
    out.lambda_minus = p.lambda_minus + h_star;
    return out;
}

EsscherSolution solve_esscher(const GtsParams& p, double rate) {
    p.validate();
    check_beta_poles(p);
    const double eps = 1e-8 * (p.lambda_plus + p.lambda_minus);
    double lo = -p.lambda_minus + eps;
    double hi = p.lambda_plus - 1.0 - eps;
    if (!(hi > lo))
        throw NoSolutionError("solve_esscher: empty admissible interval (lambda+ <= 1?)");

    auto g = [&](double h) { return esscher_exponent(p, h, 1.0) - rate; };

    double glo = g(lo);
    double ghi = g(hi);
    if (glo > 0.0 || ghi < 0.0)
        throw NoSolutionError("solve_esscher: rate outside attainable range [" +
                              std::to_string(glo + rate) + ", " + std::to_string(ghi + rate) + "]");

    // Psi_h(1) is strictly increasing, so plain bisection cannot fail.
    double mid = 0.5 * (lo + hi);
    for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(mid)); ++it) {
        mid = 0.5 * (lo + hi);
        const double gm = g(mid);
        if (gm == 0.0) break;
        if (gm < 0.0) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
            ghi = gm;
        }
    }
    // Secant polish inside the final bracket.
    double h_star = (std::abs(glo) < std::abs(ghi)) ? lo : hi;
    double a = lo, b = hi, ga = glo, gb = ghi;
    for (int it = 0; it < 4 && gb != ga; ++it) {
        const double cand = b - gb * (b - a) / (gb - ga);
        if (!(cand > lo) || !(cand < hi)) break;
        a = b;
        ga = gb;
        b = cand;
        gb = g(cand);
        h_star = b;
    }
    if (std::abs(g(h_star)) > 1e-10)
        h_star = 0.5 * (lo + hi);  // fall back to the bisection midpoint

    EsscherSolution sol;
    sol.h_star = h_star;
    sol.risk_free_rate = rate;
    sol.shifted = esscher_shift(p, h_star);
    if (!(sol.shifted.lambda_plus > 1.0))
        throw InvalidMeasureError("solve_esscher: tilted lambda+ = " +
                                  std::to_string(sol.shifted.lambda_plus) +
                                  " does not exceed 1");
    return sol;
}

double cumulant(const GtsParams& p, int n) {
    p.validate();
    if (n < 1 || n > 4) throw DomainError("cumulant: order must be in 1..4");
    if (p.beta_plus >= n || p.beta_minus >= n)
        throw DomainError("cumulant: beta must be below the requested order");
    const double nn = static_cast<double>(n);
    double plus = 0.0, minus = 0.0;
    if (p.alpha_plus != 0.0)
        plus = p.alpha_plus * gamma_fn(nn - p.beta_plus) *
               std::pow(p.lambda_plus, p.beta_plus - nn);
    if (p.alpha_minus != 0.0)
        minus = p.alpha_minus * gamma_fn(nn - p.beta_minus) *
                std::pow(p.lambda_minus, p.beta_minus - nn);
    if (n == 1) return p.mu + plus - minus;
    return (n % 2 == 0) ? plus + minus : plus - minus;
}

CumulantSet cumulants(const GtsParams& p) {
    CumulantSet c;
    for (int n = 1; n <= 4; ++n) c.kappa[n - 1] = cumulant(p, n);
    return c;
}

}  // namespace gts
