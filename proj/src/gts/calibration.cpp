#include "gts/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "gts/errors.hpp"
#include "gts/linalg.hpp"
#include "gts/process.hpp"
#include "gts/special.hpp"
#include "gts/transform.hpp"

namespace gts {

namespace {

constexpr double kDensityFloor = 1e-300;

// First and second derivatives of Psi(xi) with respect to the parameter
// vector (mu, beta+, beta-, alpha+, alpha-, lambda+, lambda-), evaluated at
// a real frequency. One tempered side contributes
//   alpha * Gamma(-beta) * ((lambda -+ i xi)^beta - lambda^beta)
// and d Gamma(-beta)/d beta = -Gamma(-beta) psi(-beta) threads the digamma
// and trigamma terms through the beta derivatives.
struct PsiDerivatives {
    cplx d1[kNumFitParams];
    cplx d2[kNumFitParams][kNumFitParams];
};

struct SideContext {
    double alpha, beta, lambda;
    double gamma_mb;    // Gamma(-beta)
    double psi_mb;      // digamma(-beta)
    double psi1_mb;     // trigamma(-beta)
    double log_lambda;
    double pow_b;       // lambda^beta
    double pow_bm1;     // lambda^(beta-1)
    double pow_bm2;     // lambda^(beta-2)
};

SideContext make_side(double alpha, double beta, double lambda) {
    SideContext s;
    s.alpha = alpha;
    s.beta = beta;
    s.lambda = lambda;
    s.gamma_mb = gamma_fn(-beta);
    s.psi_mb = digamma(-beta);
    s.psi1_mb = trigamma(-beta);
    s.log_lambda = std::log(lambda);
    s.pow_b = std::pow(lambda, beta);
    s.pow_bm1 = std::pow(lambda, beta - 1.0);
    s.pow_bm2 = std::pow(lambda, beta - 2.0);
    return s;
}

// Indices of (alpha, beta, lambda) for one side in the parameter vector.
struct SideIndex {
    int alpha, beta, lambda;
};

void add_side_derivatives(PsiDerivatives& out, const SideContext& s, const SideIndex& ix,
                          cplx u /* lambda -+ i xi */) {
    const cplx log_u = std::log(u);
    const cplx pb = std::pow(u, s.beta);
    const cplx pbm1 = std::pow(u, s.beta - 1.0);
    const cplx pbm2 = std::pow(u, s.beta - 2.0);

    const cplx g = pb - s.pow_b;                                   // (u^b - l^b)
    const cplx g1 = pb * log_u - s.pow_b * s.log_lambda;           // d g / d beta
    const cplx g2 = pb * log_u * log_u - s.pow_b * s.log_lambda * s.log_lambda;
    const cplx h = pbm1 - s.pow_bm1;                               // d g / d lambda / beta
    const cplx h1 = pbm1 * log_u - s.pow_bm1 * s.log_lambda;

    const double A = s.gamma_mb;
    const double psi = s.psi_mb;

    out.d1[ix.alpha] = A * g;
    out.d1[ix.beta] = s.alpha * A * (g1 - psi * g);
    out.d1[ix.lambda] = s.alpha * A * s.beta * h;

    // alpha-alpha vanishes; alpha-beta and alpha-lambda drop the alpha factor
    out.d2[ix.alpha][ix.beta] = A * (g1 - psi * g);
    out.d2[ix.alpha][ix.lambda] = A * s.beta * h;
    out.d2[ix.beta][ix.beta] =
        s.alpha * A * (g2 - 2.0 * psi * g1 + (psi * psi + s.psi1_mb) * g);
    out.d2[ix.beta][ix.lambda] = s.alpha * A * ((1.0 - s.beta * psi) * h + s.beta * h1);
    out.d2[ix.lambda][ix.lambda] =
        s.alpha * A * s.beta * (s.beta - 1.0) * (pbm2 - s.pow_bm2);

    out.d2[ix.beta][ix.alpha] = out.d2[ix.alpha][ix.beta];
    out.d2[ix.lambda][ix.alpha] = out.d2[ix.alpha][ix.lambda];
    out.d2[ix.lambda][ix.beta] = out.d2[ix.beta][ix.lambda];
}

PsiDerivatives psi_derivatives(const GtsParams& p, double xi,
                               const SideContext& plus, const SideContext& minus) {
    PsiDerivatives out{};
    out.d1[0] = cplx(0.0, xi);  // d Psi / d mu
    add_side_derivatives(out, plus, SideIndex{3, 1, 5}, cplx(p.lambda_plus, -xi));
    add_side_derivatives(out, minus, SideIndex{4, 2, 6}, cplx(p.lambda_minus, xi));
    return out;
}

FrftConfig data_config(const GtsParams& p, const ReturnSeries& data, std::size_t n_points,
                       double min_halfwidth = 0.0) {
    const double center = cumulant(p, 1);
    double reach = 0.0;
    for (double y : data.returns) {
        if (!std::isfinite(y)) throw NonFiniteError("calibration: non-finite observation");
        reach = std::max(reach, std::abs(y - center));
    }
    const double sigma = std::sqrt(cumulant(p, 2));
    return auto_config(p, 1.0, std::max(reach + 2.0 * sigma + 0.5, min_halfwidth), n_points);
}

// Four-point Lagrange interpolation on the uniform grid. The likelihood
// gradient is checked against finite differences at 1e-4 relative; the
// sawtooth derivative of linear interpolation is too coarse for that, so
// the calibration queries use the smoother stencil (pricing grids keep
// their monotone linear queries).
double interp4(const std::vector<double>& values, double x0, double dx, double x) {
    const double t_abs = (x - x0) / dx;
    const double top = static_cast<double>(values.size() - 1);
    if (t_abs < 0.0 || t_abs > top)
        throw OutOfRangeError("calibration: observation outside the density grid");
    std::size_t i = static_cast<std::size_t>(t_abs);
    if (i >= values.size() - 1) i = values.size() - 2;
    const double t = t_abs - static_cast<double>(i);
    if (i == 0 || i + 2 >= values.size())
        return (1.0 - t) * values[i] + t * values[i + 1];
    const double fm = values[i - 1], f0 = values[i], f1 = values[i + 1], f2 = values[i + 2];
    return -t * (t - 1.0) * (t - 2.0) / 6.0 * fm +
           (t + 1.0) * (t - 1.0) * (t - 2.0) / 2.0 * f0 -
           (t + 1.0) * t * (t - 2.0) / 2.0 * f1 +
           (t + 1.0) * t * (t - 1.0) / 6.0 * f2;
}

void check_fit_params(const GtsParams& p) {
    p.validate();
    if (!p.pricing_betas())
        throw DomainError("calibration: betas must lie strictly inside (0, 1)");
    if (!(p.alpha_plus > 0.0) || !(p.alpha_minus > 0.0) ||
        !(p.lambda_plus > 0.0) || !(p.lambda_minus > 0.0))
        throw DomainError("calibration: alphas and lambdas must be positive");
}

}  // namespace

double log_likelihood(const GtsParams& p, const ReturnSeries& data, std::size_t n_points,
                      double min_halfwidth) {
    check_fit_params(p);
    if (data.size() == 0) throw EmptySeriesError("log_likelihood: empty series");
    const FrftConfig cfg = data_config(p, data, n_points, min_halfwidth);
    const TransformGrid grid = density_grid(p, 1.0, cfg);
    double sum = 0.0;
    for (double y : data.returns)
        sum += std::log(std::max(interp4(grid.values, grid.x0, grid.dx, y), kDensityFloor));
    return sum;
}

ScoreResult score_and_hessian(const GtsParams& p, const ReturnSeries& data,
                              std::size_t n_points) {
    check_fit_params(p);
    if (data.size() == 0) throw EmptySeriesError("score_and_hessian: empty series");

    const FrftConfig cfg = data_config(p, data, n_points);
    const std::size_t n = cfg.n_points;
    const double half = static_cast<double>(n) / 2.0;
    const double center = cumulant(p, 1);
    const double x0 = center - cfg.space_step * half;

    const SideContext plus = make_side(p.alpha_plus, p.beta_plus, p.lambda_plus);
    const SideContext minus = make_side(p.alpha_minus, p.beta_minus, p.lambda_minus);

    // Frequency samples of the characteristic function and the integrands
    // of every parameter derivative: F[df/dV] = F[f] * dPsi/dV and
    // F[d2f/dVdW] = F[f] * (d2Psi + dPsi dPsi).
    std::vector<cplx> base(n);
    std::vector<std::vector<cplx>> first(kNumFitParams, std::vector<cplx>(n));
    std::vector<std::vector<cplx>> second;
    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < kNumFitParams; ++a)
        for (int b = a; b < kNumFitParams; ++b) pairs.emplace_back(a, b);
    second.assign(pairs.size(), std::vector<cplx>(n));

    for (std::size_t j = 0; j < n; ++j) {
        const double zj = (static_cast<double>(j) - half) * cfg.freq_step;
        const double xi = -zj;  // integrand is exp(Psi(-z))
        const cplx phi = std::exp(characteristic_exponent(p, cplx(xi, 0.0)));
        base[j] = phi;
        const PsiDerivatives d = psi_derivatives(p, xi, plus, minus);
        for (int a = 0; a < kNumFitParams; ++a) first[static_cast<std::size_t>(a)][j] = phi * d.d1[a];
        for (std::size_t q = 0; q < pairs.size(); ++q) {
            const auto [a, b] = pairs[q];
            second[q][j] = phi * (d.d2[a][b] + d.d1[a] * d.d1[b]);
        }
    }
    if (std::abs(base.front()) > 1e-12 || std::abs(base.back()) > 1e-12)
        throw TruncationError("score_and_hessian: characteristic function not decayed at edge");

    auto invert = [&](std::vector<cplx> samples) {
        samples.front() *= 0.5;
        samples.back() *= 0.5;
        return invert_spectrum(std::move(samples), cfg, x0);
    };

    const std::vector<double> f = invert(base);
    std::vector<std::vector<double>> f1;
    f1.reserve(kNumFitParams);
    for (auto& s : first) f1.push_back(invert(std::move(s)));
    std::vector<std::vector<double>> f2;
    f2.reserve(pairs.size());
    for (auto& s : second) f2.push_back(invert(std::move(s)));

    ScoreResult result;
    double log_ml = 0.0;
    std::array<double, kNumFitParams> grad{};
    std::array<double, kNumFitParams * kNumFitParams> hess{};
    for (double y : data.returns) {
        const double fy = std::max(interp4(f, x0, cfg.space_step, y), kDensityFloor);
        log_ml += std::log(fy);
        std::array<double, kNumFitParams> fy1{};
        for (int a = 0; a < kNumFitParams; ++a)
            fy1[static_cast<std::size_t>(a)] =
                interp4(f1[static_cast<std::size_t>(a)], x0, cfg.space_step, y);
        for (int a = 0; a < kNumFitParams; ++a)
            grad[static_cast<std::size_t>(a)] += fy1[static_cast<std::size_t>(a)] / fy;
        for (std::size_t q = 0; q < pairs.size(); ++q) {
            const auto [a, b] = pairs[q];
            const double fy2 = interp4(f2[q], x0, cfg.space_step, y);
            const double term = fy2 / fy - fy1[static_cast<std::size_t>(a)] *
                                               fy1[static_cast<std::size_t>(b)] / (fy * fy);
            hess[static_cast<std::size_t>(a * kNumFitParams + b)] += term;
            if (a != b) hess[static_cast<std::size_t>(b * kNumFitParams + a)] += term;
        }
    }
    if (!std::isfinite(log_ml)) throw NonFiniteError("score_and_hessian: non-finite log ML");

    result.log_ml = log_ml;
    result.gradient = grad;
    result.hessian = hess;
    const std::vector<double> eig = symmetric_eigenvalues(
        std::vector<double>(hess.begin(), hess.end()), kNumFitParams);
    result.max_eigen = eig.back();
    return result;
}

namespace {

std::array<double, kNumFitParams> pack(const GtsParams& p) {
    return {p.mu,          p.beta_plus,   p.beta_minus, p.alpha_plus,
            p.alpha_minus, p.lambda_plus, p.lambda_minus};
}

GtsParams unpack(const std::array<double, kNumFitParams>& v, Unit unit) {
    GtsParams p;
    p.mu = v[0];
    p.beta_plus = v[1];
    p.beta_minus = v[2];
    p.alpha_plus = v[3];
    p.alpha_minus = v[4];
    p.lambda_plus = v[5];
    p.lambda_minus = v[6];
    p.unit = unit;
    return p;
}

// Keep the iterate inside the admissible open box.
std::array<double, kNumFitParams> project(std::array<double, kNumFitParams> v) {
    constexpr double beta_eps = 1e-4;
    v[1] = std::clamp(v[1], beta_eps, 1.0 - beta_eps);
    v[2] = std::clamp(v[2], beta_eps, 1.0 - beta_eps);
    for (int i : {3, 4}) v[static_cast<std::size_t>(i)] = std::max(v[static_cast<std::size_t>(i)], 1e-8);
    for (int i : {5, 6}) v[static_cast<std::size_t>(i)] = std::max(v[static_cast<std::size_t>(i)], 1e-6);
    return v;
}

double norm2(const std::array<double, kNumFitParams>& g) {
    double s = 0.0;
    for (double x : g) s += x * x;
    return std::sqrt(s);
}

}  // namespace

std::vector<FitState> fit(const ReturnSeries& data, const GtsParams& init,
                          const FitOptions& options) {
    if (data.size() == 0) throw EmptySeriesError("fit: empty series");
    const Unit unit = init.unit;
    auto v = project(pack(init));
    GtsParams current = unpack(v, unit);
    check_fit_params(current);

    ScoreResult score = score_and_hessian(current, data, options.n_points);
    if (!std::isfinite(score.log_ml))
        throw NonFiniteError("fit: log ML not finite at the starting point");

    std::vector<FitState> trajectory;
    trajectory.push_back({current, score.log_ml, norm2(score.gradient), score.max_eigen, 0});

    for (int iter = 1; iter <= options.max_iter; ++iter) {
        if (norm2(score.gradient) < options.tol) break;

        // Newton step when the Hessian certifies a local maximum. Away from
        // the concave basin the diagonal is shifted past the largest
        // eigenvalue, which keeps the solve negative definite and the step
        // an ascent direction (plain gradient ascent zigzags in the curved
        // valleys of this likelihood and stalls).
        std::array<double, kNumFitParams> direction{};
        bool have_newton = false;
        {
            std::vector<double> h(score.hessian.begin(), score.hessian.end());
            if (score.max_eigen >= 0.0) {
                const double shift =
                    score.max_eigen + std::max(0.1 * std::abs(score.max_eigen), 1e-2);
                for (int i = 0; i < kNumFitParams; ++i)
                    h[static_cast<std::size_t>(i * kNumFitParams + i)] -= shift;
            }
            std::vector<double> rhs(score.gradient.begin(), score.gradient.end());
            for (double& r : rhs) r = -r;
            std::vector<double> step;
            if (solve_dense(std::move(h), std::move(rhs), kNumFitParams, step)) {
                double ascent = 0.0;
                for (int i = 0; i < kNumFitParams; ++i)
                    ascent += step[static_cast<std::size_t>(i)] * score.gradient[static_cast<std::size_t>(i)];
                if (ascent > 0.0) {
                    for (int i = 0; i < kNumFitParams; ++i)
                        direction[static_cast<std::size_t>(i)] = step[static_cast<std::size_t>(i)];
                    have_newton = true;
                }
            }
        }
        if (!have_newton) {
            const double scale = std::max(1.0, norm2(score.gradient));
            for (int i = 0; i < kNumFitParams; ++i)
                direction[static_cast<std::size_t>(i)] = score.gradient[static_cast<std::size_t>(i)] / scale;
        }

        // Backtracking: halve until the log likelihood strictly increases.
        double t = 1.0;
        bool accepted = false;
        std::array<double, kNumFitParams> candidate{};
        for (int halving = 0; halving < 48; ++halving, t *= 0.5) {
            auto trial = v;
            for (int i = 0; i < kNumFitParams; ++i)
                trial[static_cast<std::size_t>(i)] += t * direction[static_cast<std::size_t>(i)];
            trial = project(trial);
            double ll;
            try {
                ll = log_likelihood(unpack(trial, unit), data, options.n_points);
            } catch (const std::exception&) {
                continue;
            }
            if (std::isfinite(ll) && ll > score.log_ml) {
                candidate = trial;
                accepted = true;
                break;
            }
        }
        if (!accepted) break;  // no ascent available; report the last good state

        v = candidate;
        current = unpack(v, unit);
        score = score_and_hessian(current, data, options.n_points);
        if (!std::isfinite(score.log_ml)) throw NonFiniteError("fit: log ML became non-finite");
        trajectory.push_back({current, score.log_ml, norm2(score.gradient), score.max_eigen, iter});
    }
    return trajectory;
}

GtsParams default_init(const ReturnSeries& data) {
    const SummaryStats stats = summary(data, 360.0);
    const double variance = std::max(stats.variance, 1e-8);
    const double kurt = std::max(stats.excess_kurtosis, 0.1);
    const double kappa4 = kurt * variance * variance;
    // Symmetric split with beta = 1/2: kappa2 = 2 a G(3/2) l^{-3/2},
    // kappa4 = 2 a G(7/2) l^{-7/2}, so l = sqrt(G(7/2)/G(3/2) * k2/k4).
    const double ratio = gamma_fn(3.5) / gamma_fn(1.5);
    double lambda = std::sqrt(ratio * variance / kappa4);
    lambda = std::clamp(lambda, 1e-3, 1e3);
    double alpha = variance * std::pow(lambda, 1.5) / (2.0 * gamma_fn(1.5));
    alpha = std::clamp(alpha, 1e-6, 1e3);

    GtsParams p;
    p.mu = stats.mean;
    p.beta_plus = 0.5;
    p.beta_minus = 0.5;
    p.alpha_plus = alpha;
    p.alpha_minus = alpha;
    p.lambda_plus = lambda;
    p.lambda_minus = lambda;
    p.unit = Unit::PercentDaily;
    return p;
}

}  // namespace gts
