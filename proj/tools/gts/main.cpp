// Command line front end for the gtspricer shared library: fit parameters,
// risk-neutralize, price the option table, and emit plot-ready CSV data.
// Everything goes through the public C interface.

#include <gtspricer.h>

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace {

// Table of fitted S&P 500 parameters bundled as the default input
// (percent log-return per trading day).
constexpr double kDefaultParams[7] = {-0.693477, 0.682290, 0.242579, 0.458582,
                                      0.414443,  0.822222, 0.727607};

struct RunConfig {
    double rate = 0.06;
    double spot = 4437.86;
    double sigma_star = 0.0;      // <= 0: derive from the fitted variance
    double days_per_year = 360.0; // reproduces h* = -2.4448 and sigma* = 0.2077
    double q = -3.0;
    double contour_b = 20.0;
    long contour_n = 60000;
    bool auto_extend = true;
    long n_points = 1 << 14;
    std::vector<double> k_grid;   // default: 0.55 .. 1.65 step 0.05
    std::vector<double> taus{0.25, 0.5, 0.75, 1.0};
    std::string params_path;
    std::string data_path;
    std::string out_path;
    std::string out_dir = ".";
    std::string date_col = "Date";
    std::string close_col = "Adj Close";
    double tol = 1e-3;
    long max_iter = 200;
    // payoff reconstruction error sampling
    double er_halfwidth = 4.0;
    int er_m = 801;
    long er_n = 3600;
    double q_lo = -6.0;
    double q_hi = -1.02;
};

std::vector<double> default_k_grid() {
    std::vector<double> ks;
    for (int i = 0; i <= 22; ++i) ks.push_back(0.55 + 0.05 * i);
    return ks;
}

[[noreturn]] void fail(const std::string& message, int code = 2) {
    std::fprintf(stderr, "error: %s\n", message.c_str());
    std::exit(code);
}

void check(int rc, const std::string& context) {
    if (rc != GTS_OK)
        fail(context + ": " + gts_status_name(rc) + ": " + gts_last_error());
}

std::string fmt(double v, const char* spec = "%.17g") {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

std::vector<double> parse_list(const std::string& text) {
    // "a,b,c" or "lo:hi:step"
    std::vector<double> values;
    if (text.find(':') != std::string::npos) {
        double lo = 0, hi = 0, step = 0;
        if (std::sscanf(text.c_str(), "%lf:%lf:%lf", &lo, &hi, &step) != 3 || step <= 0)
            throw std::runtime_error("bad grid spec '" + text + "' (want lo:hi:step)");
        for (double v = lo; v <= hi + 1e-12; v += step) values.push_back(v);
        return values;
    }
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item.empty()) continue;
        values.push_back(std::stod(item));
    }
    return values;
}

std::map<std::string, std::string> read_kv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!key.empty()) kv[key] = value;
    }
    return kv;
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
    const auto kv = read_kv_file(path);
    auto get = [&](const char* key) -> const std::string* {
        auto it = kv.find(key);
        return it == kv.end() ? nullptr : &it->second;
    };
    if (auto* v = get("rate")) cfg.rate = std::stod(*v);
    if (auto* v = get("spot")) cfg.spot = std::stod(*v);
    if (auto* v = get("sigma_star")) cfg.sigma_star = std::stod(*v);
    if (auto* v = get("days_per_year")) cfg.days_per_year = std::stod(*v);
    if (auto* v = get("q")) cfg.q = std::stod(*v);
    if (auto* v = get("contour_b")) cfg.contour_b = std::stod(*v);
    if (auto* v = get("contour_n")) cfg.contour_n = std::stol(*v);
    if (auto* v = get("auto_extend")) cfg.auto_extend = std::stoi(*v) != 0;
    if (auto* v = get("n_points")) cfg.n_points = std::stol(*v);
    if (auto* v = get("k_grid")) cfg.k_grid = parse_list(*v);
    if (auto* v = get("taus")) cfg.taus = parse_list(*v);
    if (auto* v = get("params")) cfg.params_path = *v;
    if (auto* v = get("data")) cfg.data_path = *v;
    if (auto* v = get("out")) cfg.out_path = *v;
    if (auto* v = get("out_dir")) cfg.out_dir = *v;
    if (auto* v = get("date_col")) cfg.date_col = *v;
    if (auto* v = get("close_col")) cfg.close_col = *v;
    if (auto* v = get("tol")) cfg.tol = std::stod(*v);
    if (auto* v = get("max_iter")) cfg.max_iter = std::stol(*v);
    if (auto* v = get("er_halfwidth")) cfg.er_halfwidth = std::stod(*v);
    if (auto* v = get("er_m")) cfg.er_m = std::stoi(*v);
    if (auto* v = get("er_n")) cfg.er_n = std::stol(*v);
    if (auto* v = get("q_lo")) cfg.q_lo = std::stod(*v);
    if (auto* v = get("q_hi")) cfg.q_hi = std::stod(*v);
}

// The resolved configuration in the same key = value format --config reads,
// so any run can be reproduced from its emitted file.
void write_effective_config(const RunConfig& cfg, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << "rate = " << fmt(cfg.rate) << "\n";
    out << "spot = " << fmt(cfg.spot) << "\n";
    out << "sigma_star = " << fmt(cfg.sigma_star) << "\n";
    out << "days_per_year = " << fmt(cfg.days_per_year) << "\n";
    out << "q = " << fmt(cfg.q) << "\n";
    out << "contour_b = " << fmt(cfg.contour_b) << "\n";
    out << "contour_n = " << cfg.contour_n << "\n";
    out << "auto_extend = " << (cfg.auto_extend ? 1 : 0) << "\n";
    out << "n_points = " << cfg.n_points << "\n";
    out << "k_grid = ";
    for (std::size_t i = 0; i < cfg.k_grid.size(); ++i)
        out << (i ? "," : "") << fmt(cfg.k_grid[i]);
    out << "\ntaus = ";
    for (std::size_t i = 0; i < cfg.taus.size(); ++i) out << (i ? "," : "") << fmt(cfg.taus[i]);
    out << "\n";
    if (!cfg.params_path.empty()) out << "params = " << cfg.params_path << "\n";
    if (!cfg.data_path.empty()) out << "data = " << cfg.data_path << "\n";
    if (!cfg.out_path.empty()) out << "out = " << cfg.out_path << "\n";
    out << "out_dir = " << cfg.out_dir << "\n";
    out << "date_col = " << cfg.date_col << "\n";
    out << "close_col = " << cfg.close_col << "\n";
    out << "tol = " << fmt(cfg.tol) << "\n";
    out << "max_iter = " << cfg.max_iter << "\n";
    out << "er_halfwidth = " << fmt(cfg.er_halfwidth) << "\n";
    out << "er_m = " << cfg.er_m << "\n";
    out << "er_n = " << cfg.er_n << "\n";
    out << "q_lo = " << fmt(cfg.q_lo) << "\n";
    out << "q_hi = " << fmt(cfg.q_hi) << "\n";
}

struct ParamsDeleter {
    void operator()(gts_params* p) const { gts_params_free(p); }
};
using ParamsPtr = std::unique_ptr<gts_params, ParamsDeleter>;

ParamsPtr load_params(const RunConfig& cfg) {
    double f[7];
    std::copy(std::begin(kDefaultParams), std::end(kDefaultParams), f);
    int unit = GTS_UNIT_PERCENT_DAILY;
    if (!cfg.params_path.empty()) {
        const auto kv = read_kv_file(cfg.params_path);
        const char* names[7] = {"mu",          "beta_plus",   "beta_minus", "alpha_plus",
                                "alpha_minus", "lambda_plus", "lambda_minus"};
        for (int i = 0; i < 7; ++i) {
            auto it = kv.find(names[i]);
            if (it == kv.end())
                throw std::runtime_error("params file lacks '" + std::string(names[i]) + "'");
            f[i] = std::stod(it->second);
        }
        if (auto it = kv.find("unit"); it != kv.end()) {
            if (it->second == "percent_daily") unit = GTS_UNIT_PERCENT_DAILY;
            else if (it->second == "decimal_annual") unit = GTS_UNIT_DECIMAL_ANNUAL;
            else throw std::runtime_error("unknown unit '" + it->second + "'");
        }
    }
    gts_params* raw = nullptr;
    check(gts_params_create(f[0], f[1], f[2], f[3], f[4], f[5], f[6], unit, &raw),
          "params");
    return ParamsPtr(raw);
}

// Annualized parameters regardless of the input unit.
ParamsPtr annual_params(const RunConfig& cfg) {
    ParamsPtr p = load_params(cfg);
    int unit = 0;
    double f[7];
    check(gts_params_get(p.get(), f, &unit), "params");
    if (unit == GTS_UNIT_DECIMAL_ANNUAL) return p;
    gts_params* annual = nullptr;
    check(gts_params_to_annual(p.get(), cfg.days_per_year, &annual), "rescale");
    return ParamsPtr(annual);
}

void write_params_file(const std::string& path, const double f[7], const char* unit) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    const char* names[7] = {"mu",          "beta_plus",   "beta_minus", "alpha_plus",
                            "alpha_minus", "lambda_plus", "lambda_minus"};
    for (int i = 0; i < 7; ++i) out << names[i] << " = " << fmt(f[i]) << "\n";
    out << "unit = " << unit << "\n";
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) fail("cannot write '" + path + "'");
    return out;
}

struct EsscherDeleter {
    void operator()(gts_esscher* e) const { gts_esscher_free(e); }
};
struct PricerDeleter {
    void operator()(gts_pricer* p) const { gts_pricer_free(p); }
};

using EsscherPtr = std::unique_ptr<gts_esscher, EsscherDeleter>;
using PricerPtr = std::unique_ptr<gts_pricer, PricerDeleter>;

EsscherPtr solve_esscher(const RunConfig& cfg, const ParamsPtr& annual) {
    gts_esscher* e = nullptr;
    check(gts_esscher_solve(annual.get(), cfg.rate, &e), "esscher solve");
    return EsscherPtr(e);
}

PricerPtr make_pricer(const RunConfig& cfg, const EsscherPtr& esscher) {
    gts_pricer_options options;
    gts_pricer_options_init(&options);
    options.sigma_star = cfg.sigma_star;
    options.contour_q = cfg.q;
    options.contour_b = cfg.contour_b;
    options.contour_n = cfg.contour_n;
    options.auto_extend = cfg.auto_extend ? 1 : 0;
    options.frft_n_points = cfg.n_points;
    gts_pricer* p = nullptr;
    check(gts_pricer_create(esscher.get(), cfg.spot, cfg.rate, &options, &p), "pricer");
    return PricerPtr(p);
}

int cmd_esscher(const RunConfig& cfg) {
    ParamsPtr annual = annual_params(cfg);
    EsscherPtr esscher = solve_esscher(cfg, annual);
    double h_star = 0, rate = 0;
    check(gts_esscher_get(esscher.get(), &h_star, &rate), "esscher");
    gts_params* shifted_raw = nullptr;
    check(gts_esscher_shifted_params(esscher.get(), &shifted_raw), "esscher");
    ParamsPtr shifted(shifted_raw);
    double f[7];
    check(gts_params_get(shifted.get(), f, nullptr), "esscher");
    std::printf("h_star = %.6f\n", h_star);
    std::printf("lambda_plus_tilde = %.6f\nlambda_minus_tilde = %.6f\n", f[5], f[6]);

    double fa[7];
    check(gts_params_get(annual.get(), fa, nullptr), "esscher");
    const double lo = -fa[6], hi = fa[5] - 1.0;
    const double margin = 1e-3 * (fa[5] + fa[6]);

    // Martingale-equation sweep: Psi_h(1) over the admissible interval.
    auto psi_csv = open_out(cfg.out_dir + "/psi_h1.csv");
    psi_csv << "h,psi_h_1\n";
    const int n_sweep = 400;
    for (int i = 0; i <= n_sweep; ++i) {
        const double h = lo + margin + (hi - lo - 2 * margin) * i / double(n_sweep);
        double value = 0;
        if (gts_esscher_exponent(annual.get(), h, 1.0, &value) == GTS_OK)
            psi_csv << fmt(h) << ',' << fmt(value) << '\n';
    }

    // Solution as a function of the risk-free rate.
    auto hr_csv = open_out(cfg.out_dir + "/hstar_vs_rate.csv");
    hr_csv << "rate,h_star\n";
    for (int i = 0; i <= 40; ++i) {
        const double r = 0.0 + 0.10 * i / 40.0;
        gts_esscher* e = nullptr;
        if (gts_esscher_solve(annual.get(), r, &e) == GTS_OK) {
            double h = 0;
            gts_esscher_get(e, &h, nullptr);
            hr_csv << fmt(r) << ',' << fmt(h) << '\n';
            gts_esscher_free(e);
        }
    }
    std::printf("wrote %s/psi_h1.csv and %s/hstar_vs_rate.csv\n", cfg.out_dir.c_str(),
                cfg.out_dir.c_str());
    return 0;
}

int cmd_price(const RunConfig& cfg, double single_k, double single_tau,
              const std::string& engine_name) {
    ParamsPtr annual = annual_params(cfg);
    EsscherPtr esscher = solve_esscher(cfg, annual);
    PricerPtr pricer = make_pricer(cfg, esscher);
    double sigma_star = 0;
    check(gts_pricer_sigma_star(pricer.get(), &sigma_star), "pricer");

    if (single_k > 0.0 || single_tau > 0.0) {
        if (!(single_k > 0.0) || !(single_tau > 0.0))
            fail("single-quote mode needs both --k and --tau", 1);
        const double strike = cfg.spot / single_k;
        auto quote = [&](int engine, const char* label) {
            double value = 0;
            check(gts_pricer_price(pricer.get(), engine, strike, single_tau, &value),
                  std::string("price ") + label);
            std::printf("%s = %.6f\n", label, value);
        };
        if (engine_name == "bs" || engine_name == "all") quote(GTS_ENGINE_BLACK_SCHOLES, "bsm");
        if (engine_name == "extended" || engine_name == "all")
            quote(GTS_ENGINE_EXTENDED, "gts_extended");
        if (engine_name == "generalized" || engine_name == "all")
            quote(GTS_ENGINE_GENERALIZED, "gts_generalized");
        return 0;
    }

    if (cfg.k_grid.empty() || cfg.taus.empty()) fail("price table needs nonempty grids", 1);

    // A failing cell is reported and left as NaN; the rest of the table
    // still comes out.
    int failed_cells = 0;
    auto cell_price = [&](int engine, const char* label, double strike, double k, double tau) {
        double v = 0;
        const int rc = gts_pricer_price(pricer.get(), engine, strike, tau, &v);
        if (rc != GTS_OK) {
            ++failed_cells;
            std::fprintf(stderr, "warning: %s cell k=%s tau=%s: %s: %s\n", label,
                         fmt(k, "%g").c_str(), fmt(tau, "%g").c_str(), gts_status_name(rc),
                         gts_last_error());
            return std::nan("");
        }
        return v;
    };

    struct Row {
        double k, strike;
        std::vector<double> bs, ext, gen;
    };
    std::vector<Row> rows;
    for (double k : cfg.k_grid) {
        Row row;
        row.k = k;
        row.strike = cfg.spot / k;
        for (double tau : cfg.taus) {
            row.bs.push_back(cell_price(GTS_ENGINE_BLACK_SCHOLES, "bsm", row.strike, k, tau));
            row.gen.push_back(
                cell_price(GTS_ENGINE_GENERALIZED, "generalized", row.strike, k, tau));
            row.ext.push_back(cell_price(GTS_ENGINE_EXTENDED, "extended", row.strike, k, tau));
        }
        rows.push_back(std::move(row));
    }

    // Report: two-decimal table, strikes descending in k like the reference
    // layout; full-precision long form goes to the sidecar.
    const std::string out_path = cfg.out_path.empty() ? "price_table.csv" : cfg.out_path;
    auto report = open_out(out_path);
    report << "strike,k";
    for (double tau : cfg.taus)
        report << ",bsm_" << fmt(tau, "%g") << ",gts21_" << fmt(tau, "%g") << ",gts16_"
               << fmt(tau, "%g");
    report << '\n';
    for (auto it = rows.rbegin(); it != rows.rend(); ++it) {
        report << fmt(it->strike, "%.2f") << ',' << fmt(it->k, "%.2f");
        for (std::size_t t = 0; t < cfg.taus.size(); ++t)
            report << ',' << fmt(it->bs[t], "%.2f") << ',' << fmt(it->gen[t], "%.2f") << ','
                   << fmt(it->ext[t], "%.2f");
        report << '\n';
    }

    std::string sidecar = out_path;
    const auto dot = sidecar.rfind(".csv");
    sidecar = (dot == std::string::npos ? sidecar : sidecar.substr(0, dot)) + "_full.csv";
    auto full = open_out(sidecar);
    full << "k,tau,bsm,gts_extended,gts_generalized,error\n";
    for (const auto& row : rows)
        for (std::size_t t = 0; t < cfg.taus.size(); ++t)
            full << fmt(row.k) << ',' << fmt(cfg.taus[t]) << ',' << fmt(row.bs[t]) << ','
                 << fmt(row.ext[t]) << ',' << fmt(row.gen[t]) << ','
                 << fmt(row.ext[t] - row.bs[t]) << '\n';

    std::printf("sigma_star = %.8f\n", sigma_star);
    std::printf("wrote %s (report, 2 decimals) and %s (full precision)\n", out_path.c_str(),
                sidecar.c_str());
    if (failed_cells > 0) {
        std::fprintf(stderr, "warning: %d cell(s) failed and were written as nan\n",
                     failed_cells);
        return 3;
    }
    return 0;
}

int cmd_surface(const RunConfig& cfg) {
    if (cfg.k_grid.empty() || cfg.taus.empty()) fail("surface needs nonempty grids", 1);
    ParamsPtr annual = annual_params(cfg);
    EsscherPtr esscher = solve_esscher(cfg, annual);
    PricerPtr pricer = make_pricer(cfg, esscher);

    const std::string out_path = cfg.out_path.empty() ? "error_surface.csv" : cfg.out_path;
    auto out = open_out(out_path);
    out << "k,tau,error\n";
    for (double k : cfg.k_grid) {
        const double strike = cfg.spot / k;
        for (double tau : cfg.taus) {
            double ext = 0, bs = 0;
            check(gts_pricer_price(pricer.get(), GTS_ENGINE_EXTENDED, strike, tau, &ext),
                  "surface cell k=" + fmt(k, "%g") + " tau=" + fmt(tau, "%g"));
            check(gts_pricer_price(pricer.get(), GTS_ENGINE_BLACK_SCHOLES, strike, tau, &bs),
                  "surface cell k=" + fmt(k, "%g") + " tau=" + fmt(tau, "%g"));
            out << fmt(k) << ',' << fmt(tau) << ',' << fmt(ext - bs) << '\n';
        }
    }
    std::printf("wrote %s\n", out_path.c_str());
    return 0;
}

int cmd_qcalib(const RunConfig& cfg) {
    if (cfg.k_grid.empty()) fail("qcalib needs a nonempty moneyness grid", 1);

    auto out = open_out(cfg.out_dir + "/qcalib.csv");
    out << "k,q_opt,er_min\n";
    double first_q = 0;
    for (double k : cfg.k_grid) {
        double q_opt = 0, er_min = 0;
        check(gts_optimal_q(k, cfg.q_lo, cfg.q_hi, cfg.contour_b, cfg.er_n, cfg.er_halfwidth,
                            cfg.er_m, &q_opt, &er_min),
              "optimal_q k=" + fmt(k, "%g"));
        if (first_q == 0) first_q = q_opt;
        out << fmt(k) << ',' << fmt(q_opt) << ',' << fmt(er_min) << '\n';
    }

    // Reconstruction samples at the ends and middle of the grid, at the
    // optimum and at the reference poor choice q = -2.
    std::vector<double> sample_ks{cfg.k_grid.front(), cfg.k_grid[cfg.k_grid.size() / 2],
                                  cfg.k_grid.back()};
    for (double k : sample_ks) {
        double q_opt = 0, er = 0;
        check(gts_optimal_q(k, cfg.q_lo, cfg.q_hi, cfg.contour_b, cfg.er_n, cfg.er_halfwidth,
                            cfg.er_m, &q_opt, &er),
              "optimal_q");
        std::ostringstream name;
        name << cfg.out_dir << "/payoff_recon_k" << fmt(k, "%g") << ".csv";
        auto recon = open_out(name.str());
        recon << "x,payoff,recon_qopt,recon_qm2\n";
        for (int i = 0; i <= 200; ++i) {
            const double x = -cfg.er_halfwidth + 2.0 * cfg.er_halfwidth * i / 200.0;
            double at_opt = 0, at_m2 = 0;
            check(gts_payoff_inverse_fourier(x, k, q_opt, cfg.contour_b, cfg.er_n, &at_opt),
                  "payoff recon");
            check(gts_payoff_inverse_fourier(x, k, -2.0, cfg.contour_b, cfg.er_n, &at_m2),
                  "payoff recon");
            recon << fmt(x) << ',' << fmt(std::max(std::exp(x) - k, 0.0)) << ',' << fmt(at_opt)
                  << ',' << fmt(at_m2) << '\n';
        }
    }
    std::printf("wrote %s/qcalib.csv and payoff reconstruction samples\n", cfg.out_dir.c_str());
    return 0;
}

int cmd_density(const RunConfig& cfg) {
    ParamsPtr annual = annual_params(cfg);
    EsscherPtr esscher = solve_esscher(cfg, annual);
    gts_params* shifted_raw = nullptr;
    check(gts_esscher_shifted_params(esscher.get(), &shifted_raw), "density");
    ParamsPtr shifted(shifted_raw);
    gts_params* plus_one_raw = nullptr;
    check(gts_params_esscher_shift(shifted.get(), 1.0, &plus_one_raw), "density");
    ParamsPtr plus_one(plus_one_raw);

    const std::string out_path = cfg.out_path.empty() ? "density.csv" : cfg.out_path;
    auto out = open_out(out_path);
    out << "tau,x,density_h,density_h1,cdf_h,cdf_h1\n";
    for (double tau : cfg.taus) {
        gts_grid *d0 = nullptr, *d1 = nullptr, *c0 = nullptr, *c1 = nullptr;
        check(gts_grid_create(shifted.get(), tau, GTS_GRID_DENSITY, cfg.n_points, &d0), "density");
        check(gts_grid_create(plus_one.get(), tau, GTS_GRID_DENSITY, cfg.n_points, &d1), "density");
        check(gts_grid_create(shifted.get(), tau, GTS_GRID_CDF, cfg.n_points, &c0), "density");
        check(gts_grid_create(plus_one.get(), tau, GTS_GRID_CDF, cfg.n_points, &c1), "density");
        long n = 0;
        gts_grid_size(d0, &n);
        for (long i = 0; i < n; i += 8) {
            double x = 0, f0 = 0;
            check(gts_grid_point(d0, i, &x, &f0), "density");
            double f1 = 0, F0 = 0, F1 = 0;
            if (gts_grid_query(d1, x, &f1) != GTS_OK) continue;  // beyond the other grid
            check(gts_grid_query(c0, x, &F0), "density");
            if (gts_grid_query(c1, x, &F1) != GTS_OK) continue;
            out << fmt(tau, "%g") << ',' << fmt(x) << ',' << fmt(f0) << ',' << fmt(f1) << ','
                << fmt(F0) << ',' << fmt(F1) << '\n';
        }
        gts_grid_free(d0);
        gts_grid_free(d1);
        gts_grid_free(c0);
        gts_grid_free(c1);
    }
    std::printf("wrote %s\n", out_path.c_str());
    return 0;
}

int cmd_fit(const RunConfig& cfg, const std::string& returns_out) {
    if (cfg.data_path.empty()) fail("fit needs --data PRICES.csv", 1);
    gts_returns* returns_raw = nullptr;
    check(gts_returns_load_prices_csv(cfg.data_path.c_str(), cfg.date_col.c_str(),
                                      cfg.close_col.c_str(), &returns_raw),
          "load data");
    std::unique_ptr<gts_returns, decltype(&gts_returns_free)> returns(returns_raw,
                                                                      gts_returns_free);
    if (!returns_out.empty()) {
        check(gts_returns_write_csv(returns.get(), returns_out.c_str()), "write returns");
        std::printf("wrote %s\n", returns_out.c_str());
    }
    long n = 0, dropped = 0;
    gts_returns_size(returns.get(), &n);
    gts_returns_dropped_rows(returns.get(), &dropped);
    gts_summary_stats stats;
    check(gts_returns_summary(returns.get(), cfg.days_per_year, &stats), "summary");
    std::printf("observations = %ld (dropped %ld)  mean %.5f  var %.5f  skew %.4f  exkurt %.4f\n",
                n, dropped, stats.mean, stats.variance, stats.skewness, stats.excess_kurtosis);
    std::printf("annualized_vol = %.6f\n", stats.annualized_vol);

    ParamsPtr init;
    if (!cfg.params_path.empty()) init = load_params(cfg);

    gts_fit_result* fit_raw = nullptr;
    check(gts_fit(returns.get(), init.get(), cfg.tol, cfg.max_iter, &fit_raw), "fit");
    std::unique_ptr<gts_fit_result, decltype(&gts_fit_result_free)> result(fit_raw,
                                                                           gts_fit_result_free);
    long steps = 0;
    gts_fit_result_size(result.get(), &steps);

    const std::string out_path = cfg.out_path.empty() ? "fit_trajectory.csv" : cfg.out_path;
    auto out = open_out(out_path);
    out << "iteration,mu,beta_plus,beta_minus,alpha_plus,alpha_minus,lambda_plus,lambda_minus,"
           "log_ml,grad_norm,max_eigen\n";
    gts_fit_row row;
    for (long i = 0; i < steps; ++i) {
        check(gts_fit_result_row(result.get(), i, &row), "fit row");
        out << row.iteration << ',' << fmt(row.mu) << ',' << fmt(row.beta_plus) << ','
            << fmt(row.beta_minus) << ',' << fmt(row.alpha_plus) << ',' << fmt(row.alpha_minus)
            << ',' << fmt(row.lambda_plus) << ',' << fmt(row.lambda_minus) << ','
            << fmt(row.log_ml) << ',' << fmt(row.grad_norm) << ',' << fmt(row.max_eigen) << '\n';
    }
    check(gts_fit_result_row(result.get(), steps - 1, &row), "fit row");
    std::printf("final: iter=%ld log_ml=%.4f grad_norm=%.6f max_eigen=%.4f\n", row.iteration,
                row.log_ml, row.grad_norm, row.max_eigen);
    if (row.grad_norm >= cfg.tol)
        std::fprintf(stderr,
                     "warning: fit stopped before grad_norm fell below %g; "
                     "the trajectory holds the best state reached\n",
                     cfg.tol);
    std::printf("params: mu=%.6f b+=%.6f b-=%.6f a+=%.6f a-=%.6f l+=%.6f l-=%.6f\n", row.mu,
                row.beta_plus, row.beta_minus, row.alpha_plus, row.alpha_minus, row.lambda_plus,
                row.lambda_minus);

    gts_params* fitted_raw = nullptr;
    check(gts_fit_result_params(result.get(), &fitted_raw), "fit params");
    ParamsPtr fitted(fitted_raw);
    double f[7];
    gts_params_get(fitted.get(), f, nullptr);
    const std::string params_out = cfg.out_dir + "/fitted_params.gts";
    write_params_file(params_out, f, "percent_daily");
    std::printf("wrote %s and %s\n", out_path.c_str(), params_out.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    cfg.k_grid = default_k_grid();

    CLI::App app{"European call pricing under a generalized tempered stable process"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path, engine_name = "all", k_grid_text, taus_text;
    std::string emit_config_path, returns_out_path;
    double single_k = 0.0, single_tau = 0.0;

    app.add_option("--config", config_path, "key = value configuration file");
    app.add_option("--params", cfg.params_path, "parameter file (key = value)");
    app.add_option("--rate", cfg.rate, "risk-free rate, continuously compounded");
    app.add_option("--spot", cfg.spot, "spot price");
    app.add_option("--sigma-star", cfg.sigma_star,
                   "benchmark volatility (<= 0 derives it from the fitted variance)");
    app.add_option("--days-per-year", cfg.days_per_year, "annualization factor D");
    app.add_option("--q", cfg.q, "contour shift (must be < -1)");
    app.add_option("--contour-b", cfg.contour_b, "contour truncation point");
    app.add_option("--contour-n", cfg.contour_n, "contour subintervals (multiple of 12)");
    app.add_flag("--no-auto-extend", "freeze the contour rule at --contour-b");
    app.add_option("--n-points", cfg.n_points, "transform grid size (power of two)");
    app.add_option("--k-grid", k_grid_text, "moneyness grid: list or lo:hi:step");
    app.add_option("--taus", taus_text, "maturity grid (years): list or lo:hi:step");
    app.add_option("--data", cfg.data_path, "price CSV path");
    app.add_option("--out", cfg.out_path, "output file");
    app.add_option("--out-dir", cfg.out_dir, "output directory for multi-file commands");
    app.add_option("--date-col", cfg.date_col, "date column name");
    app.add_option("--close-col", cfg.close_col, "close column name");
    app.add_option("--tol", cfg.tol, "fit: gradient-norm stopping tolerance");
    app.add_option("--max-iter", cfg.max_iter, "fit: iteration cap");
    app.add_option("--q-lo", cfg.q_lo, "qcalib: scan lower bound");
    app.add_option("--q-hi", cfg.q_hi, "qcalib: scan upper bound");
    app.add_option("--er-m", cfg.er_m, "qcalib: sample count for ER");
    app.add_option("--er-halfwidth", cfg.er_halfwidth, "qcalib: sample halfwidth for ER");
    app.add_option("--er-n", cfg.er_n, "qcalib: quadrature subintervals for ER");
    app.add_option("--emit-config", emit_config_path,
                   "write the resolved configuration to this path before running");

    auto* sc_fit = app.add_subcommand("fit", "fit parameters to a price series");
    auto* sc_esscher = app.add_subcommand("esscher", "solve the martingale equation");
    auto* sc_price = app.add_subcommand("price", "price the call table (or one quote)");
    auto* sc_qcalib = app.add_subcommand("qcalib", "calibrate the contour shift q");
    auto* sc_surface = app.add_subcommand("surface", "GTS minus Black-Scholes error surface");
    auto* sc_density = app.add_subcommand("density", "risk-neutral density and CDF grids");

    sc_price->add_option("--k", single_k, "single-quote moneyness S/K");
    sc_price->add_option("--tau", single_tau, "single-quote maturity (years)");
    sc_price->add_option("--engine", engine_name, "bs | extended | generalized | all");
    sc_fit->add_option("--returns-out", returns_out_path,
                       "also write the computed return series (date, return_pct)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (!config_path.empty()) {
            // The config file provides the base; explicit flags win.
            const RunConfig flags = cfg;
            RunConfig base;
            base.k_grid = default_k_grid();
            apply_config_file(base, config_path);
            auto used = [&](const char* name) { return app.count(name) > 0; };
            if (used("--params")) base.params_path = flags.params_path;
            if (used("--rate")) base.rate = flags.rate;
            if (used("--spot")) base.spot = flags.spot;
            if (used("--sigma-star")) base.sigma_star = flags.sigma_star;
            if (used("--days-per-year")) base.days_per_year = flags.days_per_year;
            if (used("--q")) base.q = flags.q;
            if (used("--contour-b")) base.contour_b = flags.contour_b;
            if (used("--contour-n")) base.contour_n = flags.contour_n;
            if (used("--n-points")) base.n_points = flags.n_points;
            if (used("--data")) base.data_path = flags.data_path;
            if (used("--out")) base.out_path = flags.out_path;
            if (used("--out-dir")) base.out_dir = flags.out_dir;
            if (used("--date-col")) base.date_col = flags.date_col;
            if (used("--close-col")) base.close_col = flags.close_col;
            if (used("--tol")) base.tol = flags.tol;
            if (used("--max-iter")) base.max_iter = flags.max_iter;
            if (used("--q-lo")) base.q_lo = flags.q_lo;
            if (used("--q-hi")) base.q_hi = flags.q_hi;
            if (used("--er-m")) base.er_m = flags.er_m;
            if (used("--er-halfwidth")) base.er_halfwidth = flags.er_halfwidth;
            if (used("--er-n")) base.er_n = flags.er_n;
            cfg = base;
        }
        if (!k_grid_text.empty()) cfg.k_grid = parse_list(k_grid_text);
        if (!taus_text.empty()) cfg.taus = parse_list(taus_text);
        if (app.count("--no-auto-extend") > 0) cfg.auto_extend = false;
        if (!emit_config_path.empty()) write_effective_config(cfg, emit_config_path);

        if (sc_fit->parsed()) return cmd_fit(cfg, returns_out_path);
        if (sc_esscher->parsed()) return cmd_esscher(cfg);
        if (sc_price->parsed()) return cmd_price(cfg, single_k, single_tau, engine_name);
        if (sc_qcalib->parsed()) return cmd_qcalib(cfg);
        if (sc_surface->parsed()) return cmd_surface(cfg);
        if (sc_density->parsed()) return cmd_density(cfg);
    } catch (const std::exception& e) {
        fail(e.what());
    }
    return 0;
}
