// Acceptance suite: one pass/fail line per criterion, nonzero exit if any
// criterion fails. Each check pins its tolerance in code.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "asvlim/limit.hpp"
#include "asvlim/mc.hpp"
#include "asvlim/mgf.hpp"
#include "asvlim/smile.hpp"

using namespace asvlim;

namespace {

ModelParams heston_ia() { return {0.0, 0.08, 0.04, -2.0, -0.5, 0.04}; }
ModelParams heston_ib() { return {0.0, 0.08, 0.2025, -0.03, 0.85, 0.04}; }
ModelParams heston_iia() { return {0.0, 0.08, 0.25, 0.3, -0.9, 0.04}; }
ModelParams heston_iib() { return {0.0, 0.08, 0.04, 0.5, 0.5, 0.04}; }

std::vector<ModelParams> class_sets() {
    return {heston_ia(), heston_ib(), heston_iia(), heston_iib()};
}

struct Criterion {
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

// 1. Lambda_t(0) = Lambda_t(1) = 0 exactly for random admissible parameters.
Criterion c01_martingale() {
    std::mt19937_64 rng(20240809);
    std::uniform_real_distribution<double> un(0.0, 1.0);
    bool ok = true;
    for (int i = 0; i < 100; ++i) {
        const ModelParams p(0.2 * un(rng), 0.5 * un(rng), 0.01 + 2.0 * un(rng),
                            6.0 * un(rng) - 3.0, 2.0 * un(rng) - 1.0,
                            0.005 + 0.5 * un(rng));
        for (double t : {0.1, 1.0, 10.0}) {
            ok = ok && lambda_t(0.0, t, p) == ExtReal::finite(0.0);
            ok = ok && lambda_t(1.0, t, p) == ExtReal::finite(0.0);
        }
    }
    return {"martingale normalisation Lambda_t(0)=Lambda_t(1)=0", ok,
            "100 random parameter sets, t in {0.1,1,10}, exact"};
}

// 2. Riccati residual on a 50x50 (u,t) grid inside the finite-time domain.
Criterion c02_riccati() {
    const ModelParams p = heston_ia();
    const auto cm = critical_moments(p);
    const double ulo = cm.u_minus.value(), uhi = cm.u_plus.value();
    const double rsa = p.rho * p.sqrt_alpha();
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        const double u = ulo + (uhi - ulo) * (0.05 + 0.9 * i / 49.0);
        for (int j = 0; j < 50; ++j) {
            const double t = 0.1 + 4.9 * j / 49.0;
            const double h = 1e-5;
            const double dpsi = (psi_t(u, t + h, p) - psi_t(u, t - h, p)) / (2 * h);
            const double w = psi_t(u, t, p);
            const double r = 0.5 * u * (u - 1.0) + 0.5 * p.alpha * w * w +
                             u * w * rsa + p.beta * w;
            worst = std::max(worst, std::abs(dpsi - r) / (1.0 + std::abs(r)));
        }
    }
    return {"Riccati residual on 50x50 grid", worst < 1e-6,
            "max relative residual " + fmt(worst) + " < 1e-6"};
}

// 3. rate() against the brute-force transform oracle, 201 points per class.
Criterion c03_legendre_oracle() {
    double worst = 0.0;
    for (const auto& p : class_sets()) {
        const LimitCgf L = boundary_limits(p);
        for (int i = 0; i < 201; ++i) {
            const double x = -1.0 + 2.0 * i / 200.0;
            worst = std::max(worst,
                             std::abs(rate(x, L).value - rate_oracle(x, L, 100000)));
        }
    }
    return {"Fenchel-Legendre oracle agreement", worst < 1e-4,
            "max |rate - oracle| = " + fmt(worst) + " < 1e-4, 201 x per class"};
}

// 4. Conjugacy round trip on 1000 interior points across the classes.
Criterion c04_conjugacy() {
    double worst = 0.0;
    int used = 0;
    for (const auto& p : class_sets()) {
        const LimitCgf L = boundary_limits(p);
        const double lo = L.dom_lo.value(), hi = L.dom_hi.value();
        for (int i = 1; i <= 250; ++i) {
            const double u = lo + (hi - lo) * i / 251.0;
            if (!(gamma_sq(u, p) > 0.0)) continue;
            const double x = limit_cgf_derivative(u, L);
            worst = std::max(worst, std::abs(rate(x, L).value -
                                             (u * x - limit_cgf_formula(u, L))));
            ++used;
        }
    }
    return {"conjugacy round trip Lambda*(Lambda'(u))", worst < 1e-10,
            fmt(double(used)) + " points, max residual " + fmt(worst) + " < 1e-10"};
}

// 5. Smile quadratic-equation residual wherever the variance is positive.
Criterion c05_smile_residual() {
    double worst = 0.0;
    for (const auto& p : class_sets()) {
        const LimitCgf L = boundary_limits(p);
        for (int i = 0; i < 201; ++i) {
            const double x = -0.8 + 1.6 * (i + 0.137) / 201.0;
            const SmilePoint s = implied_var_infinity(x, L);
            if (!(s.var_inf > 0.0)) continue;
            worst = std::max(worst, std::abs(rate(x, L).value -
                                             bs_rate(x, std::sqrt(s.var_inf))));
        }
    }
    return {"smile quadratic-equation residual", worst < 1e-9,
            "max |rate - rate_BS(sigma_inf)| = " + fmt(worst) + " < 1e-9"};
}

// 6. SVI equivalence on the convex range plus closed wing forms.
Criterion c06_svi() {
    double worst_central = 0.0, worst_wing = 0.0;
    for (const auto& p : class_sets()) {
        const LimitCgf L = boundary_limits(p);
        const SviParams s = svi_params(p);
        const double lo = L.conv_lo.is_finite() ? L.conv_lo.value() + 1e-7 : -1.5;
        const double hi = L.conv_hi.is_finite() ? L.conv_hi.value() - 1e-7 : 1.5;
        for (int i = 0; i <= 200; ++i) {
            const double x = lo + (hi - lo) * i / 200.0;
            worst_central = std::max(
                worst_central,
                std::abs(implied_var_infinity(x, L).var_inf - svi_variance(x, s)));
        }
        if (L.cls.chi1 > 0.0) {
            for (int i = 1; i <= 50; ++i) {
                const double x = L.dlam1_minus.value() + 0.03 * i;
                worst_wing = std::max(
                    worst_wing,
                    std::abs(implied_var_infinity(x, L).var_inf - svi_wing_right(x, L)));
            }
        }
        if (L.cls.chi0 > 0.0) {
            for (int i = 1; i <= 50; ++i) {
                const double x = L.dlam0_plus.value() - 0.03 * i;
                worst_wing = std::max(
                    worst_wing,
                    std::abs(implied_var_infinity(x, L).var_inf - svi_wing_left(x, L)));
            }
        }
    }
    const bool ok = worst_central < 1e-10 && worst_wing < 1e-10;
    return {"SVI equivalence (central + wings)", ok,
            "central " + fmt(worst_central) + ", wings " + fmt(worst_wing) +
                ", both < 1e-10"};
}

// 7. Feeding the Black-Scholes rate into the smile recovers sigma^2 exactly.
Criterion c07_bs_fixed_point() {
    double worst = 0.0;
    for (double sigma : {0.1, 0.2, 0.5}) {
        const double s2 = sigma * sigma;
        for (int i = 1; i < 200; ++i) {
            const double x = -0.5 * s2 + s2 * i / 200.0;
            worst = std::max(worst, std::abs(smile_variance_from_rate(
                                                 bs_rate(x, sigma), x, 2) -
                                             s2));
        }
    }
    return {"Black-Scholes fixed point", worst < 1e-12,
            "max |var - sigma^2| = " + fmt(worst) + " < 1e-12"};
}

// 8. Degenerate b = 0 case: variance -2x below -a/2, a above, exact.
Criterion c08_degenerate() {
    const ModelParams p(0.04, 0.0, 0.5, -1.0, 0.3, 0.1);
    const LimitCgf L = boundary_limits(p);
    bool ok = true;
    for (int i = 0; i <= 400; ++i) {
        const double x = -0.5 + i / 400.0;
        const double v = implied_var_infinity(x, L).var_inf;
        ok = ok && (x < -0.02 ? v == -2.0 * x : v == 0.04);
    }
    return {"degenerate b=0 smile", ok, "var = -2x (x < -0.02), = 0.04 otherwise, exact"};
}

// 9. Finite-time domain boundary roots: monotone in t, vanishing residual.
Criterion c09_domain_roots() {
    bool ok = true;
    double worst = 0.0;
    std::string note;

    const ModelParams pib = heston_ib();
    double prev = 1e300, first = 0.0, last = 0.0;
    for (double t : {5.0, 10.0, 20.0, 40.0, 80.0}) {
        const auto d = domain_at(t, pib);
        ok = ok && d.upper_is_root;
        if (!d.upper_is_root) break;
        const double ub = d.upper.value();
        ok = ok && ub < prev && ub > 1.0;
        if (t == 5.0) first = ub;
        if (t == 80.0) last = ub;
        prev = ub;
        worst = std::max(worst, std::abs(f_t_scaled(ub, t, pib)));
    }
    ok = ok && (last - 1.0 < first - 1.0);

    const ModelParams piia = heston_iia();
    prev = -1e300;
    for (double t : {5.0, 10.0, 20.0, 40.0, 80.0}) {
        const auto d = domain_at(t, piia);
        ok = ok && d.lower_is_root;
        if (!d.lower_is_root) break;
        const double lb = d.lower.value();
        ok = ok && lb > prev && lb < 0.0;
        prev = lb;
        worst = std::max(worst, std::abs(f_t_scaled(lb, t, piia)));
    }
    ok = ok && worst < 1e-9;
    return {"domain boundary roots monotone in t", ok,
            "t in {5..80}, max scaled f residual " + fmt(worst) + " < 1e-9"};
}

// 10. Finite-t convergence with the log(1-u) correction, class IB, u = 0.5.
Criterion c10_finite_t() {
    const ModelParams p = heston_ib();
    const LimitCgf L = boundary_limits(p);
    const double u = 0.5;
    const double lam = limit_cgf_formula(u, L);
    bool ok = true;
    double prev = 1e300, last = 0.0;
    for (double t : {50.0, 100.0, 200.0, 400.0}) {
        const double err = std::abs(lambda_t(u, t, p).value() / t - lam +
                                    2.0 * p.b / (p.alpha * t) * std::log(1.0 - u));
        ok = ok && err < prev;
        prev = err;
        last = err;
    }
    ok = ok && last < 5e-3;
    return {"finite-t expansion convergence (class IB)", ok,
            "decreasing over t in {50,100,200,400}, err(400) = " + fmt(last) +
                " < 5e-3"};
}

// 11. Monte Carlo MGF against lambda_t, 3 standard errors.
Criterion c11_mc_mgf() {
    const ModelParams p = heston_ia();
    SimConfig c;
    c.n_paths = 200000;
    c.dt = 1.0 / 1024.0;
    c.t_final = 1.0;
    c.seed = 1234567;
    const auto samples = simulate_terminal(p, c);
    bool ok = true;
    std::string detail;
    for (double u : {0.25, 0.5, 0.75}) {
        const auto est = mc_mgf_check(u, samples, p);
        const double target = lambda_t(u, 1.0, p).value();
        const double z = std::abs(est.value - target) / est.std_error;
        ok = ok && z < 3.0;
        detail += "u=" + fmt(u) + ":" + fmt(z) + "se ";
    }
    return {"MC MGF vs Lambda_t (n=2e5, dt=2^-10)", ok, detail + "< 3se"};
}

// 12. Monte Carlo tail decay rate vs the transform at t = 20.
Criterion c12_mc_ldp() {
    const ModelParams p = heston_ia();
    const LimitCgf L = boundary_limits(p);

    // pick x with Lambda*(x) in [0.05, 0.15]: scan the right tail
    double x = limit_cgf_derivative(0.0, L);
    while (rate(x, L).value < 0.14) x += 1e-3;
    const double target = rate(x, L).value;

    SimConfig c;
    c.n_paths = 1000000;
    c.dt = 1.0 / 64.0;
    c.seed = 24681357;
    const double t_grid[] = {5.0, 10.0, 20.0};
    const auto pts = mc_ldp_rate(x, t_grid, p, c);

    std::string detail = "target " + fmt(target) + " at x=" + fmt(x) + "; ";
    bool decreasing = true;
    double prev = 1e300;
    for (const auto& pt : pts) {
        detail += "t=" + fmt(pt.t) + ":" + fmt(pt.estimate.value) + " ";
        decreasing = decreasing && pt.estimate.value < prev;
        prev = pt.estimate.value;
    }
    const double final_rel =
        std::abs(pts.back().estimate.value - target) / target;
    const bool ok = !pts.back().zero_hit && final_rel < 0.25;
    detail += "rel err " + fmt(final_rel) + (ok ? " < 0.25" : " (tolerance 0.25)");
    if (!decreasing) detail += " [not monotone]";
    if (!ok) {
        // Diagnostic: the plain estimate carries the subexponential
        // sharp-large-deviations correction [log u_x + log(2 pi t L'') / 2]/t
        // on top of the transform value; subtracting it shows where the
        // simulated tail actually sits.
        const double ux = u_star(x, L);
        const double h = 1e-5;
        const double lpp = (limit_cgf_derivative(ux + h, L) -
                            limit_cgf_derivative(ux - h, L)) /
                           (2.0 * h);
        const double t_last = pts.back().t;
        const double corr =
            (std::log(ux) + 0.5 * std::log(2.0 * 3.141592653589793 * t_last * lpp)) /
            t_last;
        detail += "; prefactor-corrected t=20 value " +
                  fmt(pts.back().estimate.value - corr) + " (rel err " +
                  fmt(std::abs(pts.back().estimate.value - corr - target) / target) +
                  ")";
    }
    return {"MC tail decay rate vs Lambda* (t=20, n=1e6)", ok, detail};
}

// 13. CLI determinism and CSV/JSON value equality.
Criterion c13_cli() {
#ifdef ASVLIM_CLI_PATH
    const std::string cli = ASVLIM_CLI_PATH;
#else
    const std::string cli = "./asvlim";
#endif
    const auto slurp = [](const std::string& path) {
        std::ifstream f(path, std::ios::binary);
        std::stringstream ss;
        ss << f.rdbuf();
        return ss.str();
    };
    const std::string base =
        " mc-check --u 0.25,0.5 --t 1 --n-paths 20000 --dt 0.015625 --seed 99";
    const int r1 = std::system((cli + base + " --out acc_run1.csv").c_str());
    const int r2 = std::system((cli + base + " --out acc_run2.csv").c_str());
    const int r3 =
        std::system((cli + base + " --format json --out acc_run.json").c_str());
    if (r1 != 0 || r2 != 0 || r3 != 0)
        return {"CLI determinism and format equality", false, "CLI invocation failed"};

    const std::string csv1 = slurp("acc_run1.csv");
    const std::string csv2 = slurp("acc_run2.csv");
    const bool identical = !csv1.empty() && csv1 == csv2;

    // value equality CSV vs JSON
    bool values_equal = true;
    {
        std::stringstream ss(csv1);
        std::string header;
        std::getline(ss, header);
        std::vector<std::string> cols;
        {
            std::stringstream hs(header);
            std::string c;
            while (std::getline(hs, c, ',')) cols.push_back(c);
        }
        std::vector<std::vector<std::string>> rows;
        std::string line;
        while (std::getline(ss, line)) {
            std::vector<std::string> cells;
            std::stringstream ls(line);
            std::string c;
            while (std::getline(ls, c, ',')) cells.push_back(c);
            rows.push_back(cells);
        }
        const auto doc = nlohmann::json::parse(slurp("acc_run.json"));
        values_equal = doc.size() == rows.size();
        for (std::size_t r = 0; r < rows.size() && values_equal; ++r) {
            for (std::size_t k = 0; k < cols.size(); ++k) {
                const auto& jv = doc[r].at(cols[k]);
                if (jv.is_number()) {
                    if (std::strtod(rows[r][k].c_str(), nullptr) != jv.get<double>())
                        values_equal = false;
                } else if (rows[r][k] != jv.get<std::string>()) {
                    values_equal = false;
                }
            }
        }
    }
    std::remove("acc_run1.csv");
    std::remove("acc_run2.csv");
    std::remove("acc_run.json");
    return {"CLI determinism and format equality", identical && values_equal,
            std::string(identical ? "byte-identical reruns" : "rerun mismatch") +
                ", " + (values_equal ? "csv=json values" : "csv/json mismatch")};
}

}  // namespace

int main() {
    using clock = std::chrono::steady_clock;
    const std::vector<std::pair<std::function<Criterion()>, double>> checks = {
        {c01_martingale, 1.0},     {c02_riccati, 1.0},
        {c03_legendre_oracle, 10.0}, {c04_conjugacy, 1.0},
        {c05_smile_residual, 1.0}, {c06_svi, 1.0},
        {c07_bs_fixed_point, 1.0}, {c08_degenerate, 1.0},
        {c09_domain_roots, 1.0},   {c10_finite_t, 1.0},
        {c11_mc_mgf, 60.0},        {c12_mc_ldp, 300.0},
        {c13_cli, 10.0}};

    int failures = 0;
    for (std::size_t i = 0; i < checks.size(); ++i) {
        const auto t0 = clock::now();
        Criterion c = checks[i].first();
        c.seconds = std::chrono::duration<double>(clock::now() - t0).count();
        const double budget = checks[i].second;
        if (c.seconds > budget) {
            c.pass = false;
            c.detail += " [over the " + fmt(budget) + "s budget]";
        }
        if (!c.pass) ++failures;
        std::printf("[%2zu/13] %s  %s  (%s; %.2fs)\n", i + 1,
                    c.pass ? "PASS" : "FAIL", c.name.c_str(), c.detail.c_str(),
                    c.seconds);
    }
    if (failures > 0) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all 13 criteria passed\n");
    return 0;
}
