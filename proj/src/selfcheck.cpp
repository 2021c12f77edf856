#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

#include "asvlim/cli.hpp"
#include "asvlim/limit.hpp"
#include "asvlim/mc.hpp"
#include "asvlim/mgf.hpp"
#include "asvlim/smile.hpp"

namespace asvlim {

namespace {

std::string fmt(const char* format, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), format, v);
    return buf;
}

// One representative parameter set per sign regime.
ModelParams set_ia() { return {0.0, 0.08, 0.04, -2.0, -0.5, 0.04}; }
ModelParams set_ib() { return {0.0, 0.08, 0.2025, -0.03, 0.85, 0.04}; }
ModelParams set_iia() { return {0.0, 0.08, 0.25, 0.3, -0.9, 0.04}; }
ModelParams set_iib() { return {0.0, 0.08, 0.04, 0.5, 0.5, 0.04}; }

std::vector<ModelParams> class_sets() {
    return {set_ia(), set_ib(), set_iia(), set_iib()};
}

SelfCheck check_martingale() {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> un(0.0, 1.0);
    bool ok = true;
    for (int i = 0; i < 100 && ok; ++i) {
        const ModelParams p(0.1 * un(rng), 0.5 * un(rng), 0.01 + un(rng),
                            6.0 * un(rng) - 3.0, 2.0 * un(rng) - 1.0,
                            0.01 + 0.5 * un(rng));
        for (double t : {0.1, 1.0, 10.0}) {
            ok = ok && lambda_t(0.0, t, p) == ExtReal::finite(0.0) &&
                 lambda_t(1.0, t, p) == ExtReal::finite(0.0);
        }
    }
    return {"martingale-normalisation", ok, "Lambda_t(0)=Lambda_t(1)=0 exactly"};
}

SelfCheck check_riccati() {
    const ModelParams p = set_ia();
    const auto cm = critical_moments(p);
    const double ulo = cm.u_minus.value(), uhi = cm.u_plus.value();
    const double rsa = p.rho * p.sqrt_alpha();
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        const double u = ulo + (uhi - ulo) * (0.05 + 0.9 * i / 49.0);
        for (int j = 0; j < 50; ++j) {
            const double t = 0.1 + 4.9 * j / 49.0;
            const double h = 1e-5;
            const double dpsi =
                (psi_t(u, t + h, p) - psi_t(u, t - h, p)) / (2.0 * h);
            const double w = psi_t(u, t, p);
            const double r = 0.5 * u * (u - 1.0) + 0.5 * p.alpha * w * w +
                             u * w * rsa + p.beta * w;
            worst = std::max(worst, std::abs(dpsi - r) / (1.0 + std::abs(r)));
        }
    }
    return {"riccati-residual", worst < 1e-6, "max rel residual " + fmt("%.2e", worst)};
}

SelfCheck check_legendre_oracle() {
    double worst = 0.0;
    for (const auto& p : class_sets()) {
        const LimitCgf L = boundary_limits(p);
        for (int i = 0; i < 41; ++i) {
            const double x = -1.0 + 2.0 * i / 40.0;
            worst = std::max(worst,
                             std::abs(rate(x, L).value - rate_oracle(x, L, 20000)));
        }
    }
    return {"legendre-oracle", worst < 1e-4, "max |rate - oracle| " + fmt("%.2e", worst)};
}

SelfCheck check_conjugacy() {
    double worst = 0.0;
    for (const auto& p : class_sets()) {
        const LimitCgf L = boundary_limits(p);
        const double lo = L.dom_lo.value(), hi = L.dom_hi.value();
        for (int i = 1; i <= 100; ++i) {
            const double u = lo + (hi - lo) * i / 101.0;
            if (!(gamma_sq(u, p) > 0.0)) continue;
            const double x = limit_cgf_derivative(u, L);
            const double lhs = rate(x, L).value;
            const double rhs = u * x - limit_cgf_formula(u, L);
            worst = std::max(worst, std::abs(lhs - rhs));
        }
    }
    return {"conjugacy-round-trip", worst < 1e-10, "max residual " + fmt("%.2e", worst)};
}

SelfCheck check_smile_residual() {
    double worst = 0.0;
    for (const auto& p : class_sets()) {
        const LimitCgf L = boundary_limits(p);
        for (int i = 0; i < 101; ++i) {
            const double x = -0.7 + 1.4 * (i + 0.131) / 101.0;
            const SmilePoint s = implied_var_infinity(x, L);
            if (!(s.var_inf > 0.0)) continue;
            const double resid =
                std::abs(rate(x, L).value - bs_rate(x, std::sqrt(s.var_inf)));
            worst = std::max(worst, resid);
        }
    }
    return {"smile-equation-residual", worst < 1e-9, "max residual " + fmt("%.2e", worst)};
}

SelfCheck check_svi() {
    double worst = 0.0;
    for (const auto& p : class_sets()) {
        const LimitCgf L = boundary_limits(p);
        const SviParams sv = svi_params(p);
        const double lo = L.conv_lo.is_finite() ? L.conv_lo.value() + 1e-6 : -1.5;
        const double hi = L.conv_hi.is_finite() ? L.conv_hi.value() - 1e-6 : 1.5;
        for (int i = 0; i <= 80; ++i) {
            const double x = lo + (hi - lo) * i / 80.0;
            worst = std::max(worst, std::abs(implied_var_infinity(x, L).var_inf -
                                             svi_variance(x, sv)));
        }
        if (L.cls.chi1 > 0.0 && L.dlam1_minus.is_finite()) {
            for (double dx : {1e-3, 0.1, 0.5}) {
                const double x = L.dlam1_minus.value() + dx;
                worst = std::max(worst, std::abs(implied_var_infinity(x, L).var_inf -
                                                 svi_wing_right(x, L)));
            }
        }
        if (L.cls.chi0 > 0.0 && L.dlam0_plus.is_finite()) {
            for (double dx : {1e-3, 0.1, 0.5}) {
                const double x = L.dlam0_plus.value() - dx;
                worst = std::max(worst, std::abs(implied_var_infinity(x, L).var_inf -
                                                 svi_wing_left(x, L)));
            }
        }
    }
    return {"svi-equivalence", worst < 1e-10, "max |var - svi| " + fmt("%.2e", worst)};
}

SelfCheck check_bs_fixed_point() {
    const double sigma = 0.2;
    const double s2 = sigma * sigma;
    double worst = 0.0;
    for (int i = 1; i < 100; ++i) {
        const double x = -0.5 * s2 + s2 * i / 100.0;
        const double var = smile_variance_from_rate(bs_rate(x, sigma), x, 2);
        worst = std::max(worst, std::abs(var - s2));
    }
    return {"bs-fixed-point", worst < 1e-12, "max |var - sigma^2| " + fmt("%.2e", worst)};
}

SelfCheck check_degenerate() {
    const ModelParams p(0.04, 0.0, 0.5, -1.0, 0.3, 0.1);
    const LimitCgf L = boundary_limits(p);
    bool ok = implied_var_infinity(-0.03, L).var_inf == 0.06 &&
              implied_var_infinity(0.1, L).var_inf == 0.04 &&
              implied_var_infinity(-0.02, L).var_inf == 0.04;
    return {"degenerate-b0", ok, "var = -2x below -a/2, = a above"};
}

SelfCheck check_domain_roots() {
    bool ok = true;
    double worst = 0.0;
    const ModelParams pib = set_ib();
    double prev = 1e300;
    for (double t : {5.0, 10.0, 20.0, 40.0}) {
        const auto d = domain_at(t, pib);
        ok = ok && d.upper_is_root && d.upper.value() < prev;
        prev = d.upper.value();
        worst = std::max(worst, std::abs(f_t_scaled(d.upper.value(), t, pib)));
    }
    const ModelParams piia = set_iia();
    prev = -1e300;
    for (double t : {5.0, 10.0, 20.0, 40.0}) {
        const auto d = domain_at(t, piia);
        ok = ok && d.lower_is_root && d.lower.value() > prev;
        prev = d.lower.value();
        worst = std::max(worst, std::abs(f_t_scaled(d.lower.value(), t, piia)));
    }
    return {"domain-boundary-roots", ok && worst < 1e-9,
            "monotone roots, max residual " + fmt("%.2e", worst)};
}

SelfCheck check_finite_t_convergence() {
    const ModelParams p = set_ib();
    const LimitCgf L = boundary_limits(p);
    const double u = 0.5;
    const double lam = limit_cgf_formula(u, L);
    double prev = 1e300;
    bool ok = true;
    double last = 0.0;
    for (double t : {50.0, 100.0, 200.0, 400.0}) {
        const double err = std::abs(lambda_t(u, t, p).value() / t - lam +
                                    2.0 * p.b / (p.alpha * t) * std::log(1.0 - u));
        ok = ok && err < prev;
        prev = err;
        last = err;
    }
    return {"finite-t-convergence", ok && last < 5e-3,
            "decreasing, err(400) = " + fmt("%.2e", last)};
}

SelfCheck check_mc_martingale() {
    SimConfig c;
    c.n_paths = 20000;
    c.dt = 1.0 / 64.0;
    c.t_final = 1.0;
    c.seed = 20240901;
    const ModelParams p = set_ia();
    const auto est = mc_mgf_check(1.0, 1.0, p, c);
    const bool ok = std::abs(est.value) < 4.0 * est.std_error;
    return {"mc-martingale", ok,
            "log mean e^X = " + fmt("%.2e", est.value) + " (se " +
                fmt("%.1e", est.std_error) + ")"};
}

}  // namespace

std::vector<SelfCheck> run_selftest() {
    return {check_martingale(),     check_riccati(),
            check_legendre_oracle(), check_conjugacy(),
            check_smile_residual(),  check_svi(),
            check_bs_fixed_point(),  check_degenerate(),
            check_domain_roots(),    check_finite_t_convergence(),
            check_mc_martingale()};
}

}  // namespace asvlim
