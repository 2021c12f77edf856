#include "asvlim/smile.hpp"

#include <cmath>
#include <stdexcept>

namespace asvlim {

namespace {

int sgn_weak(double x) { return x >= 0.0 ? 1 : -1; }  // sgn(0) = +1 convention

}  // namespace

double bs_rate(double x, double sigma) {
    if (!(sigma > 0.0)) throw std::invalid_argument("bs_rate: sigma must be positive");
    const double s2 = sigma * sigma;
    const double z = x + 0.5 * s2;
    return z * z / (2.0 * s2);
}

double bs_option_asymptote(double x, double sigma, OptionKind kind) {
    if (!(sigma > 0.0))
        throw std::invalid_argument("bs_option_asymptote: sigma must be positive");
    const double s2 = sigma * sigma;
    switch (kind) {
        case OptionKind::Put:
            return x <= -0.5 * s2 ? x - bs_rate(x, sigma) : x;
        case OptionKind::Call:
            return x >= 0.5 * s2 ? x - bs_rate(x, sigma) : 0.0;
        case OptionKind::CoveredCall:
            if (x <= -1.5 * s2) return 2.0 * x + s2;
            if (x <= 0.5 * s2) return x - bs_rate(x, sigma);
            return 0.0;
    }
    throw std::logic_error("bs_option_asymptote: unknown kind");
}

OptionAsymptote option_asymptote(double x, const LimitCgf& L, OptionKind kind) {
    OptionAsymptote out;
    out.x = x;
    out.kind = kind;
    switch (kind) {
        case OptionKind::Put:
            if (x <= L.dlam0_plus) {
                out.exponent = x - rate(x, L).value;
                out.branch = AsymptoteBranch::ViaRate;
            } else {
                out.exponent = x - L.lam0_plus;
                out.branch = AsymptoteBranch::ViaBoundary;
            }
            if (out.exponent > x) out.flagged = true;
            break;
        case OptionKind::Call:
            if (x >= L.dlam1_minus) {
                out.exponent = x - rate(x, L).value;
                out.branch = AsymptoteBranch::ViaRate;
            } else {
                out.exponent = -L.lam1_minus;
                out.branch = AsymptoteBranch::ViaBoundary;
            }
            if (out.exponent > 0.0) out.flagged = true;
            break;
        case OptionKind::CoveredCall:
            if (!(x >= L.dlam0_plus && x <= L.dlam1_minus))
                throw std::domain_error(
                    "option_asymptote: covered call defined only on "
                    "[Lambda'_+(0), Lambda'_-(1)]");
            out.exponent = x - rate(x, L).value;
            out.branch = AsymptoteBranch::ViaRate;
            break;
    }
    return out;
}

int smile_selector(double x, const LimitCgf& L) {
    int ind = 0;
    if (x > L.dlam0_plus && x < L.dlam1_minus) ind += 1;
    if (x < L.dlam0_plus) ind += sgn_weak(L.cls.chi0);
    if (x > L.dlam1_minus) ind += sgn_weak(L.cls.chi1);
    return 2 * ind;
}

double smile_variance_from_rate(double lambda_star, double x, int selector) {
    double radicand = lambda_star * (lambda_star - x);
    if (radicand < 0.0) {
        if (radicand < -1e-12)
            throw std::domain_error(
                "smile_variance_from_rate: negative radicand (rate below max(0, x))");
        radicand = 0.0;  // roundoff at a threshold where the product vanishes
    }
    return 2.0 * (2.0 * lambda_star - x + selector * std::sqrt(radicand));
}

SmilePoint implied_var_infinity(double x, const LimitCgf& L) {
    SmilePoint pt;
    pt.x = x;
    const ModelParams& p = L.params;

    if (p.b == 0.0) {
        // Degenerate model: Lambda(u) = (a/2) u (u-1), smile in closed form.
        if (x < -0.5 * p.a) {
            pt.var_inf = -2.0 * x;
            pt.region = SmileRegion::DegenerateLinear;
        } else {
            pt.var_inf = p.a;
            pt.region = SmileRegion::DegenerateFlat;
        }
        return pt;
    }

    pt.selector = smile_selector(x, L);
    pt.var_inf = smile_variance_from_rate(rate(x, L).value, x, pt.selector);
    if (x < L.dlam0_plus)
        pt.region = SmileRegion::LeftWing;
    else if (x > L.dlam1_minus)
        pt.region = SmileRegion::RightWing;
    else if (pt.selector == 0)
        pt.region = SmileRegion::Threshold;
    else
        pt.region = SmileRegion::Central;

    if (p.a == 0.0 && std::abs(p.rho) < 1.0 && L.conv_lo < x && x < L.conv_hi)
        pt.svi_var = svi_variance(x, svi_params(p));
    return pt;
}

double svi_variance(double x, const SviParams& s) {
    const double w = s.omega2 * x + s.rho;
    return 0.5 * s.omega1 *
           (1.0 + s.omega2 * s.rho * x + std::sqrt(w * w + 1.0 - s.rho * s.rho));
}

SviParams svi_params(const ModelParams& p) {
    if (p.a != 0.0 || p.b == 0.0 || std::abs(p.rho) >= 1.0)
        throw std::domain_error(
            "svi_params: requires a = 0, b > 0 and |rho| < 1");
    const double sa = p.sqrt_alpha();
    const double m = 2.0 * p.beta + p.rho * sa;
    const double one_m_r2 = 1.0 - p.rho * p.rho;
    const double c = p.alpha * one_m_r2;
    // conjugate form for m < 0, where sqrt(m^2 + c) + m cancels
    const double q = m >= 0.0 ? std::sqrt(m * m + c) + m
                              : c / (std::sqrt(m * m + c) - m);
    SviParams s;
    s.omega1 = 4.0 * p.b / c * q;
    s.omega2 = sa / p.b;
    s.rho = p.rho;
    return s;
}

double svi_wing_right(double x, const LimitCgf& L) {
    const ModelParams& p = L.params;
    if (p.a != 0.0 || p.b == 0.0 || !(L.cls.chi1 > 0.0))
        throw std::domain_error("svi_wing_right: requires a = 0, b > 0, chi(1) > 0");
    if (!(x > L.dlam1_minus))
        throw std::domain_error("svi_wing_right: x must exceed Lambda'_-(1)");
    const double lam1 = std::sqrt(2.0 * p.b * L.cls.chi1);
    return 2.0 * x +
           4.0 * lam1 / p.alpha * (lam1 + std::sqrt(lam1 * lam1 + p.alpha * x));
}

double svi_wing_left(double x, const LimitCgf& L) {
    const ModelParams& p = L.params;
    if (p.a != 0.0 || p.b == 0.0 || !(L.cls.chi0 > 0.0))
        throw std::domain_error("svi_wing_left: requires a = 0, b > 0, chi(0) > 0");
    if (!(x < L.dlam0_plus))
        throw std::domain_error("svi_wing_left: x must lie below Lambda'_+(0)");
    const double lam0 = std::sqrt(2.0 * p.b * L.cls.chi0);
    // lambda_0^2 - alpha x >= alpha (-Lambda_+(0) - Lambda'_+(0)) >= 0 on the
    // wing; this is the expansion of the generic root with the constant
    // transform value 2 b chi(0) / alpha.
    const double radicand = lam0 * lam0 - p.alpha * x;
    if (!(radicand >= 0.0))
        throw std::domain_error("svi_wing_left: radicand negative on the wing");
    return -2.0 * x + 4.0 * lam0 / p.alpha * (lam0 + std::sqrt(radicand));
}

double svi_flat_extreme_rho(double x, const ModelParams& p) {
    const double sa = p.sqrt_alpha();
    const double m = 2.0 * p.beta + p.rho * sa;
    if (std::abs(p.rho) != 1.0 || p.a != 0.0 || !(m < 0.0))
        throw std::domain_error(
            "svi_flat_extreme_rho: requires |rho| = 1, a = 0 and "
            "2 beta + rho sqrt(alpha) < 0");
    const double num = p.b + p.rho * x * sa;
    return num > 0.0 ? -2.0 * num / m : 0.0;
}

}  // namespace asvlim
