#pragma once

#include <optional>

#include "asvlim/limit.hpp"
#include "asvlim/model.hpp"

namespace asvlim {

enum class OptionKind { Put, Call, CoveredCall };

/// Which branch of the large-maturity price limit produced the exponent.
enum class AsymptoteBranch { ViaRate, ViaBoundary };

struct OptionAsymptote {
    double x = 0.0;
    OptionKind kind = OptionKind::Put;
    double exponent = 0.0;  // limit of t^{-1} log(price quantity)
    AsymptoteBranch branch = AsymptoteBranch::ViaRate;
    // A call exponent above zero (or a put exponent above x) is impossible
    // for a price bounded by the spot (strike); the boundary branch can
    // produce one when chi(1) > 0 (chi(0) > 0). Flagged instead of clamped.
    bool flagged = false;
};

enum class SmileRegion {
    Central,          // strictly between the two derivative thresholds
    LeftWing,         // x < Lambda'_+(0)
    RightWing,        // x > Lambda'_-(1)
    Threshold,        // exactly at a threshold (selector 0)
    DegenerateLinear, // b = 0, x < -a/2
    DegenerateFlat    // b = 0, x >= -a/2
};

struct SmilePoint {
    double x = 0.0;
    double var_inf = 0.0;  // sigma_infinity^2(x)
    int selector = 0;      // I(x) in {-2, 0, 2}
    SmileRegion region = SmileRegion::Central;
    std::optional<double> svi_var;  // SVI value when a = 0, b > 0, |rho| < 1
};

struct SviParams {
    double omega1 = 0.0;
    double omega2 = 0.0;
    double rho = 0.0;
};

/// Black-Scholes rate function: (x + sigma^2/2)^2 / (2 sigma^2).
double bs_rate(double x, double sigma);

/// Large-maturity Black-Scholes price exponents for strikes e^{xt}.
double bs_option_asymptote(double x, double sigma, OptionKind kind);

/// Large-maturity price exponent in the affine model. CoveredCall is defined
/// only for x in [Lambda'_+(0), Lambda'_-(1)] and throws outside.
OptionAsymptote option_asymptote(double x, const LimitCgf& L, OptionKind kind);

/// Root selector I(x) = 2 [ 1{between thresholds} + sgn(chi(0)) 1{left}
/// + sgn(chi(1)) 1{right} ], sgn(0) = +1; zero exactly at a threshold.
int smile_selector(double x, const LimitCgf& L);

/// The smile composition sigma^2 = 2 (2 L* - x + I sqrt(L* (L* - x))) for a
/// given rate value; the radicand is nonnegative whenever L* >= max(0, x).
double smile_variance_from_rate(double lambda_star, double x, int selector);

/// Limiting implied variance sigma_infinity^2(x). For b = 0 the closed
/// degenerate forms -2x / a apply; otherwise the quadratic-equation root
/// selected by I(x).
SmilePoint implied_var_infinity(double x, const LimitCgf& L);

/// SVI parameterisation of the implied variance at log-strike rate x.
double svi_variance(double x, const SviParams& s);

/// Heston (a = 0, b > 0, |rho| < 1) parameter mapping onto SVI.
SviParams svi_params(const ModelParams& p);

/// Closed wing forms of sigma_infinity^2 beyond a non-steep boundary,
/// a = 0, b > 0. Right wing needs chi(1) > 0 and x > Lambda'_-(1); left wing
/// needs chi(0) > 0 and x < Lambda'_+(0).
double svi_wing_right(double x, const LimitCgf& L);
double svi_wing_left(double x, const LimitCgf& L);

/// Flat-smile limit for |rho| = 1, a = 0, 2 beta + rho sqrt(alpha) < 0.
double svi_flat_extreme_rho(double x, const ModelParams& p);

}  // namespace asvlim
