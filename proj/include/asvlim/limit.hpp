#pragma once

#include <cstddef>
#include <optional>

#include "asvlim/ext_real.hpp"
#include "asvlim/mgf.hpp"
#include "asvlim/model.hpp"

namespace asvlim {

/// Sign regime of (chi(0), chi(1)); exact zeros classify as "<= 0".
struct DomainClass {
    DomainCase variant;
    double chi0;
    double chi1;
};

DomainClass classify(const ModelParams& p);

/// The limiting cumulant generating function Lambda of X_t/t, with its
/// effective domain, one-sided boundary limits at 0 and 1, and the image
/// Lambda'(D^o) on which the transform is strictly convex.
///
/// lam0_plus / lam1_minus are the one-sided limits of Lambda at 0+ / 1-,
/// which differ from the pointwise values Lambda(0) = Lambda(1) = 0 whenever
/// chi(0) > 0 / chi(1) > 0 (Lambda is then discontinuous at that endpoint).
struct LimitCgf {
    ModelParams params;
    DomainClass cls;
    ExtReal dom_lo;       // left end of the effective domain
    ExtReal dom_hi;       // right end of the effective domain
    double lam0_plus;     // Lambda_+(0), always <= 0
    double lam1_minus;    // Lambda_-(1), always <= 0
    ExtReal dlam0_plus;   // Lambda'_+(0); -inf iff chi(0) = 0 and b != 0
    ExtReal dlam1_minus;  // Lambda'_-(1); +inf iff chi(1) = 0 and b != 0
    ExtReal conv_lo;      // left end of Lambda'(D^o)
    ExtReal conv_hi;      // right end of Lambda'(D^o)
};

/// Builds the LimitCgf for p, filling the four boundary quantities.
LimitCgf boundary_limits(const ModelParams& p);

/// The pointwise limit of t^{-1} Lambda_t(u): the closed-form value
/// -(b/alpha)(chi + gamma) + (a/2) u(u-1) on the effective domain, except
/// that u = 0 and u = 1 return exactly 0; +inf outside the domain.
ExtReal limit_cgf(double u, const LimitCgf& L);

/// The closed-form expression for Lambda on [dom_lo, dom_hi] without the
/// pointwise override at 0 and 1. This is what every piecewise rule of the
/// transform uses; the overridden values never enter.
double limit_cgf_formula(double u, const LimitCgf& L);

/// Lambda'(u) on the interior of the domain. Throws std::domain_error at a
/// boundary point where gamma(u) = 0.
double limit_cgf_derivative(double u, const LimitCgf& L);

/// The unique u in D^o with Lambda'(u) = x, for x inside (conv_lo, conv_hi).
/// Closed form when a = 0 (separate |rho| = 1 expression); bracketed
/// bisection to 1e-12 otherwise. Throws std::domain_error when x is outside
/// the strictly convex range.
double u_star(double x, const LimitCgf& L);

enum class RateRegion { Convex, AffineRight, AffineLeft };

/// Fenchel-Legendre transform value at one point.
struct RateEval {
    double x = 0.0;
    double value = 0.0;               // Lambda*(x) >= max(0, x)
    std::optional<double> u_star;     // minimiser, present in the convex region
    RateRegion region = RateRegion::Convex;
};

/// Lambda*(x) = sup_u { u x - Lambda(u) }, evaluated piecewise: through the
/// minimiser u_x on (conv_lo, conv_hi), and on the affine wings beyond a
/// non-steep boundary (x - Lambda_-(1) on the right, -Lambda_+(0) on the
/// left; corner value at a finite critical moment in the b = 0 case).
RateEval rate(double x, const LimitCgf& L);

/// Brute-force supremum of u x - Lambda(u) over an n_grid-point grid of the
/// effective domain (endpoints inset by 1e-9, infinite ends truncated at
/// |u| = 50), refined by one golden-section pass around the grid argmax.
/// Independent of the rate() evaluation path; n_grid >= 1000.
double rate_oracle(double x, const LimitCgf& L, std::size_t n_grid);

/// Rate function under the share measure: Lambda*(x) - x >= 0.
double rate_share(double x, const LimitCgf& L);

}  // namespace asvlim
