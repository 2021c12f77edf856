#pragma once

#include "asvlim/ext_real.hpp"
#include "asvlim/model.hpp"

namespace asvlim {

/// The four sign regimes of (chi(0), chi(1)) that drive every piecewise
/// formula of the large-time analysis. Ties (exact zeros) classify as "<= 0".
enum class DomainCase { IA, IB, IIA, IIB };

/// Critical moments u_- <= 0 and u_+ >= 1: for |rho| < 1 the two zeros of the
/// parabola gamma^2, beyond which moments explode in finite time. One or both
/// are infinite when |rho| = 1.
struct CriticalMoments {
    ExtReal u_minus;
    ExtReal u_plus;
};

/// Effective domain of the cumulant generating function at horizon t.
/// [0,1] is always contained in [lower, upper]. When a boundary comes from a
/// root of f_t the corresponding *_is_root flag is set and the boundary is
/// open; otherwise the critical moment is reported (guaranteed inside the
/// domain, finite-t boundary not characterised beyond it).
struct FiniteTimeDomain {
    double t = 0.0;
    ExtReal lower;
    ExtReal upper;
    bool lower_open = false;
    bool upper_open = false;
    DomainCase cls = DomainCase::IA;
    bool lower_is_root = false;
    bool upper_is_root = false;
};

/// chi(u) = beta + u rho sqrt(alpha)
double chi(double u, const ModelParams& p);

/// gamma^2(u) = chi(u)^2 + alpha u (1 - u); negative outside [u_-, u_+]
double gamma_sq(double u, const ModelParams& p);

/// f_t(u) = cosh(g t/2) - (chi/g) sinh(g t/2) with g = sqrt(gamma^2), extended
/// through gamma^2 <= 0 as a real-analytic (even) function of g: the trig form
/// cos(|g| t/2) - (chi/|g|) sin(|g| t/2) for gamma^2 < 0, and 1 - chi t/2 at
/// gamma = 0.
double f_t(double u, double t, const ModelParams& p);

/// f_t divided by cosh(gamma t/2) on the hyperbolic branch (unchanged on the
/// trigonometric branch). Same sign and same zeros as f_t, but O(1) scale, so
/// root residuals stay meaningful when f_t itself is of size exp(gamma t/2).
double f_t_scaled(double u, double t, const ModelParams& p);

/// psi_t(u) = sinh(g t/2) u(u-1) / (g f_t(u)), same branch convention as f_t.
/// Throws std::domain_error once the moment has exploded (f_t(u) <= 0).
double psi_t(double u, double t, const ModelParams& p);

/// Cumulant generating function of X_t - X_0:
///   Lambda_t(u) = -(2b/alpha)(chi t/2 + log f_t) + psi_t v0 + (a/2) u(u-1) t,
/// finite exactly when the explosion time T*(u) exceeds t, +inf otherwise.
/// Returns exactly 0 at u = 0 and u = 1 (martingale normalisation).
ExtReal lambda_t(double u, double t, const ModelParams& p);

CriticalMoments critical_moments(const ModelParams& p);

/// T*(u) = inf{t > 0 : f_t(u) = 0}, +inf if f_t(u) never vanishes.
/// Hyperbolic branch (gamma^2 > 0): finite iff chi(u) > gamma(u), equal to
/// (2/gamma) atanh(gamma/chi). Trigonometric branch (gamma^2 < 0): first zero
/// of the phase, (2/|gamma|) atan2(|gamma|, chi).
ExtReal explosion_time(double u, const ModelParams& p);

/// Effective domain of Lambda_t for t > 0. Boundary roots of f_t are located
/// by scan plus bracketed bisection to 1e-12 in u; ubar(t) is the smallest
/// root in (1, u_+), ulow(t) the largest root in (u_-, 0).
FiniteTimeDomain domain_at(double t, const ModelParams& p);

}  // namespace asvlim
