#include "asvlim/mgf.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace asvlim {

namespace {

// Even continuations of cosh and sinh in z = (gamma t/2)^2:
//   ce(z) = cosh(sqrt z)        (= cos(sqrt(-z)) for z < 0)
//   se(z) = sinh(sqrt z)/sqrt z (= sin(sqrt(-z))/sqrt(-z) for z < 0)
// Both are entire in z, so f_t and psi_t cross gamma^2 = 0 seamlessly.
double cosh_even(double z) {
    if (z > 1e-10) return std::cosh(std::sqrt(z));
    if (z < -1e-10) return std::cos(std::sqrt(-z));
    return 1.0 + z / 2.0 + z * z / 24.0;
}

double sinhc_even(double z) {
    if (z > 1e-10) {
        const double g = std::sqrt(z);
        return std::sinh(g) / g;
    }
    if (z < -1e-10) {
        const double g = std::sqrt(-z);
        return std::sin(g) / g;
    }
    return 1.0 + z / 6.0 + z * z / 120.0;
}

// Joint evaluation used by lambda_t: log f_t and psi_t, with an
// exponential-split branch once gamma t/2 is large enough that cosh/sinh
// would cancel or overflow. exploded is set when f_t(u) <= 0.
struct FtEval {
    double log_f = 0.0;
    double psi = 0.0;
    bool exploded = false;
};

FtEval eval_ft(double u, double t, const ModelParams& p) {
    FtEval out;
    const double h = 0.5 * t;
    const double c = chi(u, p);
    const double g2 = gamma_sq(u, p);
    const double z = g2 * h * h;
    const double uu1 = u * (u - 1.0);

    if (z > 625.0) {
        // f_t = e^{g}((1-r)/2 + (1+r)/2 e^{-2g}), r = chi/gamma
        const double g = std::sqrt(z);
        const double gamma = g / h;
        const double r = c / gamma;
        const double e2 = std::exp(-2.0 * g);
        const double d = (1.0 - r) + (1.0 + r) * e2;
        if (!(d > 0.0)) {
            out.exploded = true;
            return out;
        }
        out.log_f = g + std::log(0.5 * d);
        out.psi = uu1 * (1.0 - e2) / (gamma * d);
        return out;
    }

    const double ce = cosh_even(z);
    const double se = sinhc_even(z);
    const double f = ce - c * h * se;
    if (!(f > 0.0)) {
        out.exploded = true;
        return out;
    }
    out.log_f = std::log(f);
    out.psi = uu1 * h * se / f;
    return out;
}

}  // namespace

double chi(double u, const ModelParams& p) {
    return p.beta + u * p.rho * p.sqrt_alpha();
}

double gamma_sq(double u, const ModelParams& p) {
    const double c = chi(u, p);
    return c * c + p.alpha * u * (1.0 - u);
}

double f_t(double u, double t, const ModelParams& p) {
    const double h = 0.5 * t;
    const double z = gamma_sq(u, p) * h * h;
    return cosh_even(z) - chi(u, p) * h * sinhc_even(z);
}

double f_t_scaled(double u, double t, const ModelParams& p) {
    const double h = 0.5 * t;
    const double g2 = gamma_sq(u, p);
    const double z = g2 * h * h;
    if (z > 1e-10) {
        const double g = std::sqrt(z);
        const double r = chi(u, p) * h / g;
        return 1.0 - r * std::tanh(g);
    }
    return f_t(u, t, p);
}

double psi_t(double u, double t, const ModelParams& p) {
    const FtEval e = eval_ft(u, t, p);
    if (e.exploded)
        throw std::domain_error("psi_t: moment exploded (f_t <= 0)");
    return e.psi;
}

ExtReal lambda_t(double u, double t, const ModelParams& p) {
    // Lambda_t(0) = 0 and Lambda_t(1) = 0 hold exactly: u = 0 is the trivial
    // moment, u = 1 is the martingale property of e^X.
    if (u == 0.0 || u == 1.0 || t == 0.0) return ExtReal::finite(0.0);

    const ExtReal tstar = explosion_time(u, p);
    if (tstar <= t) return ExtReal::pos_inf();

    const FtEval e = eval_ft(u, t, p);
    if (e.exploded) return ExtReal::pos_inf();

    const double h = 0.5 * t;
    const double lam_h =
        -(2.0 * p.b / p.alpha) * (chi(u, p) * h + e.log_f) + e.psi * p.v0;
    return ExtReal::finite(lam_h + 0.5 * p.a * u * (u - 1.0) * t);
}

CriticalMoments critical_moments(const ModelParams& p) {
    const double sa = p.sqrt_alpha();
    const double s = 2.0 * p.beta * p.rho + sa;
    CriticalMoments cm;
    if (std::abs(p.rho) < 1.0) {
        // roots of alpha(1-rho^2) u^2 - sqrt(alpha) s u - beta^2; the root on
        // the same side as s is cancellation-free, the other comes from the
        // root product -beta^2/(alpha(1-rho^2)), which matters as |rho| -> 1
        const double one_m_r2 = 1.0 - p.rho * p.rho;
        const double xi = std::sqrt(s * s + 4.0 * p.beta * p.beta * one_m_r2);
        const double denom = 2.0 * sa * one_m_r2;
        if (p.beta == 0.0) {
            // roots are exactly {0, s / (sqrt(alpha)(1 - rho^2))}
            cm.u_minus = ExtReal::finite(std::min(0.0, s / (sa * one_m_r2)));
            cm.u_plus = ExtReal::finite(std::max(0.0, s / (sa * one_m_r2)));
            return cm;
        }
        const double product = -p.beta * p.beta / (p.alpha * one_m_r2);
        if (s >= 0.0) {
            const double up = (s + xi) / denom;
            cm.u_plus = ExtReal::finite(up);
            cm.u_minus = ExtReal::finite(product / up);
        } else {
            const double um = (s - xi) / denom;
            cm.u_minus = ExtReal::finite(um);
            cm.u_plus = ExtReal::finite(product / um);
        }
        return cm;
    }
    // |rho| = 1: gamma^2 is affine in u with slope sqrt(alpha) * s.
    const double root = -p.beta * p.beta / (sa * s);  // only used when s != 0
    cm.u_minus = (s <= 0.0) ? ExtReal::neg_inf() : ExtReal::finite(root);
    cm.u_plus = (s >= 0.0) ? ExtReal::pos_inf() : ExtReal::finite(root);
    return cm;
}

ExtReal explosion_time(double u, const ModelParams& p) {
    const double c = chi(u, p);
    const double g2 = gamma_sq(u, p);
    if (g2 > 0.0) {
        const double g = std::sqrt(g2);
        if (c > g) return ExtReal::finite((2.0 / g) * std::atanh(g / c));
        return ExtReal::pos_inf();
    }
    if (g2 == 0.0)
        return c > 0.0 ? ExtReal::finite(2.0 / c) : ExtReal::pos_inf();
    const double ag = std::sqrt(-g2);
    return ExtReal::finite((2.0 / ag) * std::atan2(ag, c));
}

FiniteTimeDomain domain_at(double t, const ModelParams& p) {
    if (!(t > 0.0)) throw std::invalid_argument("domain_at: t must be positive");

    const double chi0 = chi(0.0, p);
    const double chi1 = chi(1.0, p);
    const DomainCase cls = chi0 <= 0.0 ? (chi1 <= 0.0 ? DomainCase::IA : DomainCase::IB)
                                       : (chi1 <= 0.0 ? DomainCase::IIA : DomainCase::IIB);
    const CriticalMoments cm = critical_moments(p);

    FiniteTimeDomain d;
    d.t = t;
    d.cls = cls;
    d.lower = cm.u_minus;
    d.upper = cm.u_plus;

    const auto fs = [&](double u) { return f_t_scaled(u, t, p); };

    // Bisection for the first sign change of f_t, scanning kScan cells from
    // `from` toward `to`. Assumes f > 0 somewhere on the `from` side.
    const auto locate = [&](double from, double to, double& root) -> bool {
        constexpr int kScan = 512;
        double a = from;
        double fa = fs(a);
        if (!(fa > 0.0)) {
            // Root lies between the model boundary (1 or 0, where f > 0
            // always) and `from`; tighten the bracket to that sliver.
            const double boundary = (to > from) ? 1.0 : 0.0;
            double inner = std::nextafter(boundary, from);
            if (!(fs(inner) > 0.0)) {
                // Root within one ulp of the boundary; closest representable.
                root = inner;
                return true;
            }
            to = from;
            a = inner;
            fa = fs(a);
        }
        double prev = a;
        double fprev = fa;
        bool bracketed = false;
        for (int i = 1; i <= kScan; ++i) {
            const double x = a + (to - a) * (static_cast<double>(i) / kScan);
            const double fx = fs(x);
            if (fprev > 0.0 && !(fx > 0.0)) {
                a = prev;
                to = x;
                bracketed = true;
                break;
            }
            prev = x;
            fprev = fx;
        }
        if (!bracketed) return false;
        double lo = a, hi = to;
        while (std::abs(hi - lo) > 1e-12) {
            const double mid = 0.5 * (lo + hi);
            if (mid == lo || mid == hi) break;
            if (fs(mid) > 0.0)
                lo = mid;
            else
                hi = mid;
        }
        root = 0.5 * (lo + hi);
        return true;
    };

    // Upper boundary: smallest root of f_t in (1, u_+), cases IB and IIB.
    if (cls == DomainCase::IB || cls == DomainCase::IIB) {
        double hi;
        if (cm.u_plus.is_finite()) {
            hi = cm.u_plus.value() - 1e-12;
        } else {
            // Expand until f_t turns negative; T*(u) is decreasing out here.
            hi = 2.0;
            while (fs(hi) > 0.0 && hi < 1e6) hi *= 2.0;
        }
        double root;
        if (locate(1.0 + 1e-12, hi, root)) {
            d.upper = ExtReal::finite(root);
            d.upper_open = true;
            d.upper_is_root = true;
        }
    }

    // Lower boundary: largest root of f_t in (u_-, 0), cases IIA and IIB.
    if (cls == DomainCase::IIA || cls == DomainCase::IIB) {
        double lo;
        if (cm.u_minus.is_finite()) {
            lo = cm.u_minus.value() + 1e-12;
        } else {
            lo = -2.0;
            while (fs(lo) > 0.0 && lo > -1e6) lo *= 2.0;
        }
        double root;
        if (locate(-1e-12, lo, root)) {
            d.lower = ExtReal::finite(root);
            d.lower_open = true;
            d.lower_is_root = true;
        }
    }

    return d;
}

}  // namespace asvlim
