#include "asvlim/limit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace asvlim {

namespace {

constexpr double kOracleTruncation = 50.0;  // stand-in for an infinite domain end

}  // namespace

DomainClass classify(const ModelParams& p) {
    DomainClass c;
    c.chi0 = chi(0.0, p);
    c.chi1 = chi(1.0, p);
    c.variant = c.chi0 <= 0.0 ? (c.chi1 <= 0.0 ? DomainCase::IA : DomainCase::IB)
                              : (c.chi1 <= 0.0 ? DomainCase::IIA : DomainCase::IIB);
    return c;
}

LimitCgf boundary_limits(const ModelParams& p) {
    const DomainClass cls = classify(p);
    const CriticalMoments cm = critical_moments(p);
    const double sa = p.sqrt_alpha();
    const double rsa = p.rho * sa;

    LimitCgf L{p, cls, ExtReal(), ExtReal(), 0.0, 0.0, ExtReal(), ExtReal(),
               ExtReal(), ExtReal()};

    switch (cls.variant) {
        case DomainCase::IA: L.dom_lo = cm.u_minus; L.dom_hi = cm.u_plus; break;
        case DomainCase::IB: L.dom_lo = cm.u_minus; L.dom_hi = ExtReal::finite(1.0); break;
        case DomainCase::IIA: L.dom_lo = ExtReal::finite(0.0); L.dom_hi = cm.u_plus; break;
        case DomainCase::IIB: L.dom_lo = ExtReal::finite(0.0); L.dom_hi = ExtReal::finite(1.0); break;
    }

    // One-sided limits of Lambda and Lambda' at 0 and 1.
    L.lam0_plus = -(p.b / p.alpha) * (cls.chi0 + std::abs(cls.chi0));
    L.lam1_minus = -(p.b / p.alpha) * (cls.chi1 + std::abs(cls.chi1));

    if (cls.chi0 != 0.0) {
        L.dlam0_plus = ExtReal::finite(
            (rsa * L.lam0_plus - 0.5 * p.b) / std::abs(cls.chi0) - 0.5 * p.a);
    } else {
        L.dlam0_plus = p.b == 0.0 ? ExtReal::finite(-0.5 * p.a) : ExtReal::neg_inf();
    }
    if (cls.chi1 != 0.0) {
        L.dlam1_minus = ExtReal::finite(
            (rsa * L.lam1_minus + 0.5 * p.b) / std::abs(cls.chi1) + 0.5 * p.a);
    } else {
        L.dlam1_minus = p.b == 0.0 ? ExtReal::finite(0.5 * p.a) : ExtReal::pos_inf();
    }

    // Image Lambda'(D^o). A domain end at 0 or 1 carries its one-sided
    // derivative limit. A finite critical moment is steep iff b > 0; when
    // b = 0 the slope stays at the corner value (a/2)(2u - 1). An infinite
    // end (|rho| = 1 only) has Lambda' -> -b rho/sqrt(alpha) when a = 0.
    const auto corner_slope = [&](const ExtReal& end, bool is_upper) -> ExtReal {
        if (end.is_finite()) {
            if (p.b > 0.0) return is_upper ? ExtReal::pos_inf() : ExtReal::neg_inf();
            return ExtReal::finite(0.5 * p.a * (2.0 * end.value() - 1.0));
        }
        if (p.a > 0.0) return is_upper ? ExtReal::pos_inf() : ExtReal::neg_inf();
        return ExtReal::finite(-p.b * p.rho / sa);
    };

    const bool lo_at_zero = cls.variant == DomainCase::IIA || cls.variant == DomainCase::IIB;
    const bool hi_at_one = cls.variant == DomainCase::IB || cls.variant == DomainCase::IIB;
    L.conv_lo = lo_at_zero ? L.dlam0_plus : corner_slope(L.dom_lo, false);
    L.conv_hi = hi_at_one ? L.dlam1_minus : corner_slope(L.dom_hi, true);

    return L;
}

double limit_cgf_formula(double u, const LimitCgf& L) {
    const ModelParams& p = L.params;
    const double g2 = gamma_sq(u, p);
    const double g = std::sqrt(std::max(g2, 0.0));  // g2 >= 0 on the domain
    return -(p.b / p.alpha) * (chi(u, p) + g) + 0.5 * p.a * u * (u - 1.0);
}

ExtReal limit_cgf(double u, const LimitCgf& L) {
    if (u == 0.0 || u == 1.0) return ExtReal::finite(0.0);
    if (u < L.dom_lo || u > L.dom_hi) return ExtReal::pos_inf();
    return ExtReal::finite(limit_cgf_formula(u, L));
}

double limit_cgf_derivative(double u, const LimitCgf& L) {
    const ModelParams& p = L.params;
    if (!(u > L.dom_lo && u < L.dom_hi))
        throw std::domain_error("limit_cgf_derivative: u outside the domain interior");
    const double g2 = gamma_sq(u, p);
    if (!(g2 > 0.0))
        throw std::domain_error("limit_cgf_derivative: gamma(u) = 0 (domain boundary)");
    const double rsa = p.rho * p.sqrt_alpha();
    const double dg = (chi(u, p) * rsa + 0.5 * p.alpha * (1.0 - 2.0 * u)) / std::sqrt(g2);
    return -(p.b / p.alpha) * (rsa + dg) + 0.5 * p.a * (2.0 * u - 1.0);
}

namespace {

double u_star_closed_form(double x, const ModelParams& p) {
    const double sa = p.sqrt_alpha();
    if (std::abs(p.rho) < 1.0) {
        const double one_m_r2 = 1.0 - p.rho * p.rho;
        const double s = 2.0 * p.rho * p.beta + sa;
        const double xi = std::sqrt(s * s + 4.0 * p.beta * p.beta * one_m_r2);
        const double px = p.b * p.rho + x * sa;
        const double scale = px * xi / std::sqrt(px * px + p.b * p.b * one_m_r2);
        return (s + scale) / (2.0 * one_m_r2 * sa);
    }
    const double num1 = p.b - 2.0 * p.beta * x;
    const double den1 = 2.0 * p.beta + p.rho * sa;
    const double num2 = 4.0 * p.b * p.beta + p.rho * (p.b + 2.0 * p.beta * x) * sa;
    const double den2 = p.b * p.rho + x * sa;
    return 0.25 * (num1 / den1) * (num2 / (den2 * den2));
}

double u_star_bisect(double x, const LimitCgf& L) {
    // Lambda' is continuous and strictly increasing on the interior, so a
    // plain bisection is unconditionally safe (Newton is not: the derivative
    // blows up at steep ends).
    const auto slope = [&L](double u) { return limit_cgf_derivative(u, L); };

    // Inset from a finite end until the slope clears x; gamma^2 can round to
    // zero right at a critical moment, which counts as infinitely steep.
    const auto inset_end = [&](double base, double span, int dir) {
        double d = 1e-6 * span;
        while (d > 1e-300) {
            const double u = base + dir * d;
            const double g2 = gamma_sq(u, L.params);
            if (!(g2 > 0.0)) break;
            const double s = slope(u);
            if ((dir > 0 && s <= x) || (dir < 0 && s >= x)) break;
            d *= 0.25;
        }
        if (!(d > 1e-300)) throw std::domain_error("u_star: bracket failure");
        return base + dir * d;
    };

    const double span =
        (L.dom_hi.is_finite() && L.dom_lo.is_finite())
            ? L.dom_hi.value() - L.dom_lo.value()
            : 1.0;
    double lo, hi;
    if (L.dom_lo.is_finite()) {
        lo = inset_end(L.dom_lo.value(), span, +1);
    } else {
        lo = -1.0;
        while (slope(lo) > x && lo > -1e9) lo *= 2.0;
    }
    if (L.dom_hi.is_finite()) {
        hi = inset_end(L.dom_hi.value(), span, -1);
    } else {
        hi = 1.0;
        while (slope(hi) < x && hi < 1e9) hi *= 2.0;
    }

    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        if (slope(mid) < x)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

double u_star(double x, const LimitCgf& L) {
    if (!(L.conv_lo < x && x < L.conv_hi))
        throw std::domain_error("u_star: x outside the strictly convex range");
    if (L.params.a == 0.0) return u_star_closed_form(x, L.params);
    return u_star_bisect(x, L);
}

RateEval rate(double x, const LimitCgf& L) {
    RateEval r;
    r.x = x;

    if (L.conv_lo < x && x < L.conv_hi) {
        const double ux = u_star(x, L);
        r.value = x * ux - limit_cgf_formula(ux, L);
        r.u_star = ux;
        r.region = RateRegion::Convex;
        return r;
    }

    const bool hi_at_one =
        L.cls.variant == DomainCase::IB || L.cls.variant == DomainCase::IIB;
    const bool lo_at_zero =
        L.cls.variant == DomainCase::IIA || L.cls.variant == DomainCase::IIB;

    if (x >= L.conv_hi) {
        // Degenerate |rho| = 1, a = 0 model with a linear Lambda: the
        // transform is finite only at the single slope value.
        if (L.conv_lo == L.conv_hi && L.dom_lo.is_infinite() && L.dom_hi.is_infinite() &&
            x == L.conv_hi) {
            r.value = -L.lam0_plus;
            r.region = RateRegion::AffineLeft;
            return r;
        }
        r.region = RateRegion::AffineRight;
        if (hi_at_one)
            r.value = x - L.lam1_minus;
        else if (L.dom_hi.is_finite())  // b = 0: supremum sits at the corner u_+
            r.value = x * L.dom_hi.value() - limit_cgf_formula(L.dom_hi.value(), L);
        else  // |rho| = 1 wall: X_t/t cannot reach beyond the slope limit
            r.value = std::numeric_limits<double>::infinity();
        return r;
    }

    r.region = RateRegion::AffineLeft;
    if (lo_at_zero)
        r.value = -L.lam0_plus;
    else if (L.dom_lo.is_finite())
        r.value = x * L.dom_lo.value() - limit_cgf_formula(L.dom_lo.value(), L);
    else
        r.value = std::numeric_limits<double>::infinity();
    return r;
}

double rate_oracle(double x, const LimitCgf& L, std::size_t n_grid) {
    if (n_grid < 1000)
        throw std::invalid_argument("rate_oracle: n_grid must be at least 1000");

    const double lo =
        L.dom_lo.is_finite() ? L.dom_lo.value() + 1e-9 : -kOracleTruncation;
    const double hi =
        L.dom_hi.is_finite() ? L.dom_hi.value() - 1e-9 : kOracleTruncation;

    const auto g = [&](double u) { return x * u - limit_cgf_formula(u, L); };

    double best = -std::numeric_limits<double>::infinity();
    std::size_t best_i = 0;
    const double step = (hi - lo) / static_cast<double>(n_grid - 1);
    for (std::size_t i = 0; i < n_grid; ++i) {
        const double u = lo + step * static_cast<double>(i);
        const double v = g(u);
        if (v > best) {
            best = v;
            best_i = i;
        }
    }

    // One golden-section refinement around the grid argmax; g is concave on
    // the bracket, hence unimodal.
    double a = lo + step * static_cast<double>(best_i > 0 ? best_i - 1 : 0);
    double b = lo + step * static_cast<double>(std::min(best_i + 1, n_grid - 1));
    constexpr double kInvPhi = 0.6180339887498949;
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double gc = g(c), gd = g(d);
    for (int it = 0; it < 200 && (b - a) > 1e-14 * std::max(1.0, std::abs(a)); ++it) {
        if (gc > gd) {
            b = d;
            d = c;
            gd = gc;
            c = b - kInvPhi * (b - a);
            gc = g(c);
        } else {
            a = c;
            c = d;
            gc = gd;
            d = a + kInvPhi * (b - a);
            gd = g(d);
        }
        best = std::max(best, std::max(gc, gd));
    }
    return best;
}

double rate_share(double x, const LimitCgf& L) { return rate(x, L).value - x; }

}  // namespace asvlim
