#pragma once

#include <cmath>

namespace asvlim {

/// Parameters of the continuous affine stochastic volatility model
///
///   dX = -(a + V)/2 dt + rho sqrt(V) dW1 + sqrt(a + (1 - rho^2) V) dW2
///   dV = (b + beta V) dt + sqrt(alpha V) dW1
///
/// The classic Heston model is a = 0, b = kappa*theta, beta = -kappa,
/// alpha = sigma^2. Inadmissible values are rejected at construction.
struct ModelParams {
    double a;      // constant part of the instantaneous variance of X, a >= 0
    double b;      // constant drift of V, b >= 0
    double alpha;  // squared vol-of-variance, alpha > 0
    double beta;   // linear drift coefficient of V
    double rho;    // correlation, in [-1, 1]
    double v0;     // initial variance, v0 > 0
    double x0;     // initial log price

    ModelParams(double a_, double b_, double alpha_, double beta_, double rho_,
                double v0_, double x0_ = 0.0);

    double sqrt_alpha() const { return std::sqrt(alpha); }
};

}  // namespace asvlim
