#include "asvlim/model.hpp"

#include <stdexcept>

namespace asvlim {

ModelParams::ModelParams(double a_, double b_, double alpha_, double beta_,
                         double rho_, double v0_, double x0_)
    : a(a_), b(b_), alpha(alpha_), beta(beta_), rho(rho_), v0(v0_), x0(x0_) {
    if (!(a >= 0.0)) throw std::invalid_argument("a must be nonnegative");
    if (!(b >= 0.0)) throw std::invalid_argument("b must be nonnegative");
    if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
    if (!(beta == beta)) throw std::invalid_argument("beta must be a real number");
    if (!(rho >= -1.0 && rho <= 1.0))
        throw std::invalid_argument("rho must lie in [-1,1]");
    if (!(v0 > 0.0)) throw std::invalid_argument("v0 must be positive");
    if (!(x0 == x0)) throw std::invalid_argument("x0 must be a real number");
}

}  // namespace asvlim
