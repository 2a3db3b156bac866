#pragma once

#include "hyperfc/check.hpp"
#include "hyperfc/models.hpp"

#include <functional>

namespace hfc {

using ComplexFn = std::function<cplx(double)>;

// Real fractional order alpha > 0.
class FracOrder {
  public:
    explicit FracOrder(double alpha);
    [[nodiscard]] double value() const { return alpha_; }

  private:
    double alpha_;
};

// (1/Gamma(a)) int_0^x (cosh x - cosh t)^(a-1) sinh t f(t) dt.
cplx w_alpha(const ComplexFn& f, FracOrder alpha, double x);
// (1/Gamma(b)) int_0^x (cosh x - cosh t)^(b-1) f(t) dt.
cplx u_beta(const ComplexFn& f, FracOrder beta, double x);

// Fourth-order central difference. Requires x >= 2h.
cplx central_derivative(const ComplexFn& F, double x, double h = 1e-4);

// n-fold g -> (g cosech)' by nested fourth-order stencils of step 1e-3; n <= 3, t >= 1e-2.
cplx d_s_power(const ComplexFn& g, int n, double t);

// nu = 0: both halves of the Mehler link. nu >= 1: the derivative relation
// as printed, and the relation d/dx U_{nu+1/2} = sinh x U_{nu-1/2}.
CheckReport mehler_dirichlet_check(int nu, double lambda, double x);

// Semigroup, left-inverse, Mehler and growth-bound identities at fixed sample points.
CheckReport fracint_suite();

// max over x of [W_n(cosh(omega0 .))(x) / sinh^n x] / [Gamma(omega0+1)/Gamma(omega0+n+1) cosh(omega0 x)].
double growth_bound_ratio(int n, double omega0, double xMin, double xMax, int samples);

}  // namespace hfc
