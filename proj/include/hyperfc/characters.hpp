#pragma once

#include "hyperfc/models.hpp"

#include <Eigen/Dense>

#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace hfc {

struct CharacterEval {
    cplx lambda;
    double x = 0.0;
    cplx value;
    std::optional<cplx> psi;         // sqrt(m) * value
    std::optional<cplx> rho;         // Volterra correction
    std::optional<cplx> besselPart;  // j_lambda(x)
};

// Laplace-representation measure tau_x on [-x, x]: point masses plus a
// symmetric density. The density is carried by a quadrature on [0, x] whose
// weights already include the density and the folding factor, so that
// integral g dtau = sum_atoms + sum_k w_k (g(t_k) + g(-t_k)).
struct MeasureRep {
    double x = 0.0;
    std::vector<std::pair<double, double>> atoms;  // (location, mass)
    RealFn density;                                // on (-x, x); empty when purely atomic
    std::vector<double> foldedNodes;
    std::vector<double> foldedWeights;
    double totalMass = 0.0;

    [[nodiscard]] cplx integrate(const std::function<cplx(double)>& g) const;
};

cplx phi_closed(const HypergroupModel& model, cplx lambda, double x);

// Integrates the eigen-equation from a Taylor seed at x0 = 1e-4 with an
// adaptive Dormand-Prince stepper. xTargets must be increasing and <= 50.
std::vector<CharacterEval> phi_ode(const WeightProfile& profile, cplx lambda,
                                   std::span<const double> xTargets);

// Normalized Bessel-type function with j_0(x) = x^(gamma+1/2).
cplx bessel_j(double gamma, cplx lambda, double x);

struct VolterraSolution {
    std::vector<CharacterEval> values;
    double normalization = 1.0;  // factor applied to psi / sqrt(m)
    int iterations = 0;
};

VolterraSolution phi_volterra(const WeightProfile& profile, cplx lambda, std::span<const double> xGrid);

// maxFrequency bounds |lambda| for which integrate() is resolved.
MeasureRep laplace_rep(const HypergroupModel& model, double x, double maxFrequency = 16.0);

cplx phi_from_laplace(const HypergroupModel& model, cplx lambda, double x);

// Integral of cosh(s u) against tau_x: the growth envelope of |phi_{t+is}(x)|.
double laplace_envelope(const HypergroupModel& model, double s, double x);

// phi_lambda(x) for real lambda: rows follow lambdas, columns follow xs.
Eigen::MatrixXd phi_table(const HypergroupModel& model, std::span<const double> lambdas,
                          std::span<const double> xs);

}  // namespace hfc
