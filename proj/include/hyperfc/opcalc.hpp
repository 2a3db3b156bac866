#pragma once

#include "hyperfc/check.hpp"
#include "hyperfc/models.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace hfc {

// Grid operator K acting as (K h)_i = sum_j entries(i, j) h_j colMeasure_j.
struct KernelMatrix {
    Eigen::MatrixXd entries;
    std::vector<double> rowMeasure;
    std::vector<double> colMeasure;

    [[nodiscard]] std::vector<double> apply(std::span<const double> h) const;
    // Plain matrix of the action, entries(i, j) colMeasure_j.
    [[nodiscard]] Eigen::MatrixXd action() const;
    static KernelMatrix from_action(const Eigen::MatrixXd& action, const Grid& grid);
};

using MatrixApplier = std::function<Eigen::MatrixXd(double)>;

// Discretized cosine family on L^p(m) over a grid of the cosh or sl2c model.
// cosineApplier(t) is the matrix of cos(tA) built from the panel interpolant;
// phiAApplier(x) integrates it against the Laplace-representation measure.
struct OperatorContext {
    HypergroupModel model;
    GridPtr grid;
    MatrixApplier cosineApplier;
    MatrixApplier phiAApplier;
    double p = 2.0;
};

OperatorContext discretize(const HypergroupModel& model, const GridPtr& grid, double p = 2.0);

// Adds coeff * cos(tA) to the matrix `into` (grid.size() square).
void add_cosine(const OperatorContext& ctx, double t, double coeff, Eigen::MatrixXd& into);

// T_A(f) = int f(x) phi_A(x) m(x) dx as the kernel matrix (tau_s f)(y) of
// convolution by f, the x integral carried out through the product formula.
KernelMatrix t_a(const OperatorContext& ctx, const SampledFunction& f);

// The same operator as a quadrature over x of cosine matrices: atoms of tau_x
// on the cosh model, the running integral of f m / sinh on the sl2c model.
// Accurate on grid data resolved by the panel interpolant.
KernelMatrix t_a_cosine(const OperatorContext& ctx, const SampledFunction& f);

// Random sums of even-symmetrized Gaussians (widths 0.5 to 1.5, centres in
// [0, 6]): resolved on the grid and smooth under the even and odd extensions
// used by the cosine families.
std::vector<SampledFunction> smooth_probes(const GridPtr& grid, int count, std::uint64_t seed);

// Node indices with x <= min(0.9 xMax, xMax - reach).
std::vector<std::size_t> interior_nodes(const Grid& grid, double reach = 0.0);

// max over lambdas of ||T_A(f) phi_lambda - fhat(lambda) phi_lambda|| / ||phi_lambda||
// on the interior rows, fhat from the forward transform.
double diagonalization_residual(const OperatorContext& ctx, const SampledFunction& f,
                                std::span<const double> lambdas);

// Relative Hilbert-Schmidt distance on L^2(m) of T_A(f*g) and T_A(f) T_A(g),
// restricted to the interior block.
double homomorphism_residual(const OperatorContext& ctx, const SampledFunction& f, const SampledFunction& g);

// Time cutoff T with |Ff(T)| cosh(omega0 T) < 1e-12, searched on [0, tMax].
// Throws TruncationError when the decay is not reached.
double time_cutoff(const RealFn& fourier, double omega0, double tMax = 60.0);

// (1/pi) int_0^T Ff(xi) cos(xi lambda) d xi, the even Fourier inversion at lambda.
double inverse_fourier_cosine(const RealFn& fourier, double lambda, double cutoff);

// f(A) = (1/2 pi) int Ff(t) cos(tA) dt over |t| <= T for even f.
KernelMatrix lambda_fc(const OperatorContext& ctx, const RealFn& fourier);

// ||f(A) phi_lambda - s phi_lambda|| / ||phi_lambda|| on rows x <= xMax - T,
// with s the scalar Fourier inversion of Ff at lambda.
double multiplier_residual(const OperatorContext& ctx, const RealFn& fourier, double lambda);

// f = H_{2 nu}(z) exp(-z^2) with Ff(xi) = sqrt(pi) (-1)^nu xi^(2 nu) exp(-xi^2 / 4).
struct HermiteExample {
    int nu = 0;
    RealFn f;
    RealFn fourier;
};

HermiteExample hermite_example(int nu);

// max over xi in {0.5, 1, ..., 6} of |Ff(xi) - int f(x) cos(x xi) dx| with the
// integral by Gauss-Hermite quadrature of f(x) exp(x^2).
double hermite_fourier_error(const HermiteExample& ex);

// int x^j f(x) dx for j = 0..maxPower by Gauss-Hermite quadrature.
std::vector<double> hermite_moments(const HermiteExample& ex, int maxPower);

// max(sup_i sum_j |K_ij| colMeasure_j, sup_j sum_i |K_ij| rowMeasure_i).
double schur_bound(const KernelMatrix& k);

// Largest ||K h||_p / ||h||_p over the given vectors, norms weighted by the
// row and column measures.
double sampled_norm(const KernelMatrix& k, std::span<const std::vector<double>> hs, double p);

// sup_x int cosh(omega0 u) tau_x(du) over the grid nodes.
double measured_m0(const HypergroupModel& model, const Grid& grid);

// Operator-calculus checks on one model (cosh or sl2c).
CheckReport opcalc_suite(ModelTag tag, double xMax = 30.0, int panels = 48);

}  // namespace hfc
