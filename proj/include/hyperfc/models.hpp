#pragma once

#include "hyperfc/check.hpp"

#include <complex>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hfc {

using cplx = std::complex<double>;
using RealFn = std::function<double(double)>;

enum class ModelTag { cosh, mehler, sl2c };

ModelTag parse_model(std::string_view name);
std::string_view model_name(ModelTag tag);

// Invariant-measure density m(x) = x^(2*gamma+1) q(x) together with the
// exponential rate omega0. Optional analytic hooks replace finite differences.
struct WeightProfile {
    double gamma = 0.5;
    double omega0 = 0.0;
    RealFn m;
    RealFn mLogDerivative;   // m'/m
    RealFn qLogDerivative;   // q'/q
    RealFn qLogDerivative2;  // (q'/q)'

    [[nodiscard]] double q(double x) const;
    [[nodiscard]] double bigQ(double x) const;
    [[nodiscard]] double log_derivative(double x) const;
};

WeightProfile make_profile(double gamma, double omega0, RealFn m);

// Radial profile of real hyperbolic space of dimension k+1:
// m(x) = (2 sinh x)^k, gamma = (k-1)/2, omega0 = k/2.
WeightProfile hyperbolic_profile(int k);

struct QValues {
    double q;
    double bigQ;
};

QValues q_profile(const WeightProfile& profile, double x);

CheckReport validate_weight(const WeightProfile& profile);

struct HypergroupModel {
    ModelTag tag;
    WeightProfile profile;
    RealFn plancherel;  // Plancherel density shape on [0, inf)
    std::optional<cplx> trivialCharacterPoint;
    bool chebliTrimeche = true;
};

HypergroupModel build_model(ModelTag tag);
HypergroupModel build_model(std::string_view name);

// Closed form of the integral of m over [0, X] for the built-in models.
double m_integral(ModelTag tag, double X);

// Composite Gauss-Legendre grid on (0, xMax] with measure weights m(x_j) w_j.
struct Grid {
    double xMax = 0.0;
    int panels = 0;
    int order = 0;
    std::vector<double> breaks;
    std::vector<double> nodes;
    std::vector<double> quadWeights;
    std::vector<double> measureWeights;
    std::vector<double> mValues;

    [[nodiscard]] std::size_t size() const { return nodes.size(); }
    [[nodiscard]] int panel_of(double x) const;
    // Barycentric Lagrange weights of the panel containing x. Returns the index
    // of the first node of that panel; w must hold `order` entries.
    std::size_t lagrange_weights(double x, std::span<double> w) const;
    // Mean node spacing.
    [[nodiscard]] double spacing() const { return xMax / static_cast<double>(size()); }

  private:
    friend std::shared_ptr<const Grid> make_grid(const WeightProfile&, double, int, int);
    std::vector<double> bary_;
};

using GridPtr = std::shared_ptr<const Grid>;

GridPtr make_grid(const WeightProfile& profile, double xMax = 20.0, int panels = 32, int order = 16);

struct SampledFunction {
    GridPtr grid;
    std::vector<double> values;

    [[nodiscard]] std::size_t size() const { return values.size(); }
};

SampledFunction sample(const GridPtr& grid, const RealFn& f);

// Piecewise-polynomial reconstruction of grid data: panel-local Lagrange
// interpolation and running integrals. Zero outside (0, xMax].
class Interpolant {
  public:
    explicit Interpolant(const SampledFunction& f);

    double operator()(double x) const;
    // Integral of the reconstruction over [0, min(x, xMax)].
    [[nodiscard]] double integral_to(double x) const;

  private:
    GridPtr grid_;
    std::vector<double> values_;
    std::vector<double> prefix_;
};

// Outermost node where |f| exceeds the threshold; 0 if none.
double support_of(const SampledFunction& f, double threshold = 1e-12);

double lp_norm(const Grid& grid, std::span<const double> f, double p);
double lp_norm(const SampledFunction& f, double p);

}  // namespace hfc
