#pragma once

#include "hyperfc/check.hpp"
#include "hyperfc/models.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace hfc {

enum class Truncation { reject, allow };

// Closed-form cosine family cos(tA) with A^2 = L - omega0^2 on the cosh and
// sl2c models, evaluated off the grid through the interpolated translate
// H = h cosh (even extension) or H = h sinh (odd extension).
class CosineFamily {
  public:
    CosineFamily(const HypergroupModel& model, const SampledFunction& h);

    // (cos(tA) h)(s) for s >= 0; zero extension beyond the grid.
    [[nodiscard]] double operator()(double s, double t) const;
    [[nodiscard]] const SampledFunction& data() const { return h_; }

  private:
    ModelTag tag_;
    SampledFunction h_;
    Interpolant translate_;
};

struct WaveState {
    GridPtr grid;
    std::vector<double> u;
    double t = 0.0;
    ModelTag model = ModelTag::cosh;
};

// With Truncation::reject, throws TruncationError when support(h) + |t| > xMax
// (the overshoot is the measured value).
SampledFunction cosine_apply(const HypergroupModel& model, double t, const SampledFunction& h,
                             Truncation policy = Truncation::reject);
WaveState wave_state(const HypergroupModel& model, double t, const SampledFunction& h);

// max over nodes with 2 delta <= x <= xMax - |t| - 2 delta of |u_tt + (L - omega0^2) u|,
// all derivatives by second differences of step delta.
double wave_residual(const HypergroupModel& model, const SampledFunction& h, double t, double delta = 1e-3);
// max |u(., delta) - u(., -delta)| / (2 delta).
double initial_velocity(const HypergroupModel& model, const SampledFunction& h, double delta = 1e-3);

// Outermost node where |cos(tA) h| > 1e-10.
double support_radius(const HypergroupModel& model, double t, const SampledFunction& h);

// Analytic constant of the two-translate bound on L^p(cosh^2):
// ||cos(tA)|| <= c_p (cosh t)^((p-2)/p).
double cosh_growth_constant(double p);

// Random sums of smooth compact bumps on the grid.
std::vector<SampledFunction> random_bumps(const GridPtr& grid, int count, double maxSupport, std::uint64_t seed);

CheckReport norm_growth(const HypergroupModel& model, double p, std::span<const double> tList, int trials,
                        std::uint64_t seed = 1);

// Normalized spherical average on the radial H^3 grid (law of cosines).
SampledFunction spherical_mean(double t, const SampledFunction& f, Truncation policy = Truncation::reject);

// W_n / U_n applied to the cosine family at time t:
// (1/(n-1)!) int_0^t (cosh t - cosh s)^(n-1) [sinh s] cos(sA) h ds by Gauss-Legendre in s.
enum class TimeKernel { w, u };
SampledFunction time_integral(const HypergroupModel& model, TimeKernel kernel, int n, double t,
                              const SampledFunction& h, int nodes = 32);

// W_1(cos(.A)) f = sinh^2 t A_t f as printed, and U_1(cos(.A)) f = sinh t A_t f,
// on the sl2c grid plus the scalar reductions at lambda = 1.5.
CheckReport frac_wave_check(double t, const SampledFunction& f);

// ||W_n(cos(.A)) h||_p / (||h||_p sinh^n t) against M0 Gamma(w+1)/Gamma(w+n+1) cosh(w t) (1 + 0.1)
// with w = (p-2)/p and M0 measured on the same data.
CheckReport wn_growth(const HypergroupModel& model, int n, std::span<const double> tList, double p = 2.0,
                      int trials = 8, std::uint64_t seed = 1);

}  // namespace hfc
