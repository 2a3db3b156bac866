#pragma once

#include "hyperfc/check.hpp"
#include "hyperfc/models.hpp"
#include "hyperfc/opcalc.hpp"
#include "hyperfc/transforms.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

namespace hfc {

struct VariationSample {
    std::vector<double> points;  // strictly increasing
    std::vector<double> values;
};

// Exact maximum of (sum |h(x_{k+1}) - h(x_k)|^s)^(1/s) over all subsequences
// of the sample. Throws DomainError for s < 1 or fewer than two points.
double s_variation(const VariationSample& sample, double s);

// Exhaustive maximum over all subsequences; guards s_variation for n <= 16.
double s_variation_bruteforce(const VariationSample& sample, double s);

struct MultiplierNorm {
    double supNorm = 0.0;
    std::map<int, double> dyadicVariations;  // j -> max var_s over +-[2^j, 2^(j+1)]
    double msNorm = 0.0;                     // supNorm + max dyadic variation
    std::optional<double> l2Norm;            // over (0, 2^(jMax+1)] when requested
    int samplesPerInterval = 0;              // final mesh after refinement
};

struct DyadicRange {
    int jMin = -10;
    int jMax = 6;
};

// Samples h on a geometric mesh of each dyadic interval (closed, as h is
// continuous there). With refine, the mesh doubles until the M_s norm changes
// by less than 1e-3 relative (at most 16384 points per interval).
MultiplierNorm marcinkiewicz_norm(const RealFn& h, double s, DyadicRange range = {}, int samplesPerInterval = 256,
                                  bool refine = false, bool withL2 = false);

// g(x) = (2/pi) int_0^inf cos(lambda x) / cosh x ghat(lambda) d lambda.
SampledFunction g_from_ghat(const SpectralFunction& ghat, const GridPtr& grid);

// Samples ghat on [0, 40] (2000 points) with trapezoid weights.
SpectralFunction spectral_samples(const RealFn& ghat);

// Multiplier of Lambda_{A/omega}(g) on phi_lambda, mu = lambda / omega:
// (1/pi) int_0^inf g(t) cos(t mu) dt
//   = (1/2 pi) int_0^inf ghat(l) (sech(pi (l - mu)/2) + sech(pi (l + mu)/2)) dl.
double transfer_symbol(const RealFn& ghat, double mu);

// Lambda_{A/omega}(g) = (1/pi) int_0^inf cos(tA/omega) g(t) dt on the grid.
KernelMatrix transfer_matrix(const OperatorContext& ctx, const SampledFunction& g, double omega);

// T_{A/omega}(k) = int k(x) cosh x cos(xA/omega) dx for the cosh hypergroup.
KernelMatrix transfer_t(const OperatorContext& ctx, const SampledFunction& k, double omega);

// Factorization (printed and with the 1/pi prefactor), eigen-action against
// transfer_symbol, and the sampled norm against the M_s norm of ghat.
// Throws TruncationError when ghat or g is not negligible at the grid ends.
CheckReport transfer_apply(const OperatorContext& ctx, const RealFn& ghat, double omega, double s);

// Lambda(g) Lambda(h) against (1/pi^2) T(g/cosh * h/cosh), the convolution
// taken in the cosh hypergroup, compared on resolved probe data.
double transfer_product_residual(const OperatorContext& ctx, const RealFn& ghat, const RealFn& hhat, double omega);

// Largest sampled ||Lambda(g)||_p / ||ghat||_{M_s} over the multiplier set.
// On p = 2 it is checked against the spectral bound 1/pi.
CheckReport transfer_constant(const OperatorContext& ctx, std::span<const RealFn> ghats, double omega, double s);

// Random variation trials use `seed`; transfer checks run on the cosh model grid.
CheckReport multipliers_suite(std::uint64_t seed = 2024, double xMax = 30.0, int panels = 48);

}  // namespace hfc
