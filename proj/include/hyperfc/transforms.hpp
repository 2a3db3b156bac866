#pragma once

#include "hyperfc/check.hpp"
#include "hyperfc/models.hpp"

#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace hfc {

struct SpectralFunction {
    std::vector<double> lambdaNodes;
    std::vector<cplx> values;
    std::vector<double> quadWeights;
    std::vector<double> plancherelWeights;  // pi0(lambda_j) * w_j

    [[nodiscard]] std::size_t size() const { return lambdaNodes.size(); }
};

// Uniform nodes on [0, lambdaMax].
std::vector<double> lambda_grid(double lambdaMax = 12.0, int count = 600);

// Trapezoid weights of increasing nodes.
std::vector<double> trapezoid_weights(std::span<const double> nodes);

// Calibrated Plancherel density c * shape(lambda). The constant c is fitted
// once per model by a Gaussian round trip and cached.
double plancherel_constant(ModelTag tag);
double plancherel_density(const HypergroupModel& model, double lambda);

// Calibration record: the fitted constant of each model, and for sl2c the
// constant measured against both candidate densities lambda^2/(4 pi) and
// lambda^2/(2 pi).
CheckReport plancherel_calibration();

// Forward envelope tail |f(X) m(X) phi_0(X)| at the last grid node.
double forward_tail(const HypergroupModel& model, const SampledFunction& f);

constexpr double tailLimit = 1e-10;

// Throws TruncationError when the tail exceeds tailLimit.
SpectralFunction forward(const HypergroupModel& model, const SampledFunction& f,
                         std::span<const double> lambdaNodes);
SampledFunction inverse(const HypergroupModel& model, const SpectralFunction& fhat, const GridPtr& grid);

// Hypergroup convolution on the grid shared by f and g.
SampledFunction convolve(const HypergroupModel& model, const SampledFunction& f,
                         const SampledFunction& g);

double product_formula_residual(const HypergroupModel& model, cplx lambda, double x, double y);

// Transform-pair table for powers of sech(x/2) on the mehler model.
CheckReport pair_table();

struct VenturiRegion {
    double theta = 0.0;
    double omega = 0.0;
};

bool venturi_contains(cplx z, const VenturiRegion& region);

struct VenturiProbe {
    double sup = 0.0;      // sup |f| on the sampled mesh
    double supK = 0.0;     // sup |z^k f|
    cplx argSup;           // where sup |f| is attained
    std::vector<cplx> poles;
    bool blowUp = false;
    CheckReport report;
};

// Samples f on the boundary of the region moved 1e-2 inward, truncated to
// |z| <= 50, plus the real segment; disks of radius 1e-3 around detected
// poles are excluded. Blow-up is flagged when a sample exceeds 1e6 or a pole
// lies within 0.02 of the region.
VenturiProbe venturi_norm_probe(const std::function<cplx(cplx)>& f, const VenturiRegion& region, int k);

// Two-column CSV with a header line and 17 significant digits.
void write_curve_csv(const std::filesystem::path& path, const std::string& header,
                     std::span<const double> xs, std::span<const double> ys);

}  // namespace hfc
