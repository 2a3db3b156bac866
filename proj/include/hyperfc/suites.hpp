#pragma once

#include "hyperfc/check.hpp"
#include "hyperfc/models.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace hfc {

// Grid override for the grid-based suites; unset fields keep each suite's default.
struct GridSpec {
    std::optional<double> xMax;
    std::optional<int> panels;
};

struct SuiteOptions {
    std::optional<ModelTag> model;  // unset: every model the suite supports
    GridSpec grid;
    std::uint64_t seed = 2024;
};

std::span<const std::string_view> suite_names();  // includes "all"
bool suite_supports(std::string_view suite, ModelTag tag);

// ODE against closed forms (mehler: against the Laplace quadrature), the
// Volterra engine, and the Laplace representation at complex lambda.
CheckReport characters_suite(ModelTag tag);

// Round trip, Plancherel energy, product formula lattice, convolution
// homomorphism; on mehler the transform-pair table as well.
CheckReport transforms_suite(ModelTag tag, const GridSpec& grid = {});

// Eigen-action, wave equation, finite propagation speed, L^p growth (cosh),
// and the fractional wave identity on H^3 (sl2c).
CheckReport waves_suite(ModelTag tag, const GridSpec& grid = {}, std::uint64_t seed = 2024);

// Runs a named suite; check names are prefixed "<suite>.<model>." for
// model-dependent suites. Throws ConfigError for an unknown suite or a model
// the suite does not support.
CheckReport run_suite(std::string_view suite, const SuiteOptions& options);

}  // namespace hfc
