#include "hyperfc/suites.hpp"

#include "hyperfc/characters.hpp"
#include "hyperfc/errors.hpp"
#include "hyperfc/fracint.hpp"
#include "hyperfc/multipliers.hpp"
#include "hyperfc/opcalc.hpp"
#include "hyperfc/transforms.hpp"
#include "hyperfc/waves.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

namespace hfc {
namespace {

constexpr std::array<std::string_view, 7> names{"characters", "transforms", "fracint", "waves",
                                                "opcalc",     "multipliers", "all"};
constexpr std::array<ModelTag, 3> allModels{ModelTag::cosh, ModelTag::mehler, ModelTag::sl2c};

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = a + (b - a) * i / (n - 1);
    return v;
}

std::string label(double v) {
    std::string s = std::to_string(v);
    s.erase(s.find_last_not_of('0') + 1);
    if (s.back() == '.') s.pop_back();
    return s;
}

GridPtr grid_for(const HypergroupModel& model, const GridSpec& spec, double xMax, int panels) {
    return make_grid(model.profile, spec.xMax.value_or(xMax), spec.panels.value_or(panels));
}

double relative_l2(const SampledFunction& a, const SampledFunction& b) {
    double num = 0.0;
    double den = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const double w = a.grid->measureWeights[j];
        num += std::pow(a.values[j] - b.values[j], 2) * w;
        den += b.values[j] * b.values[j] * w;
    }
    return std::sqrt(num / den);
}

double bump(double x, double c, double r) {
    const double u = (x - c) / r;
    return std::abs(u) < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - u * u)) : 0.0;
}

bool model_dependent(std::string_view suite) { return suite != "fracint" && suite != "multipliers"; }

}  // namespace

std::span<const std::string_view> suite_names() { return names; }

bool suite_supports(std::string_view suite, ModelTag tag) {
    if (suite == "waves" || suite == "opcalc") return tag != ModelTag::mehler;
    return std::find(names.begin(), names.end(), suite) != names.end();
}

CheckReport characters_suite(ModelTag tag) {
    const auto model = build_model(tag);
    CheckReport r;
    const auto xs = linspace(0.1, 8.0, 80);
    const std::string route = tag == ModelTag::mehler ? "ode_vs_laplace" : "ode_vs_closed";
    for (double l : {0.5, 1.0, 2.0, 4.0}) {
        const auto ev = phi_ode(model.profile, l, xs);
        double worst = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i)
            worst = std::max(worst, std::abs(ev[i].value - phi_closed(model, l, xs[i])));
        r.at_most(route + "(lambda=" + label(l) + ")", "phi_ode = phi_closed on x in [0.1, 8]", worst, 1e-6);
    }
    const cplx complexLambda(2.0, 0.4);
    for (double x : {0.5, 3.0}) {
        r.at_most("laplace(x=" + label(x) + ")", "phi_lambda(x) = int cos(lambda t) tau_x(dt)",
                  std::abs(phi_from_laplace(model, complexLambda, x) - phi_closed(model, complexLambda, x)), 1e-6);
        r.at_most("laplace.envelope(x=" + label(x) + ")", "|phi_{l+is}| <= int cosh(s t) tau_x(dt)",
                  std::abs(phi_from_laplace(model, complexLambda, x)) - laplace_envelope(model, 0.4, x), 0.0);
    }
    if (tag == ModelTag::sl2c) {
        const auto grid = linspace(0.1, 5.0, 25);
        double rho = 0.0;
        double gap = 0.0;
        for (double l : {0.5, 2.0})
            for (const auto& e : phi_volterra(model.profile, l, grid).values) {
                rho = std::max(rho, std::abs(*e.rho));
                gap = std::max(gap, std::abs(e.value - phi_closed(model, l, e.x)));
            }
        r.at_most("volterra.correction", "rho = 0 for m = 4 sinh^2", rho, 1e-12);
        r.at_most("volterra.closed", "Volterra = closed form", gap, 1e-10);

        const auto cubic = hyperbolic_profile(3);
        const auto xsCubic = linspace(0.1, 5.0, 50);
        double worst = 0.0;
        for (double l : {0.5, 1.0, 2.0}) {
            const auto v = phi_volterra(cubic, l, xsCubic);
            const auto o = phi_ode(cubic, l, xsCubic);
            for (std::size_t i = 0; i < xsCubic.size(); ++i)
                worst = std::max(worst, std::abs(v.values[i].value - o[i].value));
        }
        r.at_most("volterra.cubic_vs_ode", "Volterra = ODE for m = 8 sinh^3 on [0.1, 5]", worst, 1e-5);
    }
    return r;
}

CheckReport transforms_suite(ModelTag tag, const GridSpec& spec) {
    const auto model = build_model(tag);
    const auto grid = grid_for(model, spec, 20.0, 32);
    CheckReport r;

    const auto f = sample(grid, [](double x) { return std::exp(-x * x) * (1.0 + x * x); });
    const auto fh = forward(model, f, lambda_grid());
    r.at_most("round_trip", "inverse(forward f) = f, relative L2(m)", relative_l2(inverse(model, fh, grid), f), 1e-4);
    double lhs = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j) lhs += f.values[j] * f.values[j] * grid->measureWeights[j];
    double rhs = 0.0;
    for (std::size_t i = 0; i < fh.size(); ++i) rhs += std::norm(fh.values[i]) * fh.plancherelWeights[i];
    r.at_most("plancherel.energy", "int |f|^2 m = int |fhat|^2 pi0", std::abs(lhs - rhs) / lhs, 1e-4);

    double worstProduct = 0.0;
    for (double l : {0.5, 1.5, 3.0})
        for (double x : {0.3, 1.0, 2.5})
            for (double y : {0.3, 1.0, 2.5}) worstProduct = std::max(worstProduct, product_formula_residual(model, l, x, y));
    r.at_most("product_formula", "phi(x) phi(y) = int phi d(delta_x * delta_y), 3x3x3 lattice", worstProduct,
              tag == ModelTag::mehler ? 1e-4 : 1e-8);

    const auto g = sample(grid, [](double x) { return (1.0 + x * x) * std::exp(-2.0 * x * x); });
    const auto e = sample(grid, [](double x) { return std::exp(-x * x); });
    const auto lambdas = lambda_grid(8.0, 81);
    const auto conv = forward(model, convolve(model, e, g), lambdas);
    const auto eh = forward(model, e, lambdas);
    const auto gh = forward(model, g, lambdas);
    double scale = 0.0;
    double err = 0.0;
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        const cplx prod = eh.values[i] * gh.values[i];
        scale = std::max(scale, std::abs(prod));
        err = std::max(err, std::abs(conv.values[i] - prod));
    }
    r.at_most("convolution.homomorphism", "(f * g)^ = fhat ghat", err / scale, 1e-4);

    const auto calibration = plancherel_calibration();
    const std::string prefix(model_name(tag));
    for (const auto& c : calibration.checks)
        if (c.name.starts_with(prefix + ".")) r.checks.push_back(c);
    if (tag == ModelTag::mehler) r.append(pair_table(), "pairs");
    return r;
}

CheckReport waves_suite(ModelTag tag, const GridSpec& spec, std::uint64_t seed) {
    if (tag == ModelTag::mehler) throw ConfigError("the waves suite needs the cosh or sl2c model");
    const auto model = build_model(tag);
    const auto grid = grid_for(model, spec, 20.0, 32);
    CheckReport r;

    for (double lambda : {0.5, 1.0, 2.0, 4.0}) {
        const auto phi = sample(grid, [&](double x) { return phi_closed(model, lambda, x).real(); });
        double worst = 0.0;
        for (double t : {0.5, 1.0, 3.0}) {
            const auto u = cosine_apply(model, t, phi, Truncation::allow);
            for (std::size_t j = 0; j < grid->size(); ++j)
                if (grid->nodes[j] + t <= grid->xMax)
                    worst = std::max(worst, std::abs(u.values[j] - std::cos(lambda * t) * phi.values[j]));
        }
        r.at_most("eigen_action(lambda=" + label(lambda) + ")", "cos(tA) phi = cos(lambda t) phi, t <= 3", worst, 1e-6);
    }

    const auto h = sample(grid, [](double x) { return std::exp(-4.0 * (x - 3.0) * (x - 3.0)); });
    r.at_most("wave_equation", "u_tt + (L - omega0^2) u = 0 at t = 1", wave_residual(model, h, 1.0), 1e-3);
    r.at_most("initial_velocity", "u_t(0) = 0", initial_velocity(model, h), 1e-4);

    const auto compact = sample(grid, [](double x) { return bump(x, 2.0, 0.5); });
    const double base = support_of(compact);
    double excess = -1e300;
    for (double t : {0.5, 1.0, 2.0, 3.5, 5.0})
        excess = std::max(excess, support_radius(model, t, compact) - base - t);
    r.at_most("propagation_speed", "supp cos(tA) h - supp h - t <= 2 cells, t <= 5", excess, 2.0 * grid->spacing());

    if (tag == ModelTag::cosh) {
        const std::vector<double> ts{0.5, 1.0, 2.0, 3.0, 5.0};
        for (double p : {2.0, 4.0, 8.0}) r.append(norm_growth(model, p, ts, 6, seed), "growth(p=" + label(p) + ")");
        const std::vector<double> wnTimes{0.1, 1.0, 2.0, 3.0};
        for (int n = 1; n <= 3; ++n) r.append(wn_growth(model, n, wnTimes, 2.0, 4, seed), "wn(n=" + std::to_string(n) + ")");
    } else {
        const auto f = sample(grid, [](double x) { return std::exp(-2.0 * (x - 1.0) * (x - 1.0)); });
        r.append(frac_wave_check(1.0, f), "frac_wave");
    }
    return r;
}

CheckReport run_suite(std::string_view suite, const SuiteOptions& options) {
    if (std::find(names.begin(), names.end(), suite) == names.end())
        throw ConfigError("unknown suite " + std::string(suite));
    if (options.model && !suite_supports(suite, *options.model) && suite != "all")
        throw ConfigError("suite " + std::string(suite) + " does not support model " +
                          std::string(model_name(*options.model)));
    CheckReport r;
    if (suite == "all") {
        for (auto name : names)
            if (name != "all" && (!options.model || suite_supports(name, *options.model)))
                r.append(run_suite(name, options));
        return r;
    }
    if (!model_dependent(suite)) {
        if (suite == "fracint") r.append(fracint_suite(), "fracint");
        else r.append(multipliers_suite(options.seed, options.grid.xMax.value_or(30.0), options.grid.panels.value_or(48)),
                      "multipliers");
        return r;
    }
    for (auto tag : allModels) {
        if ((options.model && tag != *options.model) || !suite_supports(suite, tag)) continue;
        const std::string prefix = std::string(suite) + "." + std::string(model_name(tag));
        if (suite == "characters") r.append(characters_suite(tag), prefix);
        else if (suite == "transforms") r.append(transforms_suite(tag, options.grid), prefix);
        else if (suite == "waves") r.append(waves_suite(tag, options.grid, options.seed), prefix);
        else r.append(opcalc_suite(tag, options.grid.xMax.value_or(30.0), options.grid.panels.value_or(48)), prefix);
    }
    return r;
}

}  // namespace hfc
