#include "cli.hpp"

#include "hyperfc/characters.hpp"
#include "hyperfc/errors.hpp"
#include "hyperfc/multipliers.hpp"
#include "hyperfc/transforms.hpp"
#include "hyperfc/waves.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace hfc::cli {
namespace {

constexpr double pi = std::numbers::pi;

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = a + (b - a) * i / (n - 1);
    return v;
}

ModelTag require_model(const CurveParams& params) {
    if (!params.model) throw ConfigError("curve " + params.kind + " needs --model");
    return *params.model;
}

GridPtr grid_for(const HypergroupModel& model, const GridSpec& spec, double xMax, int panels) {
    return make_grid(model.profile, spec.xMax.value_or(xMax), spec.panels.value_or(panels));
}

double cosech_factor(double l) { return l == 0.0 ? 1.0 / pi : l / std::sinh(pi * l); }

Curve character_curve(const CurveParams& params) {
    const auto model = build_model(require_model(params));
    const auto xs = linspace(0.05, 10.0, 200);
    Curve c{{"x", "phi_ode", "phi_closed"}, {xs, {}, {}}};
    for (const auto& e : phi_ode(model.profile, params.lambda, xs)) c.columns[1].push_back(e.value.real());
    for (double x : xs) c.columns[2].push_back(phi_closed(model, params.lambda, x).real());
    return c;
}

Curve transform_curve(const CurveParams& params) {
    const auto tag = require_model(params);
    const auto model = build_model(tag);
    RealFn f;
    if (params.f == "sech3") f = [](double x) { return std::pow(std::cosh(0.5 * x), -3.0); };
    else if (params.f == "sech5") f = [](double x) { return std::pow(std::cosh(0.5 * x), -5.0); };
    else if (params.f == "gauss") f = [](double x) { return std::exp(-x * x); };
    else throw ConfigError("unknown function " + params.f + " (sech3, sech5, gauss)");
    const auto grid = grid_for(model, params.grid, 60.0, 96);
    const auto fh = forward(model, sample(grid, f), lambda_grid(6.0, 241));
    Curve c{{"lambda", "fhat"}, {fh.lambdaNodes, {}}};
    for (const auto& v : fh.values) c.columns[1].push_back(v.real());
    if (tag == ModelTag::mehler && params.f != "gauss") {
        if (params.f == "sech3") {
            c.header.push_back("8_lambda_cosech");
            c.columns.emplace_back();
            for (double l : fh.lambdaNodes) c.columns.back().push_back(8.0 * cosech_factor(l));
        } else {
            c.header.insert(c.header.end(), {"printed_16_3_lambda3_cosech", "32_9_lambda_1_plus_lambda2_cosech"});
            c.columns.emplace_back();
            c.columns.emplace_back();
            for (double l : fh.lambdaNodes) {
                c.columns[2].push_back(16.0 / 3.0 * l * l * cosech_factor(l));
                c.columns[3].push_back(32.0 / 9.0 * (1.0 + l * l) * cosech_factor(l));
            }
        }
    }
    return c;
}

Curve wave_curve(const CurveParams& params) {
    const auto model = build_model(require_model(params));
    const auto grid = grid_for(model, params.grid, 20.0, 32);
    const auto h = sample(grid, [](double x) { return std::exp(-4.0 * (x - 3.0) * (x - 3.0)); });
    const auto u = cosine_apply(model, params.t, h);
    return {{"x", "u"}, {grid->nodes, u.values}};
}

Curve growth_curve(const CurveParams& params) {
    if (require_model(params) != ModelTag::cosh) throw ConfigError("growth curves use the cosh model");
    if (!(params.p >= 1.0)) throw ConfigError("growth curves need p >= 1");
    const auto model = build_model(ModelTag::cosh);
    const auto grid = grid_for(model, params.grid, 20.0, 32);
    const auto data = random_bumps(grid, 6, 3.0, params.seed);
    const auto ts = linspace(0.0, 5.0, 26);
    Curve c{{"t", "max_ratio", "bound"}, {ts, {}, {}}};
    for (double t : ts) {
        double worst = 0.0;
        for (const auto& h : data) worst = std::max(worst, lp_norm(cosine_apply(model, t, h), params.p) / lp_norm(h, params.p));
        c.columns[1].push_back(worst);
        c.columns[2].push_back(cosh_growth_constant(params.p) * std::pow(std::cosh(t), (params.p - 2.0) / params.p));
    }
    return c;
}

Curve variation_curve(const CurveParams& params) {
    RealFn h;
    if (params.f == "cosech") h = [](double l) { return 8.0 * cosech_factor(l); };
    else if (params.f == "sinc") h = [](double l) { return l == 0.0 ? 1.0 : std::sin(l) / l; };
    else if (params.f == "gauss") h = [](double l) { return std::exp(-l * l); };
    else throw ConfigError("unknown symbol " + params.f + " (cosech, sinc, gauss)");
    const auto norm = marcinkiewicz_norm(h, params.s);
    Curve c{{"j", "var_s"}, {{}, {}}};
    for (const auto& [j, v] : norm.dyadicVariations) {
        c.columns[0].push_back(j);
        c.columns[1].push_back(v);
    }
    return c;
}

}  // namespace

Curve build_curve(const CurveParams& params) {
    if (params.kind == "character") return character_curve(params);
    if (params.kind == "transform") return transform_curve(params);
    if (params.kind == "wave") return wave_curve(params);
    if (params.kind == "growth") return growth_curve(params);
    if (params.kind == "variation") return variation_curve(params);
    throw ConfigError("unknown curve kind " + params.kind);
}

std::string curve_csv(const Curve& curve) {
    std::ostringstream out;
    out.precision(17);
    for (std::size_t k = 0; k < curve.header.size(); ++k) out << (k ? "," : "") << curve.header[k];
    out << '\n';
    for (std::size_t i = 0; i < curve.columns.front().size(); ++i) {
        for (std::size_t k = 0; k < curve.columns.size(); ++k) out << (k ? "," : "") << curve.columns[k][i];
        out << '\n';
    }
    return out.str();
}

}  // namespace hfc::cli
