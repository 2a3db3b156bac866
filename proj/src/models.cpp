#include "hyperfc/models.hpp"

#include "hyperfc/errors.hpp"
#include "hyperfc/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

namespace hfc {
namespace {

constexpr double pi = std::numbers::pi;

// coth x - 1/x, accurate near 0.
double coth_minus_inv(double x) {
    if (std::abs(x) < 1e-2) {
        const double x2 = x * x;
        return x * (1.0 / 3.0 - x2 * (1.0 / 45.0 - x2 * (2.0 / 945.0 - x2 / 4725.0)));
    }
    return 1.0 / std::tanh(x) - 1.0 / x;
}

// 1/x^2 - cosech^2 x, accurate near 0.
double inv2_minus_csch2(double x) {
    if (std::abs(x) < 1e-2) {
        const double x2 = x * x;
        return 1.0 / 3.0 - x2 * (1.0 / 15.0 - x2 * (2.0 / 189.0 - x2 / 675.0));
    }
    const double s = std::sinh(x);
    return 1.0 / (x * x) - 1.0 / (s * s);
}

}  // namespace

ModelTag parse_model(std::string_view name) {
    if (name == "cosh") return ModelTag::cosh;
    if (name == "mehler") return ModelTag::mehler;
    if (name == "sl2c") return ModelTag::sl2c;
    throw ConfigError("unknown model '" + std::string(name) + "' (expected cosh, mehler or sl2c)");
}

std::string_view model_name(ModelTag tag) {
    switch (tag) {
        case ModelTag::cosh: return "cosh";
        case ModelTag::mehler: return "mehler";
        case ModelTag::sl2c: return "sl2c";
    }
    return "?";
}

double WeightProfile::q(double x) const { return m(x) / std::pow(x, 2.0 * gamma + 1.0); }

double WeightProfile::log_derivative(double x) const {
    if (mLogDerivative) return mLogDerivative(x);
    const double h = 1e-5 * std::max(x, 1e-3);
    return (std::log(m(x + h)) - std::log(m(x - h))) / (2.0 * h);
}

double WeightProfile::bigQ(double x) const { return q_profile(*this, x).bigQ; }

QValues q_profile(const WeightProfile& profile, double x) {
    if (!(x > 0.0)) throw DomainError("q_profile requires x > 0");
    const double qx = profile.q(x);
    double ell;
    double dell;
    if (profile.qLogDerivative && profile.qLogDerivative2) {
        ell = profile.qLogDerivative(x);
        dell = profile.qLogDerivative2(x);
    } else {
        const double h = 1e-5 * x;
        const double qp = profile.q(x + h);
        const double qm = profile.q(x - h);
        ell = (qp - qm) / (2.0 * h * qx);
        dell = (qp - 2.0 * qx + qm) / (h * h * qx) - ell * ell;
    }
    const double w0 = profile.omega0;
    const double bigQ = 0.5 * dell + 0.25 * ell * ell + (2.0 * profile.gamma + 1.0) / (2.0 * x) * ell - w0 * w0;
    return {qx, bigQ};
}

WeightProfile make_profile(double gamma, double omega0, RealFn m) {
    WeightProfile p;
    p.gamma = gamma;
    p.omega0 = omega0;
    p.m = std::move(m);
    return p;
}

WeightProfile hyperbolic_profile(int k) {
    if (k < 1) throw ConfigError("hyperbolic_profile requires k >= 1");
    const double kd = k;
    WeightProfile p;
    p.gamma = 0.5 * (kd - 1.0);
    p.omega0 = 0.5 * kd;
    p.m = [kd](double x) { return std::pow(2.0 * std::sinh(x), kd); };
    p.mLogDerivative = [kd](double x) { return kd / std::tanh(x); };
    p.qLogDerivative = [kd](double x) { return kd * coth_minus_inv(x); };
    p.qLogDerivative2 = [kd](double x) { return kd * inv2_minus_csch2(x); };
    return p;
}

HypergroupModel build_model(ModelTag tag) {
    HypergroupModel model{tag, {}, {}, std::nullopt, true};
    switch (tag) {
        case ModelTag::cosh: {
            // m(0) = 1, so the exponent is gamma = -1/2 and q = m.
            WeightProfile& p = model.profile;
            p.gamma = -0.5;
            p.omega0 = 1.0;
            p.m = [](double x) { const double c = std::cosh(x); return c * c; };
            p.mLogDerivative = [](double x) { return 2.0 * std::tanh(x); };
            p.qLogDerivative = [](double x) { return 2.0 * std::tanh(x); };
            p.qLogDerivative2 = [](double x) { const double c = std::cosh(x); return 2.0 / (c * c); };
            model.plancherel = [](double) { return 2.0 / pi; };
            model.chebliTrimeche = false;
            break;
        }
        case ModelTag::mehler: {
            model.profile = hyperbolic_profile(1);
            model.profile.m = [](double x) { return std::sinh(x); };
            model.plancherel = [](double l) { return l * std::tanh(pi * l); };
            model.trivialCharacterPoint = cplx(0.0, 0.5);
            break;
        }
        case ModelTag::sl2c: {
            model.profile = hyperbolic_profile(2);
            model.profile.m = [](double x) { const double s = std::sinh(x); return 4.0 * s * s; };
            model.plancherel = [](double l) { return l * l / (4.0 * pi); };
            model.trivialCharacterPoint = cplx(0.0, 1.0);
            break;
        }
    }
    return model;
}

HypergroupModel build_model(std::string_view name) { return build_model(parse_model(name)); }

double m_integral(ModelTag tag, double X) {
    switch (tag) {
        case ModelTag::cosh: return 0.5 * (X + std::sinh(X) * std::cosh(X));
        case ModelTag::mehler: return std::cosh(X) - 1.0;
        case ModelTag::sl2c: return std::sinh(2.0 * X) - 2.0 * X;
    }
    return std::numeric_limits<double>::quiet_NaN();
}

CheckReport validate_weight(const WeightProfile& profile) {
    CheckReport r;
    const double e = 2.0 * profile.gamma + 1.0;

    // (i) behaviour at the origin
    const double m0 = profile.m(1e-6);
    r.at_most("origin.m_vanishes", "m(0+) = 0", m0, 1e-5);
    const double q3 = profile.m(1e-3) / std::pow(1e-3, e);
    const double q4 = profile.m(1e-4) / std::pow(1e-4, e);
    r.at_most("origin.ratio_limit", "m(x)/x^(2g+1) -> q(0) > 0", std::abs(q4 / q3 - 1.0), 1e-3)
        .pass &= q4 > 0.0;
    r.holds("origin.gamma_admissible", "gamma >= 1/2", profile.gamma >= 0.5);

    // (ii) growth at infinity
    bool increasing = true;
    double prev = profile.m(1e-3);
    for (int i = 1; i <= 5000; ++i) {
        const double x = 50.0 * i / 5000.0;
        const double cur = profile.m(x);
        if (!(cur > prev)) increasing = false;
        prev = cur;
    }
    r.holds("growth.increasing", "m increases to infinity", increasing && profile.m(50.0) > 1e3 * profile.m(1.0));
    const double target = 2.0 * profile.omega0;
    const double d20 = std::abs(profile.log_derivative(20.0) - target);
    const double d40 = std::abs(profile.log_derivative(40.0) - target);
    const double d80 = std::abs(profile.log_derivative(80.0) - target);
    // Either converged already or the deviation decays at least like 1/x.
    const bool limit_ok = d40 < 1e-6 || (d40 <= 0.51 * d20 && d80 <= 0.51 * d40);
    auto& lim = r.at_most("growth.log_derivative_limit", "m'/m -> 2 omega0", d40, 1e-6);
    lim.pass = limit_ok;

    // (iii) sign and integrability of Q
    // Finite-difference potentials carry rounding noise of order 1e-6 / x^2.
    const bool analytic = profile.qLogDerivative && profile.qLogDerivative2;
    bool nonnegative = true;
    double minQ = std::numeric_limits<double>::infinity();
    for (int i = 1; i <= 5000; ++i) {
        const double x = 50.0 * i / 5000.0;
        const double Qx = profile.bigQ(x);
        const double slack = analytic ? 1e-10 : 1e-5 * std::max(1.0, 1.0 / (x * x));
        nonnegative &= Qx >= -slack;
        minQ = std::min(minQ, Qx);
    }
    r.holds("potential.nonnegative", "Q >= 0", nonnegative).measured = minQ;
    std::vector<double> breaks(101);
    for (std::size_t i = 0; i < breaks.size(); ++i) breaks[i] = 0.5 * static_cast<double>(i);
    const auto rule = composite_legendre(breaks, 16);
    double integral = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) integral += rule.weights[i] * std::abs(profile.bigQ(rule.nodes[i]));
    r.holds("potential.integrable", "integral of Q over (0,50] finite", std::isfinite(integral)).measured = integral;
    return r;
}

int Grid::panel_of(double x) const {
    const auto it = std::upper_bound(breaks.begin(), breaks.end(), x);
    const auto p = static_cast<int>(it - breaks.begin()) - 1;
    return std::clamp(p, 0, panels - 1);
}

std::size_t Grid::lagrange_weights(double x, std::span<double> w) const {
    const int p = panel_of(x);
    const auto first = static_cast<std::size_t>(p) * static_cast<std::size_t>(order);
    double sum = 0.0;
    for (int k = 0; k < order; ++k) {
        const double d = x - nodes[first + static_cast<std::size_t>(k)];
        if (d == 0.0) {
            std::fill(w.begin(), w.begin() + order, 0.0);
            w[static_cast<std::size_t>(k)] = 1.0;
            return first;
        }
        w[static_cast<std::size_t>(k)] = bary_[static_cast<std::size_t>(k)] / d;
        sum += w[static_cast<std::size_t>(k)];
    }
    for (int k = 0; k < order; ++k) w[static_cast<std::size_t>(k)] /= sum;
    return first;
}

GridPtr make_grid(const WeightProfile& profile, double xMax, int panels, int order) {
    if (!(xMax > 0.0) || panels < 1 || order < 2) throw ConfigError("invalid grid parameters");
    auto g = std::make_shared<Grid>();
    g->xMax = xMax;
    g->panels = panels;
    g->order = order;
    g->breaks.resize(static_cast<std::size_t>(panels) + 1);
    for (int p = 0; p <= panels; ++p) g->breaks[static_cast<std::size_t>(p)] = xMax * p / panels;
    const auto rule = composite_legendre(g->breaks, order);
    g->nodes = rule.nodes;
    g->quadWeights = rule.weights;
    g->mValues.resize(g->nodes.size());
    g->measureWeights.resize(g->nodes.size());
    for (std::size_t i = 0; i < g->nodes.size(); ++i) {
        g->mValues[i] = profile.m(g->nodes[i]);
        g->measureWeights[i] = g->mValues[i] * g->quadWeights[i];
    }
    const auto& ref = gauss_legendre(order).nodes;
    g->bary_.resize(static_cast<std::size_t>(order));
    for (int k = 0; k < order; ++k) {
        double prod = 1.0;
        for (int j = 0; j < order; ++j)
            if (j != k) prod *= (ref[static_cast<std::size_t>(k)] - ref[static_cast<std::size_t>(j)]);
        g->bary_[static_cast<std::size_t>(k)] = 1.0 / prod;
    }
    return g;
}

SampledFunction sample(const GridPtr& grid, const RealFn& f) {
    SampledFunction out{grid, std::vector<double>(grid->size())};
    for (std::size_t i = 0; i < grid->size(); ++i) out.values[i] = f(grid->nodes[i]);
    return out;
}

Interpolant::Interpolant(const SampledFunction& f) : grid_(f.grid), values_(f.values) {
    const auto order = static_cast<std::size_t>(grid_->order);
    prefix_.assign(static_cast<std::size_t>(grid_->panels) + 1, 0.0);
    for (std::size_t p = 0; p < static_cast<std::size_t>(grid_->panels); ++p) {
        double s = 0.0;
        for (std::size_t k = 0; k < order; ++k) s += grid_->quadWeights[p * order + k] * values_[p * order + k];
        prefix_[p + 1] = prefix_[p] + s;
    }
}

double Interpolant::operator()(double x) const {
    if (x < 0.0 || x > grid_->xMax) return 0.0;
    std::array<double, 64> w{};
    const auto first = grid_->lagrange_weights(x, w);
    double s = 0.0;
    for (std::size_t k = 0; k < static_cast<std::size_t>(grid_->order); ++k) s += w[k] * values_[first + k];
    return s;
}

double Interpolant::integral_to(double x) const {
    if (x <= 0.0) return 0.0;
    if (x >= grid_->xMax) return prefix_.back();
    const int p = grid_->panel_of(x);
    const double a = grid_->breaks[static_cast<std::size_t>(p)];
    double s = prefix_[static_cast<std::size_t>(p)];
    if (x > a) {
        const auto rule = mapped(gauss_legendre(grid_->order), a, x);
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * (*this)(rule.nodes[i]);
    }
    return s;
}

double support_of(const SampledFunction& f, double threshold) {
    for (std::size_t i = f.size(); i-- > 0;)
        if (std::abs(f.values[i]) > threshold) return f.grid->nodes[i];
    return 0.0;
}

double lp_norm(const Grid& grid, std::span<const double> f, double p) {
    if (!(p >= 1.0)) throw DomainError("lp_norm requires p >= 1");
    if (std::isinf(p)) {
        double s = 0.0;
        for (double v : f) s = std::max(s, std::abs(v));
        return s;
    }
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) s += std::pow(std::abs(f[i]), p) * grid.measureWeights[i];
    return std::pow(s, 1.0 / p);
}

double lp_norm(const SampledFunction& f, double p) { return lp_norm(*f.grid, f.values, p); }

}  // namespace hfc
