#include "hyperfc/opcalc.hpp"

#include "hyperfc/characters.hpp"
#include "hyperfc/errors.hpp"
#include "hyperfc/quadrature.hpp"
#include "hyperfc/transforms.hpp"
#include "hyperfc/waves.hpp"

#include <boost/math/special_functions/hermite.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

namespace hfc {
namespace {

constexpr double pi = std::numbers::pi;
constexpr double cutoffLevel = 1e-12;

void require_explicit(ModelTag tag) {
    if (tag == ModelTag::mehler) throw DomainError("operator calculus needs the cosh or sl2c cosine family");
}

// Weighted L^p norm over a subset of grid nodes.
double block_norm(const Grid& grid, std::span<const double> v, std::span<const std::size_t> rows, double p) {
    double s = 0.0;
    for (std::size_t i : rows) {
        if (std::isinf(p))
            s = std::max(s, std::abs(v[i]));
        else
            s += std::pow(std::abs(v[i]), p) * grid.measureWeights[i];
    }
    return std::isinf(p) ? s : std::pow(s, 1.0 / p);
}

double weighted_norm(std::span<const double> v, std::span<const double> measure, double p) {
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (std::isinf(p))
            s = std::max(s, std::abs(v[i]));
        else
            s += std::pow(std::abs(v[i]), p) * measure[i];
    }
    return std::isinf(p) ? s : std::pow(s, 1.0 / p);
}

std::vector<double> character_values(const OperatorContext& ctx, double lambda) {
    std::vector<double> phi(ctx.grid->size());
    for (std::size_t i = 0; i < phi.size(); ++i) phi[i] = phi_closed(ctx.model, lambda, ctx.grid->nodes[i]).real();
    return phi;
}

double eigen_residual(const OperatorContext& ctx, const KernelMatrix& k, double lambda, double scalar,
                      std::span<const std::size_t> rows) {
    const auto phi = character_values(ctx, lambda);
    auto r = k.apply(phi);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= scalar * phi[i];
    return block_norm(*ctx.grid, r, rows, ctx.p) / block_norm(*ctx.grid, phi, rows, ctx.p);
}

// Composite Gauss-Legendre rule on [0, T] with the grid's panel width and order.
QuadratureRule time_rule(const Grid& grid, double cutoff) {
    const double width = grid.xMax / grid.panels;
    const int panels = std::max(1, static_cast<int>(std::ceil(cutoff / width)));
    std::vector<double> breaks(static_cast<std::size_t>(panels) + 1);
    for (int i = 0; i <= panels; ++i) breaks[static_cast<std::size_t>(i)] = cutoff * i / panels;
    return composite_legendre(breaks, grid.order);
}

void require_tail(const OperatorContext& ctx, const SampledFunction& f) {
    const double tail = forward_tail(ctx.model, f);
    if (tail > tailLimit) throw TruncationError("t_a: f m is not negligible at the grid end", tail);
}

}  // namespace

std::vector<double> KernelMatrix::apply(std::span<const double> h) const {
    Eigen::VectorXd v(static_cast<Eigen::Index>(h.size()));
    for (std::size_t j = 0; j < h.size(); ++j) v[static_cast<Eigen::Index>(j)] = h[j] * colMeasure[j];
    const Eigen::VectorXd out = entries * v;
    return {out.data(), out.data() + out.size()};
}

Eigen::MatrixXd KernelMatrix::action() const {
    Eigen::MatrixXd a = entries;
    for (Eigen::Index j = 0; j < a.cols(); ++j) a.col(j) *= colMeasure[static_cast<std::size_t>(j)];
    return a;
}

KernelMatrix KernelMatrix::from_action(const Eigen::MatrixXd& action, const Grid& grid) {
    KernelMatrix k{action, grid.measureWeights, grid.measureWeights};
    for (Eigen::Index j = 0; j < action.cols(); ++j) k.entries.col(j) /= grid.measureWeights[static_cast<std::size_t>(j)];
    return k;
}

void add_cosine(const OperatorContext& ctx, double t, double coeff, Eigen::MatrixXd& into) {
    const Grid& grid = *ctx.grid;
    const bool coshModel = ctx.model.tag == ModelTag::cosh;
    const auto order = static_cast<std::size_t>(grid.order);
    std::vector<double> w(order);
    t = std::abs(t);
    // Row i gets coeff (H(s + t) + sign H(|s - t|)) / (2 c(s)), H = h c, c = cosh or sinh.
    auto add_point = [&](Eigen::Index row, double y, double scale) {
        if (y > grid.xMax) return;
        const std::size_t first = grid.lagrange_weights(y, w);
        for (std::size_t k = 0; k < order; ++k) {
            const double node = grid.nodes[first + k];
            into(row, static_cast<Eigen::Index>(first + k)) +=
                scale * w[k] * (coshModel ? std::cosh(node) : std::sinh(node));
        }
    };
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double s = grid.nodes[i];
        const double scale = coeff / (2.0 * (coshModel ? std::cosh(s) : std::sinh(s)));
        const auto row = static_cast<Eigen::Index>(i);
        add_point(row, s + t, scale);
        const double d = s - t;
        add_point(row, std::abs(d), coshModel || d >= 0.0 ? scale : -scale);
    }
}

OperatorContext discretize(const HypergroupModel& model, const GridPtr& grid, double p) {
    require_explicit(model.tag);
    if (!(p >= 1.0)) throw DomainError("Lebesgue exponent must be >= 1");
    OperatorContext ctx{model, grid, {}, {}, p};
    const auto n = static_cast<Eigen::Index>(grid->size());
    // The appliers capture only values, so the context stays copyable.
    ctx.cosineApplier = [model, grid, p, n](double t) {
        const OperatorContext inner{model, grid, {}, {}, p};
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
        add_cosine(inner, t, 1.0, m);
        return m;
    };
    ctx.phiAApplier = [model, grid, p, n](double x) -> Eigen::MatrixXd {
        if (x == 0.0) return Eigen::MatrixXd::Identity(n, n);
        const OperatorContext inner{model, grid, {}, {}, p};
        const auto rep = laplace_rep(model, x, pi / grid->spacing());
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
        for (const auto& [loc, mass] : rep.atoms) add_cosine(inner, loc, mass, m);
        for (std::size_t k = 0; k < rep.foldedNodes.size(); ++k)
            add_cosine(inner, rep.foldedNodes[k], 2.0 * rep.foldedWeights[k], m);
        return m;
    };
    return ctx;
}

KernelMatrix t_a(const OperatorContext& ctx, const SampledFunction& f) {
    require_explicit(ctx.model.tag);
    require_tail(ctx, f);
    const Grid& grid = *ctx.grid;
    const bool coshModel = ctx.model.tag == ModelTag::cosh;
    // Kernel entries (tau_s f)(y) from the product formula of the model:
    // cosh: (F(s + y) + F(|s - y|)) / (2 cosh s cosh y) with F = f cosh;
    // sl2c: (C(s + y) - C(|s - y|)) / (2 sinh s sinh y) with C' = f sinh.
    SampledFunction lifted{f.grid, f.values};
    for (std::size_t j = 0; j < grid.size(); ++j)
        lifted.values[j] *= coshModel ? std::cosh(grid.nodes[j]) : std::sinh(grid.nodes[j]);
    SampledFunction primitive{f.grid, std::vector<double>(grid.size())};
    if (!coshModel) {
        const Interpolant running(lifted);
        for (std::size_t j = 0; j < grid.size(); ++j) primitive.values[j] = running.integral_to(grid.nodes[j]);
    }
    const Interpolant profile(coshModel ? lifted : primitive);
    const double total = coshModel ? 0.0 : Interpolant(lifted).integral_to(grid.xMax);
    auto lookup = [&](double u) { return u <= grid.xMax ? profile(u) : total; };
    const auto n = static_cast<Eigen::Index>(grid.size());
    KernelMatrix k{Eigen::MatrixXd(n, n), grid.measureWeights, grid.measureWeights};
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double s = grid.nodes[i];
        for (std::size_t j = 0; j < grid.size(); ++j) {
            const double y = grid.nodes[j];
            const double value = coshModel
                                     ? (lookup(s + y) + lookup(std::abs(s - y))) / (2.0 * std::cosh(s) * std::cosh(y))
                                     : (lookup(s + y) - lookup(std::abs(s - y))) / (2.0 * std::sinh(s) * std::sinh(y));
            k.entries(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = value;
        }
    }
    return k;
}

KernelMatrix t_a_cosine(const OperatorContext& ctx, const SampledFunction& f) {
    require_explicit(ctx.model.tag);
    require_tail(ctx, f);
    const Grid& grid = *ctx.grid;
    const auto n = static_cast<Eigen::Index>(grid.size());
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    if (ctx.model.tag == ModelTag::cosh) {
        // tau_x = (delta_x + delta_-x) / (2 cosh x).
        for (std::size_t j = 0; j < grid.size(); ++j)
            add_cosine(ctx, grid.nodes[j], f.values[j] * grid.measureWeights[j] / std::cosh(grid.nodes[j]), m);
    } else {
        // tau_x has density 1 / (2 sinh x) on [-x, x]; the x integral from t
        // to xMax of f m / sinh weights cos(tA).
        SampledFunction density{f.grid, f.values};
        for (std::size_t j = 0; j < grid.size(); ++j) density.values[j] *= grid.mValues[j] / std::sinh(grid.nodes[j]);
        const Interpolant running(density);
        const double total = running.integral_to(grid.xMax);
        for (std::size_t k = 0; k < grid.size(); ++k)
            add_cosine(ctx, grid.nodes[k], grid.quadWeights[k] * (total - running.integral_to(grid.nodes[k])), m);
    }
    return KernelMatrix::from_action(m, grid);
}

std::vector<SampledFunction> smooth_probes(const GridPtr& grid, int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<SampledFunction> out;
    for (int i = 0; i < count; ++i) {
        std::vector<std::array<double, 3>> terms;
        const int k = 1 + static_cast<int>(3.0 * unit(rng)) % 3;
        for (int j = 0; j < k; ++j) terms.push_back({6.0 * unit(rng), 0.5 + unit(rng), 2.0 * unit(rng) - 1.0});
        out.push_back(sample(grid, [terms](double x) {
            double s = 0.0;
            for (const auto& [c, w, a] : terms)
                s += a * (std::exp(-(x - c) * (x - c) / (w * w)) + std::exp(-(x + c) * (x + c) / (w * w)));
            return s;
        }));
    }
    return out;
}

std::vector<std::size_t> interior_nodes(const Grid& grid, double reach) {
    const double limit = std::min(0.9 * grid.xMax, grid.xMax - reach);
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < grid.size(); ++i)
        if (grid.nodes[i] <= limit) rows.push_back(i);
    return rows;
}

double diagonalization_residual(const OperatorContext& ctx, const SampledFunction& f,
                                std::span<const double> lambdas) {
    const auto k = t_a(ctx, f);
    const auto fhat = forward(ctx.model, f, lambdas);
    const auto rows = interior_nodes(*ctx.grid, support_of(f));
    double worst = 0.0;
    for (std::size_t i = 0; i < lambdas.size(); ++i)
        worst = std::max(worst, eigen_residual(ctx, k, lambdas[i], fhat.values[i].real(), rows));
    return worst;
}

double homomorphism_residual(const OperatorContext& ctx, const SampledFunction& f, const SampledFunction& g) {
    const auto fg = convolve(ctx.model, f, g);
    const auto kf = t_a(ctx, f);
    const auto kg = t_a(ctx, g);
    const Eigen::MatrixXd lhs = t_a(ctx, fg).entries;
    const Eigen::MatrixXd rhs = kf.action() * kg.entries;
    const auto rows = interior_nodes(*ctx.grid, support_of(fg));
    const auto& mu = ctx.grid->measureWeights;
    // Hilbert-Schmidt norms on L^2(m) of the interior block.
    double diff = 0.0;
    double ref = 0.0;
    for (std::size_t i : rows)
        for (std::size_t j : rows) {
            const auto r = static_cast<Eigen::Index>(i);
            const auto c = static_cast<Eigen::Index>(j);
            const double weight = mu[i] * mu[j];
            diff += (lhs(r, c) - rhs(r, c)) * (lhs(r, c) - rhs(r, c)) * weight;
            ref += rhs(r, c) * rhs(r, c) * weight;
        }
    return std::sqrt(diff / ref);
}

double time_cutoff(const RealFn& fourier, double omega0, double tMax) {
    constexpr double step = 0.05;
    double lastAbove = 0.0;
    for (double t = 0.0; t <= tMax; t += step)
        if (std::abs(fourier(t)) * std::cosh(omega0 * t) >= cutoffLevel) lastAbove = t;
    if (lastAbove + step > tMax)
        throw TruncationError("Fourier transform does not decay against cosh(omega0 t)",
                              std::abs(fourier(tMax)) * std::cosh(omega0 * tMax));
    return lastAbove + step;
}

double inverse_fourier_cosine(const RealFn& fourier, double lambda, double cutoff) {
    const int panels = std::max(1, static_cast<int>(std::ceil(cutoff / 0.25)));
    std::vector<double> breaks(static_cast<std::size_t>(panels) + 1);
    for (int i = 0; i <= panels; ++i) breaks[static_cast<std::size_t>(i)] = cutoff * i / panels;
    const auto rule = composite_legendre(breaks, 16);
    double s = 0.0;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k)
        s += rule.weights[k] * fourier(rule.nodes[k]) * std::cos(rule.nodes[k] * lambda);
    return s / pi;
}

KernelMatrix lambda_fc(const OperatorContext& ctx, const RealFn& fourier) {
    require_explicit(ctx.model.tag);
    const double cutoff = time_cutoff(fourier, ctx.model.profile.omega0);
    const auto rule = time_rule(*ctx.grid, cutoff);
    const auto n = static_cast<Eigen::Index>(ctx.grid->size());
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t k = 0; k < rule.nodes.size(); ++k)
        add_cosine(ctx, rule.nodes[k], rule.weights[k] * fourier(rule.nodes[k]) / pi, m);
    return KernelMatrix::from_action(m, *ctx.grid);
}

double multiplier_residual(const OperatorContext& ctx, const RealFn& fourier, double lambda) {
    const double cutoff = time_cutoff(fourier, ctx.model.profile.omega0);
    const auto k = lambda_fc(ctx, fourier);
    const double scalar = inverse_fourier_cosine(fourier, lambda, cutoff);
    return eigen_residual(ctx, k, lambda, scalar, interior_nodes(*ctx.grid, cutoff));
}

HermiteExample hermite_example(int nu) {
    if (nu < 0) throw DomainError("hermite_example requires nu >= 0");
    const auto degree = static_cast<unsigned>(2 * nu);
    const double sign = nu % 2 == 0 ? 1.0 : -1.0;
    return {nu, [degree](double z) { return boost::math::hermite(degree, z) * std::exp(-z * z); },
            [nu, sign](double xi) { return std::sqrt(pi) * sign * std::pow(xi, 2 * nu) * std::exp(-0.25 * xi * xi); }};
}

double hermite_fourier_error(const HermiteExample& ex) {
    const auto& rule = gauss_hermite(160);
    double worst = 0.0;
    for (double xi = 0.5; xi <= 6.0; xi += 0.5) {
        double s = 0.0;
        for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
            const double x = rule.nodes[k];
            s += rule.weights[k] * ex.f(x) * std::exp(x * x) * std::cos(x * xi);
        }
        worst = std::max(worst, std::abs(s - ex.fourier(xi)));
    }
    return worst;
}

std::vector<double> hermite_moments(const HermiteExample& ex, int maxPower) {
    const auto& rule = gauss_hermite(ex.nu + maxPower / 2 + 8);
    std::vector<double> out;
    for (int j = 0; j <= maxPower; ++j) {
        double s = 0.0;
        for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
            const double x = rule.nodes[k];
            s += rule.weights[k] * std::pow(x, j) * boost::math::hermite(static_cast<unsigned>(2 * ex.nu), x);
        }
        out.push_back(s);
    }
    return out;
}

double schur_bound(const KernelMatrix& k) {
    double rows = 0.0;
    for (Eigen::Index i = 0; i < k.entries.rows(); ++i) {
        double s = 0.0;
        for (Eigen::Index j = 0; j < k.entries.cols(); ++j)
            s += std::abs(k.entries(i, j)) * k.colMeasure[static_cast<std::size_t>(j)];
        rows = std::max(rows, s);
    }
    double cols = 0.0;
    for (Eigen::Index j = 0; j < k.entries.cols(); ++j) {
        double s = 0.0;
        for (Eigen::Index i = 0; i < k.entries.rows(); ++i)
            s += std::abs(k.entries(i, j)) * k.rowMeasure[static_cast<std::size_t>(i)];
        cols = std::max(cols, s);
    }
    return std::max(rows, cols);
}

double sampled_norm(const KernelMatrix& k, std::span<const std::vector<double>> hs, double p) {
    double worst = 0.0;
    for (const auto& h : hs) {
        const double den = weighted_norm(h, k.colMeasure, p);
        if (den > 0.0) worst = std::max(worst, weighted_norm(k.apply(h), k.rowMeasure, p) / den);
    }
    return worst;
}

double measured_m0(const HypergroupModel& model, const Grid& grid) {
    double worst = 0.0;
    for (double x : grid.nodes) worst = std::max(worst, laplace_envelope(model, model.profile.omega0, x));
    return worst;
}

CheckReport opcalc_suite(ModelTag tag, double xMax, int panels) {
    const auto model = build_model(tag);
    const auto grid = make_grid(model.profile, xMax, panels);
    const auto ctx = discretize(model, grid);
    const auto n = static_cast<Eigen::Index>(grid->size());
    CheckReport r;

    r.at_most("cos0.identity", "cos(0 A) = I", (ctx.cosineApplier(0.0) - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff(),
              1e-12);
    r.at_most("phiA0.identity", "phi_A(0) = I", (ctx.phiAApplier(0.0) - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff(),
              1e-12);
    if (tag == ModelTag::cosh)
        for (double x : {0.5, 2.0}) {
            const Eigen::MatrixXd diff = ctx.phiAApplier(x) - ctx.cosineApplier(x) / std::cosh(x);
            r.at_most("phiA.cos_over_cosh(x=" + std::to_string(x).substr(0, 3) + ")", "phi_A(x) = cos(xA)/cosh x",
                      diff.cwiseAbs().maxCoeff(), 1e-10);
        }

    const double m0 = measured_m0(model, *grid);
    r.note("M0", "sup_x int cosh(omega0 u) tau_x(du)", m0);
    const auto data = smooth_probes(grid, 12, 7);
    for (double p : tag == ModelTag::cosh ? std::vector<double>{2.0, 4.0} : std::vector<double>{2.0}) {
        const double kappa = tag == ModelTag::cosh ? cosh_growth_constant(p) : 1.0;
        double worst = 0.0;
        for (double x : {0.5, 1.5, 3.0}) {
            const Eigen::MatrixXd phi = ctx.phiAApplier(x);
            for (const auto& h : data) {
                const Eigen::VectorXd v = phi * Eigen::Map<const Eigen::VectorXd>(h.values.data(), n);
                worst = std::max(worst, lp_norm(*grid, {v.data(), h.size()}, p) / lp_norm(h, p));
            }
        }
        r.at_most("phiA.bound(p=" + std::to_string(static_cast<int>(p)) + ")", "||phi_A(x) h|| <= kappa M0 ||h||",
                  worst, kappa * m0);
    }

    const auto gauss = sample(grid, [](double x) { return std::exp(-2.0 * x * x); });
    const std::vector<double> eigenLambdas{1.0, 2.0};
    r.at_most("t_a.eigen", "T_A(f) phi = fhat phi", diagonalization_residual(ctx, gauss, eigenLambdas), 1e-4);
    double worstRoute = 0.0;
    {
        const auto direct = t_a(ctx, gauss);
        const auto cosines = t_a_cosine(ctx, gauss);
        for (const auto& h : data) {
            const auto a = direct.apply(h.values);
            auto b = cosines.apply(h.values);
            const double scale = lp_norm(*grid, a, 2.0);
            for (std::size_t i = 0; i < b.size(); ++i) b[i] -= a[i];
            worstRoute = std::max(worstRoute, lp_norm(*grid, b, 2.0) / scale);
        }
    }
    r.at_most("t_a.cosine_route", "kernel form = x quadrature of phi_A", worstRoute, 1e-8);
    const std::vector<double> diagLambdas{0.5, 1.0, 2.0, 3.0};
    r.at_most("t_a.diagonalization", "T_A(f) phi = fhat phi", diagonalization_residual(ctx, gauss, diagLambdas), 1e-3);

    if (tag == ModelTag::cosh) {
        r.at_most("homomorphism.gauss", "T_A(f*g) = T_A(f) T_A(g)", homomorphism_residual(ctx, gauss, gauss), 1e-3);
    } else {
        const auto f = sample(grid, [](double x) { return std::exp(-x * x); });
        const auto g = sample(grid, [](double x) { return x * std::exp(-x * x); });
        r.at_most("homomorphism.gauss_xgauss", "T_A(f*g) = T_A(f) T_A(g)", homomorphism_residual(ctx, f, g), 1e-3);
    }

    const RealFn gaussFourier = [](double xi) { return std::sqrt(pi) * std::exp(-0.25 * xi * xi); };
    r.at_most("multiplier.gauss(lambda=1)", "f(A) phi = f(lambda) phi", multiplier_residual(ctx, gaussFourier, 1.0),
              1e-4);
    r.near("multiplier.inversion_at_0", "Fourier inversion at 0",
           inverse_fourier_cosine(gaussFourier, 0.0, time_cutoff(gaussFourier, model.profile.omega0)), 1.0, 1e-10);
    const auto h1 = hermite_example(1);
    r.at_most("multiplier.hermite2(lambda=1)", "f(A) phi = f(lambda) phi", multiplier_residual(ctx, h1.fourier, 1.0),
              1e-4);

    const auto h2 = hermite_example(2);
    r.at_most("hermite4.fourier", "Ff against direct quadrature", hermite_fourier_error(h2), 1e-10);
    const auto moments = hermite_moments(h2, 3);
    double worstMoment = 0.0;
    for (double m : moments) worstMoment = std::max(worstMoment, std::abs(m));
    r.at_most("hermite4.moments", "int x^j H_4 exp(-x^2) = 0, j < 4", worstMoment, 1e-10);
    const auto fc = lambda_fc(ctx, h2.fourier);
    const auto rows = interior_nodes(*grid, time_cutoff(h2.fourier, model.profile.omega0));
    double worstHermite = 0.0;
    for (double lambda : {0.5, 1.5})
        worstHermite = std::max(worstHermite, eigen_residual(ctx, fc, lambda, h2.f(lambda), rows));
    r.at_most("hermite4.eigen", "Lambda_A(f) phi = f(lambda) phi", worstHermite, 1e-3);

    // e^{-lambda^2} through the transform domain against the Fourier route.
    SpectralFunction spectrum;
    spectrum.lambdaNodes = lambda_grid();
    spectrum.quadWeights = trapezoid_weights(spectrum.lambdaNodes);
    for (double l : spectrum.lambdaNodes) spectrum.values.emplace_back(std::exp(-l * l));
    const auto viaTransform = t_a(ctx, inverse(model, spectrum, grid));
    const auto viaFourier = lambda_fc(ctx, gaussFourier);
    const auto probeRows = interior_nodes(*grid, time_cutoff(gaussFourier, model.profile.omega0));
    double worstConsistency = 0.0;
    for (const auto& h : data) {
        const auto a = viaTransform.apply(h.values);
        auto b = viaFourier.apply(h.values);
        const double scale = block_norm(*grid, b, probeRows, 2.0);
        for (std::size_t i = 0; i < b.size(); ++i) b[i] -= a[i];
        worstConsistency = std::max(worstConsistency, block_norm(*grid, b, probeRows, 2.0) / scale);
    }
    r.at_most("consistency.gauss", "Lambda_A(f) = T_A(inverse fhat)", worstConsistency, 1e-3);

    const auto k = t_a(ctx, gauss);
    const double schur = schur_bound(k);
    r.note("schur.bound", "Schur bound of T_A(exp(-2x^2))", schur);
    std::mt19937_64 rng(11);
    std::normal_distribution<double> normal;
    std::vector<std::vector<double>> vectors(200, std::vector<double>(grid->size()));
    for (auto& v : vectors)
        for (double& e : v) e = normal(rng);
    for (double p : {1.0, 1.5, 2.0, 4.0, std::numeric_limits<double>::infinity()}) {
        const std::string label = std::isinf(p) ? "inf" : std::to_string(p).substr(0, 3);
        r.at_most("schur.dominates(p=" + label + ")", "sampled ||K h||_p / ||h||_p <= Schur bound",
                  sampled_norm(k, vectors, p), schur);
    }
    return r;
}

}  // namespace hfc
