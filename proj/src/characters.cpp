#include "hyperfc/characters.hpp"

#include "hyperfc/errors.hpp"
#include "hyperfc/quadrature.hpp"

#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace hfc {
namespace {

constexpr double pi = std::numbers::pi;
constexpr double seedPoint = 1e-4;

// Uniform composite Gauss-Legendre panels on [a, b] sized so each panel
// carries at most about six radians of phase at the given frequency.
QuadratureRule oscillatory_rule(double a, double b, double phase) {
    const int panels = 2 + static_cast<int>(std::ceil(std::abs(phase) / 6.0));
    std::vector<double> breaks(static_cast<std::size_t>(panels) + 1);
    for (int p = 0; p <= panels; ++p) breaks[static_cast<std::size_t>(p)] = a + (b - a) * p / panels;
    return composite_legendre(breaks, 16);
}

int round_up16(double v) { return 16 * static_cast<int>(std::ceil(std::max(v, 16.0) / 16.0)); }

}  // namespace

cplx MeasureRep::integrate(const std::function<cplx(double)>& g) const {
    cplx s = 0.0;
    for (const auto& [t, mass] : atoms) s += mass * g(t);
    for (std::size_t k = 0; k < foldedNodes.size(); ++k) {
        const double t = foldedNodes[k];
        s += foldedWeights[k] * (g(t) + g(-t));
    }
    return s;
}

MeasureRep laplace_rep(const HypergroupModel& model, double x, double maxFrequency) {
    if (!(x > 0.0)) throw DomainError("laplace_rep requires x > 0");
    MeasureRep rep;
    rep.x = x;
    const double freq = std::max(maxFrequency, 1.0);
    switch (model.tag) {
        case ModelTag::cosh: {
            const double mass = 0.5 / std::cosh(x);
            rep.atoms = {{-x, mass}, {x, mass}};
            break;
        }
        case ModelTag::sl2c: {
            const double d = 0.5 / std::sinh(x);
            rep.density = [x, d](double t) { return std::abs(t) < x ? d : 0.0; };
            auto rule = oscillatory_rule(0.0, x, freq * x);
            rep.foldedNodes = std::move(rule.nodes);
            rep.foldedWeights = std::move(rule.weights);
            for (double& w : rep.foldedWeights) w *= d;
            break;
        }
        case ModelTag::mehler: {
            rep.density = [x](double t) {
                const double a = std::abs(t);
                if (a >= x) return 0.0;
                return 1.0 / (pi * std::sqrt(2.0) *
                              std::sqrt(2.0 * std::sinh(0.5 * (x + a)) * std::sinh(0.5 * (x - a))));
            };
            // t = x - u^2 removes the inverse square-root endpoint singularity.
            const auto rule = oscillatory_rule(0.0, std::sqrt(x), freq * x);
            rep.foldedNodes.reserve(rule.nodes.size());
            rep.foldedWeights.reserve(rule.nodes.size());
            for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
                const double u = rule.nodes[k];
                const double h = 0.5 * u * u;
                rep.foldedNodes.push_back(x - u * u);
                rep.foldedWeights.push_back(rule.weights[k] * u /
                                            (pi * std::sqrt(std::sinh(x - h) * std::sinh(h))));
            }
            break;
        }
    }
    rep.totalMass = rep.integrate([](double) { return cplx(1.0); }).real();
    return rep;
}

cplx phi_from_laplace(const HypergroupModel& model, cplx lambda, double x) {
    if (x == 0.0) return 1.0;
    const auto rep = laplace_rep(model, x, std::abs(lambda));
    return rep.integrate([lambda](double t) { return std::cos(lambda * t); });
}

double laplace_envelope(const HypergroupModel& model, double s, double x) {
    if (x == 0.0) return 1.0;
    const auto rep = laplace_rep(model, x, std::abs(s));
    return rep.integrate([s](double u) { return cplx(std::cosh(s * u)); }).real();
}

cplx phi_closed(const HypergroupModel& model, cplx lambda, double x) {
    if (x == 0.0) return 1.0;
    switch (model.tag) {
        case ModelTag::cosh: return std::cos(lambda * x) / std::cosh(x);
        case ModelTag::sl2c: {
            const cplx z = lambda * x;
            if (std::abs(z) < 1e-4) {
                const cplx z2 = z * z;
                return x * (1.0 - z2 / 6.0 + z2 * z2 / 120.0) / std::sinh(x);
            }
            return std::sin(z) / (lambda * std::sinh(x));
        }
        case ModelTag::mehler: return phi_from_laplace(model, lambda, x);
    }
    return {};
}

Eigen::MatrixXd phi_table(const HypergroupModel& model, std::span<const double> lambdas,
                          std::span<const double> xs) {
    Eigen::MatrixXd out(static_cast<Eigen::Index>(lambdas.size()), static_cast<Eigen::Index>(xs.size()));
    double lmax = 0.0;
    for (double l : lambdas) lmax = std::max(lmax, std::abs(l));
    const double h = lambdas.size() > 1 ? lambdas[1] - lambdas[0] : 0.0;
    bool uniform = lambdas.size() > 2;
    for (std::size_t i = 1; uniform && i < lambdas.size(); ++i)
        uniform = std::abs(lambdas[i] - lambdas[i - 1] - h) <= 1e-12 * std::max(1.0, lmax);
    for (std::size_t j = 0; j < xs.size(); ++j) {
        const auto col = static_cast<Eigen::Index>(j);
        if (model.tag != ModelTag::mehler || xs[j] == 0.0) {
            for (std::size_t i = 0; i < lambdas.size(); ++i)
                out(static_cast<Eigen::Index>(i), col) = phi_closed(model, lambdas[i], xs[j]).real();
            continue;
        }
        const auto rep = laplace_rep(model, xs[j], lmax);
        if (uniform) {
            // cos((l0 + i h) t) by rotation along the lambda grid.
            const std::size_t nk = rep.foldedNodes.size();
            std::vector<double> c(nk), s(nk), sc(nk), ss(nk);
            for (std::size_t k = 0; k < nk; ++k) {
                const double t = rep.foldedNodes[k];
                c[k] = rep.foldedWeights[k] * std::cos(lambdas[0] * t);
                s[k] = rep.foldedWeights[k] * std::sin(lambdas[0] * t);
                sc[k] = std::cos(h * t);
                ss[k] = std::sin(h * t);
            }
            for (std::size_t i = 0; i < lambdas.size(); ++i) {
                double acc = 0.0;
                for (std::size_t k = 0; k < nk; ++k) {
                    acc += c[k];
                    const double cn = c[k] * sc[k] - s[k] * ss[k];
                    s[k] = s[k] * sc[k] + c[k] * ss[k];
                    c[k] = cn;
                }
                out(static_cast<Eigen::Index>(i), col) = 2.0 * acc;
            }
            continue;
        }
        for (std::size_t i = 0; i < lambdas.size(); ++i) {
            const double l = lambdas[i];
            double s = 0.0;
            for (std::size_t k = 0; k < rep.foldedNodes.size(); ++k)
                s += rep.foldedWeights[k] * std::cos(l * rep.foldedNodes[k]);
            out(static_cast<Eigen::Index>(i), col) = 2.0 * s;
        }
    }
    return out;
}

std::vector<CharacterEval> phi_ode(const WeightProfile& profile, cplx lambda, std::span<const double> xTargets) {
    if (!std::is_sorted(xTargets.begin(), xTargets.end()))
        throw DomainError("phi_ode targets must be increasing");
    if (!xTargets.empty() && (xTargets.front() < 0.0 || xTargets.back() > 50.0))
        throw DomainError("phi_ode targets must lie in [0, 50]");

    const double w0 = profile.omega0;
    const cplx mu = lambda * lambda + w0 * w0;
    const double g1 = profile.gamma + 1.0;

    std::vector<CharacterEval> out;
    out.reserve(xTargets.size());
    auto seed_value = [&](double x) { return cplx(1.0) - mu * x * x / (4.0 * g1); };

    std::vector<double> times;
    times.push_back(seedPoint);
    for (double x : xTargets) {
        if (x > seedPoint) times.push_back(x);
    }

    using State = std::array<double, 4>;  // Re phi, Im phi, Re phi', Im phi'
    const cplx phi0 = seed_value(seedPoint);
    const cplx dphi0 = -mu * seedPoint / (2.0 * g1);
    State state{phi0.real(), phi0.imag(), dphi0.real(), dphi0.imag()};

    auto rhs = [&](const State& s, State& ds, double x) {
        const cplx phi(s[0], s[1]);
        const cplx dphi(s[2], s[3]);
        const cplx dd = -profile.log_derivative(x) * dphi - mu * phi;
        ds = {s[2], s[3], dd.real(), dd.imag()};
    };

    std::vector<cplx> solved;
    solved.reserve(times.size());
    namespace ode = boost::numeric::odeint;
    try {
        auto stepper = ode::make_dense_output(1e-10, 1e-10, ode::runge_kutta_dopri5<State>());
        ode::integrate_times(stepper, rhs, state, times.begin(), times.end(), 1e-5,
                             [&](const State& s, double) { solved.emplace_back(s[0], s[1]); },
                             ode::max_step_checker(200000));
    } catch (const std::exception& e) {
        throw IntegrationError(std::string("character integration failed: ") + e.what());
    }

    std::size_t k = 1;
    for (double x : xTargets) {
        CharacterEval ev;
        ev.lambda = lambda;
        ev.x = x;
        if (x <= seedPoint) {
            ev.value = seed_value(x);
        } else {
            ev.value = solved.at(k++);
        }
        if (x > 0.0) ev.psi = std::sqrt(profile.m(x)) * ev.value;
        out.push_back(ev);
    }
    return out;
}

cplx bessel_j(double gamma, cplx lambda, double x) {
    if (gamma < 0.5) throw DomainError("bessel_j requires gamma >= 1/2");
    if (!(x > 0.0)) throw DomainError("bessel_j requires x > 0");
    // s = x v turns the weight into (1 - v^2)^(gamma - 1/2): a Gauss-Jacobi rule.
    const double a = gamma - 0.5;
    const int n = round_up16(32.0 + std::abs(lambda) * x);
    const auto& rule = gauss_jacobi(n, a, a);
    cplx s = 0.0;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) s += rule.weights[k] * std::cos(lambda * (x * rule.nodes[k]));
    const double logPref = std::lgamma(gamma + 1.0) - std::lgamma(0.5) - std::lgamma(gamma + 0.5);
    return std::exp(logPref) * std::pow(x, gamma + 0.5) * s;
}

VolterraSolution phi_volterra(const WeightProfile& profile, cplx lambda, std::span<const double> xGrid) {
    const double gamma = profile.gamma;
    if (gamma < 0.5) throw DomainError("phi_volterra requires gamma >= 1/2");
    if (xGrid.empty()) return {};
    const double X = *std::max_element(xGrid.begin(), xGrid.end());
    if (!(X > 0.0)) throw DomainError("phi_volterra requires a positive target");

    // Panels refined geometrically toward the origin, then uniform of width <= 1/4.
    std::vector<double> breaks{0.0};
    for (double b = 1e-4; b < std::min(0.25, X); b *= 2.0) breaks.push_back(b);
    {
        const double start = breaks.back();
        const int uniform = std::max(1, static_cast<int>(std::ceil((X - start) / 0.25)));
        for (int p = 1; p <= uniform; ++p) breaks.push_back(start + (X - start) * p / uniform);
    }
    constexpr int order = 16;
    const auto& ref = gauss_legendre(order);
    const std::size_t panels = breaks.size() - 1;
    const std::size_t N = panels * order;

    // Reference integration matrix: S(i,k) = integral from -1 to ref node i of the k-th Lagrange basis.
    Eigen::MatrixXd S(order, order);
    {
        std::vector<double> bary(order);
        for (int k = 0; k < order; ++k) {
            double prod = 1.0;
            for (int j = 0; j < order; ++j)
                if (j != k) prod *= ref.nodes[static_cast<std::size_t>(k)] - ref.nodes[static_cast<std::size_t>(j)];
            bary[static_cast<std::size_t>(k)] = 1.0 / prod;
        }
        for (int i = 0; i < order; ++i) {
            const auto sub = mapped(ref, -1.0, ref.nodes[static_cast<std::size_t>(i)]);
            for (int k = 0; k < order; ++k) S(i, k) = 0.0;
            for (std::size_t q = 0; q < sub.nodes.size(); ++q) {
                double sum = 0.0;
                std::array<double, order> w{};
                for (int k = 0; k < order; ++k) {
                    w[static_cast<std::size_t>(k)] = bary[static_cast<std::size_t>(k)] / (sub.nodes[q] - ref.nodes[static_cast<std::size_t>(k)]);
                    sum += w[static_cast<std::size_t>(k)];
                }
                for (int k = 0; k < order; ++k) S(i, k) += sub.weights[q] * w[static_cast<std::size_t>(k)] / sum;
            }
        }
    }

    std::vector<double> y(N), wq(N);
    for (std::size_t p = 0; p < panels; ++p) {
        const auto r = mapped(ref, breaks[p], breaks[p + 1]);
        for (int k = 0; k < order; ++k) {
            y[p * order + static_cast<std::size_t>(k)] = r.nodes[static_cast<std::size_t>(k)];
            wq[p * order + static_cast<std::size_t>(k)] = r.weights[static_cast<std::size_t>(k)];
        }
    }

    auto kernel = [lambda](double x, double s) -> cplx {
        const double d = x - s;
        const cplx z = lambda * d;
        if (std::abs(z) < 1e-6) return d * (1.0 - z * z / 6.0);
        return std::sin(z) / lambda;
    };

    // Nystrom matrix for the running integral of kernel * F up to each node.
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(N), static_cast<Eigen::Index>(N));
    for (std::size_t p = 0; p < panels; ++p) {
        const double half = 0.5 * (breaks[p + 1] - breaks[p]);
        for (int i = 0; i < order; ++i) {
            const std::size_t row = p * order + static_cast<std::size_t>(i);
            for (std::size_t col = 0; col < p * order; ++col)
                M(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = wq[col] * kernel(y[row], y[col]);
            for (int k = 0; k < order; ++k) {
                const std::size_t col = p * order + static_cast<std::size_t>(k);
                M(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = half * S(i, k) * kernel(y[row], y[col]);
            }
        }
    }

    const double c = (4.0 * gamma * gamma - 1.0) / 4.0;
    Eigen::VectorXcd jv(static_cast<Eigen::Index>(N));
    Eigen::VectorXd Q(static_cast<Eigen::Index>(N)), V(static_cast<Eigen::Index>(N));
    for (std::size_t k = 0; k < N; ++k) {
        const auto e = static_cast<Eigen::Index>(k);
        jv(e) = bessel_j(gamma, lambda, y[k]);
        Q(e) = profile.bigQ(y[k]);
        V(e) = Q(e) + c / (y[k] * y[k]);
    }
    const Eigen::VectorXcd source = Q.cwiseProduct(jv);
    const double scale = std::max(1.0, jv.cwiseAbs().maxCoeff());

    Eigen::VectorXcd rho = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(N));
    int iterations = 0;
    for (;;) {
        const Eigen::VectorXcd next = M * (source + V.cwiseProduct(rho));
        const double change = (next - rho).cwiseAbs().maxCoeff();
        rho = next;
        ++iterations;
        if (change < 1e-12 * scale) break;
        if (iterations >= 200) throw ConvergenceError("Volterra iteration did not converge", iterations);
    }

    const Eigen::VectorXcd F = source + V.cwiseProduct(rho);
    const double y0 = y.front();
    const cplx psi0 = jv(0) + rho(0);
    const cplx mu = lambda * lambda + profile.omega0 * profile.omega0;
    const cplx seed = 1.0 - mu * y0 * y0 / (4.0 * (gamma + 1.0));
    const double normalization = (seed * std::sqrt(profile.m(y0)) / psi0).real();

    VolterraSolution sol;
    sol.normalization = normalization;
    sol.iterations = iterations;
    sol.values.reserve(xGrid.size());
    for (double x : xGrid) {
        CharacterEval ev;
        ev.lambda = lambda;
        ev.x = x;
        if (x <= 0.0) {
            ev.value = 1.0;
            sol.values.push_back(ev);
            continue;
        }
        // Running integral up to x: whole panels by node weights, the partial
        // panel by Gauss-Legendre on the Lagrange reconstruction of F.
        const auto it = std::upper_bound(breaks.begin(), breaks.end(), x);
        const std::size_t p = std::min<std::size_t>(static_cast<std::size_t>(it - breaks.begin()) - 1, panels - 1);
        cplx r = 0.0;
        for (std::size_t k = 0; k < p * order; ++k) r += wq[k] * kernel(x, y[k]) * F(static_cast<Eigen::Index>(k));
        const double a = breaks[p];
        if (x > a) {
            const auto sub = mapped(ref, a, x);
            const double half = 0.5 * (breaks[p + 1] - a);
            const double mid = 0.5 * (breaks[p + 1] + a);
            for (std::size_t q = 0; q < sub.nodes.size(); ++q) {
                const double s = sub.nodes[q];
                const double sref = (s - mid) / half;
                double wsum = 0.0;
                std::array<double, order> w{};
                bool exact = false;
                for (int k = 0; k < order; ++k) {
                    double prod = 1.0;
                    for (int j = 0; j < order; ++j)
                        if (j != k) prod *= ref.nodes[static_cast<std::size_t>(k)] - ref.nodes[static_cast<std::size_t>(j)];
                    const double d = sref - ref.nodes[static_cast<std::size_t>(k)];
                    if (d == 0.0) {
                        w.fill(0.0);
                        w[static_cast<std::size_t>(k)] = 1.0;
                        wsum = 1.0;
                        exact = true;
                        break;
                    }
                    w[static_cast<std::size_t>(k)] = 1.0 / (prod * d);
                    wsum += w[static_cast<std::size_t>(k)];
                }
                cplx Fs = 0.0;
                for (int k = 0; k < order; ++k)
                    Fs += w[static_cast<std::size_t>(k)] * F(static_cast<Eigen::Index>(p * order + static_cast<std::size_t>(k)));
                if (!exact) Fs /= wsum;
                r += sub.weights[q] * kernel(x, s) * Fs;
            }
        }
        const cplx j = bessel_j(gamma, lambda, x);
        const cplx psi = j + r;
        ev.besselPart = j;
        ev.rho = r;
        ev.psi = psi;
        ev.value = normalization * psi / std::sqrt(profile.m(x));
        sol.values.push_back(ev);
    }
    return sol;
}

}  // namespace hfc
