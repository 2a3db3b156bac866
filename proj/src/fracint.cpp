#include "hyperfc/fracint.hpp"

#include "hyperfc/characters.hpp"
#include "hyperfc/errors.hpp"
#include "hyperfc/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace hfc {
namespace {

constexpr int nodeCount = 64;
constexpr double pi = std::numbers::pi;

// int_0^x (cosh x - cosh t)^(a-1) g(t) dt by Gauss-Jacobi in t with weight
// (x - t)^(a-1); the remaining factor ((cosh x - cosh t)/(x - t))^(a-1) is smooth.
cplx kernel_integral(const ComplexFn& g, double a, double x) {
    if (x < 0.0) throw DomainError("fractional integrals require x >= 0");
    if (x == 0.0) return 0.0;
    const auto& rule = gauss_jacobi(nodeCount, a - 1.0, 0.0);
    const double half = 0.5 * x;
    cplx s = 0.0;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
        const double t = half * (1.0 + rule.nodes[k]);
        const double d = 0.5 * (x - t);
        const double sinhc = d < 1e-8 ? 1.0 + d * d / 6.0 : std::sinh(d) / d;
        const double smooth = std::sinh(0.5 * (x + t)) * sinhc;
        s += rule.weights[k] * std::pow(smooth, a - 1.0) * g(t);
    }
    return std::pow(half, a) * s;
}

double relative(cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

FracOrder::FracOrder(double alpha) : alpha_(alpha) {
    if (!(alpha > 0.0)) throw DomainError("fractional order must be positive");
}

cplx w_alpha(const ComplexFn& f, FracOrder alpha, double x) {
    const double a = alpha.value();
    return kernel_integral([&f](double t) { return std::sinh(t) * f(t); }, a, x) / std::tgamma(a);
}

cplx u_beta(const ComplexFn& f, FracOrder beta, double x) {
    const double b = beta.value();
    return kernel_integral(f, b, x) / std::tgamma(b);
}

cplx central_derivative(const ComplexFn& F, double x, double h) {
    if (x < 2.0 * h) throw DomainError("central difference stencil leaves the domain");
    return (F(x - 2.0 * h) - 8.0 * F(x - h) + 8.0 * F(x + h) - F(x + 2.0 * h)) / (12.0 * h);
}

cplx d_s_power(const ComplexFn& g, int n, double t) {
    constexpr double h = 1e-3;
    if (n < 1 || n > 3) throw DomainError("d_s_power supports 1 <= n <= 3");
    if (t < 10.0 * h) throw DomainError("d_s_power too close to the cosech pole");
    if (n == 1) return central_derivative([&g](double s) { return g(s) / std::sinh(s); }, t, h);
    const ComplexFn inner = [&g, n](double s) { return d_s_power(g, n - 1, s) / std::sinh(s); };
    return central_derivative(inner, t, h);
}

CheckReport mehler_dirichlet_check(int nu, double lambda, double x) {
    if (nu < 0 || nu > 2) throw DomainError("mehler_dirichlet_check supports nu in {0, 1, 2}");
    CheckReport r;
    const ComplexFn wave = [lambda](double t) { return cplx(std::cos(lambda * t)); };
    const std::string tag = "nu" + std::to_string(nu);
    if (nu == 0) {
        const auto mehler = build_model(ModelTag::mehler);
        const cplx link = std::sqrt(2.0 / pi) * u_beta(wave, FracOrder(0.5), x);
        r.near(tag + ".phi_link", "phi = sqrt(2/pi) U_1/2 cos(lambda .)", std::abs(link - phi_closed(mehler, lambda, x)),
               0.0, 1e-6);
        const ComplexFn phi = [&mehler, lambda](double t) { return phi_closed(mehler, lambda, t); };
        const ComplexFn lifted = [&phi](double y) { return std::sqrt(pi / 2.0) * w_alpha(phi, FracOrder(0.5), y); };
        r.near(tag + ".cos_link", "cos(lambda x) = d/dx sqrt(pi/2) W_1/2 phi",
               std::abs(central_derivative(lifted, x) - std::cos(lambda * x)), 0.0, 1e-6);
        return r;
    }
    const double order = nu + 0.5;
    const ComplexFn upper = [&wave, order](double y) { return u_beta(wave, FracOrder(order), y); };
    const cplx rhs = central_derivative(upper, x);
    const cplx printed = w_alpha(wave, FracOrder(order - 1.0), x);
    const cplx corrected = std::sinh(x) * u_beta(wave, FracOrder(order - 1.0), x);
    r.near(tag + ".printed", "W_{nu-1/2} cos = d/dx U_{nu+1/2} cos", std::abs(printed - rhs), 0.0, 1e-5);
    r.near(tag + ".corrected", "sinh x U_{nu-1/2} cos = d/dx U_{nu+1/2} cos", std::abs(corrected - rhs), 0.0, 1e-5);
    return r;
}

double growth_bound_ratio(int n, double omega0, double xMin, double xMax, int samples) {
    const ComplexFn envelope = [omega0](double t) { return cplx(std::cosh(omega0 * t)); };
    const double c = std::tgamma(omega0 + 1.0) / std::tgamma(omega0 + n + 1.0);
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double x = xMin + (xMax - xMin) * i / std::max(1, samples - 1);
        const double w = w_alpha(envelope, FracOrder(n), x).real();
        worst = std::max(worst, w / std::pow(std::sinh(x), n) / (c * std::cosh(omega0 * x)));
    }
    return worst;
}

CheckReport fracint_suite() {
    struct Named {
        const char* name;
        ComplexFn f;
    };
    const std::vector<Named> functions{
        {"cos2t", [](double t) { return cplx(std::cos(2.0 * t)); }},
        {"exp", [](double t) { return cplx(std::exp(-t)); }},
        {"t2", [](double t) { return cplx(t * t); }},
    };
    const std::vector<double> xs{0.5, 1.0, 2.0, 4.0};
    CheckReport r;

    const std::vector<std::pair<double, double>> pairs{{0.5, 0.5}, {0.5, 1.0}, {1.0, 1.0}};
    for (const auto& [a, b] : pairs) {
        double worstW = 0.0;
        double worstU = 0.0;
        for (const auto& [name, f] : functions) {
            const ComplexFn wb = [&f, b](double t) { return w_alpha(f, FracOrder(b), t); };
            const ComplexFn ub = [&f, b](double t) { return u_beta(f, FracOrder(b), t); };
            for (double x : xs) {
                worstW = std::max(worstW, relative(w_alpha(wb, FracOrder(a), x), w_alpha(f, FracOrder(a + b), x)));
                worstU = std::max(worstU, relative(w_alpha(ub, FracOrder(a), x), u_beta(f, FracOrder(a + b), x)));
            }
        }
        const std::string label = std::to_string(a).substr(0, 3) + "," + std::to_string(b).substr(0, 3);
        r.at_most("semigroup.W(" + label + ")", "W_a W_b = W_{a+b}", worstW, 1e-7);
        r.at_most("mixed.WU(" + label + ")", "W_a U_b = U_{a+b}", worstU, 1e-7);
    }

    double worstW1 = 0.0;
    double worstU1 = 0.0;
    for (const auto& [name, f] : functions) {
        const ComplexFn w1 = [&f](double y) { return w_alpha(f, FracOrder(1.0), y); };
        const ComplexFn u1 = [&f](double y) { return u_beta(f, FracOrder(1.0), y); };
        for (double x : {0.5, 1.0, 2.0, 1.3}) {
            worstW1 = std::max(worstW1, std::abs(central_derivative(w1, x) / std::sinh(x) - f(x)));
            worstU1 = std::max(worstU1, std::abs(central_derivative(u1, x) - f(x)));
        }
    }
    r.at_most("left_inverse.cosechDW1", "cosech x D W_1 = I", worstW1, 1e-7);
    r.at_most("left_inverse.DU1", "D U_1 = I", worstU1, 1e-7);

    for (double lambda : {0.5, 2.0})
        for (double x : {0.8, 2.0})
            r.append(mehler_dirichlet_check(0, lambda, x), "mehler(" + std::to_string(lambda).substr(0, 3) + "," +
                                                               std::to_string(x).substr(0, 3) + ")");
    for (int nu : {1, 2}) r.append(mehler_dirichlet_check(nu, 1.0, 1.0), "derivative");

    for (int n = 1; n <= 3; ++n)
        r.at_most("growth.n" + std::to_string(n), "W_n(cosh(t/2))/sinh^n vs Gamma ratio cosh(t/2), slack 0.1",
                  growth_bound_ratio(n, 0.5, 0.05, 12.0, 240), 1.1);
    return r;
}

}  // namespace hfc
