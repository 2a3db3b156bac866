#include "hyperfc/waves.hpp"

#include "hyperfc/characters.hpp"
#include "hyperfc/errors.hpp"
#include "hyperfc/fracint.hpp"
#include "hyperfc/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace hfc {
namespace {

constexpr double supportThreshold = 1e-12;

void require_closed_form(ModelTag tag) {
    if (tag == ModelTag::mehler) throw DomainError("no closed-form cosine family for the mehler model");
}

void check_room(const SampledFunction& h, double t, Truncation policy, const char* what) {
    if (policy == Truncation::allow) return;
    const double overshoot = support_of(h, supportThreshold) + std::abs(t) - h.grid->xMax;
    if (overshoot > 0.0) throw TruncationError(what, overshoot);
}

double smooth_bump(double x, double c, double r) {
    const double u = (x - c) / r;
    return std::abs(u) < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - u * u)) : 0.0;
}

SampledFunction apply_on_grid(const CosineFamily& family, double t) {
    const auto& grid = family.data().grid;
    SampledFunction out{grid, std::vector<double>(grid->size())};
    for (std::size_t j = 0; j < grid->size(); ++j) out.values[j] = family(grid->nodes[j], t);
    return out;
}

}  // namespace

CosineFamily::CosineFamily(const HypergroupModel& model, const SampledFunction& h)
    : tag_(model.tag), h_(h), translate_([&] {
          require_closed_form(model.tag);
          SampledFunction weighted{h.grid, h.values};
          for (std::size_t j = 0; j < h.size(); ++j) {
              const double x = h.grid->nodes[j];
              weighted.values[j] *= model.tag == ModelTag::cosh ? std::cosh(x) : std::sinh(x);
          }
          return Interpolant(weighted);
      }()) {}

double CosineFamily::operator()(double s, double t) const {
    t = std::abs(t);
    const double plus = translate_(s + t);
    const double d = s - t;
    if (tag_ == ModelTag::cosh) return (plus + translate_(std::abs(d))) / (2.0 * std::cosh(s));
    const double minus = d >= 0.0 ? translate_(d) : -translate_(-d);
    return (plus + minus) / (2.0 * std::sinh(s));
}

SampledFunction cosine_apply(const HypergroupModel& model, double t, const SampledFunction& h, Truncation policy) {
    require_closed_form(model.tag);
    check_room(h, t, policy, "cosine_apply: support(h) + t exceeds the grid");
    if (t == 0.0) return h;
    return apply_on_grid(CosineFamily(model, h), t);
}

WaveState wave_state(const HypergroupModel& model, double t, const SampledFunction& h) {
    auto u = cosine_apply(model, t, h);
    return {u.grid, std::move(u.values), t, model.tag};
}

double wave_residual(const HypergroupModel& model, const SampledFunction& h, double t, double delta) {
    const CosineFamily family(model, h);
    const auto& grid = *h.grid;
    const double w2 = model.profile.omega0 * model.profile.omega0;
    double worst = 0.0;
    for (double x : grid.nodes) {
        if (x < 2.0 * delta || x > grid.xMax - std::abs(t) - 2.0 * delta) continue;
        const double u = family(x, t);
        const double utt = (family(x, t + delta) - 2.0 * u + family(x, t - delta)) / (delta * delta);
        const double up = family(x + delta, t);
        const double um = family(x - delta, t);
        const double uss = (up - 2.0 * u + um) / (delta * delta);
        const double us = (up - um) / (2.0 * delta);
        const double Lu = -uss - model.profile.log_derivative(x) * us;
        worst = std::max(worst, std::abs(utt + Lu - w2 * u));
    }
    return worst;
}

double initial_velocity(const HypergroupModel& model, const SampledFunction& h, double delta) {
    const CosineFamily family(model, h);
    double worst = 0.0;
    for (double x : h.grid->nodes)
        worst = std::max(worst, std::abs(family(x, delta) - family(x, -delta)) / (2.0 * delta));
    return worst;
}

double support_radius(const HypergroupModel& model, double t, const SampledFunction& h) {
    return support_of(cosine_apply(model, t, h), 1e-10);
}

double cosh_growth_constant(double p) {
    if (!(p >= 2.0)) throw DomainError("cosh growth bound requires p >= 2");
    if (std::isinf(p)) return 1.5;
    return 0.5 * (std::pow(2.0, (p - 2.0) / p) + std::pow(2.0, 1.0 / p));
}

std::vector<SampledFunction> random_bumps(const GridPtr& grid, int count, double maxSupport, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pieces(1, 3);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<SampledFunction> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        struct Piece {
            double c, r, a;
        };
        std::vector<Piece> ps;
        const int k = pieces(rng);
        for (int j = 0; j < k; ++j) {
            const double r = 0.2 + 0.8 * unit(rng);
            const double c = r + (maxSupport - 2.0 * r) * unit(rng);
            ps.push_back({c, r, 2.0 * unit(rng) - 1.0});
        }
        out.push_back(sample(grid, [ps](double x) {
            double s = 0.0;
            for (const auto& p : ps) s += p.a * smooth_bump(x, p.c, p.r);
            return s;
        }));
    }
    return out;
}

CheckReport norm_growth(const HypergroupModel& model, double p, std::span<const double> tList, int trials,
                        std::uint64_t seed) {
    if (model.tag != ModelTag::cosh) throw DomainError("norm_growth is defined for the cosh model");
    const auto grid = make_grid(model.profile);
    const double tMax = tList.empty() ? 0.0 : *std::max_element(tList.begin(), tList.end());
    const auto data = random_bumps(grid, trials, std::min(8.0, grid->xMax - tMax - 0.5), seed);
    const double exponent = (p - 2.0) / p;
    const double cp = cosh_growth_constant(p);
    CheckReport r;
    double empirical = 0.0;
    for (double t : tList) {
        double worst = 0.0;
        for (const auto& h : data) worst = std::max(worst, lp_norm(cosine_apply(model, t, h), p) / lp_norm(h, p));
        const double growth = std::pow(std::cosh(t), exponent);
        empirical = std::max(empirical, worst / growth);
        r.at_most("ratio.t=" + std::to_string(t).substr(0, 4), "||cos(tA)h||_p/||h||_p <= c_p (cosh t)^((p-2)/p)",
                  worst, cp * growth);
    }
    r.note("c_p.empirical", "max ratio / (cosh t)^((p-2)/p)", empirical);
    r.note("c_p.analytic", "two-translate constant", cp);
    return r;
}

SampledFunction spherical_mean(double t, const SampledFunction& f, Truncation policy) {
    check_room(f, t, policy, "spherical_mean: support(f) + t exceeds the grid");
    if (t == 0.0) return f;
    t = std::abs(t);
    const Interpolant F(f);
    const auto& rule = gauss_legendre(64);
    const auto& grid = f.grid;
    SampledFunction out{grid, std::vector<double>(grid->size())};
    const double ct = std::cosh(t);
    const double st = std::sinh(t);
    for (std::size_t j = 0; j < grid->size(); ++j) {
        const double x = grid->nodes[j];
        const double a = std::cosh(x) * ct;
        const double b = std::sinh(x) * st;
        double s = 0.0;
        for (std::size_t k = 0; k < rule.nodes.size(); ++k)
            s += rule.weights[k] * F(std::acosh(std::max(1.0, a - b * rule.nodes[k])));
        out.values[j] = 0.5 * s;
    }
    return out;
}

SampledFunction time_integral(const HypergroupModel& model, TimeKernel kernel, int n, double t,
                              const SampledFunction& h, int nodes) {
    if (n < 1) throw DomainError("time_integral requires n >= 1");
    check_room(h, t, Truncation::reject, "time_integral: support(h) + t exceeds the grid");
    const auto& grid = h.grid;
    SampledFunction out{grid, std::vector<double>(grid->size(), 0.0)};
    if (t == 0.0) return out;
    const CosineFamily family(model, h);
    const auto rule = mapped(gauss_legendre(nodes), 0.0, std::abs(t));
    const double norm = 1.0 / std::tgamma(static_cast<double>(n));
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
        const double s = rule.nodes[k];
        double w = rule.weights[k] * norm * std::pow(std::cosh(t) - std::cosh(s), n - 1);
        if (kernel == TimeKernel::w) w *= std::sinh(s);
        for (std::size_t j = 0; j < grid->size(); ++j) out.values[j] += w * family(grid->nodes[j], s);
    }
    return out;
}

CheckReport frac_wave_check(double t, const SampledFunction& f) {
    const auto model = build_model(ModelTag::sl2c);
    const auto mean = spherical_mean(t, f);
    const auto w1 = time_integral(model, TimeKernel::w, 1, t, f);
    const auto u1 = time_integral(model, TimeKernel::u, 1, t, f);
    const double st = std::sinh(t);
    double errW = 0.0;
    double errU = 0.0;
    double scaleW = 0.0;
    double scaleU = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j) {
        errW = std::max(errW, std::abs(w1.values[j] - st * st * mean.values[j]));
        errU = std::max(errU, std::abs(u1.values[j] - st * mean.values[j]));
        scaleW = std::max(scaleW, std::abs(st * st * mean.values[j]));
        scaleU = std::max(scaleU, std::abs(st * mean.values[j]));
    }
    CheckReport r;
    r.at_most("grid.W1_printed", "W_1(cos(.A)) f = sinh^2 t A_t f", scaleW > 0.0 ? errW / scaleW : errW, 1e-3);
    r.at_most("grid.U1", "U_1(cos(.A)) f = sinh t A_t f", scaleU > 0.0 ? errU / scaleU : errU, 1e-3);

    constexpr double lambda = 1.5;
    const ComplexFn wave = [](double s) { return cplx(std::cos(lambda * s)); };
    const double phiT = phi_closed(model, lambda, t).real();
    const double rhsW = st * st * phiT;
    const double rhsU = st * phiT;
    r.near("scalar.W1_printed", "W_1(cos(1.5 .))(t) = sinh^2 t phi_1.5(t)", w_alpha(wave, FracOrder(1.0), t).real(),
           rhsW, 1e-3 * std::max(1e-300, std::abs(rhsW)));
    r.near("scalar.U1", "U_1(cos(1.5 .))(t) = sinh t phi_1.5(t)", u_beta(wave, FracOrder(1.0), t).real(), rhsU,
           1e-3 * std::max(1e-300, std::abs(rhsU)));
    r.note("sigma_t.normalization", "Gamma(3/2)/(2 pi^(3/2)) times sphere area 4 pi sinh^2 t, over sinh^2 t",
           std::tgamma(1.5) / (2.0 * std::pow(std::numbers::pi, 1.5)) * 4.0 * std::numbers::pi);
    return r;
}

CheckReport wn_growth(const HypergroupModel& model, int n, std::span<const double> tList, double p, int trials,
                      std::uint64_t seed) {
    if (model.tag != ModelTag::cosh) throw DomainError("wn_growth is defined for the cosh model");
    if (n < 1 || n > 3) throw DomainError("wn_growth supports n in {1, 2, 3}");
    constexpr int nodes = 32;
    const auto grid = make_grid(model.profile);
    const double tMax = tList.empty() ? 0.0 : *std::max_element(tList.begin(), tList.end());
    const auto data = random_bumps(grid, trials, std::min(8.0, grid->xMax - tMax - 0.5), seed);
    const double omega = (p - 2.0) / p;

    // M0: sup of ||cos(sA)h|| / (||h|| cosh(omega s)) over the data and every time node used below.
    double m0 = 1.0;
    for (const auto& h : data) {
        const double base = lp_norm(h, p);
        const CosineFamily family(model, h);
        for (double t : tList) {
            const auto rule = mapped(gauss_legendre(nodes), 0.0, t);
            for (double s : rule.nodes)
                m0 = std::max(m0, lp_norm(apply_on_grid(family, s), p) / (base * std::cosh(omega * s)));
        }
    }
    const double gammaRatio = std::tgamma(omega + 1.0) / std::tgamma(omega + n + 1.0);
    CheckReport r;
    r.note("M0", "measured sup ||cos(sA)h||_p / (||h||_p cosh(omega s))", m0);
    for (double t : tList) {
        double worst = 0.0;
        for (const auto& h : data) {
            const auto wn = time_integral(model, TimeKernel::w, n, t, h, nodes);
            worst = std::max(worst, lp_norm(wn, p) / (lp_norm(h, p) * std::pow(std::sinh(t), n)));
        }
        const double bound = m0 * gammaRatio * std::cosh(omega * t) * 1.1;
        r.at_most("n" + std::to_string(n) + ".t=" + std::to_string(t).substr(0, 4),
                  "||W_n(cos(.A))h|| / sinh^n t <= M0 Gamma ratio cosh(omega t) (1.1)", worst, bound);
        r.note("n" + std::to_string(n) + ".t=" + std::to_string(t).substr(0, 4) + ".max_over_bound",
               "largest ratio over the unslacked bound", worst / (bound / 1.1));
    }
    return r;
}

}  // namespace hfc
