#include "hyperfc/transforms.hpp"

#include "hyperfc/characters.hpp"
#include "hyperfc/errors.hpp"
#include "hyperfc/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <fstream>
#include <iomanip>
#include <memory>
#include <mutex>
#include <numbers>

namespace hfc {
namespace {

constexpr double pi = std::numbers::pi;

std::size_t model_index(ModelTag tag) { return static_cast<std::size_t>(tag); }

// Recently used character tables; forward, inverse and calibration share them.
std::shared_ptr<const Eigen::MatrixXd> cached_table(const HypergroupModel& model,
                                                    std::span<const double> lambdas,
                                                    std::span<const double> xs) {
    struct Entry {
        ModelTag tag;
        std::vector<double> lambdas;
        std::vector<double> xs;
        std::shared_ptr<const Eigen::MatrixXd> table;
    };
    constexpr std::size_t capacity = 8;
    static std::mutex mutex;
    static std::deque<Entry> entries;
    auto matches = [&](const Entry& e) {
        return e.tag == model.tag && std::ranges::equal(e.lambdas, lambdas) && std::ranges::equal(e.xs, xs);
    };
    {
        std::lock_guard lock(mutex);
        const auto it = std::find_if(entries.begin(), entries.end(), matches);
        if (it != entries.end()) return it->table;
    }
    auto table = std::make_shared<const Eigen::MatrixXd>(phi_table(model, lambdas, xs));
    std::lock_guard lock(mutex);
    entries.push_front({model.tag, {lambdas.begin(), lambdas.end()}, {xs.begin(), xs.end()}, table});
    if (entries.size() > capacity) entries.pop_back();
    return table;
}

// Values and quadrature weights only; no Plancherel weights.
SpectralFunction forward_raw(const HypergroupModel& model, const SampledFunction& f,
                             std::span<const double> lambdaNodes) {
    const Grid& grid = *f.grid;
    SpectralFunction out;
    out.lambdaNodes.assign(lambdaNodes.begin(), lambdaNodes.end());
    out.quadWeights = trapezoid_weights(lambdaNodes);
    out.values.assign(lambdaNodes.size(), cplx(0.0));
    Eigen::VectorXd weighted(static_cast<Eigen::Index>(grid.size()));
    bool zero = true;
    for (std::size_t j = 0; j < grid.size(); ++j) {
        weighted(static_cast<Eigen::Index>(j)) = f.values[j] * grid.measureWeights[j];
        zero = zero && f.values[j] == 0.0;
    }
    if (zero || lambdaNodes.empty()) return out;
    const auto table = cached_table(model, lambdaNodes, grid.nodes);
    const Eigen::VectorXd v = *table * weighted;
    for (std::size_t i = 0; i < lambdaNodes.size(); ++i) out.values[i] = v(static_cast<Eigen::Index>(i));
    return out;
}

// Inverse with the given density weights pi0(lambda_j) w_j.
SampledFunction inverse_weighted(const HypergroupModel& model, const SpectralFunction& fhat,
                                 std::span<const double> weights, const GridPtr& grid) {
    SampledFunction out{grid, std::vector<double>(grid->size(), 0.0)};
    Eigen::VectorXd weighted(static_cast<Eigen::Index>(fhat.size()));
    bool zero = true;
    for (std::size_t i = 0; i < fhat.size(); ++i) {
        weighted(static_cast<Eigen::Index>(i)) = fhat.values[i].real() * weights[i];
        zero = zero && fhat.values[i] == cplx(0.0);
    }
    if (zero || fhat.size() == 0) return out;
    const auto table = cached_table(model, fhat.lambdaNodes, grid->nodes);
    const Eigen::VectorXd v = table->transpose() * weighted;
    for (std::size_t j = 0; j < grid->size(); ++j) out.values[j] = v(static_cast<Eigen::Index>(j));
    return out;
}

double inner_m(const SampledFunction& a, const SampledFunction& b) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) s += a.values[j] * b.values[j] * a.grid->measureWeights[j];
    return s;
}

// Least-squares constant c with f ~ c * inverse_shape(forward(f)) for f = exp(-x^2).
double calibrate(ModelTag tag, RealFn shape) {
    auto model = build_model(tag);
    if (shape) model.plancherel = std::move(shape);
    const auto grid = make_grid(model.profile);
    const auto f = sample(grid, [](double x) { return std::exp(-x * x); });
    const auto lambdas = lambda_grid();
    const auto fhat = forward_raw(model, f, lambdas);
    std::vector<double> w(fhat.size());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = model.plancherel(lambdas[i]) * fhat.quadWeights[i];
    const auto back = inverse_weighted(model, fhat, w, grid);
    return inner_m(f, back) / inner_m(back, back);
}

void require_same_grid(const SampledFunction& f, const SampledFunction& g) {
    if (f.grid != g.grid && (f.grid->nodes != g.grid->nodes))
        throw ConfigError("convolve requires both functions on the same grid");
}

}  // namespace

std::vector<double> lambda_grid(double lambdaMax, int count) {
    if (!(lambdaMax > 0.0) || count < 2) throw ConfigError("invalid lambda grid");
    std::vector<double> v(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) v[static_cast<std::size_t>(i)] = lambdaMax * i / (count - 1);
    return v;
}

std::vector<double> trapezoid_weights(std::span<const double> nodes) {
    std::vector<double> w(nodes.size(), 0.0);
    for (std::size_t i = 1; i < nodes.size(); ++i) {
        const double h = 0.5 * (nodes[i] - nodes[i - 1]);
        w[i - 1] += h;
        w[i] += h;
    }
    return w;
}

double plancherel_constant(ModelTag tag) {
    static std::array<std::once_flag, 3> once;
    static std::array<double, 3> constants{};
    const auto k = model_index(tag);
    std::call_once(once[k], [&] { constants[k] = calibrate(tag, {}); });
    return constants[k];
}

double plancherel_density(const HypergroupModel& model, double lambda) {
    return plancherel_constant(model.tag) * model.plancherel(lambda);
}

CheckReport plancherel_calibration() {
    CheckReport r;
    r.near("cosh.c", "density (2/pi) dlambda", plancherel_constant(ModelTag::cosh), 1.0, 1e-4);
    r.near("mehler.c", "density lambda tanh(pi lambda)", plancherel_constant(ModelTag::mehler), 1.0, 1e-4);
    const double c = plancherel_constant(ModelTag::sl2c);
    r.note("sl2c.c_vs_4pi", "constant against lambda^2/(4 pi)", c);
    r.note("sl2c.c_vs_2pi", "constant against lambda^2/(2 pi)",
           calibrate(ModelTag::sl2c, [](double l) { return l * l / (2.0 * pi); }));
    return r;
}

double forward_tail(const HypergroupModel& model, const SampledFunction& f) {
    if (f.size() == 0) return 0.0;
    const Grid& grid = *f.grid;
    const double x = grid.nodes.back();
    return std::abs(f.values.back()) * grid.mValues.back() * std::abs(phi_closed(model, 0.0, x));
}

SpectralFunction forward(const HypergroupModel& model, const SampledFunction& f,
                         std::span<const double> lambdaNodes) {
    const double tail = forward_tail(model, f);
    if (!(tail < tailLimit)) throw TruncationError("forward: tail of f m phi_0 too large", tail);
    auto out = forward_raw(model, f, lambdaNodes);
    out.plancherelWeights.resize(out.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out.plancherelWeights[i] = plancherel_density(model, out.lambdaNodes[i]) * out.quadWeights[i];
    return out;
}

SampledFunction inverse(const HypergroupModel& model, const SpectralFunction& fhat, const GridPtr& grid) {
    std::vector<double> w = fhat.plancherelWeights;
    if (w.size() != fhat.size()) {
        const auto q = fhat.quadWeights.size() == fhat.size() ? fhat.quadWeights
                                                              : trapezoid_weights(fhat.lambdaNodes);
        w.resize(fhat.size());
        for (std::size_t i = 0; i < w.size(); ++i) w[i] = plancherel_density(model, fhat.lambdaNodes[i]) * q[i];
    }
    if (fhat.size() > 0) {
        const double tail = std::abs(fhat.values.back()) * plancherel_density(model, fhat.lambdaNodes.back());
        if (!(tail < tailLimit)) throw TruncationError("inverse: tail of fhat pi0 too large", tail);
    }
    return inverse_weighted(model, fhat, w, grid);
}

SampledFunction convolve(const HypergroupModel& model, const SampledFunction& f, const SampledFunction& g) {
    require_same_grid(f, g);
    const auto& grid = f.grid;
    const auto n = grid->size();
    SampledFunction out{grid, std::vector<double>(n, 0.0)};
    switch (model.tag) {
        case ModelTag::cosh: {
            for (const auto* h : {&f, &g}) {
                const double tail = forward_tail(model, *h);
                if (!(tail < tailLimit)) throw TruncationError("convolve: tail too large", tail);
            }
            SampledFunction gc{grid, g.values};
            for (std::size_t j = 0; j < n; ++j) gc.values[j] *= std::cosh(grid->nodes[j]);
            const Interpolant G(gc);
            for (std::size_t i = 0; i < n; ++i) {
                const double x = grid->nodes[i];
                double s = 0.0;
                for (std::size_t j = 0; j < n; ++j) {
                    const double y = grid->nodes[j];
                    s += grid->quadWeights[j] * f.values[j] * std::cosh(y) * (G(std::abs(x - y)) + G(x + y));
                }
                out.values[i] = s / (2.0 * std::cosh(x));
            }
            return out;
        }
        case ModelTag::sl2c: {
            for (const auto* h : {&f, &g}) {
                const double tail = forward_tail(model, *h);
                if (!(tail < tailLimit)) throw TruncationError("convolve: tail too large", tail);
            }
            // Running integral C(z) of g sinh, sampled at the nodes and interpolated.
            SampledFunction gs{grid, g.values};
            for (std::size_t j = 0; j < n; ++j) gs.values[j] *= std::sinh(grid->nodes[j]);
            const Interpolant running(gs);
            SampledFunction cs{grid, std::vector<double>(n)};
            for (std::size_t j = 0; j < n; ++j) cs.values[j] = running.integral_to(grid->nodes[j]);
            const Interpolant C(cs);
            const double total = running.integral_to(grid->xMax);
            auto c_at = [&](double z) { return z >= grid->xMax ? total : C(z); };
            for (std::size_t i = 0; i < n; ++i) {
                const double x = grid->nodes[i];
                double s = 0.0;
                for (std::size_t j = 0; j < n; ++j) {
                    const double y = grid->nodes[j];
                    s += grid->quadWeights[j] * f.values[j] * std::sinh(y) * (c_at(x + y) - c_at(std::abs(x - y)));
                }
                out.values[i] = 2.0 * s / std::sinh(x);
            }
            return out;
        }
        case ModelTag::mehler: {
            const auto lambdas = lambda_grid();
            auto fh = forward(model, f, lambdas);
            const auto gh = forward(model, g, lambdas);
            for (std::size_t i = 0; i < fh.size(); ++i) fh.values[i] *= gh.values[i];
            return inverse(model, fh, grid);
        }
    }
    return out;
}

double product_formula_residual(const HypergroupModel& model, cplx lambda, double x, double y) {
    const cplx target = phi_closed(model, lambda, x) * phi_closed(model, lambda, y);
    cplx lhs;
    switch (model.tag) {
        case ModelTag::cosh: {
            const double d = std::abs(x - y);
            const double s = x + y;
            lhs = (std::cosh(d) * phi_closed(model, lambda, d) + std::cosh(s) * phi_closed(model, lambda, s)) /
                  (2.0 * std::cosh(x) * std::cosh(y));
            break;
        }
        case ModelTag::sl2c: {
            if (x == 0.0 || y == 0.0) {
                lhs = phi_closed(model, lambda, x + y);
                break;
            }
            const auto rule = mapped(gauss_legendre(64), std::abs(x - y), x + y);
            for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
                const double t = rule.nodes[k];
                lhs += rule.weights[k] * phi_closed(model, lambda, t) * std::sinh(t);
            }
            lhs /= 2.0 * std::sinh(x) * std::sinh(y);
            break;
        }
        case ModelTag::mehler: {
            // Geodesic law of cosines on the hyperbolic plane, averaged over the angle.
            constexpr int n = 64;
            for (int k = 0; k <= n; ++k) {
                const double th = pi * k / n;
                const double c = std::cosh(x) * std::cosh(y) + std::sinh(x) * std::sinh(y) * std::cos(th);
                const double w = (k == 0 || k == n) ? 0.5 : 1.0;
                lhs += w * phi_closed(model, lambda, std::acosh(std::max(c, 1.0)));
            }
            lhs /= static_cast<double>(n);
            break;
        }
    }
    return std::abs(lhs - target);
}

CheckReport pair_table() {
    const auto model = build_model(ModelTag::mehler);
    const auto grid = make_grid(model.profile, 60.0, 96, 16);
    std::vector<double> lambdas;
    for (int i = 0; i <= 60; ++i) lambdas.push_back(0.25 + 3.75 * i / 60.0);

    auto sech_power = [&](int nu) {
        return sample(grid, [nu](double x) { return std::pow(1.0 / std::cosh(0.5 * x), nu); });
    };
    auto rel_error = [&](int nu, auto&& exact) {
        const auto fh = forward(model, sech_power(nu), lambdas);
        double worst = 0.0;
        for (std::size_t i = 0; i < lambdas.size(); ++i) {
            const double e = exact(lambdas[i]);
            worst = std::max(worst, std::abs(fh.values[i].real() - e) / std::abs(e));
        }
        return worst;
    };

    CheckReport r;
    r.at_most("sech3.relerr", "sech^3(x/2) -> 8 lambda cosech(pi lambda)",
              rel_error(3, [](double l) { return 8.0 * l / std::sinh(pi * l); }), 1e-3);
    r.at_most("sech5.relerr", "sech^5(x/2) -> (16/3) lambda^3 cosech(pi lambda)",
              rel_error(5, [](double l) { return 16.0 / 3.0 * l * l * l / std::sinh(pi * l); }), 1e-3);
    r.at_most("sech5.corrected_relerr", "sech^5(x/2) -> (32/9) lambda (1 + lambda^2) cosech(pi lambda)",
              rel_error(5, [](double l) { return 32.0 / 9.0 * l * (1.0 + l * l) / std::sinh(pi * l); }), 1e-3);

    const auto fh2 = forward(model, sech_power(2), lambdas);
    std::vector<double> ratio(lambdas.size());
    double mean = 0.0;
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        ratio[i] = fh2.values[i].real() * std::cosh(pi * lambdas[i]);
        mean += ratio[i] / static_cast<double>(lambdas.size());
    }
    double spread = 0.0;
    for (double v : ratio) spread = std::max(spread, std::abs(v - mean) / std::abs(mean));
    r.at_most("sech2.ratio_spread", "sech^2(x/2) -> c sech(pi lambda): ratio constant", spread, 1e-3);
    r.note("sech2.constant", "fitted c for sech^2(x/2)", mean);
    return r;
}

bool venturi_contains(cplx z, const VenturiRegion& region) {
    if (std::abs(z.imag()) < region.omega) return true;
    if (z == cplx(0.0)) return false;
    return std::abs(std::arg(z)) < region.theta || std::abs(std::arg(-z)) < region.theta;
}

VenturiProbe venturi_norm_probe(const std::function<cplx(cplx)>& f, const VenturiRegion& region, int k) {
    constexpr double offset = 1e-2;
    constexpr double radius = 50.0;
    constexpr double exclusion = 1e-3;
    constexpr double blowUpLevel = 1e6;
    constexpr double nearPole = 0.02;
    if (!(region.theta > 0.0 && region.theta < pi) || !(region.omega > 0.0) || k < 0)
        throw ConfigError("invalid Venturi region or k");

    // Sample points in the closed upper half; conjugates and negatives added below.
    std::vector<cplx> mesh;
    const double w = region.omega - offset;
    if (region.theta < pi / 2) {
        const double corner = region.omega / std::tan(region.theta);
        constexpr int lineCount = 2000;
        for (int i = -lineCount; i <= lineCount; ++i) mesh.emplace_back(corner * i / lineCount, w);
        const double r0 = region.omega / std::sin(region.theta);
        constexpr int rayCount = 5000;
        for (int i = 0; i <= rayCount; ++i) {
            const double r = r0 + (radius - r0) * std::pow(static_cast<double>(i) / rayCount, 2.0);
            const double a = region.theta - std::asin(std::min(1.0, offset / r));
            mesh.push_back(std::polar(r, a));
        }
        constexpr int arcCount = 1000;
        for (int i = 0; i <= arcCount; ++i)
            mesh.push_back(std::polar(radius - offset, region.theta * i / arcCount));
    } else {
        constexpr int arcCount = 4000;
        for (int i = 0; i <= arcCount; ++i) mesh.push_back(std::polar(radius - offset, pi * i / arcCount));
        for (int i = 1; i <= 4000; ++i) mesh.emplace_back(0.0, (radius - offset) * i / 4000.0);
    }
    for (int i = 0; i <= 10000; ++i) mesh.emplace_back(radius * i / 10000.0, 0.0);
    const std::size_t base = mesh.size();
    for (std::size_t i = 0; i < base; ++i) {
        mesh.push_back(std::conj(mesh[i]));
        mesh.push_back(-mesh[i]);
        mesh.push_back(-std::conj(mesh[i]));
    }

    // Pole search on a lattice over the region widened by 0.05.
    VenturiProbe out;
    const VenturiRegion wide{std::min(region.theta + 0.05, pi), region.omega + 0.05};
    constexpr double step = 0.1;
    const int span = static_cast<int>(radius / step);
    auto recip = [&](cplx z) { return 1.0 / f(z); };
    std::vector<cplx> candidates;
    for (int a = -span; a <= span; ++a) {
        for (int b = -span; b <= span; ++b) {
            const cplx z(a * step + 0.5 * step * 0.37, b * step + 0.5 * step * 0.61);
            if (std::abs(z) > radius || !venturi_contains(z, wide)) continue;
            const double g = std::abs(recip(z));
            bool local = std::isfinite(g) && g < 1.0;
            for (const cplx d : {cplx(step, 0), cplx(-step, 0), cplx(0, step), cplx(0, -step)})
                local = local && std::abs(recip(z + d)) >= g;
            if (local) candidates.push_back(z);
        }
    }
    for (cplx z : candidates) {
        const cplx start = z;
        for (int it = 0; it < 50; ++it) {
            constexpr double h = 1e-6;
            const cplx g = recip(z);
            const cplx dg = (recip(z + h) - recip(z - h)) / (2.0 * h);
            if (!std::isfinite(std::abs(dg)) || std::abs(dg) == 0.0) break;
            const cplx dz = g / dg;
            z -= dz;
            if (std::abs(dz) < 1e-14 * std::max(1.0, std::abs(z))) break;
        }
        const bool converged = std::abs(z - start) < 2.0 * step &&
                               (!std::isfinite(std::abs(f(z))) || std::abs(recip(z)) < 1e-9);
        if (!converged) continue;
        const bool seen = std::any_of(out.poles.begin(), out.poles.end(),
                                      [&](cplx p) { return std::abs(p - z) < 1e-6; });
        if (!seen) out.poles.push_back(z);
    }

    for (cplx z : mesh) {
        const bool excluded = std::any_of(out.poles.begin(), out.poles.end(),
                                          [&](cplx p) { return std::abs(p - z) < exclusion; });
        if (excluded) continue;
        const double v = std::abs(f(z));
        if (!std::isfinite(v)) continue;
        if (v > out.sup) {
            out.sup = v;
            out.argSup = z;
        }
        out.supK = std::max(out.supK, std::pow(std::abs(z), k) * v);
    }
    const VenturiRegion closeBy{region.theta, region.omega + nearPole};
    const bool poleNear = std::any_of(out.poles.begin(), out.poles.end(), [&](cplx p) {
        return std::abs(p) <= radius && venturi_contains(p, closeBy);
    });
    out.blowUp = out.sup > blowUpLevel || poleNear;

    out.report.note("sup", "sup |f| on the inset boundary mesh", out.sup);
    out.report.note("supK", "sup |z^k f| on the inset boundary mesh", out.supK);
    out.report.note("poles", "poles detected near the region", static_cast<double>(out.poles.size()));
    out.report.holds("bounded", "no blow-up on the region", !out.blowUp);
    return out;
}

void write_curve_csv(const std::filesystem::path& path, const std::string& header,
                     std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) throw ConfigError("curve columns differ in length");
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw std::ios_base::failure("cannot open " + tmp.string());
        out << header << '\n' << std::setprecision(17);
        for (std::size_t i = 0; i < xs.size(); ++i) out << xs[i] << ',' << ys[i] << '\n';
        if (!out) throw std::ios_base::failure("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace hfc
