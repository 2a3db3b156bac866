#include <doctest.h>

#include "hyperfc/characters.hpp"
#include "hyperfc/errors.hpp"
#include "hyperfc/opcalc.hpp"
#include "hyperfc/transforms.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace hfc;
constexpr double pi = std::numbers::pi;

namespace {

struct Setup {
    HypergroupModel model;
    GridPtr grid;
    OperatorContext ctx;

    explicit Setup(ModelTag tag, double xMax = 30.0, int panels = 48)
        : model(build_model(tag)), grid(make_grid(model.profile, xMax, panels)), ctx(discretize(model, grid)) {}
};

double relative_gap(std::span<const double> a, std::span<const double> b, const Grid& grid) {
    std::vector<double> d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
    return lp_norm(grid, d, 2.0) / lp_norm(grid, b, 2.0);
}

const RealFn gaussFourier = [](double xi) { return std::sqrt(pi) * std::exp(-0.25 * xi * xi); };

}  // namespace

TEST_CASE("operator calculus suite") {
    for (auto tag : {ModelTag::cosh, ModelTag::sl2c}) {
        const auto r = opcalc_suite(tag);
        for (const auto& c : r.checks) CHECK_MESSAGE(c.pass, model_name(tag) << " " << c.name << " " << c.measured);
    }
}

TEST_CASE("cosh model against the direct integral of f(t) cos(tA) cosh t") {
    const Setup s(ModelTag::cosh);
    const auto f = [](double x) { return std::exp(-2.0 * x * x); };
    const auto fs = sample(s.grid, f);
    const auto h = sample(s.grid, [](double x) { return std::exp(-x * x) * (1.0 + x * x); });
    // (T h)(s) = (1 / (2 cosh s)) int h(y) cosh y (g(|s - y|) + g(s + y)) dy, g = f cosh.
    const auto& g = *s.grid;
    std::vector<double> oracle(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < g.size(); ++j) {
            const double a = std::abs(g.nodes[i] - g.nodes[j]);
            const double b = g.nodes[i] + g.nodes[j];
            acc += g.quadWeights[j] * h.values[j] * std::cosh(g.nodes[j]) * (f(a) * std::cosh(a) + f(b) * std::cosh(b));
        }
        oracle[i] = acc / (2.0 * std::cosh(g.nodes[i]));
    }
    CHECK(relative_gap(t_a(s.ctx, fs).apply(h.values), oracle, g) <= 1e-8);
    CHECK(relative_gap(t_a_cosine(s.ctx, fs).apply(h.values), oracle, g) <= 1e-8);
}

TEST_CASE("kernel of T_A(f) is symmetric") {
    for (auto tag : {ModelTag::cosh, ModelTag::sl2c}) {
        const Setup s(tag, 20.0, 32);
        const auto k = t_a(s.ctx, sample(s.grid, [](double x) { return std::exp(-x * x) * (1.0 + x); }));
        const double scale = k.entries.cwiseAbs().maxCoeff();
        CHECK((k.entries - k.entries.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * scale);
    }
}

TEST_CASE("narrow unit mass approximates the identity") {
    const Setup s(ModelTag::cosh, 10.0, 64);
    const auto h = sample(s.grid, [](double x) { return std::exp(-(x - 3.0) * (x - 3.0)) + std::exp(-(x + 3.0) * (x + 3.0)); });
    auto error_at = [&](double width) {
        auto f = sample(s.grid, [width](double x) { return std::exp(-x * x / (width * width)); });
        double total = 0.0;
        for (std::size_t j = 0; j < f.size(); ++j) total += f.values[j] * s.grid->measureWeights[j];
        for (double& v : f.values) v /= total;
        return relative_gap(t_a(s.ctx, f).apply(h.values), h.values, *s.grid);
    };
    const double coarse = error_at(0.1);
    const double fine = error_at(0.05);
    CHECK(fine <= 1e-2);
    CHECK(coarse / fine == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("diagonalization over a spectral sweep") {
    std::vector<double> lambdas;
    for (int i = 1; i <= 16; ++i) lambdas.push_back(0.25 * i);
    for (auto tag : {ModelTag::cosh, ModelTag::sl2c}) {
        const Setup s(tag);
        for (const RealFn& f : {RealFn([](double x) { return std::exp(-2.0 * x * x); }),
                                RealFn([](double x) { return x * x * std::exp(-3.0 * x * x); })})
            CHECK(diagonalization_residual(s.ctx, sample(s.grid, f), lambdas) <= 1e-3);
    }
}

TEST_CASE("multiplicativity") {
    const Setup cosh(ModelTag::cosh);
    const auto gauss = sample(cosh.grid, [](double x) { return std::exp(-2.0 * x * x); });
    CHECK(homomorphism_residual(cosh.ctx, gauss, gauss) <= 1e-3);
    const auto narrow = sample(cosh.grid, [](double x) { return std::exp(-100.0 * x * x); });
    CHECK(homomorphism_residual(cosh.ctx, narrow, gauss) <= 1e-3);

    const Setup sl2c(ModelTag::sl2c);
    const auto f = sample(sl2c.grid, [](double x) { return std::exp(-x * x); });
    const auto g = sample(sl2c.grid, [](double x) { return x * std::exp(-x * x); });
    CHECK(homomorphism_residual(sl2c.ctx, f, g) <= 1e-3);
}

TEST_CASE("multiplier identity") {
    for (auto tag : {ModelTag::cosh, ModelTag::sl2c}) {
        const Setup s(tag);
        CHECK(multiplier_residual(s.ctx, gaussFourier, 1.0) <= 1e-4);
        CHECK(multiplier_residual(s.ctx, gaussFourier, 0.0) <= 1e-4);
        CHECK(multiplier_residual(s.ctx, hermite_example(1).fourier, 2.0) <= 1e-4);
    }
    const double cutoff = time_cutoff(gaussFourier, 1.0);
    CHECK(inverse_fourier_cosine(gaussFourier, 0.0, cutoff) == doctest::Approx(1.0).epsilon(1e-12));
    for (double l : {0.5, 1.0, 2.0})
        CHECK(inverse_fourier_cosine(gaussFourier, l, cutoff) == doctest::Approx(std::exp(-l * l)).epsilon(1e-10));
}

TEST_CASE("Hermite examples") {
    for (int nu = 0; nu <= 3; ++nu) {
        const auto ex = hermite_example(nu);
        CHECK(hermite_fourier_error(ex) <= 1e-10);
        const auto moments = hermite_moments(ex, 2 * nu + 1);
        for (int j = 0; j < 2 * nu; ++j) CHECK(std::abs(moments[static_cast<std::size_t>(j)]) <= 1e-10);
        // The first surviving moment is sqrt(pi) (2 nu)!.
        CHECK(moments[static_cast<std::size_t>(2 * nu)] == doctest::Approx(std::sqrt(pi) * std::tgamma(2.0 * nu + 1.0)).epsilon(1e-10));
    }
    const Setup s(ModelTag::cosh);
    const auto h2 = hermite_example(2);
    const auto fc = lambda_fc(s.ctx, h2.fourier);
    const auto rows = interior_nodes(*s.grid, time_cutoff(h2.fourier, 1.0));
    for (double lambda : {0.5, 1.5}) {
        std::vector<double> phi(s.grid->size());
        for (std::size_t i = 0; i < phi.size(); ++i) phi[i] = std::cos(lambda * s.grid->nodes[i]) / std::cosh(s.grid->nodes[i]);
        auto out = fc.apply(phi);
        const double scalar = (16.0 * std::pow(lambda, 4) - 48.0 * lambda * lambda + 12.0) * std::exp(-lambda * lambda);
        double num = 0.0;
        double den = 0.0;
        for (std::size_t i : rows) {
            num += std::pow(out[i] - scalar * phi[i], 2) * s.grid->measureWeights[i];
            den += phi[i] * phi[i] * s.grid->measureWeights[i];
        }
        CHECK(std::sqrt(num / den) <= 1e-3);
    }
}

TEST_CASE("Schur bound") {
    const Setup s(ModelTag::cosh, 10.0, 8);
    const auto& mu = s.grid->measureWeights;
    const auto n = static_cast<Eigen::Index>(s.grid->size());

    KernelMatrix diag{Eigen::MatrixXd::Zero(n, n), mu, mu};
    double heaviest = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double d = 1.0 + 0.01 * static_cast<double>(i);
        diag.entries(i, i) = d;
        heaviest = std::max(heaviest, d * mu[static_cast<std::size_t>(i)]);
    }
    CHECK(schur_bound(diag) == doctest::Approx(heaviest).epsilon(1e-14));

    std::mt19937_64 rng(5);
    std::normal_distribution<double> normal;
    Eigen::VectorXd u(n);
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        u[i] = normal(rng) / std::sqrt(mu[static_cast<std::size_t>(i)]);
        v[i] = normal(rng) / std::sqrt(mu[static_cast<std::size_t>(i)]);
    }
    const KernelMatrix rank1{u * v.transpose(), mu, mu};
    double uL1 = 0.0;
    double vL1 = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        uL1 += std::abs(u[i]) * mu[static_cast<std::size_t>(i)];
        vL1 += std::abs(v[i]) * mu[static_cast<std::size_t>(i)];
    }
    const double expected = std::max(u.cwiseAbs().maxCoeff() * vL1, v.cwiseAbs().maxCoeff() * uL1);
    CHECK(schur_bound(rank1) == doctest::Approx(expected).epsilon(1e-12));

    std::vector<std::vector<double>> hs(200, std::vector<double>(s.grid->size()));
    for (auto& h : hs)
        for (double& e : h) e = normal(rng);
    for (double p : {1.0, 2.0, std::numeric_limits<double>::infinity()}) CHECK(sampled_norm(rank1, hs, p) <= expected);
}

TEST_CASE("growth constant M0 is measured as one") {
    for (auto tag : {ModelTag::cosh, ModelTag::sl2c, ModelTag::mehler}) {
        const auto model = build_model(tag);
        const auto grid = make_grid(model.profile, 20.0, 8);
        CHECK(measured_m0(model, *grid) == doctest::Approx(1.0).epsilon(1e-6));
    }
}

TEST_CASE("errors") {
    const auto mehler = build_model(ModelTag::mehler);
    CHECK_THROWS_AS(discretize(mehler, make_grid(mehler.profile)), DomainError);
    const Setup s(ModelTag::cosh, 20.0, 32);
    CHECK_THROWS_AS(t_a(s.ctx, sample(s.grid, [](double) { return 1.0; })), TruncationError);
    CHECK_THROWS_AS(time_cutoff([](double) { return 1.0; }, 1.0), TruncationError);
    CHECK_THROWS_AS(lambda_fc(s.ctx, [](double x) { return std::exp(-x); }), TruncationError);
    CHECK_THROWS_AS(hermite_example(-1), DomainError);
}
