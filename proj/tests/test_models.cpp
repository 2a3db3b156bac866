#include <doctest.h>

#include "hyperfc/errors.hpp"
#include "hyperfc/models.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace hfc;
constexpr double pi = std::numbers::pi;

TEST_CASE("built-in models carry their densities") {
    const auto sl2c = build_model("sl2c");
    CHECK(sl2c.profile.m(1.0) == doctest::Approx(4.0 * std::sinh(1.0) * std::sinh(1.0)).epsilon(1e-15));
    CHECK(sl2c.profile.m(1.0) == doctest::Approx(5.5244).epsilon(1e-4));
    CHECK(sl2c.profile.gamma == 0.5);
    CHECK(sl2c.profile.omega0 == 1.0);

    const auto mehler = build_model(ModelTag::mehler);
    for (double l : {0.1, 1.0, 3.0}) CHECK(mehler.plancherel(l) == doctest::Approx(l * std::tanh(pi * l)));
    CHECK(mehler.profile.omega0 == 0.5);
    CHECK(mehler.profile.m(2.0) == doctest::Approx(std::sinh(2.0)));

    const auto cosh = build_model(ModelTag::cosh);
    CHECK(cosh.plancherel(0.0) == doctest::Approx(2.0 / pi));
    CHECK(cosh.plancherel(7.0) == doctest::Approx(2.0 / pi));
    CHECK(cosh.profile.m(1.5) == doctest::Approx(std::cosh(1.5) * std::cosh(1.5)));
    CHECK_FALSE(cosh.chebliTrimeche);
    CHECK_FALSE(cosh.trivialCharacterPoint.has_value());

    CHECK_THROWS_AS(build_model("jacobi"), ConfigError);
}

TEST_CASE("plancherel densities are nonnegative") {
    for (auto tag : {ModelTag::cosh, ModelTag::mehler, ModelTag::sl2c}) {
        const auto m = build_model(tag);
        for (int i = 0; i <= 200; ++i) CHECK(m.plancherel(0.1 * i) >= 0.0);
    }
}

TEST_CASE("potential of the sl2c profile vanishes") {
    const auto sl2c = build_model(ModelTag::sl2c);
    for (double x : {1e-4, 1e-3, 0.01, 0.1, 0.5, 1.0, 5.0, 20.0, 50.0})
        CHECK(std::abs(q_profile(sl2c.profile, x).bigQ) <= 1e-10);
}

TEST_CASE("constant q with zero rate has zero potential") {
    const auto p = make_profile(0.5, 0.0, [](double x) { return 3.0 * x * x; });
    for (double x : {0.1, 1.0, 7.0}) {
        const auto v = q_profile(p, x);
        CHECK(v.q == doctest::Approx(3.0));
        CHECK(std::abs(v.bigQ) <= 1e-6);
    }
}

TEST_CASE("mehler potential matches the second-order form") {
    // Q = m''/(2m) - (m'/(2m))^2 - omega0^2 - (4 gamma^2 - 1)/(4 x^2), with m = sinh x
    auto oracle = [](double x) {
        const double c = 1.0 / std::tanh(x);
        return 0.5 - 0.25 * c * c - 0.25 + 1.0 / (4.0 * x * x);
    };
    const auto mehler = build_model(ModelTag::mehler);
    CHECK(q_profile(mehler.profile, 1.0).bigQ == doctest::Approx(oracle(1.0)).epsilon(1e-12));
    CHECK(std::abs(q_profile(mehler.profile, 1.0).bigQ - oracle(1.0)) <= 1e-8);
    for (double x : {0.05, 0.3, 2.0, 6.0}) CHECK(std::abs(mehler.profile.bigQ(x) - oracle(x)) <= 1e-8);

    // finite-difference route on a profile without analytic hooks
    const auto fd = make_profile(0.0, 0.5, [](double x) { return std::sinh(x); });
    CHECK(std::abs(fd.bigQ(1.0) - oracle(1.0)) <= 1e-5);
}

TEST_CASE("q_profile rejects nonpositive radius") {
    const auto m = build_model(ModelTag::sl2c);
    CHECK_THROWS_AS(q_profile(m.profile, 0.0), DomainError);
    CHECK_THROWS_AS(q_profile(m.profile, -1.0), DomainError);
}

TEST_CASE("validate_weight on the built-in and power profiles") {
    const auto sl2c = validate_weight(build_model(ModelTag::sl2c).profile);
    CHECK(sl2c.all_pass());

    const auto cosh = validate_weight(build_model(ModelTag::cosh).profile);
    REQUIRE(cosh.find("origin.m_vanishes"));
    CHECK_FALSE(cosh.find("origin.m_vanishes")->pass);
    CHECK(cosh.find("growth.log_derivative_limit")->pass);

    const auto power = validate_weight(make_profile(0.5, 0.0, [](double x) { return x * x; }));
    CHECK(power.find("growth.log_derivative_limit")->pass);
    CHECK(power.find("origin.ratio_limit")->pass);
    CHECK(power.find("potential.nonnegative")->pass);
}

TEST_CASE("grid measure weights reproduce the analytic mass") {
    for (auto tag : {ModelTag::cosh, ModelTag::mehler, ModelTag::sl2c}) {
        const auto m = build_model(tag);
        for (double X : {1.0, 5.0, 20.0}) {
            const auto g = make_grid(m.profile, X);
            double s = 0.0;
            for (double w : g->measureWeights) s += w;
            const double exact = m_integral(tag, X);
            CHECK(std::abs(s - exact) <= 1e-8 * std::max(1.0, exact));
        }
    }
}

TEST_CASE("grid nodes are increasing with positive weights") {
    const auto g = make_grid(build_model(ModelTag::mehler).profile);
    CHECK(g->size() == 512);
    for (std::size_t i = 0; i < g->size(); ++i) {
        CHECK(g->quadWeights[i] > 0.0);
        CHECK(g->measureWeights[i] > 0.0);
        if (i > 0) CHECK(g->nodes[i] > g->nodes[i - 1]);
    }
    CHECK(g->nodes.front() > 0.0);
    CHECK(g->nodes.back() <= 20.0);
}

TEST_CASE("interpolant reproduces smooth data and running integrals") {
    const auto g = make_grid(build_model(ModelTag::cosh).profile, 10.0, 16, 16);
    const auto f = sample(g, [](double x) { return std::sin(2.0 * x) * std::exp(-0.1 * x); });
    const Interpolant I(f);
    for (double x : {0.0, 0.013, 1.7, 3.14159, 9.99}) {
        CHECK(std::abs(I(x) - std::sin(2.0 * x) * std::exp(-0.1 * x)) <= 1e-10);
    }
    CHECK(I(10.5) == 0.0);
    // antiderivative of sin(2x) e^{-x/10}
    auto F = [](double x) {
        const double a = -0.1, b = 2.0;
        return std::exp(a * x) * (a * std::sin(b * x) - b * std::cos(b * x)) / (a * a + b * b);
    };
    for (double x : {0.4, 2.2, 7.7, 10.0}) CHECK(std::abs(I.integral_to(x) - (F(x) - F(0.0))) <= 1e-11);
}

TEST_CASE("lp_norm values and properties") {
    const auto cosh = build_model(ModelTag::cosh);
    const auto g1 = make_grid(cosh.profile, 1.0);
    const auto zero = sample(g1, [](double) { return 0.0; });
    CHECK(lp_norm(zero, 2.0) == 0.0);
    const auto one = sample(g1, [](double) { return 1.0; });
    const double exact = std::sqrt((1.0 + std::sinh(1.0) * std::cosh(1.0)) / 2.0);
    CHECK(std::abs(lp_norm(one, 2.0) - exact) <= 1e-8);
    CHECK(exact == doctest::Approx(1.18605).epsilon(1e-5));
    CHECK_THROWS_AS(lp_norm(one, 0.5), DomainError);

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    const auto g = make_grid(build_model(ModelTag::sl2c).profile, 5.0, 8, 16);
    for (int trial = 0; trial < 20; ++trial) {
        SampledFunction f{g, std::vector<double>(g->size())};
        SampledFunction big{g, std::vector<double>(g->size())};
        for (std::size_t i = 0; i < g->size(); ++i) {
            f.values[i] = U(rng);
            big.values[i] = f.values[i] * (1.0 + std::abs(U(rng)));
        }
        for (double p : {1.0, 1.5, 2.0, 4.0}) {
            const double c = -2.5;
            SampledFunction cf = f;
            for (double& v : cf.values) v *= c;
            CHECK(lp_norm(cf, p) == doctest::Approx(std::abs(c) * lp_norm(f, p)).epsilon(1e-12));
            CHECK(lp_norm(big, p) >= lp_norm(f, p));
        }
    }
}
