#include <doctest.h>

#include "hyperfc/characters.hpp"
#include "hyperfc/errors.hpp"
#include "hyperfc/transforms.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <string>

using namespace hfc;
constexpr double pi = std::numbers::pi;

namespace {

double rel_l2(const SampledFunction& a, const SampledFunction& b) {
    double num = 0.0;
    double den = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const double w = a.grid->measureWeights[j];
        num += (a.values[j] - b.values[j]) * (a.values[j] - b.values[j]) * w;
        den += b.values[j] * b.values[j] * w;
    }
    return std::sqrt(num / den);
}

double max_diff(const SampledFunction& a, const SampledFunction& b) {
    double d = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) d = std::max(d, std::abs(a.values[j] - b.values[j]));
    return d;
}

cplx cosech_row(cplx l) {
    if (std::abs(l) < 1e-8) return 8.0 / pi;
    return 8.0 * l / std::sinh(pi * l);
}

// Compactly supported smooth bump on [c - r, c + r].
double bump(double x, double c, double r) {
    const double u = (x - c) / r;
    return std::abs(u) < 1.0 ? std::exp(-1.0 / (1.0 - u * u)) : 0.0;
}

}  // namespace

TEST_CASE("zero maps to zero both ways") {
    for (auto tag : {ModelTag::cosh, ModelTag::mehler, ModelTag::sl2c}) {
        const auto model = build_model(tag);
        const auto grid = make_grid(model.profile);
        const auto zero = sample(grid, [](double) { return 0.0; });
        const auto fh = forward(model, zero, lambda_grid());
        for (const auto& v : fh.values) CHECK(v == cplx(0.0));
        const auto back = inverse(model, fh, grid);
        for (double v : back.values) CHECK(v == 0.0);
    }
}

TEST_CASE("transform-pair table rows") {
    const auto r = pair_table();
    CHECK(r.find("sech3.relerr")->pass);
    CHECK(r.find("sech5.corrected_relerr")->pass);
    CHECK(r.find("sech2.ratio_spread")->pass);
    // The printed sech^5 row is off by the factor 2 (1 + lambda^2) / (3 lambda^2).
    const auto* printed = r.find("sech5.relerr");
    CHECK_FALSE(printed->pass);
    CHECK(printed->measured == doctest::Approx(32.0 / 3.0 - 1.0 / 3.0).epsilon(1e-3));
    // Stieltjes-type identity for 1/(1 + cosh x) gives the constant 2 pi.
    CHECK(r.find("sech2.constant")->measured == doctest::Approx(2.0 * pi).epsilon(1e-3));
}

TEST_CASE("round trips") {
    SUBCASE("mehler x^2 exp(-x^2)") {
        const auto model = build_model(ModelTag::mehler);
        const auto grid = make_grid(model.profile);
        const auto f = sample(grid, [](double x) { return x * x * std::exp(-x * x); });
        const auto back = inverse(model, forward(model, f, lambda_grid()), grid);
        CHECK(rel_l2(back, f) <= 1e-4);
    }
    SUBCASE("cosh sech^2 with density 2/pi") {
        const auto model = build_model(ModelTag::cosh);
        const auto grid = make_grid(model.profile, 40.0, 64);
        const auto f = sample(grid, [](double x) { return 1.0 / (std::cosh(x) * std::cosh(x)); });
        auto fh = forward(model, f, lambda_grid(20.0, 800));
        for (std::size_t i = 0; i < fh.size(); ++i) fh.plancherelWeights[i] = 2.0 / pi * fh.quadWeights[i];
        // Exact transform: integral of cos(lambda x) sech x.
        for (std::size_t i = 0; i < fh.size(); i += 37)
            CHECK(fh.values[i].real() ==
                  doctest::Approx(0.5 * pi / std::cosh(0.5 * pi * fh.lambdaNodes[i])).epsilon(1e-8));
        CHECK(rel_l2(inverse(model, fh, grid), f) <= 1e-4);
    }
}

TEST_CASE("Plancherel calibration") {
    const auto r = plancherel_calibration();
    CHECK(r.find("cosh.c")->pass);
    CHECK(r.find("mehler.c")->pass);
    // Elementary sine-transform computation with m = 4 sinh^2 gives lambda^2/(2 pi).
    CHECK(r.find("sl2c.c_vs_4pi")->measured == doctest::Approx(2.0).epsilon(1e-4));
    CHECK(r.find("sl2c.c_vs_2pi")->measured == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("Plancherel energy identity") {
    for (auto tag : {ModelTag::cosh, ModelTag::mehler, ModelTag::sl2c}) {
        const auto model = build_model(tag);
        const auto grid = make_grid(model.profile);
        for (double a : {0.5, 1.0, 3.0}) {
            const auto f = sample(grid, [a](double x) { return std::exp(-a * x * x) * (1.0 + x * x); });
            const auto fh = forward(model, f, lambda_grid());
            double lhs = 0.0;
            for (std::size_t j = 0; j < f.size(); ++j) lhs += f.values[j] * f.values[j] * grid->measureWeights[j];
            double rhs = 0.0;
            for (std::size_t i = 0; i < fh.size(); ++i) rhs += std::norm(fh.values[i]) * fh.plancherelWeights[i];
            CHECK_MESSAGE(std::abs(lhs - rhs) <= 1e-4 * lhs, model_name(tag) << " a=" << a);
            for (const auto& v : fh.values) CHECK(std::abs(v.imag()) <= 1e-10);
        }
    }
}

TEST_CASE("convolution homomorphism and commutativity") {
    for (auto tag : {ModelTag::cosh, ModelTag::mehler, ModelTag::sl2c}) {
        const auto model = build_model(tag);
        const auto grid = make_grid(model.profile);
        const auto f = sample(grid, [](double x) { return std::exp(-x * x); });
        const auto g = sample(grid, [](double x) { return (1.0 + x * x) * std::exp(-2.0 * x * x); });
        const auto fg = convolve(model, f, g);
        const auto gf = convolve(model, g, f);
        CHECK_MESSAGE(max_diff(fg, gf) <= 1e-10, model_name(tag));

        const auto lambdas = lambda_grid(8.0, 81);
        const auto lhs = forward(model, fg, lambdas);
        const auto fh = forward(model, f, lambdas);
        const auto gh = forward(model, g, lambdas);
        double scale = 0.0;
        double err = 0.0;
        for (std::size_t i = 0; i < lambdas.size(); ++i) {
            const cplx prod = fh.values[i] * gh.values[i];
            scale = std::max(scale, std::abs(prod));
            err = std::max(err, std::abs(lhs.values[i] - prod));
        }
        CHECK_MESSAGE(err <= 1e-4 * scale, model_name(tag) << " err " << err);
    }
}

TEST_CASE("approximate identity converges quadratically in the bump width") {
    for (auto tag : {ModelTag::cosh, ModelTag::sl2c}) {
        const auto model = build_model(tag);
        const auto grid = make_grid(model.profile, 8.0, 64);
        const auto f = sample(grid, [](double x) { return std::exp(-x * x) * std::cos(x); });
        auto error_at = [&](double eps) {
            auto g = sample(grid, [eps](double x) { return std::exp(-x * x / (eps * eps)); });
            double mass = 0.0;
            for (std::size_t j = 0; j < g.size(); ++j) mass += g.values[j] * grid->measureWeights[j];
            for (double& v : g.values) v /= mass;
            return max_diff(convolve(model, f, g), f);
        };
        const double e1 = error_at(0.2);
        const double e2 = error_at(0.1);
        CHECK(e2 <= 0.05);
        CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.25));
    }
}

TEST_CASE("cosh convolution of bumps at 1 stays in [0, 2 + widths]") {
    const auto model = build_model(ModelTag::cosh);
    const auto grid = make_grid(model.profile);
    const auto f = sample(grid, [](double x) { return bump(x, 1.0, 0.2); });
    const auto fg = convolve(model, f, f);
    const double panel = grid->xMax / grid->panels;
    CHECK(support_of(fg) <= 2.4 + panel);
    CHECK(support_of(fg) >= 1.6);
}

TEST_CASE("product formula") {
    const auto cosh = build_model(ModelTag::cosh);
    const auto sl2c = build_model(ModelTag::sl2c);
    const auto mehler = build_model(ModelTag::mehler);
    CHECK(product_formula_residual(cosh, 2.0, 1.0, 1.5) <= 1e-10);
    CHECK(product_formula_residual(sl2c, 1.0, 0.7, 1.2) <= 1e-8);
    CHECK(product_formula_residual(sl2c, cplx(0, 1), 0.7, 1.2) <= 1e-12);
    CHECK(product_formula_residual(mehler, cplx(0, 0.5), 0.7, 1.2) <= 1e-8);

    std::mt19937 rng(7);
    std::uniform_real_distribution<double> pos(0.05, 3.0);
    std::uniform_real_distribution<double> lam(0.0, 5.0);
    std::uniform_real_distribution<double> im(-0.4, 0.4);
    for (int i = 0; i < 10; ++i) {
        const double x = pos(rng);
        const double y = pos(rng);
        const cplx l(lam(rng), im(rng));
        CHECK(product_formula_residual(cosh, l, x, y) <= 1e-10);
        CHECK(product_formula_residual(sl2c, l, x, y) <= 1e-8);
        CHECK(product_formula_residual(mehler, l, x, y) <= 1e-8);
    }
}

TEST_CASE("truncation is reported with the measured tail") {
    const auto model = build_model(ModelTag::cosh);
    const auto grid = make_grid(model.profile);
    const auto f = sample(grid, [](double) { return 1.0; });
    try {
        (void)forward(model, f, lambda_grid());
        FAIL("expected TruncationError");
    } catch (const TruncationError& e) {
        CHECK(e.tail == doctest::Approx(std::cosh(grid->nodes.back())));
    }
}

TEST_CASE("Venturi membership") {
    const VenturiRegion r{pi / 4, 1.0};
    CHECK(venturi_contains(cplx(0, 0.5), r));
    CHECK(venturi_contains(cplx(10, 9), r));
    CHECK_FALSE(venturi_contains(cplx(10, 11), r));
    CHECK_FALSE(venturi_contains(cplx(0, 2), r));

    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(-20.0, 20.0);
    for (int i = 0; i < 200; ++i) {
        const cplx z(u(rng), u(rng));
        const bool in = venturi_contains(z, r);
        CHECK(venturi_contains(std::conj(z), r) == in);
        CHECK(venturi_contains(-z, r) == in);
    }
    for (double s : {3.0}) {
        for (int i = 0; i < 20; ++i) {
            const cplx z(u(rng), u(rng) * 0.1);
            CHECK(venturi_contains(z, r) == venturi_contains(s * z, {r.theta, s * r.omega}));
        }
    }
}

TEST_CASE("Venturi norm probe") {
    const auto one = venturi_norm_probe([](cplx) { return cplx(1.0); }, {pi / 4, 1.0}, 0);
    CHECK(one.sup == doctest::Approx(1.0));
    CHECK_FALSE(one.blowUp);

    const auto inside = venturi_norm_probe(cosech_row, {pi / 4, 0.9}, 0);
    CHECK_FALSE(inside.blowUp);
    CHECK(std::isfinite(inside.sup));
    CHECK(inside.sup < 1e3);

    // Simple pole at i with residue of modulus 8/pi: sup * distance -> 8/pi.
    double previous = 0.0;
    for (double w : {0.99, 0.999}) {
        const auto p = venturi_norm_probe(cosech_row, {pi / 4, w}, 0);
        const double dist = 1.0 - (w - 1e-2);
        CHECK(p.blowUp);
        CHECK(p.sup * dist == doctest::Approx(8.0 / pi).epsilon(0.05));
        CHECK(p.sup > previous);
        previous = p.sup;
        bool foundI = false;
        for (cplx z : p.poles) foundI = foundI || std::abs(z - cplx(0, 1)) < 1e-8;
        CHECK(foundI);
    }
}

TEST_CASE("curve CSV has a header and 17 significant digits") {
    const auto path = std::filesystem::temp_directory_path() / "hyperfc_curve_test.csv";
    const std::vector<double> x{0.1, 1.0 / 3.0};
    const std::vector<double> y{2.0, pi};
    write_curve_csv(path, "lambda,fhat", x, y);
    std::ifstream in(path);
    std::string header;
    std::string row;
    std::getline(in, header);
    std::getline(in, row);
    std::getline(in, row);
    CHECK(header == "lambda,fhat");
    CHECK(row == "0.33333333333333331,3.1415926535897931");
    std::filesystem::remove(path);
}
