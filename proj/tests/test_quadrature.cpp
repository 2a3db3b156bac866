#include <doctest.h>

#include "hyperfc/quadrature.hpp"

#include <boost/math/special_functions/beta.hpp>

#include <cmath>
#include <numbers>

using namespace hfc;

TEST_CASE("Gauss-Legendre integrates polynomials of degree 2n-1 exactly") {
    const auto& r = gauss_legendre(16);
    for (int d = 0; d <= 31; ++d) {
        double s = 0.0;
        for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * std::pow(r.nodes[i], d);
        const double exact = d % 2 ? 0.0 : 2.0 / (d + 1);
        CHECK(s == doctest::Approx(exact).epsilon(1e-13));
    }
}

TEST_CASE("Gauss-Jacobi reproduces Beta-function moments") {
    for (double a : {-0.5, 0.0, 0.5, 1.3}) {
        for (double b : {-0.5, 0.0, 0.7}) {
            const auto& r = gauss_jacobi(24, a, b);
            // integral of (1-x)^a (1+x)^b over [-1,1] = 2^(a+b+1) B(a+1, b+1)
            double s = 0.0;
            for (double w : r.weights) s += w;
            const double exact = std::pow(2.0, a + b + 1) * boost::math::beta(a + 1, b + 1);
            CHECK(s == doctest::Approx(exact).epsilon(1e-12));
            // first moment of (1+x): 2^(a+b+2) B(a+1, b+2)
            double m1 = 0.0;
            for (std::size_t i = 0; i < r.nodes.size(); ++i) m1 += r.weights[i] * (1.0 + r.nodes[i]);
            CHECK(m1 == doctest::Approx(std::pow(2.0, a + b + 2) * boost::math::beta(a + 1, b + 2)).epsilon(1e-12));
        }
    }
}

TEST_CASE("Gauss-Hermite even moments") {
    const auto& r = gauss_hermite(20);
    double m0 = 0.0, m2 = 0.0, m4 = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) {
        const double x = r.nodes[i];
        m0 += r.weights[i];
        m2 += r.weights[i] * x * x;
        m4 += r.weights[i] * x * x * x * x;
    }
    const double sp = std::sqrt(std::numbers::pi);
    CHECK(m0 == doctest::Approx(sp).epsilon(1e-13));
    CHECK(m2 == doctest::Approx(sp / 2).epsilon(1e-13));
    CHECK(m4 == doctest::Approx(3 * sp / 4).epsilon(1e-13));
}

TEST_CASE("composite rule covers its panels") {
    const double breaks[] = {0.0, 0.5, 2.0, 3.0};
    const auto r = composite_legendre(breaks, 8);
    CHECK(r.nodes.size() == 24);
    double s = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * std::exp(r.nodes[i]);
    CHECK(s == doctest::Approx(std::exp(3.0) - 1.0).epsilon(1e-13));
}
