#pragma once

#include <span>
#include <vector>

namespace hfc {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Gauss rules on [-1, 1] (Hermite: on R with weight exp(-x^2)), built by the
// Golub-Welsch eigenvalue method. Results are cached per (n, exponents).
const QuadratureRule& gauss_legendre(int n);
// Weight (1 - x)^a (1 + x)^b with a, b > -1.
const QuadratureRule& gauss_jacobi(int n, double a, double b);
const QuadratureRule& gauss_hermite(int n);

// Composite Gauss-Legendre rule on the given panel breakpoints.
QuadratureRule composite_legendre(std::span<const double> breaks, int order);

// Affine map of a reference rule on [-1, 1] to [a, b].
QuadratureRule mapped(const QuadratureRule& ref, double a, double b);

}  // namespace hfc
