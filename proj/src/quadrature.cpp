#include "hyperfc/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <tuple>

namespace hfc {
namespace {

// Golub-Welsch: nodes are eigenvalues of the symmetric Jacobi matrix, weights
// are mu0 times the squared first eigenvector components.
QuadratureRule golub_welsch(const Eigen::VectorXd& diag, const Eigen::VectorXd& off, double mu0) {
    const auto n = diag.size();
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        J(i, i) = diag(i);
        if (i + 1 < n) {
            J(i, i + 1) = off(i);
            J(i + 1, i) = off(i);
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    QuadratureRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        rule.nodes[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
        const double v = es.eigenvectors()(0, i);
        rule.weights[static_cast<std::size_t>(i)] = mu0 * v * v;
    }
    return rule;
}

QuadratureRule build_jacobi(int n, double a, double b) {
    Eigen::VectorXd diag(n);
    Eigen::VectorXd off(std::max(n - 1, 0));
    const double ab = a + b;
    for (int k = 0; k < n; ++k) {
        const double s = 2.0 * k + ab;
        if (k == 0) {
            diag(0) = (b - a) / (ab + 2.0);
        } else {
            diag(k) = (b * b - a * a) / (s * (s + 2.0));
        }
    }
    for (int k = 1; k < n; ++k) {
        const double s = 2.0 * k + ab;
        double b2;
        if (k == 1) {
            b2 = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
        } else {
            b2 = 4.0 * k * (k + a) * (k + b) * (k + ab) / (s * s * (s + 1.0) * (s - 1.0));
        }
        off(k - 1) = std::sqrt(b2);
    }
    const double mu0 = std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) +
                                std::lgamma(b + 1.0) - std::lgamma(ab + 2.0));
    return golub_welsch(diag, off, mu0);
}

QuadratureRule build_hermite(int n) {
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd off(std::max(n - 1, 0));
    for (int k = 1; k < n; ++k) off(k - 1) = std::sqrt(0.5 * k);
    return golub_welsch(diag, off, std::sqrt(std::numbers::pi));
}

using Key = std::tuple<int, int, double, double>;

const QuadratureRule& cached(const Key& key) {
    static std::mutex mutex;
    static std::map<Key, std::unique_ptr<QuadratureRule>> cache;
    std::lock_guard lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;
    const auto [kind, n, a, b] = key;
    if (n < 1) throw std::invalid_argument("quadrature order must be positive");
    auto rule = std::make_unique<QuadratureRule>(kind == 1 ? build_hermite(n) : build_jacobi(n, a, b));
    return *cache.emplace(key, std::move(rule)).first->second;
}

}  // namespace

const QuadratureRule& gauss_legendre(int n) { return cached({0, n, 0.0, 0.0}); }

const QuadratureRule& gauss_jacobi(int n, double a, double b) {
    if (!(a > -1.0) || !(b > -1.0)) throw std::invalid_argument("Jacobi exponents must exceed -1");
    return cached({0, n, a, b});
}

const QuadratureRule& gauss_hermite(int n) { return cached({1, n, 0.0, 0.0}); }

QuadratureRule mapped(const QuadratureRule& ref, double a, double b) {
    QuadratureRule out;
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (b + a);
    out.nodes.reserve(ref.nodes.size());
    out.weights.reserve(ref.nodes.size());
    for (std::size_t i = 0; i < ref.nodes.size(); ++i) {
        out.nodes.push_back(mid + half * ref.nodes[i]);
        out.weights.push_back(half * ref.weights[i]);
    }
    return out;
}

QuadratureRule composite_legendre(std::span<const double> breaks, int order) {
    QuadratureRule out;
    const auto& ref = gauss_legendre(order);
    for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
        const auto piece = mapped(ref, breaks[p], breaks[p + 1]);
        out.nodes.insert(out.nodes.end(), piece.nodes.begin(), piece.nodes.end());
        out.weights.insert(out.weights.end(), piece.weights.begin(), piece.weights.end());
    }
    return out;
}

}  // namespace hfc
