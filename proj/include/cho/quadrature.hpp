#pragma once

#include <vector>

namespace cho {

/// Gauss-Hermite rule scaled to the weight e^{-(x/s)^2}.
///
/// Two weight sets are kept:
///   weights:        int f(x) e^{-(x/s)^2} dx ~ sum w_i f(x_i)
///   total_weights:  int g(x) dx            ~ sum W_i g(x_i),  W_i = w_i e^{(x_i/s)^2}
/// The second form integrates any integrand that decays at least like the
/// Gaussian of scale s (all densities and overlap integrands here do).
struct QuadratureRule {
    std::vector<double> nodes;          ///< abscissae [same unit as s]
    std::vector<double> weights;        ///< Gaussian-weight form, all positive
    std::vector<double> total_weights;  ///< plain-integral form
    double length_scale = 1.0;

    int order() const { return static_cast<int>(nodes.size()); }

    template <class F>
    double integrate(F&& g) const {
        double acc = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i)
            acc += total_weights[i] * g(nodes[i]);
        return acc;
    }
};

inline constexpr int kMaxQuadratureOrder = 512;

/// Nodes/weights by Golub-Welsch (symmetric tridiagonal eigenproblem).
/// Exact for polynomial x Gaussian integrands of degree <= 2 order - 1.
/// Throws std::invalid_argument for order < 2, order > kMaxQuadratureOrder,
/// or length_scale <= 0.
QuadratureRule gauss_hermite_rule(int order, double length_scale = 1.0);

}  // namespace cho
