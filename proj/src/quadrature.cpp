#include "cho/quadrature.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace cho {

QuadratureRule gauss_hermite_rule(int order, double length_scale) {
    if (order < 2)
        throw std::invalid_argument("gauss_hermite_rule: order must be >= 2");
    if (order > kMaxQuadratureOrder)
        throw std::invalid_argument(
            "gauss_hermite_rule: order exceeds stable limit " +
            std::to_string(kMaxQuadratureOrder));
    if (!(length_scale > 0.0))
        throw std::invalid_argument("gauss_hermite_rule: length_scale must be > 0");

    // Golub-Welsch: Jacobi matrix of the Hermite weight has zero diagonal and
    // off-diagonal b_j = sqrt(j/2); nodes are its eigenvalues, weights are
    // sqrt(pi) times the squared first components of the eigenvectors.
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(order);
    Eigen::VectorXd sub(order - 1);
    for (int j = 1; j < order; ++j) sub[j - 1] = std::sqrt(0.5 * j);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("gauss_hermite_rule: eigensolver failed");

    QuadratureRule rule;
    rule.length_scale = length_scale;
    rule.nodes.resize(order);
    rule.weights.resize(order);
    rule.total_weights.resize(order);
    const double mu0 = std::sqrt(M_PI);
    for (int i = 0; i < order; ++i) {
        const double u = es.eigenvalues()[i];
        const double v0 = es.eigenvectors()(0, i);
        const double w = mu0 * v0 * v0;
        rule.nodes[i] = length_scale * u;
        rule.weights[i] = length_scale * w;
        rule.total_weights[i] = length_scale * w * std::exp(u * u);
    }
    return rule;
}

}  // namespace cho
