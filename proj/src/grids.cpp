#include "pfwd/grids.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

#include "pfwd/errors.hpp"

namespace pfwd {

UniformGrid uniform_grid(double lo, double hi, int n) {
    if (n < 2) throw std::invalid_argument("uniform_grid: need at least 2 nodes");
    if (!(lo < hi)) throw std::invalid_argument("uniform_grid: lo must be < hi");
    UniformGrid g;
    g.lo = lo;
    g.hi = hi;
    g.nodes.resize(static_cast<std::size_t>(n));
    const double h = (hi - lo) / (n - 1);
    for (int j = 0; j < n; ++j) g.nodes[static_cast<std::size_t>(j)] = lo + j * h;
    g.nodes.back() = hi;
    return g;
}

QuadratureRule gauss_rule(PolyFamily family, int n) {
    if (n < 1) throw std::invalid_argument("gauss_rule: order must be >= 1");

    // Off-diagonal of the Jacobi matrix for the orthonormal recurrence
    //   b_{k+1} p_{k+1}(x) = x p_k(x) - b_k p_{k-1}(x)   (a_k = 0 by symmetry)
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd sub(n > 1 ? n - 1 : 1);
    for (int k = 1; k < n; ++k) {
        const double kk = static_cast<double>(k);
        sub[k - 1] = (family == PolyFamily::legendre)
                         ? kk / std::sqrt(4.0 * kk * kk - 1.0)
                         : std::sqrt(kk);
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub.head(std::max(n - 1, 0)),
                                  Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success)
        throw numerical_error("gauss_rule: tridiagonal eigen-solve did not converge");

    QuadratureRule rule;
    rule.family = family;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    // Eigen returns eigenvalues in increasing order. The zeroth recurrence
    // moment is 1 (probability weight), so w_j = v_{0j}^2 already sums to 1.
    for (int j = 0; j < n; ++j) {
        rule.nodes[static_cast<std::size_t>(j)] = solver.eigenvalues()[j];
        const double v0 = solver.eigenvectors()(0, j);
        rule.weights[static_cast<std::size_t>(j)] = v0 * v0;
    }
    if (n == 1) {
        rule.nodes[0] = 0.0;
        rule.weights[0] = 1.0;
    }
    return rule;
}

}  // namespace pfwd
