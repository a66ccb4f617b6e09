#pragma once

#include <vector>

namespace pfwd {

enum class PolyFamily { legendre, hermite };

/// Gauss quadrature rule normalized as an expectation: the weights sum to 1,
/// so sum w_j g(x_j) approximates E[g] under the family's probability weight
/// (uniform on [-1,1] for Legendre, standard normal for Hermite).
struct QuadratureRule {
    std::vector<double> nodes;    ///< strictly increasing
    std::vector<double> weights;  ///< positive, sum to 1
    PolyFamily family = PolyFamily::legendre;
};

struct UniformGrid {
    double lo = 0.0;
    double hi = 1.0;
    std::vector<double> nodes;  ///< n equispaced nodes including both endpoints
};

/// n >= 2 equispaced nodes on [lo, hi].
UniformGrid uniform_grid(double lo, double hi, int n);

/// Golub-Welsch construction: nodes are the eigenvalues of the symmetric
/// tridiagonal Jacobi matrix of the three-term recurrence, weights the squared
/// first eigenvector components.
QuadratureRule gauss_rule(PolyFamily family, int n);

}  // namespace pfwd
