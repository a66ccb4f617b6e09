#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pfwd/grids.hpp"

namespace pfwd {

/// Value of the degree-n polynomial orthonormal under the family's
/// probability weight (Legendre: uniform on [-1,1]; Hermite: standard normal).
double ortho_poly(PolyFamily family, int degree, double x);

/// Fills vals[0..n) (and, when non-null, derivs[0..n)) with the orthonormal
/// polynomial values and first derivatives at x via the three-term recurrence.
void ortho_poly_all(PolyFamily family, int n, double x, double* vals, double* derivs);

/// Collocation surrogate: coefficients from the discrete projection
/// f_hat(n) = sum_j f(x_j) p_n(x_j) w_j on a Gauss rule. Interpolates the
/// data at the rule nodes.
class GpcSurrogate {
public:
    GpcSurrogate() = default;

    static GpcSurrogate fit(const std::vector<double>& values, QuadratureRule rule);

    double operator()(double x) const;
    double derivative(double x) const;
    double mean() const { return coef_.empty() ? 0.0 : coef_[0]; }

    const std::vector<double>& coefficients() const { return coef_; }
    PolyFamily family() const { return rule_.family; }
    const QuadratureRule& rule() const { return rule_; }

private:
    std::vector<double> coef_;
    QuadratureRule rule_;
};

/// Tensor-product Legendre collocation on [-1,1]^d for d = 2 or 3. values are
/// the samples at the tensor grid of the 1-D rule nodes, row-major with the
/// last axis fastest.
class TensorGpc {
public:
    TensorGpc() = default;

    static TensorGpc fit(const std::vector<double>& values, const QuadratureRule& rule, int dim);

    int dim() const { return dim_; }
    int order() const { return order_; }

    double operator()(std::span<const double> x) const;
    std::vector<double> gradient(std::span<const double> x) const;

    const std::vector<double>& coefficients() const { return coef_; }

private:
    int dim_ = 0;
    int order_ = 0;
    std::vector<double> coef_;
};

}  // namespace pfwd
