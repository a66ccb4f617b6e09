#include "pfwd/gpc.hpp"

#include <cmath>
#include <stdexcept>

namespace pfwd {

namespace {

// Recurrence coefficient b_k in
//   b_{k+1} p_{k+1}(x) = x p_k(x) - b_k p_{k-1}(x).
inline double recur_b(PolyFamily family, int k) {
    const double kk = static_cast<double>(k);
    return family == PolyFamily::legendre ? kk / std::sqrt(4.0 * kk * kk - 1.0) : std::sqrt(kk);
}

}  // namespace

void ortho_poly_all(PolyFamily family, int n, double x, double* vals, double* derivs) {
    if (n <= 0) return;
    double pm1 = 0.0, p0 = 1.0, dm1 = 0.0, d0 = 0.0;
    vals[0] = p0;
    if (derivs) derivs[0] = 0.0;
    double bk = 0.0;
    for (int k = 0; k + 1 < n; ++k) {
        const double bk1 = recur_b(family, k + 1);
        const double p1 = (x * p0 - bk * pm1) / bk1;
        const double d1 = (p0 + x * d0 - bk * dm1) / bk1;
        vals[k + 1] = p1;
        if (derivs) derivs[k + 1] = d1;
        pm1 = p0;
        p0 = p1;
        dm1 = d0;
        d0 = d1;
        bk = bk1;
    }
}

double ortho_poly(PolyFamily family, int degree, double x) {
    if (degree < 0) throw std::invalid_argument("ortho_poly: negative degree");
    std::vector<double> vals(static_cast<std::size_t>(degree) + 1);
    ortho_poly_all(family, degree + 1, x, vals.data(), nullptr);
    return vals.back();
}

GpcSurrogate GpcSurrogate::fit(const std::vector<double>& values, QuadratureRule rule) {
    const std::size_t n = rule.nodes.size();
    if (values.size() != n)
        throw std::invalid_argument("GpcSurrogate::fit: value/node count mismatch");
    GpcSurrogate g;
    g.coef_.assign(n, 0.0);
    std::vector<double> p(n);
    for (std::size_t j = 0; j < n; ++j) {
        ortho_poly_all(rule.family, static_cast<int>(n), rule.nodes[j], p.data(), nullptr);
        const double fw = values[j] * rule.weights[j];
        for (std::size_t k = 0; k < n; ++k) g.coef_[k] += fw * p[k];
    }
    g.rule_ = std::move(rule);
    return g;
}

double GpcSurrogate::operator()(double x) const {
    const std::size_t n = coef_.size();
    std::vector<double> p(n);
    ortho_poly_all(rule_.family, static_cast<int>(n), x, p.data(), nullptr);
    double s = 0.0;
    for (std::size_t k = 0; k < n; ++k) s += coef_[k] * p[k];
    return s;
}

double GpcSurrogate::derivative(double x) const {
    const std::size_t n = coef_.size();
    std::vector<double> p(n), d(n);
    ortho_poly_all(rule_.family, static_cast<int>(n), x, p.data(), d.data());
    double s = 0.0;
    for (std::size_t k = 0; k < n; ++k) s += coef_[k] * d[k];
    return s;
}

TensorGpc TensorGpc::fit(const std::vector<double>& values, const QuadratureRule& rule, int dim) {
    if (dim != 2 && dim != 3) throw std::invalid_argument("TensorGpc: dim must be 2 or 3");
    const std::size_t q = rule.nodes.size();
    std::size_t total = 1;
    for (int k = 0; k < dim; ++k) total *= q;
    if (values.size() != total)
        throw std::invalid_argument("TensorGpc: value tensor shape mismatch");

    // Projection matrix P[n][j] = p_n(x_j) w_j, applied along each axis.
    std::vector<double> P(q * q);
    std::vector<double> p(q);
    for (std::size_t j = 0; j < q; ++j) {
        ortho_poly_all(rule.family, static_cast<int>(q), rule.nodes[j], p.data(), nullptr);
        for (std::size_t n = 0; n < q; ++n) P[n * q + j] = p[n] * rule.weights[j];
    }

    std::vector<double> cur = values;
    std::vector<double> next(total);
    // Repeatedly project the last axis and rotate it to the front; after dim
    // passes the coefficient tensor is back in the original axis order.
    for (int pass = 0; pass < dim; ++pass) {
        const std::size_t rows = total / q;
        for (std::size_t n = 0; n < q; ++n)
            for (std::size_t r = 0; r < rows; ++r) {
                double acc = 0.0;
                const double* src = cur.data() + r * q;
                const double* pr = P.data() + n * q;
                for (std::size_t j = 0; j < q; ++j) acc += pr[j] * src[j];
                next[n * rows + r] = acc;
            }
        cur.swap(next);
    }

    TensorGpc t;
    t.dim_ = dim;
    t.order_ = static_cast<int>(q);
    t.coef_ = std::move(cur);
    return t;
}

double TensorGpc::operator()(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != dim_)
        throw std::invalid_argument("TensorGpc: point dimension mismatch");
    const std::size_t q = static_cast<std::size_t>(order_);
    std::vector<double> px(q * static_cast<std::size_t>(dim_));
    for (int k = 0; k < dim_; ++k)
        ortho_poly_all(PolyFamily::legendre, order_, x[static_cast<std::size_t>(k)],
                       px.data() + static_cast<std::size_t>(k) * q, nullptr);
    double s = 0.0;
    if (dim_ == 2) {
        for (std::size_t a = 0; a < q; ++a) {
            double inner = 0.0;
            for (std::size_t b = 0; b < q; ++b) inner += coef_[a * q + b] * px[q + b];
            s += inner * px[a];
        }
    } else {
        for (std::size_t a = 0; a < q; ++a) {
            double mid = 0.0;
            for (std::size_t b = 0; b < q; ++b) {
                double inner = 0.0;
                for (std::size_t c = 0; c < q; ++c)
                    inner += coef_[(a * q + b) * q + c] * px[2 * q + c];
                mid += inner * px[q + b];
            }
            s += mid * px[a];
        }
    }
    return s;
}

std::vector<double> TensorGpc::gradient(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != dim_)
        throw std::invalid_argument("TensorGpc: point dimension mismatch");
    const std::size_t q = static_cast<std::size_t>(order_);
    const std::size_t d = static_cast<std::size_t>(dim_);
    std::vector<double> px(q * d), dx(q * d);
    for (std::size_t k = 0; k < d; ++k)
        ortho_poly_all(PolyFamily::legendre, order_, x[k], px.data() + k * q, dx.data() + k * q);

    std::vector<double> grad(d, 0.0);
    auto basis = [&](std::size_t axis, std::size_t deriv_axis, std::size_t n) {
        return axis == deriv_axis ? dx[axis * q + n] : px[axis * q + n];
    };
    for (std::size_t g = 0; g < d; ++g) {
        double s = 0.0;
        if (dim_ == 2) {
            for (std::size_t a = 0; a < q; ++a)
                for (std::size_t b = 0; b < q; ++b)
                    s += coef_[a * q + b] * basis(0, g, a) * basis(1, g, b);
        } else {
            for (std::size_t a = 0; a < q; ++a)
                for (std::size_t b = 0; b < q; ++b)
                    for (std::size_t c = 0; c < q; ++c)
                        s += coef_[(a * q + b) * q + c] * basis(0, g, a) * basis(1, g, b) *
                             basis(2, g, c);
        }
        grad[g] = s;
    }
    return grad;
}

}  // namespace pfwd
