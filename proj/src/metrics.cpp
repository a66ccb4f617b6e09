#include "pfwd/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pfwd {

DensityView view(const HistogramDensity& d) {
    return {[&d](double y) { return d.value(y); }, d.edges};
}

DensityView view(const GridDensity& d) {
    return {[&d](double y) { return d.value(y); }, d.ys};
}

DensityView view(const KdeDensity& d) {
    return {[&d](double y) { return d.value(y); }, {}};
}

namespace {

// Union of the metric grid and both breakpoint sets, clipped to the grid range.
std::vector<double> union_grid(const DensityView& p, const DensityView& q,
                               std::span<const double> grid) {
    if (grid.size() < 2) throw std::invalid_argument("density metric: need a grid");
    const double lo = grid.front(), hi = grid.back();
    std::vector<double> u(grid.begin(), grid.end());
    for (const auto* bp : {&p.breakpoints, &q.breakpoints})
        for (double b : *bp)
            if (b > lo && b < hi) u.push_back(b);
    std::sort(u.begin(), u.end());
    u.erase(std::unique(u.begin(), u.end()), u.end());
    return u;
}

// Two-point Gauss samples per cell. Both densities are piecewise linear (or
// constant) between union points, so reconstructing one-sided endpoint values
// from the interior samples makes the L1/L2 cell integrals exact.
struct CellSamples {
    double d1, d3;    // difference at the Gauss points
    double du, dv;    // reconstructed one-sided endpoint differences
};

constexpr double kGaussOffset = 0.21132486540518711775;  // (1 - 1/sqrt(3)) / 2

CellSamples sample_cell(const DensityView& p, const DensityView& q, double a, double b) {
    const double w = b - a;
    const double t1 = a + kGaussOffset * w;
    const double t2 = b - kGaussOffset * w;
    const double d1 = p.value(t1) - q.value(t1);
    const double d3 = p.value(t2) - q.value(t2);
    const double s3 = std::sqrt(3.0);
    return {d1, d3, 0.5 * ((s3 + 1.0) * d1 - (s3 - 1.0) * d3),
            0.5 * ((s3 + 1.0) * d3 - (s3 - 1.0) * d1)};
}

}  // namespace

double lp_distance(const DensityView& p, const DensityView& q, std::span<const double> grid,
                   LpOrder order) {
    const std::vector<double> u = union_grid(p, q, grid);
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < u.size(); ++i) {
        const double w = u[i + 1] - u[i];
        if (!(w > 0.0)) continue;
        const CellSamples s = sample_cell(p, q, u[i], u[i + 1]);
        switch (order) {
            case LpOrder::one: {
                const double au = std::abs(s.du), av = std::abs(s.dv);
                if (s.du * s.dv >= 0.0)
                    acc += 0.5 * w * (au + av);
                else
                    acc += 0.5 * w * (s.du * s.du + s.dv * s.dv) / (au + av);
                break;
            }
            case LpOrder::two:
                acc += w * (s.du * s.du + s.du * s.dv + s.dv * s.dv) / 3.0;
                break;
            case LpOrder::sup:
                acc = std::max({acc, std::abs(s.du), std::abs(s.dv)});
                break;
        }
    }
    return order == LpOrder::two ? std::sqrt(acc) : acc;
}

KlResult kl_divergence(const DensityView& p, const DensityView& q, std::span<const double> grid) {
    const std::vector<double> u = union_grid(p, q, grid);
    KlResult res;
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < u.size(); ++i) {
        const double w = u[i + 1] - u[i];
        if (!(w > 0.0)) continue;
        const double t1 = u[i] + kGaussOffset * w;
        const double t2 = u[i + 1] - kGaussOffset * w;
        for (double t : {t1, t2}) {
            const double pv = p.value(t);
            if (pv <= 0.0) continue;
            const double qv = q.value(t);
            if (qv <= 0.0) {
                res.infinite = true;
                res.value = std::numeric_limits<double>::infinity();
                return res;
            }
            acc += 0.5 * w * pv * std::log(pv / qv);
        }
    }
    res.value = acc;
    return res;
}

double hellinger(const DensityView& p, const DensityView& q, std::span<const double> grid) {
    const std::vector<double> u = union_grid(p, q, grid);
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < u.size(); ++i) {
        const double w = u[i + 1] - u[i];
        if (!(w > 0.0)) continue;
        const double t1 = u[i] + kGaussOffset * w;
        const double t2 = u[i + 1] - kGaussOffset * w;
        for (double t : {t1, t2}) {
            const double pv = p.value(t);
            const double qv = q.value(t);
            if (pv < 0.0 || qv < 0.0)
                throw std::invalid_argument("hellinger: negative density value");
            const double d = std::sqrt(pv) - std::sqrt(qv);
            acc += 0.5 * w * d * d;
        }
    }
    return std::sqrt(0.5 * acc);
}

MomentSummary moments_mc(std::span<const double> samples) {
    if (samples.size() < 2) throw std::invalid_argument("moments_mc: need at least 2 samples");
    const double m = static_cast<double>(samples.size());
    double mean = 0.0;
    for (double v : samples) mean += v;
    mean /= m;
    double ss = 0.0;
    for (double v : samples) ss += (v - mean) * (v - mean);
    MomentSummary out;
    out.mean = mean;
    out.variance = ss / (m - 1.0);
    out.std = std::sqrt(out.variance);
    return out;
}

MomentSummary moments_spline(const CubicSpline1D& s, const InputDensity& c) {
    if (c.kind() != InputDensity::Kind::uniform_box || c.dim() != 1)
        throw std::invalid_argument("moments_spline: requires a 1-D uniform input density");
    const double lo = c.support_lo(0), hi = c.support_hi(0);
    const double inv_len = 1.0 / (hi - lo);
    const double mean = s.integrate(lo, hi) * inv_len;

    // 4-point Gauss-Legendre per interval is exact for the degree-6 square.
    static const double gx[4] = {-0.8611363115940526, -0.3399810435848563, 0.3399810435848563,
                                 0.8611363115940526};
    static const double gw[4] = {0.3478548451374538, 0.6521451548625461, 0.6521451548625461,
                                 0.3478548451374538};
    const auto& knots = s.knots();
    double second = 0.0;
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
        const double a = std::max(knots[i], lo);
        const double b = std::min(knots[i + 1], hi);
        if (!(a < b)) continue;
        const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        for (int g = 0; g < 4; ++g) {
            const double x = mid + half * gx[g];
            const double v = s(x);
            second += gw[g] * half * v * v;
        }
    }
    second *= inv_len;

    MomentSummary out;
    out.mean = mean;
    out.variance = std::max(0.0, second - mean * mean);
    out.std = std::sqrt(out.variance);
    return out;
}

namespace {

CircularMoments finish_circular(std::complex<double> mean) {
    CircularMoments out;
    out.mean = mean;
    const double r = std::abs(mean);
    if (r <= 0.0) throw numerical_error("circular_moments: |mean| = 0, std undefined");
    out.std = std::sqrt(-2.0 * std::log(std::min(r, 1.0)));
    return out;
}

}  // namespace

CircularMoments circular_moments(std::span<const double> theta_samples) {
    if (theta_samples.empty()) throw std::invalid_argument("circular_moments: empty sample");
    std::complex<double> acc(0.0, 0.0);
    for (double t : theta_samples) acc += std::complex<double>(std::cos(t), std::sin(t));
    return finish_circular(acc / static_cast<double>(theta_samples.size()));
}

CircularMoments circular_moments(const std::function<double(double)>& theta,
                                 const QuadratureRule& rule) {
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
        const double t = theta(rule.nodes[j]);
        acc += rule.weights[j] * std::complex<double>(std::cos(t), std::sin(t));
    }
    return finish_circular(acc);
}

PowerLawFit fit_power_law(std::span<const double> ns, std::span<const double> errors) {
    if (ns.size() != errors.size() || ns.size() < 3)
        throw std::invalid_argument("fit_power_law: need at least 3 (N, error) pairs");
    const std::size_t n = ns.size();
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(ns[i] > 0.0) || !(errors[i] > 0.0))
            throw std::invalid_argument("fit_power_law: values must be positive");
        x[i] = std::log(ns[i]);
        y[i] = std::log(errors[i]);
    }
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / static_cast<double>(n), my = sy / static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("fit_power_law: all N equal");

    PowerLawFit fit;
    fit.exponent = sxy / sxx;
    fit.amplitude = std::exp(my - fit.exponent * mx);
    double ss_res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - (my + fit.exponent * (x[i] - mx));
        ss_res += r * r;
    }
    fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : (ss_res <= 1e-30 ? 1.0 : 0.0);
    return fit;
}

}  // namespace pfwd
