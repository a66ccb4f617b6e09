#include "pfwd/spline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pfwd/errors.hpp"

namespace pfwd {

void GridSamples::validate() const {
    if (axes.empty()) throw std::invalid_argument("GridSamples: no axes");
    std::size_t expected = 1;
    for (const auto& ax : axes) {
        if (ax.size() < 2) throw std::invalid_argument("GridSamples: axis too short");
        for (std::size_t i = 1; i < ax.size(); ++i)
            if (!(ax[i - 1] < ax[i]))
                throw std::invalid_argument("GridSamples: axis not strictly increasing");
        expected *= ax.size();
    }
    if (values.size() != expected)
        throw std::invalid_argument("GridSamples: value tensor shape mismatch");
    for (double v : values)
        if (!std::isfinite(v)) throw std::invalid_argument("GridSamples: non-finite value");
}

namespace detail {

namespace {

// Thomas solve of a tridiagonal system; lower/diag/upper are modified in place.
void solve_tridiagonal(std::vector<double>& lower, std::vector<double>& diag,
                       std::vector<double>& upper, std::vector<double>& rhs) {
    const std::size_t n = diag.size();
    for (std::size_t i = 1; i < n; ++i) {
        if (diag[i - 1] == 0.0) throw numerical_error("spline fit: singular system");
        const double w = lower[i] / diag[i - 1];
        diag[i] -= w * upper[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    if (diag[n - 1] == 0.0) throw numerical_error("spline fit: singular system");
    rhs[n - 1] /= diag[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) rhs[i] = (rhs[i] - upper[i] * rhs[i + 1]) / diag[i];
}

}  // namespace

void cubic_coefficients(const std::vector<double>& x, const double* y, std::ptrdiff_t stride,
                        BoundaryCondition bc, std::array<double, 4>* out) {
    const std::size_t n = x.size();
    const std::size_t min_nodes = bc.kind == BoundaryCondition::Kind::clamped ? 2 : 4;
    if (n < min_nodes) throw std::invalid_argument("spline fit: too few nodes");
    for (std::size_t i = 1; i < n; ++i)
        if (!(x[i - 1] < x[i]))
            throw std::invalid_argument("spline fit: nodes must be strictly increasing");

    auto yv = [&](std::size_t i) { return y[static_cast<std::ptrdiff_t>(i) * stride]; };

    std::vector<double> h(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) h[i] = x[i + 1] - x[i];
    auto slope = [&](std::size_t i) { return (yv(i + 1) - yv(i)) / h[i]; };

    // Solve for the knot second derivatives M_i ("moments").
    std::vector<double> m(n, 0.0);

    if (bc.kind == BoundaryCondition::Kind::clamped) {
        std::vector<double> lo(n, 0.0), di(n, 0.0), up(n, 0.0), rhs(n, 0.0);
        di[0] = h[0] / 3.0;
        up[0] = h[0] / 6.0;
        rhs[0] = slope(0) - bc.d_lo;
        for (std::size_t i = 1; i + 1 < n; ++i) {
            lo[i] = h[i - 1] / 6.0;
            di[i] = (h[i - 1] + h[i]) / 3.0;
            up[i] = h[i] / 6.0;
            rhs[i] = slope(i) - slope(i - 1);
        }
        lo[n - 1] = h[n - 2] / 6.0;
        di[n - 1] = h[n - 2] / 3.0;
        rhs[n - 1] = bc.d_hi - slope(n - 2);
        solve_tridiagonal(lo, di, up, rhs);
        m = rhs;
    } else if (bc.kind == BoundaryCondition::Kind::natural) {
        // M_0 = M_{n-1} = 0; interior unknowns only.
        const std::size_t k = n - 2;
        std::vector<double> lo(k, 0.0), di(k, 0.0), up(k, 0.0), rhs(k, 0.0);
        for (std::size_t i = 1; i + 1 < n; ++i) {
            const std::size_t r = i - 1;
            lo[r] = h[i - 1] / 6.0;
            di[r] = (h[i - 1] + h[i]) / 3.0;
            up[r] = h[i] / 6.0;
            rhs[r] = slope(i) - slope(i - 1);
        }
        solve_tridiagonal(lo, di, up, rhs);
        for (std::size_t i = 1; i + 1 < n; ++i) m[i] = rhs[i - 1];
    } else {
        // Not-a-knot: s''' continuous at x_1 and x_{n-2} gives
        //   M_0 = M_1 (1 + h_0/h_1) - M_2 h_0/h_1
        //   M_{n-1} = M_{n-2} (1 + h_{n-2}/h_{n-3}) - M_{n-3} h_{n-2}/h_{n-3}
        // which are eliminated into the first and last interior rows.
        const std::size_t k = n - 2;
        std::vector<double> lo(k, 0.0), di(k, 0.0), up(k, 0.0), rhs(k, 0.0);
        for (std::size_t i = 1; i + 1 < n; ++i) {
            const std::size_t r = i - 1;
            lo[r] = h[i - 1] / 6.0;
            di[r] = (h[i - 1] + h[i]) / 3.0;
            up[r] = h[i] / 6.0;
            rhs[r] = slope(i) - slope(i - 1);
        }
        const double r0 = h[0] / h[1];
        di[0] += (h[0] / 6.0) * (1.0 + r0);
        up[0] -= (h[0] / 6.0) * r0;
        lo[0] = 0.0;
        const double r1 = h[n - 2] / h[n - 3];
        di[k - 1] += (h[n - 2] / 6.0) * (1.0 + r1);
        lo[k - 1] -= (h[n - 2] / 6.0) * r1;
        up[k - 1] = 0.0;
        solve_tridiagonal(lo, di, up, rhs);
        for (std::size_t i = 1; i + 1 < n; ++i) m[i] = rhs[i - 1];
        m[0] = m[1] * (1.0 + r0) - m[2] * r0;
        m[n - 1] = m[n - 2] * (1.0 + r1) - m[n - 3] * r1;
    }

    for (std::size_t i = 0; i + 1 < n; ++i) {
        out[i][0] = yv(i);
        out[i][1] = slope(i) - h[i] * (2.0 * m[i] + m[i + 1]) / 6.0;
        out[i][2] = 0.5 * m[i];
        out[i][3] = (m[i + 1] - m[i]) / (6.0 * h[i]);
    }
}

}  // namespace detail

CubicSpline1D CubicSpline1D::fit(std::vector<double> knots, const std::vector<double>& values,
                                 BoundaryCondition bc) {
    if (knots.size() != values.size())
        throw std::invalid_argument("CubicSpline1D: knot/value count mismatch");
    CubicSpline1D s;
    s.coef_.resize(knots.size() - 1);
    detail::cubic_coefficients(knots, values.data(), 1, bc, s.coef_.data());
    s.knots_ = std::move(knots);
    return s;
}

std::size_t CubicSpline1D::interval(double x) const {
    const auto it = std::upper_bound(knots_.begin(), knots_.end(), x);
    const std::ptrdiff_t idx = (it - knots_.begin()) - 1;
    const std::ptrdiff_t last = static_cast<std::ptrdiff_t>(coef_.size()) - 1;
    return static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(idx, 0, last));
}

double CubicSpline1D::operator()(double x) const {
    const std::size_t i = interval(x);
    const double t = x - knots_[i];
    const auto& c = coef_[i];
    return c[0] + t * (c[1] + t * (c[2] + t * c[3]));
}

double CubicSpline1D::derivative(double x, int order) const {
    const std::size_t i = interval(x);
    const double t = x - knots_[i];
    const auto& c = coef_[i];
    if (order == 1) return c[1] + t * (2.0 * c[2] + 3.0 * t * c[3]);
    if (order == 2) return 2.0 * c[2] + 6.0 * t * c[3];
    throw std::invalid_argument("CubicSpline1D::derivative: order must be 1 or 2");
}

double CubicSpline1D::integrate(double a, double b) const {
    if (a > b) throw std::invalid_argument("CubicSpline1D::integrate: a > b");
    // Antiderivative of the local piece from its left knot to x.
    auto piece_int = [&](std::size_t i, double x) {
        const double t = x - knots_[i];
        const auto& c = coef_[i];
        return t * (c[0] + t * (c[1] / 2.0 + t * (c[2] / 3.0 + t * c[3] / 4.0)));
    };
    const std::size_t ia = interval(a);
    const std::size_t ib = interval(b);
    if (ia == ib) return piece_int(ia, b) - piece_int(ia, a);
    double total = piece_int(ia, knots_[ia + 1]) - piece_int(ia, a);
    for (std::size_t i = ia + 1; i < ib; ++i) total += piece_int(i, knots_[i + 1]);
    total += piece_int(ib, b);
    return total;
}

CubicSpline1D fit_cubic(const GridSamples& samples, BoundaryCondition bc) {
    samples.validate();
    if (samples.dim() != 1) throw std::invalid_argument("fit_cubic: need 1-D samples");
    return CubicSpline1D::fit(samples.axes[0], samples.values, bc);
}

namespace {

std::size_t locate(const std::vector<double>& knots, double x) {
    const auto it = std::upper_bound(knots.begin(), knots.end(), x);
    const std::ptrdiff_t idx = (it - knots.begin()) - 1;
    const std::ptrdiff_t last = static_cast<std::ptrdiff_t>(knots.size()) - 2;
    return static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(idx, 0, last));
}

// Boundary condition for coefficient rows: clamped derivative data applies to
// the value row (power 0) only; higher coefficient rows get zero slope.
BoundaryCondition bc_for_power(BoundaryCondition bc, int power) {
    if (bc.kind == BoundaryCondition::Kind::clamped && power > 0)
        return BoundaryCondition::clamped(0.0, 0.0);
    return bc;
}

}  // namespace

TensorSpline TensorSpline::fit(const GridSamples& samples, BoundaryCondition bc) {
    samples.validate();
    const std::size_t d = samples.dim();
    if (d != 2 && d != 3) throw std::invalid_argument("fit_tensor: dim must be 2 or 3");
    for (const auto& ax : samples.axes)
        if (ax.size() < (bc.kind == BoundaryCondition::Kind::clamped ? 2u : 4u))
            throw std::invalid_argument("fit_tensor: too few nodes per axis");

    TensorSpline s;
    s.dim_ = static_cast<int>(d);
    s.axes_ = samples.axes;
    for (const auto& ax : samples.axes) s.cells_.push_back(ax.size() - 1);

    const auto& X = samples.axes[0];
    const std::size_t nx = X.size();

    if (d == 2) {
        const auto& Y = samples.axes[1];
        const std::size_t ny = Y.size(), cy = ny - 1, cx = nx - 1;

        // Pass 1: fit along the last axis (y) for every x-row.
        // R[i][j][b]: row i, y-interval j, power b.
        std::vector<std::array<double, 4>> row(cy);
        std::vector<double> R(nx * cy * 4);
        for (std::size_t i = 0; i < nx; ++i) {
            detail::cubic_coefficients(Y, samples.values.data() + i * ny, 1, bc, row.data());
            for (std::size_t j = 0; j < cy; ++j)
                for (int b = 0; b < 4; ++b) R[(i * cy + j) * 4 + b] = row[j][static_cast<std::size_t>(b)];
        }

        // Pass 2: fit the coefficient functions along x.
        s.coef_.assign(cx * cy * 16, 0.0);
        std::vector<double> g(nx);
        std::vector<std::array<double, 4>> col(cx);
        for (std::size_t j = 0; j < cy; ++j) {
            for (int b = 0; b < 4; ++b) {
                for (std::size_t i = 0; i < nx; ++i) g[i] = R[(i * cy + j) * 4 + b];
                detail::cubic_coefficients(X, g.data(), 1, bc_for_power(bc, b), col.data());
                for (std::size_t i = 0; i < cx; ++i)
                    for (int a = 0; a < 4; ++a)
                        s.coef_[(i * cy + j) * 16 + a * 4 + b] = col[i][static_cast<std::size_t>(a)];
            }
        }
    } else {
        const auto& Y = samples.axes[1];
        const auto& Z = samples.axes[2];
        const std::size_t ny = Y.size(), nz = Z.size();
        const std::size_t cx = nx - 1, cy = ny - 1, cz = nz - 1;

        // Pass 1: along z for every (x, y) row.
        std::vector<std::array<double, 4>> line(cz);
        std::vector<double> Rz(nx * ny * cz * 4);
        for (std::size_t i = 0; i < nx; ++i)
            for (std::size_t j = 0; j < ny; ++j) {
                detail::cubic_coefficients(Z, samples.values.data() + (i * ny + j) * nz, 1, bc,
                                           line.data());
                for (std::size_t k = 0; k < cz; ++k)
                    for (int c = 0; c < 4; ++c)
                        Rz[((i * ny + j) * cz + k) * 4 + c] = line[k][static_cast<std::size_t>(c)];
            }

        // Pass 2: along y for every (x, z-interval, power c).
        std::vector<double> gy(ny);
        std::vector<std::array<double, 4>> ycol(cy);
        std::vector<double> Ry(nx * cy * cz * 16);
        for (std::size_t i = 0; i < nx; ++i)
            for (std::size_t k = 0; k < cz; ++k)
                for (int c = 0; c < 4; ++c) {
                    for (std::size_t j = 0; j < ny; ++j) gy[j] = Rz[((i * ny + j) * cz + k) * 4 + c];
                    detail::cubic_coefficients(Y, gy.data(), 1, bc_for_power(bc, c), ycol.data());
                    for (std::size_t j = 0; j < cy; ++j)
                        for (int b = 0; b < 4; ++b)
                            Ry[(((i * cy + j) * cz + k) * 4 + b) * 4 + c] =
                                ycol[j][static_cast<std::size_t>(b)];
                }

        // Pass 3: along x.
        s.coef_.assign(cx * cy * cz * 64, 0.0);
        std::vector<double> gx(nx);
        std::vector<std::array<double, 4>> xcol(cx);
        for (std::size_t j = 0; j < cy; ++j)
            for (std::size_t k = 0; k < cz; ++k)
                for (int b = 0; b < 4; ++b)
                    for (int c = 0; c < 4; ++c) {
                        for (std::size_t i = 0; i < nx; ++i)
                            gx[i] = Ry[(((i * cy + j) * cz + k) * 4 + b) * 4 + c];
                        const int outer = std::max(b, c);
                        detail::cubic_coefficients(X, gx.data(), 1, bc_for_power(bc, outer),
                                                   xcol.data());
                        for (std::size_t i = 0; i < cx; ++i)
                            for (int a = 0; a < 4; ++a)
                                s.coef_[((i * cy + j) * cz + k) * 64 + a * 16 + b * 4 + c] =
                                    xcol[i][static_cast<std::size_t>(a)];
                    }
    }
    return s;
}

double TensorSpline::eval2(double x, double y, double* gx, double* gy) const {
    const std::size_t i = locate(axes_[0], x);
    const std::size_t j = locate(axes_[1], y);
    const double u = x - axes_[0][i];
    const double v = y - axes_[1][j];
    const double* c = coef_.data() + (i * cells_[1] + j) * 16;

    double row[4], drow[4];
    for (int a = 0; a < 4; ++a) {
        const double* ca = c + a * 4;
        row[a] = ca[0] + v * (ca[1] + v * (ca[2] + v * ca[3]));
        if (gy) drow[a] = ca[1] + v * (2.0 * ca[2] + 3.0 * v * ca[3]);
    }
    const double val = row[0] + u * (row[1] + u * (row[2] + u * row[3]));
    if (gx) *gx = row[1] + u * (2.0 * row[2] + 3.0 * u * row[3]);
    if (gy) *gy = drow[0] + u * (drow[1] + u * (drow[2] + u * drow[3]));
    return val;
}

double TensorSpline::eval3(double x, double y, double z, double* gx, double* gy,
                           double* gz) const {
    const std::size_t i = locate(axes_[0], x);
    const std::size_t j = locate(axes_[1], y);
    const std::size_t k = locate(axes_[2], z);
    const double u = x - axes_[0][i];
    const double v = y - axes_[1][j];
    const double w = z - axes_[2][k];
    const double* c = coef_.data() + ((i * cells_[1] + j) * cells_[2] + k) * 64;

    double lvl[4][4], dlvl[4][4];
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            const double* cb = c + a * 16 + b * 4;
            lvl[a][b] = cb[0] + w * (cb[1] + w * (cb[2] + w * cb[3]));
            if (gz) dlvl[a][b] = cb[1] + w * (2.0 * cb[2] + 3.0 * w * cb[3]);
        }
    double row[4], vrow[4], zrow[4];
    for (int a = 0; a < 4; ++a) {
        row[a] = lvl[a][0] + v * (lvl[a][1] + v * (lvl[a][2] + v * lvl[a][3]));
        if (gy) vrow[a] = lvl[a][1] + v * (2.0 * lvl[a][2] + 3.0 * v * lvl[a][3]);
        if (gz) zrow[a] = dlvl[a][0] + v * (dlvl[a][1] + v * (dlvl[a][2] + v * dlvl[a][3]));
    }
    const double val = row[0] + u * (row[1] + u * (row[2] + u * row[3]));
    if (gx) *gx = row[1] + u * (2.0 * row[2] + 3.0 * u * row[3]);
    if (gy) *gy = vrow[0] + u * (vrow[1] + u * (vrow[2] + u * vrow[3]));
    if (gz) *gz = zrow[0] + u * (zrow[1] + u * (zrow[2] + u * zrow[3]));
    return val;
}

double TensorSpline::operator()(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != dim_)
        throw std::invalid_argument("TensorSpline: point dimension mismatch");
    if (dim_ == 2) return eval2(x[0], x[1], nullptr, nullptr);
    return eval3(x[0], x[1], x[2], nullptr, nullptr, nullptr);
}

void TensorSpline::gradient(std::span<const double> x, std::span<double> out) const {
    if (static_cast<int>(x.size()) != dim_ || static_cast<int>(out.size()) != dim_)
        throw std::invalid_argument("TensorSpline: point dimension mismatch");
    if (dim_ == 2)
        eval2(x[0], x[1], &out[0], &out[1]);
    else
        eval3(x[0], x[1], x[2], &out[0], &out[1], &out[2]);
}

std::vector<double> TensorSpline::gradient(std::span<const double> x) const {
    std::vector<double> g(static_cast<std::size_t>(dim_));
    gradient(x, g);
    return g;
}

TensorSpline fit_tensor(const GridSamples& samples, BoundaryCondition bc) {
    return TensorSpline::fit(samples, bc);
}

}  // namespace pfwd
