#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace pfwd {

/// Boundary closure for the cubic interpolation system.
struct BoundaryCondition {
    enum class Kind { natural, not_a_knot, clamped };
    Kind kind = Kind::not_a_knot;
    double d_lo = 0.0;  ///< clamped: s'(first knot)
    double d_hi = 0.0;  ///< clamped: s'(last knot)

    static BoundaryCondition natural() { return {Kind::natural, 0.0, 0.0}; }
    static BoundaryCondition not_a_knot() { return {Kind::not_a_knot, 0.0, 0.0}; }
    static BoundaryCondition clamped(double d_lo, double d_hi) {
        return {Kind::clamped, d_lo, d_hi};
    }
};

/// Sampled values on a (tensor) grid. nodes holds one strictly increasing
/// axis per dimension; values is row-major with the last axis fastest.
struct GridSamples {
    std::vector<std::vector<double>> axes;
    std::vector<double> values;

    std::size_t dim() const { return axes.size(); }
    void validate() const;  // throws std::invalid_argument
};

/// Interpolating cubic spline in local power form: on [knot_i, knot_{i+1}]
/// s(x) = c0 + c1 t + c2 t^2 + c3 t^3 with t = x - knot_i. Evaluation outside
/// the knot range extends the boundary piece.
class CubicSpline1D {
public:
    CubicSpline1D() = default;

    static CubicSpline1D fit(std::vector<double> knots, const std::vector<double>& values,
                             BoundaryCondition bc = {});

    double operator()(double x) const;
    double derivative(double x, int order = 1) const;  ///< order must be 1 or 2
    double integrate(double a, double b) const;        ///< exact piecewise integral

    const std::vector<double>& knots() const { return knots_; }
    const std::vector<std::array<double, 4>>& coefficients() const { return coef_; }

    /// Index of the piece containing x: ties at a knot resolve to the right
    /// interval, the last knot to the left; out-of-range clamps.
    std::size_t interval(double x) const;

private:
    std::vector<double> knots_;
    std::vector<std::array<double, 4>> coef_;
};

/// Tensor-product cubic spline in 2 or 3 dimensions. Built by successive 1-D
/// fits (last axis first); restricted to any grid line it coincides with the
/// 1-D spline through that line's data.
class TensorSpline {
public:
    TensorSpline() = default;

    static TensorSpline fit(const GridSamples& samples, BoundaryCondition bc = {});

    int dim() const { return dim_; }
    const std::vector<std::vector<double>>& axes() const { return axes_; }

    double operator()(std::span<const double> x) const;
    void gradient(std::span<const double> x, std::span<double> out) const;
    std::vector<double> gradient(std::span<const double> x) const;

private:
    int dim_ = 0;
    std::vector<std::vector<double>> axes_;
    std::vector<std::size_t> cells_;   // intervals per axis
    std::vector<double> coef_;         // 16 (d=2) or 64 (d=3) per cell

    double eval2(double x, double y, double* gx, double* gy) const;
    double eval3(double x, double y, double z, double* gx, double* gy, double* gz) const;
};

CubicSpline1D fit_cubic(const GridSamples& samples, BoundaryCondition bc = {});
TensorSpline fit_tensor(const GridSamples& samples, BoundaryCondition bc = {});

namespace detail {
/// Solves the cubic interpolation system for data y (strided) on nodes x and
/// writes the per-interval local coefficients. The workhorse behind both the
/// 1-D and tensor fits.
void cubic_coefficients(const std::vector<double>& x, const double* y, std::ptrdiff_t stride,
                        BoundaryCondition bc, std::array<double, 4>* out);
}  // namespace detail

}  // namespace pfwd
