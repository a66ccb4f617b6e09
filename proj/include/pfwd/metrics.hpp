#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "pfwd/density.hpp"
#include "pfwd/grids.hpp"
#include "pfwd/spline.hpp"

namespace pfwd {

enum class LpOrder { one, two, sup };

/// Evaluable density plus its discretization breakpoints (empty for smooth
/// estimators). Distances resample everything onto the union of the metric
/// grid and both breakpoint sets, with step-function semantics for histograms.
struct DensityView {
    std::function<double(double)> value;
    std::vector<double> breakpoints;
};

DensityView view(const HistogramDensity& d);
DensityView view(const GridDensity& d);
DensityView view(const KdeDensity& d);

double lp_distance(const DensityView& p, const DensityView& q, std::span<const double> grid,
                   LpOrder order);

struct KlResult {
    double value = 0.0;
    bool infinite = false;  ///< q vanished where p > 0
};
/// KL(p || q) by quadrature on the union grid, skipping p = 0 points.
KlResult kl_divergence(const DensityView& p, const DensityView& q, std::span<const double> grid);

/// (1/sqrt(2)) || sqrt(p) - sqrt(q) ||_2 on the grid range.
double hellinger(const DensityView& p, const DensityView& q, std::span<const double> grid);

struct MomentSummary {
    double mean = 0.0;
    double variance = 0.0;
    double std = 0.0;
};

MomentSummary moments_mc(std::span<const double> samples);

/// Exact moments of a spline under a uniform input density: the mean from the
/// piecewise antiderivative, the second moment by per-interval Gauss rules
/// exact for degree-6 integrands.
MomentSummary moments_spline(const CubicSpline1D& s, const InputDensity& c);

struct CircularMoments {
    std::complex<double> mean;  ///< normalized, |mean| <= 1
    double std = 0.0;           ///< sqrt(-2 ln |mean|)
};

CircularMoments circular_moments(std::span<const double> theta_samples);
CircularMoments circular_moments(const std::function<double(double)>& theta,
                                 const QuadratureRule& rule);

struct PowerLawFit {
    double amplitude = 0.0;  ///< C in C * N^s
    double exponent = 0.0;   ///< s
    double r_squared = 0.0;
};

/// Least squares on (log N, log error); needs >= 3 points with positive errors.
PowerLawFit fit_power_law(std::span<const double> ns, std::span<const double> errors);

}  // namespace pfwd
