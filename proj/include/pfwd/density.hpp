#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "pfwd/rng.hpp"

namespace pfwd {

/// Equal-width histogram in density units: sum of height * width is 1.
struct HistogramDensity {
    std::vector<double> edges;    ///< L+1 strictly increasing
    std::vector<double> heights;  ///< L non-negative

    /// Step evaluation; right-continuous, the last edge belongs to the last bin.
    double value(double y) const;
    const std::vector<double>& breakpoints() const { return edges; }
};

/// Density sampled on an output-axis grid, evaluated by linear interpolation
/// (zero outside the grid). Grid points where the pushforward is singular are
/// recorded in `singular` and carry +inf.
struct GridDensity {
    std::vector<double> ys;
    std::vector<double> pdf;
    std::vector<std::size_t> singular;

    double value(double y) const;
    const std::vector<double>& breakpoints() const { return ys; }
    /// Trapezoid integral, skipping singular points.
    double integral() const;
};

/// The input weight c: evaluator plus an i.i.d. sampler with explicit seed.
class InputDensity {
public:
    enum class Kind { uniform_box, transformed_normal, beta };

    static InputDensity uniform_box(std::vector<double> lo, std::vector<double> hi);
    /// Density of alpha = 2 nu / (1 + sqrt(1 + 4 nu^2)) with nu ~ N(0, sigma):
    /// a normal pushed through the bounded map of the real line into (-1, 1).
    /// The support box is the image of [-6 sigma, 6 sigma].
    static InputDensity transformed_normal(double sigma);
    /// Beta(r, s) rescaled to [-1, 1].
    static InputDensity beta(double r, double s);

    /// The transform behind `transformed_normal` and its inverse/jacobian.
    static double normal_to_alpha(double nu);
    static double alpha_to_normal(double alpha);
    static double alpha_to_normal_jacobian(double alpha);  ///< d nu / d alpha

    Kind kind() const { return kind_; }
    int dim() const { return static_cast<int>(lo_.size()); }
    double sigma() const { return sigma_; }

    /// Support box used for sampling grids (normal: +-6 sigma).
    double support_lo(int axis) const { return lo_[static_cast<std::size_t>(axis)]; }
    double support_hi(int axis) const { return hi_[static_cast<std::size_t>(axis)]; }

    double density(std::span<const double> x) const;
    double density1(double x) const { return density(std::span<const double>(&x, 1)); }
    void sample(Rng& rng, std::span<double> out) const;

private:
    Kind kind_ = Kind::uniform_box;
    std::vector<double> lo_, hi_;
    double sigma_ = 1.0;
    double beta_r_ = 2.0, beta_s_ = 2.0;
    double volume_ = 1.0;
};

/// Equal-width histogram of samples. Default range is the sample min/max;
/// all samples must lie inside an explicit range.
HistogramDensity histogram(std::span<const double> samples, int bins,
                           std::optional<std::pair<double, double>> range = {});

/// MISE-guided bin count round(K_f M^(1/3)) with
/// K_f = (l2_of_deriv^2 * f_range / 6)^(1/3); at least 1.
int optimal_bins(std::size_t m, double f_range, double l2_of_deriv);

/// Gaussian kernel density estimator.
class KdeDensity {
public:
    KdeDensity(std::vector<double> samples, double bandwidth);

    double value(double y) const;
    double bandwidth() const { return h_; }
    const std::vector<double>& samples() const { return samples_; }
    static const std::vector<double>& breakpoints();  // empty: smooth density

private:
    std::vector<double> samples_;
    double h_ = 0.0;
};

/// KDE with Silverman's bandwidth 0.9 min(std, IQR/1.34) M^(-1/5) when none
/// is supplied.
KdeDensity kde(std::vector<double> samples, std::optional<double> bandwidth = {});

/// Draws m i.i.d. inputs from `input` (seed-deterministic, chunked substreams)
/// and returns the surrogate values.
std::vector<double> pushforward_samples(const std::function<double(std::span<const double>)>& f,
                                        const InputDensity& input, std::size_t m,
                                        std::uint64_t seed);

/// Monte-Carlo pushforward: histogram of m surrogate evaluations at i.i.d.
/// inputs. Deterministic given seed, independent of any chunking.
HistogramDensity pushforward_mc(const std::function<double(std::span<const double>)>& f,
                                const InputDensity& input, std::size_t m, int bins,
                                std::uint64_t seed);

/// Exact 1-D pushforward density: for each y locate every root of f(a) = y on
/// the monotone pieces of f (sign-scan of f' with bisection refinement) and
/// sum c(a) / |f'(a)|. Roots with |f'| < 1e-12 flag the grid point singular.
GridDensity exact_pdf_1d(const std::function<double(double)>& f,
                         const std::function<double(double)>& fprime, const InputDensity& c,
                         std::vector<double> ys);

/// Same pushforward folded modulo `period` onto [0, period): the density of
/// mod(f, period).
GridDensity exact_pdf_1d_mod(const std::function<double(double)>& f,
                             const std::function<double(double)>& fprime, const InputDensity& c,
                             double period, std::vector<double> ys);

}  // namespace pfwd
