#include "pfwd/density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pfwd {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kNormalSupportSigmas = 6.0;
constexpr std::size_t kChunk = 1 << 16;
}  // namespace

double HistogramDensity::value(double y) const {
    if (edges.empty() || y < edges.front() || y > edges.back()) return 0.0;
    auto it = std::upper_bound(edges.begin(), edges.end(), y);
    std::ptrdiff_t idx = (it - edges.begin()) - 1;
    idx = std::clamp<std::ptrdiff_t>(idx, 0, static_cast<std::ptrdiff_t>(heights.size()) - 1);
    return heights[static_cast<std::size_t>(idx)];
}

double GridDensity::value(double y) const {
    if (ys.empty() || y < ys.front() || y > ys.back()) return 0.0;
    auto it = std::upper_bound(ys.begin(), ys.end(), y);
    std::size_t i = static_cast<std::size_t>(
        std::clamp<std::ptrdiff_t>((it - ys.begin()) - 1, 0,
                                   static_cast<std::ptrdiff_t>(ys.size()) - 2));
    const double t = (y - ys[i]) / (ys[i + 1] - ys[i]);
    return pdf[i] + t * (pdf[i + 1] - pdf[i]);
}

double GridDensity::integral() const {
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < ys.size(); ++i) {
        double a = pdf[i], b = pdf[i + 1];
        if (!std::isfinite(a)) a = b;
        if (!std::isfinite(b)) b = a;
        if (!std::isfinite(a)) continue;
        total += 0.5 * (a + b) * (ys[i + 1] - ys[i]);
    }
    return total;
}

InputDensity InputDensity::uniform_box(std::vector<double> lo, std::vector<double> hi) {
    if (lo.empty() || lo.size() != hi.size())
        throw std::invalid_argument("uniform_box: bad bounds");
    InputDensity c;
    c.kind_ = Kind::uniform_box;
    c.volume_ = 1.0;
    for (std::size_t k = 0; k < lo.size(); ++k) {
        if (!(lo[k] < hi[k])) throw std::invalid_argument("uniform_box: lo must be < hi");
        c.volume_ *= hi[k] - lo[k];
    }
    c.lo_ = std::move(lo);
    c.hi_ = std::move(hi);
    return c;
}

double InputDensity::normal_to_alpha(double nu) {
    // Rationalized form of (-1 + sqrt(1 + 4 nu^2)) / (2 nu); exact at nu = 0,
    // odd, and maps the real line into (-1, 1).
    return 2.0 * nu / (1.0 + std::sqrt(1.0 + 4.0 * nu * nu));
}

double InputDensity::alpha_to_normal(double alpha) { return alpha / (1.0 - alpha * alpha); }

double InputDensity::alpha_to_normal_jacobian(double alpha) {
    const double one_m = 1.0 - alpha * alpha;
    return (1.0 + alpha * alpha) / (one_m * one_m);
}

InputDensity InputDensity::transformed_normal(double sigma) {
    if (!(sigma > 0.0)) throw std::invalid_argument("transformed_normal: sigma must be > 0");
    InputDensity c;
    c.kind_ = Kind::transformed_normal;
    c.sigma_ = sigma;
    const double amax = normal_to_alpha(kNormalSupportSigmas * sigma);
    c.lo_ = {-amax};
    c.hi_ = {amax};
    return c;
}

InputDensity InputDensity::beta(double r, double s) {
    if (!(r > 0.0) || !(s > 0.0)) throw std::invalid_argument("beta: parameters must be > 0");
    InputDensity c;
    c.kind_ = Kind::beta;
    c.beta_r_ = r;
    c.beta_s_ = s;
    c.lo_ = {-1.0};
    c.hi_ = {1.0};
    return c;
}

double InputDensity::density(std::span<const double> x) const {
    if (x.size() != lo_.size()) throw std::invalid_argument("InputDensity: dimension mismatch");
    switch (kind_) {
        case Kind::uniform_box: {
            for (std::size_t k = 0; k < x.size(); ++k)
                if (x[k] < lo_[k] || x[k] > hi_[k]) return 0.0;
            return 1.0 / volume_;
        }
        case Kind::transformed_normal: {
            if (x[0] <= -1.0 || x[0] >= 1.0) return 0.0;
            const double nu = alpha_to_normal(x[0]);
            const double v = nu / sigma_;
            const double base = std::exp(-0.5 * v * v) / (sigma_ * std::sqrt(2.0 * kPi));
            return base * alpha_to_normal_jacobian(x[0]);
        }
        case Kind::beta: {
            if (x[0] < -1.0 || x[0] > 1.0) return 0.0;
            const double t = 0.5 * (x[0] + 1.0);
            const double lg = std::lgamma(beta_r_ + beta_s_) - std::lgamma(beta_r_) -
                              std::lgamma(beta_s_);
            return 0.5 * std::exp(lg) * std::pow(t, beta_r_ - 1.0) *
                   std::pow(1.0 - t, beta_s_ - 1.0);
        }
    }
    return 0.0;
}

void InputDensity::sample(Rng& rng, std::span<double> out) const {
    if (out.size() != lo_.size()) throw std::invalid_argument("InputDensity: dimension mismatch");
    switch (kind_) {
        case Kind::uniform_box:
            for (std::size_t k = 0; k < out.size(); ++k) out[k] = rng.uniform(lo_[k], hi_[k]);
            return;
        case Kind::transformed_normal:
            // Clamp the ~2e-9 tail mass beyond the 6-sigma image into the box.
            out[0] = std::clamp(normal_to_alpha(sigma_ * rng.normal()), lo_[0], hi_[0]);
            return;
        case Kind::beta:
            out[0] = 2.0 * rng.beta(beta_r_, beta_s_) - 1.0;
            return;
    }
}

HistogramDensity histogram(std::span<const double> samples, int bins,
                           std::optional<std::pair<double, double>> range) {
    if (samples.empty()) throw std::invalid_argument("histogram: empty sample");
    if (bins < 1) throw std::invalid_argument("histogram: need at least one bin");

    double lo, hi;
    if (range) {
        lo = range->first;
        hi = range->second;
        if (!(lo < hi)) throw std::invalid_argument("histogram: bad range");
        for (double v : samples)
            if (v < lo || v > hi)
                throw std::invalid_argument("histogram: sample outside explicit range");
    } else {
        auto [mn, mx] = std::minmax_element(samples.begin(), samples.end());
        lo = *mn;
        hi = *mx;
        if (lo == hi) {  // all samples equal: center a unit-wide range
            lo -= 0.5;
            hi += 0.5;
        }
    }

    HistogramDensity d;
    const std::size_t nb = static_cast<std::size_t>(bins);
    d.edges.resize(nb + 1);
    const double width = (hi - lo) / bins;
    for (std::size_t i = 0; i <= nb; ++i) d.edges[i] = lo + static_cast<double>(i) * width;
    d.edges.back() = hi;

    std::vector<std::size_t> counts(nb, 0);
    for (double v : samples) {
        auto idx = static_cast<std::ptrdiff_t>((v - lo) / width);
        idx = std::clamp<std::ptrdiff_t>(idx, 0, static_cast<std::ptrdiff_t>(nb) - 1);
        ++counts[static_cast<std::size_t>(idx)];
    }
    d.heights.resize(nb);
    const double scale = 1.0 / (static_cast<double>(samples.size()) * width);
    for (std::size_t i = 0; i < nb; ++i) d.heights[i] = static_cast<double>(counts[i]) * scale;
    return d;
}

int optimal_bins(std::size_t m, double f_range, double l2_of_deriv) {
    if (m < 1 || !(f_range > 0.0) || !(l2_of_deriv > 0.0))
        throw std::invalid_argument("optimal_bins: inputs must be positive");
    const double kf = std::cbrt(l2_of_deriv * l2_of_deriv * f_range / 6.0);
    const long bins = std::lround(kf * std::cbrt(static_cast<double>(m)));
    return static_cast<int>(std::max(1L, bins));
}

KdeDensity::KdeDensity(std::vector<double> samples, double bandwidth)
    : samples_(std::move(samples)), h_(bandwidth) {
    if (samples_.empty()) throw std::invalid_argument("kde: empty sample");
    if (!(h_ > 0.0)) throw std::invalid_argument("kde: bandwidth must be > 0");
}

double KdeDensity::value(double y) const {
    double s = 0.0;
    for (double v : samples_) {
        const double t = (y - v) / h_;
        s += std::exp(-0.5 * t * t);
    }
    return s / (static_cast<double>(samples_.size()) * h_ * std::sqrt(2.0 * kPi));
}

const std::vector<double>& KdeDensity::breakpoints() {
    static const std::vector<double> empty;
    return empty;
}

KdeDensity kde(std::vector<double> samples, std::optional<double> bandwidth) {
    if (bandwidth) return KdeDensity(std::move(samples), *bandwidth);
    if (samples.size() < 2)
        throw std::invalid_argument("kde: automatic bandwidth needs at least 2 samples");

    const double m = static_cast<double>(samples.size());
    double mean = 0.0;
    for (double v : samples) mean += v;
    mean /= m;
    double ss = 0.0;
    for (double v : samples) ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / (m - 1.0));

    std::vector<double> sorted = samples;
    std::sort(sorted.begin(), sorted.end());
    auto quantile = [&](double q) {
        const double pos = q * (m - 1.0);
        const std::size_t i = static_cast<std::size_t>(pos);
        const double frac = pos - static_cast<double>(i);
        if (i + 1 >= sorted.size()) return sorted.back();
        return sorted[i] * (1.0 - frac) + sorted[i + 1] * frac;
    };
    const double iqr = quantile(0.75) - quantile(0.25);

    double spread = sd;
    if (iqr > 0.0) spread = std::min(sd, iqr / 1.34);
    const double h = 0.9 * spread * std::pow(m, -0.2);
    if (!(h > 0.0)) throw std::invalid_argument("kde: degenerate sample, bandwidth is 0");
    return KdeDensity(std::move(samples), h);
}

std::vector<double> pushforward_samples(const std::function<double(std::span<const double>)>& f,
                                        const InputDensity& input, std::size_t m,
                                        std::uint64_t seed) {
    std::vector<double> values(m);
    const std::size_t d = static_cast<std::size_t>(input.dim());
    std::vector<double> point(d);
    // Each chunk derives its substream from (seed, chunk index) so results do
    // not depend on how the loop is split across workers.
    const std::size_t chunks = (m + kChunk - 1) / kChunk;
    for (std::size_t c = 0; c < chunks; ++c) {
        Rng rng(mix_seed(seed, c));
        const std::size_t begin = c * kChunk;
        const std::size_t end = std::min(begin + kChunk, m);
        for (std::size_t i = begin; i < end; ++i) {
            input.sample(rng, point);
            values[i] = f(point);
        }
    }
    return values;
}

HistogramDensity pushforward_mc(const std::function<double(std::span<const double>)>& f,
                                const InputDensity& input, std::size_t m, int bins,
                                std::uint64_t seed) {
    if (bins < 1 || m < static_cast<std::size_t>(bins))
        throw std::invalid_argument("pushforward_mc: need m >= bins >= 1");
    const std::vector<double> values = pushforward_samples(f, input, m, seed);
    return histogram(values, bins);
}

namespace {

// Bisection root of g on [lo, hi]. Handles roots at the endpoints and targets
// just outside the value range (within the caller's tolerance) by returning
// the nearer endpoint.
double bisect(const std::function<double(double)>& g, double lo, double hi, double g_lo,
              double g_hi) {
    if (g_lo == 0.0) return lo;
    if (g_hi == 0.0) return hi;
    if ((g_lo < 0.0) == (g_hi < 0.0)) return std::abs(g_lo) < std::abs(g_hi) ? lo : hi;
    double a = lo, b = hi;
    bool neg_at_a = g_lo < 0.0;
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (a + b);
        if (mid <= a || mid >= b) break;
        const double gm = g(mid);
        if (gm == 0.0) return mid;
        if ((gm < 0.0) == neg_at_a)
            a = mid;
        else
            b = mid;
    }
    return 0.5 * (a + b);
}

struct MonotonePiece {
    double lo, hi;    // alpha interval
    double f_lo, f_hi;
};

std::vector<MonotonePiece> monotone_pieces(const std::function<double(double)>& f,
                                           const std::function<double(double)>& fp, double a,
                                           double b) {
    constexpr int kProbes = 10000;
    const double h = (b - a) / kProbes;
    std::vector<double> bounds{a};
    double prev = fp(a);
    double x_prev = a;
    for (int i = 1; i <= kProbes; ++i) {
        const double x = (i == kProbes) ? b : a + i * h;
        const double cur = fp(x);
        if (cur != 0.0 && prev != 0.0 && (prev < 0.0) != (cur < 0.0)) {
            // refine the extremum to ~1e-12
            double lo = x_prev, hi = x, glo = prev;
            for (int it = 0; it < 100 && hi - lo > 1e-12 * (b - a); ++it) {
                const double mid = 0.5 * (lo + hi);
                const double gm = fp(mid);
                if ((glo < 0.0) == (gm < 0.0)) {
                    lo = mid;
                    glo = gm;
                } else {
                    hi = mid;
                }
            }
            bounds.push_back(0.5 * (lo + hi));
        }
        if (cur != 0.0) {
            prev = cur;
            x_prev = x;
        }
    }
    bounds.push_back(b);
    std::sort(bounds.begin(), bounds.end());

    std::vector<MonotonePiece> pieces;
    for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
        if (!(bounds[i] < bounds[i + 1])) continue;
        pieces.push_back({bounds[i], bounds[i + 1], f(bounds[i]), f(bounds[i + 1])});
    }
    return pieces;
}

}  // namespace

GridDensity exact_pdf_1d(const std::function<double(double)>& f,
                         const std::function<double(double)>& fprime, const InputDensity& c,
                         std::vector<double> ys) {
    if (c.dim() != 1) throw std::invalid_argument("exact_pdf_1d: input density must be 1-D");
    if (ys.size() < 2) throw std::invalid_argument("exact_pdf_1d: need a y grid");
    const double a = c.support_lo(0), b = c.support_hi(0);
    const auto pieces = monotone_pieces(f, fprime, a, b);

    double scale = 1.0;
    for (const auto& p : pieces) scale = std::max({scale, std::abs(p.f_lo), std::abs(p.f_hi)});
    const double range_tol = 1e-11 * scale;
    const double dedupe_tol = 1e-11 * (b - a);

    GridDensity out;
    out.pdf.assign(ys.size(), 0.0);
    std::vector<double> roots;
    for (std::size_t iy = 0; iy < ys.size(); ++iy) {
        const double y = ys[iy];
        roots.clear();
        for (const auto& p : pieces) {
            const double flo = std::min(p.f_lo, p.f_hi);
            const double fhi = std::max(p.f_lo, p.f_hi);
            if (y < flo - range_tol || y > fhi + range_tol) continue;
            const double r = bisect([&](double x) { return f(x) - y; }, p.lo, p.hi, p.f_lo - y,
                                    p.f_hi - y);
            bool dup = false;
            for (double q : roots)
                if (std::abs(q - r) <= dedupe_tol) dup = true;
            if (!dup) roots.push_back(r);
        }
        double v = 0.0;
        bool sing = false;
        for (double r : roots) {
            const double d = std::abs(fprime(r));
            if (d < 1e-12) {
                sing = true;
                break;
            }
            v += c.density1(r) / d;
        }
        if (sing) {
            out.pdf[iy] = std::numeric_limits<double>::infinity();
            out.singular.push_back(iy);
        } else {
            out.pdf[iy] = v;
        }
    }
    out.ys = std::move(ys);
    return out;
}

GridDensity exact_pdf_1d_mod(const std::function<double(double)>& f,
                             const std::function<double(double)>& fprime, const InputDensity& c,
                             double period, std::vector<double> ys) {
    if (!(period > 0.0)) throw std::invalid_argument("exact_pdf_1d_mod: period must be > 0");
    const double a = c.support_lo(0), b = c.support_hi(0);
    const auto pieces = monotone_pieces(f, fprime, a, b);
    double fmin = pieces.front().f_lo, fmax = pieces.front().f_lo;
    for (const auto& p : pieces) {
        fmin = std::min({fmin, p.f_lo, p.f_hi});
        fmax = std::max({fmax, p.f_lo, p.f_hi});
    }
    const auto klo = static_cast<long>(std::floor(fmin / period)) - 1;
    const auto khi = static_cast<long>(std::ceil(fmax / period)) + 1;

    GridDensity out;
    out.pdf.assign(ys.size(), 0.0);
    std::vector<double> shifted(ys.size());
    for (long k = klo; k <= khi; ++k) {
        for (std::size_t i = 0; i < ys.size(); ++i)
            shifted[i] = ys[i] + static_cast<double>(k) * period;
        if (shifted.back() < fmin || shifted.front() > fmax) continue;
        GridDensity part = exact_pdf_1d(f, fprime, c, shifted);
        for (std::size_t i = 0; i < ys.size(); ++i) out.pdf[i] += part.pdf[i];
        for (std::size_t idx : part.singular) out.singular.push_back(idx);
    }
    out.ys = std::move(ys);
    return out;
}

}  // namespace pfwd
