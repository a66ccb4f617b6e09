#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "pfwd/density.hpp"
#include "pfwd/metrics.hpp"
#include "pfwd/problems.hpp"

namespace pfwd {

enum class Method { spline, gpc, kde, mc };

Method method_from_string(const std::string& s);
std::string to_string(Method m);

/// One convergence study: problem x method x N-sweep. For d >= 2 problems the
/// N values are total sample budgets; the per-axis grid size is the rounded
/// d-th root and the actual n^d is reported.
struct StudyConfig {
    std::string problem;
    Method method = Method::spline;
    std::vector<std::size_t> ns;
    std::size_t m = 2'000'000;  ///< pushforward sample count
    int bins = 0;               ///< histogram bins; 0 = auto (optimal_bins)
    std::vector<std::string> metrics = {"l1"};
    std::uint64_t seed = 0;
    std::string out;

    double burgers_sigma = 0.6;
    std::string cache_dir = "oracle_cache";
    // 0 = use the problem's defaults.
    std::size_t oracle_m = 0;
    int oracle_bins = 0;
    std::uint64_t oracle_seed = 0;

    void validate() const;  ///< throws config_error; runs before any computation
};

/// Parse a JSON config document; unknown keys are rejected.
StudyConfig parse_config_json(const std::string& text);
StudyConfig load_config(const std::string& path);

struct ReportRow {
    std::size_t n = 0;
    std::string metric;
    double value = 0.0;
};

struct ConvergenceReport {
    std::vector<ReportRow> rows;                 ///< sorted by (N, metric)
    std::map<std::string, PowerLawFit> fits;     ///< per error metric, >= 3 points
};

ConvergenceReport run_study(const StudyConfig& cfg);

/// CSV with header "N,metric,value", 17 significant digits, fits emitted as
/// N = 0 rows named fit.<metric>.{amplitude,exponent,r2}.
void emit_csv(const ConvergenceReport& report, const std::string& path);
ConvergenceReport parse_csv(const std::string& path);

using ReferenceDensity = std::variant<GridDensity, HistogramDensity>;

/// The problem's reference PDF: the exact 1-D pushforward where available,
/// otherwise a cached brute-force Monte-Carlo histogram.
ReferenceDensity reference_density(const Problem& prob, const std::string& cache_dir,
                                   std::size_t oracle_m = 0, int oracle_bins = 0,
                                   std::uint64_t oracle_seed = 0);

/// Builds (or loads) the Monte-Carlo oracle for a problem and returns the
/// cache file path.
std::string build_oracle(const Problem& prob, const std::string& cache_dir, std::size_t m_ref,
                         int l_ref, std::uint64_t seed);

}  // namespace pfwd
