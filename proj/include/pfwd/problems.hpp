#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "pfwd/density.hpp"

namespace pfwd {

/// Built-in test problem: a scalar quantity of interest with closed-form
/// gradient, an input density, and a reference-PDF recipe. When post_mod > 0
/// the observable is qoi mod post_mod while surrogates are built on the
/// smooth map.
struct Problem {
    enum class Reference { exact_1d, mc_oracle };

    std::string name;
    int dim = 1;
    InputDensity input = InputDensity::uniform_box({-1.0}, {1.0});

    std::function<double(std::span<const double>)> qoi_smooth;
    std::function<std::vector<double>(std::span<const double>)> gradient;
    double post_mod = 0.0;

    Reference reference = Reference::exact_1d;
    std::uint64_t oracle_seed = 20240901;
    std::size_t oracle_samples = 10'000'000;
    int oracle_bins = 400;

    /// The observable (post-mapped when post_mod > 0).
    double qoi(std::span<const double> x) const;
    double qoi1(double x) const { return qoi(std::span<const double>(&x, 1)); }
    double qoi_smooth1(double x) const { return qoi_smooth(std::span<const double>(&x, 1)); }
    double deriv_smooth1(double x) const {
        return gradient(std::span<const double>(&x, 1))[0];
    }
};

Problem tanh1d();
Problem tanh1d_mod();
Problem tanh2d();
Problem tanh3d();
/// Shock-location problem. The quantity of interest is arccos(-alpha) with
/// alpha the image of nu ~ N(0, sigma) under the bounded transform; the
/// surrogate axis is alpha (uniform grid over the image of [-6, 6] sigma).
Problem burgers_shock(double sigma);
/// Beta(2, 2)-input smoke-test variant of the shock problem.
Problem burgers_shock_beta();

/// Registry used by the CLI and study configs.
std::vector<std::string> problem_names();
Problem make_problem(const std::string& name, double burgers_sigma = 0.6);

struct Lemma3Pair {
    std::function<double(double)> f, f_prime;
    std::function<double(double)> g, g_prime;
    InputDensity input = InputDensity::uniform_box({0.0}, {1.0});
};
/// f(a) = a and g(a) = a + delta sin(a / (2 delta)) on [0, 1], uniform input.
Lemma3Pair lemma3_pair(double delta);

}  // namespace pfwd
