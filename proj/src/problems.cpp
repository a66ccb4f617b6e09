#include "pfwd/problems.hpp"

#include <cmath>
#include <stdexcept>

namespace pfwd {

namespace {

double floor_mod(double v, double period) {
    return v - period * std::floor(v / period);
}

double sech2(double u) {
    const double c = std::cosh(u);
    return 1.0 / (c * c);
}

}  // namespace

double Problem::qoi(std::span<const double> x) const {
    const double v = qoi_smooth(x);
    return post_mod > 0.0 ? floor_mod(v, post_mod) : v;
}

Problem tanh1d() {
    Problem p;
    p.name = "tanh1d";
    p.dim = 1;
    p.input = InputDensity::uniform_box({-1.0}, {1.0});
    p.qoi_smooth = [](std::span<const double> x) { return std::tanh(9.0 * x[0]) + 0.5 * x[0]; };
    p.gradient = [](std::span<const double> x) {
        return std::vector<double>{9.0 * sech2(9.0 * x[0]) + 0.5};
    };
    p.reference = Problem::Reference::exact_1d;
    return p;
}

Problem tanh1d_mod() {
    Problem p = tanh1d();
    p.name = "tanh1d_mod";
    p.post_mod = 0.7;
    p.reference = Problem::Reference::mc_oracle;
    return p;
}

Problem tanh2d() {
    Problem p;
    p.name = "tanh2d";
    p.dim = 2;
    p.input = InputDensity::uniform_box({-1.0, -1.0}, {1.0, 1.0});
    p.qoi_smooth = [](std::span<const double> x) {
        return std::tanh(6.0 * x[0] * x[1] + 0.5 * x[0]) + (x[0] + x[1]) / 3.0;
    };
    p.gradient = [](std::span<const double> x) {
        const double s = sech2(6.0 * x[0] * x[1] + 0.5 * x[0]);
        return std::vector<double>{(6.0 * x[1] + 0.5) * s + 1.0 / 3.0,
                                   6.0 * x[0] * s + 1.0 / 3.0};
    };
    p.reference = Problem::Reference::mc_oracle;
    return p;
}

Problem tanh3d() {
    Problem p;
    p.name = "tanh3d";
    p.dim = 3;
    p.input = InputDensity::uniform_box({-1.0, -1.0, -1.0}, {1.0, 1.0, 1.0});
    p.qoi_smooth = [](std::span<const double> x) {
        return std::tanh(8.0 * x[0] + 5.0 * x[1] + 10.0 * x[2]) + (x[0] + x[1] + x[2]) / 3.0;
    };
    p.gradient = [](std::span<const double> x) {
        const double s = sech2(8.0 * x[0] + 5.0 * x[1] + 10.0 * x[2]);
        return std::vector<double>{8.0 * s + 1.0 / 3.0, 5.0 * s + 1.0 / 3.0, 10.0 * s + 1.0 / 3.0};
    };
    p.reference = Problem::Reference::mc_oracle;
    return p;
}

Problem burgers_shock(double sigma) {
    if (!(sigma > 0.0)) throw std::invalid_argument("burgers_shock: sigma must be > 0");
    Problem p;
    p.name = "burgers";
    p.dim = 1;
    // The random input is alpha, the image of nu ~ N(0, sigma) under the
    // bounded transform; |alpha| < 1 always, so arccos is well defined.
    p.input = InputDensity::transformed_normal(sigma);
    p.qoi_smooth = [](std::span<const double> x) { return std::acos(-x[0]); };
    p.gradient = [](std::span<const double> x) {
        return std::vector<double>{1.0 / std::sqrt(1.0 - x[0] * x[0])};
    };
    p.reference = Problem::Reference::exact_1d;
    return p;
}

Problem burgers_shock_beta() {
    Problem p;
    p.name = "burgers_beta";
    p.dim = 1;
    p.input = InputDensity::beta(2.0, 2.0);
    p.qoi_smooth = [](std::span<const double> x) { return std::acos(-x[0]); };
    p.gradient = [](std::span<const double> x) {
        return std::vector<double>{1.0 / std::sqrt(1.0 - x[0] * x[0])};
    };
    p.reference = Problem::Reference::exact_1d;
    return p;
}

std::vector<std::string> problem_names() {
    return {"tanh1d", "tanh1d_mod", "tanh2d", "tanh3d", "burgers", "burgers_beta"};
}

Problem make_problem(const std::string& name, double burgers_sigma) {
    if (name == "tanh1d") return tanh1d();
    if (name == "tanh1d_mod") return tanh1d_mod();
    if (name == "tanh2d") return tanh2d();
    if (name == "tanh3d") return tanh3d();
    if (name == "burgers") return burgers_shock(burgers_sigma);
    if (name == "burgers_beta") return burgers_shock_beta();
    throw config_error("unknown problem: " + name);
}

Lemma3Pair lemma3_pair(double delta) {
    if (!(delta > 0.0) || !(delta < 1.0))
        throw std::invalid_argument("lemma3_pair: need 0 < delta < 1");
    Lemma3Pair pair;
    pair.f = [](double a) { return a; };
    pair.f_prime = [](double) { return 1.0; };
    pair.g = [delta](double a) { return a + delta * std::sin(a / (2.0 * delta)); };
    pair.g_prime = [delta](double a) { return 1.0 + 0.5 * std::cos(a / (2.0 * delta)); };
    return pair;
}

}  // namespace pfwd
