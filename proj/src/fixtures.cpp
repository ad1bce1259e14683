#include "neuro01/fixtures.hpp"

namespace neuro01 {
namespace {

Neuron make(std::vector<std::uint32_t> support, std::vector<double> weights, double bias) {
    return Neuron{std::move(support), std::move(weights), bias};
}

} // namespace

IndicatorNetwork diamond_network() {
    IndicatorNetwork net(Architecture{3, {8, 4, 1}, 2});
    const double tol = kDiamondNormTolerance;
    net.set_neuron({0, 0}, make({0, 1}, {0.748, 0.664}, 0.5), tol);
    net.set_neuron({0, 1}, make({0, 1}, {0.748, -0.664}, -0.3), tol);
    net.set_neuron({0, 2}, make({0, 1}, {0.748, -0.664}, 0.3), tol);
    net.set_neuron({0, 3}, make({0, 1}, {0.748, 0.664}, 0.8), tol);
    net.set_neuron({1, 0}, make({0, 1}, {0.083, 0.997}, 1.08), tol);
    net.set_neuron({1, 1}, make({2, 3}, {0.973, 0.229}, 1.202), tol);
    net.set_neuron({2, 0}, make({0, 1}, {0.707, 0.707}, 1.414), tol);
    return net;
}

ModelFile diamond_model() {
    ModelFile f;
    f.norm_tolerance = kDiamondNormTolerance;
    f.feature_names = {"x1", "x2", "x3"};
    f.base.gamma = 1.0;
    f.base.meta = {2, 3, 0, 0, "diamond-fixture"};
    f.base.stages.push_back(BoostStage{diamond_network(), CellMeans{0.0, 1.0, 1, 1, 0.5}});
    return f;
}

Matrix diamond_grid() {
    Matrix g(101 * 101, 3);
    for (std::size_t i = 0; i <= 100; ++i) {
        for (std::size_t j = 0; j <= 100; ++j) {
            const std::size_t r = 101 * i + j;
            g(r, 0) = static_cast<double>(i) / 100.0;
            g(r, 1) = static_cast<double>(j) / 100.0;
            g(r, 2) = 0.5;
        }
    }
    return g;
}

SmallProblem convergence_problem() {
    SmallProblem p;
    p.X = Matrix(10, 2,
                 {0.093, 0.98, 0.298, 0.573, 0.638, 0.256, 0.274, 0.882, 0.239, 0.39,
                  0.388, 0.519, 0.484, 0.715, 0.274, 0.5,   0.491, 0.916, 0.558, 0.26});
    p.y = {-0.189, -0.784, -1.586, 1.243, -0.19, -1.194, -0.109, 0.754, -1.022, 0.683};
    return p;
}

} // namespace neuro01
