#pragma once

#include "neuro01/matrix.hpp"
#include "neuro01/model_io.hpp"
#include "neuro01/network.hpp"

namespace neuro01 {

/// The three-input diamond example network (widths 8, 4, 1; w0 = 2) with the
/// printed weights and biases. Unlisted idle neurons are zero-initialized.
/// Printed weights are only unit length to about 1e-3.
IndicatorNetwork diamond_network();
inline constexpr double kDiamondNormTolerance = 1e-3;

/// Single-stage model wrapping diamond_network(): gamma 1, cell means 0 and 1,
/// so predictions equal the network's output bit.
ModelFile diamond_model();

/// 101 x 101 grid over [0,1]^2 with x3 = 0.5; row index = 101 * i + j for
/// x1 = i / 100, x2 = j / 100.
Matrix diamond_grid();

/// Ten frozen points in [0,1]^2 with frozen targets for convergence checks.
struct SmallProblem {
    Matrix X;
    std::vector<double> y;
};
SmallProblem convergence_problem();

} // namespace neuro01
