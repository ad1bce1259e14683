#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "neuro01/matrix.hpp"
#include "neuro01/network.hpp"
#include "neuro01/random.hpp"

namespace neuro01 {

/// Per-visit optimizer settings.
struct StepConfig {
    /// Candidates sampled per neuron visit.
    std::size_t K = 10;
    /// Fraction of rows drawn without replacement for each exploit visit.
    double stochastic_ratio = 1.0;
    /// Incumbent SSE discount, in units of the subsample target variance.
    double stabilizer = 0.0;

    void validate() const;
};

/// Samples K candidate neurons for a layer. Layer 0 biases are anchored at a
/// uniformly chosen row of `anchors` (b = u . X_i); higher layers use
/// b = u . e for a uniform binary vector e. Throws InvalidInput when layer 0
/// is requested without anchors.
std::vector<Neuron> sample_candidates(std::size_t layer, std::size_t fan_in, std::size_t w0, std::size_t K,
                                      const Matrix* anchors, RandomStream& rng);

/// Single candidate with layer-0 anchors restricted to `anchor_rows` of X.
Neuron sample_candidate(std::size_t layer, std::size_t fan_in, std::size_t w0, const Matrix& X,
                        std::span<const std::size_t> anchor_rows, RandomStream& rng);

struct NeuronUpdate {
    /// Winning slot in 0..K; K is the incumbent.
    std::size_t chosen = 0;
    bool replaced() const { return chosen != incumbent; }
    std::size_t incumbent = 0;
};

/// Exploit visit of an active neuron: K fresh candidates plus the incumbent
/// are scored on a fresh subsample; the best (highest slot on ties) is
/// installed. Throws ContractViolation if `pos` is idle.
NeuronUpdate update_neuron(IndicatorNetwork& net, LayerPos pos, std::span<const double> targets, const Matrix& X,
                           const StepConfig& cfg, RandomStream& rng);

/// Explore visit of an idle neuron: the result is uniform over the K
/// candidates and the incumbent. Returns true if the neuron changed slot.
/// Throws ContractViolation if `pos` is active.
bool update_neuron_idle(IndicatorNetwork& net, LayerPos pos, const Matrix& X, const StepConfig& cfg,
                        RandomStream& rng);

struct RoundStats {
    std::size_t visits = 0;
    std::size_t exploit_visits = 0;
    std::size_t replacements = 0;
};

/// Visits layers from the output down to layer 0, neurons in index order,
/// recomputing the active set before every visit.
RoundStats update_round(IndicatorNetwork& net, std::span<const double> targets, const Matrix& X,
                        const StepConfig& cfg, RandomStream& rng);

/// Draws round(ratio * n) distinct rows (sorted). Returns all rows when the
/// ratio rounds to n.
std::vector<std::size_t> draw_subsample(std::size_t n, double ratio, RandomStream& rng);

/// Output labels of `net` with the neuron at `pos` replaced by `candidate`,
/// recomputing only the active neurons downstream of `pos`. `base` holds the
/// layer columns of the unmodified network over `rows`.
class SwapEvaluator {
public:
    SwapEvaluator(const IndicatorNetwork& net, const Matrix& X, std::span<const std::size_t> rows);

    const BitColumn& base_output() const { return base_.back().front(); }
    const LayerColumns& base_columns() const { return base_; }

    const BitColumn& labels_with(LayerPos pos, const Neuron& candidate);

private:
    const IndicatorNetwork& net_;
    const Matrix& X_;
    std::span<const std::size_t> rows_;
    LayerColumns base_;
    std::vector<std::vector<bool>> active_;
    LayerColumns scratch_;
    std::vector<std::vector<const BitColumn*>> view_;
};

} // namespace neuro01
