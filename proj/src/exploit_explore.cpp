#include "neuro01/exploit_explore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "neuro01/errors.hpp"
#include "neuro01/partition.hpp"

namespace neuro01 {

void StepConfig::validate() const {
    if (K < 1) throw InvalidConfig("K must be at least 1");
    if (!(stochastic_ratio >= 0.8 && stochastic_ratio <= 1.0)) {
        throw InvalidConfig("stochastic_ratio must lie in [0.8, 1]");
    }
    if (!(stabilizer >= 0.0) || !std::isfinite(stabilizer)) throw InvalidConfig("stabilizer must be non-negative");
}

Neuron sample_candidate(std::size_t layer, std::size_t fan_in, std::size_t w0, const Matrix& X,
                        std::span<const std::size_t> anchor_rows, RandomStream& rng) {
    SparseWeight w = sample_sparse_unit_weight(fan_in, w0, rng);
    Neuron n;
    n.support = std::move(w.support);
    n.weights = std::move(w.weights);
    if (layer == 0) {
        if (anchor_rows.empty()) throw InvalidInput("sample_candidates: layer 0 requires anchor rows");
        auto row = X.row(anchor_rows[rng.index(anchor_rows.size())]);
        n.bias = sparse_dot(n, [&](std::uint32_t j) { return row[j]; });
    } else {
        // Only the coordinates of e on the support enter u . e.
        std::vector<double> e(fan_in, 0.0);
        for (auto j : n.support) e[j] = rng.coin() ? 1.0 : 0.0;
        n.bias = sparse_dot(n, [&](std::uint32_t j) { return e[j]; });
    }
    return n;
}

std::vector<Neuron> sample_candidates(std::size_t layer, std::size_t fan_in, std::size_t w0, std::size_t K,
                                      const Matrix* anchors, RandomStream& rng) {
    std::vector<std::size_t> rows;
    static const Matrix kEmpty;
    if (layer == 0) {
        if (anchors == nullptr || anchors->empty()) {
            throw InvalidInput("sample_candidates: layer 0 requires a nonempty anchor matrix");
        }
        if (anchors->cols() != fan_in) throw InvalidInput("sample_candidates: anchor width does not match fan-in");
        rows.resize(anchors->rows());
        std::iota(rows.begin(), rows.end(), std::size_t{0});
    }
    std::vector<Neuron> out;
    out.reserve(K);
    for (std::size_t k = 0; k < K; ++k) {
        out.push_back(sample_candidate(layer, fan_in, w0, anchors ? *anchors : kEmpty, rows, rng));
    }
    return out;
}

std::vector<std::size_t> draw_subsample(std::size_t n, double ratio, RandomStream& rng) {
    std::size_t m = static_cast<std::size_t>(std::llround(ratio * static_cast<double>(n)));
    m = std::clamp<std::size_t>(m, 1, n);
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    if (m == n) return idx;
    for (std::size_t i = 0; i < m; ++i) {
        std::size_t j = i + rng.index(n - i);
        std::swap(idx[i], idx[j]);
    }
    idx.resize(m);
    std::sort(idx.begin(), idx.end());
    return idx;
}

SwapEvaluator::SwapEvaluator(const IndicatorNetwork& net, const Matrix& X, std::span<const std::size_t> rows)
    : net_(net), X_(X), rows_(rows), base_(net.forward_batch_layers(X, rows)), active_(net.active_mask()),
      scratch_(base_) {
    view_.resize(base_.size());
    for (std::size_t l = 0; l < base_.size(); ++l) {
        view_[l].resize(base_[l].size());
    }
}

const BitColumn& SwapEvaluator::labels_with(LayerPos pos, const Neuron& candidate) {
    const std::size_t L = base_.size();
    for (std::size_t l = 0; l < L; ++l) {
        for (std::size_t h = 0; h < base_[l].size(); ++h) view_[l][h] = &base_[l][h];
    }

    if (pos.layer == 0) {
        evaluate_neuron_column(candidate, X_, rows_, scratch_[0][pos.index]);
    } else {
        std::vector<BitColumn> const& below = base_[pos.layer - 1];
        evaluate_neuron_column(candidate, below, scratch_[pos.layer][pos.index]);
    }
    view_[pos.layer][pos.index] = &scratch_[pos.layer][pos.index];

    std::vector<std::size_t> dirty{pos.index};
    std::vector<BitColumn> below_cols;
    for (std::size_t l = pos.layer + 1; l < L && !dirty.empty(); ++l) {
        std::vector<std::size_t> next;
        for (std::size_t h = 0; h < base_[l].size(); ++h) {
            if (!active_[l][h]) continue;
            const Neuron& n = net_.neuron({l, h});
            bool touched = false;
            for (auto j : n.support) {
                if (std::find(dirty.begin(), dirty.end(), j) != dirty.end()) {
                    touched = true;
                    break;
                }
            }
            if (!touched) continue;
            BitColumn& out = scratch_[l][h];
            const std::size_t rows = rows_.size();
            out.resize(rows);
            const auto& below = view_[l - 1];
            for (std::size_t r = 0; r < rows; ++r) {
                double z = sparse_dot(n, [&](std::uint32_t j) { return (*below[j])[r]; });
                out[r] = z > n.bias ? 1 : 0;
            }
            view_[l][h] = &out;
            next.push_back(h);
        }
        dirty = std::move(next);
    }
    return *view_[L - 1][0];
}

NeuronUpdate update_neuron(IndicatorNetwork& net, LayerPos pos, std::span<const double> targets, const Matrix& X,
                           const StepConfig& cfg, RandomStream& rng) {
    if (targets.size() != X.rows()) throw InvalidInput("update_neuron: targets length does not match row count");
    if (!net.active_mask()[pos.layer][pos.index]) {
        throw ContractViolation("update_neuron: neuron is idle; use update_neuron_idle");
    }
    const auto rows = draw_subsample(X.rows(), cfg.stochastic_ratio, rng);
    std::vector<double> sub_targets(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) sub_targets[r] = targets[rows[r]];

    const std::size_t fan_in = net.architecture().fan_in(pos.layer);
    std::vector<Neuron> candidates;
    candidates.reserve(cfg.K);
    for (std::size_t k = 0; k < cfg.K; ++k) {
        candidates.push_back(sample_candidate(pos.layer, fan_in, net.architecture().w0, X, rows, rng));
    }

    SwapEvaluator eval(net, X, rows);

    double var = 0.0;
    if (cfg.stabilizer > 0.0) {
        const double mean =
            std::accumulate(sub_targets.begin(), sub_targets.end(), 0.0) / static_cast<double>(sub_targets.size());
        for (double t : sub_targets) var += (t - mean) * (t - mean);
        var /= static_cast<double>(sub_targets.size());
    }

    // Score form: SSE = sum(t^2) - score, so the stabilizer discount on the
    // incumbent's SSE is a bonus on its score.
    NeuronUpdate result;
    result.incumbent = cfg.K;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k <= cfg.K; ++k) {
        double score;
        if (k < cfg.K) {
            score = cell_totals(eval.labels_with(pos, candidates[k]), sub_targets).score();
        } else {
            score = cell_totals(eval.base_output(), sub_targets).score() + cfg.stabilizer * var;
        }
        if (score >= best) {
            best = score;
            result.chosen = k;
        }
    }
    if (result.replaced()) net.set_neuron(pos, std::move(candidates[result.chosen]));
    return result;
}

bool update_neuron_idle(IndicatorNetwork& net, LayerPos pos, const Matrix& X, const StepConfig& cfg,
                        RandomStream& rng) {
    if (net.active_mask()[pos.layer][pos.index]) {
        throw ContractViolation("update_neuron_idle: neuron is active; use update_neuron");
    }
    // Uniform choice over K candidates and the incumbent; only the chosen
    // candidate needs to be materialized.
    const std::size_t slot = rng.index(cfg.K + 1);
    if (slot == cfg.K) return false;
    std::vector<std::size_t> rows;
    if (pos.layer == 0) {
        rows.resize(X.rows());
        std::iota(rows.begin(), rows.end(), std::size_t{0});
    }
    net.set_neuron(pos,
                   sample_candidate(pos.layer, net.architecture().fan_in(pos.layer), net.architecture().w0, X, rows, rng));
    return true;
}

RoundStats update_round(IndicatorNetwork& net, std::span<const double> targets, const Matrix& X,
                        const StepConfig& cfg, RandomStream& rng) {
    if (targets.size() != X.rows()) throw InvalidInput("update_round: targets length does not match row count");
    if (X.cols() != net.architecture().input_dim) throw InvalidInput("update_round: feature count mismatch");
    cfg.validate();
    RoundStats stats;
    const std::size_t L = net.architecture().depth();
    for (std::size_t l = L; l-- > 0;) {
        for (std::size_t h = 0; h < net.architecture().width(l); ++h) {
            const LayerPos pos{l, h};
            ++stats.visits;
            if (net.active_mask()[l][h]) {
                ++stats.exploit_visits;
                if (update_neuron(net, pos, targets, X, cfg, rng).replaced()) ++stats.replacements;
            } else if (update_neuron_idle(net, pos, X, cfg, rng)) {
                ++stats.replacements;
            }
        }
    }
    return stats;
}

} // namespace neuro01
