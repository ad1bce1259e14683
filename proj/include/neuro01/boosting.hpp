#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "neuro01/exploit_explore.hpp"
#include "neuro01/network.hpp"
#include "neuro01/partition.hpp"

namespace neuro01 {

/// Everything needed to train one boosted model.
struct TrainConfig {
    std::vector<std::size_t> widths{4, 4, 1};
    std::size_t w0 = 2;
    std::size_t K = 10;
    std::size_t M = 10;
    double gamma = 0.5;
    double stochastic_ratio = 1.0;
    double stabilizer = 0.0;
    std::uint64_t seed = 0;

    Architecture architecture(std::size_t input_dim) const { return {input_dim, widths, w0}; }
    StepConfig step() const { return {K, stochastic_ratio, stabilizer}; }
    /// Throws InvalidConfig on any out-of-domain field.
    void validate() const;
};

struct BoostStage {
    IndicatorNetwork network;
    /// Fit on the full training set against this stage's residual targets.
    CellMeans cell_means;

    bool operator==(const BoostStage&) const = default;
};

struct TrainingMeta {
    std::size_t n = 0;
    std::size_t p = 0;
    std::uint64_t seed = 0;
    std::size_t rounds = 0;
    std::string fingerprint;

    bool operator==(const TrainingMeta&) const = default;
};

/// Prediction gamma * sum_s F_s(g_s, x) over M stages.
struct BoostedModel {
    std::vector<BoostStage> stages;
    double gamma = 1.0;
    TrainingMeta meta;

    std::size_t M() const { return stages.size(); }
    const Architecture& architecture() const { return stages.front().network.architecture(); }

    /// Throws InvalidInput/InvalidConfig on any broken invariant.
    void validate(double norm_tolerance = 1e-9) const;

    bool operator==(const BoostedModel&) const = default;
};

double predict_boosted(const BoostedModel& model, std::span<const double> x);
std::vector<double> predict_boosted(const BoostedModel& model, const Matrix& X);

/// m_s on the rows of X: m_0 = y, m_s = m_{s-1} - gamma * F_s. Throws
/// InvalidInput when s > M.
std::vector<double> compute_residuals(const BoostedModel& model, const Matrix& X, std::span<const double> y,
                                      std::size_t s);

/// M zero-initialized stages. Each stage labels every row 0, so its cell
/// means are the means of its residual targets.
BoostedModel init_boosted_model(const Matrix& X, std::span<const double> y, const TrainConfig& cfg);

struct RoundReport {
    /// 1-based index of the round just completed in this call.
    std::size_t round = 0;
    /// Sum of squared final residuals m_M over the training rows.
    double training_sse = 0.0;
    RoundStats stats;
};

using RoundObserver = std::function<void(const RoundReport&)>;

/// Round-robin training: each round updates stages 1..M in order, each for
/// one exploit-explore round against the residuals of the stages before it,
/// then refits its cell means on the full data. Starts from `warm` when given
/// (it must match M, gamma and architecture), otherwise from zero stages.
BoostedModel train_round_robin(const Matrix& X, std::span<const double> y, const TrainConfig& cfg,
                               std::size_t rounds, const BoostedModel* warm, RandomStream& rng,
                               const RoundObserver& observer = {});

/// Same, with the stream seeded from cfg.seed.
BoostedModel train_round_robin(const Matrix& X, std::span<const double> y, const TrainConfig& cfg,
                               std::size_t rounds, const BoostedModel* warm = nullptr,
                               const RoundObserver& observer = {});

} // namespace neuro01
