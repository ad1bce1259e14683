#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "neuro01/bagging.hpp"
#include "neuro01/boosting.hpp"
#include "neuro01/dataset.hpp"

namespace neuro01 {

/// Width profiles A..F of the tuning space.
const std::vector<std::size_t>& architecture_widths(char id);
inline constexpr char kArchitectureIds[] = {'A', 'B', 'C', 'D', 'E', 'F'};
inline constexpr double kStabilizerChoices[] = {0.5, 0.1, 0.01, 0.0};

/// One point of the tuning space.
struct HyperConfig {
    std::size_t M = 10;
    double gamma = 0.5;
    double stochastic_ratio = 1.0;
    char architecture_id = 'D';
    double stabilizer = 0.0;
    std::size_t K = 10;
    std::size_t w0 = 2;

    /// Throws InvalidConfig unless every field lies in its tuning domain.
    void validate() const;
    TrainConfig train_config(std::uint64_t seed) const;
    bool operator==(const HyperConfig&) const = default;
};

HyperConfig sample_hyperconfig(RandomStream& rng);

/// Round and bag counts for validation and final training.
struct TuningSchedule {
    std::size_t validation_rounds = 20;
    std::size_t validation_bags = 10;
    std::size_t validation_fine_tune = 1;
    std::size_t final_rounds = 120;
    std::size_t final_bags = 20;
    std::size_t final_fine_tune = 10;
    double train_fraction = 0.8;
    /// Draw a fresh train/validation split for every trial instead of one
    /// split shared by all trials.
    bool resplit_per_trial = false;
    std::size_t threads = 1;
};

/// Validation R^2 of a bagged model trained on `train`; std::nullopt when the
/// validation targets are constant (the score is undefined).
std::optional<double> evaluate_config(const HyperConfig& cfg, const Dataset& train, const Dataset& val,
                                      const TuningSchedule& schedule, const RandomStream& rng);

struct TrialRecord {
    std::size_t trial = 0;
    HyperConfig config;
    std::optional<double> val_r2;
    double seconds = 0.0;
};

/// `trial,M,gamma,stochastic_ratio,architecture,stabilizer,val_r2,seconds`
std::string trials_log_header();
std::string format_trial(const TrialRecord& rec);

struct TuneResult {
    std::vector<TrialRecord> trials;
    std::size_t best_trial = 0;
    HyperConfig best;
    /// Boosted model retrained on the full data, before bagging.
    BoostedModel base;
    BaggedModel bagged;
};

/// Random search over R configurations followed by a full-data retrain and
/// bagging. Throws InvalidInput for fewer than 5 rows or R == 0.
TuneResult tune_and_train(const Dataset& data, std::size_t R, const TuningSchedule& schedule,
                          const RandomStream& rng,
                          const std::function<void(const TrialRecord&)>& on_trial = {});

/// Final stage of tune_and_train for a fixed configuration.
void train_final(const Dataset& data, const HyperConfig& cfg, const TuningSchedule& schedule,
                 const RandomStream& rng, BoostedModel& base, BaggedModel& bagged);

} // namespace neuro01
