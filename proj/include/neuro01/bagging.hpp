#pragma once

#include <span>
#include <vector>

#include "neuro01/boosting.hpp"
#include "neuro01/dataset.hpp"

namespace neuro01 {

/// Bootstrap ensemble of fine-tuned copies of one boosted model.
struct BaggedModel {
    std::vector<BoostedModel> members;

    void validate(double norm_tolerance = 1e-9) const;
    bool operator==(const BaggedModel&) const = default;
};

/// Member r is trained on n rows drawn with replacement using the stream
/// rng.branch(r), warm-started from `base` for `fine_tune_rounds` rounds.
/// Results do not depend on `threads`.
BaggedModel fit_bagged(const BoostedModel& base, const Dataset& data, const TrainConfig& cfg, std::size_t n_bags,
                       std::size_t fine_tune_rounds, const RandomStream& rng, std::size_t threads = 1);

double predict_bagged(const BaggedModel& model, std::span<const double> x);
std::vector<double> predict_bagged(const BaggedModel& model, const Matrix& X);

} // namespace neuro01
