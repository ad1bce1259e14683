#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "neuro01/dataset.hpp"
#include "neuro01/tuning.hpp"

namespace neuro01 {

enum class SyntheticModel { Linear, Xor };

SyntheticModel parse_synthetic_model(const std::string& id);
Dataset generate(SyntheticModel model, std::size_t n, std::size_t p, RandomStream& rng);

struct SyntheticSource {
    SyntheticModel model = SyntheticModel::Linear;
    std::size_t n = 450;
    std::size_t p = 100;
    std::size_t test_size = 10000;
};

/// A fixed dataset is split 50/50 into full-training and test halves per trial.
using BenchSource = std::variant<SyntheticSource, Dataset>;

struct BenchOptions {
    std::size_t trials = 1;
    /// Tuning trials per benchmark trial.
    std::size_t R = 30;
    TuningSchedule schedule;
    /// When set, skips tuning and trains this configuration directly.
    std::optional<HyperConfig> fixed;
    std::uint64_t seed = 0;
    /// Benchmark trials run concurrently on this many workers.
    std::size_t threads = 1;
};

struct TrialResult {
    double single_r2 = 0.0;
    double bagged_r2 = 0.0;
    double seconds = 0.0;
    HyperConfig config;
};

struct Summary {
    double max = 0.0;
    double mean = 0.0;
    double std = 0.0;
    double min = 0.0;
};

/// Sample standard deviation (n - 1 denominator; 0 for a single value).
Summary summarize(const std::vector<double>& values);
/// "max, mean (std), min" with three decimals.
std::string format_summary(const Summary& s);

struct BenchResult {
    std::vector<TrialResult> trials;
    Summary single;
    Summary bagged;

    std::vector<double> single_values() const;
    std::vector<double> bagged_values() const;
    /// Per-trial rows followed by a quoted summary row.
    std::string to_csv() const;
};

BenchResult run_benchmark(const BenchSource& source, const BenchOptions& options);

} // namespace neuro01
