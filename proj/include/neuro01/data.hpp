#pragma once

#include <filesystem>
#include <span>
#include <string>

#include "neuro01/dataset.hpp"
#include "neuro01/random.hpp"

namespace neuro01 {

/// X uniform on [-1, 1]^p, Y = sum_{j<10} X_j + 1.8 eps. Requires p >= 10.
Dataset generate_linear(std::size_t n, std::size_t p, RandomStream& rng);

/// X uniform on [-1, 1]^p, Y = 2 X_1 X_2 + 0.5 X_3 + 0.3 eps. Requires p >= 3.
Dataset generate_xor(std::size_t n, std::size_t p, RandomStream& rng);

/// 1 - SSR / sum (y - mean)^2. Throws UndefinedMetric for constant truth and
/// InvalidInput for fewer than two rows or mismatched lengths.
double r2_score(std::span<const double> y_true, std::span<const double> y_pred);

/// Reads a comma-separated numeric table with a header row; `target` names
/// the response column and all other columns become features.
Dataset load_csv(const std::filesystem::path& path, const std::string& target);
Dataset parse_csv(const std::string& text, const std::string& target);

/// Reads every column as a feature (no target), for prediction inputs.
Matrix load_feature_csv(const std::filesystem::path& path, std::vector<std::string>* names = nullptr);

struct Split {
    std::vector<std::size_t> first;
    std::vector<std::size_t> second;
};

/// Random partition with round(fraction * n) rows in `first`.
Split random_split(std::size_t n, double fraction, RandomStream& rng);

} // namespace neuro01
