#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "neuro01/bagging.hpp"
#include "neuro01/boosting.hpp"

namespace neuro01 {

inline constexpr int kModelFormatVersion = 1;

/// On-disk model: a base boosted model plus optional bagging members.
struct ModelFile {
    BoostedModel base;
    std::vector<BoostedModel> members;
    /// Unit-norm tolerance applied when the file is loaded. Trained models
    /// use 1e-9; hand-written fixtures with printed weights need more slack.
    double norm_tolerance = 1e-9;
    /// Training column names, used to select prediction inputs by name.
    std::vector<std::string> feature_names;

    bool bagged() const { return !members.empty(); }
    std::size_t input_dim() const { return base.architecture().input_dim; }
    std::vector<double> predict(const Matrix& X) const;
    bool operator==(const ModelFile&) const = default;
};

/// Shortest decimal string that parses back to exactly `v`.
std::string format_exact(double v);
double parse_exact(const std::string& s);

std::string serialize_model(const ModelFile& model);
/// Parses and re-validates every invariant. Throws CorruptModel.
ModelFile parse_model(const std::string& text);

void save_model(const ModelFile& model, const std::filesystem::path& path);
ModelFile load_model(const std::filesystem::path& path);

} // namespace neuro01
