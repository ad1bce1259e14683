#pragma once

#include <span>
#include <string>
#include <vector>

#include "neuro01/matrix.hpp"

namespace neuro01 {

struct Dataset {
    Matrix X;
    std::vector<double> y;
    std::vector<std::string> feature_names;
    std::string target_name = "y";

    std::size_t rows() const { return X.rows(); }
    std::size_t features() const { return X.cols(); }

    Dataset subset(std::span<const std::size_t> indices) const;
    /// Throws InvalidInput unless n >= 1, p >= 1, shapes agree and every value is finite.
    void validate() const;
};

/// FNV-1a hash of the raw bytes of X and y, as 16 hex digits.
std::string data_fingerprint(const Matrix& X, std::span<const double> y);

} // namespace neuro01
