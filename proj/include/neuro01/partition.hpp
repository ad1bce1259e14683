#pragma once

#include <cstdint>
#include <span>

namespace neuro01 {

/// Two-cell regressor over the binary partition induced by a network: the
/// prediction for label l is the mean target among rows labeled l.
struct CellMeans {
    double mean0 = 0.0;
    double mean1 = 0.0;
    std::size_t count0 = 0;
    std::size_t count1 = 0;
    /// Global target mean, used for an empty cell.
    double fallback = 0.0;

    bool operator==(const CellMeans&) const = default;
};

CellMeans fit_cell_means(std::span<const std::uint8_t> labels, std::span<const double> targets);

inline double predict_cell(const CellMeans& cm, std::uint8_t label) { return label ? cm.mean1 : cm.mean0; }

/// Sum over cells of (cell target sum)^2 / (cell size); empty cells add 0.
/// Maximizing this is equivalent to minimizing fitted_sse.
double partition_score(std::span<const std::uint8_t> labels, std::span<const double> targets);

/// Sum of squared deviations from the cell means, computed directly.
double fitted_sse(std::span<const std::uint8_t> labels, std::span<const double> targets);

/// Cell sums and counts; the building block of partition_score.
struct CellTotals {
    double sum0 = 0.0;
    double sum1 = 0.0;
    std::size_t count0 = 0;
    std::size_t count1 = 0;

    double score() const;
};

CellTotals cell_totals(std::span<const std::uint8_t> labels, std::span<const double> targets);

} // namespace neuro01
