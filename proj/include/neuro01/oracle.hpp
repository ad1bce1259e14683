#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "neuro01/matrix.hpp"
#include "neuro01/network.hpp"

namespace neuro01 {

/// A labeling of at most 32 rows; bit i is the label of row i.
using Labeling = std::uint32_t;

inline constexpr std::size_t kOracleMaxRows = 14;

/// Set of distinct labelings of n rows, kept in insertion order.
class LabelingSet {
public:
    explicit LabelingSet(std::size_t n);

    std::size_t rows() const { return n_; }
    bool insert(Labeling l);
    bool contains(Labeling l) const { return present_[l & mask_]; }
    std::size_t size() const { return members_.size(); }
    const std::vector<Labeling>& members() const { return members_; }

    /// How many insert() calls were attempted vs. accepted.
    std::size_t attempts() const { return attempts_; }

private:
    std::size_t n_;
    Labeling mask_;
    std::vector<bool> present_;
    std::vector<Labeling> members_;
    std::size_t attempts_ = 0;
};

Labeling to_labeling(std::span<const std::uint8_t> labels);
std::vector<std::uint8_t> from_labeling(Labeling l, std::size_t n);

/// All labelings realizable by one unit 1{w . x > c} with ||w||_0 <= w0
/// (w0 in {1, 2}): thresholds on single features and every halfplane split
/// of each 2-D feature-pair projection. Throws InvalidInput above
/// kOracleMaxRows rows and Unsupported for w0 > 2.
LabelingSet enumerate_layer1(const Matrix& X, std::size_t w0);

/// Truth tables (bit 2a+b set iff f(a, b) = 1) of the two-input functions
/// 1{u1 a + u2 b > u . e} reachable with unit u (both entries nonzero) and
/// e in {0,1}^2.
std::vector<std::uint8_t> realizable_pair_functions();

/// Applies a two-input truth table bitwise to a pair of labelings.
Labeling apply_pair_function(std::uint8_t table, Labeling a, Labeling b, Labeling mask);

/// Composes L-1 further layers: each step adds f(a, b) for every ordered
/// pair (a, b) of current members and every realizable function f.
/// Throws Unsupported unless w0 == 2.
LabelingSet close_under_depth(const LabelingSet& base, std::size_t L, std::size_t w0);

struct OracleResult {
    double sse = 0.0;
    std::vector<std::uint8_t> witness;
    std::size_t labelings = 0;
};

/// Minimum fitted SSE over every labeling an architecture can produce.
/// Widths are ignored; only depth and w0 matter.
OracleResult oracle_min_sse(const Matrix& X, std::span<const double> targets, const Architecture& arch);

} // namespace neuro01
