#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "neuro01/matrix.hpp"
#include "neuro01/network.hpp"

namespace neuro01 {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct VerifyReport {
    std::vector<CheckResult> checks;

    bool passed() const;
    std::string to_text() const;
};

/// Score/SSE identity on random labelings, plus the boosting residual
/// telescoping identity on small random training runs.
VerifyReport verify_identities(std::uint64_t seed, std::size_t instances = 1000);

/// Evaluates the diamond fixture: active set, hand-checked bits, and
/// batched vs. row-wise agreement on the 101 x 101 grid.
VerifyReport verify_fixture();

struct ConvergenceOptions {
    std::size_t trials = 20;
    /// Checkpoints (in rounds) at which the hit rate is recorded; increasing.
    std::vector<std::size_t> checkpoints{200, 2000};
    std::size_t K = 10;
    std::uint64_t seed = 0;
    double tolerance = 1e-9;
    std::size_t threads = 1;
};

struct ConvergenceResult {
    double oracle_sse = 0.0;
    std::vector<std::size_t> checkpoints;
    /// hit_rate[c]: fraction of trials whose SSE at checkpoint c matches the oracle.
    std::vector<double> hit_rate;
    /// sse[t][c] for trial t at checkpoint c.
    std::vector<std::vector<double>> sse;
};

/// Trains a single network (ratio 1, stabilizer 0) from zero per trial and
/// compares its training SSE with oracle_min_sse at each checkpoint.
ConvergenceResult run_convergence(const Matrix& X, const std::vector<double>& y, const Architecture& arch,
                                  const ConvergenceOptions& options);

/// Hit rate at least 0.6 after 200 rounds and 0.9 after 2000, non-decreasing,
/// on the frozen ten-point problem with widths (4, 1).
VerifyReport verify_convergence(std::uint64_t seed, std::size_t threads = 1);

} // namespace neuro01
