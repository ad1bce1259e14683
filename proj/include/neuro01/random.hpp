#pragma once

#include <cstdint>
#include <random>

namespace neuro01 {

/// Seeded pseudo-random stream. Branches are derived from the construction
/// seed (not the current state), so branch(k) is reproducible regardless of
/// how many draws were made before.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed);

    std::uint64_t seed() const { return seed_; }

    RandomStream branch(std::uint64_t key) const;

    /// Uniform on [0, 1).
    double uniform();
    double uniform(double lo, double hi);
    double normal();
    /// Uniform integer on [0, n). Requires n >= 1.
    std::size_t index(std::size_t n);
    bool coin();

    std::mt19937_64& engine() { return engine_; }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_;
};

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t key);

} // namespace neuro01
