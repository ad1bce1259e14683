#include <doctest.h>

#include "neuro01/parallel.hpp"
#include "neuro01/random.hpp"

using namespace neuro01;

TEST_CASE("streams are reproducible and branches ignore prior draws") {
    RandomStream a(7);
    RandomStream b(7);
    for (int i = 0; i < 100; ++i) CHECK(a.uniform() == b.uniform());
    RandomStream fresh(7);
    auto b1 = a.branch(3);
    auto b2 = fresh.branch(3);
    for (int i = 0; i < 20; ++i) CHECK(b1.normal() == b2.normal());
    auto c1 = fresh.branch(4);
    auto c2 = fresh.branch(3);
    CHECK(c1.uniform() != c2.uniform());
    CHECK(RandomStream(8).uniform() != RandomStream(7).uniform());
}

TEST_CASE("basic draw ranges") {
    RandomStream rng(9);
    double mean = 0.0;
    for (int i = 0; i < 100000; ++i) {
        const double u = rng.uniform();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        const auto k = rng.index(6);
        REQUIRE(k < 6);
        const double v = rng.uniform(-1.0, 1.0);
        REQUIRE(v >= -1.0);
        REQUIRE(v < 1.0);
        mean += rng.normal();
    }
    // Standard error of the mean of 1e5 normals is about 0.0032.
    CHECK(std::abs(mean / 100000.0) < 0.02);
}

TEST_CASE("parallel loops cover every index and rethrow") {
    std::vector<int> hit(100, 0);
    parallel_for(100, 4, [&](std::size_t i) { hit[i] += 1; });
    for (int h : hit) CHECK(h == 1);
    CHECK_THROWS_AS(parallel_for(10, 3,
                                 [](std::size_t i) {
                                     if (i == 7) throw std::runtime_error("boom");
                                 }),
                    std::runtime_error);
}
