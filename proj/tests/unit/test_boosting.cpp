#include <doctest.h>

#include "../helpers.hpp"
#include "neuro01/boosting.hpp"
#include "neuro01/errors.hpp"
#include "neuro01/oracle.hpp"

using namespace neuro01;
using testutil::random_matrix;

namespace {

struct Toy {
    Matrix X;
    std::vector<double> y;
};

Toy toy(std::size_t n, std::size_t p, std::uint64_t seed) {
    RandomStream rng(seed);
    Toy d{random_matrix(n, p, rng), std::vector<double>(n)};
    for (std::size_t i = 0; i < n; ++i) d.y[i] = 2.0 * d.X(i, 0) * d.X(i, 1) + 0.5 * d.X(i, 2) + 0.3 * rng.normal();
    return d;
}

TrainConfig small_config(std::size_t M, double gamma, std::uint64_t seed) {
    TrainConfig cfg;
    cfg.widths = {4, 4, 1};
    cfg.M = M;
    cfg.gamma = gamma;
    cfg.seed = seed;
    return cfg;
}

} // namespace

TEST_CASE("one stage with unit rate predicts its cell mean") {
    const auto d = toy(60, 4, 1);
    const auto model = train_round_robin(d.X, d.y, small_config(1, 1.0, 3), 5);
    const auto& st = model.stages[0];
    for (std::size_t i = 0; i < d.X.rows(); ++i) {
        const auto bit = st.network.forward(d.X.row(i)).output;
        CHECK(predict_boosted(model, d.X.row(i)) == predict_cell(st.cell_means, bit));
    }
}

TEST_CASE("zero stages predict the scaled sum of their means") {
    const auto d = toy(30, 4, 2);
    const auto cfg = small_config(4, 0.5, 0);
    const auto model = init_boosted_model(d.X, d.y, cfg);
    double mean = 0.0;
    for (double v : d.y) mean += v;
    mean /= static_cast<double>(d.y.size());
    double sum = 0.0;
    for (const auto& st : model.stages) sum += st.cell_means.mean0;
    // Stage s sees residual mean (1 - gamma)^(s-1) * ybar.
    double geometric = 0.0;
    for (int s = 0; s < 4; ++s) geometric += std::pow(0.5, s) * mean;
    CHECK(sum == doctest::Approx(geometric).epsilon(1e-12));
    for (std::size_t i = 0; i < 5; ++i) CHECK(predict_boosted(model, d.X.row(i)) == doctest::Approx(0.5 * sum));
    CHECK(0.5 * sum == doctest::Approx((1.0 - std::pow(0.5, 4)) * mean).epsilon(1e-12));
}

TEST_CASE("targets equal predictions plus final residuals") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto d = toy(80, 5, 10 + seed);
        auto cfg = small_config(3 + seed % 3, 0.3 + 0.05 * seed, seed);
        cfg.stochastic_ratio = 0.9;
        const auto model = train_round_robin(d.X, d.y, cfg, 4);
        const auto resid = compute_residuals(model, d.X, d.y, model.M());
        for (std::size_t i = 0; i < d.y.size(); ++i) {
            CHECK(std::abs(d.y[i] - (predict_boosted(model, d.X.row(i)) + resid[i])) <= 1e-9);
        }
        CHECK(predict_boosted(model, d.X) == [&] {
            std::vector<double> v;
            for (std::size_t i = 0; i < d.X.rows(); ++i) v.push_back(predict_boosted(model, d.X.row(i)));
            return v;
        }());
    }
}

TEST_CASE("residual recursion") {
    const auto d = toy(50, 3, 4);
    const auto model = train_round_robin(d.X, d.y, small_config(1, 1.0, 2), 6);
    CHECK(compute_residuals(model, d.X, d.y, 0) == d.y);
    const auto r = compute_residuals(model, d.X, d.y, 1);
    const auto labels = model.stages[0].network.forward_batch(d.X);
    double s[2] = {0, 0};
    for (std::size_t i = 0; i < r.size(); ++i) s[labels[i]] += r[i];
    CHECK(std::abs(s[0]) <= 1e-9);
    CHECK(std::abs(s[1]) <= 1e-9);
    CHECK_THROWS_AS(compute_residuals(model, d.X, d.y, 2), InvalidInput);

    const std::vector<double> c(50, 1.75);
    const auto flat = train_round_robin(d.X, c, small_config(1, 1.0, 2), 3);
    for (double v : compute_residuals(flat, d.X, c, 1)) CHECK(v == 0.0);
}

TEST_CASE("zero rounds return the starting model") {
    const auto d = toy(40, 3, 5);
    const auto cfg = small_config(3, 0.5, 1);
    const auto zero = train_round_robin(d.X, d.y, cfg, 0);
    CHECK(zero == init_boosted_model(d.X, d.y, cfg));
    const auto trained = train_round_robin(d.X, d.y, cfg, 3);
    CHECK(train_round_robin(d.X, d.y, cfg, 0, &trained) == trained);
    auto other = cfg;
    other.M = 4;
    CHECK_THROWS_AS(train_round_robin(d.X, d.y, other, 1, &trained), InvalidConfig);
    other = cfg;
    other.gamma = 0.4;
    CHECK_THROWS_AS(train_round_robin(d.X, d.y, other, 1, &trained), InvalidConfig);
    other = cfg;
    other.widths = {4, 1};
    CHECK_THROWS_AS(train_round_robin(d.X, d.y, other, 1, &trained), InvalidConfig);
}

TEST_CASE("single-stage training loss is non-increasing with ratio one") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const auto d = toy(100, 5, 100 + seed);
        auto cfg = small_config(1, 0.5, seed);
        cfg.stabilizer = (seed % 2) ? 0.1 : 0.0;
        double prev = 0.0;
        for (double v : d.y) prev += v * v;
        train_round_robin(d.X, d.y, cfg, 20, nullptr, [&](const RoundReport& r) {
            REQUIRE(r.training_sse <= prev * (1.0 + 1e-12));
            prev = r.training_sse;
        });
    }
}

TEST_CASE("a threshold signal is fitted exactly") {
    // Two constant cells split by one feature threshold: the oracle optimum is 0.
    RandomStream rng(6);
    const Matrix X = random_matrix(12, 2, rng, 0.0, 1.0);
    std::vector<double> y(12);
    for (std::size_t i = 0; i < 12; ++i) y[i] = X(i, 0) > 0.5 ? 3.0 : -1.0;
    CHECK(oracle_min_sse(X, y, Architecture{2, {4, 1}, 2}).sse == 0.0);
    auto cfg = small_config(1, 1.0, 7);
    cfg.widths = {4, 1};
    double last = -1.0;
    train_round_robin(X, y, cfg, 300, nullptr, [&](const RoundReport& r) { last = r.training_sse; });
    CHECK(last <= 1e-20);
}

TEST_CASE("training is deterministic in the seed") {
    const auto d = toy(70, 4, 8);
    auto cfg = small_config(3, 0.5, 11);
    cfg.stochastic_ratio = 0.85;
    cfg.stabilizer = 0.01;
    CHECK(train_round_robin(d.X, d.y, cfg, 5) == train_round_robin(d.X, d.y, cfg, 5));
    auto other = cfg;
    other.seed = 12;
    CHECK_FALSE(train_round_robin(d.X, d.y, cfg, 5) == train_round_robin(d.X, d.y, other, 5));
}

TEST_CASE("stage means lie within their own residual range") {
    const auto d = toy(90, 4, 9);
    const auto model = train_round_robin(d.X, d.y, small_config(5, 0.6, 3), 6);
    for (std::size_t s = 0; s < model.M(); ++s) {
        const auto m = compute_residuals(model, d.X, d.y, s);
        const double lo = *std::min_element(m.begin(), m.end()) - 1e-12;
        const double hi = *std::max_element(m.begin(), m.end()) + 1e-12;
        const auto& cm = model.stages[s].cell_means;
        CHECK(cm.mean0 >= lo);
        CHECK(cm.mean0 <= hi);
        CHECK(cm.mean1 >= lo);
        CHECK(cm.mean1 <= hi);
        CHECK(cm.count0 + cm.count1 == d.y.size());
    }
    CHECK(model.meta.rounds == 6);
    CHECK(model.meta.n == 90);
    CHECK(model.meta.p == 4);
    CHECK_NOTHROW(model.validate());
}

TEST_CASE("training configuration domain") {
    auto cfg = small_config(3, 0.5, 0);
    CHECK_NOTHROW(cfg.validate());
    cfg.gamma = 0.0;
    CHECK_THROWS_AS(cfg.validate(), InvalidConfig);
    cfg = small_config(0, 0.5, 0);
    CHECK_THROWS_AS(cfg.validate(), InvalidConfig);
    cfg = small_config(3, 1.5, 0);
    CHECK_THROWS_AS(cfg.validate(), InvalidConfig);
    cfg = small_config(3, 0.5, 0);
    cfg.widths = {4, 4};
    CHECK_THROWS_AS(cfg.validate(), InvalidConfig);
    cfg = small_config(3, 0.5, 0);
    cfg.stochastic_ratio = 0.5;
    CHECK_THROWS_AS(cfg.validate(), InvalidConfig);
}
