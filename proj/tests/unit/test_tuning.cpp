#include <doctest.h>

#include <map>

#include "../helpers.hpp"
#include "neuro01/data.hpp"
#include "neuro01/errors.hpp"
#include "neuro01/tuning.hpp"

using namespace neuro01;

namespace {

TuningSchedule tiny_schedule() {
    TuningSchedule s;
    s.validation_rounds = 2;
    s.validation_bags = 2;
    s.validation_fine_tune = 1;
    s.final_rounds = 3;
    s.final_bags = 2;
    s.final_fine_tune = 1;
    return s;
}

} // namespace

TEST_CASE("architecture catalog") {
    CHECK(architecture_widths('A') == std::vector<std::size_t>{4, 1});
    CHECK(architecture_widths('B') == std::vector<std::size_t>{8, 4, 1});
    CHECK(architecture_widths('C') == std::vector<std::size_t>{16, 8, 4, 1});
    CHECK(architecture_widths('D') == std::vector<std::size_t>{4, 4, 1});
    CHECK(architecture_widths('E') == std::vector<std::size_t>{4, 4, 4, 1});
    CHECK(architecture_widths('F') == std::vector<std::size_t>{4, 4, 4, 4, 1});
    CHECK_THROWS_AS(architecture_widths('G'), InvalidConfig);
}

TEST_CASE("sampled configurations cover the tuning space uniformly") {
    RandomStream rng(71);
    const int draws = 10000;
    double m_sum = 0.0;
    std::map<char, int> arch;
    std::map<double, int> stab;
    for (int i = 0; i < draws; ++i) {
        const auto h = sample_hyperconfig(rng);
        REQUIRE_NOTHROW(h.validate());
        m_sum += static_cast<double>(h.M);
        ++arch[h.architecture_id];
        ++stab[h.stabilizer];
    }
    // Uniform on {3..50}: mean 26.5, sd 13.9, so the mean of 1e4 draws has sd 0.14.
    CHECK(std::abs(m_sum / draws - 26.5) <= 0.5);
    CHECK(arch.size() == 6);
    for (const auto& [id, c] : arch) CHECK(std::abs(c / double(draws) - 1.0 / 6.0) <= 0.02);
    CHECK(stab.size() == 4);
    for (const auto& [s, c] : stab) CHECK((s == 0.5 || s == 0.1 || s == 0.01 || s == 0.0));
}

TEST_CASE("configuration domain checks") {
    HyperConfig h;
    CHECK_NOTHROW(h.validate());
    auto bad = h;
    bad.M = 2;
    CHECK_THROWS_AS(bad.validate(), InvalidConfig);
    bad = h;
    bad.M = 51;
    CHECK_THROWS_AS(bad.validate(), InvalidConfig);
    bad = h;
    bad.gamma = 0.95;
    CHECK_THROWS_AS(bad.validate(), InvalidConfig);
    bad = h;
    bad.stabilizer = 0.2;
    CHECK_THROWS_AS(bad.validate(), InvalidConfig);
    bad = h;
    bad.architecture_id = 'Z';
    CHECK_THROWS_AS(bad.validate(), InvalidConfig);
    const auto tc = h.train_config(9);
    CHECK(tc.widths == architecture_widths('D'));
    CHECK(tc.seed == 9);
    CHECK(tc.K == 10);
}

TEST_CASE("schedule defaults") {
    const TuningSchedule s;
    CHECK(s.validation_rounds == 20);
    CHECK(s.validation_bags == 10);
    CHECK(s.validation_fine_tune == 1);
    CHECK(s.final_rounds == 120);
    CHECK(s.final_bags == 20);
    CHECK(s.final_fine_tune == 10);
    CHECK(s.train_fraction == 0.8);
    CHECK_FALSE(s.resplit_per_trial);
}

TEST_CASE("constant validation targets give no score") {
    RandomStream rng(72);
    auto train = generate_xor(40, 3, rng);
    auto val = generate_xor(10, 3, rng);
    for (auto& v : val.y) v = 1.0;
    CHECK_FALSE(evaluate_config(HyperConfig{}, train, val, tiny_schedule(), RandomStream(1)).has_value());
    val = generate_xor(10, 3, rng);
    CHECK(evaluate_config(HyperConfig{}, train, val, tiny_schedule(), RandomStream(1)).has_value());
}

TEST_CASE("a single trial is selected and retrained") {
    RandomStream rng(73);
    const auto data = generate_xor(60, 3, rng);
    std::vector<TrialRecord> seen;
    const auto res = tune_and_train(data, 1, tiny_schedule(), RandomStream(5),
                                    [&](const TrialRecord& r) { seen.push_back(r); });
    CHECK(seen.size() == 1);
    CHECK(res.best_trial == 0);
    CHECK(res.best == seen[0].config);
    CHECK(res.base.M() == res.best.M);
    CHECK(res.bagged.members.size() == 2);
    CHECK(res.base.meta.rounds == 3);
}

TEST_CASE("selection is the first best validation score and reproducible") {
    RandomStream rng(74);
    const auto data = generate_xor(60, 3, rng);
    const auto a = tune_and_train(data, 4, tiny_schedule(), RandomStream(6));
    const auto b = tune_and_train(data, 4, tiny_schedule(), RandomStream(6));
    CHECK(a.best_trial == b.best_trial);
    CHECK(a.base == b.base);
    CHECK(a.bagged == b.bagged);
    double best = -1e300;
    std::size_t arg = 0;
    for (const auto& t : a.trials) {
        if (t.val_r2 && *t.val_r2 > best) {
            best = *t.val_r2;
            arg = t.trial;
        }
    }
    CHECK(a.best_trial == arg);

    auto threaded = tiny_schedule();
    threaded.threads = 3;
    const auto c = tune_and_train(data, 4, threaded, RandomStream(6));
    CHECK(c.best_trial == a.best_trial);
    CHECK(c.bagged == a.bagged);

    auto resplit = tiny_schedule();
    resplit.resplit_per_trial = true;
    const auto d = tune_and_train(data, 4, resplit, RandomStream(6));
    for (std::size_t t = 0; t < 4; ++t) CHECK(d.trials[t].config == a.trials[t].config);
}

TEST_CASE("desk-scale tuning fits the training data") {
    RandomStream rng(75);
    const auto data = generate_xor(450, 10, rng);
    auto sched = TuningSchedule{};
    sched.validation_rounds = 10;
    sched.validation_bags = 3;
    sched.final_rounds = 30;
    sched.final_bags = 4;
    sched.final_fine_tune = 3;
    const auto res = tune_and_train(data, 5, sched, RandomStream(3));
    CHECK(r2_score(data.y, predict_bagged(res.bagged, data.X)) > 0.0);
}

TEST_CASE("tuning input checks") {
    RandomStream rng(76);
    const auto data = generate_xor(4, 3, rng);
    CHECK_THROWS_AS(tune_and_train(data, 1, tiny_schedule(), RandomStream(1)), InvalidInput);
    const auto ok = generate_xor(20, 3, rng);
    CHECK_THROWS_AS(tune_and_train(ok, 0, tiny_schedule(), RandomStream(1)), InvalidInput);
}

TEST_CASE("trial log lines") {
    CHECK(trials_log_header() == "trial,M,gamma,stochastic_ratio,architecture,stabilizer,val_r2,seconds");
    TrialRecord r;
    r.trial = 3;
    r.config.M = 12;
    r.config.gamma = 0.25;
    r.config.stochastic_ratio = 0.9;
    r.config.architecture_id = 'E';
    r.config.stabilizer = 0.01;
    r.val_r2 = 0.5;
    r.seconds = 1.25;
    CHECK(format_trial(r) == "3,12,0.25,0.9,E,0.01,0.5,1.250");
    r.val_r2.reset();
    CHECK(format_trial(r) == "3,12,0.25,0.9,E,0.01,-inf,1.250");
}
