#include "neuro01/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "neuro01/data.hpp"
#include "neuro01/errors.hpp"
#include "neuro01/parallel.hpp"

namespace neuro01 {

SyntheticModel parse_synthetic_model(const std::string& id) {
    if (id == "linear") return SyntheticModel::Linear;
    if (id == "xor") return SyntheticModel::Xor;
    throw InvalidConfig("unknown generator '" + id + "' (expected linear or xor)");
}

Dataset generate(SyntheticModel model, std::size_t n, std::size_t p, RandomStream& rng) {
    return model == SyntheticModel::Linear ? generate_linear(n, p, rng) : generate_xor(n, p, rng);
}

Summary summarize(const std::vector<double>& values) {
    if (values.empty()) throw InvalidInput("summarize: no values");
    Summary s;
    s.max = *std::max_element(values.begin(), values.end());
    s.min = *std::min_element(values.begin(), values.end());
    s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - s.mean) * (v - s.mean);
        s.std = std::sqrt(ss / static_cast<double>(values.size() - 1));
    }
    return s;
}

std::string format_summary(const Summary& s) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%.3f, %.3f (%.3f), %.3f", s.max, s.mean, s.std, s.min);
    return buf;
}

std::vector<double> BenchResult::single_values() const {
    std::vector<double> v;
    for (const auto& t : trials) v.push_back(t.single_r2);
    return v;
}

std::vector<double> BenchResult::bagged_values() const {
    std::vector<double> v;
    for (const auto& t : trials) v.push_back(t.bagged_r2);
    return v;
}

std::string BenchResult::to_csv() const {
    std::string out = "trial,single_r2,bagged_r2,seconds,M,gamma,stochastic_ratio,architecture,stabilizer\n";
    char buf[256];
    for (std::size_t i = 0; i < trials.size(); ++i) {
        const auto& t = trials[i];
        std::snprintf(buf, sizeof buf, "%zu,%.6f,%.6f,%.3f,%zu,%.6g,%.6g,%c,%.6g\n", i, t.single_r2, t.bagged_r2,
                      t.seconds, t.config.M, t.config.gamma, t.config.stochastic_ratio, t.config.architecture_id,
                      t.config.stabilizer);
        out += buf;
    }
    out += "summary,\"" + format_summary(single) + "\",\"" + format_summary(bagged) + "\",,,,,,\n";
    return out;
}

BenchResult run_benchmark(const BenchSource& source, const BenchOptions& options) {
    if (options.trials < 1) throw InvalidConfig("run_benchmark: trials must be at least 1");
    RandomStream root(options.seed);
    BenchResult result;
    result.trials.resize(options.trials);
    parallel_for(options.trials, options.threads, [&](std::size_t t) {
        RandomStream trial_rng = root.branch(t);
        Dataset train;
        Dataset test;
        if (const auto* syn = std::get_if<SyntheticSource>(&source)) {
            RandomStream data_rng = trial_rng.branch(0);
            train = generate(syn->model, syn->n, syn->p, data_rng);
            test = generate(syn->model, syn->test_size, syn->p, data_rng);
        } else {
            const Dataset& d = std::get<Dataset>(source);
            RandomStream split_rng = trial_rng.branch(0);
            const Split s = random_split(d.rows(), 0.5, split_rng);
            train = d.subset(s.first);
            test = d.subset(s.second);
        }
        const auto start = std::chrono::steady_clock::now();
        TrialResult tr;
        BoostedModel base;
        BaggedModel bagged;
        if (options.fixed) {
            tr.config = *options.fixed;
            train_final(train, tr.config, options.schedule, trial_rng.branch(1), base, bagged);
        } else {
            TuneResult tuned = tune_and_train(train, options.R, options.schedule, trial_rng.branch(1));
            tr.config = tuned.best;
            base = std::move(tuned.base);
            bagged = std::move(tuned.bagged);
        }
        tr.single_r2 = r2_score(test.y, predict_boosted(base, test.X));
        tr.bagged_r2 = r2_score(test.y, predict_bagged(bagged, test.X));
        tr.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        result.trials[t] = tr;
    });
    result.single = summarize(result.single_values());
    result.bagged = summarize(result.bagged_values());
    return result;
}

} // namespace neuro01
