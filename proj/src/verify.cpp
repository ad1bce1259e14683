#include "neuro01/verify.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "neuro01/boosting.hpp"
#include "neuro01/exploit_explore.hpp"
#include "neuro01/fixtures.hpp"
#include "neuro01/oracle.hpp"
#include "neuro01/parallel.hpp"
#include "neuro01/partition.hpp"

namespace neuro01 {
namespace {

std::string fmt(const char* f, double a, double b = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

} // namespace

bool VerifyReport::passed() const {
    for (const auto& c : checks) {
        if (!c.passed) return false;
    }
    return true;
}

std::string VerifyReport::to_text() const {
    std::ostringstream out;
    for (const auto& c : checks) {
        out << (c.passed ? "PASS " : "FAIL ") << c.name;
        if (!c.detail.empty()) out << ": " << c.detail;
        out << "\n";
    }
    return out.str();
}

VerifyReport verify_identities(std::uint64_t seed, std::size_t instances) {
    VerifyReport report;
    RandomStream rng(seed);

    double worst = 0.0;
    std::size_t failures = 0;
    for (std::size_t t = 0; t < instances; ++t) {
        const std::size_t n = 1 + rng.index(1000);
        std::vector<std::uint8_t> labels(n);
        std::vector<double> targets(n);
        const double p1 = rng.uniform();
        double sum_sq = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            labels[i] = rng.uniform() < p1 ? 1 : 0;
            targets[i] = rng.normal() * 3.0 + rng.uniform(-2.0, 2.0);
            sum_sq += targets[i] * targets[i];
        }
        const double gap = std::abs(fitted_sse(labels, targets) - (sum_sq - partition_score(labels, targets)));
        const double rel = sum_sq > 0.0 ? gap / sum_sq : gap;
        worst = std::max(worst, rel);
        if (gap > 1e-9 * sum_sq) ++failures;
    }
    report.checks.push_back({"score-sse identity", failures == 0,
                             fmt("%.0f instances, worst relative gap %.3g", static_cast<double>(instances), worst)});

    double worst_tel = 0.0;
    const std::size_t runs = 20;
    for (std::size_t r = 0; r < runs; ++r) {
        const std::size_t n = 30 + rng.index(40);
        Matrix X(n, 3);
        std::vector<double> y(n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < 3; ++j) X(i, j) = rng.uniform(-1.0, 1.0);
            y[i] = X(i, 0) * X(i, 1) + 0.3 * rng.normal();
        }
        TrainConfig cfg;
        cfg.widths = {4, 4, 1};
        cfg.M = 3;
        cfg.gamma = 0.5;
        cfg.seed = rng.index(1u << 30);
        const BoostedModel model = train_round_robin(X, y, cfg, 3);
        const auto pred = predict_boosted(model, X);
        const auto resid = compute_residuals(model, X, y, model.M());
        for (std::size_t i = 0; i < n; ++i) {
            worst_tel = std::max(worst_tel, std::abs(y[i] - (pred[i] + resid[i])) / (1.0 + std::abs(y[i])));
        }
    }
    report.checks.push_back({"residual telescoping", worst_tel <= 1e-9,
                             fmt("%.0f training runs, worst gap %.3g", static_cast<double>(runs), worst_tel)});
    return report;
}

VerifyReport verify_fixture() {
    VerifyReport report;
    const IndicatorNetwork net = diamond_network();
    bool valid = true;
    try {
        net.validate(kDiamondNormTolerance);
    } catch (const std::exception&) {
        valid = false;
    }
    report.checks.push_back({"fixture invariants", valid, "weights unit length within 1e-3"});

    const std::vector<LayerPos> expected{{0, 0}, {0, 1}, {0, 2}, {0, 3}, {1, 0}, {1, 1}, {2, 0}};
    report.checks.push_back({"active set", net.active_set() == expected, "7 active neurons, 6 idle"});

    const double a[3] = {0.5, 0.6, 0.3};
    const double z[3] = {0.0, 0.0, 0.0};
    const auto ta = net.forward(a);
    const auto tz = net.forward(z);
    report.checks.push_back({"hand-evaluated bits", ta.layers[0][0] == 1 && tz.layers[0][0] == 0 && tz.layers[0][1] == 1,
                             "f11(0.5,0.6,0.3)=1, f11(0)=0, f12(0)=1"});

    const Matrix grid = diamond_grid();
    const auto batch = net.forward_batch(grid);
    std::size_t mismatches = 0;
    std::size_t positives = 0;
    for (std::size_t r = 0; r < grid.rows(); ++r) {
        const auto t = net.forward(grid.row(r));
        if (t.output != batch[r]) ++mismatches;
        positives += batch[r];
    }
    report.checks.push_back({"grid batch equals row-wise", mismatches == 0,
                             fmt("%.0f grid points, %.0f positive", static_cast<double>(grid.rows()),
                                 static_cast<double>(positives))});
    return report;
}

ConvergenceResult run_convergence(const Matrix& X, const std::vector<double>& y, const Architecture& arch,
                                  const ConvergenceOptions& options) {
    ConvergenceResult result;
    result.checkpoints = options.checkpoints;
    result.oracle_sse = oracle_min_sse(X, y, arch).sse;
    result.sse.assign(options.trials, std::vector<double>(options.checkpoints.size(), 0.0));
    const StepConfig step{options.K, 1.0, 0.0};
    const RandomStream root(options.seed);
    parallel_for(options.trials, options.threads, [&](std::size_t t) {
        RandomStream rng = root.branch(t);
        IndicatorNetwork net(arch);
        std::size_t done = 0;
        for (std::size_t c = 0; c < options.checkpoints.size(); ++c) {
            for (; done < options.checkpoints[c]; ++done) update_round(net, y, X, step, rng);
            result.sse[t][c] = fitted_sse(net.forward_batch(X), y);
        }
    });
    for (std::size_t c = 0; c < options.checkpoints.size(); ++c) {
        std::size_t hits = 0;
        for (std::size_t t = 0; t < options.trials; ++t) {
            if (std::abs(result.sse[t][c] - result.oracle_sse) <= options.tolerance) ++hits;
        }
        result.hit_rate.push_back(static_cast<double>(hits) / static_cast<double>(options.trials));
    }
    return result;
}

VerifyReport verify_convergence(std::uint64_t seed, std::size_t threads) {
    const SmallProblem prob = convergence_problem();
    const Architecture arch{prob.X.cols(), {4, 1}, 2};
    ConvergenceOptions opt;
    opt.seed = seed;
    opt.threads = threads;
    const ConvergenceResult res = run_convergence(prob.X, prob.y, arch, opt);
    VerifyReport report;
    report.checks.push_back({"hit rate after 200 rounds >= 0.6", res.hit_rate[0] >= 0.6,
                             fmt("%.2f (oracle SSE %.6f)", res.hit_rate[0], res.oracle_sse)});
    report.checks.push_back({"hit rate after 2000 rounds >= 0.9", res.hit_rate[1] >= 0.9, fmt("%.2f", res.hit_rate[1])});
    report.checks.push_back({"hit rate non-decreasing", res.hit_rate[1] >= res.hit_rate[0],
                             fmt("%.2f -> %.2f", res.hit_rate[0], res.hit_rate[1])});
    return report;
}

} // namespace neuro01
