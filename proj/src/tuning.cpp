#include "neuro01/tuning.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>

#include "neuro01/data.hpp"
#include "neuro01/errors.hpp"
#include "neuro01/parallel.hpp"

namespace neuro01 {
namespace {

// Stream keys; trial t uses branch(t), so these sit far above any trial count.
constexpr std::uint64_t kSplitKey = 1ULL << 62;
constexpr std::uint64_t kFinalKey = (1ULL << 62) + 1;

std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

} // namespace

const std::vector<std::size_t>& architecture_widths(char id) {
    static const std::vector<std::size_t> A{4, 1}, B{8, 4, 1}, C{16, 8, 4, 1}, D{4, 4, 1}, E{4, 4, 4, 1},
        F{4, 4, 4, 4, 1};
    switch (id) {
    case 'A': return A;
    case 'B': return B;
    case 'C': return C;
    case 'D': return D;
    case 'E': return E;
    case 'F': return F;
    default: throw InvalidConfig(std::string("unknown architecture id '") + id + "'");
    }
}

void HyperConfig::validate() const {
    if (M < 3 || M > 50) throw InvalidConfig("M must lie in {3..50}");
    if (!(gamma >= 0.05 && gamma <= 0.9)) throw InvalidConfig("gamma must lie in [0.05, 0.9]");
    if (!(stochastic_ratio >= 0.8 && stochastic_ratio <= 1.0)) throw InvalidConfig("stochastic_ratio must lie in [0.8, 1]");
    architecture_widths(architecture_id);
    bool ok = false;
    for (double s : kStabilizerChoices) ok = ok || s == stabilizer;
    if (!ok) throw InvalidConfig("stabilizer must be one of {0.5, 0.1, 0.01, 0}");
    if (K != 10) throw InvalidConfig("K is fixed at 10");
    if (w0 != 2) throw InvalidConfig("w0 is fixed at 2");
}

TrainConfig HyperConfig::train_config(std::uint64_t seed) const {
    TrainConfig c;
    c.widths = architecture_widths(architecture_id);
    c.w0 = w0;
    c.K = K;
    c.M = M;
    c.gamma = gamma;
    c.stochastic_ratio = stochastic_ratio;
    c.stabilizer = stabilizer;
    c.seed = seed;
    return c;
}

HyperConfig sample_hyperconfig(RandomStream& rng) {
    HyperConfig h;
    h.M = 3 + rng.index(48);
    h.gamma = rng.uniform(0.05, 0.9);
    h.stochastic_ratio = rng.uniform(0.8, 1.0);
    h.architecture_id = kArchitectureIds[rng.index(6)];
    h.stabilizer = kStabilizerChoices[rng.index(4)];
    return h;
}

void train_final(const Dataset& data, const HyperConfig& cfg, const TuningSchedule& schedule,
                 const RandomStream& rng, BoostedModel& base, BaggedModel& bagged) {
    const TrainConfig tc = cfg.train_config(rng.seed());
    RandomStream train_rng = rng.branch(0);
    base = train_round_robin(data.X, data.y, tc, schedule.final_rounds, nullptr, train_rng);
    bagged = fit_bagged(base, data, tc, schedule.final_bags, schedule.final_fine_tune, rng.branch(1), schedule.threads);
}

std::optional<double> evaluate_config(const HyperConfig& cfg, const Dataset& train, const Dataset& val,
                                      const TuningSchedule& schedule, const RandomStream& rng) {
    if (train.rows() == 0 || val.rows() == 0) throw InvalidInput("evaluate_config: empty split");
    cfg.validate();
    const TrainConfig tc = cfg.train_config(rng.seed());
    RandomStream train_rng = rng.branch(0);
    const BoostedModel base = train_round_robin(train.X, train.y, tc, schedule.validation_rounds, nullptr, train_rng);
    const BaggedModel bagged = fit_bagged(base, train, tc, schedule.validation_bags, schedule.validation_fine_tune,
                                          rng.branch(1), 1);
    const auto pred = predict_bagged(bagged, val.X);
    try {
        return r2_score(val.y, pred);
    } catch (const UndefinedMetric&) {
        return std::nullopt;
    } catch (const InvalidInput&) {
        return std::nullopt;
    }
}

std::string trials_log_header() { return "trial,M,gamma,stochastic_ratio,architecture,stabilizer,val_r2,seconds"; }

std::string format_trial(const TrialRecord& rec) {
    const auto& c = rec.config;
    std::string line = std::to_string(rec.trial) + "," + std::to_string(c.M) + "," + format_real(c.gamma) + "," +
                       format_real(c.stochastic_ratio) + "," + std::string(1, c.architecture_id) + "," +
                       format_real(c.stabilizer) + ",";
    line += rec.val_r2 ? format_real(*rec.val_r2) : std::string("-inf");
    char secs[32];
    std::snprintf(secs, sizeof secs, "%.3f", rec.seconds);
    return line + "," + secs;
}

TuneResult tune_and_train(const Dataset& data, std::size_t R, const TuningSchedule& schedule,
                          const RandomStream& rng, const std::function<void(const TrialRecord&)>& on_trial) {
    data.validate();
    if (data.rows() < 5) throw InvalidInput("tune_and_train: need at least 5 rows to split");
    if (R < 1) throw InvalidInput("tune_and_train: R must be at least 1");

    RandomStream split_rng = rng.branch(kSplitKey);
    const Split shared = random_split(data.rows(), schedule.train_fraction, split_rng);

    TuneResult result;
    result.trials.resize(R);
    parallel_for(R, schedule.threads, [&](std::size_t t) {
        RandomStream trial_rng = rng.branch(t);
        RandomStream cfg_rng = trial_rng.branch(0);
        TrialRecord rec;
        rec.trial = t;
        rec.config = sample_hyperconfig(cfg_rng);
        Split split = shared;
        if (schedule.resplit_per_trial) {
            RandomStream s = trial_rng.branch(1);
            split = random_split(data.rows(), schedule.train_fraction, s);
        }
        const auto start = std::chrono::steady_clock::now();
        rec.val_r2 = evaluate_config(rec.config, data.subset(split.first), data.subset(split.second), schedule,
                                     trial_rng.branch(2));
        rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        result.trials[t] = rec;
    });
    if (on_trial) {
        for (const auto& rec : result.trials) on_trial(rec);
    }

    // First valid maximizer wins; if every score is undefined, trial 0 is used.
    double best = -std::numeric_limits<double>::infinity();
    bool found = false;
    for (const auto& rec : result.trials) {
        if (rec.val_r2 && (!found || *rec.val_r2 > best)) {
            best = *rec.val_r2;
            result.best_trial = rec.trial;
            found = true;
        }
    }
    result.best = result.trials[result.best_trial].config;
    train_final(data, result.best, schedule, rng.branch(kFinalKey), result.base, result.bagged);
    return result;
}

} // namespace neuro01
