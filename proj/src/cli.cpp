#include "neuro01/cli.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "neuro01/bagging.hpp"
#include "neuro01/bench.hpp"
#include "neuro01/data.hpp"
#include "neuro01/errors.hpp"
#include "neuro01/model_io.hpp"
#include "neuro01/tuning.hpp"
#include "neuro01/verify.hpp"

namespace neuro01::cli {
namespace {

struct TrainArgs {
    std::string data, target, config, out, architecture;
    std::optional<std::size_t> M, K, w0;
    std::optional<double> gamma, ratio, stabilizer;
    std::uint64_t seed = 0;
    std::size_t rounds = 120, bags = 20, fine_tune = 10, threads = 0;
};

struct PredictArgs {
    std::string model, data, out;
};

struct ScheduleArgs {
    std::optional<std::size_t> validation_rounds, validation_bags, validation_fine_tune;
    std::optional<std::size_t> final_rounds, final_bags, final_fine_tune;

    void add(CLI::App* app) {
        app->add_option("--validation-rounds", validation_rounds, "Rounds per tuning trial (default 20)");
        app->add_option("--validation-bags", validation_bags, "Bags per tuning trial (default 10)");
        app->add_option("--validation-fine-tune", validation_fine_tune, "Fine-tune rounds per tuning bag (default 1)");
        app->add_option("--final-rounds", final_rounds, "Rounds for the final retrain (default 120)");
        app->add_option("--final-bags", final_bags, "Bags for the final model (default 20)");
        app->add_option("--final-fine-tune", final_fine_tune, "Fine-tune rounds per final bag (default 10)");
    }
    void apply(TuningSchedule& s) const {
        if (validation_rounds) s.validation_rounds = *validation_rounds;
        if (validation_bags) s.validation_bags = *validation_bags;
        if (validation_fine_tune) s.validation_fine_tune = *validation_fine_tune;
        if (final_rounds) s.final_rounds = *final_rounds;
        if (final_bags) s.final_bags = *final_bags;
        if (final_fine_tune) s.final_fine_tune = *final_fine_tune;
    }
};

struct TuneArgs {
    std::string data, target, out, log;
    std::size_t trials = 30, threads = 0;
    std::uint64_t seed = 0;
    bool resplit = false;
    ScheduleArgs schedule;
};

struct SimulateArgs {
    std::string model_id, out;
    std::size_t n = 450, p = 100, trials = 1, test_size = 10000, R = 30, threads = 0;
    std::uint64_t seed = 0;
    ScheduleArgs schedule;
};

struct VerifyArgs {
    std::string suite;
    std::uint64_t seed = 0;
    std::size_t threads = 0;
};

std::vector<std::size_t> parse_widths(const std::string& text) {
    if (text.size() == 1 && text[0] >= 'A' && text[0] <= 'F') return architecture_widths(text[0]);
    std::vector<std::size_t> widths;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            const long v = std::stol(item, &used);
            if (used != item.size() || v <= 0) throw InvalidConfig("");
            widths.push_back(static_cast<std::size_t>(v));
        } catch (const std::exception&) {
            throw InvalidConfig("architecture must be A..F or a comma-separated width list, got '" + text + "'");
        }
    }
    if (widths.empty()) throw InvalidConfig("architecture must not be empty");
    return widths;
}

TrainConfig resolve_train_config(TrainArgs& a) {
    TrainConfig cfg;
    if (!a.config.empty()) {
        std::ifstream in(a.config);
        if (!in) throw DataError("cannot open config file " + a.config);
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw InvalidConfig(std::string("config file: ") + e.what());
        }
        try {
            if (j.contains("M")) cfg.M = j["M"].get<std::size_t>();
            if (j.contains("K")) cfg.K = j["K"].get<std::size_t>();
            if (j.contains("w0")) cfg.w0 = j["w0"].get<std::size_t>();
            if (j.contains("gamma")) cfg.gamma = j["gamma"].get<double>();
            if (j.contains("stochastic_ratio")) cfg.stochastic_ratio = j["stochastic_ratio"].get<double>();
            if (j.contains("stabilizer")) cfg.stabilizer = j["stabilizer"].get<double>();
            if (j.contains("architecture")) {
                const auto& arch = j["architecture"];
                cfg.widths = arch.is_string() ? parse_widths(arch.get<std::string>())
                                              : arch.get<std::vector<std::size_t>>();
            }
            if (j.contains("seed")) a.seed = j["seed"].get<std::uint64_t>();
            if (j.contains("rounds")) a.rounds = j["rounds"].get<std::size_t>();
            if (j.contains("bags")) a.bags = j["bags"].get<std::size_t>();
            if (j.contains("fine_tune_rounds")) a.fine_tune = j["fine_tune_rounds"].get<std::size_t>();
        } catch (const nlohmann::json::exception& e) {
            throw InvalidConfig(std::string("config file: ") + e.what());
        }
    }
    if (a.M) cfg.M = *a.M;
    if (a.K) cfg.K = *a.K;
    if (a.w0) cfg.w0 = *a.w0;
    if (a.gamma) cfg.gamma = *a.gamma;
    if (a.ratio) cfg.stochastic_ratio = *a.ratio;
    if (a.stabilizer) cfg.stabilizer = *a.stabilizer;
    if (!a.architecture.empty()) cfg.widths = parse_widths(a.architecture);
    cfg.seed = a.seed;
    cfg.validate();
    return cfg;
}

int cmd_train(TrainArgs& a, std::ostream& out) {
    const TrainConfig cfg = resolve_train_config(a);
    const Dataset data = load_csv(a.data, a.target);
    data.validate();

    const RandomStream root(cfg.seed);
    RandomStream train_rng = root.branch(0);
    out << "round,training_sse\n";
    ModelFile file;
    file.feature_names = data.feature_names;
    file.base = train_round_robin(data.X, data.y, cfg, a.rounds, nullptr, train_rng, [&](const RoundReport& r) {
        out << r.round << "," << format_exact(r.training_sse) << "\n";
    });
    if (a.bags > 0) {
        file.members = fit_bagged(file.base, data, cfg, a.bags, a.fine_tune, root.branch(1), a.threads).members;
    }
    save_model(file, a.out);
    return kOk;
}

Matrix select_inputs(const ModelFile& model, const std::filesystem::path& path) {
    std::vector<std::string> names;
    const Matrix raw = load_feature_csv(path, &names);
    const std::size_t p = model.input_dim();
    if (!model.feature_names.empty()) {
        std::map<std::string, std::size_t> col;
        for (std::size_t j = 0; j < names.size(); ++j) col[names[j]] = j;
        bool all = true;
        for (const auto& f : model.feature_names) all = all && col.count(f) > 0;
        if (all) {
            Matrix X(raw.rows(), p);
            for (std::size_t i = 0; i < raw.rows(); ++i) {
                for (std::size_t j = 0; j < p; ++j) X(i, j) = raw(i, col[model.feature_names[j]]);
            }
            return X;
        }
    }
    if (raw.cols() != p) {
        throw DataError("input has " + std::to_string(raw.cols()) + " columns but the model expects " +
                        std::to_string(p) + " features");
    }
    return raw;
}

int cmd_predict(const PredictArgs& a) {
    const ModelFile model = load_model(a.model);
    const Matrix X = select_inputs(model, a.data);
    const auto pred = model.predict(X);
    std::ofstream o(a.out, std::ios::binary);
    if (!o) throw DataError("cannot write " + a.out);
    o << "prediction\n";
    for (double v : pred) o << format_exact(v) << "\n";
    return kOk;
}

int cmd_tune(TuneArgs& a, std::ostream& out) {
    const Dataset data = load_csv(a.data, a.target);
    TuningSchedule schedule;
    schedule.resplit_per_trial = a.resplit;
    schedule.threads = a.threads;
    a.schedule.apply(schedule);
    std::ostringstream log;
    log << trials_log_header() << "\n";
    const TuneResult res = tune_and_train(data, a.trials, schedule, RandomStream(a.seed),
                                          [&](const TrialRecord& r) { log << format_trial(r) << "\n"; });
    if (a.log.empty()) {
        out << log.str();
    } else {
        std::ofstream lf(a.log, std::ios::binary);
        if (!lf) throw DataError("cannot write " + a.log);
        lf << log.str();
    }
    out << "selected trial " << res.best_trial << "\n";
    ModelFile file;
    file.feature_names = data.feature_names;
    file.base = res.base;
    file.members = res.bagged.members;
    save_model(file, a.out);
    return kOk;
}

int cmd_simulate(SimulateArgs& a, std::ostream& out) {
    SyntheticSource src;
    src.model = parse_synthetic_model(a.model_id);
    src.n = a.n;
    src.p = a.p;
    src.test_size = a.test_size;
    BenchOptions opt;
    opt.trials = a.trials;
    opt.R = a.R;
    opt.seed = a.seed;
    opt.threads = a.threads;
    a.schedule.apply(opt.schedule);
    const BenchResult res = run_benchmark(src, opt);
    const std::string csv = res.to_csv();
    if (a.out.empty()) {
        out << csv;
    } else {
        std::ofstream o(a.out, std::ios::binary);
        if (!o) throw DataError("cannot write " + a.out);
        o << csv;
    }
    out << "single: " << format_summary(res.single) << "\n";
    out << "bagged: " << format_summary(res.bagged) << "\n";
    return kOk;
}

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
    VerifyReport report;
    if (a.suite == "identities") {
        report = verify_identities(a.seed);
    } else if (a.suite == "fixture") {
        report = verify_fixture();
    } else {
        report = verify_convergence(a.seed, a.threads);
    }
    out << report.to_text();
    return report.passed() ? kOk : kFailure;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Boosted sparse indicator-activation networks"};
    app.require_subcommand(1);

    TrainArgs train;
    auto* t = app.add_subcommand("train", "Train a boosted (optionally bagged) model");
    t->add_option("--data", train.data, "Training CSV")->required();
    t->add_option("--target", train.target, "Target column name")->required();
    t->add_option("--config", train.config, "JSON file with hyperparameters");
    t->add_option("--M", train.M, "Number of boosting stages");
    t->add_option("--gamma", train.gamma, "Learning rate in (0, 1]");
    t->add_option("--stochastic-ratio", train.ratio, "Row fraction per optimization step in [0.8, 1]");
    t->add_option("--architecture", train.architecture, "A..F or comma-separated widths ending in 1");
    t->add_option("--stabilizer", train.stabilizer, "Incumbent discount (>= 0)");
    t->add_option("--K", train.K, "Candidates per neuron visit");
    t->add_option("--w0", train.w0, "Weight sparsity");
    t->add_option("--seed", train.seed, "Random seed");
    t->add_option("--rounds", train.rounds, "Training rounds");
    t->add_option("--bags", train.bags, "Bagging members (0 disables bagging)");
    t->add_option("--fine-tune-rounds", train.fine_tune, "Fine-tuning rounds per bag");
    t->add_option("--out", train.out, "Model file to write")->required();
    t->add_option("--threads", train.threads, "Worker threads (0 = all cores)");

    PredictArgs predict;
    auto* p = app.add_subcommand("predict", "Predict with a saved model");
    p->add_option("--model", predict.model, "Model file")->required();
    p->add_option("--data", predict.data, "Input CSV")->required();
    p->add_option("--out", predict.out, "Output CSV")->required();

    TuneArgs tune;
    auto* u = app.add_subcommand("tune", "Random-search tuning followed by final training");
    u->add_option("--data", tune.data, "Training CSV")->required();
    u->add_option("--target", tune.target, "Target column name")->required();
    u->add_option("--trials", tune.trials, "Number of sampled configurations (R)");
    u->add_option("--seed", tune.seed, "Random seed");
    u->add_option("--out", tune.out, "Model file to write")->required();
    u->add_option("--log", tune.log, "Trials log file (default: standard output)");
    u->add_flag("--resplit-per-trial", tune.resplit, "Draw a new 80/20 split for every trial");
    u->add_option("--threads", tune.threads, "Worker threads (0 = all cores)");
    tune.schedule.add(u);

    SimulateArgs sim;
    auto* s = app.add_subcommand("simulate", "Repeated-trial benchmark on a synthetic model");
    s->add_option("--model-id", sim.model_id, "linear or xor")
        ->required()
        ->check(CLI::IsMember({"linear", "xor"}));
    s->add_option("--n", sim.n, "Training rows");
    s->add_option("--p", sim.p, "Feature count");
    s->add_option("--trials", sim.trials, "Benchmark repetitions");
    s->add_option("--test-size", sim.test_size, "Test rows per trial");
    s->add_option("--R", sim.R, "Tuning trials per repetition");
    s->add_option("--seed", sim.seed, "Random seed");
    s->add_option("--out", sim.out, "Results CSV (default: standard output)");
    s->add_option("--threads", sim.threads, "Worker threads (0 = all cores)");
    sim.schedule.add(s);

    VerifyArgs verify;
    auto* v = app.add_subcommand("verify", "Run a verification suite");
    v->add_option("--suite", verify.suite, "convergence, identities or fixture")
        ->required()
        ->check(CLI::IsMember({"convergence", "identities", "fixture"}));
    v->add_option("--seed", verify.seed, "Random seed");
    v->add_option("--threads", verify.threads, "Worker threads (0 = all cores)");

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kBadFlags;
    }

    try {
        if (t->parsed()) return cmd_train(train, out);
        if (p->parsed()) return cmd_predict(predict);
        if (u->parsed()) return cmd_tune(tune, out);
        if (s->parsed()) return cmd_simulate(sim, out);
        if (v->parsed()) return cmd_verify(verify, out);
    } catch (const InvalidConfig& e) {
        err << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const DataError& e) {
        err << "data error: " << e.what() << "\n";
        return kDataError;
    } catch (const InvalidInput& e) {
        err << "data error: " << e.what() << "\n";
        return kDataError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kFailure;
    }
    return kBadFlags;
}

int run(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return run(args, std::cout, std::cerr);
}

} // namespace neuro01::cli
