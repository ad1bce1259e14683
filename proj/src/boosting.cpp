#include "neuro01/boosting.hpp"

#include <cmath>

#include "neuro01/dataset.hpp"
#include "neuro01/errors.hpp"

namespace neuro01 {

void TrainConfig::validate() const {
    Architecture probe{1, widths, w0};
    probe.validate();
    if (M < 1) throw InvalidConfig("M must be at least 1");
    if (!(gamma > 0.0 && gamma <= 1.0)) throw InvalidConfig("gamma must lie in (0, 1]");
    step().validate();
}

void BoostedModel::validate(double norm_tolerance) const {
    if (stages.empty()) throw InvalidConfig("boosted model: needs at least one stage");
    if (!(gamma > 0.0 && gamma <= 1.0)) throw InvalidConfig("boosted model: gamma must lie in (0, 1]");
    const Architecture& arch = stages.front().network.architecture();
    for (const auto& st : stages) {
        if (!(st.network.architecture() == arch)) throw InvalidInput("boosted model: stages differ in architecture");
        st.network.validate(norm_tolerance);
        const auto& cm = st.cell_means;
        if (!std::isfinite(cm.mean0) || !std::isfinite(cm.mean1) || !std::isfinite(cm.fallback)) {
            throw InvalidInput("boosted model: non-finite cell mean");
        }
        if (cm.count0 == 0 && cm.mean0 != cm.fallback) throw InvalidInput("boosted model: empty cell 0 must use fallback");
        if (cm.count1 == 0 && cm.mean1 != cm.fallback) throw InvalidInput("boosted model: empty cell 1 must use fallback");
        if (meta.n != 0 && cm.count0 + cm.count1 != meta.n) {
            throw InvalidInput("boosted model: cell counts do not sum to the training size");
        }
    }
}

double predict_boosted(const BoostedModel& model, std::span<const double> x) {
    double sum = 0.0;
    for (const auto& st : model.stages) sum += predict_cell(st.cell_means, st.network.forward(x).output);
    return model.gamma * sum;
}

std::vector<double> predict_boosted(const BoostedModel& model, const Matrix& X) {
    std::vector<double> sum(X.rows(), 0.0);
    for (const auto& st : model.stages) {
        const auto labels = st.network.forward_batch(X);
        for (std::size_t i = 0; i < labels.size(); ++i) sum[i] += predict_cell(st.cell_means, labels[i]);
    }
    for (auto& v : sum) v *= model.gamma;
    return sum;
}

std::vector<double> compute_residuals(const BoostedModel& model, const Matrix& X, std::span<const double> y,
                                      std::size_t s) {
    if (s > model.M()) throw InvalidInput("compute_residuals: stage index out of range");
    if (y.size() != X.rows()) throw InvalidInput("compute_residuals: target length does not match row count");
    std::vector<double> m(y.begin(), y.end());
    for (std::size_t k = 0; k < s; ++k) {
        const auto& st = model.stages[k];
        const auto labels = st.network.forward_batch(X);
        for (std::size_t i = 0; i < m.size(); ++i) m[i] -= model.gamma * predict_cell(st.cell_means, labels[i]);
    }
    return m;
}

BoostedModel init_boosted_model(const Matrix& X, std::span<const double> y, const TrainConfig& cfg) {
    cfg.validate();
    if (X.rows() == 0 || y.size() != X.rows()) throw InvalidInput("init_boosted_model: bad training data shape");
    const Architecture arch = cfg.architecture(X.cols());
    BoostedModel model;
    model.gamma = cfg.gamma;
    model.meta = {X.rows(), X.cols(), cfg.seed, 0, data_fingerprint(X, y)};
    std::vector<double> m(y.begin(), y.end());
    const std::vector<std::uint8_t> zeros(X.rows(), 0);
    for (std::size_t s = 0; s < cfg.M; ++s) {
        BoostStage st{IndicatorNetwork(arch), fit_cell_means(zeros, m)};
        for (auto& v : m) v -= cfg.gamma * st.cell_means.mean0;
        model.stages.push_back(std::move(st));
    }
    return model;
}

BoostedModel train_round_robin(const Matrix& X, std::span<const double> y, const TrainConfig& cfg,
                               std::size_t rounds, const BoostedModel* warm, RandomStream& rng,
                               const RoundObserver& observer) {
    cfg.validate();
    if (X.rows() == 0 || y.size() != X.rows()) throw InvalidInput("train_round_robin: bad training data shape");
    BoostedModel model;
    if (warm != nullptr) {
        if (warm->M() != cfg.M || warm->gamma != cfg.gamma || !(warm->architecture() == cfg.architecture(X.cols()))) {
            throw InvalidConfig("train_round_robin: warm model does not match the configuration");
        }
        if (rounds == 0) return *warm;
        model = *warm;
        model.meta.n = X.rows();
        model.meta.p = X.cols();
        model.meta.fingerprint = data_fingerprint(X, y);
    } else {
        model = init_boosted_model(X, y, cfg);
    }
    model.meta.seed = cfg.seed;

    const StepConfig step = cfg.step();
    for (std::size_t b = 0; b < rounds; ++b) {
        RoundReport report;
        report.round = b + 1;
        std::vector<double> m(y.begin(), y.end());
        for (auto& st : model.stages) {
            const RoundStats rs = update_round(st.network, m, X, step, rng);
            report.stats.visits += rs.visits;
            report.stats.exploit_visits += rs.exploit_visits;
            report.stats.replacements += rs.replacements;
            const auto labels = st.network.forward_batch(X);
            st.cell_means = fit_cell_means(labels, m);
            for (std::size_t i = 0; i < m.size(); ++i) m[i] -= cfg.gamma * predict_cell(st.cell_means, labels[i]);
        }
        ++model.meta.rounds;
        if (observer) {
            double sse = 0.0;
            for (double r : m) sse += r * r;
            report.training_sse = sse;
            observer(report);
        }
    }
    return model;
}

BoostedModel train_round_robin(const Matrix& X, std::span<const double> y, const TrainConfig& cfg,
                               std::size_t rounds, const BoostedModel* warm, const RoundObserver& observer) {
    RandomStream rng(cfg.seed);
    return train_round_robin(X, y, cfg, rounds, warm, rng, observer);
}

} // namespace neuro01
