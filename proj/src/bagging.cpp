#include "neuro01/bagging.hpp"

#include "neuro01/errors.hpp"
#include "neuro01/parallel.hpp"

namespace neuro01 {

void BaggedModel::validate(double norm_tolerance) const {
    if (members.empty()) throw InvalidConfig("bagged model: needs at least one member");
    for (const auto& m : members) {
        m.validate(norm_tolerance);
        if (m.M() != members.front().M() || m.gamma != members.front().gamma ||
            !(m.architecture() == members.front().architecture())) {
            throw InvalidInput("bagged model: members differ in structure");
        }
    }
}

BaggedModel fit_bagged(const BoostedModel& base, const Dataset& data, const TrainConfig& cfg, std::size_t n_bags,
                       std::size_t fine_tune_rounds, const RandomStream& rng, std::size_t threads) {
    if (n_bags < 1) throw InvalidConfig("fit_bagged: n_bags must be at least 1");
    data.validate();
    BaggedModel out;
    out.members.resize(n_bags);
    parallel_for(n_bags, threads, [&](std::size_t r) {
        RandomStream bag_rng = rng.branch(r);
        const std::size_t n = data.rows();
        std::vector<std::size_t> rows(n);
        for (auto& i : rows) i = bag_rng.index(n);
        const Dataset boot = data.subset(rows);
        out.members[r] = train_round_robin(boot.X, boot.y, cfg, fine_tune_rounds, &base, bag_rng);
    });
    return out;
}

double predict_bagged(const BaggedModel& model, std::span<const double> x) {
    double sum = 0.0;
    for (const auto& m : model.members) sum += predict_boosted(m, x);
    return sum / static_cast<double>(model.members.size());
}

std::vector<double> predict_bagged(const BaggedModel& model, const Matrix& X) {
    std::vector<double> sum(X.rows(), 0.0);
    for (const auto& m : model.members) {
        const auto p = predict_boosted(m, X);
        for (std::size_t i = 0; i < p.size(); ++i) sum[i] += p[i];
    }
    for (auto& v : sum) v /= static_cast<double>(model.members.size());
    return sum;
}

} // namespace neuro01
