#include "neuro01/partition.hpp"

#include "neuro01/errors.hpp"

namespace neuro01 {
namespace {

void check_inputs(std::span<const std::uint8_t> labels, std::span<const double> targets, const char* op) {
    if (labels.size() != targets.size()) throw InvalidInput(std::string(op) + ": labels and targets differ in length");
    if (labels.empty()) throw InvalidInput(std::string(op) + ": empty input");
}

} // namespace

CellTotals cell_totals(std::span<const std::uint8_t> labels, std::span<const double> targets) {
    // Both sums are accumulated directly in row order so that complementary
    // labelings yield exactly swapped totals.
    CellTotals t;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i]) {
            t.sum1 += targets[i];
            ++t.count1;
        } else {
            t.sum0 += targets[i];
            ++t.count0;
        }
    }
    return t;
}

double CellTotals::score() const {
    double s = 0.0;
    if (count0 > 0) s += sum0 * sum0 / static_cast<double>(count0);
    if (count1 > 0) s += sum1 * sum1 / static_cast<double>(count1);
    return s;
}

CellMeans fit_cell_means(std::span<const std::uint8_t> labels, std::span<const double> targets) {
    check_inputs(labels, targets, "fit_cell_means");
    const CellTotals t = cell_totals(labels, targets);
    CellMeans cm;
    cm.count0 = t.count0;
    cm.count1 = t.count1;
    cm.fallback = (t.sum0 + t.sum1) / static_cast<double>(labels.size());
    cm.mean0 = t.count0 > 0 ? t.sum0 / static_cast<double>(t.count0) : cm.fallback;
    cm.mean1 = t.count1 > 0 ? t.sum1 / static_cast<double>(t.count1) : cm.fallback;
    return cm;
}

double partition_score(std::span<const std::uint8_t> labels, std::span<const double> targets) {
    check_inputs(labels, targets, "partition_score");
    return cell_totals(labels, targets).score();
}

double fitted_sse(std::span<const std::uint8_t> labels, std::span<const double> targets) {
    check_inputs(labels, targets, "fitted_sse");
    const CellMeans cm = fit_cell_means(labels, targets);
    double sse = 0.0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const double r = targets[i] - predict_cell(cm, labels[i]);
        sse += r * r;
    }
    return sse;
}

} // namespace neuro01
