#include "neuro01/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "neuro01/errors.hpp"
#include "neuro01/partition.hpp"

namespace neuro01 {
namespace {

// Adds every "projection > threshold" labeling for one direction.
void add_threshold_labelings(std::span<const double> proj, LabelingSet& out) {
    const std::size_t n = proj.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return proj[a] > proj[b]; });
    Labeling l = 0;
    out.insert(0);
    for (std::size_t k = 0; k < n; ++k) {
        l |= Labeling{1} << order[k];
        if (k + 1 == n || proj[order[k + 1]] != proj[order[k]]) out.insert(l);
    }
}

// Angles (in [0, 2pi)) of directions orthogonal to a difference vector.
void add_critical_angles(double dx, double dy, std::vector<double>& angles) {
    if (dx == 0.0 && dy == 0.0) return;
    const double two_pi = 2.0 * std::numbers::pi;
    double a = std::atan2(dy, dx) + std::numbers::pi / 2.0;
    for (int s = 0; s < 2; ++s) {
        double t = std::fmod(a + s * std::numbers::pi, two_pi);
        if (t < 0) t += two_pi;
        angles.push_back(t);
    }
}

// Midpoints of the arcs between consecutive critical angles.
std::vector<double> arc_midpoints(std::vector<double> angles) {
    const double two_pi = 2.0 * std::numbers::pi;
    std::sort(angles.begin(), angles.end());
    angles.erase(std::unique(angles.begin(), angles.end()), angles.end());
    std::vector<double> mids;
    if (angles.empty()) {
        mids.push_back(0.25);
        return mids;
    }
    for (std::size_t i = 0; i < angles.size(); ++i) {
        const double a = angles[i];
        const double b = (i + 1 < angles.size()) ? angles[i + 1] : angles.front() + two_pi;
        mids.push_back(0.5 * (a + b));
    }
    return mids;
}

} // namespace

LabelingSet::LabelingSet(std::size_t n) : n_(n) {
    if (n > kOracleMaxRows) {
        throw InvalidInput("oracle: at most " + std::to_string(kOracleMaxRows) + " rows are supported");
    }
    mask_ = n == 0 ? 0 : static_cast<Labeling>((std::uint64_t{1} << n) - 1);
    present_.assign(std::size_t{1} << n, false);
}

bool LabelingSet::insert(Labeling l) {
    ++attempts_;
    l &= mask_;
    if (present_[l]) return false;
    present_[l] = true;
    members_.push_back(l);
    return true;
}

Labeling to_labeling(std::span<const std::uint8_t> labels) {
    Labeling l = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i]) l |= Labeling{1} << i;
    }
    return l;
}

std::vector<std::uint8_t> from_labeling(Labeling l, std::size_t n) {
    std::vector<std::uint8_t> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = (l >> i) & 1U;
    return out;
}

LabelingSet enumerate_layer1(const Matrix& X, std::size_t w0) {
    if (w0 == 0) throw InvalidInput("enumerate_layer1: w0 must be positive");
    if (w0 > 2) throw Unsupported("enumerate_layer1: only w0 <= 2 is supported");
    const std::size_t n = X.rows();
    const std::size_t p = X.cols();
    LabelingSet out(n);
    const Labeling all = n == 0 ? 0 : static_cast<Labeling>((std::uint64_t{1} << n) - 1);
    out.insert(0);
    out.insert(all);

    std::vector<double> proj(n);
    for (std::size_t j = 0; j < p; ++j) {
        for (double sign : {1.0, -1.0}) {
            for (std::size_t i = 0; i < n; ++i) proj[i] = sign * X(i, j);
            add_threshold_labelings(proj, out);
        }
    }
    if (w0 < 2) return out;

    for (std::size_t a = 0; a < p; ++a) {
        for (std::size_t b = a + 1; b < p; ++b) {
            std::vector<double> angles;
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t k = i + 1; k < n; ++k) {
                    add_critical_angles(X(k, a) - X(i, a), X(k, b) - X(i, b), angles);
                }
            }
            for (double t : arc_midpoints(std::move(angles))) {
                const double c = std::cos(t), s = std::sin(t);
                for (std::size_t i = 0; i < n; ++i) proj[i] = c * X(i, a) + s * X(i, b);
                add_threshold_labelings(proj, out);
            }
        }
    }
    return out;
}

std::vector<std::uint8_t> realizable_pair_functions() {
    // The truth table only changes where u . (x - e) = 0 for some corner x
    // and offset e, i.e. where u is orthogonal to a vector in {-1,0,1}^2.
    // Axis directions are excluded since they need a zero weight.
    std::vector<double> angles;
    for (int dx = -1; dx <= 1; ++dx) {
        for (int dy = -1; dy <= 1; ++dy) add_critical_angles(dx, dy, angles);
    }
    add_critical_angles(1, 0, angles);
    add_critical_angles(0, 1, angles);
    std::vector<bool> seen(16, false);
    std::vector<std::uint8_t> out;
    for (double t : arc_midpoints(std::move(angles))) {
        const double u1 = std::cos(t), u2 = std::sin(t);
        for (int e1 = 0; e1 <= 1; ++e1) {
            for (int e2 = 0; e2 <= 1; ++e2) {
                const double c = u1 * e1 + u2 * e2;
                std::uint8_t table = 0;
                for (int a = 0; a <= 1; ++a) {
                    for (int b = 0; b <= 1; ++b) {
                        if (u1 * a + u2 * b > c) table |= static_cast<std::uint8_t>(1U << (2 * a + b));
                    }
                }
                if (!seen[table]) {
                    seen[table] = true;
                    out.push_back(table);
                }
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

Labeling apply_pair_function(std::uint8_t table, Labeling a, Labeling b, Labeling mask) {
    Labeling out = 0;
    for (unsigned va = 0; va <= 1; ++va) {
        for (unsigned vb = 0; vb <= 1; ++vb) {
            if (!((table >> (2 * va + vb)) & 1U)) continue;
            out |= (va ? a : ~a) & (vb ? b : ~b);
        }
    }
    return out & mask;
}

LabelingSet close_under_depth(const LabelingSet& base, std::size_t L, std::size_t w0) {
    if (w0 != 2) throw Unsupported("close_under_depth: only w0 = 2 is supported");
    if (L < 1) throw InvalidInput("close_under_depth: depth must be at least 1");
    const std::size_t n = base.rows();
    const Labeling mask = n == 0 ? 0 : static_cast<Labeling>((std::uint64_t{1} << n) - 1);
    const auto funcs = realizable_pair_functions();
    LabelingSet current = base;
    for (std::size_t step = 1; step < L; ++step) {
        LabelingSet next = current;
        const auto& m = current.members();
        for (Labeling a : m) {
            for (Labeling b : m) {
                for (auto f : funcs) next.insert(apply_pair_function(f, a, b, mask));
            }
        }
        current = std::move(next);
    }
    return current;
}

OracleResult oracle_min_sse(const Matrix& X, std::span<const double> targets, const Architecture& arch) {
    if (targets.size() != X.rows()) throw InvalidInput("oracle_min_sse: targets length does not match row count");
    if (X.rows() == 0) throw InvalidInput("oracle_min_sse: empty input");
    const LabelingSet closed = close_under_depth(enumerate_layer1(X, arch.w0), arch.depth(), arch.w0);
    OracleResult best;
    best.sse = std::numeric_limits<double>::infinity();
    best.labelings = closed.size();
    std::vector<Labeling> sorted = closed.members();
    std::sort(sorted.begin(), sorted.end());
    for (Labeling l : sorted) {
        const auto labels = from_labeling(l, X.rows());
        const double sse = fitted_sse(labels, targets);
        if (sse < best.sse) {
            best.sse = sse;
            best.witness = labels;
        }
    }
    return best;
}

} // namespace neuro01
