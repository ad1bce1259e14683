#include "neuro01/network.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "neuro01/errors.hpp"

namespace neuro01 {
namespace {

std::size_t ipow(std::size_t base, std::size_t exp) {
    std::size_t r = 1;
    for (std::size_t i = 0; i < exp; ++i) r *= base;
    return r;
}

std::vector<std::size_t> all_rows(std::size_t n) {
    std::vector<std::size_t> rows(n);
    std::iota(rows.begin(), rows.end(), std::size_t{0});
    return rows;
}

} // namespace

std::size_t Architecture::neuron_count() const {
    return std::accumulate(widths.begin(), widths.end(), std::size_t{0});
}

bool Architecture::satisfies_condition1() const {
    const std::size_t L = depth();
    for (std::size_t l = 0; l + 1 < L; ++l) {
        // 0-based layer l is layer l+1 in 1-based counting: exponent L-(l+1).
        if (widths[l] < 2 * ipow(w0, L - (l + 1))) return false;
    }
    return true;
}

std::size_t Architecture::max_active() const {
    std::size_t total = 0;
    for (std::size_t l = 0; l < depth(); ++l) total += ipow(w0, depth() - (l + 1));
    return total;
}

void Architecture::validate() const {
    if (input_dim == 0) throw InvalidConfig("architecture: input dimension must be positive");
    if (widths.size() < 2) throw InvalidConfig("architecture: depth must be at least 2");
    if (w0 == 0) throw InvalidConfig("architecture: sparsity w0 must be at least 1");
    for (std::size_t w : widths) {
        if (w == 0) throw InvalidConfig("architecture: layer widths must be positive");
    }
    if (widths.back() != 1) throw InvalidConfig("architecture: output layer must have width 1");
}

bool Neuron::is_zero() const {
    return std::all_of(weights.begin(), weights.end(), [](double w) { return w == 0.0; });
}

void check_neuron(const Neuron& n, std::size_t fan_in, std::size_t w0, double norm_tolerance) {
    if (n.support.size() != n.weights.size()) throw InvalidInput("neuron: support and weights differ in length");
    if (n.support.size() > w0) throw InvalidInput("neuron: support exceeds sparsity w0");
    for (std::size_t k = 0; k < n.support.size(); ++k) {
        if (n.support[k] >= fan_in) throw InvalidInput("neuron: support index out of range");
        if (k > 0 && n.support[k] <= n.support[k - 1]) {
            throw InvalidInput("neuron: support must be strictly increasing");
        }
    }
    if (!std::isfinite(n.bias)) throw InvalidInput("neuron: bias is not finite");
    if (n.is_zero()) return;
    double sq = 0.0;
    for (double w : n.weights) sq += w * w;
    if (std::abs(std::sqrt(sq) - 1.0) > norm_tolerance) {
        throw InvalidInput("neuron: weights are not unit length (norm " + std::to_string(std::sqrt(sq)) + ")");
    }
}

SparseWeight sample_sparse_unit_weight(std::size_t dim, std::size_t w0, RandomStream& rng) {
    if (dim == 0) throw InvalidInput("sample_sparse_unit_weight: dimension must be positive");
    if (w0 == 0) throw InvalidInput("sample_sparse_unit_weight: sparsity must be positive");
    const std::size_t k = std::min(w0, dim);

    // Partial Fisher-Yates over a lazily materialized permutation.
    std::vector<std::uint32_t> pool(dim);
    std::iota(pool.begin(), pool.end(), std::uint32_t{0});
    for (std::size_t i = 0; i < k; ++i) {
        std::size_t j = i + rng.index(dim - i);
        std::swap(pool[i], pool[j]);
    }
    SparseWeight out;
    out.support.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k));
    std::sort(out.support.begin(), out.support.end());

    out.weights.resize(k);
    double sq = 0.0;
    do {
        sq = 0.0;
        for (auto& w : out.weights) {
            w = rng.normal();
            sq += w * w;
        }
    } while (sq == 0.0);
    const double norm = std::sqrt(sq);
    for (auto& w : out.weights) w /= norm;
    return out;
}

IndicatorNetwork::IndicatorNetwork(Architecture arch) : arch_(std::move(arch)) {
    arch_.validate();
    layers_.resize(arch_.depth());
    for (std::size_t l = 0; l < arch_.depth(); ++l) layers_[l].resize(arch_.width(l));
}

void IndicatorNetwork::set_neuron(LayerPos pos, Neuron n, double norm_tolerance) {
    if (pos.layer >= arch_.depth() || pos.index >= arch_.width(pos.layer)) {
        throw InvalidInput("set_neuron: position out of range");
    }
    check_neuron(n, arch_.fan_in(pos.layer), arch_.w0, norm_tolerance);
    layers_[pos.layer][pos.index] = std::move(n);
}

void IndicatorNetwork::validate(double norm_tolerance) const {
    arch_.validate();
    if (layers_.size() != arch_.depth()) throw InvalidInput("network: layer count does not match architecture");
    for (std::size_t l = 0; l < layers_.size(); ++l) {
        if (layers_[l].size() != arch_.width(l)) throw InvalidInput("network: layer width does not match architecture");
        for (const auto& n : layers_[l]) check_neuron(n, arch_.fan_in(l), arch_.w0, norm_tolerance);
    }
}

ActivationTrace IndicatorNetwork::forward(std::span<const double> x) const {
    if (x.size() != arch_.input_dim) throw InvalidInput("forward: input dimension mismatch");
    ActivationTrace trace;
    trace.layers.resize(layers_.size());
    for (std::size_t l = 0; l < layers_.size(); ++l) {
        auto& bits = trace.layers[l];
        bits.resize(layers_[l].size());
        for (std::size_t h = 0; h < layers_[l].size(); ++h) {
            const Neuron& n = layers_[l][h];
            double z = (l == 0) ? sparse_dot(n, [&](std::uint32_t j) { return x[j]; })
                                : sparse_dot(n, [&](std::uint32_t j) { return trace.layers[l - 1][j]; });
            bits[h] = z > n.bias ? 1 : 0;
        }
    }
    trace.output = trace.layers.back()[0];
    return trace;
}

void evaluate_neuron_column(const Neuron& n, const Matrix& X, std::span<const std::size_t> rows, BitColumn& out) {
    out.resize(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        auto x = X.row(rows[r]);
        double z = sparse_dot(n, [&](std::uint32_t j) { return x[j]; });
        out[r] = z > n.bias ? 1 : 0;
    }
}

void evaluate_neuron_column(const Neuron& n, const std::vector<BitColumn>& below, BitColumn& out) {
    const std::size_t rows = below.empty() ? 0 : below.front().size();
    out.resize(rows);
    if (n.support.empty()) {
        const std::uint8_t bit = 0.0 > n.bias ? 1 : 0;
        std::fill(out.begin(), out.end(), bit);
        return;
    }
    for (std::size_t r = 0; r < rows; ++r) {
        double z = sparse_dot(n, [&](std::uint32_t j) { return below[j][r]; });
        out[r] = z > n.bias ? 1 : 0;
    }
}

LayerColumns IndicatorNetwork::forward_batch_layers(const Matrix& X, std::span<const std::size_t> rows) const {
    if (X.cols() != arch_.input_dim) throw InvalidInput("forward_batch: column count does not match input dimension");
    LayerColumns cols(layers_.size());
    for (std::size_t l = 0; l < layers_.size(); ++l) {
        cols[l].resize(layers_[l].size());
        for (std::size_t h = 0; h < layers_[l].size(); ++h) {
            if (l == 0) {
                evaluate_neuron_column(layers_[l][h], X, rows, cols[l][h]);
            } else {
                evaluate_neuron_column(layers_[l][h], cols[l - 1], cols[l][h]);
            }
        }
    }
    return cols;
}

LayerColumns IndicatorNetwork::forward_batch_layers(const Matrix& X) const {
    const auto rows = all_rows(X.rows());
    return forward_batch_layers(X, rows);
}

std::vector<std::uint8_t> IndicatorNetwork::forward_batch(const Matrix& X) const {
    auto cols = forward_batch_layers(X);
    return std::move(cols.back().front());
}

std::vector<std::vector<bool>> IndicatorNetwork::active_mask() const {
    std::vector<std::vector<bool>> mask(layers_.size());
    for (std::size_t l = 0; l < layers_.size(); ++l) mask[l].assign(layers_[l].size(), false);
    const std::size_t L = layers_.size();
    mask[L - 1][0] = true;
    for (std::size_t l = L - 1; l > 0; --l) {
        for (std::size_t h = 0; h < layers_[l].size(); ++h) {
            if (!mask[l][h]) continue;
            const Neuron& n = layers_[l][h];
            for (std::size_t k = 0; k < n.support.size(); ++k) {
                if (n.weights[k] != 0.0) mask[l - 1][n.support[k]] = true;
            }
        }
    }
    return mask;
}

std::vector<LayerPos> IndicatorNetwork::active_set() const {
    const auto mask = active_mask();
    std::vector<LayerPos> out;
    for (std::size_t l = 0; l < mask.size(); ++l) {
        for (std::size_t h = 0; h < mask[l].size(); ++h) {
            if (mask[l][h]) out.push_back({l, h});
        }
    }
    return out;
}

IndicatorNetwork zero_init_network(const Architecture& arch) { return IndicatorNetwork(arch); }

ActivationTrace forward(const IndicatorNetwork& net, std::span<const double> x) { return net.forward(x); }

std::vector<std::uint8_t> forward_batch(const IndicatorNetwork& net, const Matrix& X) { return net.forward_batch(X); }

std::vector<LayerPos> active_set(const IndicatorNetwork& net) { return net.active_set(); }

} // namespace neuro01
