#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "neuro01/matrix.hpp"
#include "neuro01/random.hpp"

namespace neuro01 {

/// Layer widths of an indicator network. Layers are indexed from 0 (the first
/// hidden layer, fed by raw features) to depth()-1 (the single output neuron).
struct Architecture {
    std::size_t input_dim = 0;
    std::vector<std::size_t> widths;
    std::size_t w0 = 2;

    std::size_t depth() const { return widths.size(); }
    std::size_t width(std::size_t layer) const { return widths[layer]; }
    /// Fan-in dimension of a layer: input_dim for layer 0.
    std::size_t fan_in(std::size_t layer) const { return layer == 0 ? input_dim : widths[layer - 1]; }
    std::size_t neuron_count() const;

    /// p_l >= 2 * w0^(L-l) for every hidden layer.
    bool satisfies_condition1() const;
    /// Upper bound on the number of active neurons: sum over layers of w0^(L-l).
    std::size_t max_active() const;

    /// Throws InvalidConfig unless depth >= 2, widths >= 1, last width 1,
    /// input_dim >= 1 and w0 >= 1.
    void validate() const;

    bool operator==(const Architecture&) const = default;
};

struct LayerPos {
    std::size_t layer = 0;
    std::size_t index = 0;

    auto operator<=>(const LayerPos&) const = default;
};

/// One indicator unit 1{w . input > bias} with sparse weights. An empty
/// support is the zero-initialized state.
struct Neuron {
    std::vector<std::uint32_t> support;
    std::vector<double> weights;
    double bias = 0.0;

    bool is_zero() const;
    bool operator==(const Neuron&) const = default;
};

/// Sparse dot product. Every evaluation path (row-wise, batched, incremental,
/// anchored bias) goes through this so results agree bit for bit.
template <class Input>
inline double sparse_dot(std::span<const std::uint32_t> support, std::span<const double> weights,
                         Input&& input) {
    double acc = 0.0;
    for (std::size_t k = 0; k < support.size(); ++k) {
        acc += weights[k] * static_cast<double>(input(support[k]));
    }
    return acc;
}

template <class Input>
inline double sparse_dot(const Neuron& n, Input&& input) {
    return sparse_dot(std::span<const std::uint32_t>(n.support), std::span<const double>(n.weights),
                      std::forward<Input>(input));
}

struct SparseWeight {
    std::vector<std::uint32_t> support;
    std::vector<double> weights;
};

/// Uniform support of size min(w0, dim), standard normal values normalized to
/// unit length. Throws InvalidInput when dim or w0 is zero.
SparseWeight sample_sparse_unit_weight(std::size_t dim, std::size_t w0, RandomStream& rng);

using BitColumn = std::vector<std::uint8_t>;
/// Per-layer, per-neuron activation columns over a batch.
using LayerColumns = std::vector<std::vector<BitColumn>>;

struct ActivationTrace {
    std::vector<std::vector<std::uint8_t>> layers;
    std::uint8_t output = 0;
};

class IndicatorNetwork {
public:
    IndicatorNetwork() = default;
    /// Zero-initialized network: empty supports, zero biases.
    explicit IndicatorNetwork(Architecture arch);

    const Architecture& architecture() const { return arch_; }
    const std::vector<std::vector<Neuron>>& layers() const { return layers_; }
    const Neuron& neuron(LayerPos pos) const { return layers_[pos.layer][pos.index]; }

    /// Installs a neuron after checking sparsity, index range and unit norm.
    void set_neuron(LayerPos pos, Neuron n, double norm_tolerance = 1e-9);

    ActivationTrace forward(std::span<const double> x) const;
    std::vector<std::uint8_t> forward_batch(const Matrix& X) const;
    /// Activation columns of every layer, computed one layer at a time.
    LayerColumns forward_batch_layers(const Matrix& X) const;
    LayerColumns forward_batch_layers(const Matrix& X, std::span<const std::size_t> rows) const;

    /// Neurons reachable backward from the output through nonzero weights,
    /// sorted by (layer, index). The output neuron is always included.
    std::vector<LayerPos> active_set() const;
    /// Same as active_set() as a per-layer membership mask.
    std::vector<std::vector<bool>> active_mask() const;

    /// Re-checks every neuron invariant; throws InvalidInput on violation.
    void validate(double norm_tolerance = 1e-9) const;

    bool operator==(const IndicatorNetwork&) const = default;

private:
    Architecture arch_;
    std::vector<std::vector<Neuron>> layers_;
};

IndicatorNetwork zero_init_network(const Architecture& arch);
ActivationTrace forward(const IndicatorNetwork& net, std::span<const double> x);
std::vector<std::uint8_t> forward_batch(const IndicatorNetwork& net, const Matrix& X);
std::vector<LayerPos> active_set(const IndicatorNetwork& net);

/// Activation column of one neuron given the columns of the layer below
/// (or the raw rows for layer 0).
void evaluate_neuron_column(const Neuron& n, const std::vector<BitColumn>& below, BitColumn& out);
void evaluate_neuron_column(const Neuron& n, const Matrix& X, std::span<const std::size_t> rows,
                            BitColumn& out);

void check_neuron(const Neuron& n, std::size_t fan_in, std::size_t w0, double norm_tolerance);

} // namespace neuro01
