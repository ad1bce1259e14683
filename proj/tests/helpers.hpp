#pragma once

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "neuro01/network.hpp"
#include "neuro01/random.hpp"

namespace testutil {

using namespace neuro01;

/// Random network: each neuron is zero with probability zero_prob, otherwise a
/// sparse unit weight with a bias near the middle of its input range.
inline IndicatorNetwork random_network(const Architecture& arch, RandomStream& rng, double zero_prob = 0.1) {
    IndicatorNetwork net(arch);
    for (std::size_t l = 0; l < arch.depth(); ++l) {
        for (std::size_t h = 0; h < arch.width(l); ++h) {
            if (rng.uniform() < zero_prob) continue;
            SparseWeight w = sample_sparse_unit_weight(arch.fan_in(l), arch.w0, rng);
            double bias = l == 0 ? rng.uniform(-0.5, 0.5) : rng.uniform(-0.2, 0.8);
            net.set_neuron({l, h}, Neuron{w.support, w.weights, bias});
        }
    }
    return net;
}

inline Matrix random_matrix(std::size_t rows, std::size_t cols, RandomStream& rng, double lo = -1.0,
                            double hi = 1.0) {
    Matrix X(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) X(i, j) = rng.uniform(lo, hi);
    }
    return X;
}

/// Dense per-row evaluation written independently of the library: expands
/// each sparse weight into a full vector and thresholds layer by layer.
inline std::vector<std::vector<int>> reference_forward(const IndicatorNetwork& net, std::span<const double> x) {
    const Architecture& arch = net.architecture();
    std::vector<double> in(x.begin(), x.end());
    std::vector<std::vector<int>> bits;
    for (std::size_t l = 0; l < arch.depth(); ++l) {
        std::vector<int> out(arch.width(l));
        for (std::size_t h = 0; h < arch.width(l); ++h) {
            const Neuron& n = net.neuron({l, h});
            std::vector<double> dense(in.size(), 0.0);
            for (std::size_t k = 0; k < n.support.size(); ++k) dense[n.support[k]] = n.weights[k];
            double z = 0.0;
            for (std::size_t j = 0; j < in.size(); ++j) {
                if (dense[j] != 0.0) z += dense[j] * in[j];
            }
            out[h] = z > n.bias ? 1 : 0;
        }
        bits.push_back(out);
        in.assign(out.begin(), out.end());
    }
    return bits;
}

inline double sse_about_cells(const std::vector<std::uint8_t>& labels, const std::vector<double>& t) {
    double s[2] = {0, 0};
    double c[2] = {0, 0};
    for (std::size_t i = 0; i < t.size(); ++i) {
        s[labels[i]] += t[i];
        c[labels[i]] += 1;
    }
    double sse = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double m = s[labels[i]] / c[labels[i]];
        sse += (t[i] - m) * (t[i] - m);
    }
    return sse;
}

inline std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
}

/// Fresh scratch directory under the build tree.
inline std::filesystem::path scratch_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("neuro01_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

} // namespace testutil
