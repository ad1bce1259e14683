#include "neuro01/dataset.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <cstdio>

namespace neuro01 {

Dataset Dataset::subset(std::span<const std::size_t> indices) const {
    Dataset out;
    out.X = X.select_rows(indices);
    out.y.reserve(indices.size());
    for (auto i : indices) out.y.push_back(y[i]);
    out.feature_names = feature_names;
    out.target_name = target_name;
    return out;
}

void Dataset::validate() const {
    if (X.rows() == 0) throw InvalidInput("dataset: no rows");
    if (X.cols() == 0) throw InvalidInput("dataset: no feature columns");
    if (y.size() != X.rows()) throw InvalidInput("dataset: target length does not match row count");
    for (double v : X.data()) {
        if (!std::isfinite(v)) throw InvalidInput("dataset: non-finite feature value");
    }
    for (double v : y) {
        if (!std::isfinite(v)) throw InvalidInput("dataset: non-finite target value");
    }
}

std::string data_fingerprint(const Matrix& X, std::span<const double> y) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto feed = [&](const double* p, std::size_t count) {
        const auto* bytes = reinterpret_cast<const unsigned char*>(p);
        for (std::size_t i = 0; i < count * sizeof(double); ++i) {
            h ^= bytes[i];
            h *= 0x100000001b3ULL;
        }
    };
    const std::uint64_t shape[2] = {X.rows(), X.cols()};
    for (auto s : shape) {
        double d;
        std::memcpy(&d, &s, sizeof d);
        feed(&d, 1);
    }
    feed(X.data().data(), X.data().size());
    feed(y.data(), y.size());
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace neuro01
