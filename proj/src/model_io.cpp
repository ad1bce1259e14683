#include "neuro01/model_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "neuro01/errors.hpp"

namespace neuro01 {
namespace {

using nlohmann::json;

json real(double v) { return format_exact(v); }

double get_real(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_string()) throw CorruptModel(std::string("model file: missing real field '") + key + "'");
    return parse_exact(j[key].get<std::string>());
}

template <class T>
T get_field(const json& j, const char* key) {
    if (!j.contains(key)) throw CorruptModel(std::string("model file: missing field '") + key + "'");
    try {
        return j[key].get<T>();
    } catch (const json::exception& e) {
        throw CorruptModel(std::string("model file: bad field '") + key + "': " + e.what());
    }
}

json neuron_to_json(const Neuron& n) {
    json w = json::array();
    for (double v : n.weights) w.push_back(real(v));
    return json{{"support", n.support}, {"weights", w}, {"bias", real(n.bias)}};
}

Neuron neuron_from_json(const json& j) {
    Neuron n;
    n.support = get_field<std::vector<std::uint32_t>>(j, "support");
    for (const auto& w : get_field<json>(j, "weights")) {
        if (!w.is_string()) throw CorruptModel("model file: weights must be decimal strings");
        n.weights.push_back(parse_exact(w.get<std::string>()));
    }
    n.bias = get_real(j, "bias");
    return n;
}

json model_to_json(const BoostedModel& m) {
    json stages = json::array();
    for (const auto& st : m.stages) {
        json layers = json::array();
        for (const auto& layer : st.network.layers()) {
            json neurons = json::array();
            for (const auto& n : layer) neurons.push_back(neuron_to_json(n));
            layers.push_back(neurons);
        }
        const auto& cm = st.cell_means;
        stages.push_back(json{{"layers", layers},
                              {"cell_means",
                               {{"mean0", real(cm.mean0)},
                                {"mean1", real(cm.mean1)},
                                {"count0", cm.count0},
                                {"count1", cm.count1},
                                {"fallback", real(cm.fallback)}}}});
    }
    const auto& arch = m.architecture();
    return json{{"architecture", {{"input_dim", arch.input_dim}, {"widths", arch.widths}, {"w0", arch.w0}}},
                {"gamma", real(m.gamma)},
                {"M", m.M()},
                {"meta",
                 {{"n", m.meta.n},
                  {"p", m.meta.p},
                  {"seed", std::to_string(m.meta.seed)},
                  {"rounds", m.meta.rounds},
                  {"fingerprint", m.meta.fingerprint}}},
                {"stages", stages}};
}

BoostedModel model_from_json(const json& j, double norm_tolerance) {
    const json a = get_field<json>(j, "architecture");
    Architecture arch;
    arch.input_dim = get_field<std::size_t>(a, "input_dim");
    arch.widths = get_field<std::vector<std::size_t>>(a, "widths");
    arch.w0 = get_field<std::size_t>(a, "w0");
    try {
        arch.validate();
    } catch (const Error& e) {
        throw CorruptModel(std::string("model file: ") + e.what());
    }

    BoostedModel m;
    m.gamma = get_real(j, "gamma");
    const json meta = get_field<json>(j, "meta");
    m.meta.n = get_field<std::size_t>(meta, "n");
    m.meta.p = get_field<std::size_t>(meta, "p");
    m.meta.seed = std::stoull(get_field<std::string>(meta, "seed"));
    m.meta.rounds = get_field<std::size_t>(meta, "rounds");
    m.meta.fingerprint = get_field<std::string>(meta, "fingerprint");

    const std::size_t M = get_field<std::size_t>(j, "M");
    const json stages = get_field<json>(j, "stages");
    if (!stages.is_array() || stages.size() != M) throw CorruptModel("model file: stage count does not match M");
    for (const auto& sj : stages) {
        BoostStage st{IndicatorNetwork(arch), {}};
        const json layers = get_field<json>(sj, "layers");
        if (!layers.is_array() || layers.size() != arch.depth()) throw CorruptModel("model file: layer count mismatch");
        for (std::size_t l = 0; l < arch.depth(); ++l) {
            if (!layers[l].is_array() || layers[l].size() != arch.width(l)) throw CorruptModel("model file: layer width mismatch");
            for (std::size_t h = 0; h < arch.width(l); ++h) {
                try {
                    st.network.set_neuron({l, h}, neuron_from_json(layers[l][h]), norm_tolerance);
                } catch (const CorruptModel&) {
                    throw;
                } catch (const Error& e) {
                    throw CorruptModel(std::string("model file: ") + e.what());
                }
            }
        }
        const json cm = get_field<json>(sj, "cell_means");
        st.cell_means.mean0 = get_real(cm, "mean0");
        st.cell_means.mean1 = get_real(cm, "mean1");
        st.cell_means.count0 = get_field<std::size_t>(cm, "count0");
        st.cell_means.count1 = get_field<std::size_t>(cm, "count1");
        st.cell_means.fallback = get_real(cm, "fallback");
        m.stages.push_back(std::move(st));
    }
    try {
        m.validate(norm_tolerance);
    } catch (const CorruptModel&) {
        throw;
    } catch (const Error& e) {
        throw CorruptModel(std::string("model file: ") + e.what());
    }
    return m;
}

} // namespace

std::string format_exact(double v) {
    if (!std::isfinite(v)) throw InvalidInput("format_exact: non-finite value");
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc()) throw InvalidInput("format_exact: conversion failed");
    return std::string(buf, ptr);
}

double parse_exact(const std::string& s) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
        throw CorruptModel("model file: bad real value '" + s + "'");
    }
    return v;
}

std::vector<double> ModelFile::predict(const Matrix& X) const {
    if (X.cols() != input_dim()) throw InvalidInput("predict: feature count does not match the model");
    if (!bagged()) return predict_boosted(base, X);
    BaggedModel b{members};
    return predict_bagged(b, X);
}

std::string serialize_model(const ModelFile& model) {
    json members = json::array();
    for (const auto& m : model.members) members.push_back(model_to_json(m));
    json doc{{"format", "neuro01-model"},
             {"version", kModelFormatVersion},
             {"kind", model.bagged() ? "bagged" : "boosted"},
             {"norm_tolerance", real(model.norm_tolerance)},
             {"features", model.feature_names},
             {"base", model_to_json(model.base)},
             {"members", members}};
    return doc.dump(1) + "\n";
}

ModelFile parse_model(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw CorruptModel(std::string("model file: invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || get_field<std::string>(doc, "format") != "neuro01-model") {
        throw CorruptModel("model file: not a neuro01 model");
    }
    if (get_field<int>(doc, "version") != kModelFormatVersion) throw CorruptModel("model file: unsupported version");
    ModelFile out;
    out.norm_tolerance = get_real(doc, "norm_tolerance");
    if (!(out.norm_tolerance > 0.0 && out.norm_tolerance < 0.1)) throw CorruptModel("model file: norm_tolerance out of range");
    out.feature_names = get_field<std::vector<std::string>>(doc, "features");
    out.base = model_from_json(get_field<json>(doc, "base"), out.norm_tolerance);
    for (const auto& mj : get_field<json>(doc, "members")) {
        out.members.push_back(model_from_json(mj, out.norm_tolerance));
        const auto& m = out.members.back();
        if (m.M() != out.base.M() || m.gamma != out.base.gamma || !(m.architecture() == out.base.architecture())) {
            throw CorruptModel("model file: bagging member differs in structure from the base");
        }
    }
    if (!out.feature_names.empty() && out.feature_names.size() != out.input_dim()) {
        throw CorruptModel("model file: feature name count does not match input dimension");
    }
    const std::string kind = get_field<std::string>(doc, "kind");
    if (kind != (out.bagged() ? "bagged" : "boosted")) throw CorruptModel("model file: kind does not match members");
    return out;
}

void save_model(const ModelFile& model, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path.string());
    out << serialize_model(model);
    if (!out) throw DataError("failed writing " + path.string());
}

ModelFile load_model(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open model file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_model(ss.str());
}

} // namespace neuro01
