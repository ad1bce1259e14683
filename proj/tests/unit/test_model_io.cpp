#include <doctest.h>

#include <functional>

#include <json.hpp>

#include "../helpers.hpp"
#include "neuro01/bagging.hpp"
#include "neuro01/data.hpp"
#include "neuro01/errors.hpp"
#include "neuro01/fixtures.hpp"
#include "neuro01/model_io.hpp"

using namespace neuro01;
using nlohmann::json;

namespace {

ModelFile trained(bool bagged) {
    RandomStream rng(5);
    const Dataset d = generate_xor(60, 4, rng);
    TrainConfig cfg;
    cfg.M = 3;
    cfg.widths = {3, 2, 1};
    cfg.seed = 9;
    ModelFile f;
    f.feature_names = d.feature_names;
    f.base = train_round_robin(d.X, d.y, cfg, 3);
    if (bagged) f.members = fit_bagged(f.base, d, cfg, 3, 1, RandomStream(4)).members;
    return f;
}

std::string mutate(const ModelFile& f, const std::function<void(json&)>& edit) {
    json j = json::parse(serialize_model(f));
    edit(j);
    return j.dump(1);
}

} // namespace

TEST_CASE("exact decimal round trip") {
    RandomStream rng(1);
    for (int i = 0; i < 10000; ++i) {
        const double v = std::ldexp(rng.uniform(-1.0, 1.0), static_cast<int>(rng.index(120)) - 60);
        CHECK(parse_exact(format_exact(v)) == v);
    }
    for (double v : {0.0, -0.0, 1.0, 0.1, 1e-300, 5e-324, 1.7976931348623157e308}) {
        CHECK(parse_exact(format_exact(v)) == v);
    }
    CHECK(format_exact(0.1) == "0.1");
    CHECK_THROWS_AS(format_exact(std::nan("")), InvalidInput);
    CHECK_THROWS_AS(parse_exact("1.5x"), CorruptModel);
}

TEST_CASE("serialize, parse, serialize is byte identical") {
    for (bool bagged : {false, true}) {
        const ModelFile f = trained(bagged);
        const std::string text = serialize_model(f);
        const ModelFile back = parse_model(text);
        CHECK(back == f);
        CHECK(serialize_model(back) == text);
    }
}

TEST_CASE("loaded model predicts identically") {
    const ModelFile f = trained(true);
    const auto dir = testutil::scratch_dir("model_io");
    save_model(f, dir / "m.json");
    const ModelFile g = load_model(dir / "m.json");
    RandomStream rng(3);
    const Matrix X = testutil::random_matrix(50, 4, rng);
    CHECK(g.predict(X) == f.predict(X));
}

TEST_CASE("fixture file matches the built-in diamond model") {
    const std::string text = testutil::read_file(std::filesystem::path(NEURO01_SOURCE_DIR) / "fixtures/diamond.json");
    const ModelFile f = parse_model(text);
    CHECK(f == diamond_model());
    CHECK(f.norm_tolerance == kDiamondNormTolerance);
}

TEST_CASE("corrupt files are rejected") {
    const ModelFile f = trained(true);
    const std::string text = serialize_model(f);
    CHECK_THROWS_AS(parse_model(text.substr(0, text.size() / 2)), CorruptModel);
    CHECK_THROWS_AS(parse_model("[]"), CorruptModel);
    CHECK_THROWS_AS(parse_model(mutate(f, [](json& j) { j["version"] = 99; })), CorruptModel);
    CHECK_THROWS_AS(parse_model(mutate(f, [](json& j) { j["kind"] = "boosted"; })), CorruptModel);
    CHECK_THROWS_AS(parse_model(mutate(f, [](json& j) { j["members"][0]["gamma"] = "0.25"; })),
                    CorruptModel);
    CHECK_THROWS_AS(parse_model(mutate(f, [](json& j) { j["features"].push_back("extra"); })), CorruptModel);
    CHECK_THROWS_AS(parse_model(mutate(f, [](json& j) { j["norm_tolerance"] = "0.5"; })), CorruptModel);
    CHECK_THROWS_AS(parse_model(mutate(f, [](json& j) { j["base"]["gamma"] = "1.5"; })), CorruptModel);

    // Find a non-zero neuron and scale its weights off the unit sphere.
    const std::string bad = mutate(f, [](json& j) {
        for (auto& layer : j["base"]["stages"][0]["layers"]) {
            for (auto& n : layer) {
                if (!n["weights"].empty()) {
                    n["weights"][0] = "3";
                    return;
                }
            }
        }
    });
    CHECK(bad != serialize_model(f));
    CHECK_THROWS_AS(parse_model(bad), CorruptModel);
}
