#include <gtest/gtest.h>

#include "gcpdl/filtration.hpp"
#include "gcpdl/io.hpp"
#include "gcpdl/sampler.hpp"
#include "support.hpp"

using namespace gcpdl;
using testing_support::f;

namespace {

std::string model_path(const std::string& name) { return std::string(GCPDL_SAMPLES_DIR) + "/models/" + name; }

bool same_model(const Model& a, const Model& b) { return model_to_json(a) == model_to_json(b); }

} // namespace

TEST(ModelJson, SamplesLoad) {
    const Model half = load_model(model_path("half.json"));
    EXPECT_EQ(half.chain().order(), 3);
    EXPECT_EQ(half.value("p", 0), Chain(3).parse("1/2"));
    const Model fork = load_model(model_path("fork.json"));
    EXPECT_TRUE(fork.find_program("a")->at(0, StateSet{1, 2}).is_one());
    EXPECT_NO_THROW(load_model(model_path("workers.json")));
}

TEST(ModelJson, RoundTrip) {
    SamplerConfig cfg;
    cfg.max_states = 4;
    ModelSampler sampler(cfg);
    for (int i = 0; i < 50; ++i) {
        const Model m = sampler.next();
        const Model back = model_from_json(json::parse(model_to_json(m).dump()));
        EXPECT_TRUE(same_model(m, back));
        for (const auto& [name, r] : m.programs()) EXPECT_EQ(*back.find_program(name), r);
    }
}

TEST(ModelJson, QuotientRoundTrip) {
    SamplerConfig cfg;
    cfg.seed = 2;
    ModelSampler sampler(cfg);
    for (int i = 0; i < 30; ++i) {
        const Model m = sampler.next();
        const FiltrationResult fr = quotient(m, f("<a>p | [b]q"));
        const json j = quotient_to_json(m, fr);
        EXPECT_TRUE(j.contains("classes"));
        const Model back = model_from_json(json::parse(j.dump()));
        EXPECT_TRUE(same_model(back, fr.quotient));
    }
}

TEST(ModelJson, FormatErrors) {
    auto bad = [](const char* text) { return model_from_json(json::parse(text)); };
    EXPECT_THROW(bad("[]"), ModelFormatError);
    EXPECT_THROW(bad(R"({"states": ["s"]})"), ModelFormatError);
    EXPECT_THROW(bad(R"({"n": 3, "states": []})"), ModelFormatError);
    EXPECT_THROW(bad(R"({"n": 3, "states": ["a","b","c","d","e","f","g","h","i","j","k"]})"), ModelFormatError);
    EXPECT_THROW(bad(R"({"n": 3, "states": ["s"], "valuation": {"p": {"t": "1"}}})"), ModelFormatError);
    EXPECT_THROW(bad(R"({"n": 3, "states": ["s"], "valuation": {"p": {"s": 1}}})"), ModelFormatError);
    EXPECT_THROW(bad(R"({"n": 4, "states": ["s"], "valuation": {"p": {"s": "1/2"}}})"), NotAChainElement);
    EXPECT_THROW(bad(R"({"n": 3, "states": ["s"], "programs": {"a": [{"from": "s", "to": ["s"]}]}})"),
                 ModelFormatError);
    EXPECT_THROW(bad(R"({"n": 3, "states": ["s"], "programs": {"a": [
        {"from": "s", "to": ["s"], "value": "1"}, {"from": "s", "to": ["s"], "value": "1/2"}]}})"),
                 ModelFormatError);
    EXPECT_THROW(load_model("/nonexistent/model.json"), std::runtime_error);
}

TEST(ModelJson, EmptyTargetsAndZeroOmission) {
    const Model m = model_from_json(json::parse(R"({"n": 3, "states": ["s", "t"],
        "programs": {"a": [{"from": "t", "to": [], "value": "1/2"}, {"from": "s", "to": ["t"], "value": "0"}]}})"));
    EXPECT_EQ(m.find_program("a")->at(1, StateSet{}), Chain(3).parse("1/2"));
    EXPECT_EQ(model_to_json(m)["programs"]["a"].size(), 1U);
}

TEST(Report, AuditLayout) {
    AuditReport r;
    r.budget = 5;
    AuditEntry e;
    e.schema = "D1";
    e.n = 3;
    r.entries.push_back(e);
    const json j = audit_report_to_json(r);
    EXPECT_EQ(j["budget"], 5);
    EXPECT_EQ(j["counterexamples"], 0);
    EXPECT_EQ(j["entries"][0]["verdict"], "no-counterexample-found");
    EXPECT_FALSE(j["entries"][0].contains("witness"));
}

TEST(Report, DotListsClasses) {
    const Model m = load_model(model_path("fork.json"));
    const FiltrationResult fr = quotient(m, f("<a>p", 2));
    const std::string dot = quotient_to_dot(m, fr);
    EXPECT_EQ(dot.rfind("digraph", 0), 0U);
    EXPECT_NE(dot.find("c0"), std::string::npos);
}
