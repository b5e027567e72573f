#include <gtest/gtest.h>

#include "gcpdl/audit.hpp"
#include "gcpdl/io.hpp"
#include "support.hpp"

using namespace gcpdl;
using testing_support::f;

namespace {

Bindings simple_bindings() {
    Bindings b;
    b.formulas.emplace("phi", Formula::var("p"));
    b.formulas.emplace("psi", Formula::var("q"));
    b.formulas.emplace("chi", Formula::var("r"));
    b.programs.emplace("pi", Program::atomic("a"));
    b.programs.emplace("pi0", Program::atomic("a"));
    b.programs.emplace("pi1", Program::atomic("b"));
    return b;
}

} // namespace

TEST(Schema, Catalogue) {
    EXPECT_EQ(axioms_of(ProofSystem::Propositional).size(), 5U);
    EXPECT_EQ(dynamic_schemata().size(), 17U);
    EXPECT_EQ(dynamic_schemata("as-printed").size(), 17U);
    EXPECT_EQ(find_schema("D7")->variant, "as-printed");
    EXPECT_EQ(find_schema("D7", "corrected")->variant, "corrected");
    EXPECT_EQ(find_schema("D99"), nullptr);
}

TEST(Schema, InstantiateA1) {
    const Chain c(3);
    EXPECT_EQ(instantiate_schema(*find_schema("A1"), simple_bindings(), c), f("p -> (q -> p)"));
}

TEST(Schema, InstantiateSequence) {
    const Chain c(3);
    EXPECT_EQ(instantiate_schema(*find_schema("D5"), simple_bindings(), c), f("[a;b]p <-> [a][b]p"));
}

TEST(Schema, InstantiateConstantAxiom) {
    const Chain c(3);
    Bindings b;
    b.constants.emplace("c", c.parse("1/2"));
    b.constants.emplace("d", c.parse("1/2"));
    b.op = ConstantOp::Implies;
    EXPECT_EQ(instantiate_schema(*find_schema("A5"), b, c), f("#1 <-> (#1/2 -> #1/2)"));
}

TEST(Schema, MissingBinding) {
    const Chain c(3);
    Bindings b;
    b.formulas.emplace("phi", Formula::var("p"));
    EXPECT_THROW(instantiate_schema(*find_schema("A1"), b, c), MissingBinding);
    EXPECT_THROW(instantiate_schema(*find_schema("A5"), b, c), MissingBinding);
}

TEST(Schema, MatchInstances) {
    const Chain c(3);
    const auto m = match_axiom_instance(*find_schema("A1"), f("p -> (q -> p)"), c);
    ASSERT_TRUE(m);
    EXPECT_EQ(m->formulas.at("phi"), f("p"));
    EXPECT_EQ(m->formulas.at("psi"), f("q"));
    EXPECT_FALSE(match_axiom_instance(*find_schema("A1"), f("p -> (q -> r)"), c));
    EXPECT_TRUE(match_axiom_instance(*find_schema("A5"), f("#1 <-> (#1/2 -> #1/2)"), c));
    EXPECT_FALSE(match_axiom_instance(*find_schema("A5"), f("#1/2 <-> (#1/2 -> #1/2)"), c));
    EXPECT_TRUE(match_axiom_instance(*find_schema("D5"), f("[a*;?(p)]q <-> [a*][?(p)]q"), c));
    EXPECT_FALSE(match_axiom_instance(*find_schema("D5"), f("[a;b]q <-> [a][a]q"), c));
    EXPECT_TRUE(match_axiom_instance(*find_schema("D3"), f("[a](#1/2 -> p) <-> (#1/2 -> [a]p)"), c));
    EXPECT_FALSE(match_axiom_instance(*find_schema("D3"), f("[a](q -> p) <-> (q -> [a]p)"), c));
}

TEST(Sampler, Deterministic) {
    SamplerConfig cfg;
    EXPECT_EQ(model_to_json(sample_model(cfg)), model_to_json(sample_model(cfg)));
}

TEST(Sampler, DensityExtremes) {
    SamplerConfig cfg;
    cfg.density = 0.0;
    ModelSampler zero(cfg);
    for (int i = 0; i < 10; ++i) {
        Model m = zero.next();
        for (const auto& [name, r] : m.programs()) EXPECT_TRUE(r.is_zero());
    }
    cfg.density = 1.0;
    cfg.max_states = 1;
    Model m = ModelSampler(cfg).next();
    for (const auto& [name, r] : m.programs()) EXPECT_EQ(r.support().size(), 2U);
}

TEST(Sampler, StateCap) {
    SamplerConfig cfg;
    cfg.max_states = 5;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
    cfg.force_states = true;
    EXPECT_NO_THROW(cfg.validate());
    cfg.max_states = 7;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
}

TEST(Audit, TestDiamondRefutedAtThree) {
    SamplerConfig cfg;
    cfg.n = 3;
    const AuditEntry e = find_counterexample(*find_schema("D16"), cfg, 10000);
    ASSERT_TRUE(e.refuted());
    const Counterexample& w = *e.witness;
    EXPECT_EQ(w.value, Chain(3).parse("1/2"));
    EXPECT_EQ(w.bindings.formulas.at("phi"), f("p"));
    EXPECT_EQ(w.bindings.formulas.at("psi"), f("p"));
    EXPECT_EQ(w.model.size(), 1);
    EXPECT_EQ(w.model.value("p", w.state), Chain(3).parse("1/2"));
    EXPECT_EQ(eval_formula(w.model, w.instance, w.state), w.value);
}

TEST(Audit, BoxFalseOrDiamondTrueRefutedAtThree) {
    SamplerConfig cfg;
    cfg.n = 3;
    const AuditEntry e = find_counterexample(*find_schema("D17"), cfg, 10000);
    ASSERT_TRUE(e.refuted());
    const Counterexample& w = *e.witness;
    EXPECT_EQ(w.value, Chain(3).parse("1/2"));
    EXPECT_EQ(w.model.size(), 1);
    EXPECT_EQ(w.model.find_program("a")->at(w.state, StateSet::singleton(w.state)), Chain(3).parse("1/2"));
    EXPECT_EQ(eval_formula(w.model, w.instance, w.state), w.value);
}

TEST(Audit, BoxOfOneNeverRefuted) {
    for (int n : {2, 3, 5}) {
        SamplerConfig cfg;
        cfg.n = n;
        EXPECT_FALSE(find_counterexample(*find_schema("D1"), cfg, 300).refuted());
    }
}

TEST(Audit, WitnessesReevaluate) {
    SamplerConfig cfg;
    cfg.n = 4;
    cfg.seed = 3;
    const AuditReport r = audit_all(cfg, 200);
    for (const auto& e : r.entries) {
        if (!e.witness) continue;
        const Counterexample& w = *e.witness;
        EXPECT_EQ(eval_formula(w.model, w.instance, w.state), w.value) << e.label();
        EXPECT_FALSE(w.value.is_one());
        if (w.premise) {
            EXPECT_TRUE(valid_in_model(w.model, *w.premise).valid) << e.label();
        }
    }
}

TEST(Audit, ReportsAreDeterministic) {
    SamplerConfig cfg;
    cfg.n = 3;
    cfg.seed = 21;
    EXPECT_EQ(audit_report_to_json(audit_all(cfg, 50)).dump(), audit_report_to_json(audit_all(cfg, 50)).dump());
}

TEST(Audit, EmptySchemaList) {
    EXPECT_TRUE(audit_schemata({}, SamplerConfig{}, 10).entries.empty());
}

TEST(Audit, ZeroBudgetRejected) {
    EXPECT_THROW(find_counterexample(*find_schema("D1"), SamplerConfig{}, 0), std::invalid_argument);
}

TEST(Consequence, Examples) {
    const Chain c3(3);
    EXPECT_TRUE(check_consequence_prop({f("p")}, f("p"), c3).holds);
    const ConsequenceResult r = check_consequence_prop({}, f("p | ~p"), c3);
    EXPECT_FALSE(r.holds);
    EXPECT_EQ(r.witness.at("p"), c3.parse("1/2"));
    EXPECT_TRUE(check_consequence_prop({f("p"), f("p -> q")}, f("q"), c3).holds);
    EXPECT_FALSE(check_consequence_prop({f("p -> q")}, f("q -> p"), c3).holds);
}

TEST(Consequence, Errors) {
    const Chain c3(3);
    EXPECT_THROW(check_consequence_prop({}, f("[a]p"), c3), ModalFormulaRejected);
    EXPECT_THROW(check_consequence_prop({}, f("p & q & r"), c3, 20), BudgetExceeded);
}

TEST(Consequence, MatchesOneStateModels) {
    SamplerConfig cfg;
    cfg.n = 3;
    cfg.variables = {"p", "q"};
    Random rng(4);
    FormulaGenerator gen(cfg, rng);
    const Chain c(3);
    for (int i = 0; i < 200; ++i) {
        const Formula phi = gen.formula(3, false);
        bool valid_everywhere = true;
        for (const auto& p : c.elements())
            for (const auto& q : c.elements()) {
                Model m(c, 1);
                m.set_value("p", 0, p);
                m.set_value("q", 0, q);
                valid_everywhere = valid_everywhere && valid_in_model(m, phi).valid;
            }
        EXPECT_EQ(check_consequence_prop({}, phi, c).holds, valid_everywhere) << to_string(phi);
    }
}

TEST(Equiv, FindsNonDuality) {
    SamplerConfig cfg;
    cfg.n = 2;
    const EquivReport r = equiv_check(f("<a>p", 2), f("~[a]~p", 2), cfg, 1000);
    ASSERT_TRUE(r.difference);
    EXPECT_EQ(eval_formula(r.difference->model, f("<a>p", 2), r.difference->state), r.difference->lhs);
}

TEST(Equiv, IdenticalAndDefinitional) {
    SamplerConfig cfg;
    EXPECT_FALSE(equiv_check(f("[a]p"), f("[a]p"), cfg, 200).difference);
    for (int n : {2, 3, 5}) {
        cfg.n = n;
        EXPECT_FALSE(equiv_check(f("[?(p)]q", n), f("p -> q", n), cfg, 300).difference);
    }
}

TEST(Search, Countermodel) {
    SamplerConfig cfg;
    EXPECT_TRUE(search_countermodel(f("p | ~p"), cfg, 100).witness);
    EXPECT_FALSE(search_countermodel(f("p -> p"), cfg, 100).witness);
}
