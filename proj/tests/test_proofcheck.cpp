#include <gtest/gtest.h>

#include "gcpdl/audit.hpp"
#include "gcpdl/io.hpp"
#include "gcpdl/proofcheck.hpp"
#include "support.hpp"

using namespace gcpdl;
using testing_support::f;

namespace {

std::string sample(const std::string& name) { return read_text_file(std::string(GCPDL_SAMPLES_DIR) + "/proofs/" + name); }

} // namespace

TEST(ProofCheck, SingleModusPonens) {
    const Derivation d = parse_derivation("n: 3\npremise: p\npremise: p -> q\n1 premise p\n2 premise p -> q\n3 mp 1 2 q\n");
    EXPECT_TRUE(check_derivation(d, ProofSystem::Propositional).accepted);
}

TEST(ProofCheck, BadModusPonensMessage) {
    const Derivation d = parse_derivation("n: 3\npremise: p\n1 premise p\n2 mp 1 1 q\n");
    const Verdict v = check_derivation(d, ProofSystem::Propositional);
    EXPECT_FALSE(v.accepted);
    EXPECT_EQ(v.step, 2);
    EXPECT_EQ(v.reason, RejectReason::ModusPonensMismatch);
    EXPECT_EQ(v.message, "step 1 is not an implication with antecedent p and consequent q");
}

TEST(ProofCheck, IdentityFixture) {
    const Derivation d = parse_derivation(sample("identity.proof"));
    EXPECT_EQ(d.steps.size(), 9U);
    EXPECT_TRUE(check_derivation(d, ProofSystem::Propositional).accepted);
    for (int n = 2; n <= 5; ++n)
        for (const auto& s : d.steps) {
            const Formula line = parse_formula(to_string(s.claim), Chain(n));
            EXPECT_TRUE(check_consequence_prop({}, line, Chain(n)).holds) << to_string(s.claim);
        }
}

TEST(ProofCheck, MixedFixture) {
    const Derivation d = parse_derivation(sample("mixed.proof"));
    EXPECT_EQ(d.steps.size(), 20U);
    const Verdict v = check_derivation(d, ProofSystem::Propositional);
    EXPECT_TRUE(v.accepted) << v.message;
}

TEST(ProofCheck, ModalFixtureNeedsDynamicSystem) {
    const Derivation d = parse_derivation(sample("modal.proof"));
    EXPECT_TRUE(check_derivation(d, ProofSystem::Dynamic).accepted);
    const Verdict v = check_derivation(d, ProofSystem::Propositional);
    EXPECT_EQ(v.step, 1);
    EXPECT_EQ(v.reason, RejectReason::SchemaNotInSystem);
}

TEST(ProofCheck, BrokenFixture) {
    const Verdict v = check_derivation(parse_derivation(sample("broken.proof")), ProofSystem::Propositional);
    EXPECT_EQ(v.step, 3);
    EXPECT_EQ(v.reason, RejectReason::ModusPonensMismatch);
}

TEST(ProofCheck, ReasonCodes) {
    auto check = [](const std::string& body, ProofSystem sys = ProofSystem::Propositional, CheckOptions o = {}) {
        return check_derivation(parse_derivation("n: 3\n" + body), sys, o);
    };
    EXPECT_EQ(check("1 axiom A9 p").reason, RejectReason::UnknownSchema);
    EXPECT_EQ(check("1 axiom A1 p -> (q -> q)").reason, RejectReason::NotAnInstance);
    EXPECT_EQ(check("1 premise p").reason, RejectReason::NotAPremise);
    EXPECT_EQ(check("1 axiom A1 p -> (q -> p)\n2 mp 1 3 q").reason, RejectReason::BadReference);
    EXPECT_EQ(check("1 axiom A1 p -> (q -> p)\n2 mon 1 [a]p -> [a](q -> p)").reason, RejectReason::RuleDisabled);
    EXPECT_TRUE(check("1 axiom A1 p -> (q -> p)\n2 mon 1 [a]p -> [a](q -> p)", ProofSystem::Dynamic, {false, true})
                    .accepted);
    EXPECT_EQ(check("1 axiom A1 p -> (q -> p)\n2 mon 1 [a]p -> <a>(q -> p)", ProofSystem::Dynamic, {false, true}).reason,
              RejectReason::MonotonicityMismatch);
    EXPECT_EQ(check("1 axiom A2 p -> (q -> p)").reason, RejectReason::NotAnInstance);
    EXPECT_TRUE(check("1 axiom A2 p -> (q -> p)", ProofSystem::Propositional, {true, false}).accepted);
}

TEST(ProofCheck, D7VariantsAreDistinct) {
    const std::string corrected = "[a ^ b]p <-> (<a>#1 -> [b]p) & (<b>#1 -> [a]p)";
    auto check = [&](const std::string& id) {
        return check_derivation(parse_derivation("n: 3\n1 axiom " + id + " " + corrected), ProofSystem::Dynamic);
    };
    EXPECT_TRUE(check("D7/corrected").accepted);
    EXPECT_FALSE(check("D7/as-printed").accepted);
    EXPECT_FALSE(check("D7").accepted);
}

TEST(ProofCheck, Reserialization) {
    for (const char* name : {"identity.proof", "mixed.proof", "modal.proof"}) {
        const Derivation d = parse_derivation(sample(name));
        const Derivation again = parse_derivation(to_text(d));
        EXPECT_EQ(to_text(again), to_text(d));
        EXPECT_EQ(check_derivation(again, ProofSystem::Dynamic).accepted,
                  check_derivation(d, ProofSystem::Dynamic).accepted);
    }
}

TEST(ProofCheck, ParseErrors) {
    EXPECT_THROW(parse_derivation("1 premise p"), DerivationParseError);
    EXPECT_THROW(parse_derivation("n: 3\n2 premise p"), DerivationParseError);
    EXPECT_THROW(parse_derivation("n: 3\n1 guess p"), DerivationParseError);
    EXPECT_THROW(parse_derivation("n: 3\n1 premise p &"), DerivationParseError);
    EXPECT_THROW(parse_derivation("n: 3\nn: 4"), DerivationParseError);
    try {
        parse_derivation("n: 3\n\n// note\n1 mp x p");
        FAIL();
    } catch (const DerivationParseError& e) {
        EXPECT_EQ(e.line(), 4);
    }
}
