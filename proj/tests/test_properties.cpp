#include <gtest/gtest.h>

#include "laws.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace gcpdl;

TEST(Properties, ChainLawsExhaustive) {
    for (int n = 2; n <= 12; ++n) {
        const auto v = laws::chain_violation(n);
        EXPECT_FALSE(v) << "n=" << n << ": " << *v;
    }
}

TEST(Properties, RelationLaws) {
    Random rng(2024);
    for (int n : {2, 3, 5}) {
        const Chain c(n);
        for (int trial = 0; trial < 150; ++trial) {
            const StateSpace sp(1 + trial % 3);
            const auto v = laws::relation_violation(rng, c, sp);
            ASSERT_FALSE(v) << "n=" << n << " trial " << trial << ": " << *v;
        }
    }
}

TEST(Properties, ParallelMonotoneInFirstArgument) {
    Random rng(77);
    const Chain c(3);
    for (int trial = 0; trial < 200; ++trial) {
        const StateSpace sp(1 + trial % 3);
        const ReachRelation r = testing_support::random_relation(rng, c, sp);
        const ReachRelation q = testing_support::random_relation(rng, c, sp);
        EXPECT_TRUE(leq(parallel(r, q), parallel(testing_support::random_above(rng, r), q)));
    }
}

TEST(Properties, CachedEvaluationMatchesFreshEvaluator) {
    SamplerConfig cfg;
    cfg.seed = 61;
    ModelSampler sampler(cfg);
    Random rng(61);
    FormulaGenerator gen(cfg, rng);
    for (int trial = 0; trial < 100; ++trial) {
        Model m = sampler.next();
        Evaluator shared(m);
        for (int k = 0; k < 5; ++k) {
            const Formula phi = gen.formula(3);
            for (int s = 0; s < m.size(); ++s) ASSERT_EQ(shared.eval(phi, s), eval_formula(m, phi, s)) << to_string(phi);
        }
    }
}

TEST(Properties, PrintParseRoundTrip) {
    for (int n : {2, 3, 7}) {
        SamplerConfig cfg;
        cfg.n = n;
        Random rng(static_cast<std::uint64_t>(n));
        FormulaGenerator gen(cfg, rng);
        for (int trial = 0; trial < 300; ++trial) {
            const Formula phi = gen.formula(4);
            ASSERT_EQ(parse_formula(to_string(phi), Chain(n)), phi) << to_string(phi);
            const Program p = gen.program(3);
            ASSERT_EQ(parse_program(to_string(p), Chain(n)), p) << to_string(p);
        }
    }
}

TEST(Properties, ClosureIdempotentAndSubformulaClosed) {
    SamplerConfig cfg;
    Random rng(314);
    FormulaGenerator gen(cfg, rng);
    const Chain c(3);
    for (int trial = 0; trial < 150; ++trial) {
        const Formula phi = gen.formula(4);
        const FormulaSet g = fl_closure(phi, c);
        EXPECT_TRUE(g.contains(phi));
        EXPECT_EQ(fl_closure(g, c), g);
        for (const auto& x : g) {
            for (const auto& sub : immediate_subformulas(x)) EXPECT_TRUE(g.contains(sub)) << to_string(x);
            for (const auto& next : closure_successors(x, c)) EXPECT_TRUE(g.contains(next)) << to_string(x);
        }
    }
}

TEST(Properties, ClosureMonotone) {
    SamplerConfig cfg;
    Random rng(315);
    FormulaGenerator gen(cfg, rng);
    const Chain c(3);
    for (int trial = 0; trial < 100; ++trial) {
        const Formula a = gen.formula(3);
        const Formula b = gen.formula(3);
        const FormulaSet both = fl_closure(FormulaSet{a, b}, c);
        EXPECT_TRUE(fl_closure(a, c).subset_of(both));
        EXPECT_TRUE(fl_closure(Formula::conj(a, b), c).contains(a));
    }
}

TEST(Properties, BoxMonotoneInBody) {
    for (int n : {2, 3, 4}) {
        SamplerConfig cfg;
        cfg.n = n;
        cfg.seed = 400 + static_cast<std::uint64_t>(n);
        ModelSampler sampler(cfg);
        const Formula weak = testing_support::f("p & q", n);
        const Formula strong = testing_support::f("p | q", n);
        for (int i = 0; i < 100; ++i) {
            Model m = sampler.next();
            Evaluator ev(m);
            for (const char* pi : {"a", "a;b", "a ^ b", "a*"}) {
                const Program p = testing_support::prog(pi, n);
                for (int s = 0; s < m.size(); ++s) {
                    EXPECT_LE(ev.eval(Formula::box(p, weak), s), ev.eval(Formula::box(p, strong), s));
                    EXPECT_LE(ev.eval(Formula::diamond(p, weak), s), ev.eval(Formula::diamond(p, strong), s));
                }
            }
        }
    }
}
