#pragma once

// Seeded generators for random models and random schema instantiations.
// Everything here draws from a single std::mt19937_64 and only uses its raw
// output, so streams are reproducible across standard libraries.

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "gcpdl/chain.hpp"
#include "gcpdl/formula.hpp"
#include "gcpdl/model.hpp"
#include "gcpdl/schema.hpp"

namespace gcpdl {

inline constexpr int kDefaultStateCap = 4;
inline constexpr int kForcedStateCap = 6;

struct SamplerConfig {
    int n = 3;
    int max_states = 3;
    double density = 0.5;  // probability that a relation entry is nonzero
    std::vector<std::string> programs{"a", "b"};
    std::vector<std::string> variables{"p", "q"};
    int instances_per_model = 3;
    std::uint64_t seed = 0;
    bool force_states = false;

    void validate() const {
        const int cap = force_states ? kForcedStateCap : kDefaultStateCap;
        if (n < 2) throw std::invalid_argument("chain order must be at least 2");
        if (max_states < 1 || max_states > cap)
            throw std::invalid_argument("max_states must lie in [1, " + std::to_string(cap) + "]" +
                                        (force_states ? "" : " (use --force-states for up to 6)"));
        if (density < 0.0 || density > 1.0) throw std::invalid_argument("density must lie in [0, 1]");
        if (programs.empty() || variables.empty()) throw std::invalid_argument("need at least one program and variable");
        if (instances_per_model < 1) throw std::invalid_argument("instances_per_model must be positive");
    }
};

/// FNV-1a, used to derive per-schema streams from the base seed.
inline std::uint64_t stable_hash(std::string_view s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

class Random {
public:
    explicit Random(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, bound).
    std::uint64_t below(std::uint64_t bound) {
        if (bound == 0) throw std::invalid_argument("empty range");
        // Rejection sampling keeps the draw unbiased.
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
        std::uint64_t x;
        do x = engine_();
        while (x >= limit);
        return x % bound;
    }

    int between(int lo, int hi) { return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1))); }

    bool chance(double p) {
        if (p <= 0.0) return false;
        if (p >= 1.0) return true;
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53 < p;
    }

    template <class T>
    const T& pick(const std::vector<T>& v) {
        return v[static_cast<std::size_t>(below(v.size()))];
    }

private:
    std::mt19937_64 engine_;
};

/// Draws models with 1..max_states states. Each relation entry (s, T) is
/// nonzero with probability `density`, then uniform over the nonzero chain
/// values; valuations are uniform over the chain.
class ModelSampler {
public:
    explicit ModelSampler(const SamplerConfig& cfg) : cfg_(cfg), chain_(cfg.n), rng_(cfg.seed) { cfg.validate(); }
    ModelSampler(const SamplerConfig& cfg, std::uint64_t seed) : cfg_(cfg), chain_(cfg.n), rng_(seed) { cfg.validate(); }

    Model next() { return next(rng_.between(1, cfg_.max_states)); }

    Model next(int states) {
        Model m(chain_, states);
        const std::uint32_t subsets = m.space().subset_count();
        for (const auto& name : cfg_.programs) {
            ReachRelation r(chain_, m.space());
            for (int s = 0; s < states; ++s)
                for (std::uint32_t t = 0; t < subsets; ++t)
                    if (rng_.chance(cfg_.density)) r.set_raw(s, t, rng_.between(1, chain_.top()));
            m.set_program(name, std::move(r));
        }
        for (const auto& var : cfg_.variables)
            for (int s = 0; s < states; ++s) m.set_value(var, s, chain_.value(rng_.between(0, chain_.top())));
        return m;
    }

private:
    SamplerConfig cfg_;
    Chain chain_;
    Random rng_;
};

inline Model sample_model(const SamplerConfig& cfg) { return ModelSampler(cfg).next(); }

/// Random formulas and programs over the configured vocabulary.
class FormulaGenerator {
public:
    FormulaGenerator(const SamplerConfig& cfg, Random& rng) : cfg_(cfg), chain_(cfg.n), rng_(&rng) {}

    Formula formula(int depth, bool modal = true) {
        if (depth <= 0 || rng_->below(4) == 0) {
            if (rng_->below(4) == 0) return Formula::constant(chain_.value(rng_->between(0, chain_.top())));
            return Formula::var(rng_->pick(cfg_.variables));
        }
        const int choices = modal ? 6 : 4;
        switch (rng_->below(choices)) {
        case 0: return Formula::conj(formula(depth - 1, modal), formula(depth - 1, modal));
        case 1: return Formula::disj(formula(depth - 1, modal), formula(depth - 1, modal));
        case 2: return Formula::implies(formula(depth - 1, modal), formula(depth - 1, modal));
        case 3: return Formula::negation(formula(depth - 1, modal), chain_);
        case 4: return Formula::box(program(depth - 1), formula(depth - 1, modal));
        default: return Formula::diamond(program(depth - 1), formula(depth - 1, modal));
        }
    }

    Program program(int depth) {
        if (depth <= 0 || rng_->below(3) == 0) return Program::atomic(rng_->pick(cfg_.programs));
        switch (rng_->below(5)) {
        case 0: return Program::choice(program(depth - 1), program(depth - 1));
        case 1: return Program::parallel(program(depth - 1), program(depth - 1));
        case 2: return Program::seq(program(depth - 1), program(depth - 1));
        case 3: return Program::star(program(depth - 1));
        default: return Program::test(formula(depth - 1));
        }
    }

    ChainValue constant() { return chain_.value(rng_->between(0, chain_.top())); }

private:
    SamplerConfig cfg_;
    Chain chain_;
    Random* rng_;
};

/// Bindings for schema metavariables. The first binding of every round is the
/// simplest one (formulas to the first variable, programs to the atoms in
/// order, constants to the chain's midpoint); later ones mix a fixed
/// adversarial pool with random trees of depth <= 3.
class InstanceGenerator {
public:
    InstanceGenerator(const SamplerConfig& cfg, Random& rng) : cfg_(cfg), chain_(cfg.n), rng_(&rng), gen_(cfg, rng) {
        const Formula p = Formula::var(cfg.variables.front());
        const Formula q = Formula::var(cfg.variables.size() > 1 ? cfg.variables[1] : cfg.variables.front());
        const Program a = Program::atomic(cfg.programs.front());
        const Program b = Program::atomic(cfg.programs.size() > 1 ? cfg.programs[1] : cfg.programs.front());
        pool_formulas_ = {p,
                          q,
                          Formula::constant(mid()),
                          Formula::negation(p, chain_),
                          Formula::conj(p, q),
                          Formula::disj(p, q),
                          Formula::implies(p, q),
                          Formula::diamond(a, p),
                          Formula::box(a, p),
                          Formula::box(Program::star(a), p)};
        pool_programs_ = {a, b, Program::star(a), Program::seq(a, b), Program::choice(a, b), Program::parallel(a, b),
                          Program::test(p)};
    }

    Bindings simplest(const AxiomSchema& schema) const {
        Bindings b;
        for (const auto& v : formula_metavariables()) b.formulas.emplace(v, pool_formulas_[0]);
        b.programs.emplace("pi", pool_programs_[0]);
        b.programs.emplace("pi0", pool_programs_[0]);
        b.programs.emplace("pi1", pool_programs_[1]);
        for (const auto& v : constant_metavariables()) b.constants.emplace(v, mid());
        b.op = ConstantOp::Implies;
        if (schema.kind == SchemaKind::Rule) bind_rule_premise(b, 0);
        return b;
    }

    Bindings random(const AxiomSchema& schema) {
        Bindings b;
        for (const auto& v : formula_metavariables())
            b.formulas.emplace(v, rng_->below(2) ? rng_->pick(pool_formulas_) : gen_.formula(3, schema.system == ProofSystem::Dynamic));
        for (const auto& v : program_metavariables())
            b.programs.emplace(v, rng_->below(2) ? rng_->pick(pool_programs_) : gen_.program(2));
        for (const auto& v : constant_metavariables()) b.constants.emplace(v, gen_.constant());
        b.op = static_cast<ConstantOp>(rng_->below(3));
        if (schema.kind == SchemaKind::Rule) bind_rule_premise(b, static_cast<int>(rng_->below(3)));
        return b;
    }

    ChainValue mid() const { return chain_.value(chain_.top() / 2); }

private:
    // A rule only says something when its premise holds, so psi is usually
    // tied to phi in a way that makes phi -> psi valid.
    void bind_rule_premise(Bindings& b, int mode) const {
        const Formula& phi = b.formulas.at("phi");
        const Formula q = Formula::var(cfg_.variables.size() > 1 ? cfg_.variables[1] : cfg_.variables.front());
        switch (mode) {
        case 0: b.formulas.insert_or_assign("psi", Formula::disj(phi, q)); break;
        case 1: b.formulas.insert_or_assign("psi", phi); break;
        default: b.formulas.insert_or_assign("phi", Formula::conj(b.formulas.at("psi"), q)); break;
        }
    }

    SamplerConfig cfg_;
    Chain chain_;
    Random* rng_;
    FormulaGenerator gen_;
    std::vector<Formula> pool_formulas_;
    std::vector<Program> pool_programs_;
};

} // namespace gcpdl
