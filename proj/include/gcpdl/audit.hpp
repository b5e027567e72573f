#pragma once

// Empirical soundness audit: instantiate axiom schemata on random models and
// look for a state where an instance evaluates below 1. Also decides
// propositional consequence over L_n by enumerating valuations.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "gcpdl/chain.hpp"
#include "gcpdl/formula.hpp"
#include "gcpdl/model.hpp"
#include "gcpdl/printer.hpp"
#include "gcpdl/sampler.hpp"
#include "gcpdl/schema.hpp"
#include "gcpdl/semantics.hpp"

namespace gcpdl {

struct Counterexample {
    Model model;
    Bindings bindings;
    Formula instance;                // the refuted formula (a rule's conclusion)
    std::optional<Formula> premise;  // rules: the premise, valid in `model`
    int state;
    ChainValue value;
};

struct AuditEntry {
    std::string schema;
    std::string variant;
    int n = 0;
    std::size_t models_tested = 0;
    std::size_t instantiations_tested = 0;
    std::uint64_t seed = 0;
    std::optional<Counterexample> witness;

    bool refuted() const noexcept { return witness.has_value(); }
    std::string label() const { return variant.empty() ? schema : schema + "/" + variant; }
    std::string verdict() const { return refuted() ? "counterexample" : "no-counterexample-found"; }
};

struct AuditReport {
    SamplerConfig config;
    std::size_t budget = 0;
    std::vector<AuditEntry> entries;

    std::size_t counterexamples() const {
        std::size_t k = 0;
        for (const auto& e : entries) k += e.refuted();
        return k;
    }

    const AuditEntry* find(const std::string& schema, const std::string& variant = "") const {
        for (const auto& e : entries)
            if (e.schema == schema && e.variant == variant) return &e;
        return nullptr;
    }
};

/// Seed of the stream used for one schema, so entries do not depend on the
/// order in which schemata are audited.
inline std::uint64_t schema_seed(std::uint64_t base, const AxiomSchema& schema) {
    return base ^ stable_hash(schema.label());
}

namespace detail {

inline bool refutes(const Model& m, const Formula& conclusion, const std::optional<Formula>& premise) {
    Evaluator ev(m);
    if (premise && find_refuting_state(ev, *premise)) return false;
    return find_refuting_state(ev, conclusion).has_value();
}

// `m` restricted to the states in `keep`. Targets that leave `keep` are either
// dropped or, with `project`, cut down to `keep` (joining colliding entries).
inline Model restrict_model(const Model& m, const std::vector<int>& keep, bool project_targets) {
    std::vector<std::string> names;
    for (int s : keep) names.push_back(m.state_name(s));
    Model out(m.chain(), names);
    auto project = [&](std::uint32_t t, std::uint32_t& mapped) {
        mapped = 0;
        for (int u = 0; u < m.size(); ++u) {
            if (!((t >> u) & 1U)) continue;
            auto it = std::find(keep.begin(), keep.end(), u);
            if (it == keep.end()) {
                if (project_targets) continue;
                return false;
            }
            mapped |= std::uint32_t{1} << (it - keep.begin());
        }
        return true;
    };
    for (const auto& [name, r] : m.programs()) {
        ReachRelation q(m.chain(), out.space());
        for (std::size_t i = 0; i < keep.size(); ++i)
            for (std::uint32_t t = 0; t < m.space().subset_count(); ++t) {
                std::uint32_t mapped;
                if (r.raw(keep[i], t) && project(t, mapped))
                    q.set_raw(static_cast<int>(i), mapped, std::max(q.raw(static_cast<int>(i), mapped), r.raw(keep[i], t)));
            }
        out.set_program(name, std::move(q));
    }
    for (const auto& [var, values] : m.valuation())
        for (std::size_t i = 0; i < keep.size(); ++i) out.set_value(var, static_cast<int>(i), values[static_cast<std::size_t>(keep[i])]);
    return out;
}

} // namespace detail

/// Greedily removes states, relation entries and nonzero valuation values
/// while the instance stays refuted (and, for rules, the premise valid).
inline void shrink(Counterexample& cx) {
    auto still = [&](const Model& m) { return detail::refutes(m, cx.instance, cx.premise); };
    for (bool progress = true; progress;) {
        progress = false;
        for (int u = 0; u < cx.model.size() && cx.model.size() > 1; ++u) {
            std::vector<int> keep;
            for (int s = 0; s < cx.model.size(); ++s)
                if (s != u) keep.push_back(s);
            for (bool project : {true, false}) {
                Model candidate = detail::restrict_model(cx.model, keep, project);
                if (still(candidate)) {
                    cx.model = std::move(candidate);
                    progress = true;
                    --u;
                    break;
                }
            }
        }
        struct Entry {
            std::string name;
            int state;
            std::uint32_t target;
        };
        std::vector<Entry> entries;
        for (const auto& [name, r] : cx.model.programs())
            for (const auto& e : r.support()) entries.push_back({name, e.state, e.target.bits()});
        for (const auto& e : entries) {
            Model candidate = cx.model;
            candidate.program(e.name).set_raw(e.state, e.target, 0);
            if (still(candidate)) {
                cx.model = std::move(candidate);
                progress = true;
            }
        }
        std::vector<std::pair<std::string, int>> values;
        for (const auto& [var, column] : cx.model.valuation())
            for (int s = 0; s < cx.model.size(); ++s)
                if (!column[static_cast<std::size_t>(s)].is_zero()) values.emplace_back(var, s);
        for (const auto& [var, s] : values) {
            Model candidate = cx.model;
            candidate.set_value(var, s, candidate.chain().zero());
            if (still(candidate)) {
                cx.model = std::move(candidate);
                progress = true;
            }
        }
    }
    Evaluator ev(cx.model);
    const auto w = find_refuting_state(ev, cx.instance);
    cx.state = w->state;
    cx.value = w->value;
}

/// Runs over `budget` sampled models twice from the same seed: first with the
/// simplest binding only, then with `instances_per_model - 1` random bindings
/// per model. Stops at the first model with a state where an instance is below
/// 1; for rules, an instance only counts when its premise is valid in the
/// model. The witness is shrunk unless `minimize` is false.
inline AuditEntry find_counterexample(const AxiomSchema& schema, const SamplerConfig& cfg, std::size_t budget,
                                      bool minimize = true) {
    if (budget == 0) throw std::invalid_argument("budget must be positive");
    cfg.validate();
    const Chain chain(cfg.n);
    const std::uint64_t seed = schema_seed(cfg.seed, schema);
    AuditEntry entry{schema.id, schema.variant, cfg.n, 0, 0, seed, std::nullopt};

    Random rng(seed);
    const std::uint64_t model_seed = rng.below(~std::uint64_t{0});
    InstanceGenerator instances(cfg, rng);

    for (int pass = 0; pass < 2; ++pass) {
        const int per_model = pass == 0 ? 1 : cfg.instances_per_model - 1;
        if (per_model <= 0) break;
        ModelSampler sampler(cfg, model_seed);
        for (std::size_t i = 0; i < budget; ++i) {
            Model model = sampler.next();
            if (pass == 0) ++entry.models_tested;
            Evaluator ev(model);
            for (int k = 0; k < per_model; ++k) {
                Bindings b = pass == 0 ? instances.simplest(schema) : instances.random(schema);
                Formula conclusion = instantiate_schema(schema, b, chain);
                ++entry.instantiations_tested;
                std::optional<Formula> premise;
                if (schema.kind == SchemaKind::Rule) {
                    premise = instantiate_premise(schema, b, chain);
                    if (find_refuting_state(ev, *premise)) continue;
                }
                if (auto w = find_refuting_state(ev, conclusion)) {
                    entry.witness = Counterexample{std::move(model), std::move(b), conclusion, premise, w->state, w->value};
                    if (pass == 0) entry.models_tested = i + 1;
                    if (minimize) shrink(*entry.witness);
                    return entry;
                }
            }
        }
    }
    return entry;
}

inline AuditReport audit_schemata(const std::vector<const AxiomSchema*>& schemata, const SamplerConfig& cfg,
                                  std::size_t budget) {
    AuditReport report{cfg, budget, {}};
    for (const auto* s : schemata) report.entries.push_back(find_counterexample(*s, cfg, budget));
    return report;
}

/// Every schema and both candidate monotonicity rules, in listing order.
inline AuditReport audit_all(const SamplerConfig& cfg, std::size_t budget) {
    std::vector<const AxiomSchema*> all;
    for (const auto& s : all_schemata()) all.push_back(&s);
    return audit_schemata(all, cfg, budget);
}

/// The seventeen dynamic schemata with the given reading of D7.
inline std::vector<const AxiomSchema*> dynamic_schemata(const std::string& d7_variant = "corrected") {
    std::vector<const AxiomSchema*> out;
    for (const auto& s : all_schemata()) {
        if (s.system != ProofSystem::Dynamic || s.kind == SchemaKind::Rule) continue;
        if (s.id == "D7" && s.variant != d7_variant) continue;
        out.push_back(&s);
    }
    return out;
}

// ---- propositional consequence --------------------------------------------

class ModalFormulaRejected : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultValuationLimit = 10'000'000;

struct ConsequenceResult {
    bool holds = true;
    std::map<std::string, ChainValue> witness;  // falsifying valuation when !holds
    std::uint64_t valuations = 0;
};

namespace detail {

inline void collect_variables(const Formula& f, std::set<std::string>& out) {
    switch (f.kind()) {
    case FormulaKind::Var: out.insert(f.name()); break;
    case FormulaKind::Const: break;
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Implies:
        collect_variables(f.lhs(), out);
        collect_variables(f.rhs(), out);
        break;
    default:
        throw ModalFormulaRejected("modal formula " + to_string(f) + " in a propositional consequence check");
    }
}

inline int valuate(const Formula& f, const std::map<std::string, int>& nu, const Chain& chain) {
    switch (f.kind()) {
    case FormulaKind::Var: return nu.at(f.name());
    case FormulaKind::Const:
        if (f.value().order() != chain.order()) throw ContextMismatch("constant from a different chain");
        return f.value().numerator();
    case FormulaKind::And: return kernel::meet(valuate(f.lhs(), nu, chain), valuate(f.rhs(), nu, chain));
    case FormulaKind::Or: return kernel::join(valuate(f.lhs(), nu, chain), valuate(f.rhs(), nu, chain));
    case FormulaKind::Implies:
        return kernel::implies(valuate(f.lhs(), nu, chain), valuate(f.rhs(), nu, chain), chain.top());
    default: throw ModalFormulaRejected("modal formula in a propositional consequence check");
    }
}

} // namespace detail

/// Theta entails phi over L_n iff every valuation sending all of Theta to 1
/// sends phi to 1.
inline ConsequenceResult check_consequence_prop(const std::vector<Formula>& theta, const Formula& phi, const Chain& chain,
                                                std::uint64_t limit = kDefaultValuationLimit) {
    std::set<std::string> vars;
    for (const auto& t : theta) detail::collect_variables(t, vars);
    detail::collect_variables(phi, vars);

    std::uint64_t total = 1;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        total *= static_cast<std::uint64_t>(chain.order());
        if (total > limit)
            throw BudgetExceeded(std::to_string(chain.order()) + "^" + std::to_string(vars.size()) +
                                 " valuations exceed the limit of " + std::to_string(limit));
    }

    const std::vector<std::string> names(vars.begin(), vars.end());
    std::map<std::string, int> nu;
    for (const auto& v : names) nu[v] = 0;
    ConsequenceResult result;
    for (std::uint64_t code = 0; code < total; ++code) {
        std::uint64_t c = code;
        for (const auto& v : names) {
            nu[v] = static_cast<int>(c % static_cast<std::uint64_t>(chain.order()));
            c /= static_cast<std::uint64_t>(chain.order());
        }
        ++result.valuations;
        bool premises = true;
        for (const auto& t : theta)
            if (detail::valuate(t, nu, chain) != chain.top()) {
                premises = false;
                break;
            }
        if (premises && detail::valuate(phi, nu, chain) != chain.top()) {
            result.holds = false;
            for (const auto& [k, v] : nu) result.witness.emplace(k, chain.value(v));
            return result;
        }
    }
    return result;
}

// ---- model search for single formulas --------------------------------------

struct Difference {
    Model model;
    int state;
    ChainValue lhs;
    ChainValue rhs;
};

struct EquivReport {
    std::size_t models_tested = 0;
    std::optional<Difference> difference;
};

/// Searches sampled models for a state where `a` and `b` take different values.
inline EquivReport equiv_check(const Formula& a, const Formula& b, const SamplerConfig& cfg, std::size_t budget) {
    cfg.validate();
    ModelSampler sampler(cfg);
    EquivReport report;
    for (std::size_t i = 0; i < budget; ++i) {
        Model m = sampler.next();
        ++report.models_tested;
        Evaluator ev(m);
        const auto& va = ev.raw_values(a);
        const auto& vb = ev.raw_values(b);
        for (int s = 0; s < m.size(); ++s) {
            if (va[s] != vb[s]) {
                ChainValue x = m.chain().value(va[s]);
                ChainValue y = m.chain().value(vb[s]);
                report.difference = Difference{std::move(m), s, x, y};
                return report;
            }
        }
    }
    return report;
}

struct ValiditySearch {
    std::size_t models_tested = 0;
    std::optional<Counterexample> witness;
};

/// Searches sampled models for a state where `f` is below 1.
inline ValiditySearch search_countermodel(const Formula& f, const SamplerConfig& cfg, std::size_t budget) {
    cfg.validate();
    ModelSampler sampler(cfg);
    ValiditySearch out;
    for (std::size_t i = 0; i < budget; ++i) {
        Model m = sampler.next();
        ++out.models_tested;
        Evaluator ev(m);
        if (auto w = find_refuting_state(ev, f)) {
            out.witness = Counterexample{std::move(m), {}, f, std::nullopt, w->state, w->value};
            return out;
        }
    }
    return out;
}

} // namespace gcpdl
