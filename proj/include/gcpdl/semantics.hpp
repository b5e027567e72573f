#pragma once

// Model checking: the interpretation of formulas at states and of programs
// as reachable relations.
//
//   [pi]phi at s  = inf_T ( R_pi(s, T) -> inf_{t in T} phi(t) )
//   <pi>phi at s  = sup_T ( R_pi(s, T) (.) inf_{t in T} phi(t) )
//
// T ranges over every subset, including the empty one, whose inner infimum is 1.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "gcpdl/chain.hpp"
#include "gcpdl/formula.hpp"
#include "gcpdl/model.hpp"
#include "gcpdl/printer.hpp"
#include "gcpdl/relations.hpp"

namespace gcpdl {

/// Memoizing evaluator bound to one model. Program relations are
/// materialized once per compound program; formula values once per formula,
/// for all states at a time. Not thread-safe; use one per task.
class Evaluator {
public:
    explicit Evaluator(const Model& model, RelationOptions opts = {}) : model_(&model), opts_(opts) {}

    const Model& model() const noexcept { return *model_; }

    ChainValue eval(const Formula& f, int state) {
        check_state(state);
        return model_->chain().value(raw_values(f)[static_cast<std::size_t>(state)]);
    }

    std::vector<ChainValue> values(const Formula& f) {
        const auto& raw = raw_values(f);
        std::vector<ChainValue> out;
        out.reserve(raw.size());
        for (auto v : raw) out.push_back(model_->chain().value(v));
        return out;
    }

    ChainValue eval(const Program& p, int state, StateSet target) {
        check_state(state);
        if (!target.subset_of(model_->space().all())) throw std::out_of_range("target set outside the state space");
        return relation(p).at(state, target);
    }

    const ReachRelation& relation(const Program& p) {
        if (auto it = programs_.find(p); it != programs_.end()) return it->second;
        ReachRelation r = build(p);
        return programs_.emplace(p, std::move(r)).first->second;
    }

    /// Raw numerators of `f` at every state.
    const std::vector<std::uint8_t>& raw_values(const Formula& f) {
        if (auto it = formulas_.find(f); it != formulas_.end()) return it->second;
        std::vector<std::uint8_t> v = compute(f);
        return formulas_.emplace(f, std::move(v)).first->second;
    }

    /// Atomic programs that were referenced but are absent from the model.
    const std::vector<std::string>& warnings() const noexcept { return warnings_; }

    std::size_t cached_formulas() const noexcept { return formulas_.size(); }

private:
    void check_state(int s) const {
        if (s < 0 || s >= model_->size()) throw std::out_of_range("state index " + std::to_string(s) + " out of range");
    }

    // inf_{t in T} v[t] for every T, with the empty infimum equal to 1.
    std::vector<std::uint8_t> infima(const std::vector<std::uint8_t>& v) const {
        const std::uint32_t subsets = model_->space().subset_count();
        std::vector<std::uint8_t> inf(subsets);
        inf[0] = static_cast<std::uint8_t>(model_->chain().top());
        for (std::uint32_t m = 1; m < subsets; ++m)
            inf[m] = static_cast<std::uint8_t>(kernel::meet(inf[m & (m - 1)], v[static_cast<std::size_t>(std::countr_zero(m))]));
        return inf;
    }

    std::vector<std::uint8_t> compute(const Formula& f) {
        const int n = model_->size();
        const int top = model_->chain().top();
        std::vector<std::uint8_t> out(static_cast<std::size_t>(n));
        switch (f.kind()) {
        case FormulaKind::Var:
            for (int s = 0; s < n; ++s) out[s] = static_cast<std::uint8_t>(model_->value(f.name(), s).numerator());
            break;
        case FormulaKind::Const:
            if (f.value().order() != model_->chain().order())
                throw ContextMismatch("constant #" + f.value().to_string() + " belongs to L_" +
                                      std::to_string(f.value().order()) + ", model is over L_" +
                                      std::to_string(model_->chain().order()));
            std::fill(out.begin(), out.end(), static_cast<std::uint8_t>(f.value().numerator()));
            break;
        case FormulaKind::And:
        case FormulaKind::Or:
        case FormulaKind::Implies: {
            const std::vector<std::uint8_t>& a = raw_values(f.lhs());
            const std::vector<std::uint8_t>& b = raw_values(f.rhs());
            for (int s = 0; s < n; ++s) {
                int v = f.kind() == FormulaKind::And ? kernel::meet(a[s], b[s])
                        : f.kind() == FormulaKind::Or ? kernel::join(a[s], b[s])
                                                       : kernel::implies(a[s], b[s], top);
                out[s] = static_cast<std::uint8_t>(v);
            }
            break;
        }
        case FormulaKind::Box:
        case FormulaKind::Diamond: {
            const std::vector<std::uint8_t> inf = infima(raw_values(f.body()));
            const ReachRelation& r = relation(f.program());
            const bool box = f.kind() == FormulaKind::Box;
            const std::uint32_t subsets = model_->space().subset_count();
            for (int s = 0; s < n; ++s) {
                int acc = box ? top : 0;
                for (std::uint32_t m = 0; m < subsets; ++m) {
                    const int rv = r.raw(s, m);
                    if (box) {
                        if (rv) acc = kernel::meet(acc, kernel::implies(rv, inf[m], top));
                    } else {
                        acc = kernel::join(acc, kernel::conj(rv, inf[m], top));
                    }
                }
                out[s] = static_cast<std::uint8_t>(acc);
            }
            break;
        }
        }
        return out;
    }

    ReachRelation build(const Program& p) {
        switch (p.kind()) {
        case ProgramKind::Atomic:
            if (const ReachRelation* r = model_->find_program(p.name())) return *r;
            warnings_.push_back("unknown atomic program '" + p.name() + "' treated as the zero relation");
            return zero_relation(model_->chain(), model_->space());
        case ProgramKind::Union: {
            const ReachRelation& a = relation(p.lhs());
            return union_of(a, relation(p.rhs()), opts_);
        }
        case ProgramKind::Seq: {
            const ReachRelation& a = relation(p.lhs());
            return compose(a, relation(p.rhs()));
        }
        case ProgramKind::Inter: {
            const ReachRelation& a = relation(p.lhs());
            return parallel(a, relation(p.rhs()), opts_);
        }
        case ProgramKind::Star: return star(relation(p.inner()), opts_);
        case ProgramKind::Test: {
            const std::vector<std::uint8_t>& v = raw_values(p.condition());
            ReachRelation r(model_->chain(), model_->space());
            for (int s = 0; s < model_->size(); ++s) r.set_raw(s, StateSet::singleton(s).bits(), v[s]);
            return r;
        }
        }
        throw std::logic_error("unreachable program kind");
    }

    const Model* model_;
    RelationOptions opts_;
    std::unordered_map<Formula, std::vector<std::uint8_t>> formulas_;
    std::unordered_map<Program, ReachRelation> programs_;
    std::vector<std::string> warnings_;
};

inline ChainValue eval_formula(const Model& m, const Formula& f, int state) { return Evaluator(m).eval(f, state); }

inline ChainValue eval_program(const Model& m, const Program& p, int state, StateSet target) {
    return Evaluator(m).eval(p, state, target);
}

struct StateValue {
    int state;
    ChainValue value;
};

/// The lowest-indexed state where `f` is below 1, if any.
inline std::optional<StateValue> find_refuting_state(Evaluator& ev, const Formula& f) {
    const auto& raw = ev.raw_values(f);
    const int top = ev.model().chain().top();
    for (std::size_t s = 0; s < raw.size(); ++s)
        if (raw[s] != top) return StateValue{static_cast<int>(s), ev.model().chain().value(raw[s])};
    return std::nullopt;
}

struct Validity {
    bool valid = true;
    std::optional<StateValue> witness;
};

inline Validity valid_in_model(const Model& m, const Formula& f) {
    Evaluator ev(m);
    auto w = find_refuting_state(ev, f);
    return Validity{!w.has_value(), w};
}

} // namespace gcpdl
