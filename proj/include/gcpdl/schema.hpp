#pragma once

// Axiom schemata of the propositional system (A1-A5) and its dynamic
// extension (D1-D17), plus the two candidate monotonicity rules.
//
// Templates are written in the ordinary concrete syntax. Identifiers listed
// as metavariables stand for whole formulas (phi, psi, chi), chain constants
// (c) or programs (pi, pi0, pi1); instantiation substitutes them and matching
// unifies a template against a concrete formula.
//
//   id   schema
//   A1   phi -> (psi -> phi)
//   A2   (phi -> psi) -> ((psi -> chi) -> (phi -> chi))
//   A3   ((phi -> psi) -> psi) -> ((psi -> phi) -> phi)
//   A4   (~psi -> ~phi) -> (phi -> psi)
//   A5   #(c * d) <-> (#c op #d), op in {&, |, ->}, left side computed
//   D1   [pi]#1
//   D2   [pi]phi & [pi]psi -> [pi](phi & psi)
//   D3   [pi](c -> phi) <-> (c -> [pi]phi)
//   D4   [pi](phi -> c) <-> (<pi>phi -> c)
//   D5   [pi0;pi1]phi <-> [pi0][pi1]phi
//   D6   [pi0 + pi1]phi <-> [pi0]phi & [pi1]phi
//   D7   [pi0 ^ pi1]phi <-> (<pi0>#1 -> [pi1]phi) & (<pi1>#1 -> [pi1]phi)   as-printed
//        [pi0 ^ pi1]phi <-> (<pi0>#1 -> [pi1]phi) & (<pi1>#1 -> [pi0]phi)   corrected
//   D8   [pi*]phi -> phi & [pi][pi*]phi
//   D9   [pi*](phi -> [pi]phi) -> (phi -> [pi*]phi)
//   D10  [?(phi)]psi <-> (phi -> psi)
//   D11  <pi0;pi1>phi <-> <pi0><pi1>phi
//   D12  <pi0 + pi1>phi <-> <pi0>phi | <pi1>phi
//   D13  <pi0 ^ pi1>phi <-> <pi0>phi & <pi1>phi
//   D14  phi | <pi><pi*>phi -> <pi*>phi
//   D15  [pi*](<pi>phi -> phi) -> (<pi*>phi -> phi)
//   D16  <?(phi)>psi <-> phi & psi
//   D17  [pi]#0 | <pi>#1
//   MonBox  rule: from phi -> psi infer [pi]phi -> [pi]psi
//   MonDia  rule: from phi -> psi infer <pi>phi -> <pi>psi

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gcpdl/chain.hpp"
#include "gcpdl/formula.hpp"
#include "gcpdl/parser.hpp"
#include "gcpdl/printer.hpp"

namespace gcpdl {

enum class ProofSystem { Propositional, Dynamic };
enum class SchemaKind { Template, ConstantArithmetic, Rule };
enum class ConstantOp { And, Or, Implies };

inline std::string to_string(ConstantOp op) {
    switch (op) {
    case ConstantOp::And: return "&";
    case ConstantOp::Or: return "|";
    case ConstantOp::Implies: return "->";
    }
    return "?";
}

inline ChainValue apply(ConstantOp op, const ChainValue& a, const ChainValue& b) {
    switch (op) {
    case ConstantOp::And: return meet(a, b);
    case ConstantOp::Or: return join(a, b);
    case ConstantOp::Implies: return implies(a, b);
    }
    throw std::logic_error("unknown constant operation");
}

class MissingBinding : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct AxiomSchema {
    std::string id;
    std::string variant;  // empty unless the schema has several readings
    SchemaKind kind = SchemaKind::Template;
    ProofSystem system = ProofSystem::Dynamic;
    std::string text;     // conclusion template
    std::string premise;  // rules only

    std::string label() const { return variant.empty() ? id : id + "/" + variant; }
};

inline const std::vector<std::string>& formula_metavariables() {
    static const std::vector<std::string> v{"phi", "psi", "chi"};
    return v;
}
inline const std::vector<std::string>& program_metavariables() {
    static const std::vector<std::string> v{"pi", "pi0", "pi1"};
    return v;
}
inline const std::vector<std::string>& constant_metavariables() {
    static const std::vector<std::string> v{"c", "d"};
    return v;
}

namespace detail {

inline bool member(const std::vector<std::string>& v, const std::string& s) {
    for (const auto& x : v)
        if (x == s) return true;
    return false;
}

} // namespace detail

/// Every axiom schema, in listing order. D7 appears in both readings.
inline const std::vector<AxiomSchema>& all_schemata() {
    using K = SchemaKind;
    using P = ProofSystem;
    static const std::vector<AxiomSchema> v{
        {"A1", "", K::Template, P::Propositional, "phi -> (psi -> phi)", ""},
        {"A2", "", K::Template, P::Propositional, "(phi -> psi) -> ((psi -> chi) -> (phi -> chi))", ""},
        {"A3", "", K::Template, P::Propositional, "((phi -> psi) -> psi) -> ((psi -> phi) -> phi)", ""},
        {"A4", "", K::Template, P::Propositional, "(~psi -> ~phi) -> (phi -> psi)", ""},
        {"A5", "", K::ConstantArithmetic, P::Propositional, "", ""},
        {"D1", "", K::Template, P::Dynamic, "[pi]#1", ""},
        {"D2", "", K::Template, P::Dynamic, "[pi]phi & [pi]psi -> [pi](phi & psi)", ""},
        {"D3", "", K::Template, P::Dynamic, "[pi](c -> phi) <-> (c -> [pi]phi)", ""},
        {"D4", "", K::Template, P::Dynamic, "[pi](phi -> c) <-> (<pi>phi -> c)", ""},
        {"D5", "", K::Template, P::Dynamic, "[pi0;pi1]phi <-> [pi0][pi1]phi", ""},
        {"D6", "", K::Template, P::Dynamic, "[pi0 + pi1]phi <-> [pi0]phi & [pi1]phi", ""},
        {"D7", "as-printed", K::Template, P::Dynamic,
         "[pi0 ^ pi1]phi <-> (<pi0>#1 -> [pi1]phi) & (<pi1>#1 -> [pi1]phi)", ""},
        {"D7", "corrected", K::Template, P::Dynamic,
         "[pi0 ^ pi1]phi <-> (<pi0>#1 -> [pi1]phi) & (<pi1>#1 -> [pi0]phi)", ""},
        {"D8", "", K::Template, P::Dynamic, "[pi*]phi -> phi & [pi][pi*]phi", ""},
        {"D9", "", K::Template, P::Dynamic, "[pi*](phi -> [pi]phi) -> (phi -> [pi*]phi)", ""},
        {"D10", "", K::Template, P::Dynamic, "[?(phi)]psi <-> (phi -> psi)", ""},
        {"D11", "", K::Template, P::Dynamic, "<pi0;pi1>phi <-> <pi0><pi1>phi", ""},
        {"D12", "", K::Template, P::Dynamic, "<pi0 + pi1>phi <-> <pi0>phi | <pi1>phi", ""},
        {"D13", "", K::Template, P::Dynamic, "<pi0 ^ pi1>phi <-> <pi0>phi & <pi1>phi", ""},
        {"D14", "", K::Template, P::Dynamic, "phi | <pi><pi*>phi -> <pi*>phi", ""},
        {"D15", "", K::Template, P::Dynamic, "[pi*](<pi>phi -> phi) -> (<pi*>phi -> phi)", ""},
        {"D16", "", K::Template, P::Dynamic, "<?(phi)>psi <-> phi & psi", ""},
        {"D17", "", K::Template, P::Dynamic, "[pi]#0 | <pi>#1", ""},
        {"MonBox", "", K::Rule, P::Dynamic, "[pi]phi -> [pi]psi", "phi -> psi"},
        {"MonDia", "", K::Rule, P::Dynamic, "<pi>phi -> <pi>psi", "phi -> psi"},
    };
    return v;
}

/// Looks up a schema by id and variant. An empty variant selects the first
/// listed reading (the as-printed one for D7).
inline const AxiomSchema* find_schema(const std::string& id, const std::string& variant = "") {
    for (const auto& s : all_schemata())
        if (s.id == id && (variant.empty() || s.variant == variant)) return &s;
    return nullptr;
}

/// The axiom schemata (not rules) belonging to a system. The dynamic system
/// contains the propositional one.
inline std::vector<const AxiomSchema*> axioms_of(ProofSystem system) {
    std::vector<const AxiomSchema*> out;
    for (const auto& s : all_schemata()) {
        if (s.kind == SchemaKind::Rule) continue;
        if (system == ProofSystem::Propositional && s.system != ProofSystem::Propositional) continue;
        out.push_back(&s);
    }
    return out;
}

struct Bindings {
    std::map<std::string, Formula> formulas;
    std::map<std::string, Program> programs;
    std::map<std::string, ChainValue> constants;
    std::optional<ConstantOp> op;  // A5 only

    std::string to_string() const {
        std::string out;
        auto sep = [&] { if (!out.empty()) out += ", "; };
        for (const auto& [k, v] : formulas) { sep(); out += k + " := " + gcpdl::to_string(v); }
        for (const auto& [k, v] : programs) { sep(); out += k + " := " + gcpdl::to_string(v); }
        for (const auto& [k, v] : constants) { sep(); out += k + " := " + v.to_string(); }
        if (op) { sep(); out += "op := " + gcpdl::to_string(*op); }
        return out;
    }
};

/// Parsed templates for one chain.
struct SchemaTemplate {
    Formula conclusion;
    std::optional<Formula> premise;
};

inline SchemaTemplate parse_template(const AxiomSchema& schema, const Chain& chain) {
    if (schema.kind == SchemaKind::ConstantArithmetic)
        throw std::logic_error(schema.label() + " has no syntactic template");
    SchemaTemplate t{parse_formula(schema.text, chain), std::nullopt};
    if (schema.kind == SchemaKind::Rule) t.premise = parse_formula(schema.premise, chain);
    return t;
}

namespace detail {

inline Program substitute(const Program& p, const Bindings& b);

inline Formula substitute(const Formula& f, const Bindings& b) {
    switch (f.kind()) {
    case FormulaKind::Var: {
        if (member(formula_metavariables(), f.name())) {
            auto it = b.formulas.find(f.name());
            if (it == b.formulas.end()) throw MissingBinding("no binding for formula metavariable " + f.name());
            return it->second;
        }
        if (member(constant_metavariables(), f.name())) {
            auto it = b.constants.find(f.name());
            if (it == b.constants.end()) throw MissingBinding("no binding for constant metavariable " + f.name());
            return Formula::constant(it->second);
        }
        return f;
    }
    case FormulaKind::Const: return f;
    case FormulaKind::And: return Formula::conj(substitute(f.lhs(), b), substitute(f.rhs(), b));
    case FormulaKind::Or: return Formula::disj(substitute(f.lhs(), b), substitute(f.rhs(), b));
    case FormulaKind::Implies: return Formula::implies(substitute(f.lhs(), b), substitute(f.rhs(), b));
    case FormulaKind::Box: return Formula::box(substitute(f.program(), b), substitute(f.body(), b));
    case FormulaKind::Diamond: return Formula::diamond(substitute(f.program(), b), substitute(f.body(), b));
    }
    throw std::logic_error("unreachable formula kind");
}

inline Program substitute(const Program& p, const Bindings& b) {
    switch (p.kind()) {
    case ProgramKind::Atomic: {
        if (!member(program_metavariables(), p.name())) return p;
        auto it = b.programs.find(p.name());
        if (it == b.programs.end()) throw MissingBinding("no binding for program metavariable " + p.name());
        return it->second;
    }
    case ProgramKind::Union: return Program::choice(substitute(p.lhs(), b), substitute(p.rhs(), b));
    case ProgramKind::Inter: return Program::parallel(substitute(p.lhs(), b), substitute(p.rhs(), b));
    case ProgramKind::Seq: return Program::seq(substitute(p.lhs(), b), substitute(p.rhs(), b));
    case ProgramKind::Star: return Program::star(substitute(p.inner(), b));
    case ProgramKind::Test: return Program::test(substitute(p.condition(), b));
    }
    throw std::logic_error("unreachable program kind");
}

inline bool unify(const Program& tpl, const Program& target, Bindings& b);

inline bool unify(const Formula& tpl, const Formula& target, Bindings& b) {
    if (tpl.kind() == FormulaKind::Var) {
        if (member(formula_metavariables(), tpl.name())) {
            auto [it, fresh] = b.formulas.try_emplace(tpl.name(), target);
            return fresh || it->second == target;
        }
        if (member(constant_metavariables(), tpl.name())) {
            if (target.kind() != FormulaKind::Const) return false;
            auto [it, fresh] = b.constants.try_emplace(tpl.name(), target.value());
            return fresh || it->second == target.value();
        }
    }
    if (tpl.kind() != target.kind()) return false;
    switch (tpl.kind()) {
    case FormulaKind::Var: return tpl.name() == target.name();
    case FormulaKind::Const: return tpl.value() == target.value();
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Implies: return unify(tpl.lhs(), target.lhs(), b) && unify(tpl.rhs(), target.rhs(), b);
    case FormulaKind::Box:
    case FormulaKind::Diamond: return unify(tpl.program(), target.program(), b) && unify(tpl.body(), target.body(), b);
    }
    return false;
}

inline bool unify(const Program& tpl, const Program& target, Bindings& b) {
    if (tpl.kind() == ProgramKind::Atomic && member(program_metavariables(), tpl.name())) {
        auto [it, fresh] = b.programs.try_emplace(tpl.name(), target);
        return fresh || it->second == target;
    }
    if (tpl.kind() != target.kind()) return false;
    switch (tpl.kind()) {
    case ProgramKind::Atomic: return tpl.name() == target.name();
    case ProgramKind::Star: return unify(tpl.inner(), target.inner(), b);
    case ProgramKind::Test: return unify(tpl.condition(), target.condition(), b);
    default: return unify(tpl.lhs(), target.lhs(), b) && unify(tpl.rhs(), target.rhs(), b);
    }
}

inline Formula constant_operation(ConstantOp op, const Formula& a, const Formula& b) {
    switch (op) {
    case ConstantOp::And: return Formula::conj(a, b);
    case ConstantOp::Or: return Formula::disj(a, b);
    case ConstantOp::Implies: return Formula::implies(a, b);
    }
    throw std::logic_error("unknown constant operation");
}

} // namespace detail

/// A5 instance: #(c op d) <-> (#c op #d), with the left constant computed in the chain.
inline Formula constant_axiom(ConstantOp op, const ChainValue& c, const ChainValue& d) {
    Formula rhs = detail::constant_operation(op, Formula::constant(c), Formula::constant(d));
    return Formula::iff(Formula::constant(apply(op, c, d)), rhs);
}

/// The conclusion of `schema` under `bindings`. For rules this is the
/// conclusion; use instantiate_premise for the premise.
inline Formula instantiate_schema(const AxiomSchema& schema, const Bindings& bindings, const Chain& chain) {
    if (schema.kind == SchemaKind::ConstantArithmetic) {
        auto c = bindings.constants.find("c");
        auto d = bindings.constants.find("d");
        if (c == bindings.constants.end() || d == bindings.constants.end() || !bindings.op)
            throw MissingBinding(schema.label() + " needs bindings for c, d and op");
        if (c->second.order() != chain.order() || d->second.order() != chain.order())
            throw ContextMismatch("constant bindings from a different chain");
        return constant_axiom(*bindings.op, c->second, d->second);
    }
    return detail::substitute(parse_template(schema, chain).conclusion, bindings);
}

inline Formula instantiate_premise(const AxiomSchema& schema, const Bindings& bindings, const Chain& chain) {
    if (schema.kind != SchemaKind::Rule) throw std::logic_error(schema.label() + " is not a rule");
    return detail::substitute(*parse_template(schema, chain).premise, bindings);
}

/// Bindings under which `schema` instantiates exactly to `f`, if any.
inline std::optional<Bindings> match_axiom_instance(const AxiomSchema& schema, const Formula& f, const Chain& chain) {
    if (schema.kind == SchemaKind::Rule) return std::nullopt;
    if (schema.kind == SchemaKind::ConstantArithmetic) {
        // (K -> X) & (X -> K) with X = #c op #d and K = #(c op d).
        if (f.kind() != FormulaKind::And) return std::nullopt;
        const Formula& l = f.lhs();
        const Formula& r = f.rhs();
        if (l.kind() != FormulaKind::Implies || r.kind() != FormulaKind::Implies) return std::nullopt;
        if (!(l.lhs() == r.rhs()) || !(l.rhs() == r.lhs())) return std::nullopt;
        const Formula& k = l.lhs();
        const Formula& x = l.rhs();
        if (k.kind() != FormulaKind::Const || !x.is_binary()) return std::nullopt;
        if (x.lhs().kind() != FormulaKind::Const || x.rhs().kind() != FormulaKind::Const) return std::nullopt;
        if (k.value().order() != x.lhs().value().order() || k.value().order() != x.rhs().value().order())
            return std::nullopt;
        ConstantOp op = x.kind() == FormulaKind::And ? ConstantOp::And
                        : x.kind() == FormulaKind::Or ? ConstantOp::Or
                                                      : ConstantOp::Implies;
        if (!(apply(op, x.lhs().value(), x.rhs().value()) == k.value())) return std::nullopt;
        Bindings b;
        b.constants.emplace("c", x.lhs().value());
        b.constants.emplace("d", x.rhs().value());
        b.op = op;
        return b;
    }
    Bindings b;
    if (detail::unify(parse_template(schema, chain).conclusion, f, b)) return b;
    return std::nullopt;
}

} // namespace gcpdl
