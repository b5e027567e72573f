#pragma once

// Hilbert-style derivation checking. A derivation is a numbered list of
// steps; each is an axiom instance (naming its schema), a listed premise, or
// modus ponens from two earlier steps. Matching is purely syntactic.
//
// Text format, one item per line; blank lines and lines starting with "//"
// are ignored:
//
//   n: 3
//   premise: p
//   premise: p -> q
//   1 premise p
//   2 premise p -> q
//   3 mp 1 2 q
//   4 axiom A1 q -> (p -> q)
//   5 axiom D7/corrected ...
//   6 mon 4 [a]q -> [a](p -> q)        (only with allow_monotonicity)
//
// "mp i j f" requires step j to be exactly (step i) -> f.

#include <cctype>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gcpdl/chain.hpp"
#include "gcpdl/formula.hpp"
#include "gcpdl/parser.hpp"
#include "gcpdl/printer.hpp"
#include "gcpdl/schema.hpp"

namespace gcpdl {

enum class StepKind { Axiom, Premise, ModusPonens, Monotonicity };

struct Step {
    StepKind kind;
    Formula claim;
    std::string schema;   // Axiom
    std::string variant;  // Axiom, optional
    int first = 0;        // MP antecedent index / Mon premise index (1-based)
    int second = 0;       // MP implication index
};

struct Derivation {
    int n = 2;
    std::vector<Formula> premises;
    std::vector<Step> steps;
};

enum class RejectReason {
    UnknownSchema,
    SchemaNotInSystem,
    NotAnInstance,
    NotAPremise,
    BadReference,
    ModusPonensMismatch,
    RuleDisabled,
    MonotonicityMismatch,
};

inline std::string to_string(RejectReason r) {
    switch (r) {
    case RejectReason::UnknownSchema: return "unknown-schema";
    case RejectReason::SchemaNotInSystem: return "schema-not-in-system";
    case RejectReason::NotAnInstance: return "not-an-instance";
    case RejectReason::NotAPremise: return "not-a-premise";
    case RejectReason::BadReference: return "bad-reference";
    case RejectReason::ModusPonensMismatch: return "mp-mismatch";
    case RejectReason::RuleDisabled: return "rule-disabled";
    case RejectReason::MonotonicityMismatch: return "mon-mismatch";
    }
    return "unknown";
}

struct Verdict {
    bool accepted = true;
    int step = 0;  // 1-based index of the first failing step
    std::optional<RejectReason> reason;
    std::string message;
};

struct CheckOptions {
    /// Accept an axiom step whose named schema does not match if any other
    /// schema of the system does.
    bool try_all_schemata = false;
    /// Enable the monotonicity rules (dynamic system only).
    bool allow_monotonicity = false;
};

namespace detail {

inline Verdict reject(int step, RejectReason reason, std::string message) {
    return Verdict{false, step, reason, std::move(message)};
}

inline bool schema_in_system(const AxiomSchema& s, ProofSystem system) {
    if (s.kind == SchemaKind::Rule) return false;
    return system == ProofSystem::Dynamic || s.system == ProofSystem::Propositional;
}

} // namespace detail

inline Verdict check_derivation(const Derivation& d, ProofSystem system, const CheckOptions& opts = {}) {
    const Chain chain(d.n);
    for (std::size_t k = 0; k < d.steps.size(); ++k) {
        const int index = static_cast<int>(k) + 1;
        const Step& step = d.steps[k];
        auto earlier = [&](int ref) { return ref >= 1 && ref < index; };

        switch (step.kind) {
        case StepKind::Premise: {
            bool listed = false;
            for (const auto& p : d.premises) listed = listed || p == step.claim;
            if (!listed)
                return detail::reject(index, RejectReason::NotAPremise,
                                      "step " + std::to_string(index) + " is not among the premises");
            break;
        }
        case StepKind::Axiom: {
            const AxiomSchema* schema = find_schema(step.schema, step.variant);
            bool ok = false;
            if (schema && detail::schema_in_system(*schema, system))
                ok = match_axiom_instance(*schema, step.claim, chain).has_value();
            if (!ok && opts.try_all_schemata)
                for (const auto* s : axioms_of(system))
                    if (match_axiom_instance(*s, step.claim, chain)) {
                        ok = true;
                        break;
                    }
            if (ok) break;
            const std::string name = step.variant.empty() ? step.schema : step.schema + "/" + step.variant;
            if (!schema)
                return detail::reject(index, RejectReason::UnknownSchema, "unknown schema '" + name + "'");
            if (!detail::schema_in_system(*schema, system))
                return detail::reject(index, RejectReason::SchemaNotInSystem,
                                      "schema " + name + " does not belong to this system");
            return detail::reject(index, RejectReason::NotAnInstance,
                                  "step " + std::to_string(index) + " is not an instance of " + name);
        }
        case StepKind::ModusPonens: {
            if (!earlier(step.first) || !earlier(step.second))
                return detail::reject(index, RejectReason::BadReference,
                                      "step " + std::to_string(index) + " cites a step that is not earlier");
            const Formula& antecedent = d.steps[static_cast<std::size_t>(step.first - 1)].claim;
            const Formula& implication = d.steps[static_cast<std::size_t>(step.second - 1)].claim;
            if (!(implication == Formula::implies(antecedent, step.claim)))
                return detail::reject(index, RejectReason::ModusPonensMismatch,
                                      "step " + std::to_string(step.second) +
                                          " is not an implication with antecedent " + to_string(antecedent) +
                                          " and consequent " + to_string(step.claim));
            break;
        }
        case StepKind::Monotonicity: {
            if (system != ProofSystem::Dynamic || !opts.allow_monotonicity)
                return detail::reject(index, RejectReason::RuleDisabled, "the monotonicity rule is not enabled");
            if (!earlier(step.first))
                return detail::reject(index, RejectReason::BadReference,
                                      "step " + std::to_string(index) + " cites a step that is not earlier");
            const Formula& premise = d.steps[static_cast<std::size_t>(step.first - 1)].claim;
            const Formula& c = step.claim;
            bool ok = premise.kind() == FormulaKind::Implies && c.kind() == FormulaKind::Implies &&
                      c.lhs().is_modal() && c.lhs().kind() == c.rhs().kind() &&
                      c.lhs().program() == c.rhs().program() && c.lhs().body() == premise.lhs() &&
                      c.rhs().body() == premise.rhs();
            if (!ok)
                return detail::reject(index, RejectReason::MonotonicityMismatch,
                                      "step " + std::to_string(index) + " does not follow from step " +
                                          std::to_string(step.first) + " by monotonicity");
            break;
        }
        }
    }
    return Verdict{};
}

class DerivationParseError : public std::runtime_error {
public:
    DerivationParseError(const std::string& what, int line)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const noexcept { return line_; }

private:
    int line_;
};

inline Derivation parse_derivation(const std::string& text) {
    Derivation d;
    std::optional<Chain> chain;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;

    auto trim = [](std::string s) {
        std::size_t b = s.find_first_not_of(" \t\r");
        std::size_t e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    auto formula = [&](const std::string& src) {
        if (!chain) throw DerivationParseError("the 'n:' header must come first", lineno);
        try {
            return parse_formula(src, *chain);
        } catch (const std::exception& e) {
            throw DerivationParseError(e.what(), lineno);
        }
    };

    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line.rfind("//", 0) == 0) continue;

        if (line.rfind("n:", 0) == 0) {
            if (chain) throw DerivationParseError("duplicate 'n:' header", lineno);
            try {
                d.n = std::stoi(line.substr(2));
                chain.emplace(d.n);
            } catch (const std::exception& e) {
                throw DerivationParseError(std::string("bad chain order: ") + e.what(), lineno);
            }
            continue;
        }
        if (line.rfind("premise:", 0) == 0) {
            d.premises.push_back(formula(line.substr(8)));
            continue;
        }

        std::istringstream ls(line);
        int number = 0;
        std::string kind;
        if (!(ls >> number >> kind)) throw DerivationParseError("expected '<k> <rule> ...'", lineno);
        if (number != static_cast<int>(d.steps.size()) + 1)
            throw DerivationParseError("expected step number " + std::to_string(d.steps.size() + 1), lineno);

        Step step{StepKind::Premise, Formula::var("_"), "", "", 0, 0};
        if (kind == "premise") {
            step.kind = StepKind::Premise;
        } else if (kind == "axiom") {
            std::string id;
            if (!(ls >> id)) throw DerivationParseError("missing schema id", lineno);
            step.kind = StepKind::Axiom;
            auto slash = id.find('/');
            step.schema = id.substr(0, slash);
            if (slash != std::string::npos) step.variant = id.substr(slash + 1);
        } else if (kind == "mp") {
            step.kind = StepKind::ModusPonens;
            if (!(ls >> step.first >> step.second)) throw DerivationParseError("mp needs two step indices", lineno);
        } else if (kind == "mon") {
            step.kind = StepKind::Monotonicity;
            if (!(ls >> step.first)) throw DerivationParseError("mon needs a step index", lineno);
        } else {
            throw DerivationParseError("unknown step kind '" + kind + "'", lineno);
        }
        std::string rest;
        std::getline(ls, rest);
        step.claim = formula(rest);
        d.steps.push_back(std::move(step));
    }
    if (!chain) throw DerivationParseError("missing 'n:' header", lineno);
    return d;
}

inline std::string to_text(const Derivation& d) {
    std::string out = "n: " + std::to_string(d.n) + "\n";
    for (const auto& p : d.premises) out += "premise: " + to_string(p) + "\n";
    for (std::size_t k = 0; k < d.steps.size(); ++k) {
        const Step& s = d.steps[k];
        out += std::to_string(k + 1) + " ";
        switch (s.kind) {
        case StepKind::Premise: out += "premise "; break;
        case StepKind::Axiom: out += "axiom " + (s.variant.empty() ? s.schema : s.schema + "/" + s.variant) + " "; break;
        case StepKind::ModusPonens: out += "mp " + std::to_string(s.first) + " " + std::to_string(s.second) + " "; break;
        case StepKind::Monotonicity: out += "mon " + std::to_string(s.first) + " "; break;
        }
        out += to_string(s.claim) + "\n";
    }
    return out;
}

} // namespace gcpdl
