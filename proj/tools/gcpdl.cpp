// Command-line front end.
//
// Exit codes: 0 the property holds (valid, accepted, no counterexample),
// 1 it was refuted, 2 usage, parse or validation error.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gcpdl/gcpdl.hpp"

namespace {

using namespace gcpdl;

constexpr int kHolds = 0;
constexpr int kRefuted = 1;
constexpr int kError = 2;

struct SamplingFlags {
    int n = 3;
    int states = 3;
    std::size_t samples = 1000;
    std::uint64_t seed = 0;
    double density = 0.5;
    bool force_states = false;

    void attach(CLI::App* app, std::size_t default_samples) {
        samples = default_samples;
        app->add_option("--n", n, "chain order (number of truth values)")->capture_default_str();
        app->add_option("--states", states, "maximum number of states per sampled model")->capture_default_str();
        app->add_option("--samples", samples, "number of sampled models")->capture_default_str();
        app->add_option("--seed", seed, "random seed")->capture_default_str();
        app->add_option("--density", density, "probability that a relation entry is nonzero")->capture_default_str();
        app->add_flag("--force-states", force_states, "allow up to 6 states");
    }

    SamplerConfig config() const {
        SamplerConfig c;
        c.n = n;
        c.max_states = states;
        c.seed = seed;
        c.density = density;
        c.force_states = force_states;
        c.validate();
        if (states > kDefaultStateCap)
            std::cerr << "warning: " << states << " states requested; composition and star scale with 2^(2^states)\n";
        return c;
    }
};

bool has_compound_program(const Formula& f);

bool has_compound_program(const Program& p) {
    if (p.kind() == ProgramKind::Atomic) return false;
    if (p.kind() == ProgramKind::Test) return has_compound_program(p.condition());
    return true;
}

bool has_compound_program(const Formula& f) {
    switch (f.kind()) {
    case FormulaKind::Var:
    case FormulaKind::Const: return false;
    case FormulaKind::Box:
    case FormulaKind::Diamond: return has_compound_program(f.program()) || has_compound_program(f.body());
    default: return has_compound_program(f.lhs()) || has_compound_program(f.rhs());
    }
}

// Compound programs are materialized over the full powerset, so large models
// are refused unless explicitly forced.
void enforce_state_cap(const Model& m, const std::vector<Formula>& formulas, bool force) {
    const int cap = force ? kForcedStateCap : kDefaultStateCap;
    if (m.size() <= kDefaultStateCap) return;
    for (const auto& f : formulas) {
        if (!has_compound_program(f)) continue;
        if (m.size() <= cap) {
            std::cerr << "warning: " << m.size() << " states; composition and star scale with 2^(2^states)\n";
            return;
        }
        throw std::invalid_argument("model has " + std::to_string(m.size()) +
                                    " states; compound programs are limited to " + std::to_string(cap) +
                                    (force ? "" : " (use --force-states for up to 6)"));
    }
}

void print_warnings(const std::vector<std::string>& warnings) {
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

void print_model(const Model& m, std::ostream& out) { out << model_to_json(m).dump(2) << "\n"; }

int cmd_eval(const std::string& model_path, const std::string& text, bool force) {
    Model m = load_model(model_path);
    Formula f = parse_formula(text, m.chain());
    enforce_state_cap(m, {f}, force);
    Evaluator ev(m);
    const auto values = ev.values(f);
    bool valid = true;
    for (int s = 0; s < m.size(); ++s) {
        std::cout << m.state_name(s) << ": " << values[static_cast<std::size_t>(s)].to_string() << "\n";
        valid = valid && values[static_cast<std::size_t>(s)].is_one();
    }
    print_warnings(ev.warnings());
    return valid ? kHolds : kRefuted;
}

int cmd_valid(const std::string& text, const SamplingFlags& flags, const std::string& out) {
    const SamplerConfig cfg = flags.config();
    Formula f = parse_formula(text, Chain(cfg.n));
    ValiditySearch r = search_countermodel(f, cfg, flags.samples);
    json report{{"formula", to_string(f)}, {"config", config_to_json(cfg)}, {"models_tested", r.models_tested}};
    if (r.witness) {
        report["verdict"] = "counterexample";
        report["witness"] = counterexample_to_json(*r.witness);
        std::cout << "counterexample after " << r.models_tested << " models: " << to_string(f) << " = "
                  << r.witness->value.to_string() << " at " << r.witness->model.state_name(r.witness->state) << "\n";
        print_model(r.witness->model, std::cout);
    } else {
        report["verdict"] = "no-counterexample-found";
        std::cout << "no counterexample in " << r.models_tested << " models\n";
    }
    if (!out.empty()) write_json_file(out, report);
    return r.witness ? kRefuted : kHolds;
}

int cmd_audit(const SamplingFlags& flags, const std::vector<std::string>& ids, const std::string& d7, bool rules,
              int instances, const std::string& out) {
    SamplerConfig cfg = flags.config();
    cfg.instances_per_model = instances;
    cfg.validate();
    std::vector<const AxiomSchema*> schemata;
    if (ids.empty()) {
        for (const auto& s : all_schemata()) {
            if (s.kind == SchemaKind::Rule && !rules) continue;
            if (s.id == "D7" && d7 != "both" && s.variant != d7) continue;
            schemata.push_back(&s);
        }
    } else {
        for (const auto& id : ids) {
            const auto slash = id.find('/');
            const std::string variant = slash == std::string::npos ? "" : id.substr(slash + 1);
            const AxiomSchema* s = find_schema(id.substr(0, slash), variant);
            if (!s) throw std::invalid_argument("unknown schema '" + id + "'");
            schemata.push_back(s);
        }
    }
    AuditReport report = audit_schemata(schemata, cfg, flags.samples);
    for (const auto& e : report.entries) {
        std::cout << e.label() << ": " << e.verdict() << " (" << e.models_tested << " models, "
                  << e.instantiations_tested << " instances)";
        if (e.witness)
            std::cout << "\n    " << to_string(e.witness->instance) << " = " << e.witness->value.to_string() << " at "
                      << e.witness->model.state_name(e.witness->state);
        std::cout << "\n";
    }
    std::cout << report.counterexamples() << " of " << report.entries.size() << " schemata refuted at n=" << cfg.n
              << "\n";
    if (!out.empty()) write_json_file(out, audit_report_to_json(report));
    return report.counterexamples() ? kRefuted : kHolds;
}

int cmd_closure(const std::string& text, int n) {
    const Chain chain(n);
    FormulaSet gamma = fl_closure(parse_formula(text, chain), chain);
    for (const auto& f : gamma) std::cout << to_string(f) << "\n";
    std::cout << gamma.size() << " formulas\n";
    return kHolds;
}

int cmd_check_proof(const std::string& path, const std::string& system, bool try_all, bool allow_mon) {
    Derivation d = parse_derivation(read_text_file(path));
    ProofSystem sys;
    if (system == "prop")
        sys = ProofSystem::Propositional;
    else if (system == "dyn")
        sys = ProofSystem::Dynamic;
    else
        throw std::invalid_argument("--system must be 'prop' or 'dyn'");
    Verdict v = check_derivation(d, sys, CheckOptions{try_all, allow_mon});
    if (v.accepted) {
        std::cout << "accepted: " << d.steps.size() << " steps, conclusion "
                  << (d.steps.empty() ? std::string("(none)") : to_string(d.steps.back().claim)) << "\n";
        return kHolds;
    }
    std::cout << "rejected at step " << v.step << " [" << to_string(*v.reason) << "]: " << v.message << "\n";
    return kRefuted;
}

int cmd_filtrate(const std::string& model_path, const std::vector<std::string>& texts,
                 const std::vector<std::string>& corpus_texts, const std::string& out, const std::string& dot,
                 bool force) {
    Model m = load_model(model_path);
    std::vector<Formula> seeds, corpus;
    for (const auto& t : texts) seeds.push_back(parse_formula(t, m.chain()));
    for (const auto& t : corpus_texts) corpus.push_back(parse_formula(t, m.chain()));
    enforce_state_cap(m, seeds, force);
    enforce_state_cap(m, corpus, force);

    FiltrationResult fr = quotient(m, fl_closure(std::span<const Formula>(seeds), m.chain()));
    std::cout << "|Gamma| = " << fr.gamma.size() << ", " << m.size() << " states -> " << fr.quotient.size()
              << " classes\n";
    for (std::size_t c = 0; c < fr.classes.size(); ++c) {
        std::cout << "  " << fr.quotient.state_name(static_cast<int>(c)) << " = {";
        for (std::size_t k = 0; k < fr.classes[c].size(); ++k)
            std::cout << (k ? ", " : "") << m.state_name(fr.classes[c][k]);
        std::cout << "}\n";
    }

    std::size_t violations = 0;
    json lemma = json::array();
    for (const auto& [atom, r] : fr.quotient.programs()) {
        Lemma4Report l = check_lemma4(m, fr, atom, corpus);
        violations += l.violations.size();
        json bad = json::array();
        for (const auto& v : l.violations)
            bad.push_back({{"state", m.state_name(v.state)},
                           {"target", v.target.members()},
                           {"formula", v.formula ? to_string(*v.formula) : ""},
                           {"lhs", v.lhs.to_string()},
                           {"rhs", v.rhs.to_string()}});
        lemma.push_back({{"program", atom}, {"points", l.points_checked}, {"violations", std::move(bad)}});
        std::cout << "relation bound (" << atom << "): " << l.points_checked << " points, " << l.violations.size()
                  << " violations\n";
    }

    PreservationReport pres = check_preservation(m, fr);
    std::cout << "preservation: " << pres.preserved() << " of " << pres.rows.size() << " formulas agree everywhere\n";
    for (const auto& row : pres.rows)
        std::cout << "  " << row.agreeing << "/" << row.states << "  " << to_string(row.formula) << "\n";
    print_warnings(fr.warnings);

    if (!out.empty()) {
        json j = quotient_to_json(m, fr);
        j["lemma4"] = std::move(lemma);
        j["preservation"] = preservation_to_json(pres, m);
        write_json_file(out, j);
    }
    if (!dot.empty()) {
        std::ofstream d(dot);
        if (!d) throw std::runtime_error("cannot write '" + dot + "'");
        d << quotient_to_dot(m, fr);
    }
    return violations ? kRefuted : kHolds;
}

int cmd_equiv(const std::string& a_text, const std::string& b_text, const SamplingFlags& flags,
              const std::string& out) {
    const SamplerConfig cfg = flags.config();
    const Chain chain(cfg.n);
    Formula a = parse_formula(a_text, chain);
    Formula b = parse_formula(b_text, chain);
    EquivReport r = equiv_check(a, b, cfg, flags.samples);
    json report{{"lhs", to_string(a)}, {"rhs", to_string(b)}, {"config", config_to_json(cfg)},
                {"models_tested", r.models_tested}};
    if (r.difference) {
        const auto& d = *r.difference;
        std::cout << "differ after " << r.models_tested << " models at " << d.model.state_name(d.state) << ": "
                  << d.lhs.to_string() << " vs " << d.rhs.to_string() << "\n";
        print_model(d.model, std::cout);
        report["verdict"] = "different";
        report["witness"] = {{"state", d.model.state_name(d.state)},
                             {"lhs", d.lhs.to_string()},
                             {"rhs", d.rhs.to_string()},
                             {"model", model_to_json(d.model)}};
    } else {
        std::cout << "no difference in " << r.models_tested << " models\n";
        report["verdict"] = "no-difference-found";
    }
    if (!out.empty()) write_json_file(out, report);
    return r.difference ? kRefuted : kHolds;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Graded concurrent dynamic logic over finite Lukasiewicz chains"};
    app.require_subcommand(1);
    int result = kHolds;

    std::string model_path, formula, formula2, out, dot, path, system = "dyn", d7 = "corrected";
    std::vector<std::string> formulas, corpus, schemata;
    bool force = false, try_all = false, allow_mon = false, rules = false;
    int n = 3, instances = 3;
    SamplingFlags valid_flags, audit_flags, equiv_flags;

    auto* eval = app.add_subcommand("eval", "evaluate a formula at every state of a model");
    eval->add_option("model", model_path, "model JSON file")->required();
    eval->add_option("formula", formula, "formula")->required();
    eval->add_flag("--force-states", force, "allow compound programs on up to 6 states");
    eval->callback([&] { result = cmd_eval(model_path, formula, force); });

    auto* valid = app.add_subcommand("valid", "search sampled models for a refuting state");
    valid->add_option("formula", formula, "formula")->required();
    valid_flags.attach(valid, 1000);
    valid->add_option("--out", out, "write a JSON report");
    valid->callback([&] { result = cmd_valid(formula, valid_flags, out); });

    auto* audit = app.add_subcommand("audit", "search for counterexamples to the axiom schemata");
    audit_flags.attach(audit, 1000);
    audit->add_option("--schema", schemata, "schema id, e.g. D4 or D7/as-printed (repeatable; default all)");
    audit->add_option("--d7", d7, "reading of D7 when auditing all schemata")
        ->check(CLI::IsMember({"corrected", "as-printed", "both"}))
        ->capture_default_str();
    audit->add_flag("--rules", rules, "also audit the monotonicity rules");
    audit->add_option("--instances", instances, "bindings tried per model")->capture_default_str();
    audit->add_option("--out", out, "write a JSON report");
    audit->callback([&] { result = cmd_audit(audit_flags, schemata, d7, rules, instances, out); });

    auto* closure = app.add_subcommand("closure", "list the Fischer-Ladner closure of a formula");
    closure->add_option("formula", formula, "formula")->required();
    closure->add_option("--n", n, "chain order used to read constants")->capture_default_str();
    closure->callback([&] { result = cmd_closure(formula, n); });

    auto* check = app.add_subcommand("check-proof", "verify a Hilbert-style derivation");
    check->add_option("path", path, "derivation file")->required();
    check->add_option("--system", system, "prop or dyn")->capture_default_str();
    check->add_flag("--try-all", try_all, "accept axiom steps that match any schema of the system");
    check->add_flag("--allow-mon", allow_mon, "enable the monotonicity rule");
    check->callback([&] { result = cmd_check_proof(path, system, try_all, allow_mon); });

    auto* filtrate = app.add_subcommand("filtrate", "quotient a model through the closure of some formulas");
    filtrate->add_option("model", model_path, "model JSON file")->required();
    filtrate->add_option("formulas", formulas, "formulas whose closure is used")->required();
    filtrate->add_option("--corpus", corpus, "extra formulas for the relation bound check (repeatable)");
    filtrate->add_option("--out", out, "write the quotient and reports as JSON");
    filtrate->add_option("--dot", dot, "write the class graph in DOT format");
    filtrate->add_flag("--force-states", force, "allow compound programs on up to 6 states");
    filtrate->callback([&] { result = cmd_filtrate(model_path, formulas, corpus, out, dot, force); });

    auto* equiv = app.add_subcommand("equiv", "search sampled models for a state where two formulas differ");
    equiv->add_option("lhs", formula, "first formula")->required();
    equiv->add_option("rhs", formula2, "second formula")->required();
    equiv_flags.attach(equiv, 1000);
    equiv->add_option("--out", out, "write a JSON report");
    equiv->callback([&] { result = cmd_equiv(formula, formula2, equiv_flags, out); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kHolds : kError;
    } catch (const gcpdl::ParseError& e) {
        std::cerr << "error: ParseError at offset " << e.position() << ": " << e.what() << "\n";
        return kError;
    } catch (const gcpdl::NotAChainElement& e) {
        std::cerr << "error: NotAChainElement: " << e.what() << "\n";
        return kError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kError;
    }
    return result;
}
