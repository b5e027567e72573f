#pragma once

// JSON encodings of models, quotients and audit reports, plus DOT output for
// quotient class graphs. Requires nlohmann/json ("json.hpp") on the include
// path.
//
// Model:
//   { "n": 3,
//     "states": ["s0", "s1"],
//     "valuation": { "p": { "s0": "1/2" } },
//     "programs": { "a": [ { "from": "s0", "to": ["s0", "s1"], "value": "1" } ] } }
//
// Absent entries are 0. `to` lists are sets: duplicates and order are
// ignored. A (from, to) pair may appear only once per program.

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "gcpdl/audit.hpp"
#include "gcpdl/chain.hpp"
#include "gcpdl/filtration.hpp"
#include "gcpdl/model.hpp"
#include "gcpdl/printer.hpp"
#include "gcpdl/relations.hpp"

namespace gcpdl {

using json = nlohmann::ordered_json;

class ModelFormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline ChainValue value_from_json(const json& j, const Chain& chain, const std::string& where) {
    if (!j.is_string()) throw ModelFormatError(where + ": chain values are strings such as \"1/2\"");
    return chain.parse(j.get<std::string>());
}

inline int state_from_json(const json& j, const Model& m, const std::string& where) {
    if (!j.is_string()) throw ModelFormatError(where + ": states are referenced by name");
    try {
        return m.state_index(j.get<std::string>());
    } catch (const std::out_of_range& e) {
        throw ModelFormatError(where + ": " + e.what());
    }
}

} // namespace detail

inline Model model_from_json(const json& j) {
    if (!j.is_object()) throw ModelFormatError("a model is a JSON object");
    if (!j.contains("n") || !j["n"].is_number_integer()) throw ModelFormatError("missing integer field 'n'");
    const Chain chain(j["n"].get<int>());
    if (!j.contains("states") || !j["states"].is_array() || j["states"].empty())
        throw ModelFormatError("missing non-empty array 'states'");
    std::vector<std::string> names;
    for (const auto& s : j["states"]) {
        if (!s.is_string()) throw ModelFormatError("state names are strings");
        names.push_back(s.get<std::string>());
    }
    if (names.size() > static_cast<std::size_t>(StateSpace::kMaxStates))
        throw ModelFormatError("at most " + std::to_string(StateSpace::kMaxStates) + " states are supported");
    Model m(chain, names);

    if (j.contains("valuation")) {
        if (!j["valuation"].is_object()) throw ModelFormatError("'valuation' is an object");
        for (const auto& [var, row] : j["valuation"].items()) {
            if (!row.is_object()) throw ModelFormatError("valuation of '" + var + "' is an object");
            m.set_value(var, 0, chain.zero());
            for (const auto& [state, v] : row.items()) {
                const std::string where = "valuation." + var + "." + state;
                m.set_value(var, detail::state_from_json(json(state), m, where), detail::value_from_json(v, chain, where));
            }
        }
    }

    if (j.contains("programs")) {
        if (!j["programs"].is_object()) throw ModelFormatError("'programs' is an object");
        for (const auto& [name, entries] : j["programs"].items()) {
            if (!entries.is_array()) throw ModelFormatError("program '" + name + "' is an array of entries");
            ReachRelation& r = m.program(name);
            ReachRelation seen(chain, m.space());
            for (std::size_t i = 0; i < entries.size(); ++i) {
                const auto& e = entries[i];
                const std::string where = "programs." + name + "[" + std::to_string(i) + "]";
                if (!e.is_object() || !e.contains("from") || !e.contains("to") || !e.contains("value"))
                    throw ModelFormatError(where + ": entries need 'from', 'to' and 'value'");
                const int from = detail::state_from_json(e["from"], m, where + ".from");
                if (!e["to"].is_array()) throw ModelFormatError(where + ".to: expected an array");
                StateSet to;
                for (const auto& t : e["to"]) to.insert(detail::state_from_json(t, m, where + ".to"));
                if (seen.raw(from, to.bits()))
                    throw ModelFormatError(where + ": duplicate entry for this source and target set");
                seen.set_raw(from, to.bits(), 1);
                r.set(from, to, detail::value_from_json(e["value"], chain, where + ".value"));
            }
        }
    }
    return m;
}

inline json model_to_json(const Model& m) {
    json j;
    j["n"] = m.chain().order();
    j["states"] = m.state_names();
    json val = json::object();
    for (const auto& [var, values] : m.valuation()) {
        json row = json::object();
        for (int s = 0; s < m.size(); ++s)
            if (!values[static_cast<std::size_t>(s)].is_zero()) row[m.state_name(s)] = values[static_cast<std::size_t>(s)].to_string();
        val[var] = std::move(row);
    }
    j["valuation"] = std::move(val);
    json progs = json::object();
    for (const auto& [name, r] : m.programs()) {
        json entries = json::array();
        for (const auto& e : r.support()) {
            json to = json::array();
            for (int t : e.target.members()) to.push_back(m.state_name(t));
            entries.push_back({{"from", m.state_name(e.state)}, {"to", std::move(to)}, {"value", e.value.to_string()}});
        }
        progs[name] = std::move(entries);
    }
    j["programs"] = std::move(progs);
    return j;
}

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ModelFormatError(path + ": " + e.what());
    }
}

inline Model load_model(const std::string& path) { return model_from_json(read_json_file(path)); }

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// A quotient is a model with an extra "classes" table (class -> members of
/// the original model) and the formula set it was built from. model_from_json
/// reads it back as a plain model.
inline json quotient_to_json(const Model& original, const FiltrationResult& fr) {
    json j = model_to_json(fr.quotient);
    json classes = json::object();
    for (std::size_t c = 0; c < fr.classes.size(); ++c) {
        json members = json::array();
        for (int s : fr.classes[c]) members.push_back(original.state_name(s));
        classes[fr.quotient.state_name(static_cast<int>(c))] = std::move(members);
    }
    j["classes"] = std::move(classes);
    json gamma = json::array();
    for (const auto& f : fr.gamma) gamma.push_back(to_string(f));
    j["gamma"] = std::move(gamma);
    j["warnings"] = fr.warnings;
    return j;
}

/// Class graph: one node per class listing its members, one edge per nonzero
/// singleton-target entry of each program and one hyperedge node per larger
/// or empty target set.
inline std::string quotient_to_dot(const Model& original, const FiltrationResult& fr) {
    std::ostringstream out;
    out << "digraph quotient {\n";
    for (std::size_t c = 0; c < fr.classes.size(); ++c) {
        out << "  c" << c << " [label=\"c" << c << "\\n{";
        for (std::size_t k = 0; k < fr.classes[c].size(); ++k)
            out << (k ? "," : "") << original.state_name(fr.classes[c][k]);
        out << "}\"];\n";
    }
    int hyper = 0;
    for (const auto& [name, r] : fr.quotient.programs()) {
        for (const auto& e : r.support()) {
            const auto members = e.target.members();
            if (members.size() == 1) {
                out << "  c" << e.state << " -> c" << members.front() << " [label=\"" << name << ":"
                    << e.value.to_string() << "\"];\n";
                continue;
            }
            out << "  h" << hyper << " [shape=point];\n";
            out << "  c" << e.state << " -> h" << hyper << " [label=\"" << name << ":" << e.value.to_string()
                << "\"];\n";
            for (int t : members) out << "  h" << hyper << " -> c" << t << " [style=dashed];\n";
            ++hyper;
        }
    }
    out << "}\n";
    return out.str();
}

inline json bindings_to_json(const Bindings& b) {
    json j = json::object();
    for (const auto& [k, v] : b.formulas) j[k] = to_string(v);
    for (const auto& [k, v] : b.programs) j[k] = to_string(v);
    for (const auto& [k, v] : b.constants) j[k] = v.to_string();
    if (b.op) j["op"] = to_string(*b.op);
    return j;
}

inline json config_to_json(const SamplerConfig& c) {
    return {{"n", c.n},
            {"max_states", c.max_states},
            {"density", c.density},
            {"programs", c.programs},
            {"variables", c.variables},
            {"instances_per_model", c.instances_per_model},
            {"seed", c.seed}};
}

inline json counterexample_to_json(const Counterexample& w) {
    json j{{"state", w.model.state_name(w.state)},
           {"value", w.value.to_string()},
           {"instance", to_string(w.instance)},
           {"bindings", bindings_to_json(w.bindings)}};
    if (w.premise) j["premise"] = to_string(*w.premise);
    j["model"] = model_to_json(w.model);
    return j;
}

/// Report layout:
///   { "config": {...}, "budget": N, "counterexamples": K,
///     "entries": [ { "schema", "variant", "n", "models_tested",
///                    "instantiations_tested", "seed", "verdict",
///                    "witness"? } ] }
inline json audit_report_to_json(const AuditReport& r) {
    json entries = json::array();
    for (const auto& e : r.entries) {
        json j{{"schema", e.schema},
               {"variant", e.variant},
               {"n", e.n},
               {"models_tested", e.models_tested},
               {"instantiations_tested", e.instantiations_tested},
               {"seed", e.seed},
               {"verdict", e.verdict()}};
        if (e.witness) j["witness"] = counterexample_to_json(*e.witness);
        entries.push_back(std::move(j));
    }
    return {{"config", config_to_json(r.config)},
            {"budget", r.budget},
            {"counterexamples", r.counterexamples()},
            {"entries", std::move(entries)}};
}

inline json preservation_to_json(const PreservationReport& p, const Model& original) {
    json rows = json::array();
    for (const auto& row : p.rows) {
        json bad = json::array();
        for (int s : row.disagreeing) bad.push_back(original.state_name(s));
        rows.push_back({{"formula", to_string(row.formula)},
                        {"agreeing", row.agreeing},
                        {"states", row.states},
                        {"disagreeing", std::move(bad)}});
    }
    return {{"preserved", p.preserved()}, {"formulas", p.rows.size()}, {"rows", std::move(rows)}};
}

inline void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << j.dump(2) << "\n";
}

} // namespace gcpdl
