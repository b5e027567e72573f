#pragma once

// Filtration of an explicit finite model through a finite FL-closed set Gamma.
//
// States are identified when every member of Gamma takes the same value at
// both. The quotient relation of an atomic program pi is
//
//   E(pi)(|s|, X) = meet over phi with [pi]phi, <pi>phi in Gamma of
//                   ([pi]phi(s) -> m) /\ (m -> <pi>phi(s)),   m = inf_{t in T} phi(t)
//
// where s is the representative of |s| and T the representatives of X. The
// empty meet is 1.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "gcpdl/chain.hpp"
#include "gcpdl/closure.hpp"
#include "gcpdl/formula.hpp"
#include "gcpdl/model.hpp"
#include "gcpdl/printer.hpp"
#include "gcpdl/relations.hpp"
#include "gcpdl/semantics.hpp"

namespace gcpdl {

class NotClosed : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct FiltrationResult {
    Model quotient;
    std::vector<int> class_of;                 // state of M -> quotient state
    std::vector<std::vector<int>> classes;     // quotient state -> members, ascending
    FormulaSet gamma;
    std::vector<std::string> warnings;

    int representative(int c) const { return classes.at(static_cast<std::size_t>(c)).front(); }
};

namespace detail {

// Formulas phi such that both [a]phi and <a>phi are in gamma.
inline std::vector<Formula> filtration_index(const FormulaSet& gamma, const std::string& atom) {
    std::vector<Formula> out;
    for (const auto& f : gamma) {
        if (f.kind() != FormulaKind::Box) continue;
        const Program& p = f.program();
        if (p.kind() != ProgramKind::Atomic || p.name() != atom) continue;
        if (gamma.contains(Formula::diamond(p, f.body()))) out.push_back(f.body());
    }
    return out;
}

inline std::set<std::string> atoms_of(const Model& m, const FormulaSet& gamma) {
    std::set<std::string> out;
    for (const auto& [name, r] : m.programs()) out.insert(name);
    for (const auto& f : gamma)
        if (f.is_modal() && f.program().kind() == ProgramKind::Atomic) out.insert(f.program().name());
    return out;
}

inline std::uint32_t lift(std::uint32_t quotient_set, const std::vector<int>& reps) {
    std::uint32_t t = 0;
    for (std::size_t c = 0; c < reps.size(); ++c)
        if ((quotient_set >> c) & 1U) t |= std::uint32_t{1} << reps[c];
    return t;
}

// E(atom)(c, X) for every class c and quotient subset X, with the given
// representative per class.
inline ReachRelation filtrated_relation(Evaluator& ev, const FormulaSet& gamma, const std::string& atom,
                                        const std::vector<int>& reps, const Chain& chain, const StateSpace& qspace) {
    const int top = chain.top();
    const Program a = Program::atomic(atom);
    ReachRelation e(chain, qspace);
    for (int c = 0; c < qspace.size(); ++c)
        for (std::uint32_t x = 0; x < qspace.subset_count(); ++x) e.set_raw(c, x, top);
    for (const auto& phi : filtration_index(gamma, atom)) {
        const auto& box = ev.raw_values(Formula::box(a, phi));
        const auto& dia = ev.raw_values(Formula::diamond(a, phi));
        const auto& body = ev.raw_values(phi);
        for (std::uint32_t x = 0; x < qspace.subset_count(); ++x) {
            int m = top;
            for (std::size_t c = 0; c < reps.size(); ++c)
                if ((x >> c) & 1U) m = kernel::meet(m, body[static_cast<std::size_t>(reps[c])]);
            for (int c = 0; c < qspace.size(); ++c) {
                const auto s = static_cast<std::size_t>(reps[static_cast<std::size_t>(c)]);
                const int term = kernel::meet(kernel::implies(box[s], m, top), kernel::implies(m, dia[s], top));
                e.set_raw(c, x, kernel::meet(e.raw(c, x), term));
            }
        }
    }
    return e;
}

} // namespace detail

/// Quotient of `m` through `gamma`. Throws NotClosed unless gamma is FL-closed.
inline FiltrationResult quotient(const Model& m, const FormulaSet& gamma) {
    const Chain& chain = m.chain();
    if (!is_fl_closed(gamma, chain)) throw NotClosed("the formula set is not Fischer-Ladner closed");

    Evaluator ev(m);
    std::map<std::vector<std::uint8_t>, int> by_signature;
    std::vector<int> class_of(static_cast<std::size_t>(m.size()));
    std::vector<std::vector<int>> classes;
    for (int s = 0; s < m.size(); ++s) {
        std::vector<std::uint8_t> sig;
        sig.reserve(gamma.size());
        for (const auto& f : gamma) sig.push_back(ev.raw_values(f)[static_cast<std::size_t>(s)]);
        auto [it, fresh] = by_signature.emplace(std::move(sig), static_cast<int>(classes.size()));
        if (fresh) classes.emplace_back();
        classes[static_cast<std::size_t>(it->second)].push_back(s);
        class_of[static_cast<std::size_t>(s)] = it->second;
    }

    std::vector<std::string> names;
    for (std::size_t c = 0; c < classes.size(); ++c) names.push_back("c" + std::to_string(c));
    Model q(chain, names);

    std::vector<int> min_reps, max_reps;
    for (const auto& cls : classes) {
        min_reps.push_back(cls.front());
        max_reps.push_back(cls.back());
    }

    for (const auto& f : gamma)
        if (f.kind() == FormulaKind::Var)
            for (std::size_t c = 0; c < classes.size(); ++c)
                q.set_value(f.name(), static_cast<int>(c), m.value(f.name(), min_reps[c]));

    FiltrationResult result{std::move(q), std::move(class_of), std::move(classes), gamma, {}};
    for (const auto& atom : detail::atoms_of(m, gamma)) {
        ReachRelation e = detail::filtrated_relation(ev, gamma, atom, min_reps, chain, result.quotient.space());
        if (!(e == detail::filtrated_relation(ev, gamma, atom, max_reps, chain, result.quotient.space())))
            result.warnings.push_back("relation of '" + atom + "' depends on the choice of representatives");
        result.quotient.set_program(atom, std::move(e));
    }
    for (const auto& w : ev.warnings()) result.warnings.push_back(w);
    return result;
}

inline FiltrationResult quotient(const Model& m, const Formula& seed) { return quotient(m, fl_closure(seed, m.chain())); }

// ---- relation bound ----------------------------------------------------------

struct Lemma4Violation {
    enum class Kind {
        RelationAboveQuotient,  // R(s, T) > E(|s|, |T|)
        CorpusAboveQuotient,    // corpus meet at (s, T) > E(|s|, |T|)
    };
    Kind kind;
    int state;
    StateSet target;
    std::optional<Formula> formula;  // the Gamma-index formula attaining E(|s|, |T|)
    ChainValue lhs;
    ChainValue rhs;
};

struct Lemma4Report {
    std::string program;
    std::size_t points_checked = 0;
    std::vector<Lemma4Violation> violations;
    bool ok() const noexcept { return violations.empty(); }
};

/// For all s and T: R_pi(s, T) <= E(pi)(|s|, |T|), and the meet over the
/// whole corpus (taken in M at s and T) <= E(pi)(|s|, |T|). The corpus is
/// extended by Gamma's own index formulas.
inline Lemma4Report check_lemma4(const Model& m, const FiltrationResult& fr, const std::string& atom,
                                 const std::vector<Formula>& corpus) {
    const Chain& chain = m.chain();
    const int top = chain.top();
    const Program a = Program::atomic(atom);
    Evaluator ev(m);
    Lemma4Report report{atom, 0, {}};

    const std::vector<Formula> index = detail::filtration_index(fr.gamma, atom);
    FormulaSet all(corpus.begin(), corpus.end());
    for (const auto& f : index) all.insert(f);

    const ReachRelation& r = ev.relation(a);
    const ReachRelation* e = fr.quotient.find_program(atom);
    for (int s = 0; s < m.size(); ++s) {
        const int c = fr.class_of[static_cast<std::size_t>(s)];
        for (std::uint32_t t = 0; t < m.space().subset_count(); ++t) {
            ++report.points_checked;
            std::uint32_t x = 0;
            for (int u = 0; u < m.size(); ++u)
                if ((t >> u) & 1U) x |= std::uint32_t{1} << fr.class_of[static_cast<std::size_t>(u)];
            const int restricted = e ? e->raw(c, x) : top;

            int corpus_meet = top;
            for (const auto& phi : all) {
                const auto& body = ev.raw_values(phi);
                int mv = top;
                for (int u = 0; u < m.size(); ++u)
                    if ((t >> u) & 1U) mv = kernel::meet(mv, body[static_cast<std::size_t>(u)]);
                const int bx = ev.raw_values(Formula::box(a, phi))[static_cast<std::size_t>(s)];
                const int dm = ev.raw_values(Formula::diamond(a, phi))[static_cast<std::size_t>(s)];
                corpus_meet = kernel::meet(corpus_meet, kernel::meet(kernel::implies(bx, mv, top), kernel::implies(mv, dm, top)));
            }

            auto culprit = [&]() -> std::optional<Formula> {
                const auto& reps = fr.classes;
                for (const auto& phi : index) {
                    const auto& body = ev.raw_values(phi);
                    int mv = top;
                    for (std::size_t k = 0; k < reps.size(); ++k)
                        if ((x >> k) & 1U) mv = kernel::meet(mv, body[static_cast<std::size_t>(reps[k].front())]);
                    const auto rep = static_cast<std::size_t>(reps[static_cast<std::size_t>(c)].front());
                    const int bx = ev.raw_values(Formula::box(a, phi))[rep];
                    const int dm = ev.raw_values(Formula::diamond(a, phi))[rep];
                    if (kernel::meet(kernel::implies(bx, mv, top), kernel::implies(mv, dm, top)) == restricted) return phi;
                }
                return std::nullopt;
            };

            const int rv = r.raw(s, t);
            if (rv > restricted)
                report.violations.push_back({Lemma4Violation::Kind::RelationAboveQuotient, s, StateSet(t), culprit(),
                                             chain.value(rv), chain.value(restricted)});
            if (corpus_meet > restricted)
                report.violations.push_back({Lemma4Violation::Kind::CorpusAboveQuotient, s, StateSet(t), culprit(),
                                             chain.value(corpus_meet), chain.value(restricted)});
        }
    }
    return report;
}

// ---- preservation -----------------------------------------------------------

struct PreservationRow {
    Formula formula;
    int agreeing = 0;
    int states = 0;
    std::vector<int> disagreeing;  // states of M
    bool preserved() const noexcept { return agreeing == states; }
};

struct PreservationReport {
    std::vector<PreservationRow> rows;
    std::size_t preserved() const {
        return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const auto& r) { return r.preserved(); }));
    }
};

/// Compares every member of Gamma at s in M with its value at |s| in the
/// quotient. Report only: agreement is not guaranteed on arbitrary models.
inline PreservationReport check_preservation(const Model& m, const FiltrationResult& fr) {
    Evaluator original(m);
    Evaluator filtered(fr.quotient);
    PreservationReport report;
    for (const auto& f : fr.gamma) {
        PreservationRow row{f, 0, m.size(), {}};
        const auto& a = original.raw_values(f);
        const auto& b = filtered.raw_values(f);
        for (int s = 0; s < m.size(); ++s) {
            if (a[static_cast<std::size_t>(s)] == b[static_cast<std::size_t>(fr.class_of[static_cast<std::size_t>(s)])])
                ++row.agreeing;
            else
                row.disagreeing.push_back(s);
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

} // namespace gcpdl
