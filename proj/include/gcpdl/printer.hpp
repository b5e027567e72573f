#pragma once

// Concrete syntax output. The printed text reparses to the identical tree:
// `~x` is emitted only for `x -> #0`, which is exactly what the parser builds
// from `~x`, and parentheses follow the grammar's precedence and
// associativity.

#include <ostream>
#include <string>

#include "gcpdl/formula.hpp"

namespace gcpdl {

namespace detail {

// Formula binding strength: implication 1, disjunction 2, conjunction 3,
// prefix operators 4, atoms 5.
inline int level(const Formula& f) {
    switch (f.kind()) {
    case FormulaKind::Implies: return f.rhs().kind() == FormulaKind::Const && f.rhs().value().is_zero() ? 4 : 1;
    case FormulaKind::Or: return 2;
    case FormulaKind::And: return 3;
    case FormulaKind::Box:
    case FormulaKind::Diamond: return 4;
    default: return 5;
    }
}

// Program binding strength: choice 0, parallel 1, sequence 2, star 3, atoms 4.
inline int level(const Program& p) {
    switch (p.kind()) {
    case ProgramKind::Union: return 0;
    case ProgramKind::Inter: return 1;
    case ProgramKind::Seq: return 2;
    case ProgramKind::Star: return 3;
    default: return 4;
    }
}

inline void print(std::string& out, const Program& p, int min_level);

inline void print(std::string& out, const Formula& f, int min_level) {
    const int lv = level(f);
    const bool paren = lv < min_level;
    if (paren) out += '(';
    switch (f.kind()) {
    case FormulaKind::Var: out += f.name(); break;
    case FormulaKind::Const:
        out += '#';
        out += f.value().to_string();
        break;
    case FormulaKind::And:
        print(out, f.lhs(), 3);
        out += " & ";
        print(out, f.rhs(), 4);
        break;
    case FormulaKind::Or:
        print(out, f.lhs(), 2);
        out += " | ";
        print(out, f.rhs(), 3);
        break;
    case FormulaKind::Implies:
        if (lv == 4) {
            out += '~';
            print(out, f.lhs(), 4);
        } else {
            print(out, f.lhs(), 2);
            out += " -> ";
            print(out, f.rhs(), 1);
        }
        break;
    case FormulaKind::Box:
        out += '[';
        print(out, f.program(), 0);
        out += ']';
        print(out, f.body(), 4);
        break;
    case FormulaKind::Diamond:
        out += '<';
        print(out, f.program(), 0);
        out += '>';
        print(out, f.body(), 4);
        break;
    }
    if (paren) out += ')';
}

inline void print(std::string& out, const Program& p, int min_level) {
    const bool paren = level(p) < min_level;
    if (paren) out += '(';
    switch (p.kind()) {
    case ProgramKind::Atomic: out += p.name(); break;
    case ProgramKind::Union:
        print(out, p.lhs(), 0);
        out += " + ";
        print(out, p.rhs(), 1);
        break;
    case ProgramKind::Inter:
        print(out, p.lhs(), 1);
        out += " ^ ";
        print(out, p.rhs(), 2);
        break;
    case ProgramKind::Seq:
        print(out, p.lhs(), 2);
        out += ';';
        print(out, p.rhs(), 3);
        break;
    case ProgramKind::Star:
        print(out, p.inner(), 3);
        out += '*';
        break;
    case ProgramKind::Test:
        out += "?(";
        print(out, p.condition(), 0);
        out += ')';
        break;
    }
    if (paren) out += ')';
}

} // namespace detail

inline std::string to_string(const Formula& f) {
    std::string out;
    detail::print(out, f, 0);
    return out;
}

inline std::string to_string(const Program& p) {
    std::string out;
    detail::print(out, p, 0);
    return out;
}

inline std::ostream& operator<<(std::ostream& os, const Formula& f) { return os << to_string(f); }
inline std::ostream& operator<<(std::ostream& os, const Program& p) { return os << to_string(p); }

} // namespace gcpdl
