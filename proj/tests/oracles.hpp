#pragma once

// Brute-force reference implementations used to cross-check the library.
// They work on exact fractions and enumerate definitions literally, sharing
// no code with the kernels under test beyond the AST and model containers.

#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "gcpdl/gcpdl.hpp"

namespace oracle {

/// Exact rational in lowest terms.
struct Frac {
    long long num = 0;
    long long den = 1;

    Frac() = default;
    Frac(long long n, long long d) : num(n), den(d) {
        const long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }
    friend bool operator==(const Frac& a, const Frac& b) { return a.num * b.den == b.num * a.den; }
    friend bool operator<(const Frac& a, const Frac& b) { return a.num * b.den < b.num * a.den; }
    friend bool operator<=(const Frac& a, const Frac& b) { return !(b < a); }
    friend Frac operator+(const Frac& a, const Frac& b) { return {a.num * b.den + b.num * a.den, a.den * b.den}; }
    friend Frac operator-(const Frac& a, const Frac& b) { return {a.num * b.den - b.num * a.den, a.den * b.den}; }
};

inline const Frac kZero{0, 1};
inline const Frac kOne{1, 1};

inline Frac fmax(const Frac& a, const Frac& b) { return a < b ? b : a; }
inline Frac fmin(const Frac& a, const Frac& b) { return a < b ? a : b; }
inline Frac tnorm(const Frac& a, const Frac& b) { return fmax(kZero, a + b - kOne); }
inline Frac residuum(const Frac& a, const Frac& b) { return fmin(kOne, kOne - a + b); }
inline Frac negate(const Frac& a) { return kOne - a; }

inline Frac frac(const gcpdl::ChainValue& v) { return {v.numerator(), v.denominator()}; }

/// Relation as a map (state, subset bits) -> fraction; missing means 0.
struct Rel {
    int states = 0;
    std::map<std::pair<int, std::uint32_t>, Frac> entries;

    Frac at(int s, std::uint32_t t) const {
        auto it = entries.find({s, t});
        return it == entries.end() ? kZero : it->second;
    }
    void raise(int s, std::uint32_t t, const Frac& v) {
        if (kZero < v && at(s, t) < v) entries[{s, t}] = v;
    }
    std::uint32_t subsets() const { return std::uint32_t{1} << states; }
};

inline Rel from(const gcpdl::ReachRelation& r) {
    Rel out;
    out.states = r.space().size();
    for (const auto& e : r.support()) out.entries[{e.state, e.target.bits()}] = frac(e.value);
    return out;
}

inline bool same(const Rel& a, const gcpdl::ReachRelation& b) {
    for (int s = 0; s < a.states; ++s)
        for (std::uint32_t t = 0; t < a.subsets(); ++t)
            if (!(a.at(s, t) == frac(b.at(s, gcpdl::StateSet(t))))) return false;
    return true;
}

inline Rel identity(int states) {
    Rel r;
    r.states = states;
    for (int s = 0; s < states; ++s) r.entries[{s, std::uint32_t{1} << s}] = kOne;
    return r;
}

inline Rel join(const Rel& a, const Rel& b) {
    Rel out;
    out.states = a.states;
    for (int s = 0; s < a.states; ++s)
        for (std::uint32_t t = 0; t < a.subsets(); ++t) out.raise(s, t, fmax(a.at(s, t), b.at(s, t)));
    return out;
}

/// (R o Q)(s, T): for every U and every assignment u -> T_u, contributes
/// R(s, U) (.) prod Q(u, T_u) to T = union T_u.
inline Rel compose(const Rel& r, const Rel& q) {
    Rel out;
    out.states = r.states;
    const std::uint32_t subsets = r.subsets();
    for (int s = 0; s < r.states; ++s) {
        for (std::uint32_t u = 0; u < subsets; ++u) {
            const Frac ru = r.at(s, u);
            if (ru == kZero) continue;
            std::vector<int> members;
            for (int x = 0; x < r.states; ++x)
                if ((u >> x) & 1U) members.push_back(x);
            std::vector<std::uint32_t> pick(members.size(), 0);
            std::function<void(std::size_t, Frac, std::uint32_t)> go = [&](std::size_t i, Frac acc, std::uint32_t target) {
                if (i == members.size()) {
                    out.raise(s, target, acc);
                    return;
                }
                for (std::uint32_t t = 0; t < subsets; ++t) go(i + 1, tnorm(acc, q.at(members[i], t)), target | t);
            };
            go(0, ru, 0);
        }
    }
    return out;
}

inline Rel parallel(const Rel& r, const Rel& q, bool disjoint = false) {
    Rel out;
    out.states = r.states;
    for (int s = 0; s < r.states; ++s)
        for (std::uint32_t t = 0; t < r.subsets(); ++t)
            for (std::uint32_t w = 0; w < r.subsets(); ++w)
                if (!disjoint || !(t & w)) out.raise(s, t | w, tnorm(r.at(s, t), q.at(s, w)));
    return out;
}

inline bool equal(const Rel& a, const Rel& b) {
    for (int s = 0; s < a.states; ++s)
        for (std::uint32_t t = 0; t < a.subsets(); ++t)
            if (!(a.at(s, t) == b.at(s, t))) return false;
    return true;
}

/// Iterates R^(k) far past any possible stabilisation point.
inline Rel star(const Rel& r, int order) {
    const Rel id = identity(r.states);
    Rel acc = id;
    const int bound = r.states * static_cast<int>(r.subsets()) * (order - 1) + 2;
    for (int i = 0; i < bound; ++i) acc = join(id, compose(r, acc));
    return acc;
}

/// Direct recursive reading of the interpretation clauses.
class Semantics {
public:
    explicit Semantics(const gcpdl::Model& m) : m_(m) {}

    Frac eval(const gcpdl::Formula& f, int s) const {
        using gcpdl::FormulaKind;
        switch (f.kind()) {
        case FormulaKind::Var: return frac(m_.value(f.name(), s));
        case FormulaKind::Const: return frac(f.value());
        case FormulaKind::And: return fmin(eval(f.lhs(), s), eval(f.rhs(), s));
        case FormulaKind::Or: return fmax(eval(f.lhs(), s), eval(f.rhs(), s));
        case FormulaKind::Implies: return residuum(eval(f.lhs(), s), eval(f.rhs(), s));
        case FormulaKind::Box:
        case FormulaKind::Diamond: {
            const Rel r = relation(f.program());
            const bool box = f.kind() == FormulaKind::Box;
            Frac acc = box ? kOne : kZero;
            for (std::uint32_t t = 0; t < r.subsets(); ++t) {
                Frac inf = kOne;
                for (int u = 0; u < m_.size(); ++u)
                    if ((t >> u) & 1U) inf = fmin(inf, eval(f.body(), u));
                acc = box ? fmin(acc, residuum(r.at(s, t), inf)) : fmax(acc, tnorm(r.at(s, t), inf));
            }
            return acc;
        }
        }
        return kZero;
    }

    Rel relation(const gcpdl::Program& p) const {
        using gcpdl::ProgramKind;
        switch (p.kind()) {
        case ProgramKind::Atomic: {
            if (const auto* r = m_.find_program(p.name())) return from(*r);
            Rel z;
            z.states = m_.size();
            return z;
        }
        case ProgramKind::Union: return join(relation(p.lhs()), relation(p.rhs()));
        case ProgramKind::Seq: return compose(relation(p.lhs()), relation(p.rhs()));
        case ProgramKind::Inter: return parallel(relation(p.lhs()), relation(p.rhs()));
        case ProgramKind::Star: return star(relation(p.inner()), m_.chain().order());
        case ProgramKind::Test: {
            Rel r;
            r.states = m_.size();
            for (int s = 0; s < m_.size(); ++s) r.raise(s, std::uint32_t{1} << s, eval(p.condition(), s));
            return r;
        }
        }
        return {};
    }

private:
    const gcpdl::Model& m_;
};

/// Classical reading at n = 2: R(s, T) = 1 means "s can reach exactly T".
/// [pi]phi holds iff every reachable T lies inside the phi-states; <pi>phi iff
/// some reachable T does.
inline bool classical_box(const gcpdl::ReachRelation& r, int s, const std::vector<bool>& phi) {
    for (const auto& e : r.support()) {
        if (e.state != s) continue;
        for (int t : e.target.members())
            if (!phi[static_cast<std::size_t>(t)]) return false;
    }
    return true;
}

inline bool classical_diamond(const gcpdl::ReachRelation& r, int s, const std::vector<bool>& phi) {
    for (const auto& e : r.support()) {
        if (e.state != s) continue;
        bool all = true;
        for (int t : e.target.members()) all = all && phi[static_cast<std::size_t>(t)];
        if (all) return true;
    }
    return false;
}

} // namespace oracle
