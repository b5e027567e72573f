#pragma once

// Fischer-Ladner closure: the least set containing the seeds that is closed
// under subformulas and the program-decomposition rules for boxes and
// diamonds.

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "gcpdl/chain.hpp"
#include "gcpdl/formula.hpp"

namespace gcpdl {

class ClosureBudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultClosureCap = 10'000;

/// Insertion-ordered set of formulas.
class FormulaSet {
public:
    FormulaSet() = default;
    FormulaSet(std::initializer_list<Formula> init) {
        for (const auto& f : init) insert(f);
    }
    template <class It>
    FormulaSet(It first, It last) {
        for (; first != last; ++first) insert(*first);
    }

    bool insert(const Formula& f) {
        if (!index_.insert(f).second) return false;
        items_.push_back(f);
        return true;
    }

    bool contains(const Formula& f) const { return index_.count(f) != 0; }
    std::size_t size() const noexcept { return items_.size(); }
    bool empty() const noexcept { return items_.empty(); }

    auto begin() const { return items_.begin(); }
    auto end() const { return items_.end(); }
    const Formula& operator[](std::size_t i) const { return items_[i]; }
    const std::vector<Formula>& items() const noexcept { return items_; }

    bool subset_of(const FormulaSet& other) const {
        for (const auto& f : items_)
            if (!other.contains(f)) return false;
        return true;
    }

    /// Set equality; insertion order is ignored.
    friend bool operator==(const FormulaSet& a, const FormulaSet& b) {
        return a.size() == b.size() && a.subset_of(b);
    }

private:
    std::vector<Formula> items_;
    std::unordered_set<Formula> index_;
};

/// Immediate subformulas. The body of a box or diamond is a subformula;
/// formulas inside tests are reached through the test rules instead.
inline std::vector<Formula> immediate_subformulas(const Formula& f) {
    switch (f.kind()) {
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Implies: return {f.lhs(), f.rhs()};
    case FormulaKind::Box:
    case FormulaKind::Diamond: return {f.body()};
    default: return {};
    }
}

/// The formulas one closure step adds for `f` (subformulas plus the
/// applicable decomposition rule). `chain` supplies the constant #1 used by
/// the parallel-box rule.
inline std::vector<Formula> closure_successors(const Formula& f, const Chain& chain) {
    std::vector<Formula> out = immediate_subformulas(f);
    if (!f.is_modal()) return out;

    const Program& p = f.program();
    const Formula& phi = f.body();
    const bool box = f.kind() == FormulaKind::Box;
    auto mod = [box](const Program& q, const Formula& g) { return box ? Formula::box(q, g) : Formula::diamond(q, g); };

    switch (p.kind()) {
    case ProgramKind::Atomic: break;
    case ProgramKind::Union:
        out.push_back(mod(p.lhs(), phi));
        out.push_back(mod(p.rhs(), phi));
        break;
    case ProgramKind::Inter:
        out.push_back(mod(p.lhs(), phi));
        out.push_back(mod(p.rhs(), phi));
        // Only the box rule adds [pi0]#1 and [pi1]#1; the diamond rule has no
        // counterpart.
        if (box) {
            out.push_back(Formula::box(p.lhs(), Formula::constant(chain.one())));
            out.push_back(Formula::box(p.rhs(), Formula::constant(chain.one())));
        }
        break;
    case ProgramKind::Seq: out.push_back(mod(p.lhs(), mod(p.rhs(), phi))); break;
    case ProgramKind::Star: out.push_back(mod(p.inner(), f)); break;
    case ProgramKind::Test:
        out.push_back(box ? Formula::implies(p.condition(), phi) : Formula::conj(p.condition(), phi));
        break;
    }
    return out;
}

inline FormulaSet fl_closure(std::span<const Formula> seeds, const Chain& chain, std::size_t cap = kDefaultClosureCap) {
    FormulaSet closed;
    std::vector<Formula> work;
    auto add = [&](const Formula& g) {
        if (closed.insert(g)) {
            if (closed.size() > cap)
                throw ClosureBudgetExceeded("closure exceeded " + std::to_string(cap) + " formulas");
            work.push_back(g);
        }
    };
    for (const auto& s : seeds) add(s);
    // Process in discovery order so the result order is deterministic.
    for (std::size_t i = 0; i < work.size(); ++i) {
        Formula f = work[i];
        for (const auto& g : closure_successors(f, chain)) add(g);
    }
    return closed;
}

inline FormulaSet fl_closure(const Formula& seed, const Chain& chain, std::size_t cap = kDefaultClosureCap) {
    return fl_closure(std::span<const Formula>(&seed, 1), chain, cap);
}

inline FormulaSet fl_closure(const FormulaSet& seeds, const Chain& chain, std::size_t cap = kDefaultClosureCap) {
    return fl_closure(std::span<const Formula>(seeds.items()), chain, cap);
}

inline bool is_fl_closed(const FormulaSet& gamma, const Chain& chain) {
    for (const auto& f : gamma)
        for (const auto& g : closure_successors(f, chain))
            if (!gamma.contains(g)) return false;
    return true;
}

} // namespace gcpdl
