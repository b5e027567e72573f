#pragma once

// Reachable L_n-relations: graded maps S x P(S) -> L_n over a small finite
// state space, and the relation algebra used to interpret compound programs.
//
// A relation is stored densely as one numerator per (state, subset) pair,
// indexed by the subset's bitmask. Entries that were never set are 0.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "gcpdl/chain.hpp"

namespace gcpdl {

class SpaceMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A subset of the state space, encoded as a bitmask over state indices.
class StateSet {
public:
    using mask_type = std::uint32_t;

    constexpr StateSet() = default;
    constexpr explicit StateSet(mask_type bits) : bits_(bits) {}
    StateSet(std::initializer_list<int> states) {
        for (int s : states) insert(s);
    }

    static constexpr StateSet singleton(int s) { return StateSet(mask_type{1} << s); }

    constexpr mask_type bits() const noexcept { return bits_; }
    constexpr bool empty() const noexcept { return bits_ == 0; }
    int size() const noexcept { return std::popcount(bits_); }
    constexpr bool contains(int s) const noexcept { return (bits_ >> s) & 1U; }
    void insert(int s) { bits_ |= mask_type{1} << s; }
    constexpr bool subset_of(StateSet o) const noexcept { return (bits_ & ~o.bits_) == 0; }

    std::vector<int> members() const {
        std::vector<int> out;
        for (mask_type m = bits_; m; m &= m - 1) out.push_back(std::countr_zero(m));
        return out;
    }

    friend constexpr StateSet operator|(StateSet a, StateSet b) { return StateSet(a.bits_ | b.bits_); }
    friend constexpr StateSet operator&(StateSet a, StateSet b) { return StateSet(a.bits_ & b.bits_); }
    friend constexpr bool operator==(StateSet, StateSet) = default;

private:
    mask_type bits_ = 0;
};

/// States are the indices 0..size-1.
class StateSpace {
public:
    static constexpr int kMaxStates = 10;

    explicit StateSpace(int size) : size_(size) {
        if (size < 1 || size > kMaxStates)
            throw std::invalid_argument("state space size must lie in [1, " + std::to_string(kMaxStates) + "], got " +
                                        std::to_string(size));
    }

    int size() const noexcept { return size_; }
    std::uint32_t subset_count() const noexcept { return std::uint32_t{1} << size_; }
    StateSet all() const noexcept { return StateSet(subset_count() - 1); }

    friend bool operator==(const StateSpace&, const StateSpace&) = default;

private:
    int size_;
};

class ReachRelation {
public:
    struct Entry {
        int state;
        StateSet target;
        ChainValue value;
    };

    /// The zero relation.
    ReachRelation(const Chain& chain, const StateSpace& space)
        : chain_(chain), space_(space), table_(static_cast<std::size_t>(space.size()) * space.subset_count(), 0) {}

    const Chain& chain() const noexcept { return chain_; }
    const StateSpace& space() const noexcept { return space_; }

    ChainValue at(int s, StateSet target) const { return chain_.value(raw(s, target.bits())); }

    void set(int s, StateSet target, const ChainValue& v) {
        if (v.order() != chain_.order()) throw ContextMismatch("relation value from a different chain");
        check_index(s, target);
        table_[index(s, target.bits())] = static_cast<std::uint8_t>(v.numerator());
    }

    /// Raw numerator access for the algebra kernels.
    int raw(int s, std::uint32_t mask) const { return table_[index(s, mask)]; }
    void set_raw(int s, std::uint32_t mask, int numerator) { table_[index(s, mask)] = static_cast<std::uint8_t>(numerator); }

    /// All nonzero entries, ordered by state then subset mask.
    std::vector<Entry> support() const {
        std::vector<Entry> out;
        for (int s = 0; s < space_.size(); ++s)
            for (std::uint32_t m = 0; m < space_.subset_count(); ++m)
                if (int v = raw(s, m)) out.push_back({s, StateSet(m), chain_.value(v)});
        return out;
    }

    bool is_zero() const {
        return std::all_of(table_.begin(), table_.end(), [](std::uint8_t v) { return v == 0; });
    }

    void require_compatible(const ReachRelation& o) const {
        if (!(chain_ == o.chain_)) throw ContextMismatch("relations over different chains");
        if (!(space_ == o.space_)) throw SpaceMismatch("relations over different state spaces");
    }

    friend bool operator==(const ReachRelation& a, const ReachRelation& b) {
        return a.chain_ == b.chain_ && a.space_ == b.space_ && a.table_ == b.table_;
    }

private:
    std::size_t index(int s, std::uint32_t mask) const {
        return static_cast<std::size_t>(s) * space_.subset_count() + mask;
    }

    void check_index(int s, StateSet target) const {
        if (s < 0 || s >= space_.size() || !target.subset_of(space_.all()))
            throw std::out_of_range("state or target set outside the state space");
    }

    Chain chain_;
    StateSpace space_;
    std::vector<std::uint8_t> table_;
};

struct RelationOptions {
    /// Read the union clause literally, joining over t in T, which makes the
    /// union vanish at T = {}. Off by default: union is pointwise join.
    bool literal_union = false;
    /// Restrict parallel composition to disjoint T, W.
    bool disjoint_parallel = false;
};

inline ReachRelation zero_relation(const Chain& chain, const StateSpace& space) { return ReachRelation(chain, space); }

/// iota(s, T) = 1 iff T = {s}.
inline ReachRelation iota(const StateSpace& space, const Chain& chain) {
    ReachRelation r(chain, space);
    for (int s = 0; s < space.size(); ++s) r.set_raw(s, StateSet::singleton(s).bits(), chain.top());
    return r;
}

inline ReachRelation union_of(const ReachRelation& r, const ReachRelation& q, const RelationOptions& opts = {}) {
    r.require_compatible(q);
    ReachRelation out(r.chain(), r.space());
    const auto& sp = r.space();
    for (int s = 0; s < sp.size(); ++s)
        for (std::uint32_t m = 0; m < sp.subset_count(); ++m)
            out.set_raw(s, m, opts.literal_union && m == 0 ? 0 : kernel::join(r.raw(s, m), q.raw(s, m)));
    return out;
}

inline bool leq(const ReachRelation& r, const ReachRelation& q) {
    r.require_compatible(q);
    const auto& sp = r.space();
    for (int s = 0; s < sp.size(); ++s)
        for (std::uint32_t m = 0; m < sp.subset_count(); ++m)
            if (r.raw(s, m) > q.raw(s, m)) return false;
    return true;
}

namespace detail {

/// Sup-(.) convolution over set union: out[X] = sup { a[A] (.) b[B] : A u B = X }.
/// With `disjoint`, only pairs with A n B = {} contribute.
inline void union_convolve(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b, std::span<std::uint8_t> out,
                           int top, bool disjoint = false) {
    std::fill(out.begin(), out.end(), std::uint8_t{0});
    const auto count = static_cast<std::uint32_t>(a.size());
    for (std::uint32_t x = 0; x < count; ++x) {
        if (!a[x]) continue;
        for (std::uint32_t y = 0; y < count; ++y) {
            if (!b[y] || (disjoint && (x & y))) continue;
            int v = kernel::conj(a[x], b[y], top);
            if (v > out[x | y]) out[x | y] = static_cast<std::uint8_t>(v);
        }
    }
}

} // namespace detail

/// (R o Q)(s, T) = sup over U and families {T_u} with union T of
/// R(s, U) (.) prod_{u in U} Q(u, T_u).
///
/// The inner sup over families depends only on U, so it is tabulated once per
/// U by folding in one member of U at a time; the empty family contributes 1
/// at T = {}.
inline ReachRelation compose(const ReachRelation& r, const ReachRelation& q) {
    r.require_compatible(q);
    const auto& sp = r.space();
    const std::uint32_t subsets = sp.subset_count();
    const int top = r.chain().top();

    // families[U * subsets + T] = sup over families indexed by U with union T.
    std::vector<std::uint8_t> families(static_cast<std::size_t>(subsets) * subsets, 0);
    families[0] = static_cast<std::uint8_t>(top);
    std::vector<std::uint8_t> row(subsets);
    for (std::uint32_t u = 1; u < subsets; ++u) {
        const int member = std::countr_zero(u);
        const std::uint32_t rest = u & (u - 1);
        for (std::uint32_t t = 0; t < subsets; ++t) row[t] = static_cast<std::uint8_t>(q.raw(member, t));
        detail::union_convolve(std::span<const std::uint8_t>(&families[static_cast<std::size_t>(rest) * subsets], subsets),
                               row, std::span<std::uint8_t>(&families[static_cast<std::size_t>(u) * subsets], subsets),
                               top);
    }

    ReachRelation out(r.chain(), sp);
    for (int s = 0; s < sp.size(); ++s) {
        for (std::uint32_t u = 0; u < subsets; ++u) {
            const int ru = r.raw(s, u);
            if (!ru) continue;
            const std::uint8_t* fam = &families[static_cast<std::size_t>(u) * subsets];
            for (std::uint32_t t = 0; t < subsets; ++t) {
                int v = kernel::conj(ru, fam[t], top);
                if (v > out.raw(s, t)) out.set_raw(s, t, v);
            }
        }
    }
    return out;
}

/// (R (x) Q)(s, X) = sup over T u W = X of R(s, T) (.) Q(s, W).
inline ReachRelation parallel(const ReachRelation& r, const ReachRelation& q, const RelationOptions& opts = {}) {
    r.require_compatible(q);
    const auto& sp = r.space();
    const std::uint32_t subsets = sp.subset_count();
    std::vector<std::uint8_t> a(subsets), b(subsets), c(subsets);
    ReachRelation out(r.chain(), sp);
    for (int s = 0; s < sp.size(); ++s) {
        for (std::uint32_t m = 0; m < subsets; ++m) {
            a[m] = static_cast<std::uint8_t>(r.raw(s, m));
            b[m] = static_cast<std::uint8_t>(q.raw(s, m));
        }
        detail::union_convolve(a, b, c, r.chain().top(), opts.disjoint_parallel);
        for (std::uint32_t m = 0; m < subsets; ++m) out.set_raw(s, m, c[m]);
    }
    return out;
}

/// R^(0) = iota, R^(k+1) = iota u (R o R^(k)).
inline ReachRelation power(const ReachRelation& r, int k, const RelationOptions& opts = {}) {
    if (k < 0) throw std::invalid_argument("power exponent must be non-negative");
    const ReachRelation id = iota(r.space(), r.chain());
    ReachRelation acc = id;
    for (int i = 0; i < k; ++i) acc = union_of(id, compose(r, acc), opts);
    return acc;
}

/// Least upper bound of the increasing chain R^(k), reached when two
/// consecutive iterates coincide.
inline ReachRelation star(const ReachRelation& r, const RelationOptions& opts = {}) {
    const ReachRelation id = iota(r.space(), r.chain());
    ReachRelation acc = id;
    // Each strict step raises at least one entry by one grade.
    const std::size_t bound = static_cast<std::size_t>(r.space().size()) * r.space().subset_count() * r.chain().top() + 1;
    for (std::size_t i = 0; i <= bound; ++i) {
        ReachRelation next = union_of(id, compose(r, acc), opts);
        if (next == acc) return acc;
        acc = std::move(next);
    }
    throw std::logic_error("star iteration failed to stabilise");
}

} // namespace gcpdl
