#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gcpdl/gcpdl.hpp"

namespace testing_support {

inline gcpdl::ReachRelation random_relation(gcpdl::Random& rng, const gcpdl::Chain& chain,
                                            const gcpdl::StateSpace& space, double density = 0.4) {
    gcpdl::ReachRelation r(chain, space);
    for (int s = 0; s < space.size(); ++s)
        for (std::uint32_t t = 0; t < space.subset_count(); ++t)
            if (rng.chance(density)) r.set_raw(s, t, rng.between(1, chain.top()));
    return r;
}

/// Pointwise raises a random subset of entries of `r`.
inline gcpdl::ReachRelation random_above(gcpdl::Random& rng, const gcpdl::ReachRelation& r) {
    gcpdl::ReachRelation out = r;
    for (int s = 0; s < r.space().size(); ++s)
        for (std::uint32_t t = 0; t < r.space().subset_count(); ++t)
            if (rng.chance(0.3)) out.set_raw(s, t, rng.between(r.raw(s, t), r.chain().top()));
    return out;
}

inline gcpdl::Formula f(const std::string& text, int n = 3) { return gcpdl::parse_formula(text, gcpdl::Chain(n)); }
inline gcpdl::Program prog(const std::string& text, int n = 3) { return gcpdl::parse_program(text, gcpdl::Chain(n)); }

/// One state, p = 1/2, R(a)(s0, {s0}) = `loop` (n = 3).
inline gcpdl::Model single_state(const std::string& p = "1/2", const std::string& loop = "0") {
    const gcpdl::Chain chain(3);
    gcpdl::Model m(chain, 1);
    m.set_value("p", 0, chain.parse(p));
    m.program("a").set(0, gcpdl::StateSet{0}, chain.parse(loop));
    return m;
}

/// n = 2, states t1, t2, s; R(a)(s, {t1, t2}) = 1, p(t1) = 1, p(t2) = 0.
inline gcpdl::Model fork_model() {
    const gcpdl::Chain chain(2);
    gcpdl::Model m(chain, std::vector<std::string>{"t1", "t2", "s"});
    m.set_value("p", 0, chain.one());
    m.program("a").set(2, gcpdl::StateSet{0, 1}, chain.one());
    return m;
}

} // namespace testing_support
