// Builds a two-state model over L_3, evaluates a few formulas and audits D17.

#include <iostream>

#include "gcpdl/gcpdl.hpp"

int main() {
    using namespace gcpdl;
    const Chain chain(3);

    Model m(chain, {"home", "away"});
    m.set_value("p", 0, chain.parse("1/2"));
    m.set_value("p", 1, chain.one());
    m.program("a").set(0, StateSet{0, 1}, chain.one());
    m.program("a").set(1, StateSet{1}, chain.parse("1/2"));

    Evaluator ev(m);
    for (const char* text : {"[a]p", "<a>p", "~[a]~p", "[a*]p", "[a ^ a]p"}) {
        const Formula f = parse_formula(text, chain);
        std::cout << to_string(f) << ":";
        for (const auto& v : ev.values(f)) std::cout << " " << v.to_string();
        std::cout << "\n";
    }

    SamplerConfig cfg;
    cfg.n = 3;
    const AuditEntry e = find_counterexample(*find_schema("D17"), cfg, 1000);
    std::cout << e.label() << ": " << e.verdict() << "\n";
    if (e.witness) std::cout << model_to_json(e.witness->model).dump(2) << "\n";
}
