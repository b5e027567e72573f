#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "gcpdl/chain.hpp"
#include "gcpdl/relations.hpp"

namespace gcpdl {

/// An L_n-model: a finite state space, one reachable relation per atomic
/// program and a graded valuation per propositional variable. Programs and
/// variables live in separate namespaces. Missing programs denote the zero
/// relation; missing variables are 0 everywhere.
class Model {
public:
    Model(const Chain& chain, int states) : chain_(chain), space_(states) {
        for (int s = 0; s < states; ++s) names_.push_back("s" + std::to_string(s));
    }

    Model(const Chain& chain, std::vector<std::string> state_names)
        : chain_(chain), space_(static_cast<int>(state_names.size())), names_(std::move(state_names)) {
        for (std::size_t i = 0; i < names_.size(); ++i)
            for (std::size_t j = 0; j < i; ++j)
                if (names_[i] == names_[j]) throw std::invalid_argument("duplicate state name '" + names_[i] + "'");
    }

    const Chain& chain() const noexcept { return chain_; }
    const StateSpace& space() const noexcept { return space_; }
    int size() const noexcept { return space_.size(); }

    const std::vector<std::string>& state_names() const noexcept { return names_; }
    const std::string& state_name(int s) const { return names_.at(static_cast<std::size_t>(s)); }

    int state_index(const std::string& name) const {
        for (std::size_t i = 0; i < names_.size(); ++i)
            if (names_[i] == name) return static_cast<int>(i);
        throw std::out_of_range("unknown state '" + name + "'");
    }

    /// The relation for `name`, created as the zero relation on first use.
    ReachRelation& program(const std::string& name) {
        auto it = programs_.find(name);
        if (it == programs_.end()) it = programs_.emplace(name, ReachRelation(chain_, space_)).first;
        return it->second;
    }

    void set_program(const std::string& name, ReachRelation r) {
        if (!(r.chain() == chain_) || !(r.space() == space_))
            throw std::invalid_argument("relation for '" + name + "' does not match the model");
        programs_.insert_or_assign(name, std::move(r));
    }

    const ReachRelation* find_program(const std::string& name) const {
        auto it = programs_.find(name);
        return it == programs_.end() ? nullptr : &it->second;
    }

    const std::map<std::string, ReachRelation>& programs() const noexcept { return programs_; }

    void set_value(const std::string& var, int s, const ChainValue& v) {
        if (v.order() != chain_.order()) throw ContextMismatch("valuation value from a different chain");
        auto it = valuation_.find(var);
        if (it == valuation_.end())
            it = valuation_.emplace(var, std::vector<ChainValue>(static_cast<std::size_t>(size()), chain_.zero())).first;
        it->second.at(static_cast<std::size_t>(s)) = v;
    }

    ChainValue value(const std::string& var, int s) const {
        auto it = valuation_.find(var);
        if (it == valuation_.end()) return chain_.zero();
        return it->second.at(static_cast<std::size_t>(s));
    }

    const std::map<std::string, std::vector<ChainValue>>& valuation() const noexcept { return valuation_; }

private:
    Chain chain_;
    StateSpace space_;
    std::vector<std::string> names_;
    std::map<std::string, ReachRelation> programs_;
    std::map<std::string, std::vector<ChainValue>> valuation_;
};

} // namespace gcpdl
