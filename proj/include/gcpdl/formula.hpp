#pragma once

// Two-sorted abstract syntax: formulas and programs, mutually recursive
// through box/diamond and tests. Nodes are immutable and shared; every node
// caches a structural hash so that equality and hashing are cheap.

#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <utility>

#include "gcpdl/chain.hpp"

namespace gcpdl {

enum class FormulaKind : std::uint8_t { Var, Const, And, Or, Implies, Box, Diamond };
enum class ProgramKind : std::uint8_t { Atomic, Union, Inter, Seq, Star, Test };

struct FormulaNode;
struct ProgramNode;
class Program;

class Formula {
public:
    static Formula var(std::string name);
    static Formula constant(ChainValue value);
    static Formula conj(Formula lhs, Formula rhs);
    static Formula disj(Formula lhs, Formula rhs);
    static Formula implies(Formula lhs, Formula rhs);
    static Formula box(Program program, Formula body);
    static Formula diamond(Program program, Formula body);

    // Derived notation; neither is a constructor of the language.
    static Formula negation(Formula f, const Chain& chain);
    static Formula iff(Formula lhs, Formula rhs);

    FormulaKind kind() const noexcept;
    const std::string& name() const;    // Var
    const ChainValue& value() const;    // Const
    const Formula& lhs() const;         // And, Or, Implies
    const Formula& rhs() const;         // And, Or, Implies
    const Program& program() const;     // Box, Diamond
    const Formula& body() const;        // Box, Diamond

    bool is_modal() const noexcept { return kind() == FormulaKind::Box || kind() == FormulaKind::Diamond; }
    bool is_binary() const noexcept {
        auto k = kind();
        return k == FormulaKind::And || k == FormulaKind::Or || k == FormulaKind::Implies;
    }

    std::size_t hash() const noexcept;
    /// Number of formula and program nodes in the tree.
    std::size_t size() const noexcept;

    friend bool operator==(const Formula& a, const Formula& b);

private:
    friend struct FormulaNode;
    friend struct ProgramNode;
    Formula() = default;
    explicit Formula(std::shared_ptr<const FormulaNode> node) : node_(std::move(node)) {}
    std::shared_ptr<const FormulaNode> node_;
};

class Program {
public:
    static Program atomic(std::string name);
    static Program choice(Program lhs, Program rhs);    // +
    static Program parallel(Program lhs, Program rhs);  // ^
    static Program seq(Program lhs, Program rhs);       // ;
    static Program star(Program inner);                 // *
    static Program test(Formula condition);             // ?(...)

    ProgramKind kind() const noexcept;
    const std::string& name() const;    // Atomic
    const Program& lhs() const;         // Union, Inter, Seq
    const Program& rhs() const;         // Union, Inter, Seq
    const Program& inner() const;       // Star
    const Formula& condition() const;   // Test

    std::size_t hash() const noexcept;
    std::size_t size() const noexcept;

    friend bool operator==(const Program& a, const Program& b);

private:
    friend struct FormulaNode;
    friend struct ProgramNode;
    Program() = default;
    explicit Program(std::shared_ptr<const ProgramNode> node) : node_(std::move(node)) {}
    std::shared_ptr<const ProgramNode> node_;
};

namespace detail {

inline std::size_t mix(std::size_t seed, std::size_t v) noexcept {
    return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

} // namespace detail

struct FormulaNode {
    FormulaKind kind;
    std::string name;
    ChainValue value{Chain(2), 0};
    Formula lhs, rhs;   // Box/Diamond keep their body in lhs
    Program program;
    std::size_t hash = 0;
    std::size_t size = 1;

    explicit FormulaNode(FormulaKind k) : kind(k) {}

    static Formula wrap(std::shared_ptr<FormulaNode> n) { return Formula(std::move(n)); }
    static const FormulaNode* get(const Formula& f) { return f.node_.get(); }
};

struct ProgramNode {
    ProgramKind kind;
    std::string name;
    Program lhs, rhs;   // Star keeps its operand in lhs
    Formula condition;
    std::size_t hash = 0;
    std::size_t size = 1;

    explicit ProgramNode(ProgramKind k) : kind(k) {}

    static Program wrap(std::shared_ptr<ProgramNode> n) { return Program(std::move(n)); }
    static const ProgramNode* get(const Program& p) { return p.node_.get(); }
};

namespace detail {

inline bool same(const FormulaNode* a, const FormulaNode* b);
inline bool same(const ProgramNode* a, const ProgramNode* b);

inline bool same(const FormulaNode* a, const FormulaNode* b) {
    if (a == b) return true;
    if (a->hash != b->hash || a->kind != b->kind || a->size != b->size) return false;
    switch (a->kind) {
    case FormulaKind::Var: return a->name == b->name;
    case FormulaKind::Const: return a->value == b->value;
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Implies: return a->lhs == b->lhs && a->rhs == b->rhs;
    case FormulaKind::Box:
    case FormulaKind::Diamond: return a->program == b->program && a->lhs == b->lhs;
    }
    return false;
}

inline bool same(const ProgramNode* a, const ProgramNode* b) {
    if (a == b) return true;
    if (a->hash != b->hash || a->kind != b->kind || a->size != b->size) return false;
    switch (a->kind) {
    case ProgramKind::Atomic: return a->name == b->name;
    case ProgramKind::Star: return a->lhs == b->lhs;
    case ProgramKind::Test: return a->condition == b->condition;
    default: return a->lhs == b->lhs && a->rhs == b->rhs;
    }
}

inline Formula binary(FormulaKind kind, Formula l, Formula r) {
    auto n = std::make_shared<FormulaNode>(kind);
    n->hash = mix(mix(mix(static_cast<std::size_t>(kind) + 1, l.hash()), r.hash()), 7);
    n->size = 1 + l.size() + r.size();
    n->lhs = std::move(l);
    n->rhs = std::move(r);
    return FormulaNode::wrap(std::move(n));
}

inline Formula modal(FormulaKind kind, Program p, Formula body) {
    auto n = std::make_shared<FormulaNode>(kind);
    n->hash = mix(mix(mix(static_cast<std::size_t>(kind) + 1, p.hash()), body.hash()), 11);
    n->size = 1 + p.size() + body.size();
    n->lhs = std::move(body);
    n->program = std::move(p);
    return FormulaNode::wrap(std::move(n));
}

inline Program binary(ProgramKind kind, Program l, Program r) {
    auto n = std::make_shared<ProgramNode>(kind);
    n->hash = mix(mix(mix(static_cast<std::size_t>(kind) + 101, l.hash()), r.hash()), 17);
    n->size = 1 + l.size() + r.size();
    n->lhs = std::move(l);
    n->rhs = std::move(r);
    return ProgramNode::wrap(std::move(n));
}

} // namespace detail

inline Formula Formula::var(std::string name) {
    auto n = std::make_shared<FormulaNode>(FormulaKind::Var);
    n->hash = detail::mix(std::hash<std::string>{}(name), 1);
    n->name = std::move(name);
    return Formula(std::move(n));
}

inline Formula Formula::constant(ChainValue value) {
    auto n = std::make_shared<FormulaNode>(FormulaKind::Const);
    n->hash = detail::mix(detail::mix(2, static_cast<std::size_t>(value.order())),
                          static_cast<std::size_t>(value.numerator()));
    n->value = value;
    return Formula(std::move(n));
}

inline Formula Formula::conj(Formula lhs, Formula rhs) { return detail::binary(FormulaKind::And, std::move(lhs), std::move(rhs)); }
inline Formula Formula::disj(Formula lhs, Formula rhs) { return detail::binary(FormulaKind::Or, std::move(lhs), std::move(rhs)); }
inline Formula Formula::implies(Formula lhs, Formula rhs) {
    return detail::binary(FormulaKind::Implies, std::move(lhs), std::move(rhs));
}
inline Formula Formula::box(Program program, Formula body) {
    return detail::modal(FormulaKind::Box, std::move(program), std::move(body));
}
inline Formula Formula::diamond(Program program, Formula body) {
    return detail::modal(FormulaKind::Diamond, std::move(program), std::move(body));
}

inline Formula Formula::negation(Formula f, const Chain& chain) { return implies(std::move(f), constant(chain.zero())); }
inline Formula Formula::iff(Formula lhs, Formula rhs) { return conj(implies(lhs, rhs), implies(rhs, lhs)); }

inline FormulaKind Formula::kind() const noexcept { return node_->kind; }
inline const std::string& Formula::name() const { return node_->name; }
inline const ChainValue& Formula::value() const { return node_->value; }
inline const Formula& Formula::lhs() const { return node_->lhs; }
inline const Formula& Formula::rhs() const { return node_->rhs; }
inline const Program& Formula::program() const { return node_->program; }
inline const Formula& Formula::body() const { return node_->lhs; }
inline std::size_t Formula::hash() const noexcept { return node_->hash; }
inline std::size_t Formula::size() const noexcept { return node_->size; }

inline bool operator==(const Formula& a, const Formula& b) { return detail::same(a.node_.get(), b.node_.get()); }

inline Program Program::atomic(std::string name) {
    auto n = std::make_shared<ProgramNode>(ProgramKind::Atomic);
    n->hash = detail::mix(std::hash<std::string>{}(name), 101);
    n->name = std::move(name);
    return Program(std::move(n));
}

inline Program Program::choice(Program lhs, Program rhs) { return detail::binary(ProgramKind::Union, std::move(lhs), std::move(rhs)); }
inline Program Program::parallel(Program lhs, Program rhs) {
    return detail::binary(ProgramKind::Inter, std::move(lhs), std::move(rhs));
}
inline Program Program::seq(Program lhs, Program rhs) { return detail::binary(ProgramKind::Seq, std::move(lhs), std::move(rhs)); }

inline Program Program::star(Program inner) {
    auto n = std::make_shared<ProgramNode>(ProgramKind::Star);
    n->hash = detail::mix(104, inner.hash());
    n->size = 1 + inner.size();
    n->lhs = std::move(inner);
    return Program(std::move(n));
}

inline Program Program::test(Formula condition) {
    auto n = std::make_shared<ProgramNode>(ProgramKind::Test);
    n->hash = detail::mix(105, condition.hash());
    n->size = 1 + condition.size();
    n->condition = std::move(condition);
    return Program(std::move(n));
}

inline ProgramKind Program::kind() const noexcept { return node_->kind; }
inline const std::string& Program::name() const { return node_->name; }
inline const Program& Program::lhs() const { return node_->lhs; }
inline const Program& Program::rhs() const { return node_->rhs; }
inline const Program& Program::inner() const { return node_->lhs; }
inline const Formula& Program::condition() const { return node_->condition; }
inline std::size_t Program::hash() const noexcept { return node_->hash; }
inline std::size_t Program::size() const noexcept { return node_->size; }

inline bool operator==(const Program& a, const Program& b) { return detail::same(a.node_.get(), b.node_.get()); }

} // namespace gcpdl

template <>
struct std::hash<gcpdl::Formula> {
    std::size_t operator()(const gcpdl::Formula& f) const noexcept { return f.hash(); }
};

template <>
struct std::hash<gcpdl::Program> {
    std::size_t operator()(const gcpdl::Program& p) const noexcept { return p.hash(); }
};
