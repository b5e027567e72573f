#pragma once

// Recursive-descent parser for the ASCII concrete syntax.
//
//   formula := imp ( "<->" imp )*
//   imp     := or ( "->" imp )?
//   or      := and ( "|" and )*
//   and     := unary ( "&" unary )*
//   unary   := "~" unary | "[" program "]" unary | "<" program ">" unary | atom
//   atom    := ident | "#" int "/" int | "#0" | "#1" | "(" formula ")"
//   program := par ( "+" par )*
//   par     := seq ( "^" seq )*
//   seq     := post ( ";" post )*
//   post    := prim ( "*" )*
//   prim    := ident | "?" "(" formula ")" | "(" program ")"
//
// `~x` is sugar for `x -> #0`; `x <-> y` for `(x -> y) & (y -> x)`.

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>

#include "gcpdl/chain.hpp"
#include "gcpdl/formula.hpp"

namespace gcpdl {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error("syntax error at offset " + std::to_string(position) + ": " + what), position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

namespace detail {

class Parser {
public:
    Parser(std::string_view text, const Chain& chain) : text_(text), chain_(chain) {}

    Formula whole_formula() {
        Formula f = formula();
        expect_end();
        return f;
    }

    Program whole_program() {
        Program p = program();
        expect_end();
        return p;
    }

private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool at(std::string_view token) {
        skip_ws();
        return text_.substr(pos_, token.size()) == token;
    }

    bool accept(std::string_view token) {
        if (!at(token)) return false;
        pos_ += token.size();
        return true;
    }

    void expect(std::string_view token) {
        if (!accept(token)) fail("expected '" + std::string(token) + "'");
    }

    void expect_end() {
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input");
    }

    [[noreturn]] void fail(const std::string& msg) const {
        std::string near = pos_ < text_.size() ? " near '" + std::string(text_.substr(pos_, 12)) + "'" : " at end of input";
        throw ParseError(msg + near, pos_);
    }

    static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
    static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

    bool at_ident() {
        skip_ws();
        return pos_ < text_.size() && ident_start(text_[pos_]);
    }

    std::string ident() {
        skip_ws();
        if (pos_ >= text_.size() || !ident_start(text_[pos_])) fail("expected identifier");
        std::size_t start = pos_;
        while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
        return std::string(text_.substr(start, pos_ - start));
    }

    long long integer() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail("expected integer");
        if (pos_ - start > 9) fail("integer too large");
        return std::stoll(std::string(text_.substr(start, pos_ - start)));
    }

    Formula formula() {
        Formula f = imp();
        while (accept("<->")) f = Formula::iff(f, imp());
        return f;
    }

    Formula imp() {
        Formula lhs = disjunction();
        // "<->" is consumed one level up; it never starts with "->".
        if (accept("->")) return Formula::implies(lhs, imp());
        return lhs;
    }

    Formula disjunction() {
        Formula f = conjunction();
        while (accept("|")) f = Formula::disj(f, conjunction());
        return f;
    }

    Formula conjunction() {
        Formula f = unary();
        while (accept("&")) f = Formula::conj(f, unary());
        return f;
    }

    Formula unary() {
        if (accept("~")) return Formula::negation(unary(), chain_);
        if (accept("[")) {
            Program p = program();
            expect("]");
            return Formula::box(p, unary());
        }
        if (!at("<->") && accept("<")) {
            Program p = program();
            expect(">");
            return Formula::diamond(p, unary());
        }
        return atom();
    }

    Formula atom() {
        if (accept("(")) {
            Formula f = formula();
            expect(")");
            return f;
        }
        if (accept("#")) {
            std::size_t at_pos = pos_;
            long long p = integer();
            if (accept("/")) {
                long long q = integer();
                try {
                    return Formula::constant(chain_.from_rational(p, q));
                } catch (const NotAChainElement& e) {
                    throw NotAChainElement(std::string(e.what()) + " (offset " + std::to_string(at_pos) + ")");
                }
            }
            if (p > 1) {
                pos_ = at_pos;
                fail("constant must be #0, #1 or #p/q");
            }
            return Formula::constant(p == 0 ? chain_.zero() : chain_.one());
        }
        if (at_ident()) return Formula::var(ident());
        fail("expected formula");
    }

    Program program() {
        Program p = par();
        while (accept("+")) p = Program::choice(p, par());
        return p;
    }

    Program par() {
        Program p = seq();
        while (accept("^")) p = Program::parallel(p, seq());
        return p;
    }

    Program seq() {
        Program p = post();
        while (accept(";")) p = Program::seq(p, post());
        return p;
    }

    Program post() {
        Program p = prim();
        while (accept("*")) p = Program::star(p);
        return p;
    }

    Program prim() {
        if (accept("?")) {
            expect("(");
            Formula f = formula();
            expect(")");
            return Program::test(f);
        }
        if (accept("(")) {
            Program p = program();
            expect(")");
            return p;
        }
        if (at_ident()) return Program::atomic(ident());
        fail("expected program");
    }

    std::string_view text_;
    Chain chain_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline Formula parse_formula(std::string_view text, const Chain& chain) {
    return detail::Parser(text, chain).whole_formula();
}

inline Program parse_program(std::string_view text, const Chain& chain) {
    return detail::Parser(text, chain).whole_program();
}

} // namespace gcpdl
