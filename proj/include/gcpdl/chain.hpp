#pragma once

// Finite Lukasiewicz chains L_n = {0/(n-1), 1/(n-1), ..., (n-1)/(n-1)}.
//
// Values are exact integer numerators over the fixed denominator n-1. Every
// value remembers the order n of its chain; binary operations on values from
// different chains throw ContextMismatch.

#include <compare>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gcpdl {

class ContextMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class NotAChainElement : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ChainValue;

/// The chain L_n itself. Cheap to copy; two chains are the same iff their
/// orders agree.
class Chain {
public:
    static constexpr int kMaxOrder = 255;

    explicit Chain(int order) : order_(order) {
        if (order < 2 || order > kMaxOrder)
            throw std::invalid_argument("chain order must lie in [2, 255], got " + std::to_string(order));
    }

    int order() const noexcept { return order_; }
    int top() const noexcept { return order_ - 1; }

    ChainValue value(int numerator) const;
    ChainValue zero() const;
    ChainValue one() const;

    /// The element p/q, which must reduce exactly to some k/(n-1).
    ChainValue from_rational(long long p, long long q) const;

    /// Parses "p/q", "0" or "1".
    ChainValue parse(std::string_view text) const;

    std::vector<ChainValue> elements() const;

    friend bool operator==(const Chain&, const Chain&) = default;

private:
    int order_;
};

class ChainValue {
public:
    ChainValue(const Chain& chain, int numerator) : num_(numerator), order_(chain.order()) {
        if (numerator < 0 || numerator > chain.top())
            throw std::out_of_range("numerator " + std::to_string(numerator) + " outside L_" +
                                    std::to_string(order_));
    }

    int numerator() const noexcept { return num_; }
    int denominator() const noexcept { return order_ - 1; }
    int order() const noexcept { return order_; }
    Chain chain() const { return Chain(order_); }

    bool is_zero() const noexcept { return num_ == 0; }
    bool is_one() const noexcept { return num_ == order_ - 1; }

    /// "p/q" in lowest terms; the bounds print as "0" and "1".
    std::string to_string() const {
        if (num_ == 0) return "0";
        if (num_ == order_ - 1) return "1";
        int g = std::gcd(num_, order_ - 1);
        return std::to_string(num_ / g) + "/" + std::to_string((order_ - 1) / g);
    }

    friend bool operator==(const ChainValue&, const ChainValue&) = default;

    friend std::strong_ordering operator<=>(const ChainValue& a, const ChainValue& b) {
        a.require_same(b);
        return a.num_ <=> b.num_;
    }

    void require_same(const ChainValue& other) const {
        if (order_ != other.order_)
            throw ContextMismatch("values from L_" + std::to_string(order_) + " and L_" +
                                  std::to_string(other.order_) + " mixed");
    }

private:
    std::uint8_t num_;
    std::uint8_t order_;
};

inline ChainValue Chain::value(int numerator) const { return ChainValue(*this, numerator); }
inline ChainValue Chain::zero() const { return ChainValue(*this, 0); }
inline ChainValue Chain::one() const { return ChainValue(*this, top()); }

inline ChainValue Chain::from_rational(long long p, long long q) const {
    if (q <= 0 || p < 0 || p > q)
        throw NotAChainElement(std::to_string(p) + "/" + std::to_string(q) + " is not in [0, 1]");
    long long scaled = p * top();
    if (scaled % q != 0)
        throw NotAChainElement(std::to_string(p) + "/" + std::to_string(q) + " is not an element of L_" +
                               std::to_string(order_));
    return ChainValue(*this, static_cast<int>(scaled / q));
}

inline ChainValue Chain::parse(std::string_view text) const {
    auto to_int = [&](std::string_view digits) -> long long {
        if (digits.empty() || digits.size() > 9)
            throw NotAChainElement("malformed chain value '" + std::string(text) + "'");
        long long v = 0;
        for (char c : digits) {
            if (c < '0' || c > '9') throw NotAChainElement("malformed chain value '" + std::string(text) + "'");
            v = v * 10 + (c - '0');
        }
        return v;
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        long long v = to_int(text);
        if (v > 1) throw NotAChainElement("chain value '" + std::string(text) + "' exceeds 1");
        return from_rational(v, 1);
    }
    return from_rational(to_int(text.substr(0, slash)), to_int(text.substr(slash + 1)));
}

inline std::vector<ChainValue> Chain::elements() const {
    std::vector<ChainValue> out;
    out.reserve(order_);
    for (int k = 0; k < order_; ++k) out.emplace_back(*this, k);
    return out;
}

// Numerator kernels. `top` is n-1. These are the hot path for relation
// algebra, which stores raw numerators.
namespace kernel {

constexpr int conj(int a, int b, int top) noexcept { return a + b - top > 0 ? a + b - top : 0; }
constexpr int implies(int a, int b, int top) noexcept { return top - a + b < top ? top - a + b : top; }
constexpr int neg(int a, int top) noexcept { return top - a; }
constexpr int join(int a, int b) noexcept { return a > b ? a : b; }
constexpr int meet(int a, int b) noexcept { return a < b ? a : b; }

} // namespace kernel

/// Strong conjunction a (.) b = max{0, a + b - 1}.
inline ChainValue conj(const ChainValue& a, const ChainValue& b) {
    a.require_same(b);
    return ChainValue(a.chain(), kernel::conj(a.numerator(), b.numerator(), a.denominator()));
}

/// Residuum a -> b = min{1, 1 - a + b}.
inline ChainValue implies(const ChainValue& a, const ChainValue& b) {
    a.require_same(b);
    return ChainValue(a.chain(), kernel::implies(a.numerator(), b.numerator(), a.denominator()));
}

inline ChainValue neg(const ChainValue& a) { return ChainValue(a.chain(), kernel::neg(a.numerator(), a.denominator())); }

inline ChainValue join(const ChainValue& a, const ChainValue& b) {
    a.require_same(b);
    return a.numerator() >= b.numerator() ? a : b;
}

inline ChainValue meet(const ChainValue& a, const ChainValue& b) {
    a.require_same(b);
    return a.numerator() <= b.numerator() ? a : b;
}

} // namespace gcpdl
