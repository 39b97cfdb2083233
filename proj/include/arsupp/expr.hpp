#pragma once

// Operator expression grammar shared by every text front end:
//
//   expr   := term (('+' | '-') term)*
//   term   := unary ('*' unary)*
//   unary  := ('+' | '-') unary | power
//   power  := atom ('^' '-'? INT)?
//   atom   := NAME | INT ('/' INT)? | '(' expr ')'
//
// Products are noncommutative and read left to right; whitespace is
// insignificant. Negative exponents parse, and each evaluator decides whether
// it admits them.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

#include "arsupp/ffield.hpp"

namespace arsupp::expr {

struct Node {
    enum class Kind { Number, Symbol, Add, Sub, Mul, Neg, Pow };

    Kind kind;
    std::size_t position = 0;
    Rational number;         // Number
    std::string name;        // Symbol
    std::int64_t exponent = 0;  // Pow
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
};

using NodePtr = std::shared_ptr<const Node>;

/// Throws SyntaxError (with position) or Error{DivisionByZero} for `a/0`.
NodePtr parse(std::string_view text);

/// Folds the tree into an algebra. The algebra supplies
///   Value number(const Rational&), symbol(const std::string&, std::size_t pos),
///   add/sub/mul(Value, Value), neg(Value), power(Value, std::int64_t, std::size_t pos).
template <class Algebra>
auto evaluate(const Node& node, Algebra& alg) -> decltype(alg.number(Rational{})) {
    switch (node.kind) {
        case Node::Kind::Number: return alg.number(node.number);
        case Node::Kind::Symbol: return alg.symbol(node.name, node.position);
        case Node::Kind::Add: return alg.add(evaluate(*node.lhs, alg), evaluate(*node.rhs, alg));
        case Node::Kind::Sub: return alg.sub(evaluate(*node.lhs, alg), evaluate(*node.rhs, alg));
        case Node::Kind::Mul: return alg.mul(evaluate(*node.lhs, alg), evaluate(*node.rhs, alg));
        case Node::Kind::Neg: return alg.neg(evaluate(*node.lhs, alg));
        case Node::Kind::Pow: return alg.power(evaluate(*node.lhs, alg), node.exponent, node.position);
    }
    throw SyntaxError(node.position, "malformed expression tree");
}

/// Binary exponentiation helper for algebras with an identity.
template <class Value, class Mul>
Value power_by_squaring(Value base, std::uint64_t k, Value identity, Mul mul) {
    Value acc = std::move(identity);
    while (k) {
        if (k & 1) acc = mul(acc, base);
        k >>= 1;
        if (k) base = mul(base, base);
    }
    return acc;
}

}  // namespace arsupp::expr
