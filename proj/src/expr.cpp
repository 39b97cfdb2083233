#include "arsupp/expr.hpp"

#include <cctype>

namespace arsupp::expr {

namespace {

constexpr std::int64_t kMaxExponent = 1'000'000;

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    NodePtr parse_all() {
        skip_ws();
        if (pos_ == text_.size()) throw SyntaxError(pos_, "empty expression");
        NodePtr e = parse_expr();
        skip_ws();
        if (pos_ != text_.size())
            throw SyntaxError(pos_, std::string("unexpected '") + text_[pos_] + "'");
        return e;
    }

private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    static NodePtr binary(Node::Kind kind, std::size_t pos, NodePtr lhs, NodePtr rhs) {
        auto n = std::make_shared<Node>();
        n->kind = kind;
        n->position = pos;
        n->lhs = std::move(lhs);
        n->rhs = std::move(rhs);
        return n;
    }

    NodePtr parse_expr() {
        NodePtr lhs = parse_term();
        for (;;) {
            skip_ws();
            const std::size_t at = pos_;
            if (accept('+')) {
                lhs = binary(Node::Kind::Add, at, lhs, parse_term());
            } else if (accept('-')) {
                lhs = binary(Node::Kind::Sub, at, lhs, parse_term());
            } else {
                return lhs;
            }
        }
    }

    NodePtr parse_term() {
        NodePtr lhs = parse_unary();
        for (;;) {
            skip_ws();
            const std::size_t at = pos_;
            if (!accept('*')) return lhs;
            lhs = binary(Node::Kind::Mul, at, lhs, parse_unary());
        }
    }

    NodePtr parse_unary() {
        skip_ws();
        const std::size_t at = pos_;
        if (accept('-')) return binary(Node::Kind::Neg, at, parse_unary(), nullptr);
        if (accept('+')) return parse_unary();
        return parse_power();
    }

    NodePtr parse_power() {
        NodePtr base = parse_atom();
        skip_ws();
        const std::size_t at = pos_;
        if (!accept('^')) return base;
        const bool negative = accept('-');
        skip_ws();
        const std::size_t digits_at = pos_;
        const BigInt value = parse_integer();
        if (value > kMaxExponent) throw SyntaxError(digits_at, "exponent too large");
        auto n = std::make_shared<Node>();
        n->kind = Node::Kind::Pow;
        n->position = at;
        n->lhs = std::move(base);
        n->exponent = static_cast<std::int64_t>(value) * (negative ? -1 : 1);
        return n;
    }

    BigInt parse_integer() {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) throw SyntaxError(start, "expected an integer");
        return BigInt(std::string(text_.substr(start, pos_ - start)));
    }

    NodePtr parse_atom() {
        skip_ws();
        const std::size_t at = pos_;
        if (pos_ == text_.size()) throw SyntaxError(pos_, "unexpected end of input");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr inner = parse_expr();
            if (!accept(')')) throw SyntaxError(pos_, "expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            const BigInt num = parse_integer();
            BigInt den = 1;
            skip_ws();
            if (accept('/')) {
                const std::size_t den_at = pos_;
                den = parse_integer();
                if (den == 0) throw Error(ErrorCode::DivisionByZero, "zero denominator at position " + std::to_string(den_at));
            }
            auto n = std::make_shared<Node>();
            n->kind = Node::Kind::Number;
            n->position = at;
            n->number = Rational(num, den);
            return n;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            auto n = std::make_shared<Node>();
            n->kind = Node::Kind::Symbol;
            n->position = at;
            n->name = std::string(text_.substr(start, pos_ - start));
            return n;
        }
        throw SyntaxError(at, std::string("unexpected '") + c + "'");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

NodePtr parse(std::string_view text) { return Parser(text).parse_all(); }

}  // namespace arsupp::expr
