#include "arsupp/weyl.hpp"

#include <algorithm>
#include <sstream>

#include "arsupp/expr.hpp"

namespace arsupp::weyl {

BigInt falling_factorial(std::int64_t k, int m) {
    BigInt r = 1;
    for (int t = 0; t < m; ++t) r *= BigInt(k - t);
    return r;
}

BigInt binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    BigInt r = 1;
    for (int t = 1; t <= k; ++t) r = r * (n - k + t) / t;
    return r;
}

namespace {

// Evaluates parsed expressions into WeylOp<Rational, Vars>; `names` lists the
// x symbols followed by the d symbols.
template <std::size_t Vars>
struct OperatorAlgebra {
    using Op = WeylOp<Rational, Vars>;
    std::array<std::string, 2 * Vars> names;

    Op number(const Rational& q) const { return Op::constant(q); }

    Op symbol(const std::string& name, std::size_t pos) const {
        for (std::size_t k = 0; k < names.size(); ++k) {
            if (names[k] == name) {
                typename Op::Exponent e{};
                e[k] = 1;
                return Op::monomial(e, Rational(1));
            }
        }
        throw SyntaxError(pos, "unknown symbol '" + name + "'");
    }

    Op add(const Op& a, const Op& b) const { return a + b; }
    Op sub(const Op& a, const Op& b) const { return a - b; }
    Op mul(const Op& a, const Op& b) const { return a * b; }
    Op neg(const Op& a) const { return -a; }

    Op power(const Op& base, std::int64_t k, std::size_t pos) const {
        if (k >= 0) return base.pow(static_cast<std::uint64_t>(k), Rational(1));
        // Negative powers exist only for a bare x variable.
        if (base.terms().size() == 1) {
            const auto& [e, c] = *base.terms().begin();
            int nonzero = 0;
            std::size_t which = 0;
            for (std::size_t v = 0; v < e.size(); ++v)
                if (e[v] != 0) {
                    ++nonzero;
                    which = v;
                }
            if (c == 1 && nonzero == 1 && which < Vars && e[which] == 1 && Vars > 1) {
                typename Op::Exponent out{};
                out[which] = static_cast<int>(k);
                return Op::monomial(out, Rational(1));
            }
        }
        throw SyntaxError(pos, "negative exponent not allowed here");
    }
};

}  // namespace

RationalOp parse_operator(std::string_view text) {
    OperatorAlgebra<1> alg{{"x", "d"}};
    return expr::evaluate(*expr::parse(text), alg);
}

RationalOp2 parse_operator2(std::string_view text) {
    OperatorAlgebra<2> alg{{"x1", "x2", "d1", "d2"}};
    return expr::evaluate(*expr::parse(text), alg);
}

FieldOp reduce(const RationalOp& op, ff::Field field) {
    FieldOp out;
    for (const auto& [e, c] : op.terms()) out.add_term(e, ff::reduce(field, c));
    return out;
}

FieldOp2 reduce(const RationalOp2& op, ff::Field field) {
    FieldOp2 out;
    for (const auto& [e, c] : op.terms()) out.add_term(e, ff::reduce(field, c));
    return out;
}

FieldOp lift(const FieldOp& op, ff::Field target) {
    FieldOp out;
    for (const auto& [e, c] : op.terms()) out.add_term(e, ff::lift(c, target));
    return out;
}

namespace {

std::string monomial_text(const std::array<int, 2>& e) {
    std::string s;
    auto factor = [&](const char* name, int k) {
        if (k == 0) return;
        if (!s.empty()) s += '*';
        s += name;
        if (k != 1) s += '^' + std::to_string(k);
    };
    factor("x", e[0]);
    factor("d", e[1]);
    return s;
}

// Terms from highest (i + j, i) down.
template <class C, class Fmt>
std::string op_text(const DiffOp<C>& op, Fmt coeff_text) {
    if (op.is_zero()) return "0";
    std::vector<std::pair<std::array<int, 2>, C>> terms(op.terms().begin(), op.terms().end());
    std::stable_sort(terms.begin(), terms.end(), [](const auto& l, const auto& r) {
        const int dl = l.first[0] + l.first[1], dr = r.first[0] + r.first[1];
        return dl != dr ? dl > dr : l.first[0] > r.first[0];
    });
    std::string out;
    for (const auto& [e, c] : terms) {
        auto [negative, magnitude] = coeff_text(c);
        const std::string mono = monomial_text(e);
        if (out.empty()) {
            out += negative ? "-" : "";
        } else {
            out += negative ? " - " : " + ";
        }
        if (mono.empty()) {
            out += magnitude;
        } else if (magnitude == "1") {
            out += mono;
        } else {
            out += magnitude + "*" + mono;
        }
    }
    return out;
}

}  // namespace

std::string to_string(const RationalOp& op) {
    return op_text(op, [](const Rational& c) {
        const Rational m = c < 0 ? Rational(-c) : c;
        return std::pair<bool, std::string>{c < 0, m.str()};
    });
}

std::string to_string(const FieldOp& op) {
    return op_text(op, [](const FieldElement& c) {
        if (c.field()->is_prime_field()) {
            const auto v = c.symmetric_value();
            return std::pair<bool, std::string>{v < 0, std::to_string(v < 0 ? -v : v)};
        }
        return std::pair<bool, std::string>{false, c.to_string()};
    });
}

SL2Mat SL2Mat::make(long a, long b, long c, long d) {
    SL2Mat g{a, b, c, d};
    if (a * d - b * c != 1) fail(ErrorCode::NotUnimodular, "matrix " + g.label() + " is not in SL(2,Z)");
    return g;
}

std::string SL2Mat::label() const {
    if (*this == identity()) return "identity";
    if (*this == fourier()) return "fourier";
    std::ostringstream os;
    os << "((" << a << ',' << b << "),(" << c << ',' << d << "))";
    return os.str();
}

int germ_multiplicity_y0(std::span<const std::array<int, 2>> support) {
    if (support.empty()) fail(ErrorCode::EmptySupport, "germ multiplicity of an empty support");
    int best_slope = support.front()[0] - support.front()[1];
    for (const auto& e : support) best_slope = std::max(best_slope, e[0] - e[1]);
    int mult = -1;
    for (const auto& e : support)
        if (e[0] - e[1] == best_slope) mult = std::max(mult, e[1]);
    return mult;
}

}  // namespace arsupp::weyl
