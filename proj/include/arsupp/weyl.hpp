#pragma once

// Normal-ordered elements of the Weyl algebra A_n: sums of
// a * x_1^{i_1} ... x_n^{i_n} d_1^{j_1} ... d_n^{j_n} with every x to the left
// of every d, and [d_k, x_k] = 1. Coefficients are exact rationals or elements
// of one finite field. x-exponents may be negative (Laurent operators); the
// Leibniz rule d^j x^k = sum_m C(j,m) k(k-1)...(k-m+1) x^{k-m} d^{j-m} holds
// for every integer k.

#include <array>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "arsupp/ffield.hpp"

namespace arsupp::weyl {

using ff::FieldElement;

inline bool coeff_is_zero(const Rational& c) { return c == 0; }
inline bool coeff_is_zero(const FieldElement& c) { return c.is_zero(); }

inline Rational coeff_from_int(const Rational&, const BigInt& n) { return Rational(n); }
inline FieldElement coeff_from_int(const FieldElement& like, const BigInt& n) {
    return FieldElement::from_integer(like.field(), n);
}

inline void coeff_check_domain(const Rational&, const Rational&) {}
inline void coeff_check_domain(const FieldElement& a, const FieldElement& b) {
    if (a.field() != b.field())
        fail(ErrorCode::DomainMismatch, "operators have coefficients in " + a.field()->describe() + " and " +
                                            b.field()->describe());
}

/// k (k - 1) ... (k - m + 1), valid for negative k.
BigInt falling_factorial(std::int64_t k, int m);
BigInt binomial(int n, int k);

template <class C, std::size_t Vars>
class WeylOp {
public:
    using Coeff = C;
    /// (x_1 .. x_n, d_1 .. d_n) exponents.
    using Exponent = std::array<int, 2 * Vars>;
    using Terms = std::map<Exponent, C>;

    WeylOp() = default;

    static WeylOp monomial(const Exponent& e, const C& c) {
        WeylOp op;
        op.add_term(e, c);
        return op;
    }
    static WeylOp constant(const C& c) { return monomial(Exponent{}, c); }

    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    /// max over the support of the summed exponents; -1 for the zero operator.
    int order_bound() const {
        int n = -1;
        for (const auto& [e, c] : terms_) {
            int s = 0;
            for (int v : e) s += v;
            n = std::max(n, s);
        }
        return n;
    }

    const C* find(const Exponent& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? nullptr : &it->second;
    }

    void add_term(const Exponent& e, const C& c) {
        if (coeff_is_zero(c)) return;
        if (!terms_.empty()) coeff_check_domain(terms_.begin()->second, c);
        auto [it, inserted] = terms_.emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (coeff_is_zero(it->second)) terms_.erase(it);
        }
    }

    std::vector<Exponent> support() const {
        std::vector<Exponent> s;
        s.reserve(terms_.size());
        for (const auto& [e, c] : terms_) s.push_back(e);
        return s;
    }

    WeylOp& operator+=(const WeylOp& rhs) {
        for (const auto& [e, c] : rhs.terms_) add_term(e, c);
        return *this;
    }
    WeylOp& operator-=(const WeylOp& rhs) {
        for (const auto& [e, c] : rhs.terms_) add_term(e, -c);
        return *this;
    }
    WeylOp operator-() const {
        WeylOp r;
        for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
        return r;
    }
    WeylOp& operator*=(const C& s) {
        if (coeff_is_zero(s)) {
            terms_.clear();
            return *this;
        }
        for (auto& [e, c] : terms_) c *= s;
        return *this;
    }

    friend WeylOp operator+(WeylOp a, const WeylOp& b) { return a += b; }
    friend WeylOp operator-(WeylOp a, const WeylOp& b) { return a -= b; }
    friend WeylOp operator*(WeylOp a, const C& s) { return a *= s; }
    friend WeylOp operator*(const C& s, WeylOp a) { return a *= s; }
    friend WeylOp operator*(const WeylOp& a, const WeylOp& b) { return multiply(a, b); }
    friend bool operator==(const WeylOp& a, const WeylOp& b) { return a.terms_ == b.terms_; }

    /// Normal-ordered product.
    static WeylOp multiply(const WeylOp& a, const WeylOp& b) {
        WeylOp out;
        if (a.is_zero() || b.is_zero()) return out;
        coeff_check_domain(a.terms_.begin()->second, b.terms_.begin()->second);
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                const C base = ca * cb;
                // Per variable: the admissible contraction counts m and their weights.
                std::array<std::vector<std::pair<int, BigInt>>, Vars> choices;
                for (std::size_t k = 0; k < Vars; ++k) {
                    const int j = ea[Vars + k];
                    const int xk = eb[k];
                    for (int m = 0; m <= j; ++m) {
                        if (xk >= 0 && m > xk) break;
                        choices[k].emplace_back(m, binomial(j, m) * falling_factorial(xk, m));
                    }
                }
                std::array<std::size_t, Vars> idx{};
                for (;;) {
                    Exponent e{};
                    BigInt w = 1;
                    for (std::size_t k = 0; k < Vars; ++k) {
                        const auto& [m, weight] = choices[k][idx[k]];
                        e[k] = ea[k] + eb[k] - m;
                        e[Vars + k] = ea[Vars + k] + eb[Vars + k] - m;
                        w *= weight;
                    }
                    out.add_term(e, w == 1 ? base : base * coeff_from_int(base, w));
                    std::size_t k = 0;
                    while (k < Vars && ++idx[k] == choices[k].size()) idx[k++] = 0;
                    if (k == Vars) break;
                }
            }
        }
        return out;
    }

    WeylOp pow(std::uint64_t k, const C& one) const {
        WeylOp acc = constant(one);
        WeylOp base = *this;
        while (k) {
            if (k & 1) acc = multiply(acc, base);
            k >>= 1;
            if (k) base = multiply(base, base);
        }
        return acc;
    }

private:
    Terms terms_;
};

template <class C>
using DiffOp = WeylOp<C, 1>;

using RationalOp = DiffOp<Rational>;
using FieldOp = DiffOp<FieldElement>;
using RationalOp2 = WeylOp<Rational, 2>;
using FieldOp2 = WeylOp<FieldElement, 2>;

/// Univariate polynomial as a sparse exponent -> coefficient table.
template <class C>
using UniPoly = std::map<int, C>;

/// Action of a one-variable operator on a polynomial.
template <class C>
UniPoly<C> apply(const DiffOp<C>& op, const UniPoly<C>& f) {
    UniPoly<C> out;
    if (op.is_zero() || f.empty()) return out;
    coeff_check_domain(op.terms().begin()->second, f.begin()->second);
    for (const auto& [e, a] : op.terms()) {
        for (const auto& [k, b] : f) {
            if (k < e[1]) continue;
            const C term = a * b * coeff_from_int(a, falling_factorial(k, e[1]));
            if (coeff_is_zero(term)) continue;
            auto [it, inserted] = out.emplace(k - e[1] + e[0], term);
            if (!inserted) {
                it->second += term;
                if (coeff_is_zero(it->second)) out.erase(it);
            }
        }
    }
    return out;
}

/// Parses the one-variable grammar (atoms x, d); exponents must be >= 0.
RationalOp parse_operator(std::string_view text);
/// Parses operators on the plane (atoms x1, x2, d1, d2). Negative powers are
/// admitted on x1, x2 only.
RationalOp2 parse_operator2(std::string_view text);

FieldOp reduce(const RationalOp& op, ff::Field field);
FieldOp2 reduce(const RationalOp2& op, ff::Field field);
/// Scalar extension of a prime-field operator into `target`.
FieldOp lift(const FieldOp& op, ff::Field target);

std::string to_string(const RationalOp& op);
std::string to_string(const FieldOp& op);

/// Integer matrix with determinant one acting by x -> a x + b d, d -> c x + d d.
struct SL2Mat {
    long a = 1, b = 0, c = 0, d = 1;

    static SL2Mat make(long a, long b, long c, long d);
    static SL2Mat identity() { return {1, 0, 0, 1}; }
    static SL2Mat fourier() { return {0, 1, -1, 0}; }
    static SL2Mat shear() { return {1, 0, 1, 1}; }

    friend SL2Mat operator*(const SL2Mat& l, const SL2Mat& r) {
        return {l.a * r.a + l.b * r.c, l.a * r.b + l.b * r.d, l.c * r.a + l.d * r.c, l.c * r.b + l.d * r.d};
    }
    friend bool operator==(const SL2Mat&, const SL2Mat&) = default;
    std::string label() const;
};

template <class C>
DiffOp<C> sl2_act(const SL2Mat& g, const DiffOp<C>& op) {
    if (g.a * g.d - g.b * g.c != 1) fail(ErrorCode::NotUnimodular, "matrix " + g.label() + " is not in SL(2,Z)");
    if (op.is_zero()) return op;
    const C& like = op.terms().begin()->second;
    const C one = coeff_from_int(like, 1);
    using Op = DiffOp<C>;
    Op xi, yi;
    xi.add_term({1, 0}, coeff_from_int(like, g.a));
    xi.add_term({0, 1}, coeff_from_int(like, g.b));
    yi.add_term({1, 0}, coeff_from_int(like, g.c));
    yi.add_term({0, 1}, coeff_from_int(like, g.d));
    std::map<int, Op> xpow, ypow;
    auto cached = [&](std::map<int, Op>& cache, const Op& gen, int k) -> const Op& {
        auto it = cache.find(k);
        if (it != cache.end()) return it->second;
        return cache.emplace(k, gen.pow(static_cast<std::uint64_t>(k), one)).first->second;
    };
    Op out;
    for (const auto& [e, a] : op.terms()) {
        const Op term = cached(xpow, xi, e[0]) * cached(ypow, yi, e[1]);
        out += term * a;
    }
    return out;
}

/// Multiplicity at the y = 0 line germ of the curve or operator with this
/// (x-exponent, y-exponent) support: among points maximising i - j, the
/// largest j.
int germ_multiplicity_y0(std::span<const std::array<int, 2>> support);

template <class C>
int germ_multiplicity_y0(const DiffOp<C>& op) {
    const auto s = op.support();
    return germ_multiplicity_y0(std::span<const std::array<int, 2>>(s));
}

}  // namespace arsupp::weyl
