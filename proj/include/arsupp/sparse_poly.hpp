#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <span>
#include <vector>

#include "arsupp/ffield.hpp"

namespace arsupp::curves {

using ff::Field;
using ff::FieldElement;

/// Sparse commutative (Laurent) polynomial in NV variables over a finite field.
/// Exponents may be negative; zero coefficients are never stored.
template <std::size_t NV>
class SparsePoly {
public:
    using Exponent = std::array<int, NV>;
    using Terms = std::map<Exponent, FieldElement>;

    explicit SparsePoly(Field field = nullptr) : field_(field) {}

    static SparsePoly constant(const FieldElement& c) {
        SparsePoly p(c.field());
        p.add_term(Exponent{}, c);
        return p;
    }
    static SparsePoly variable(Field field, std::size_t k) {
        SparsePoly p(field);
        Exponent e{};
        e[k] = 1;
        p.add_term(e, FieldElement::one(field));
        return p;
    }

    Field field() const noexcept { return field_; }
    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }

    void add_term(const Exponent& e, const FieldElement& c) {
        if (c.is_zero()) return;
        if (c.field() != field_) fail(ErrorCode::FieldMismatch, "coefficient field differs from polynomial field");
        auto [it, inserted] = terms_.emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    FieldElement coefficient(const Exponent& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? FieldElement::zero(field_) : it->second;
    }

    /// Largest exponent sum over the support; -1 for the zero polynomial.
    int total_degree() const {
        int d = -1;
        for (const auto& [e, c] : terms_) d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
        return d;
    }
    int degree_in(std::size_t k) const {
        int d = std::numeric_limits<int>::min();
        for (const auto& [e, c] : terms_) d = std::max(d, e[k]);
        return d;
    }
    int min_degree_in(std::size_t k) const {
        int d = std::numeric_limits<int>::max();
        for (const auto& [e, c] : terms_) d = std::min(d, e[k]);
        return d;
    }

    SparsePoly& operator+=(const SparsePoly& rhs) {
        for (const auto& [e, c] : rhs.terms_) add_term(e, c);
        return *this;
    }
    SparsePoly& operator-=(const SparsePoly& rhs) {
        for (const auto& [e, c] : rhs.terms_) add_term(e, -c);
        return *this;
    }
    SparsePoly operator-() const {
        SparsePoly r(field_);
        for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
        return r;
    }
    SparsePoly& operator*=(const FieldElement& s) {
        if (s.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto& [e, c] : terms_) c *= s;
        return *this;
    }

    friend SparsePoly operator+(SparsePoly a, const SparsePoly& b) { return a += b; }
    friend SparsePoly operator-(SparsePoly a, const SparsePoly& b) { return a -= b; }
    friend SparsePoly operator*(SparsePoly a, const FieldElement& s) { return a *= s; }
    friend SparsePoly operator*(const FieldElement& s, SparsePoly a) { return a *= s; }
    friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
        SparsePoly r(a.field_ ? a.field_ : b.field_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                Exponent e;
                for (std::size_t k = 0; k < NV; ++k) e[k] = ea[k] + eb[k];
                r.add_term(e, ca * cb);
            }
        return r;
    }
    friend bool operator==(const SparsePoly& a, const SparsePoly& b) { return a.terms_ == b.terms_; }

    SparsePoly pow(std::uint64_t k) const {
        SparsePoly acc = constant(FieldElement::one(field_));
        SparsePoly base = *this;
        while (k) {
            if (k & 1) acc = acc * base;
            k >>= 1;
            if (k) base = base * base;
        }
        return acc;
    }

    FieldElement evaluate(const std::array<FieldElement, NV>& point) const {
        FieldElement acc = FieldElement::zero(field_);
        for (const auto& [e, c] : terms_) {
            FieldElement t = c;
            for (std::size_t k = 0; k < NV; ++k) {
                if (e[k] > 0) t *= point[k].pow(static_cast<std::uint64_t>(e[k]));
                if (e[k] < 0) t *= point[k].inverse().pow(static_cast<std::uint64_t>(-e[k]));
            }
            acc += t;
        }
        return acc;
    }

    /// Formal partial derivative in variable k.
    SparsePoly partial(std::size_t k) const {
        SparsePoly r(field_);
        for (const auto& [e, c] : terms_) {
            if (e[k] == 0) continue;
            Exponent d = e;
            d[k] -= 1;
            r.add_term(d, c * static_cast<std::int64_t>(e[k]));
        }
        return r;
    }

    /// Applies `fn` to every coefficient, moving the result into `target`.
    SparsePoly map_coefficients(Field target, const std::function<FieldElement(const FieldElement&)>& fn) const {
        SparsePoly r(target);
        for (const auto& [e, c] : terms_) r.add_term(e, fn(c));
        return r;
    }

    /// Multiplies by the monomial x^shift.
    SparsePoly shifted(const Exponent& shift) const {
        SparsePoly r(field_);
        for (const auto& [e, c] : terms_) {
            Exponent s;
            for (std::size_t k = 0; k < NV; ++k) s[k] = e[k] + shift[k];
            r.terms_.emplace(s, c);
        }
        return r;
    }

private:
    Field field_;
    Terms terms_;
};

using BivarPoly = SparsePoly<2>;

/// Coefficients (ascending) of the unique polynomial of degree < n through
/// (nodes[k], values[k]); nodes must be distinct.
std::vector<FieldElement> interpolate_1d(std::span<const FieldElement> nodes, std::span<const FieldElement> values);

/// Tensor-product interpolation on nodes[0] x ... x nodes[NV-1]. `values` is
/// row-major with the last axis fastest.
template <std::size_t NV>
SparsePoly<NV> interpolate_tensor(const std::array<std::vector<FieldElement>, NV>& nodes,
                                  std::vector<FieldElement> values) {
    std::array<std::size_t, NV> dims;
    std::size_t total = 1;
    for (std::size_t k = 0; k < NV; ++k) {
        dims[k] = nodes[k].size();
        total *= dims[k];
    }
    if (values.size() != total) fail(ErrorCode::InvalidArgument, "interpolation grid size mismatch");
    Field field = values.empty() ? nullptr : values.front().field();

    std::array<std::size_t, NV> stride;
    stride[NV - 1] = 1;
    for (std::size_t k = NV - 1; k-- > 0;) stride[k] = stride[k + 1] * dims[k + 1];

    std::vector<FieldElement> fiber;
    for (std::size_t axis = 0; axis < NV; ++axis) {
        const std::size_t n = dims[axis];
        fiber.resize(n);
        for (std::size_t base = 0; base < total; ++base) {
            // Visit each fiber once, from the index whose axis coordinate is zero.
            if ((base / stride[axis]) % n != 0) continue;
            for (std::size_t t = 0; t < n; ++t) fiber[t] = values[base + t * stride[axis]];
            const auto coeffs = interpolate_1d(nodes[axis], fiber);
            for (std::size_t t = 0; t < n; ++t) values[base + t * stride[axis]] = coeffs[t];
        }
    }

    SparsePoly<NV> out(field);
    for (std::size_t idx = 0; idx < total; ++idx) {
        if (values[idx].is_zero()) continue;
        typename SparsePoly<NV>::Exponent e;
        for (std::size_t k = 0; k < NV; ++k) e[k] = static_cast<int>((idx / stride[k]) % dims[k]);
        out.add_term(e, values[idx]);
    }
    return out;
}

}  // namespace arsupp::curves
