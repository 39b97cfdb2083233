#include "arsupp/probe.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <map>

#include "arsupp/charp.hpp"
#include "arsupp/linalg.hpp"

namespace arsupp::charp {

namespace {

using linalg::MatrixFF;

// The element of F_{p^e} whose base-p digits are the coefficients.
FieldElement enumerate_element(Field f, std::uint64_t index) {
    std::array<ff::Word, ff::kMaxDegree> c{};
    for (int k = 0; k < f->degree(); ++k) {
        c[k] = index % f->p();
        index /= f->p();
    }
    return FieldElement::from_coeffs(f, std::span<const ff::Word>(c.data(), f->degree()));
}

void kron_accumulate(MatrixFF& acc, const FieldElement& c, const MatrixFF& a, const MatrixFF& b) {
    const std::size_t n = a.rows();
    for (std::size_t i1 = 0; i1 < n; ++i1)
        for (std::size_t j1 = 0; j1 < n; ++j1) {
            if (a(i1, j1).is_zero()) continue;
            const FieldElement s = c * a(i1, j1);
            for (std::size_t i2 = 0; i2 < n; ++i2)
                for (std::size_t j2 = 0; j2 < n; ++j2) {
                    if (b(i2, j2).is_zero()) continue;
                    acc(i1 * n + i2, j1 * n + j2) += s * b(i2, j2);
                }
        }
}

// (X + u)^i (Y + v)^j for every requested (i, j), with negative i meaning
// powers of (X + u)^{-1} = u^{-1} sum_m (-X / u)^m.
std::vector<MatrixFF> factor_matrices(const RepPair& rep, const FieldElement& u, const FieldElement& v,
                                      const std::vector<std::array<int, 2>>& exps) {
    const Field f = u.field();
    const auto p = static_cast<std::size_t>(f->p());
    MatrixFF x(f, p, p), y(f, p, p);
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < p; ++j) {
            x(i, j) = ff::lift(rep.x(i, j), f);
            y(i, j) = ff::lift(rep.y(i, j), f);
        }
    const MatrixFF xs = x + MatrixFF::scalar(u, p);
    const MatrixFF ys = y + MatrixFF::scalar(v, p);
    std::optional<MatrixFF> xs_inv;
    std::vector<MatrixFF> out;
    out.reserve(exps.size());
    for (const auto& [i, j] : exps) {
        MatrixFF left = MatrixFF::identity(f, p);
        if (i > 0) left = xs.pow(static_cast<std::uint64_t>(i));
        if (i < 0) {
            if (!xs_inv) {
                const FieldElement minus_inv = -u.inverse();
                MatrixFF term = MatrixFF::identity(f, p) * u.inverse();
                MatrixFF sum = term;
                for (std::size_t m = 1; m < p; ++m) {
                    term = term * x * minus_inv;
                    sum += term;
                }
                xs_inv = sum;
            }
            left = xs_inv->pow(static_cast<std::uint64_t>(-i));
        }
        out.push_back(j > 0 ? left * ys.pow(static_cast<std::uint64_t>(j)) : left);
    }
    return out;
}

}  // namespace

ProbeResult support_multidim_probe(const weyl::RationalOp2& rop, Field field) {
    if (!field->is_prime_field())
        fail(ErrorCode::ExtensionFieldUnsupported, "the probe works over a prime field");
    if (rop.is_zero()) fail(ErrorCode::ZeroOperator, "the zero operator has no cyclic module");
    const weyl::FieldOp2 op = weyl::reduce(rop, field);
    if (op.is_zero()) fail(ErrorCode::ZeroOperator, "the operator vanishes modulo p");
    const auto p = static_cast<std::int64_t>(field->p());

    ProbeResult res;
    res.field = field;
    std::array<int, 4> mn, mx;
    mn.fill(std::numeric_limits<int>::max());
    mx.fill(std::numeric_limits<int>::min());
    for (const auto& [e, c] : op.terms())
        for (std::size_t k = 0; k < 4; ++k) {
            mn[k] = std::min(mn[k], e[k]);
            mx[k] = std::max(mx[k], e[k]);
        }
    std::size_t needed = 1;
    std::array<bool, 4> nonzero_nodes{};
    for (std::size_t k = 0; k < 4; ++k) {
        if (std::max(std::abs(mn[k]), std::abs(mx[k])) >= p)
            fail(ErrorCode::PrimeTooSmall, "p = " + std::to_string(p) + " does not exceed the degree in variable " +
                                               std::to_string(k));
        res.lo[k] = static_cast<int>(p) * mn[k];
        res.hi[k] = static_cast<int>(p) * mx[k];
        nonzero_nodes[k] = res.lo[k] != 0;
        needed = std::max(needed, static_cast<std::size_t>(res.hi[k] - res.lo[k] + 1));
    }

    int e = 1;
    std::uint64_t order = static_cast<std::uint64_t>(p);
    while (order - 1 < needed) {
        if (++e > ff::kMaxDegree)
            fail(ErrorCode::GridExhausted, std::to_string(needed) + " interpolation nodes exceed F_" +
                                               std::to_string(p) + "^" + std::to_string(ff::kMaxDegree));
        order *= static_cast<std::uint64_t>(p);
    }
    res.extension_degree = e;
    const Field ext = ff::make_field(static_cast<ff::Word>(p), e);

    // Grid nodes w are values of the central variables; parameters are w^{1/p}.
    std::array<std::vector<FieldElement>, 4> nodes, params;
    for (std::size_t k = 0; k < 4; ++k) {
        const auto count = static_cast<std::size_t>(res.hi[k] - res.lo[k] + 1);
        for (std::size_t t = 0; t < count; ++t) {
            const FieldElement w = enumerate_element(ext, nonzero_nodes[k] ? t + 1 : t);
            nodes[k].push_back(w);
            params[k].push_back(w.frobenius_inverse());
        }
    }

    // Distinct (x_k, d_k) exponent pairs per tensor slot, and the term table.
    std::array<std::vector<std::array<int, 2>>, 2> slot_exps;
    struct Term {
        FieldElement c;
        std::size_t a, b;
    };
    std::vector<Term> terms;
    for (const auto& [ex, c] : op.terms()) {
        std::array<std::size_t, 2> idx{};
        for (std::size_t s = 0; s < 2; ++s) {
            const std::array<int, 2> key{ex[s], ex[2 + s]};
            auto& list = slot_exps[s];
            auto it = std::find(list.begin(), list.end(), key);
            idx[s] = static_cast<std::size_t>(it - list.begin());
            if (it == list.end()) list.push_back(key);
        }
        terms.push_back({ff::lift(c, ext), idx[0], idx[1]});
    }

    const RepPair rep = rep_generators(field);
    const auto pp = static_cast<std::size_t>(p);
    // factors[s][iu * nv + iv] holds the slot-s matrices at (u, v) node indices.
    std::array<std::vector<std::vector<MatrixFF>>, 2> factors;
    for (std::size_t s = 0; s < 2; ++s) {
        const auto& us = params[s];
        const auto& vs = params[2 + s];
        for (const auto& u : us)
            for (const auto& v : vs) factors[s].push_back(factor_matrices(rep, u, v, slot_exps[s]));
    }

    const std::array<std::size_t, 4> dims{nodes[0].size(), nodes[1].size(), nodes[2].size(), nodes[3].size()};
    std::vector<FieldElement> values(dims[0] * dims[1] * dims[2] * dims[3]);
    for (std::size_t i0 = 0; i0 < dims[0]; ++i0)
        for (std::size_t i1 = 0; i1 < dims[1]; ++i1)
            for (std::size_t i2 = 0; i2 < dims[2]; ++i2)
                for (std::size_t i3 = 0; i3 < dims[3]; ++i3) {
                    const auto& fa = factors[0][i0 * dims[2] + i2];
                    const auto& fb = factors[1][i1 * dims[3] + i3];
                    MatrixFF m(ext, pp * pp, pp * pp);
                    for (const auto& t : terms) kron_accumulate(m, t.c, fa[t.a], fb[t.b]);
                    FieldElement val = linalg::det_dense(m);
                    // Interpolate D * prod w_k^{-lo_k}, a polynomial in the nodes.
                    const std::array<std::size_t, 4> at{i0, i1, i2, i3};
                    for (std::size_t k = 0; k < 4; ++k) {
                        if (res.lo[k] == 0) continue;
                        const FieldElement w = nodes[k][at[k]];
                        val *= res.lo[k] < 0 ? w.pow(static_cast<std::uint64_t>(-res.lo[k]))
                                             : w.inverse().pow(static_cast<std::uint64_t>(res.lo[k]));
                    }
                    values[((i0 * dims[1] + i1) * dims[2] + i2) * dims[3] + i3] = val;
                }

    const Poly4 shifted = curves::interpolate_tensor<4>(nodes, std::move(values));
    Poly4 d(field);
    for (const auto& [ex, c] : shifted.terms()) {
        if (!c.in_prime_field())
            fail(ErrorCode::ConsistencyFailure, "interpolated coefficient " + c.to_string() + " is not in F_p");
        Poly4::Exponent back;
        for (std::size_t k = 0; k < 4; ++k) back[k] = ex[k] + res.lo[k];
        d.add_term(back, FieldElement(field, static_cast<std::int64_t>(c.prime_value())));
    }
    res.poly = d;
    if (!d.is_zero()) {
        res.root = curves::p_power_divisibility(d, 1);
        res.p_power = res.root.has_value();
    }
    return res;
}

std::string probe_text(const Poly4& d) {
    return curves::format_poly<4>(d, {"X1", "X2", "Y1", "Y2"}, {0, 1, 2, 3});
}

}  // namespace arsupp::charp
