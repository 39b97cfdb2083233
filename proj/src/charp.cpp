#include "arsupp/charp.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace arsupp::charp {

namespace {

Field operator_field(const weyl::FieldOp& op) {
    if (op.is_zero()) fail(ErrorCode::ZeroOperator, "the zero operator has no cyclic module");
    return op.terms().begin()->second.field();
}

void require_nonnegative(const weyl::FieldOp& op) {
    for (const auto& [e, c] : op.terms())
        if (e[0] < 0 || e[1] < 0) fail(ErrorCode::InvalidArgument, "operator has a negative exponent");
}

// k (k - 1) ... (k - m + 1) mod p for 0 <= k < p.
ff::Word falling_mod(ff::Word k, int m, ff::Word p) {
    ff::Word r = 1;
    for (int t = 0; t < m; ++t) {
        if (k < static_cast<ff::Word>(t)) return 0;
        r = r * ((k - static_cast<ff::Word>(t)) % p) % p;
    }
    return r;
}

FieldElement det_of(const BandedMatrixFF& m, std::size_t dense_limit) {
    return linalg::det_banded_or_dense(m, dense_limit);
}

}  // namespace

RepPair rep_generators(Field field) {
    if (!field->is_prime_field())
        fail(ErrorCode::ExtensionFieldUnsupported,
             "the representation lives over the prime field; got " + field->describe());
    const auto p = static_cast<std::size_t>(field->p());
    RepPair r{field, MatrixFF(field, p, p), MatrixFF(field, p, p)};
    for (std::size_t i = 0; i + 1 < p; ++i) {
        r.x(i + 1, i) = FieldElement::one(field);
        r.y(i, i + 1) = FieldElement(field, static_cast<std::int64_t>(i + 1));
    }
    return r;
}

weyl::FieldOp shift_operator(const weyl::FieldOp& op, const FieldElement& u, const FieldElement& v) {
    require_nonnegative(op);
    const Field f = u.field();
    weyl::FieldOp out;
    for (const auto& [e, c0] : op.terms()) {
        const FieldElement c = ff::lift(c0, f);
        const int i = e[0], j = e[1];
        for (int a = 0; a <= i; ++a) {
            const FieldElement ca = c * FieldElement::from_integer(f, weyl::binomial(i, a)) *
                                    u.pow(static_cast<std::uint64_t>(i - a));
            if (ca.is_zero()) continue;
            for (int b = 0; b <= j; ++b) {
                const FieldElement cab = ca * FieldElement::from_integer(f, weyl::binomial(j, b)) *
                                         v.pow(static_cast<std::uint64_t>(j - b));
                out.add_term({a, b}, cab);
            }
        }
    }
    return out;
}

BandedMatrixFF operator_matrix_banded(const weyl::FieldOp& op, const FieldElement& u, const FieldElement& v) {
    operator_field(op);
    if (u.field() != v.field()) fail(ErrorCode::FieldMismatch, "shift parameters lie in different fields");
    const Field f = u.field();
    const ff::Word p = f->p();
    const auto n = static_cast<std::size_t>(std::max(op.order_bound(), 0));
    BandedMatrixFF m(f, static_cast<std::size_t>(p), n);
    const weyl::FieldOp shifted = shift_operator(op, u, v);
    for (const auto& [e, q] : shifted.terms()) {
        const auto a = static_cast<ff::Word>(e[0]);
        const auto b = static_cast<ff::Word>(e[1]);
        // X^a Y^b e_c = c^(b) e_{c - b + a}, vanishing once the row leaves [0, p).
        for (ff::Word c = b; c < p; ++c) {
            const ff::Word row = c - b + a;
            if (row >= p) break;
            const ff::Word w = falling_mod(c, static_cast<int>(b), p);
            if (w == 0) continue;
            m.add(static_cast<std::size_t>(row), static_cast<std::size_t>(c),
                  w == 1 ? q : q * static_cast<std::int64_t>(w));
        }
    }
    return m;
}

MatrixFF operator_matrix(const weyl::FieldOp& op, const FieldElement& u, const FieldElement& v) {
    return operator_matrix_banded(op, u, v).to_dense();
}

MatrixFF operator_matrix(const weyl::RationalOp& op, const FieldElement& u, const FieldElement& v) {
    return operator_matrix(weyl::reduce(op, u.field()), u, v);
}

FieldElement p_determinant(const weyl::FieldOp& op, Field field, std::size_t dense_limit) {
    operator_field(op);
    const FieldElement zero = FieldElement::zero(field);
    try {
        return det_of(operator_matrix_banded(op, zero, zero), dense_limit);
    } catch (const Error& err) {
        if (err.code() == ErrorCode::BandTooWide)
            return linalg::det_dense(operator_matrix_banded(op, zero, zero).to_dense());
        if (err.code() != ErrorCode::DegenerateSuperdiagonal) throw;
        // D restricted to the line t -> (t a, t b) has degree <= N; recover
        // its value at t = 0 from nondegenerate nodes on that line.
        const int n = op.order_bound();
        const ff::Word p = field->p();
        const std::array<std::array<std::int64_t, 2>, 3> directions{{{1, 0}, {0, 1}, {1, 1}}};
        for (const auto& dir : directions) {
            std::vector<FieldElement> nodes, values;
            const ff::Word limit = std::min<ff::Word>(p - 1, 16 * static_cast<ff::Word>(n + 1));
            for (ff::Word t = 1; t <= limit && nodes.size() < static_cast<std::size_t>(n + 1); ++t) {
                const FieldElement ft(field, static_cast<std::int64_t>(t));
                try {
                    values.push_back(linalg::det_banded_or_dense(
                        operator_matrix_banded(op, ft * dir[0], ft * dir[1]), 0));
                    nodes.push_back(ft);
                } catch (const Error& inner) {
                    if (inner.code() != ErrorCode::DegenerateSuperdiagonal) throw;
                }
            }
            if (nodes.size() == static_cast<std::size_t>(n + 1))
                return curves::interpolate_1d(nodes, values).front();
        }
        throw;
    }
}

FieldElement p_determinant(const weyl::RationalOp& op, Field field, std::size_t dense_limit) {
    if (op.is_zero()) fail(ErrorCode::ZeroOperator, "the zero operator has no cyclic module");
    return p_determinant(weyl::reduce(op, field), field, dense_limit);
}

curves::BivarPoly SupportCurve::normalized() const {
    if (poly.is_zero()) return poly;
    // Graded-lex: highest total degree, then highest X power.
    auto lead = poly.terms().begin();
    for (auto it = poly.terms().begin(); it != poly.terms().end(); ++it) {
        const int d = it->first[0] + it->first[1];
        const int dl = lead->first[0] + lead->first[1];
        if (d > dl || (d == dl && it->first[0] > lead->first[0])) lead = it;
    }
    return poly * lead->second.inverse();
}

SupportCurve support_curve(const weyl::FieldOp& op, Field field, const CurveOptions& options) {
    operator_field(op);
    require_nonnegative(op);
    const int n = op.order_bound();
    const ff::Word p = field->p();
    if (p <= static_cast<ff::Word>(n))
        fail(ErrorCode::PrimeTooSmall,
             "p = " + std::to_string(p) + " must exceed the operator degree N = " + std::to_string(n));
    const auto k = static_cast<std::size_t>(n + 1);

    std::array<std::vector<FieldElement>, 2> nodes;
    for (auto& axis : nodes)
        for (std::size_t t = 0; t < k; ++t) axis.emplace_back(field, static_cast<std::int64_t>(t));

    std::mt19937_64 rng(options.seed);
    for (int attempt = 0;; ++attempt) {
        try {
            std::vector<FieldElement> values;
            values.reserve(k * k);
            for (const auto& u : nodes[0])
                for (const auto& v : nodes[1])
                    values.push_back(det_of(operator_matrix_banded(op, u, v), options.dense_limit));
            SupportCurve out{field, curves::interpolate_tensor<2>(nodes, std::move(values)), n};
            return out;
        } catch (const Error& err) {
            if (err.code() != ErrorCode::DegenerateSuperdiagonal || !options.allow_shift) throw;
            if (attempt >= options.max_retries)
                fail(ErrorCode::GridExhausted, "no nondegenerate interpolation grid after " +
                                                   std::to_string(options.max_retries) + " shifts");
        }
        // Any k distinct prime-field nodes determine D; draw a fresh grid.
        std::uniform_int_distribution<ff::Word> dist(0, p - 1);
        for (auto& axis : nodes) {
            std::set<ff::Word> picked;
            while (picked.size() < k) picked.insert(dist(rng));
            axis.clear();
            for (ff::Word w : picked) axis.emplace_back(field, static_cast<std::int64_t>(w));
        }
    }
}

SupportCurve support_curve(const weyl::RationalOp& op, Field field, const CurveOptions& options) {
    if (op.is_zero()) fail(ErrorCode::ZeroOperator, "the zero operator has no cyclic module");
    return support_curve(weyl::reduce(op, field), field, options);
}

ExtensionCheck extension_consistency(const weyl::FieldOp& op, const SupportCurve& curve, int samples,
                                     std::uint64_t seed, int degree) {
    const Field base = operator_field(op);
    if (!base->is_prime_field())
        fail(ErrorCode::ExtensionFieldUnsupported, "extension sampling needs prime-field coefficients");
    const Field ext = ff::make_field(base->p(), degree);
    const curves::BivarPoly d =
        curve.poly.map_coefficients(ext, [ext](const FieldElement& c) { return ff::lift(c, ext); });
    std::mt19937_64 rng(seed);
    ExtensionCheck out;
    for (int s = 0; s < samples; ++s) {
        const FieldElement u = ff::random_element(ext, rng);
        const FieldElement v = ff::random_element(ext, rng);
        const FieldElement lhs = d.evaluate({u.frobenius(), v.frobenius()});
        const FieldElement rhs = det_of(operator_matrix_banded(op, u, v), kDefaultDenseLimit);
        ++out.samples;
        if (lhs != rhs) ++out.failures;
    }
    return out;
}

MatrixFF poly_of_matrix(const std::vector<FieldElement>& coeffs, const MatrixFF& m) {
    MatrixFF acc(m.field(), m.rows(), m.cols());
    for (std::size_t k = coeffs.size(); k-- > 0;) {
        acc = acc * m;
        for (std::size_t i = 0; i < m.rows(); ++i) acc(i, i) += coeffs[k];
    }
    return acc;
}

bool freshman_identity_check_derivative(const std::vector<FieldElement>& g_prime, Field field) {
    const RepPair r = rep_generators(field);
    const MatrixFF f = poly_of_matrix(g_prime, r.x);
    const auto p = static_cast<std::uint64_t>(field->p());
    return (r.y + f).pow(p) == f.pow(p);
}

bool freshman_identity_check(const std::vector<FieldElement>& g, Field field) {
    std::vector<FieldElement> d;
    for (std::size_t k = 1; k < g.size(); ++k) d.push_back(g[k] * static_cast<std::int64_t>(k));
    return freshman_identity_check_derivative(d, field);
}

}  // namespace arsupp::charp
