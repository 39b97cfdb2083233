#include "arsupp/qtorus.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <random>

#include "arsupp/expr.hpp"

namespace arsupp::qtorus {

RootCtx make_root_ctx(ff::Word p, std::size_t n) {
    const Field f = ff::make_field(p);
    if (n == 0 || (p - 1) % n != 0)
        fail(ErrorCode::InvalidArgument,
             "N = " + std::to_string(n) + " does not divide p - 1 = " + std::to_string(p - 1));
    const FieldElement g(f, static_cast<std::int64_t>(ff::primitive_root(p)));
    return {f, n, g.pow(static_cast<std::uint64_t>((p - 1) / n))};
}

namespace {

// zeta^k for any integer k.
FieldElement zeta_pow(const RootCtx& rc, std::int64_t k) {
    const auto n = static_cast<std::int64_t>(rc.order);
    const std::int64_t r = ((k % n) + n) % n;
    return rc.zeta.pow(static_cast<std::uint64_t>(r));
}

FieldElement int_pow(const FieldElement& a, std::int64_t k) {
    return k >= 0 ? a.pow(static_cast<std::uint64_t>(k)) : a.inverse().pow(static_cast<std::uint64_t>(-k));
}

}  // namespace

LaurentOp LaurentOp::monomial(const RootCtx& rc, const Exponent& e, const FieldElement& c) {
    LaurentOp op(rc);
    op.add_term(e, c);
    return op;
}

int LaurentOp::degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, std::abs(e[0]) + std::abs(e[1]));
    return d;
}

void LaurentOp::add_term(const Exponent& e, const FieldElement& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

LaurentOp& LaurentOp::operator+=(const LaurentOp& rhs) {
    if (!rc_.field) rc_ = rhs.rc_;
    for (const auto& [e, c] : rhs.terms_) add_term(e, c);
    return *this;
}

LaurentOp& LaurentOp::operator-=(const LaurentOp& rhs) {
    if (!rc_.field) rc_ = rhs.rc_;
    for (const auto& [e, c] : rhs.terms_) add_term(e, -c);
    return *this;
}

LaurentOp LaurentOp::operator-() const {
    LaurentOp r(rc_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

LaurentOp operator*(const LaurentOp& a, const LaurentOp& b) {
    const RootCtx& rc = a.rc_.field ? a.rc_ : b.rc_;
    LaurentOp out(rc);
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) {
            const FieldElement twist = zeta_pow(rc, -static_cast<std::int64_t>(ea[1]) * eb[0]);
            out.add_term({ea[0] + eb[0], ea[1] + eb[1]}, ca * cb * twist);
        }
    return out;
}

LaurentOp LaurentOp::pow(std::int64_t k) const {
    LaurentOp base = *this;
    if (k < 0) {
        if (terms_.size() != 1) fail(ErrorCode::InvalidArgument, "only monomials have inverses");
        const auto& [e, c] = *terms_.begin();
        // (x1^i x2^j)^{-1} = x2^{-j} x1^{-i}.
        const LaurentOp x2 = monomial(rc_, {0, -e[1]}, FieldElement::one(rc_.field));
        const LaurentOp x1 = monomial(rc_, {-e[0], 0}, c.inverse());
        base = x2 * x1;
        k = -k;
    }
    LaurentOp acc = monomial(rc_, {0, 0}, FieldElement::one(rc_.field));
    auto uk = static_cast<std::uint64_t>(k);
    while (uk) {
        if (uk & 1) acc = acc * base;
        uk >>= 1;
        if (uk) base = base * base;
    }
    return acc;
}

namespace {

struct LaurentAlgebra {
    const RootCtx& rc;
    LaurentOp number(const Rational& q) const { return LaurentOp::monomial(rc, {0, 0}, ff::reduce(rc.field, q)); }
    LaurentOp symbol(const std::string& name, std::size_t pos) const {
        if (name == "x1") return LaurentOp::monomial(rc, {1, 0}, FieldElement::one(rc.field));
        if (name == "x2") return LaurentOp::monomial(rc, {0, 1}, FieldElement::one(rc.field));
        throw SyntaxError(pos, "unknown symbol '" + name + "'");
    }
    LaurentOp add(const LaurentOp& a, const LaurentOp& b) const { return a + b; }
    LaurentOp sub(const LaurentOp& a, const LaurentOp& b) const { return a - b; }
    LaurentOp mul(const LaurentOp& a, const LaurentOp& b) const { return a * b; }
    LaurentOp neg(const LaurentOp& a) const { return -a; }
    LaurentOp power(const LaurentOp& a, std::int64_t k, std::size_t pos) const {
        if (k < 0 && a.terms().size() != 1) throw SyntaxError(pos, "negative exponent of a non-monomial");
        return a.pow(k);
    }
};

}  // namespace

LaurentOp parse_laurent(std::string_view text, const RootCtx& rc) {
    LaurentAlgebra alg{rc};
    LaurentOp out = expr::evaluate(*expr::parse(text), alg);
    return LaurentOp(rc) + out;
}

std::pair<MatrixFF, MatrixFF> clock_shift(const RootCtx& rc) {
    const std::size_t n = rc.order;
    MatrixFF u(rc.field, n, n), v(rc.field, n, n);
    for (std::size_t k = 0; k < n; ++k) {
        u(k, k) = rc.zeta.pow(static_cast<std::uint64_t>(k));
        v((k + 1) % n, k) = FieldElement::one(rc.field);
    }
    return {u, v};
}

MatrixFF q_matrix(const LaurentOp& op, const FieldElement& u, const FieldElement& v) {
    const RootCtx& rc = op.root_ctx();
    if (!rc.field) fail(ErrorCode::InvalidArgument, "operator has no root-of-unity context");
    const std::size_t n = rc.order;
    const auto sn = static_cast<std::int64_t>(n);
    MatrixFF m(rc.field, n, n);
    for (const auto& [e, a] : op.terms()) {
        const FieldElement base = a * int_pow(u, e[0]) * int_pow(v, e[1]);
        // U^i V^j e_k = zeta^{i (k + j)} e_{k + j}.
        for (std::int64_t k = 0; k < sn; ++k) {
            const std::int64_t row = (((k + e[1]) % sn) + sn) % sn;
            m(static_cast<std::size_t>(row), static_cast<std::size_t>(k)) +=
                base * zeta_pow(rc, static_cast<std::int64_t>(e[0]) * row);
        }
    }
    return m;
}

FieldElement q_determinant(const LaurentOp& op, const FieldElement& u, const FieldElement& v) {
    if (u.is_zero() || v.is_zero()) fail(ErrorCode::ZeroEvaluationPoint, "u and v must be nonzero");
    return linalg::det_dense(q_matrix(op, u, v));
}

curves::BivarPoly central_polynomial(const LaurentOp& op) {
    const RootCtx& rc = op.root_ctx();
    if (!rc.field) fail(ErrorCode::InvalidArgument, "operator has no root-of-unity context");
    if (op.is_zero()) return curves::BivarPoly(rc.field);
    std::array<int, 2> lo{std::numeric_limits<int>::max(), std::numeric_limits<int>::max()};
    std::array<int, 2> hi{std::numeric_limits<int>::min(), std::numeric_limits<int>::min()};
    for (const auto& [e, c] : op.terms())
        for (std::size_t k = 0; k < 2; ++k) {
            lo[k] = std::min(lo[k], e[k]);
            hi[k] = std::max(hi[k], e[k]);
        }
    const ff::Word p = rc.field->p();
    const auto available = static_cast<std::size_t>((p - 1) / rc.order);
    const FieldElement g(rc.field, static_cast<std::int64_t>(ff::primitive_root(p)));

    // u_k = g^k gives distinct Z = u_k^N for k < (p - 1) / N.
    std::array<std::vector<FieldElement>, 2> params, nodes;
    for (std::size_t k = 0; k < 2; ++k) {
        const auto count = static_cast<std::size_t>(hi[k] - lo[k] + 1);
        if (count > available)
            fail(ErrorCode::InsufficientNodes, "need " + std::to_string(count) + " distinct N-th powers but F_" +
                                                   std::to_string(p) + " has " + std::to_string(available));
        FieldElement u = FieldElement::one(rc.field);
        for (std::size_t t = 0; t < count; ++t) {
            params[k].push_back(u);
            nodes[k].push_back(u.pow(static_cast<std::uint64_t>(rc.order)));
            u *= g;
        }
    }
    std::vector<FieldElement> values;
    for (std::size_t a = 0; a < params[0].size(); ++a)
        for (std::size_t b = 0; b < params[1].size(); ++b) {
            // Interpolate C * Z1^{-lo1} * Z2^{-lo2}, a polynomial.
            values.push_back(q_determinant(op, params[0][a], params[1][b]) * int_pow(nodes[0][a], -lo[0]) *
                             int_pow(nodes[1][b], -lo[1]));
        }
    const curves::BivarPoly shifted = curves::interpolate_tensor<2>(nodes, std::move(values));
    return shifted.shifted({lo[0], lo[1]});
}

std::string central_text(const curves::BivarPoly& c) {
    return curves::format_poly<2>(c, {"Z1", "Z2"}, {0, 1});
}

bool quantum_freshman_check(const RootCtx& rc, int samples, std::uint64_t seed) {
    const auto [u_mat, v_mat] = clock_shift(rc);
    const std::size_t n = rc.order;
    const MatrixFF id = MatrixFF::identity(rc.field, n);
    std::mt19937_64 rng(seed);
    for (int s = 0; s < samples; ++s) {
        const FieldElement u = ff::random_nonzero(rc.field, rng);
        const FieldElement v = ff::random_nonzero(rc.field, rng);
        const MatrixFF x1 = u_mat * u;
        const MatrixFF x2 = v_mat * v;
        const MatrixFF lhs = (x1 * (id - x2)).pow(n);
        const MatrixFF rhs = x1.pow(n) * (id - x2.pow(n));
        if (!(lhs == rhs)) return false;
    }
    return true;
}

}  // namespace arsupp::qtorus
