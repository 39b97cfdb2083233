#include <doctest.h>

#include <random>

#include "arsupp/qtorus.hpp"

using namespace arsupp;
using ff::FieldElement;
using qtorus::LaurentOp;
using qtorus::MatrixFF;
using qtorus::RootCtx;

namespace {

std::vector<std::pair<std::size_t, ff::Word>> admissible_pairs() {
    std::vector<std::pair<std::size_t, ff::Word>> out;
    for (std::size_t n : {2, 3, 4, 6, 8, 16})
        for (ff::Word p = 3; p <= 97; ++p)
            if (ff::is_prime(p) && (p - 1) % n == 0) out.emplace_back(n, p);
    return out;
}

FieldElement random_nonzero(const RootCtx& rc, std::mt19937_64& rng) { return ff::random_nonzero(rc.field, rng); }

// Direct sum a_ij (uU)^i (vV)^j with matrix inverses for negative powers.
MatrixFF direct_matrix(const LaurentOp& op, const FieldElement& u, const FieldElement& v) {
    const RootCtx& rc = op.root_ctx();
    const auto [cu, cv] = qtorus::clock_shift(rc);
    const std::size_t n = rc.order;
    const MatrixFF x1 = cu * u, x2 = cv * v;
    // U^{-1} = U^{N-1}, V^{-1} = V^{N-1}.
    const MatrixFF x1i = cu.pow(n - 1) * u.inverse(), x2i = cv.pow(n - 1) * v.inverse();
    MatrixFF m(rc.field, n, n);
    for (const auto& [e, a] : op.terms()) {
        const MatrixFF a1 = e[0] >= 0 ? x1.pow(static_cast<std::uint64_t>(e[0])) : x1i.pow(static_cast<std::uint64_t>(-e[0]));
        const MatrixFF a2 = e[1] >= 0 ? x2.pow(static_cast<std::uint64_t>(e[1])) : x2i.pow(static_cast<std::uint64_t>(-e[1]));
        m += a1 * a2 * a;
    }
    return m;
}

}  // namespace

TEST_CASE("root contexts") {
    const RootCtx r25 = qtorus::make_root_ctx(5, 2);
    CHECK(r25.zeta == FieldElement(r25.field, 4));
    const RootCtx r37 = qtorus::make_root_ctx(7, 3);
    CHECK(r37.zeta == FieldElement(r37.field, 2));
    for (const auto& [n, p] : admissible_pairs()) {
        const RootCtx rc = qtorus::make_root_ctx(p, n);
        REQUIRE(rc.zeta.pow(n).is_one());
        for (std::size_t k = 1; k < n; ++k) REQUIRE_FALSE(rc.zeta.pow(k).is_one());
    }
    try {
        qtorus::make_root_ctx(7, 4);
        FAIL("N not dividing p - 1 accepted");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InvalidArgument);
    }
}

TEST_CASE("clock and shift matrices") {
    const RootCtx rc = qtorus::make_root_ctx(5, 2);
    const auto [u, v] = qtorus::clock_shift(rc);
    CHECK(u(0, 0) == FieldElement(rc.field, 1));
    CHECK(u(1, 1) == FieldElement(rc.field, 4));
    CHECK(v(0, 1).is_one());
    CHECK(v(1, 0).is_one());
    CHECK(v(0, 0).is_zero());
    CHECK(u * v == v * u * FieldElement(rc.field, 4));

    const RootCtx r3 = qtorus::make_root_ctx(7, 3);
    const auto [u3, v3] = qtorus::clock_shift(r3);
    CHECK(u3.pow(3) == MatrixFF::identity(r3.field, 3));
    CHECK(v3.pow(3) == MatrixFF::identity(r3.field, 3));

    for (const auto& [n, p] : admissible_pairs()) {
        const RootCtx c = qtorus::make_root_ctx(p, n);
        const auto [cu, cv] = qtorus::clock_shift(c);
        REQUIRE(cu * cv == cv * cu * c.zeta);
        REQUIRE(cu.pow(n) == MatrixFF::identity(c.field, n));
        REQUIRE(cv.pow(n) == MatrixFF::identity(c.field, n));
    }
}

TEST_CASE("Laurent arithmetic follows the commutation rule") {
    const RootCtx rc = qtorus::make_root_ctx(13, 3);
    const LaurentOp x1 = qtorus::parse_laurent("x1", rc), x2 = qtorus::parse_laurent("x2", rc);
    CHECK(x1 * x2 == x2 * x1 * LaurentOp::monomial(rc, {0, 0}, rc.zeta));
    CHECK(qtorus::parse_laurent("x1^-1", rc) * x1 == qtorus::parse_laurent("1", rc));
    CHECK(qtorus::parse_laurent("(x2*x1)^-1", rc) * (x2 * x1) == qtorus::parse_laurent("1", rc));
    CHECK(qtorus::parse_laurent("x1^2*x2^-1 + 3", rc).degree() == 3);
    try {
        qtorus::parse_laurent("(x1 + x2)^-1", rc);
        FAIL("inverse of a binomial accepted");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::SyntaxError);
    }
    std::mt19937_64 rng(4);
    const LaurentOp p = qtorus::parse_laurent("x1*x2 - 2*x1^-1 + x2^2", rc);
    const LaurentOp q = qtorus::parse_laurent("x1 + 5*x2^-1*x1", rc);
    for (int s = 0; s < 5; ++s) {
        const FieldElement u = random_nonzero(rc, rng), v = random_nonzero(rc, rng);
        REQUIRE(qtorus::q_matrix(p * q, u, v) == qtorus::q_matrix(p, u, v) * qtorus::q_matrix(q, u, v));
        REQUIRE(qtorus::q_matrix(p, u, v) == direct_matrix(p, u, v));
    }
}

TEST_CASE("q-determinant examples") {
    std::mt19937_64 rng(8);
    for (const auto& [n, p] : admissible_pairs()) {
        const RootCtx rc = qtorus::make_root_ctx(p, n);
        const FieldElement u = random_nonzero(rc, rng), v = random_nonzero(rc, rng);
        const FieldElement sign = rc.zeta.pow(n * (n - 1) / 2);
        REQUIRE(qtorus::q_determinant(qtorus::parse_laurent("x1", rc), u, v) == u.pow(n) * sign);
        REQUIRE(qtorus::q_determinant(qtorus::parse_laurent("1", rc), u, v).is_one());
    }
    const RootCtx rc = qtorus::make_root_ctx(5, 2);
    for (std::int64_t a = 1; a < 5; ++a)
        for (std::int64_t b = 1; b < 5; ++b) {
            const FieldElement u(rc.field, a), v(rc.field, b);
            CHECK(qtorus::q_determinant(qtorus::parse_laurent("x1 + x2", rc), u, v) == -(u * u + v * v));
        }
    try {
        qtorus::q_determinant(qtorus::parse_laurent("x1", rc), FieldElement::zero(rc.field), FieldElement::one(rc.field));
        FAIL("zero evaluation point accepted");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ZeroEvaluationPoint);
    }
}

TEST_CASE("q-determinant depends only on N-th powers") {
    std::mt19937_64 rng(13);
    for (const auto& [n, p] : admissible_pairs()) {
        const RootCtx rc = qtorus::make_root_ctx(p, n);
        const LaurentOp op = qtorus::parse_laurent("x1 + 2*x2 - x1*x2^-1 + 3*x1^-1*x2^2 + 1", rc);
        for (int s = 0; s < 3; ++s) {
            const FieldElement u = random_nonzero(rc, rng), v = random_nonzero(rc, rng);
            const FieldElement d = qtorus::q_determinant(op, u, v);
            REQUIRE(qtorus::q_determinant(op, rc.zeta * u, v) == d);
            REQUIRE(qtorus::q_determinant(op, u, rc.zeta * v) == d);
            REQUIRE(linalg::det_dense(direct_matrix(op, u, v)) == d);
        }
    }
}

TEST_CASE("central polynomial examples") {
    const RootCtx r2 = qtorus::make_root_ctx(5, 2);
    CHECK(qtorus::central_text(qtorus::central_polynomial(qtorus::parse_laurent("x1 + x2", r2))) == "-(Z1 + Z2)");

    for (const auto& [n, p] : std::vector<std::pair<std::size_t, ff::Word>>{{2, 7}, {3, 13}, {4, 13}}) {
        const RootCtx rc = qtorus::make_root_ctx(p, n);
        const curves::BivarPoly c1 = qtorus::central_polynomial(qtorus::parse_laurent("x1", rc));
        curves::BivarPoly expected(rc.field);
        expected.add_term({1, 0}, rc.zeta.pow(n * (n - 1) / 2));
        CHECK(c1 == expected);

        const curves::BivarPoly c12 = qtorus::central_polynomial(qtorus::parse_laurent("x1*x2", rc));
        REQUIRE(c12.size() == 1);
        REQUIRE(c12.terms().begin()->first == std::array<int, 2>{1, 1});
        const FieldElement coeff = c12.terms().begin()->second;
        CHECK((coeff.is_one() || coeff == FieldElement(rc.field, -1)));
        const FieldElement one = FieldElement::one(rc.field);
        CHECK(linalg::det_dense(direct_matrix(qtorus::parse_laurent("x1*x2", rc), one, one)) == coeff);
    }
}

TEST_CASE("central polynomial agrees with determinants off the grid") {
    std::mt19937_64 rng(99);
    for (const auto& [n, p] : admissible_pairs()) {
        if ((p - 1) / n < 3) continue;
        const RootCtx rc = qtorus::make_root_ctx(p, n);
        const LaurentOp op = qtorus::parse_laurent("x1 - 3*x2 + x1^-1 + 2", rc);
        const curves::BivarPoly c = qtorus::central_polynomial(op);
        REQUIRE(c.min_degree_in(0) >= -1);
        for (int s = 0; s < 20; ++s) {
            const FieldElement u = random_nonzero(rc, rng), v = random_nonzero(rc, rng);
            const FieldElement zu = u.pow(n), zv = v.pow(n);
            // Evaluate the Laurent polynomial term by term.
            FieldElement val = FieldElement::zero(rc.field);
            for (const auto& [e, a] : c.terms()) {
                const FieldElement pu = e[0] >= 0 ? zu.pow(static_cast<std::uint64_t>(e[0]))
                                                  : zu.inverse().pow(static_cast<std::uint64_t>(-e[0]));
                const FieldElement pv = e[1] >= 0 ? zv.pow(static_cast<std::uint64_t>(e[1]))
                                                  : zv.inverse().pow(static_cast<std::uint64_t>(-e[1]));
                val += a * pu * pv;
            }
            REQUIRE(val == qtorus::q_determinant(op, u, v));
        }
    }
    const RootCtx tight = qtorus::make_root_ctx(7, 6);
    try {
        qtorus::central_polynomial(qtorus::parse_laurent("x1 + x1^-1", tight));
        FAIL("insufficient nodes accepted");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InsufficientNodes);
    }
}

TEST_CASE("quantum freshman identity") {
    CHECK(qtorus::quantum_freshman_check(qtorus::make_root_ctx(5, 1)));
    CHECK(qtorus::quantum_freshman_check(qtorus::make_root_ctx(5, 2)));
    for (const auto& [n, p] : admissible_pairs()) REQUIRE(qtorus::quantum_freshman_check(qtorus::make_root_ctx(p, n), 10, p));
}
