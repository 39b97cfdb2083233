#include <doctest.h>

#include <random>

#include "arsupp/charp.hpp"

using namespace arsupp;
using charp::MatrixFF;
using ff::FieldElement;
using weyl::RationalOp;

namespace {

MatrixFF lift_matrix(const MatrixFF& m, ff::Field f) {
    MatrixFF out(f, m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = ff::lift(m(i, j), f);
    return out;
}

// sum a_ij (X + u)^i (Y + v)^j by explicit matrix powers.
MatrixFF direct_matrix(const RationalOp& op, const FieldElement& u, const FieldElement& v) {
    const ff::Field f = u.field();
    const ff::Field base = ff::make_field(f->p());
    const charp::RepPair rep = charp::rep_generators(base);
    const auto p = static_cast<std::size_t>(f->p());
    const MatrixFF xs = lift_matrix(rep.x, f) + MatrixFF::scalar(u, p);
    const MatrixFF ys = lift_matrix(rep.y, f) + MatrixFF::scalar(v, p);
    MatrixFF acc(f, p, p);
    for (const auto& [e, c] : op.terms())
        acc += xs.pow(static_cast<std::uint64_t>(e[0])) * ys.pow(static_cast<std::uint64_t>(e[1])) *
               ff::reduce(f, c);
    return acc;
}

RationalOp random_op(std::mt19937_64& rng, int n) {
    std::uniform_int_distribution<int> coeff(-6, 6);
    RationalOp op;
    for (int i = 0; i <= n; ++i)
        for (int j = 0; i + j <= n; ++j)
            if (rng() % 2) op.add_term({i, j}, Rational(coeff(rng)));
    if (!op.find({0, n})) op.add_term({0, n}, Rational(1));
    return op;
}

curves::BivarPoly curve(const char* text, ff::Field f) { return curves::parse_curve_text(text, f); }

template <class Fn>
void expect_error(ErrorCode code, Fn&& fn) {
    try {
        fn();
        FAIL("no error raised");
    } catch (const Error& e) {
        CHECK(e.code() == code);
    }
}

}  // namespace

TEST_CASE("representation at p = 5 matches the displayed matrices") {
    const ff::Field f = ff::make_field(5);
    const charp::RepPair r = charp::rep_generators(f);
    const int x[5][5] = {{0, 0, 0, 0, 0}, {1, 0, 0, 0, 0}, {0, 1, 0, 0, 0}, {0, 0, 1, 0, 0}, {0, 0, 0, 1, 0}};
    const int y[5][5] = {{0, 1, 0, 0, 0}, {0, 0, 2, 0, 0}, {0, 0, 0, 3, 0}, {0, 0, 0, 0, 4}, {0, 0, 0, 0, 0}};
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j) {
            CHECK(r.x(i, j) == FieldElement(f, x[i][j]));
            CHECK(r.y(i, j) == FieldElement(f, y[i][j]));
        }
}

TEST_CASE("representation at p = 3 from the action on 1, x, x^2") {
    const ff::Field f = ff::make_field(3);
    const charp::RepPair r = charp::rep_generators(f);
    // Column c holds the image of x^c.
    for (std::size_t c = 0; c < 3; ++c) {
        const weyl::UniPoly<Rational> xc{{static_cast<int>(c), Rational(1)}};
        const auto dx = weyl::apply(RationalOp::monomial({0, 1}, Rational(1)), xc);
        for (std::size_t row = 0; row < 3; ++row) {
            CHECK(r.x(row, c) == FieldElement(f, row == c + 1 ? 1 : 0));
            const auto it = dx.find(static_cast<int>(row));
            CHECK(r.y(row, c) == (it == dx.end() ? FieldElement::zero(f) : ff::reduce(f, it->second)));
        }
    }
    expect_error(ErrorCode::ExtensionFieldUnsupported, [] { charp::rep_generators(ff::make_field(3, 2)); });
}

TEST_CASE("representation relations") {
    for (ff::Word p = 2; p <= 61; ++p) {
        if (!ff::is_prime(p)) continue;
        const ff::Field f = ff::make_field(p);
        const charp::RepPair r = charp::rep_generators(f);
        const auto n = static_cast<std::size_t>(p);
        REQUIRE(r.y * r.x - r.x * r.y == MatrixFF::identity(f, n));
        REQUIRE(r.x.pow(p).is_zero());
        REQUIRE(r.y.pow(p).is_zero());
    }
}

TEST_CASE("operator matrix examples") {
    const ff::Field f = ff::make_field(7);
    const charp::RepPair r = charp::rep_generators(f);
    const FieldElement zero = FieldElement::zero(f), one = FieldElement::one(f);
    CHECK(charp::operator_matrix(weyl::parse_operator("d"), zero, zero) == r.y);
    MatrixFF diag(f, 7, 7);
    for (std::size_t k = 0; k < 7; ++k) diag(k, k) = FieldElement(f, static_cast<std::int64_t>(k));
    CHECK(charp::operator_matrix(weyl::parse_operator("x*d"), zero, zero) == diag);
    CHECK(r.x * r.y == diag);
    CHECK(charp::operator_matrix(weyl::parse_operator("x + d"), one, one) ==
          (r.x + MatrixFF::scalar(one, 7)) + (r.y + MatrixFF::scalar(one, 7)));
    expect_error(ErrorCode::BadPrime, [&] { charp::operator_matrix(weyl::parse_operator("1/7*d"), zero, zero); });
    expect_error(ErrorCode::ZeroOperator, [&] { charp::operator_matrix(RationalOp(), zero, zero); });
}

TEST_CASE("operator matrix matches explicit matrix powers") {
    std::mt19937_64 rng(17);
    for (ff::Word p : {5, 7, 11}) {
        for (const ff::Field f : {ff::make_field(p), ff::make_field(p, 2)}) {
            for (int s = 0; s < 6; ++s) {
                const RationalOp op = random_op(rng, 3);
                const FieldElement u = ff::random_element(f, rng), v = ff::random_element(f, rng);
                REQUIRE(charp::operator_matrix(op, u, v) == direct_matrix(op, u, v));
            }
        }
    }
}

TEST_CASE("p-determinant examples") {
    const ff::Field f7 = ff::make_field(7);
    CHECK(charp::p_determinant(weyl::parse_operator("d"), f7).is_zero());
    for (int lambda = 0; lambda < 7; ++lambda) {
        const RationalOp op = weyl::parse_operator("x*d") - RationalOp::constant(Rational(lambda));
        CHECK(charp::p_determinant(op, f7).is_zero());
    }
    // lambda = t in F_9: -(t^3 - t), confirmed by elimination.
    const ff::Field f9 = ff::make_field(3, 2, std::vector<ff::Word>{1, 0, 1});
    const FieldElement t = FieldElement::generator(f9);
    weyl::FieldOp op = weyl::reduce(weyl::parse_operator("x*d"), f9);
    op -= weyl::FieldOp::constant(t);
    const FieldElement expected = -(t.pow(3) - t);
    CHECK_FALSE(expected.is_zero());
    const FieldElement zero = FieldElement::zero(f9);
    CHECK(linalg::det_dense(charp::operator_matrix(op, zero, zero)) == expected);
    CHECK(charp::p_determinant(op, f9) == expected);
}

TEST_CASE("p-determinant equals elimination, including degenerate bands") {
    std::mt19937_64 rng(23);
    const std::vector<const char*> degenerate{"d^2 + x*d", "x^2*d^2 + 1", "d^3 - x", "x*d^2 + d + 1"};
    for (ff::Word p : {5, 7, 11, 13, 29}) {
        const ff::Field f = ff::make_field(p);
        const FieldElement zero = FieldElement::zero(f);
        for (int s = 0; s < 8; ++s) {
            const RationalOp op = random_op(rng, 4);
            const FieldElement oracle = linalg::det_dense(charp::operator_matrix(op, zero, zero));
            REQUIRE(charp::p_determinant(op, f) == oracle);
        }
        for (const char* text : degenerate) {
            const RationalOp op = weyl::parse_operator(text);
            const FieldElement oracle = linalg::det_dense(charp::operator_matrix(op, zero, zero));
            REQUIRE(charp::p_determinant(op, f) == oracle);
            // dense_limit = 0 forces the interpolation along lines.
            REQUIRE(charp::p_determinant(op, f, 0) == oracle);
        }
    }
}

TEST_CASE("support curve examples") {
    const ff::Field f5 = ff::make_field(5);
    const auto dcurve = charp::support_curve(weyl::parse_operator("d"), f5);
    CHECK(dcurve.poly == curve("Y", f5));
    CHECK(dcurve.degree_bound == 1);

    for (ff::Word p : {5, 7}) {
        const ff::Field f = ff::make_field(p);
        const RationalOp op = weyl::parse_operator("d - x^2");
        const auto c = charp::support_curve(op, f);
        CHECK(c.poly == curve("Y - X^2", f));
        for (ff::Word u = 0; u < p; ++u)
            for (ff::Word v = 0; v < p; ++v) {
                const FieldElement fu(f, static_cast<std::int64_t>(u)), fv(f, static_cast<std::int64_t>(v));
                REQUIRE(c.poly.evaluate({fu, fv}) == linalg::det_dense(charp::operator_matrix(op, fu, fv)));
            }
    }

    for (ff::Word p : {3, 5, 7}) {
        const ff::Field f = ff::make_field(p, 2);
        const FieldElement t = FieldElement::generator(f);
        weyl::FieldOp op = weyl::reduce(weyl::parse_operator("x*d"), f);
        op -= weyl::FieldOp::constant(t);
        const auto c = charp::support_curve(op, f);
        curves::BivarPoly expected = curves::BivarPoly::variable(f, 0) * curves::BivarPoly::variable(f, 1);
        expected.add_term({0, 0}, -(t.frobenius() - t));
        CHECK(c.poly == expected);
    }

    expect_error(ErrorCode::PrimeTooSmall, [&] { charp::support_curve(weyl::parse_operator("d^5"), f5); });
    expect_error(ErrorCode::ZeroOperator, [&] { charp::support_curve(RationalOp(), f5); });
}

TEST_CASE("normalized curve has unit graded-lex leading coefficient") {
    const ff::Field f = ff::make_field(11);
    const auto c = charp::support_curve(weyl::parse_operator("3*d - 2*x^2"), f);
    CHECK(c.poly == curve("3*Y - 2*X^2", f));
    CHECK(c.normalized() == c.poly * FieldElement(f, -2).inverse());
    const auto lead = c.normalized().coefficient({2, 0});
    CHECK(lead.is_one());
}

TEST_CASE("support curves on the grid, degree bound, constant term and extension samples") {
    std::mt19937_64 rng(5);
    for (ff::Word p : {7, 11, 13}) {
        const ff::Field f = ff::make_field(p);
        for (int s = 0; s < 6; ++s) {
            const RationalOp op = random_op(rng, 1 + static_cast<int>(rng() % 4));
            const auto c = charp::support_curve(op, f);
            REQUIRE(c.poly.total_degree() <= op.order_bound());
            REQUIRE(c.poly.coefficient({0, 0}) == charp::p_determinant(op, f));
            for (int k = 0; k < 5; ++k) {
                const FieldElement u = ff::random_element(f, rng), v = ff::random_element(f, rng);
                REQUIRE(c.poly.evaluate({u, v}) == linalg::det_dense(charp::operator_matrix(op, u, v)));
            }
            REQUIRE(charp::extension_consistency(weyl::reduce(op, f), c, 20, rng()).passed());
        }
    }
}

TEST_CASE("exponential family curves") {
    std::mt19937_64 rng(31);
    for (ff::Word p : {7, 11, 31}) {
        const ff::Field f = ff::make_field(p);
        for (int s = 0; s < 10; ++s) {
            std::uniform_int_distribution<int> coeff(-9, 9), deg(0, 5);
            RationalOp op = RationalOp::monomial({0, 1}, Rational(1));
            curves::BivarPoly expected = curves::BivarPoly::variable(f, 1);
            const int d = deg(rng);
            for (int k = 0; k <= d; ++k) {
                const int c = coeff(rng);
                op.add_term({k, 0}, Rational(-c));
                expected.add_term({k, 0}, FieldElement(f, -c));
            }
            REQUIRE(charp::support_curve(op, f).poly == expected);
        }
    }
}

TEST_CASE("shifting x shifts the curve") {
    std::mt19937_64 rng(41);
    const ff::Field f = ff::make_field(13);
    for (int s = 0; s < 8; ++s) {
        const RationalOp op = random_op(rng, 3);
        const long c = static_cast<long>(rng() % 13);
        const RationalOp xc = RationalOp::monomial({1, 0}, Rational(1)) + RationalOp::constant(Rational(c));
        RationalOp shifted;
        for (const auto& [e, a] : op.terms())
            shifted += xc.pow(static_cast<std::uint64_t>(e[0]), Rational(1)) *
                       RationalOp::monomial({0, e[1]}, a);
        const curves::BivarPoly d = charp::support_curve(op, f).poly;
        curves::BivarPoly moved(f);
        const curves::BivarPoly xshift =
            curves::BivarPoly::variable(f, 0) + curves::BivarPoly::constant(FieldElement(f, c));
        for (const auto& [e, a] : d.terms())
            moved += xshift.pow(static_cast<std::uint64_t>(e[0])) *
                     curves::BivarPoly::variable(f, 1).pow(static_cast<std::uint64_t>(e[1])) * a;
        REQUIRE(charp::support_curve(shifted, f).poly == moved);
    }
}

TEST_CASE("freshman identity") {
    const ff::Field f5 = ff::make_field(5);
    CHECK(charp::freshman_identity_check({}, f5));
    CHECK(charp::freshman_identity_check({FieldElement::zero(f5)}, f5));
    CHECK(charp::freshman_identity_check_derivative(
        {FieldElement::zero(f5), FieldElement::zero(f5), FieldElement::one(f5)}, f5));

    std::mt19937_64 rng(2);
    for (ff::Word p = 3; p <= 31; ++p) {
        if (!ff::is_prime(p)) continue;
        const ff::Field f = ff::make_field(p);
        const int max_deg = static_cast<int>(std::min<ff::Word>(4, p - 2));
        for (int s = 0; s < 5; ++s) {
            std::vector<FieldElement> gp;
            for (int k = 0; k <= max_deg; ++k) gp.push_back(ff::random_element(f, rng));
            REQUIRE(charp::freshman_identity_check_derivative(gp, f));
            std::vector<FieldElement> g;
            for (int k = 0; k <= std::min<int>(6, static_cast<int>(p)); ++k) g.push_back(ff::random_element(f, rng));
            REQUIRE(charp::freshman_identity_check(g, f));
        }
    }
    // x^{p-1} is not a derivative, and the identity fails for it.
    std::vector<FieldElement> top(5, FieldElement::zero(f5));
    top[4] = FieldElement::one(f5);
    CHECK_FALSE(charp::freshman_identity_check_derivative(top, f5));
}

TEST_CASE("Legendre operator: Y^2 divides D at p = 5, 7 by direct evaluation") {
    const RationalOp op = weyl::parse_operator("x*(1-x)*d^2 + (1-2*x)*d - 1/4");
    for (ff::Word p : {5, 7}) {
        const ff::Field f = ff::make_field(p);
        // D(u, v) has degree <= 2 in v; its v^0 and v^1 coefficients from three nodes.
        for (ff::Word u = 0; u < p; ++u) {
            const FieldElement fu(f, static_cast<std::int64_t>(u));
            std::array<FieldElement, 3> d;
            for (int v = 0; v < 3; ++v)
                d[static_cast<std::size_t>(v)] =
                    linalg::det_dense(charp::operator_matrix(op, fu, FieldElement(f, v)));
            CHECK(d[0].is_zero());
            CHECK((FieldElement(f, -3) * d[0] + FieldElement(f, 4) * d[1] - d[2]).is_zero());
        }
        const auto c = charp::support_curve(op, f);
        for (const auto& [e, a] : c.poly.terms()) CHECK(e[1] >= 2);
    }
}
