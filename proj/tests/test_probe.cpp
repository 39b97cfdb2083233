#include <doctest.h>

#include <random>

#include "arsupp/charp.hpp"
#include "arsupp/probe.hpp"

using namespace arsupp;
using charp::MatrixFF;
using charp::Poly4;
using ff::FieldElement;

namespace {

MatrixFF kron(const MatrixFF& a, const MatrixFF& b) {
    const std::size_t n = a.rows(), m = b.rows();
    MatrixFF out(a.field(), n * m, n * m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < m; ++k)
                for (std::size_t l = 0; l < m; ++l) out(i * m + k, j * m + l) = a(i, j) * b(k, l);
    return out;
}

MatrixFF lifted(const MatrixFF& m, ff::Field f) {
    MatrixFF out(f, m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = ff::lift(m(i, j), f);
    return out;
}

// det of sum a X1^i1 X2^i2 Y1^j1 Y2^j2 with shifted Kronecker generators,
// for operators without negative powers.
FieldElement kron_det(const weyl::RationalOp2& op, const std::array<FieldElement, 4>& at) {
    const ff::Field f = at[0].field();
    const auto p = static_cast<std::size_t>(f->p());
    const charp::RepPair rep = charp::rep_generators(ff::make_field(f->p()));
    const MatrixFF id = MatrixFF::identity(f, p);
    const MatrixFF x = lifted(rep.x, f), y = lifted(rep.y, f);
    const MatrixFF x1 = kron(x + MatrixFF::scalar(at[0], p), id), x2 = kron(id, x + MatrixFF::scalar(at[1], p));
    const MatrixFF y1 = kron(y + MatrixFF::scalar(at[2], p), id), y2 = kron(id, y + MatrixFF::scalar(at[3], p));
    MatrixFF m(f, p * p, p * p);
    for (const auto& [e, c] : op.terms()) {
        MatrixFF t = x1.pow(static_cast<std::uint64_t>(e[0])) * x2.pow(static_cast<std::uint64_t>(e[1])) *
                     y1.pow(static_cast<std::uint64_t>(e[2])) * y2.pow(static_cast<std::uint64_t>(e[3]));
        m += t * ff::reduce(f, c);
    }
    return linalg::det_dense(m);
}

Poly4 monomial(ff::Field f, Poly4::Exponent e) {
    Poly4 out(f);
    out.add_term(e, FieldElement::one(f));
    return out;
}

void check_against_kronecker(const weyl::RationalOp2& op, ff::Word p, std::uint64_t seed) {
    const charp::ProbeResult r = charp::support_multidim_probe(op, ff::make_field(p));
    const ff::Field ext = ff::make_field(p, 2);
    const Poly4 d = r.poly.map_coefficients(ext, [ext](const FieldElement& c) { return ff::lift(c, ext); });
    std::mt19937_64 rng(seed);
    for (int s = 0; s < 6; ++s) {
        std::array<FieldElement, 4> at, frob;
        for (std::size_t k = 0; k < 4; ++k) {
            at[k] = ff::random_element(ext, rng);
            frob[k] = at[k].frobenius();
        }
        REQUIRE(d.evaluate(frob) == kron_det(op, at));
    }
}

}  // namespace

TEST_CASE("d1 d2 gives a p-th power of Y1 Y2") {
    for (ff::Word p : {3, 5}) {
        const ff::Field f = ff::make_field(p);
        const charp::ProbeResult r = charp::support_multidim_probe(weyl::parse_operator2("d1*d2"), f);
        const int ip = static_cast<int>(p);
        CHECK(r.poly == monomial(f, {0, 0, ip, ip}));
        CHECK(r.p_power);
        REQUIRE(r.root.has_value());
        CHECK(*r.root == monomial(f, {0, 0, 1, 1}));
        CHECK(charp::probe_text(r.poly) == "Y1^" + std::to_string(p) + "*Y2^" + std::to_string(p));
    }
    check_against_kronecker(weyl::parse_operator2("d1*d2"), 3, 1);
}

TEST_CASE("Euler operators are p-th powers") {
    for (ff::Word p : {3, 5}) {
        for (const char* text : {"x1*d1 + x2*d2", "x1*d1 + x2*d2 - 1/2", "x1*d1 + x2*d2 + 3"}) {
            const charp::ProbeResult r = charp::support_multidim_probe(weyl::parse_operator2(text), ff::make_field(p));
            CHECK(r.p_power);
        }
    }
    check_against_kronecker(weyl::parse_operator2("x1*d1 + x2*d2 - 1/2"), 3, 2);
}

TEST_CASE("generic degree-2 operators are not p-th powers") {
    const weyl::RationalOp2 op = weyl::parse_operator2("2*x1^2 + x1*d2 - 3*d1*d2 + x2*d1 + d2^2 + x1 - 4*d1 + 1");
    for (ff::Word p : {3, 5}) CHECK_FALSE(charp::support_multidim_probe(op, ff::make_field(p)).p_power);
    check_against_kronecker(op, 3, 3);
}

TEST_CASE("random operators agree with the Kronecker determinant") {
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<int> exp(0, 1), coeff(-4, 4);
    for (int s = 0; s < 4; ++s) {
        weyl::RationalOp2 op;
        for (int t = 0; t < 4; ++t) op.add_term({exp(rng), exp(rng), exp(rng), exp(rng)}, Rational(coeff(rng)));
        op.add_term({0, 0, 1, 0}, Rational(1));
        check_against_kronecker(op, 3, rng());
    }
}

TEST_CASE("negative x powers factor out of the determinant") {
    // Multiplying by x1 on the left multiplies det by X1^p.
    const weyl::RationalOp2 toda = weyl::parse_operator2("d1^2 + d2^2 + x1*x2^-1 + x2*x1^-1");
    const weyl::RationalOp2 cleared = weyl::parse_operator2("x1*d1^2 + x1*d2^2 + x1^2*x2^-1 + x2");
    const ff::Field f = ff::make_field(3);
    const charp::ProbeResult a = charp::support_multidim_probe(toda, f);
    const charp::ProbeResult b = charp::support_multidim_probe(cleared, f);
    CHECK(b.poly == a.poly * monomial(f, {3, 0, 0, 0}));
    CHECK(a.lo[0] < 0);
}

TEST_CASE("probe preconditions") {
    auto expect = [](ErrorCode code, const char* text, ff::Word p, int e = 1) {
        try {
            charp::support_multidim_probe(weyl::parse_operator2(text), ff::make_field(p, e));
            FAIL("no error for " << text);
        } catch (const Error& err) {
            CHECK(err.code() == code);
        }
    };
    expect(ErrorCode::PrimeTooSmall, "d1^3", 3);
    expect(ErrorCode::ZeroOperator, "0", 3);
    expect(ErrorCode::ZeroOperator, "3*d1", 3);
    expect(ErrorCode::ExtensionFieldUnsupported, "d1", 3, 2);
}
