#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "arsupp/curves.hpp"

using namespace arsupp;
using curves::BivarPoly;
using curves::Point;
using ff::FieldElement;

namespace {

BivarPoly poly(const char* text, ff::Word p, int e = 1) {
    return curves::parse_curve_text(text, ff::make_field(p, e));
}

BivarPoly random_poly(ff::Field f, std::mt19937_64& rng, int max_terms, int max_exp) {
    std::uniform_int_distribution<int> exp(0, max_exp), count(1, max_terms);
    BivarPoly h(f);
    const int n = count(rng);
    for (int t = 0; t < n; ++t) h.add_term({exp(rng), exp(rng)}, ff::random_nonzero(f, rng));
    if (h.is_zero()) h.add_term({0, 0}, FieldElement::one(f));
    return h;
}

long cross(const Point& o, const Point& a, const Point& b) {
    return static_cast<long>(a[0] - o[0]) * (b[1] - o[1]) - static_cast<long>(a[1] - o[1]) * (b[0] - o[0]);
}

bool on_segment(const Point& q, const Point& a, const Point& b) {
    return cross(a, b, q) == 0 && std::min(a[0], b[0]) <= q[0] && q[0] <= std::max(a[0], b[0]) &&
           std::min(a[1], b[1]) <= q[1] && q[1] <= std::max(a[1], b[1]);
}

bool in_triangle(const Point& q, const Point& a, const Point& b, const Point& c) {
    if (cross(a, b, c) == 0) return on_segment(q, a, b) || on_segment(q, b, c) || on_segment(q, a, c);
    const long d1 = cross(a, b, q), d2 = cross(b, c, q), d3 = cross(c, a, q);
    const bool neg = d1 < 0 || d2 < 0 || d3 < 0, pos = d1 > 0 || d2 > 0 || d3 > 0;
    return !(neg && pos);
}

// A support point is a hull vertex unless some triangle (possibly
// degenerate) of other support points contains it.
std::vector<Point> brute_hull(const std::vector<Point>& pts) {
    std::vector<Point> out;
    for (std::size_t q = 0; q < pts.size(); ++q) {
        bool inside = false;
        for (std::size_t a = 0; a < pts.size() && !inside; ++a)
            for (std::size_t b = a; b < pts.size() && !inside; ++b)
                for (std::size_t c = b; c < pts.size() && !inside; ++c) {
                    if (a == q || b == q || c == q) continue;
                    inside = in_triangle(pts[q], pts[a], pts[b], pts[c]);
                }
        if (!inside) out.push_back(pts[q]);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Point> sorted(std::vector<Point> v) {
    std::sort(v.begin(), v.end());
    return v;
}

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

TEST_CASE("newton polygon examples") {
    CHECK(sorted(curves::newton_polygon(poly("X*Y - 3", 7))) == std::vector<Point>{{0, 0}, {1, 1}});
    CHECK(sorted(curves::newton_polygon(poly("Y^2 - X^3 - 1", 7))) == std::vector<Point>{{0, 0}, {0, 2}, {3, 0}});
    CHECK(sorted(curves::newton_polygon(poly("1 + X + X^2", 7))) == std::vector<Point>{{0, 0}, {2, 0}});
    expect_error(ErrorCode::ZeroPolynomial, [] { curves::newton_polygon(BivarPoly(ff::make_field(7))); });
}

TEST_CASE("newton polygon matches a brute-force hull") {
    std::mt19937_64 rng(10);
    const ff::Field f = ff::make_field(11);
    for (int s = 0; s < 300; ++s) {
        const BivarPoly h = random_poly(f, rng, 10, 6);
        std::vector<Point> pts;
        for (const auto& [e, c] : h.terms()) pts.push_back(e);
        const auto hull = curves::newton_polygon(h);
        REQUIRE(std::is_sorted(hull.begin(), hull.end()));
        REQUIRE(hull == brute_hull(pts));
    }
}

TEST_CASE("curve germ multiplicity examples") {
    CHECK(curves::germ_multiplicity_y0(poly("Y", 7)) == 1);
    CHECK(curves::germ_multiplicity_y0(poly("X*Y - 2", 7)) == 1);
    CHECK(curves::germ_multiplicity_y0(poly("Y^2 - X", 7)) == 0);
    expect_error(ErrorCode::ZeroPolynomial, [] { curves::germ_multiplicity_y0(BivarPoly(ff::make_field(7))); });
    std::mt19937_64 rng(3);
    const ff::Field f = ff::make_field(13);
    for (int s = 0; s < 50; ++s) {
        const BivarPoly h = random_poly(f, rng, 6, 5);
        CHECK(curves::germ_multiplicity_y0(h * ff::random_nonzero(f, rng)) == curves::germ_multiplicity_y0(h));
    }
}

TEST_CASE("squarefree part examples") {
    CHECK(curves::squarefree_part(poly("Y^2", 7)) == poly("Y", 7));
    const BivarPoly h = poly("(X*Y - 1)^2*Y", 7);
    const BivarPoly s = curves::squarefree_part(h);
    const BivarPoly expected = poly("(X*Y - 1)*Y", 7);
    // Equal up to a nonzero scalar.
    REQUIRE(s.size() == expected.size());
    const FieldElement ratio = s.terms().begin()->second / expected.coefficient(s.terms().begin()->first);
    CHECK(s == expected * ratio);
    expect_error(ErrorCode::IsPPower, [] { curves::squarefree_part(poly("X^7 + Y^14", 7)); });
    expect_error(ErrorCode::ZeroPolynomial, [] { curves::squarefree_part(BivarPoly(ff::make_field(7))); });
}

TEST_CASE("squarefree part divides and has coprime partials") {
    std::mt19937_64 rng(42);
    for (ff::Word p : {5, 7, 13}) {
        const ff::Field f = ff::make_field(p);
        for (int s = 0; s < 30; ++s) {
            const BivarPoly a = random_poly(f, rng, 3, 2), b = random_poly(f, rng, 3, 2);
            const BivarPoly h = a * a * b;
            if (h.partial(0).is_zero() && h.partial(1).is_zero()) continue;
            const BivarPoly sq = curves::squarefree_part(h);
            REQUIRE(curves::divide_exact(h, sq).has_value());
            const BivarPoly g = curves::gcd(curves::gcd(sq, sq.partial(0)), sq.partial(1));
            REQUIRE(g.total_degree() == 0);
        }
    }
}

TEST_CASE("gcd and exact division") {
    const BivarPoly a = poly("X*Y - 1", 11), b = poly("Y + X^2", 11), c = poly("Y - 3", 11);
    const BivarPoly g = curves::gcd(a * b, a * c);
    CHECK(curves::divide_exact(g, a).has_value());
    CHECK(curves::divide_exact(a, g).has_value());
    const auto q = curves::divide_exact(a * b, b);
    REQUIRE(q.has_value());
    CHECK(*q == a);
    CHECK_FALSE(curves::divide_exact(a, b).has_value());
}

TEST_CASE("p-power divisibility examples") {
    const auto r1 = curves::p_power_divisibility(poly("X^7*Y^7", 7), 1);
    REQUIRE(r1.has_value());
    CHECK(*r1 == poly("X*Y", 7));
    CHECK_FALSE(curves::p_power_divisibility(poly("X^7 + X", 7), 1).has_value());
    const BivarPoly e = poly("Y - X^2", 5);
    const auto r2 = curves::p_power_divisibility(e.pow(25), 2);
    REQUIRE(r2.has_value());
    CHECK(*r2 == e);
    expect_error(ErrorCode::ZeroPolynomial, [] { curves::p_power_divisibility(BivarPoly(ff::make_field(5)), 1); });
}

TEST_CASE("p-power roots re-expand over extensions") {
    std::mt19937_64 rng(6);
    const ff::Field f = ff::make_field(3, 2);
    for (int s = 0; s < 20; ++s) {
        const BivarPoly e = random_poly(f, rng, 4, 3);
        const auto root = curves::p_power_divisibility(e.pow(3), 1);
        REQUIRE(root.has_value());
        REQUIRE(root->pow(3) == e.pow(3));
        REQUIRE(*root == e);
    }
}

TEST_CASE("substitution matches evaluation") {
    std::mt19937_64 rng(12);
    const ff::Field f = ff::make_field(17);
    for (const auto& g : {weyl::SL2Mat::fourier(), weyl::SL2Mat::shear(), weyl::SL2Mat::make(2, 3, 1, 2)}) {
        const BivarPoly h = random_poly(f, rng, 6, 3);
        const BivarPoly s = curves::substitute(h, g);
        for (int k = 0; k < 10; ++k) {
            const FieldElement x = ff::random_element(f, rng), y = ff::random_element(f, rng);
            const FieldElement gx = x * static_cast<std::int64_t>(g.a) + y * static_cast<std::int64_t>(g.b);
            const FieldElement gy = x * static_cast<std::int64_t>(g.c) + y * static_cast<std::int64_t>(g.d);
            REQUIRE(s.evaluate({x, y}) == h.evaluate({gx, gy}));
        }
    }
}

TEST_CASE("curve report examples") {
    const auto y = curves::curve_report(poly("Y", 7));
    CHECK(y.degree == 1);
    CHECK(y.y0_mult == 1);
    CHECK(y.mult_after(weyl::SL2Mat::fourier()) == 0);
    CHECK(y.squarefree);
    CHECK_FALSE(y.p_power.has_value());

    const auto xy = curves::curve_report(poly("X*Y", 7));
    CHECK(xy.y0_mult == 1);
    CHECK(xy.mult_after(weyl::SL2Mat::fourier()) == 1);

    const auto c = curves::curve_report(poly("3", 7));
    CHECK(c.degree == 0);
    CHECK(c.y0_mult == 0);
    for (const auto& [g, m] : c.sl2_mults) CHECK(m == 0);

    const auto pw = curves::curve_report(poly("(Y - X^2)^25", 5));
    REQUIRE(pw.p_power.has_value());
    CHECK(pw.p_power->first == 2);
    CHECK(pw.p_power->second == poly("Y - X^2", 5));
    CHECK_FALSE(pw.squarefree);
}

TEST_CASE("text and json forms round-trip") {
    CHECK(curves::curve_text(poly("Y - X^2", 11)) == "Y - X^2");
    CHECK(curves::curve_text(poly("X*Y", 11)) == "X*Y");
    CHECK(curves::curve_text(poly("X^2 - Y", 11)) == "-(Y - X^2)");
    CHECK(curves::curve_text(poly("-Y", 11)) == "-Y");
    CHECK(curves::curve_text(poly("Y^2 + 3*X*Y - 2", 11)) == "Y^2 + 3*X*Y - 2");
    CHECK(curves::curve_json(poly("Y", 5)).dump() == R"({"p":5,"e":1,"terms":[[0,1,[1]]]})");

    std::mt19937_64 rng(1);
    for (const ff::Field f : {ff::make_field(13), ff::make_field(5, 2)}) {
        for (int s = 0; s < 30; ++s) {
            const BivarPoly h = random_poly(f, rng, 6, 4);
            REQUIRE(curves::curve_from_json(nlohmann::json::parse(curves::curve_json(h).dump())) == h);
            if (f->is_prime_field()) REQUIRE(curves::parse_curve_text(curves::curve_text(h), f) == h);
        }
    }
    expect_error(ErrorCode::SyntaxError, [] { curves::curve_from_json(nlohmann::json::parse(R"({"p":5})")); });
    expect_error(ErrorCode::SyntaxError, [] { poly("X + Z", 5); });
}
