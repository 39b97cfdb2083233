#include "arsupp/curves.hpp"

#include <algorithm>
#include <map>

#include "arsupp/expr.hpp"

namespace arsupp::curves {

std::vector<FieldElement> interpolate_1d(std::span<const FieldElement> nodes, std::span<const FieldElement> values) {
    const std::size_t n = nodes.size();
    if (values.size() != n) fail(ErrorCode::InvalidArgument, "node/value count mismatch");
    if (n == 0) return {};
    // Newton divided differences.
    std::vector<FieldElement> c(values.begin(), values.end());
    for (std::size_t j = 1; j < n; ++j)
        for (std::size_t i = n - 1; i >= j; --i) {
            const FieldElement dx = nodes[i] - nodes[i - j];
            if (dx.is_zero()) fail(ErrorCode::InvalidArgument, "interpolation nodes must be distinct");
            c[i] = (c[i] - c[i - 1]) / dx;
        }
    // Horner expansion of the Newton form into the monomial basis.
    const Field f = nodes.front().field();
    std::vector<FieldElement> poly(n, FieldElement::zero(f));
    poly[0] = c[n - 1];
    std::size_t len = 1;
    for (std::size_t i = n - 1; i-- > 0;) {
        // poly <- poly * (X - nodes[i]) + c[i]
        for (std::size_t k = len; k > 0; --k) poly[k] = poly[k - 1] - poly[k] * nodes[i];
        poly[0] = c[i] - poly[0] * nodes[i];
        ++len;
    }
    return poly;
}

// --- geometry ----------------------------------------------------------------

std::vector<Point> convex_hull(std::vector<Point> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() <= 2) return pts;
    auto cross = [](const Point& o, const Point& a, const Point& b) {
        return static_cast<long long>(a[0] - o[0]) * (b[1] - o[1]) -
               static_cast<long long>(a[1] - o[1]) * (b[0] - o[0]);
    };
    std::vector<Point> hull(2 * pts.size());
    std::size_t k = 0;
    for (const auto& p : pts) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
        hull[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    std::sort(hull.begin(), hull.end());
    return hull;
}

std::vector<Point> newton_polygon(const BivarPoly& h) {
    if (h.is_zero()) fail(ErrorCode::ZeroPolynomial, "Newton polygon of the zero polynomial");
    std::vector<Point> pts;
    for (const auto& [e, c] : h.terms()) pts.push_back(e);
    return convex_hull(std::move(pts));
}

int germ_multiplicity_y0(const BivarPoly& h) {
    if (h.is_zero()) fail(ErrorCode::ZeroPolynomial, "germ multiplicity of the zero polynomial");
    std::vector<Point> pts;
    for (const auto& [e, c] : h.terms()) pts.push_back(e);
    return weyl::germ_multiplicity_y0(std::span<const Point>(pts));
}

// --- F[X][Y] arithmetic for gcds ---------------------------------------------

namespace {

using UPoly = std::vector<FieldElement>;  // in X, ascending, trimmed
using YPoly = std::vector<UPoly>;         // in Y with UPoly coefficients, trimmed

void u_trim(UPoly& a) {
    while (!a.empty() && a.back().is_zero()) a.pop_back();
}

UPoly u_sub(const UPoly& a, const UPoly& b, Field f) {
    UPoly r(std::max(a.size(), b.size()), FieldElement::zero(f));
    for (std::size_t k = 0; k < a.size(); ++k) r[k] += a[k];
    for (std::size_t k = 0; k < b.size(); ++k) r[k] -= b[k];
    u_trim(r);
    return r;
}

UPoly u_mul(const UPoly& a, const UPoly& b, Field f) {
    if (a.empty() || b.empty()) return {};
    UPoly r(a.size() + b.size() - 1, FieldElement::zero(f));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    u_trim(r);
    return r;
}

// Returns (quotient, remainder).
std::pair<UPoly, UPoly> u_divmod(UPoly a, const UPoly& b, Field f) {
    if (b.empty()) fail(ErrorCode::DivisionByZero, "polynomial division by zero");
    u_trim(a);
    if (a.size() < b.size()) return {{}, a};
    UPoly q(a.size() - b.size() + 1, FieldElement::zero(f));
    const FieldElement inv = b.back().inverse();
    while (!a.empty() && a.size() >= b.size()) {
        const std::size_t shift = a.size() - b.size();
        const FieldElement c = a.back() * inv;
        q[shift] = c;
        for (std::size_t k = 0; k < b.size(); ++k) a[shift + k] -= c * b[k];
        a.pop_back();
        u_trim(a);
    }
    u_trim(q);
    return {q, a};
}

UPoly u_monic(UPoly a) {
    if (a.empty()) return a;
    const FieldElement inv = a.back().inverse();
    for (auto& c : a) c *= inv;
    return a;
}

UPoly u_gcd(UPoly a, UPoly b, Field f) {
    u_trim(a);
    u_trim(b);
    while (!b.empty()) {
        UPoly r = u_divmod(a, b, f).second;
        a = std::move(b);
        b = std::move(r);
    }
    return u_monic(a);
}

void y_trim(YPoly& a) {
    while (!a.empty() && a.back().empty()) a.pop_back();
}

YPoly to_ypoly(const BivarPoly& h) {
    YPoly out;
    for (const auto& [e, c] : h.terms()) {
        if (e[0] < 0 || e[1] < 0) fail(ErrorCode::InvalidArgument, "gcd requires nonnegative exponents");
        if (out.size() <= static_cast<std::size_t>(e[1])) out.resize(e[1] + 1);
        UPoly& u = out[e[1]];
        if (u.size() <= static_cast<std::size_t>(e[0])) u.resize(e[0] + 1, FieldElement::zero(h.field()));
        u[e[0]] = c;
    }
    for (auto& u : out) u_trim(u);
    y_trim(out);
    return out;
}

BivarPoly from_ypoly(const YPoly& a, Field f) {
    BivarPoly h(f);
    for (std::size_t j = 0; j < a.size(); ++j)
        for (std::size_t i = 0; i < a[j].size(); ++i)
            h.add_term({static_cast<int>(i), static_cast<int>(j)}, a[j][i]);
    return h;
}

UPoly content(const YPoly& a, Field f) {
    UPoly g;
    for (const auto& u : a) {
        g = u_gcd(g, u, f);
        if (g.size() == 1) break;
    }
    return g;
}

YPoly divide_by_content(const YPoly& a, const UPoly& c, Field f) {
    YPoly r(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) r[j] = u_divmod(a[j], c, f).first;
    return r;
}

YPoly primitive_part(const YPoly& a, Field f) {
    if (a.empty()) return a;
    return divide_by_content(a, content(a, f), f);
}

// lc(b) * a - lead(a) * Y^k * b, repeated until deg_Y < deg_Y b.
YPoly pseudo_remainder(YPoly a, const YPoly& b, Field f) {
    const UPoly& lb = b.back();
    while (!a.empty() && a.size() >= b.size()) {
        const std::size_t shift = a.size() - b.size();
        const UPoly la = a.back();
        for (auto& u : a) u = u_mul(u, lb, f);
        for (std::size_t k = 0; k < b.size(); ++k) a[shift + k] = u_sub(a[shift + k], u_mul(la, b[k], f), f);
        y_trim(a);
    }
    return a;
}

YPoly y_gcd(const YPoly& a, const YPoly& b, Field f) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    const UPoly cont = u_gcd(content(a, f), content(b, f), f);
    YPoly x = primitive_part(a, f);
    YPoly y = primitive_part(b, f);
    if (x.size() < y.size()) std::swap(x, y);
    while (!y.empty()) {
        YPoly r = pseudo_remainder(x, y, f);
        x = std::move(y);
        y = primitive_part(r, f);
    }
    // x is the primitive gcd when it involves Y; otherwise the primitive parts are coprime.
    YPoly g;
    if (x.size() > 1) {
        g = primitive_part(x, f);
        for (auto& u : g) u = u_mul(u, cont, f);
    } else {
        g = {cont};
    }
    y_trim(g);
    return g;
}

BivarPoly normalize_lead(BivarPoly h) {
    if (h.is_zero()) return h;
    // Leading term: highest Y power, then highest X power.
    auto lead = h.terms().begin();
    for (auto it = h.terms().begin(); it != h.terms().end(); ++it) {
        const auto& e = it->first;
        if (e[1] > lead->first[1] || (e[1] == lead->first[1] && e[0] > lead->first[0])) lead = it;
    }
    return h * lead->second.inverse();
}

}  // namespace

BivarPoly gcd(const BivarPoly& a, const BivarPoly& b) {
    const Field f = a.field() ? a.field() : b.field();
    if (a.is_zero()) return normalize_lead(b);
    if (b.is_zero()) return normalize_lead(a);
    return normalize_lead(from_ypoly(y_gcd(to_ypoly(a), to_ypoly(b), f), f));
}

std::optional<BivarPoly> divide_exact(const BivarPoly& a, const BivarPoly& b) {
    if (b.is_zero()) fail(ErrorCode::DivisionByZero, "division by the zero polynomial");
    const Field f = b.field();
    YPoly r = to_ypoly(a);
    const YPoly d = to_ypoly(b);
    YPoly q(r.size() >= d.size() ? r.size() - d.size() + 1 : 0);
    while (!r.empty() && r.size() >= d.size()) {
        const std::size_t shift = r.size() - d.size();
        auto [qc, rem] = u_divmod(r.back(), d.back(), f);
        if (!rem.empty()) return std::nullopt;
        q[shift] = qc;
        for (std::size_t k = 0; k < d.size(); ++k) r[shift + k] = u_sub(r[shift + k], u_mul(qc, d[k], f), f);
        y_trim(r);
    }
    if (!r.empty()) return std::nullopt;
    y_trim(q);
    return from_ypoly(q, f);
}

BivarPoly squarefree_part(const BivarPoly& h) {
    if (h.is_zero()) fail(ErrorCode::ZeroPolynomial, "squarefree part of the zero polynomial");
    const BivarPoly hx = h.partial(0);
    const BivarPoly hy = h.partial(1);
    if (hx.is_zero() && hy.is_zero())
        fail(ErrorCode::IsPPower, "both partial derivatives vanish; H is a p-th power");
    const BivarPoly g = gcd(gcd(h, hx), hy);
    auto q = divide_exact(h, g);
    if (!q) fail(ErrorCode::ConsistencyFailure, "gcd does not divide its argument");
    return *q;
}

BivarPoly substitute(const BivarPoly& h, const weyl::SL2Mat& g) {
    const Field f = h.field();
    BivarPoly l1(f), l2(f);
    l1.add_term({1, 0}, FieldElement(f, g.a));
    l1.add_term({0, 1}, FieldElement(f, g.b));
    l2.add_term({1, 0}, FieldElement(f, g.c));
    l2.add_term({0, 1}, FieldElement(f, g.d));
    std::map<int, BivarPoly> p1, p2;
    auto power = [](std::map<int, BivarPoly>& cache, const BivarPoly& base, int k) -> const BivarPoly& {
        auto it = cache.find(k);
        if (it != cache.end()) return it->second;
        return cache.emplace(k, base.pow(static_cast<std::uint64_t>(k))).first->second;
    };
    BivarPoly out(f);
    for (const auto& [e, c] : h.terms()) {
        if (e[0] < 0 || e[1] < 0) fail(ErrorCode::InvalidArgument, "substitution requires nonnegative exponents");
        out += power(p1, l1, e[0]) * power(p2, l2, e[1]) * c;
    }
    return out;
}

std::vector<weyl::SL2Mat> default_sl2_list() {
    return {weyl::SL2Mat::identity(), weyl::SL2Mat::fourier(), weyl::SL2Mat::shear()};
}

int CurveReport::mult_after(const weyl::SL2Mat& g) const {
    for (const auto& [m, v] : sl2_mults)
        if (m == g) return v;
    fail(ErrorCode::InvalidArgument, "matrix " + g.label() + " not in report");
}

CurveReport curve_report(const BivarPoly& h, const std::vector<weyl::SL2Mat>& sl2) {
    if (h.is_zero()) fail(ErrorCode::ZeroPolynomial, "report for the zero polynomial");
    CurveReport r;
    r.degree = h.total_degree();
    r.newton_vertices = newton_polygon(h);
    r.y0_mult = germ_multiplicity_y0(h);
    for (const auto& g : sl2) r.sl2_mults.emplace_back(g, germ_multiplicity_y0(substitute(h, g)));

    const BivarPoly hx = h.partial(0), hy = h.partial(1);
    if (r.degree == 0) {
        r.squarefree = true;
    } else if (hx.is_zero() && hy.is_zero()) {
        r.squarefree = false;
    } else {
        r.squarefree = gcd(gcd(h, hx), hy).total_degree() == 0;
    }

    if (r.degree > 0) {
        for (int m = 1;; ++m) {
            auto root = p_power_divisibility(h, m);
            if (!root) break;
            r.p_power = std::make_pair(m, *root);
        }
    }
    return r;
}

// --- serialization -----------------------------------------------------------

template <std::size_t NV>
std::vector<std::pair<typename SparsePoly<NV>::Exponent, FieldElement>> ordered_terms(
    const SparsePoly<NV>& h, const std::array<std::size_t, NV>& priority) {
    std::vector<std::pair<typename SparsePoly<NV>::Exponent, FieldElement>> terms(h.terms().begin(),
                                                                                 h.terms().end());
    std::sort(terms.begin(), terms.end(), [&](const auto& l, const auto& r) {
        for (std::size_t k : priority)
            if (l.first[k] != r.first[k]) return l.first[k] > r.first[k];
        return false;
    });
    return terms;
}

template <std::size_t NV>
std::string format_poly(const SparsePoly<NV>& h, const std::array<std::string, NV>& names,
                        const std::array<std::size_t, NV>& priority) {
    if (h.is_zero()) return "0";
    auto terms = ordered_terms(h, priority);
    const bool prime = h.field()->is_prime_field();

    bool negate = prime && terms.front().second.symmetric_value() < 0;
    const bool wrap = negate && terms.size() > 1;
    std::string out;
    for (std::size_t t = 0; t < terms.size(); ++t) {
        const auto& [e, c0] = terms[t];
        const FieldElement c = negate ? -c0 : c0;
        std::string mono;
        for (std::size_t k = 0; k < NV; ++k) {
            if (e[k] == 0) continue;
            if (!mono.empty()) mono += '*';
            mono += names[k];
            if (e[k] != 1) mono += '^' + std::to_string(e[k]);
        }
        bool minus = false;
        std::string mag;
        if (prime) {
            const auto v = c.symmetric_value();
            minus = v < 0;
            mag = std::to_string(minus ? -v : v);
        } else {
            mag = c.to_string();
        }
        if (t == 0) {
            if (minus) out += '-';
        } else {
            out += minus ? " - " : " + ";
        }
        if (mono.empty()) {
            out += mag;
        } else if (mag == "1") {
            out += mono;
        } else {
            out += mag + '*' + mono;
        }
    }
    if (wrap) return "-(" + out + ")";
    if (negate) return "-" + out;
    return out;
}

template std::string format_poly<2>(const SparsePoly<2>&, const std::array<std::string, 2>&,
                                    const std::array<std::size_t, 2>&);
template std::string format_poly<4>(const SparsePoly<4>&, const std::array<std::string, 4>&,
                                    const std::array<std::size_t, 4>&);
template std::vector<std::pair<SparsePoly<2>::Exponent, FieldElement>> ordered_terms<2>(
    const SparsePoly<2>&, const std::array<std::size_t, 2>&);
template std::vector<std::pair<SparsePoly<4>::Exponent, FieldElement>> ordered_terms<4>(
    const SparsePoly<4>&, const std::array<std::size_t, 4>&);

namespace {
constexpr std::array<std::size_t, 2> kCurvePriority{1, 0};  // Y before X
}

std::string curve_text(const BivarPoly& h) { return format_poly<2>(h, {"X", "Y"}, kCurvePriority); }

namespace {

struct CurveAlgebra {
    Field field;
    BivarPoly number(const Rational& q) const { return BivarPoly::constant(ff::reduce(field, q)); }
    BivarPoly symbol(const std::string& name, std::size_t pos) const {
        if (name == "X") return BivarPoly::variable(field, 0);
        if (name == "Y") return BivarPoly::variable(field, 1);
        throw SyntaxError(pos, "unknown symbol '" + name + "'");
    }
    BivarPoly add(const BivarPoly& a, const BivarPoly& b) const { return a + b; }
    BivarPoly sub(const BivarPoly& a, const BivarPoly& b) const { return a - b; }
    BivarPoly mul(const BivarPoly& a, const BivarPoly& b) const { return a * b; }
    BivarPoly neg(const BivarPoly& a) const { return -a; }
    BivarPoly power(const BivarPoly& a, std::int64_t k, std::size_t pos) const {
        if (k < 0) throw SyntaxError(pos, "negative exponent not allowed here");
        return a.pow(static_cast<std::uint64_t>(k));
    }
};

}  // namespace

BivarPoly parse_curve_text(std::string_view text, Field field) {
    CurveAlgebra alg{field};
    BivarPoly h = expr::evaluate(*expr::parse(text), alg);
    return BivarPoly(field) + h;
}

nlohmann::ordered_json curve_json(const BivarPoly& h) {
    nlohmann::ordered_json j;
    const Field f = h.field();
    j["p"] = f->p();
    j["e"] = f->degree();
    if (f->degree() > 1) j["modulus"] = std::vector<ff::Word>(f->modulus().begin(), f->modulus().end());
    auto terms = nlohmann::ordered_json::array();
    for (const auto& [e, c] : ordered_terms(h, kCurvePriority)) {
        terms.push_back({e[0], e[1], std::vector<ff::Word>(c.coeffs().begin(), c.coeffs().end())});
    }
    j["terms"] = std::move(terms);
    return j;
}

BivarPoly curve_from_json(const nlohmann::json& j) {
    try {
        const auto p = j.at("p").get<ff::Word>();
        const int e = j.value("e", 1);
        std::optional<std::vector<ff::Word>> modulus;
        if (j.contains("modulus")) modulus = j.at("modulus").get<std::vector<ff::Word>>();
        const Field f = ff::make_field(p, e, modulus);
        BivarPoly h(f);
        for (const auto& t : j.at("terms")) {
            const auto coeffs = t.at(2).get<std::vector<ff::Word>>();
            h.add_term({t.at(0).get<int>(), t.at(1).get<int>()}, FieldElement::from_coeffs(f, coeffs));
        }
        return h;
    } catch (const nlohmann::json::exception& ex) {
        fail(ErrorCode::SyntaxError, std::string("malformed curve JSON: ") + ex.what());
    }
}

nlohmann::ordered_json report_json(const CurveReport& r) {
    nlohmann::ordered_json j;
    j["degree"] = r.degree;
    auto verts = nlohmann::ordered_json::array();
    for (const auto& v : r.newton_vertices) verts.push_back({v[0], v[1]});
    j["newton"] = std::move(verts);
    j["y0_mult"] = r.y0_mult;
    auto sl2 = nlohmann::ordered_json::array();
    for (const auto& [g, m] : r.sl2_mults) {
        nlohmann::ordered_json e;
        e["matrix"] = {g.a, g.b, g.c, g.d};
        e["mult"] = m;
        sl2.push_back(std::move(e));
    }
    j["sl2"] = std::move(sl2);
    j["squarefree"] = r.squarefree;
    if (r.p_power) {
        nlohmann::ordered_json pp;
        pp["m"] = r.p_power->first;
        pp["root"] = curve_text(r.p_power->second);
        j["p_power"] = std::move(pp);
    } else {
        j["p_power"] = nullptr;
    }
    return j;
}

}  // namespace arsupp::curves
