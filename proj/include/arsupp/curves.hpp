#pragma once

// Planar curves H(X, Y) = 0 over finite fields and their computable
// invariants: Newton polygon, line-germ multiplicities, squarefree part and
// perfect p-power structure.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "arsupp/sparse_poly.hpp"
#include "arsupp/weyl.hpp"

namespace arsupp::curves {

using Point = std::array<int, 2>;

/// Strict vertices of the convex hull of the support, sorted lexicographically.
std::vector<Point> newton_polygon(const BivarPoly& h);
/// Convex hull vertices of a point set, sorted lexicographically.
std::vector<Point> convex_hull(std::vector<Point> points);

int germ_multiplicity_y0(const BivarPoly& h);

/// H / gcd(H, dH/dX, dH/dY). Throws IsPPower when both partials vanish.
BivarPoly squarefree_part(const BivarPoly& h);

/// gcd in F[X, Y], normalized so the leading coefficient (highest Y power,
/// then highest X power) is one.
BivarPoly gcd(const BivarPoly& a, const BivarPoly& b);
/// Exact quotient a / b; nullopt when b does not divide a.
std::optional<BivarPoly> divide_exact(const BivarPoly& a, const BivarPoly& b);

/// Root E with E^{p^m} = H when every exponent of H is divisible by p^m.
template <std::size_t NV>
std::optional<SparsePoly<NV>> p_power_divisibility(const SparsePoly<NV>& h, int m) {
    if (h.is_zero()) fail(ErrorCode::ZeroPolynomial, "p-power test of the zero polynomial");
    if (m < 1) fail(ErrorCode::InvalidArgument, "p-power exponent m must be >= 1");
    const Field field = h.field();
    std::int64_t q = 1;
    for (int k = 0; k < m; ++k) {
        q *= static_cast<std::int64_t>(field->p());
        if (q > (std::int64_t{1} << 40)) return std::nullopt;
    }
    SparsePoly<NV> root(field);
    for (const auto& [e, c] : h.terms()) {
        typename SparsePoly<NV>::Exponent r;
        for (std::size_t k = 0; k < NV; ++k) {
            if (e[k] % q != 0) return std::nullopt;
            r[k] = static_cast<int>(e[k] / q);
        }
        FieldElement cr = c;
        for (int k = 0; k < m; ++k) cr = cr.frobenius_inverse();
        root.add_term(r, cr);
    }
    if (root.pow(static_cast<std::uint64_t>(q)) != h)
        fail(ErrorCode::ConsistencyFailure, "p-th root does not re-expand to the input");
    return root;
}

/// H(a X + b Y, c X + d Y).
BivarPoly substitute(const BivarPoly& h, const weyl::SL2Mat& g);

/// The line-germ images reported by curve_report.
std::vector<weyl::SL2Mat> default_sl2_list();

struct CurveReport {
    int degree = 0;
    std::vector<Point> newton_vertices;
    int y0_mult = 0;
    std::vector<std::pair<weyl::SL2Mat, int>> sl2_mults;
    bool squarefree = false;
    /// Largest m >= 1 with H = E^{p^m}, when one exists.
    std::optional<std::pair<int, BivarPoly>> p_power;

    int mult_after(const weyl::SL2Mat& g) const;
};

CurveReport curve_report(const BivarPoly& h, const std::vector<weyl::SL2Mat>& sl2 = default_sl2_list());

// --- serialization ---------------------------------------------------------

/// Text form with the given variable names. Terms are ordered by descending
/// exponent of the variables in `priority` order; prime-field coefficients use
/// signed representatives, and a leading minus sign is factored out.
template <std::size_t NV>
std::string format_poly(const SparsePoly<NV>& h, const std::array<std::string, NV>& names,
                        const std::array<std::size_t, NV>& priority);

std::string curve_text(const BivarPoly& h);
BivarPoly parse_curve_text(std::string_view text, Field field);

/// {"p":..,"e":..,["modulus":..,]"terms":[[i,j,[c0,..]],..]} in canonical order.
nlohmann::ordered_json curve_json(const BivarPoly& h);
BivarPoly curve_from_json(const nlohmann::json& j);
nlohmann::ordered_json report_json(const CurveReport& r);

/// Terms sorted for output: descending by the priority variables.
template <std::size_t NV>
std::vector<std::pair<typename SparsePoly<NV>::Exponent, FieldElement>> ordered_terms(
    const SparsePoly<NV>& h, const std::array<std::size_t, NV>& priority);

extern template std::string format_poly<2>(const SparsePoly<2>&, const std::array<std::string, 2>&,
                                           const std::array<std::size_t, 2>&);
extern template std::string format_poly<4>(const SparsePoly<4>&, const std::array<std::string, 4>&,
                                           const std::array<std::size_t, 4>&);

}  // namespace arsupp::curves
