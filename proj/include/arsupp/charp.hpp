#pragma once

// The truncated-polynomial representation of the Weyl algebra in
// characteristic p and the determinants built on it.
//
// Basis e_c <-> x^c of F_p[x]/(x^p): X e_c = e_{c+1}, Y e_c = c e_{c-1}. An
// operator P becomes the p x p matrix sum a_ij (X + u)^i (Y + v)^j, which is
// banded with bandwidth N = max(i + j). Its determinant depends on (u, v) only
// through (u^p, v^p) and is a polynomial D of total degree <= N there.

#include <cstdint>
#include <vector>

#include "arsupp/curves.hpp"
#include "arsupp/linalg.hpp"
#include "arsupp/weyl.hpp"

namespace arsupp::charp {

using ff::Field;
using ff::FieldElement;
using linalg::BandedMatrixFF;
using linalg::MatrixFF;

struct RepPair {
    Field field = nullptr;
    MatrixFF x;  // ones on the subdiagonal
    MatrixFF y;  // 1, 2, ..., p - 1 on the superdiagonal
};

/// Throws ExtensionFieldUnsupported for e > 1.
RepPair rep_generators(Field field);

/// Normal-ordered coefficients of P(x + u, d + v).
weyl::FieldOp shift_operator(const weyl::FieldOp& op, const FieldElement& u, const FieldElement& v);

/// sum a_ij (X_p + u)^i (Y_p + v)^j over the field of u and v. Prime-field
/// coefficients of `op` are lifted when u, v live in an extension.
BandedMatrixFF operator_matrix_banded(const weyl::FieldOp& op, const FieldElement& u, const FieldElement& v);
MatrixFF operator_matrix(const weyl::FieldOp& op, const FieldElement& u, const FieldElement& v);
MatrixFF operator_matrix(const weyl::RationalOp& op, const FieldElement& u, const FieldElement& v);

/// Largest matrix size for which a degenerate band falls back to elimination.
inline constexpr std::size_t kDefaultDenseLimit = 400;

/// det of the operator matrix at (u, v) = (0, 0). Uses the transfer-matrix
/// determinant; when the band pivots vanish it falls back to elimination for
/// small p and otherwise interpolates D along a line through the origin.
FieldElement p_determinant(const weyl::FieldOp& op, Field field, std::size_t dense_limit = kDefaultDenseLimit);
FieldElement p_determinant(const weyl::RationalOp& op, Field field, std::size_t dense_limit = kDefaultDenseLimit);

struct SupportCurve {
    Field field = nullptr;
    /// The exact determinant polynomial in (X, Y) = (u^p, v^p).
    curves::BivarPoly poly;
    int degree_bound = 0;

    /// Scaled so the graded-lex leading coefficient is one.
    curves::BivarPoly normalized() const;
};

struct CurveOptions {
    std::uint64_t seed = 0;
    /// Re-draw the interpolation grid when a node hits a degenerate band.
    bool allow_shift = true;
    int max_retries = 8;
    std::size_t dense_limit = kDefaultDenseLimit;
};

/// Interpolates D on a grid of (N + 1)^2 points of the prime field. The
/// coefficient field may be an extension. Throws PrimeTooSmall when p <= N.
SupportCurve support_curve(const weyl::FieldOp& op, Field field, const CurveOptions& options = {});
SupportCurve support_curve(const weyl::RationalOp& op, Field field, const CurveOptions& options = {});

struct ExtensionCheck {
    int samples = 0;
    int failures = 0;
    bool passed() const noexcept { return failures == 0; }
};

/// Compares D(u^p, v^p) with det M(u, v) at random points of F_{p^degree}.
/// The operator must have prime-field coefficients.
ExtensionCheck extension_consistency(const weyl::FieldOp& op, const SupportCurve& curve, int samples,
                                     std::uint64_t seed, int degree = 2);

/// (Y_p + G'(X_p))^p == G'(X_p)^p for the polynomial G (ascending coefficients).
bool freshman_identity_check(const std::vector<FieldElement>& g, Field field);
/// The same identity with G' supplied directly. Fails when G' has an x^{p-1}
/// term, which no polynomial G can produce.
bool freshman_identity_check_derivative(const std::vector<FieldElement>& g_prime, Field field);

/// Y_p^k and X_p-polynomial helpers shared with the probe.
MatrixFF poly_of_matrix(const std::vector<FieldElement>& coeffs, const MatrixFF& m);

}  // namespace arsupp::charp
