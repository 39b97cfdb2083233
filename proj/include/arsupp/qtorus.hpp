#pragma once

// Quantum torus x1 x2 = q x2 x1 at a primitive N-th root of unity q = zeta in
// F_p, modelled by N x N clock and shift matrices: U = diag(zeta^k) and the
// cyclic shift V with V e_k = e_{k+1}, so that U V = zeta V U. The powers
// x1^N and x2^N are central, and determinants of u U, v V combinations
// depend on (u, v) only through (u^N, v^N).

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>

#include "arsupp/curves.hpp"
#include "arsupp/linalg.hpp"

namespace arsupp::qtorus {

using ff::Field;
using ff::FieldElement;
using linalg::MatrixFF;

struct RootCtx {
    Field field = nullptr;
    std::size_t order = 1;
    /// g^{(p-1)/N} for the smallest primitive root g.
    FieldElement zeta;
};

/// Throws InvalidArgument unless N >= 1 divides p - 1.
RootCtx make_root_ctx(ff::Word p, std::size_t n);

/// sum a_ij x1^i x2^j with x1 to the left; exponents range over Z.
class LaurentOp {
public:
    using Exponent = std::array<int, 2>;

    LaurentOp() = default;
    explicit LaurentOp(RootCtx rc) : rc_(std::move(rc)) {}

    static LaurentOp monomial(const RootCtx& rc, const Exponent& e, const FieldElement& c);

    const RootCtx& root_ctx() const noexcept { return rc_; }
    const std::map<Exponent, FieldElement>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    /// max |i| + |j| over the support; -1 for zero.
    int degree() const;

    void add_term(const Exponent& e, const FieldElement& c);

    LaurentOp& operator+=(const LaurentOp& rhs);
    LaurentOp& operator-=(const LaurentOp& rhs);
    LaurentOp operator-() const;
    friend LaurentOp operator+(LaurentOp a, const LaurentOp& b) { return a += b; }
    friend LaurentOp operator-(LaurentOp a, const LaurentOp& b) { return a -= b; }
    /// Uses x2^j x1^k = zeta^{-jk} x1^k x2^j.
    friend LaurentOp operator*(const LaurentOp& a, const LaurentOp& b);
    friend bool operator==(const LaurentOp& a, const LaurentOp& b) { return a.terms_ == b.terms_; }

    LaurentOp pow(std::int64_t k) const;

private:
    RootCtx rc_;
    std::map<Exponent, FieldElement> terms_;
};

/// Atoms x1, x2; negative powers are admitted for monomials.
LaurentOp parse_laurent(std::string_view text, const RootCtx& rc);

/// (U, V) with U V = zeta V U and U^N = V^N = 1.
std::pair<MatrixFF, MatrixFF> clock_shift(const RootCtx& rc);

/// sum a_ij (u U)^i (v V)^j.
MatrixFF q_matrix(const LaurentOp& op, const FieldElement& u, const FieldElement& v);
/// Throws ZeroEvaluationPoint when u or v is zero.
FieldElement q_determinant(const LaurentOp& op, const FieldElement& u, const FieldElement& v);

/// C(Z1, Z2) with C(u^N, v^N) = q_determinant(u, v). Exponents may be negative.
/// Throws InsufficientNodes when (p - 1) / N is smaller than the number of
/// exponents spanned in either variable.
curves::BivarPoly central_polynomial(const LaurentOp& op);

std::string central_text(const curves::BivarPoly& c);

/// (X1 (1 - X2))^N == X1^N (1 - X2^N) for X1 = u U, X2 = v V at `samples`
/// random nonzero (u, v).
bool quantum_freshman_check(const RootCtx& rc, int samples = 10, std::uint64_t seed = 0);

}  // namespace arsupp::qtorus
