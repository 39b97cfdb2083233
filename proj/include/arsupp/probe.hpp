#pragma once

// Support of a cyclic module over the second Weyl algebra A_2 in
// characteristic p, through the p^2 x p^2 Kronecker representation
//   X1 = X_p (x) 1, X2 = 1 (x) X_p, Y1 = Y_p (x) 1, Y2 = 1 (x) Y_p.
// det M(u, v) is a polynomial D(X1, X2, Y1, Y2) in the p-th powers of the
// shift parameters; it is recovered by interpolation on a grid of p-th powers
// inside an extension field large enough to hold the required nodes.

#include <array>
#include <optional>
#include <string>

#include "arsupp/curves.hpp"
#include "arsupp/weyl.hpp"

namespace arsupp::charp {

using Poly4 = curves::SparsePoly<4>;

struct ProbeResult {
    ff::Field field = nullptr;
    /// Variables in the order (X1, X2, Y1, Y2); x-exponents may be negative.
    Poly4 poly;
    /// Whether D is a p-th power, with its root when it is.
    bool p_power = false;
    std::optional<Poly4> root;
    /// Degree of the extension that supplied the interpolation nodes.
    int extension_degree = 1;
    /// Exponent bounds per variable used for the grid.
    std::array<int, 4> lo{};
    std::array<int, 4> hi{};
};

/// Throws PrimeTooSmall when some per-variable degree of P reaches p, and
/// GridExhausted when no supported extension has enough nodes.
ProbeResult support_multidim_probe(const weyl::RationalOp2& op, ff::Field field);

std::string probe_text(const Poly4& d);

}  // namespace arsupp::charp
