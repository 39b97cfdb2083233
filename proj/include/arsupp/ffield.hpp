#pragma once

// Exact arithmetic in F_p and F_{p^e}.
//
// A FieldCtx is created once per (p, e, modulus) and interned for the life of
// the process, so a FieldElement can hold a plain pointer to it. Elements of
// F_{p^e} are coefficient vectors c_0 + c_1 t + ... + c_{e-1} t^{e-1} reduced
// modulo a monic irreducible polynomial of degree e.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "arsupp/error.hpp"

namespace arsupp {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

namespace ff {

using Word = std::uint64_t;

/// Largest supported extension degree.
inline constexpr int kMaxDegree = 4;
/// Characteristics are kept below 2^31 so products fit in 64 bits.
inline constexpr Word kMaxCharacteristic = (Word{1} << 31) - 1;

bool is_prime(Word n) noexcept;

class FieldCtx {
public:
    Word p() const noexcept { return p_; }
    int degree() const noexcept { return e_; }
    bool is_prime_field() const noexcept { return e_ == 1; }
    /// Ascending coefficients of the monic modulus (length e + 1); empty for e = 1.
    std::span<const Word> modulus() const noexcept { return modulus_; }

    std::string describe() const;

private:
    friend const FieldCtx* make_field(Word, int, std::optional<std::vector<Word>>);
    FieldCtx(Word p, int e, std::vector<Word> modulus)
        : p_(p), e_(e), modulus_(std::move(modulus)) {}

    Word p_;
    int e_;
    std::vector<Word> modulus_;
};

using Field = const FieldCtx*;

/// Returns the interned context for F_{p^e}. Without an explicit modulus the
/// first irreducible monic polynomial in lexicographic order (constant term
/// varying fastest) is used.
Field make_field(Word p, int e = 1, std::optional<std::vector<Word>> modulus = std::nullopt);

/// Irreducibility test over F_p (Ben-Or: gcd with t^{p^k} - t for k <= deg/2).
bool is_irreducible(Word p, std::span<const Word> poly);

class FieldElement {
public:
    FieldElement() = default;
    FieldElement(Field field, std::int64_t value);

    static FieldElement zero(Field field) { return FieldElement(field, 0); }
    static FieldElement one(Field field) { return FieldElement(field, 1); }
    /// The generator t of F_{p^e} over F_p (e > 1).
    static FieldElement generator(Field field);
    static FieldElement from_coeffs(Field field, std::span<const Word> coeffs);
    static FieldElement from_integer(Field field, const BigInt& value);

    Field field() const noexcept { return field_; }
    std::span<const Word> coeffs() const noexcept {
        return {c_.data(), static_cast<std::size_t>(field_ ? field_->degree() : 1)};
    }
    Word coeff(int k) const noexcept { return c_[static_cast<std::size_t>(k)]; }

    bool is_zero() const noexcept;
    bool is_one() const noexcept;
    bool in_prime_field() const noexcept;
    /// The value as an integer in [0, p); throws unless in the prime field.
    Word prime_value() const;

    FieldElement& operator+=(const FieldElement& rhs);
    FieldElement& operator-=(const FieldElement& rhs);
    FieldElement& operator*=(const FieldElement& rhs);
    FieldElement& operator/=(const FieldElement& rhs);
    FieldElement operator-() const;

    friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
    friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
    friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
    friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }
    friend FieldElement operator*(FieldElement a, std::int64_t k);
    friend FieldElement operator*(std::int64_t k, FieldElement a) { return std::move(a) * k; }

    friend bool operator==(const FieldElement& a, const FieldElement& b) noexcept;
    friend bool operator!=(const FieldElement& a, const FieldElement& b) noexcept { return !(a == b); }

    FieldElement inverse() const;
    FieldElement pow(std::uint64_t exponent) const;
    FieldElement pow(const BigInt& exponent) const;
    /// a -> a^p.
    FieldElement frobenius() const;
    /// Inverse of frobenius(): a -> a^{p^{e-1}}.
    FieldElement frobenius_inverse() const;

    /// "7" for prime fields, "[c0,c1]" otherwise.
    std::string to_string() const;
    /// Signed representative in (-p/2, p/2] for prime-field elements.
    std::int64_t symmetric_value() const;

private:
    void bind_check(const FieldElement& other) const;

    Field field_ = nullptr;
    std::array<Word, kMaxDegree> c_{};
};

std::ostream& operator<<(std::ostream& os, const FieldElement& a);

FieldElement frobenius(const FieldElement& a);
/// Image of an exact rational in the field; BadPrime when p divides the denominator.
FieldElement reduce(Field field, const Rational& value);
/// Embeds a prime-field element into an extension of the same characteristic.
FieldElement lift(const FieldElement& a, Field target);
FieldElement random_element(Field field, std::mt19937_64& rng);
FieldElement random_nonzero(Field field, std::mt19937_64& rng);

/// Smallest generator of F_p^* (prime fields only).
Word primitive_root(Word p);

}  // namespace ff
}  // namespace arsupp
