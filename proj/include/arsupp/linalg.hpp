#pragma once

#include <cstddef>
#include <vector>

#include "arsupp/ffield.hpp"

namespace arsupp::linalg {

using ff::Field;
using ff::FieldElement;

/// Dense row-major matrix over a finite field. All entries share one field.
class MatrixFF {
public:
    MatrixFF() = default;
    MatrixFF(Field field, std::size_t rows, std::size_t cols);

    static MatrixFF identity(Field field, std::size_t n);
    static MatrixFF scalar(const FieldElement& value, std::size_t n);

    Field field() const noexcept { return field_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    FieldElement& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const FieldElement& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    MatrixFF& operator+=(const MatrixFF& rhs);
    MatrixFF& operator-=(const MatrixFF& rhs);
    MatrixFF& operator*=(const FieldElement& s);
    friend MatrixFF operator+(MatrixFF a, const MatrixFF& b) { return a += b; }
    friend MatrixFF operator-(MatrixFF a, const MatrixFF& b) { return a -= b; }
    friend MatrixFF operator*(MatrixFF a, const FieldElement& s) { return a *= s; }
    friend MatrixFF operator*(const FieldElement& s, MatrixFF a) { return a *= s; }
    friend MatrixFF operator*(const MatrixFF& a, const MatrixFF& b);
    friend bool operator==(const MatrixFF& a, const MatrixFF& b);

    MatrixFF pow(std::uint64_t k) const;
    MatrixFF transposed() const;
    FieldElement trace() const;
    bool is_zero() const;

private:
    Field field_ = nullptr;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<FieldElement> data_;
};

/// Exact determinant by Gaussian elimination with nonzero pivot search.
FieldElement det_dense(const MatrixFF& m);

/// Square L x L matrix with M(i, j) = 0 whenever |i - j| > N.
class BandedMatrixFF {
public:
    BandedMatrixFF(Field field, std::size_t size, std::size_t bandwidth);

    Field field() const noexcept { return field_; }
    std::size_t size() const noexcept { return size_; }
    std::size_t bandwidth() const noexcept { return bandwidth_; }

    bool in_band(std::size_t i, std::size_t j) const noexcept {
        return (i > j ? i - j : j - i) <= bandwidth_;
    }
    /// Zero outside the band; indices are 0-based.
    FieldElement get(std::size_t i, std::size_t j) const;
    void set(std::size_t i, std::size_t j, const FieldElement& v);
    void add(std::size_t i, std::size_t j, const FieldElement& v);

    /// Largest offsets (below, above the diagonal) that carry a nonzero entry.
    std::size_t lower_extent() const;
    std::size_t upper_extent() const;

    MatrixFF to_dense() const;
    BandedMatrixFF transposed() const;
    static BandedMatrixFF from_dense(const MatrixFF& m, std::size_t bandwidth);

private:
    std::size_t index(std::size_t i, std::size_t j) const {
        return i * (2 * bandwidth_ + 1) + (j + bandwidth_ - i);
    }

    Field field_;
    std::size_t size_;
    std::size_t bandwidth_;
    std::vector<FieldElement> data_;
};

/// Both sides of the transfer-matrix identity
///   (prod pivots)^{upper - 1} * det(M) = sign * det(B * A^(L) ... A^(upper+1) * B')
/// for a matrix with `lower` subdiagonals and `upper` superdiagonals; pivots are
/// the entries M(r, r + upper). With lower = upper = N this is the symmetric
/// band case.
struct TransferSides {
    std::size_t lower = 0;
    std::size_t upper = 0;
    FieldElement pivot_product;
    FieldElement reduced_det;  // det(B * prod A * B')
    int sign = 1;
};

/// Sign of the transfer-matrix identity; depends only on (L, upper).
int transfer_sign(std::size_t size, std::size_t upper) noexcept;

/// Evaluates both sides using the given band extents. Throws
/// DegenerateSuperdiagonal if a pivot vanishes and BandTooWide if
/// lower + upper >= L.
TransferSides transfer_sides(const BandedMatrixFF& m, std::size_t lower, std::size_t upper);

/// Determinant in O(L * N^2) through the transfer-matrix recurrence, using the
/// effective band extents of `m`.
FieldElement det_banded(const BandedMatrixFF& m);

/// det_banded, retrying on the transpose when the superdiagonal pivots vanish,
/// and falling back to det_dense when the band algorithm does not apply and
/// L <= dense_limit.
FieldElement det_banded_or_dense(const BandedMatrixFF& m, std::size_t dense_limit = 400);

/// F(x) = sum_k coeffs[k] x^k with K x K matrix coefficients.
class MatrixPolynomial {
public:
    explicit MatrixPolynomial(std::vector<MatrixFF> coeffs);

    std::size_t dim() const noexcept { return dim_; }
    Field field() const noexcept { return field_; }
    const std::vector<MatrixFF>& coeffs() const noexcept { return coeffs_; }
    MatrixFF operator()(const FieldElement& x) const;

private:
    std::vector<MatrixFF> coeffs_;
    std::size_t dim_;
    Field field_;
};

/// Tr(F(1) F(2) ... F(p - k) G) over F_p, accumulated left to right.
FieldElement trace_product(const MatrixPolynomial& f, const MatrixFF& g, ff::Word p, ff::Word k);

}  // namespace arsupp::linalg
