#include "arsupp/linalg.hpp"

#include <algorithm>
#include <utility>

namespace arsupp::linalg {

MatrixFF::MatrixFF(Field field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), data_(rows * cols, FieldElement::zero(field)) {}

MatrixFF MatrixFF::identity(Field field, std::size_t n) {
    MatrixFF m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = FieldElement::one(field);
    return m;
}

MatrixFF MatrixFF::scalar(const FieldElement& value, std::size_t n) {
    MatrixFF m(value.field(), n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = value;
    return m;
}

MatrixFF& MatrixFF::operator+=(const MatrixFF& rhs) {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) fail(ErrorCode::InvalidArgument, "matrix shape mismatch");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
    return *this;
}

MatrixFF& MatrixFF::operator-=(const MatrixFF& rhs) {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) fail(ErrorCode::InvalidArgument, "matrix shape mismatch");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
    return *this;
}

MatrixFF& MatrixFF::operator*=(const FieldElement& s) {
    for (auto& x : data_) x *= s;
    return *this;
}

MatrixFF operator*(const MatrixFF& a, const MatrixFF& b) {
    if (a.cols_ != b.rows_) fail(ErrorCode::InvalidArgument, "matrix product shape mismatch");
    MatrixFF c(a.field_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const FieldElement& aik = a(i, k);
            if (aik.is_zero()) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
        }
    }
    return c;
}

bool operator==(const MatrixFF& a, const MatrixFF& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

MatrixFF MatrixFF::pow(std::uint64_t k) const {
    if (!is_square()) fail(ErrorCode::NonSquare, "power of a non-square matrix");
    MatrixFF r = identity(field_, rows_);
    MatrixFF b = *this;
    while (k) {
        if (k & 1) r = r * b;
        k >>= 1;
        if (k) b = b * b;
    }
    return r;
}

MatrixFF MatrixFF::transposed() const {
    MatrixFF t(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

FieldElement MatrixFF::trace() const {
    if (!is_square()) fail(ErrorCode::NonSquare, "trace of a non-square matrix");
    FieldElement t = FieldElement::zero(field_);
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
}

bool MatrixFF::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const FieldElement& x) { return x.is_zero(); });
}

FieldElement det_dense(const MatrixFF& input) {
    if (!input.is_square())
        fail(ErrorCode::NonSquare, "determinant of a " + std::to_string(input.rows()) + "x" +
                                       std::to_string(input.cols()) + " matrix");
    const std::size_t n = input.rows();
    MatrixFF m = input;
    FieldElement det = FieldElement::one(m.field());
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m(piv, col).is_zero()) ++piv;
        if (piv == n) return FieldElement::zero(m.field());
        if (piv != col) {
            for (std::size_t j = col; j < n; ++j) std::swap(m(piv, j), m(col, j));
            det = -det;
        }
        det *= m(col, col);
        const FieldElement inv = m(col, col).inverse();
        for (std::size_t i = col + 1; i < n; ++i) {
            if (m(i, col).is_zero()) continue;
            const FieldElement factor = m(i, col) * inv;
            for (std::size_t j = col; j < n; ++j) m(i, j) -= factor * m(col, j);
        }
    }
    return det;
}

// ---------------------------------------------------------------------------

BandedMatrixFF::BandedMatrixFF(Field field, std::size_t size, std::size_t bandwidth)
    : field_(field),
      size_(size),
      bandwidth_(bandwidth),
      data_(size * (2 * bandwidth + 1), FieldElement::zero(field)) {}

FieldElement BandedMatrixFF::get(std::size_t i, std::size_t j) const {
    if (i >= size_ || j >= size_ || !in_band(i, j)) return FieldElement::zero(field_);
    return data_[index(i, j)];
}

void BandedMatrixFF::set(std::size_t i, std::size_t j, const FieldElement& v) {
    if (i >= size_ || j >= size_ || !in_band(i, j))
        fail(ErrorCode::InvalidArgument, "entry (" + std::to_string(i) + "," + std::to_string(j) + ") outside the band");
    data_[index(i, j)] = v;
}

void BandedMatrixFF::add(std::size_t i, std::size_t j, const FieldElement& v) {
    if (i >= size_ || j >= size_ || !in_band(i, j))
        fail(ErrorCode::InvalidArgument, "entry (" + std::to_string(i) + "," + std::to_string(j) + ") outside the band");
    data_[index(i, j)] += v;
}

std::size_t BandedMatrixFF::lower_extent() const {
    for (std::size_t off = bandwidth_; off > 0; --off)
        for (std::size_t j = 0; j + off < size_; ++j)
            if (!data_[index(j + off, j)].is_zero()) return off;
    return 0;
}

std::size_t BandedMatrixFF::upper_extent() const {
    for (std::size_t off = bandwidth_; off > 0; --off)
        for (std::size_t i = 0; i + off < size_; ++i)
            if (!data_[index(i, i + off)].is_zero()) return off;
    return 0;
}

MatrixFF BandedMatrixFF::to_dense() const {
    MatrixFF m(field_, size_, size_);
    for (std::size_t i = 0; i < size_; ++i) {
        const std::size_t lo = i > bandwidth_ ? i - bandwidth_ : 0;
        const std::size_t hi = std::min(size_ - 1, i + bandwidth_);
        for (std::size_t j = lo; j <= hi; ++j) m(i, j) = data_[index(i, j)];
    }
    return m;
}

BandedMatrixFF BandedMatrixFF::transposed() const {
    BandedMatrixFF t(field_, size_, bandwidth_);
    for (std::size_t i = 0; i < size_; ++i) {
        const std::size_t lo = i > bandwidth_ ? i - bandwidth_ : 0;
        const std::size_t hi = std::min(size_ - 1, i + bandwidth_);
        for (std::size_t j = lo; j <= hi; ++j) t.data_[t.index(j, i)] = data_[index(i, j)];
    }
    return t;
}

BandedMatrixFF BandedMatrixFF::from_dense(const MatrixFF& m, std::size_t bandwidth) {
    if (!m.is_square()) fail(ErrorCode::NonSquare, "banded matrix must be square");
    BandedMatrixFF b(m.field(), m.rows(), bandwidth);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (b.in_band(i, j)) {
                b.data_[b.index(i, j)] = m(i, j);
            } else if (!m(i, j).is_zero()) {
                fail(ErrorCode::InvalidArgument, "nonzero entry outside the declared band");
            }
        }
    return b;
}

// ---------------------------------------------------------------------------

int transfer_sign(std::size_t size, std::size_t upper) noexcept {
    return (upper * (size + 1)) % 2 == 0 ? 1 : -1;
}

TransferSides transfer_sides(const BandedMatrixFF& m, std::size_t lower, std::size_t upper) {
    const std::size_t L = m.size();
    const std::size_t s = lower + upper;
    if (s >= L && upper > 0)
        fail(ErrorCode::BandTooWide, "band extents " + std::to_string(lower) + "+" + std::to_string(upper) +
                                         " too wide for size " + std::to_string(L));
    Field f = m.field();
    TransferSides out;
    out.lower = lower;
    out.upper = upper;
    out.pivot_product = FieldElement::one(f);
    out.sign = transfer_sign(L, upper);

    if (upper == 0) {
        // Lower triangular: every pivot is a diagonal entry and det(B A B') is empty.
        for (std::size_t i = 0; i < L; ++i) out.pivot_product *= m.get(i, i);
        out.reduced_det = FieldElement::one(f);
        return out;
    }

    // Entry of M with 1-based indices; columns <= 0 read as zero.
    auto entry = [&](std::ptrdiff_t i, std::ptrdiff_t j) -> FieldElement {
        if (i < 1 || j < 1 || i > static_cast<std::ptrdiff_t>(L) || j > static_cast<std::ptrdiff_t>(L))
            return FieldElement::zero(f);
        return m.get(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1));
    };

    // W = (A^(r) ... A^(1)) B', an s x upper matrix; B' embeds into the last `upper` coordinates.
    std::vector<FieldElement> w(s * upper, FieldElement::zero(f));
    for (std::size_t c = 0; c < upper; ++c) w[(lower + c) * upper + c] = FieldElement::one(f);
    std::vector<FieldElement> last(upper, FieldElement::zero(f));
    std::vector<FieldElement> row(s);

    const auto sl = static_cast<std::ptrdiff_t>(lower);
    const auto su = static_cast<std::ptrdiff_t>(upper);
    for (std::ptrdiff_t r = 1; r <= static_cast<std::ptrdiff_t>(L) - su; ++r) {
        const FieldElement pivot = entry(r, r + su);
        if (pivot.is_zero())
            fail(ErrorCode::DegenerateSuperdiagonal,
                 "pivot M(" + std::to_string(r) + "," + std::to_string(r + su) + ") vanishes");
        out.pivot_product *= pivot;
        for (std::size_t j = 0; j < s; ++j) row[j] = -entry(r, r - sl + static_cast<std::ptrdiff_t>(j));
        for (std::size_t c = 0; c < upper; ++c) {
            FieldElement acc = FieldElement::zero(f);
            for (std::size_t j = 0; j < s; ++j)
                if (!row[j].is_zero()) acc += row[j] * w[j * upper + c];
            last[c] = acc;
        }
        for (std::size_t j = 0; j + 1 < s; ++j)
            for (std::size_t c = 0; c < upper; ++c) w[j * upper + c] = pivot * w[(j + 1) * upper + c];
        for (std::size_t c = 0; c < upper; ++c) w[(s - 1) * upper + c] = last[c];
    }

    // B holds the last `upper` rows of M restricted to the last s columns.
    MatrixFF reduced(f, upper, upper);
    const auto ls = static_cast<std::ptrdiff_t>(L);
    for (std::size_t a = 0; a < upper; ++a) {
        for (std::size_t c = 0; c < upper; ++c) {
            FieldElement acc = FieldElement::zero(f);
            for (std::size_t j = 0; j < s; ++j) {
                const FieldElement b = entry(ls - su + 1 + static_cast<std::ptrdiff_t>(a),
                                             ls - static_cast<std::ptrdiff_t>(s) + 1 + static_cast<std::ptrdiff_t>(j));
                if (!b.is_zero()) acc += b * w[j * upper + c];
            }
            reduced(a, c) = acc;
        }
    }
    out.reduced_det = det_dense(reduced);
    return out;
}

FieldElement det_banded(const BandedMatrixFF& m) {
    if (2 * m.bandwidth() >= m.size() && m.size() > 0)
        fail(ErrorCode::BandTooWide, "bandwidth " + std::to_string(m.bandwidth()) + " is not below half of " +
                                         std::to_string(m.size()));
    if (m.size() == 0) return FieldElement::one(m.field());
    const TransferSides t = transfer_sides(m, m.lower_extent(), m.upper_extent());
    if (t.upper == 0) return t.pivot_product;
    FieldElement det = t.reduced_det / t.pivot_product.pow(static_cast<std::uint64_t>(t.upper - 1));
    return t.sign < 0 ? -det : det;
}

FieldElement det_banded_or_dense(const BandedMatrixFF& m, std::size_t dense_limit) {
    try {
        return det_banded(m);
    } catch (const Error& err) {
        if (err.code() != ErrorCode::DegenerateSuperdiagonal && err.code() != ErrorCode::BandTooWide) throw;
        if (err.code() == ErrorCode::DegenerateSuperdiagonal) {
            try {
                return det_banded(m.transposed());
            } catch (const Error& again) {
                if (again.code() != ErrorCode::DegenerateSuperdiagonal) throw;
            }
        }
        if (m.size() > dense_limit) throw;
        return det_dense(m.to_dense());
    }
}

// ---------------------------------------------------------------------------

MatrixPolynomial::MatrixPolynomial(std::vector<MatrixFF> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) fail(ErrorCode::InvalidArgument, "matrix polynomial needs at least one coefficient");
    dim_ = coeffs_.front().rows();
    field_ = coeffs_.front().field();
    for (const auto& c : coeffs_)
        if (c.rows() != dim_ || c.cols() != dim_ || c.field() != field_)
            fail(ErrorCode::InvalidArgument, "matrix polynomial coefficients must share shape and field");
}

MatrixFF MatrixPolynomial::operator()(const FieldElement& x) const {
    MatrixFF acc = coeffs_.back();
    for (std::size_t k = coeffs_.size() - 1; k-- > 0;) {
        acc *= x;
        acc += coeffs_[k];
    }
    return acc;
}

FieldElement trace_product(const MatrixPolynomial& f, const MatrixFF& g, ff::Word p, ff::Word k) {
    if (p < k) fail(ErrorCode::PrimeTooSmall, "p = " + std::to_string(p) + " is below k = " + std::to_string(k));
    Field field = f.field();
    if (field->p() != p || !field->is_prime_field())
        fail(ErrorCode::DomainMismatch, "trace_product expects coefficients over F_" + std::to_string(p));
    if (g.field() != field || g.rows() != f.dim() || g.cols() != f.dim())
        fail(ErrorCode::InvalidArgument, "G must be a square matrix matching F");
    MatrixFF acc = MatrixFF::identity(field, f.dim());
    for (ff::Word x = 1; x + k <= p; ++x) acc = acc * f(FieldElement(field, static_cast<std::int64_t>(x)));
    // Tr(acc * G) without forming the product.
    FieldElement tr = FieldElement::zero(field);
    for (std::size_t i = 0; i < f.dim(); ++i)
        for (std::size_t j = 0; j < f.dim(); ++j) tr += acc(i, j) * g(j, i);
    return tr;
}

}  // namespace arsupp::linalg
