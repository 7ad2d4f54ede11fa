#pragma once

// Exact dense linear algebra over any field descriptor: rank, kernel, solve,
// determinant, inverse. Gaussian elimination with deterministic pivoting
// (first nonzero entry in column order) so kernel bases and echelon forms are
// reproducible. PrimeMat is the packed fast path for prime fields used by the
// hot nucleus kernels.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "semialg/field.hpp"

namespace semialg {

class MatrixF {
  public:
    MatrixF() : rows_(0), cols_(0) {}
    MatrixF(Field f, std::size_t rows, std::size_t cols)
        : f_(std::move(f)), rows_(rows), cols_(cols),
          a_(rows * cols, FieldElement::zero(f_)) {}

    static MatrixF identity(const Field& f, std::size_t n) {
        MatrixF m(f, n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = FieldElement::one(f);
        return m;
    }

    static MatrixF from_rows(const Field& f, const std::vector<std::vector<FieldElement>>& rows) {
        if (rows.empty()) return MatrixF(f, 0, 0);
        MatrixF m(f, rows.size(), rows[0].size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.cols_) throw std::invalid_argument("ragged rows");
            for (std::size_t j = 0; j < m.cols_; ++j) m.at(i, j) = rows[i][j];
        }
        return m;
    }

    const Field& field() const { return f_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    FieldElement& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const FieldElement& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    std::vector<FieldElement> row(std::size_t i) const {
        return {a_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                a_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
    }

    friend bool operator==(const MatrixF& x, const MatrixF& y) {
        return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
    }

    MatrixF transpose() const {
        MatrixF r(f_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    friend MatrixF operator*(const MatrixF& x, const MatrixF& y) {
        if (x.cols_ != y.rows_) throw std::invalid_argument("matrix product dimension mismatch");
        MatrixF r(x.f_, x.rows_, y.cols_);
        for (std::size_t i = 0; i < x.rows_; ++i)
            for (std::size_t k = 0; k < x.cols_; ++k) {
                const FieldElement& v = x.at(i, k);
                if (v.is_zero()) continue;
                for (std::size_t j = 0; j < y.cols_; ++j)
                    r.at(i, j) = r.at(i, j) + v * y.at(k, j);
            }
        return r;
    }

    friend MatrixF operator+(const MatrixF& x, const MatrixF& y) {
        if (x.rows_ != y.rows_ || x.cols_ != y.cols_)
            throw std::invalid_argument("matrix sum dimension mismatch");
        MatrixF r = x;
        for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] = r.a_[i] + y.a_[i];
        return r;
    }

    friend MatrixF operator-(const MatrixF& x, const MatrixF& y) {
        if (x.rows_ != y.rows_ || x.cols_ != y.cols_)
            throw std::invalid_argument("matrix difference dimension mismatch");
        MatrixF r = x;
        for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] = r.a_[i] - y.a_[i];
        return r;
    }

    std::vector<FieldElement> apply(const std::vector<FieldElement>& v) const {
        if (v.size() != cols_) throw std::invalid_argument("matrix apply dimension mismatch");
        std::vector<FieldElement> r(rows_, FieldElement::zero(f_));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (!at(i, j).is_zero()) r[i] = r[i] + at(i, j) * v[j];
        return r;
    }

    static MatrixF vstack(const MatrixF& x, const MatrixF& y) {
        if (x.cols_ != y.cols_) throw std::invalid_argument("vstack dimension mismatch");
        MatrixF r(x.f_, x.rows_ + y.rows_, x.cols_);
        for (std::size_t i = 0; i < x.rows_ * x.cols_; ++i) r.a_[i] = x.a_[i];
        for (std::size_t i = 0; i < y.rows_ * y.cols_; ++i) r.a_[x.rows_ * x.cols_ + i] = y.a_[i];
        return r;
    }

    // Reduced row echelon form; returns pivot column indices.
    std::vector<std::size_t> rref() {
        std::vector<std::size_t> pivots;
        std::size_t prow = 0;
        for (std::size_t col = 0; col < cols_ && prow < rows_; ++col) {
            std::size_t sel = rows_;
            for (std::size_t i = prow; i < rows_; ++i)
                if (!at(i, col).is_zero()) {
                    sel = i;
                    break;
                }
            if (sel == rows_) continue;
            if (sel != prow)
                for (std::size_t j = 0; j < cols_; ++j) std::swap(at(prow, j), at(sel, j));
            FieldElement inv = at(prow, col).inverse();
            for (std::size_t j = col; j < cols_; ++j) at(prow, j) = at(prow, j) * inv;
            for (std::size_t i = 0; i < rows_; ++i) {
                if (i == prow || at(i, col).is_zero()) continue;
                FieldElement factor = at(i, col);
                for (std::size_t j = col; j < cols_; ++j)
                    at(i, j) = at(i, j) - factor * at(prow, j);
            }
            pivots.push_back(col);
            ++prow;
        }
        return pivots;
    }

    std::size_t rank() const {
        MatrixF m = *this;
        return m.rref().size();
    }

    // Basis of the null space {x : Mx = 0}, returned as the rows of a matrix
    // in reduced echelon form (deterministic).
    MatrixF kernel() const {
        MatrixF m = *this;
        std::vector<std::size_t> pivots = m.rref();
        std::vector<bool> is_pivot(cols_, false);
        for (auto c : pivots) is_pivot[c] = true;
        std::vector<std::vector<FieldElement>> basis;
        for (std::size_t free = 0; free < cols_; ++free) {
            if (is_pivot[free]) continue;
            std::vector<FieldElement> v(cols_, FieldElement::zero(f_));
            v[free] = FieldElement::one(f_);
            for (std::size_t r = 0; r < pivots.size(); ++r)
                v[pivots[r]] = -m.at(r, free);
            basis.push_back(std::move(v));
        }
        MatrixF b = from_rows(f_, basis);
        if (b.rows()) b.rref();
        if (!b.rows()) b = MatrixF(f_, 0, cols_);
        return b;
    }

    std::optional<std::vector<FieldElement>> solve(const std::vector<FieldElement>& b) const {
        if (b.size() != rows_) throw std::invalid_argument("solve dimension mismatch");
        MatrixF aug(f_, rows_, cols_ + 1);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
            aug.at(i, cols_) = b[i];
        }
        std::vector<std::size_t> pivots = aug.rref();
        if (!pivots.empty() && pivots.back() == cols_) return std::nullopt;  // inconsistent
        std::vector<FieldElement> x(cols_, FieldElement::zero(f_));
        for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug.at(r, cols_);
        return x;
    }

    FieldElement det() const {
        if (rows_ != cols_) throw std::invalid_argument("det of non-square matrix");
        MatrixF m = *this;
        FieldElement d = FieldElement::one(f_);
        for (std::size_t col = 0; col < cols_; ++col) {
            std::size_t sel = rows_;
            for (std::size_t i = col; i < rows_; ++i)
                if (!m.at(i, col).is_zero()) {
                    sel = i;
                    break;
                }
            if (sel == rows_) return FieldElement::zero(f_);
            if (sel != col) {
                for (std::size_t j = 0; j < cols_; ++j) std::swap(m.at(col, j), m.at(sel, j));
                d = -d;
            }
            d = d * m.at(col, col);
            FieldElement inv = m.at(col, col).inverse();
            for (std::size_t i = col + 1; i < rows_; ++i) {
                if (m.at(i, col).is_zero()) continue;
                FieldElement factor = m.at(i, col) * inv;
                for (std::size_t j = col; j < cols_; ++j)
                    m.at(i, j) = m.at(i, j) - factor * m.at(col, j);
            }
        }
        return d;
    }

    std::optional<MatrixF> inverse() const {
        if (rows_ != cols_) throw std::invalid_argument("inverse of non-square matrix");
        MatrixF aug(f_, rows_, 2 * cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
            aug.at(i, cols_ + i) = FieldElement::one(f_);
        }
        std::vector<std::size_t> pivots = aug.rref();
        if (pivots.size() != cols_) return std::nullopt;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            if (pivots[r] != r) return std::nullopt;
        MatrixF inv(f_, rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) inv.at(i, j) = aug.at(i, cols_ + j);
        return inv;
    }

    bool is_invertible() const { return rank() == rows_ && rows_ == cols_; }

    // Canonical form of the row space (RREF with zero rows dropped).
    MatrixF row_space() const {
        MatrixF m = *this;
        std::vector<std::size_t> pivots = m.rref();
        MatrixF r(f_, pivots.size(), cols_);
        for (std::size_t i = 0; i < pivots.size(); ++i)
            for (std::size_t j = 0; j < cols_; ++j) r.at(i, j) = m.at(i, j);
        return r;
    }

  private:
    Field f_;
    std::size_t rows_, cols_;
    std::vector<FieldElement> a_;
};

inline bool same_row_space(const MatrixF& a, const MatrixF& b) {
    return a.row_space() == b.row_space();
}

inline bool row_space_contains(const MatrixF& basis, const std::vector<FieldElement>& v) {
    MatrixF stacked = MatrixF::vstack(basis, MatrixF::from_rows(basis.field(), {v}));
    return stacked.rank() == basis.rank();
}

// --- packed prime-field matrices -------------------------------------------

// Row-major uint32 entries mod p. Only what the nucleus/kernel hot paths
// need; semantics match MatrixF over a prime descriptor (cross-checked in
// the test suite).
struct PrimeMat {
    std::uint32_t p = 0;
    std::size_t rows = 0, cols = 0;
    std::vector<std::uint32_t> a;

    PrimeMat() = default;
    PrimeMat(std::uint32_t p_, std::size_t r, std::size_t c) : p(p_), rows(r), cols(c), a(r * c, 0) {}

    std::uint32_t& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    std::uint32_t at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    static PrimeMat identity(std::uint32_t p, std::size_t n) {
        PrimeMat m(p, n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    static PrimeMat from_matrixf(const MatrixF& m) {
        if (m.field()->kind() != FieldKind::prime)
            throw std::invalid_argument("PrimeMat needs a prime field matrix");
        PrimeMat r(m.field()->p(), m.rows(), m.cols());
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) r.at(i, j) = m.at(i, j).coeffs()[0];
        return r;
    }

    MatrixF to_matrixf(const Field& f) const {
        MatrixF r(f, rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j)
                r.at(i, j) = FieldElement::from_int(f, at(i, j));
        return r;
    }

    std::vector<std::size_t> rref() {
        std::vector<std::size_t> pivots;
        std::size_t prow = 0;
        for (std::size_t col = 0; col < cols && prow < rows; ++col) {
            std::size_t sel = rows;
            for (std::size_t i = prow; i < rows; ++i)
                if (at(i, col)) {
                    sel = i;
                    break;
                }
            if (sel == rows) continue;
            if (sel != prow)
                for (std::size_t j = 0; j < cols; ++j) std::swap(at(prow, j), at(sel, j));
            std::uint32_t inv = fp::inv(at(prow, col), p);
            for (std::size_t j = col; j < cols; ++j) at(prow, j) = fp::mul(at(prow, j), inv, p);
            for (std::size_t i = 0; i < rows; ++i) {
                std::uint32_t factor = at(i, col);
                if (i == prow || factor == 0) continue;
                for (std::size_t j = col; j < cols; ++j)
                    at(i, j) = fp::sub(at(i, j), fp::mul(factor, at(prow, j), p), p);
            }
            pivots.push_back(col);
            ++prow;
        }
        return pivots;
    }

    PrimeMat kernel() const {
        PrimeMat m = *this;
        std::vector<std::size_t> pivots = m.rref();
        std::vector<bool> is_pivot(cols, false);
        for (auto c : pivots) is_pivot[c] = true;
        PrimeMat b(p, cols - pivots.size(), cols);
        std::size_t bi = 0;
        for (std::size_t free = 0; free < cols; ++free) {
            if (is_pivot[free]) continue;
            b.at(bi, free) = 1;
            for (std::size_t r = 0; r < pivots.size(); ++r)
                b.at(bi, pivots[r]) = fp::neg(m.at(r, free), p);
            ++bi;
        }
        b.rref();
        return b;
    }
};

}  // namespace semialg
