#pragma once

// Dense exact matrices over Q(zeta_N) and over the integers.

#include "tva/cyclotomic.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace tva {

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = Cyclotomic(1);
        return m;
    }

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }

    Cyclotomic& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Cyclotomic& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    [[nodiscard]] std::vector<Cyclotomic> column(std::size_t j) const {
        std::vector<Cyclotomic> v(rows_);
        for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
        return v;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("Matrix: dimension mismatch in product");
        Matrix r(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Cyclotomic& x = a(i, k);
                if (x.is_zero()) continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    if (!b(k, j).is_zero()) r(i, j) += x * b(k, j);
            }
        return r;
    }

    friend std::vector<Cyclotomic> operator*(const Matrix& a, const std::vector<Cyclotomic>& v) {
        if (a.cols_ != v.size()) throw std::invalid_argument("Matrix: dimension mismatch in matrix-vector product");
        std::vector<Cyclotomic> r(a.rows_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k)
                if (!a(i, k).is_zero() && !v[k].is_zero()) r[i] += a(i, k) * v[k];
        return r;
    }

    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        Matrix r(a);
        for (std::size_t i = 0; i < r.data_.size(); ++i) r.data_[i] -= b.data_[i];
        return r;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    std::vector<std::size_t> rref() {
        std::vector<std::size_t> pivots;
        std::size_t row = 0;
        for (std::size_t col = 0; col < cols_ && row < rows_; ++col) {
            std::size_t p = row;
            while (p < rows_ && (*this)(p, col).is_zero()) ++p;
            if (p == rows_) continue;
            if (p != row)
                for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(p, j), (*this)(row, j));
            const Cyclotomic inv = (*this)(row, col).inverse();
            for (std::size_t j = 0; j < cols_; ++j) (*this)(row, j) *= inv;
            for (std::size_t i = 0; i < rows_; ++i) {
                if (i == row || (*this)(i, col).is_zero()) continue;
                const Cyclotomic f = (*this)(i, col);
                for (std::size_t j = 0; j < cols_; ++j)
                    if (!(*this)(row, j).is_zero()) (*this)(i, j) -= f * (*this)(row, j);
            }
            pivots.push_back(col);
            ++row;
        }
        return pivots;
    }

    /// Basis of the right kernel, one vector per free column.
    [[nodiscard]] std::vector<std::vector<Cyclotomic>> nullspace() const {
        Matrix m(*this);
        const auto pivots = m.rref();
        std::vector<bool> is_pivot(cols_, false);
        for (auto p : pivots) is_pivot[p] = true;
        std::vector<std::vector<Cyclotomic>> basis;
        for (std::size_t free = 0; free < cols_; ++free) {
            if (is_pivot[free]) continue;
            std::vector<Cyclotomic> v(cols_);
            v[free] = Cyclotomic(1);
            for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(r, free);
            basis.push_back(std::move(v));
        }
        return basis;
    }

    [[nodiscard]] std::size_t rank() const {
        Matrix m(*this);
        return m.rref().size();
    }

    [[nodiscard]] Matrix inverse() const {
        if (rows_ != cols_) throw std::invalid_argument("Matrix::inverse: not square");
        Matrix aug(rows_, 2 * cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) aug(i, j) = (*this)(i, j);
            aug(i, cols_ + i) = Cyclotomic(1);
        }
        const auto pivots = aug.rref();
        if (pivots.size() < rows_ || pivots[rows_ - 1] >= cols_) throw std::domain_error("Matrix::inverse: singular");
        Matrix inv(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) inv(i, j) = aug(i, cols_ + j);
        return inv;
    }

    /// Solves A x = b; returns nullopt if inconsistent. Free variables are set to zero.
    [[nodiscard]] std::optional<std::vector<Cyclotomic>> solve(const std::vector<Cyclotomic>& b) const {
        Matrix aug(rows_, cols_ + 1);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) aug(i, j) = (*this)(i, j);
            aug(i, cols_) = b[i];
        }
        const auto pivots = aug.rref();
        if (!pivots.empty() && pivots.back() == cols_) return std::nullopt;
        std::vector<Cyclotomic> x(cols_);
        for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, cols_);
        return x;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Cyclotomic> data_;
};

using IntMatrix = std::vector<std::vector<std::int64_t>>;

/// A Z-basis of the integer kernel {x in Z^n : A x = 0}, via unimodular column
/// reduction of A (rows x n).
inline std::vector<std::vector<std::int64_t>> integer_kernel(const IntMatrix& a, std::size_t n) {
    const std::size_t m = a.size();
    std::vector<std::vector<mpz_class>> work(m, std::vector<mpz_class>(n));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) work[i][j] = static_cast<long>(a[i][j]);
    std::vector<std::vector<mpz_class>> u(n, std::vector<mpz_class>(n));  // columns track transforms
    for (std::size_t j = 0; j < n; ++j) u[j][j] = 1;

    auto col_op = [&](std::size_t dst, std::size_t src, const mpz_class& f) {  // col dst -= f * col src
        for (std::size_t i = 0; i < m; ++i) work[i][dst] -= f * work[i][src];
        for (std::size_t i = 0; i < n; ++i) u[i][dst] -= f * u[i][src];
    };
    auto col_swap = [&](std::size_t x, std::size_t y) {
        for (std::size_t i = 0; i < m; ++i) std::swap(work[i][x], work[i][y]);
        for (std::size_t i = 0; i < n; ++i) std::swap(u[i][x], u[i][y]);
    };

    std::size_t lead = 0;  // columns [0, lead) hold pivots
    for (std::size_t row = 0; row < m && lead < n; ++row) {
        // Euclid across columns lead..n-1 on this row
        while (true) {
            std::size_t best = n;
            for (std::size_t j = lead; j < n; ++j)
                if (work[row][j] != 0 && (best == n || abs(work[row][j]) < abs(work[row][best]))) best = j;
            if (best == n) break;
            col_swap(lead, best);
            bool done = true;
            for (std::size_t j = lead + 1; j < n; ++j) {
                if (work[row][j] == 0) continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), work[row][j].get_mpz_t(), work[row][lead].get_mpz_t());
                col_op(j, lead, q);
                if (work[row][j] != 0) done = false;
            }
            if (done) {
                ++lead;
                break;
            }
        }
    }
    std::vector<std::vector<std::int64_t>> basis;
    for (std::size_t j = lead; j < n; ++j) {
        std::vector<std::int64_t> v(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (!u[i][j].fits_slong_p()) throw std::overflow_error("integer_kernel: entry exceeds 64 bits");
            v[i] = u[i][j].get_si();
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace tva
