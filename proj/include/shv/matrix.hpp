// Exact dense linear algebra over a field, plus a fraction-free integer
// determinant. Sizes here are small (at most ~70), so classical Gaussian
// elimination with exact division is appropriate.

#pragma once

#include <stdexcept>
#include <vector>

#include "shv/poly.hpp"  // field_inverse
#include "shv/rational.hpp"

namespace shv {

template <typename K>
class Matrix {
  public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
    Matrix(int rows, int cols, std::vector<K> data)
        : rows_(rows), cols_(cols), a_(std::move(data)) {
        if (static_cast<int>(a_.size()) != rows * cols)
            throw std::invalid_argument("Matrix: bad data size");
    }

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = K(1);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    K& operator()(int i, int j) { return a_[i * cols_ + j]; }
    const K& operator()(int i, int j) const { return a_[i * cols_ + j]; }

    friend Matrix operator*(const Matrix& x, const Matrix& y) {
        if (x.cols_ != y.rows_) throw std::invalid_argument("Matrix: shape mismatch");
        Matrix r(x.rows_, y.cols_);
        for (int i = 0; i < x.rows_; ++i)
            for (int k = 0; k < x.cols_; ++k) {
                if (x(i, k) == K()) continue;
                for (int j = 0; j < y.cols_; ++j)
                    r(i, j) = r(i, j) + x(i, k) * y(k, j);
            }
        return r;
    }
    friend Matrix operator+(const Matrix& x, const Matrix& y) {
        Matrix r(x.rows_, x.cols_);
        for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] = x.a_[i] + y.a_[i];
        return r;
    }
    friend Matrix operator-(const Matrix& x, const Matrix& y) {
        Matrix r(x.rows_, x.cols_);
        for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] = x.a_[i] - y.a_[i];
        return r;
    }
    friend Matrix operator*(const K& k, const Matrix& x) {
        Matrix r(x.rows_, x.cols_);
        for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] = k * x.a_[i];
        return r;
    }
    friend bool operator==(const Matrix& x, const Matrix& y) {
        return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
    }

    Matrix transposed() const {
        Matrix r(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    // Row echelon reduction; returns rank. If det is non-null and the matrix
    // is square, also accumulates the determinant.
    int rank(K* det = nullptr) const {
        Matrix m = *this;
        K d = K(1);
        bool flip = false;
        int rank = 0;
        for (int col = 0; col < cols_ && rank < rows_; ++col) {
            int pivot = -1;
            for (int i = rank; i < rows_; ++i)
                if (!(m(i, col) == K())) { pivot = i; break; }
            if (pivot < 0) continue;
            if (pivot != rank) {
                for (int j = 0; j < cols_; ++j) std::swap(m(pivot, j), m(rank, j));
                flip = !flip;
            }
            const K inv = field_inverse(m(rank, col));
            d = d * m(rank, col);
            for (int j = col; j < cols_; ++j) m(rank, j) = m(rank, j) * inv;
            for (int i = 0; i < rows_; ++i) {
                if (i == rank || m(i, col) == K()) continue;
                const K f = m(i, col);
                for (int j = col; j < cols_; ++j) m(i, j) = m(i, j) - f * m(rank, j);
            }
            ++rank;
        }
        if (det) {
            if (rows_ != cols_) throw std::domain_error("det of non-square matrix");
            if (rank < rows_) *det = K();
            else *det = flip ? K() - d : d;
        }
        return rank;
    }

    K det() const {
        K d{};
        rank(&d);
        return d;
    }

    // Basis of the right kernel.
    std::vector<std::vector<K>> kernel() const {
        Matrix m = *this;
        std::vector<int> pivot_col(rows_, -1);
        int r = 0;
        for (int col = 0; col < cols_ && r < rows_; ++col) {
            int pivot = -1;
            for (int i = r; i < rows_; ++i)
                if (!(m(i, col) == K())) { pivot = i; break; }
            if (pivot < 0) continue;
            if (pivot != r)
                for (int j = 0; j < cols_; ++j) std::swap(m(pivot, j), m(r, j));
            const K inv = field_inverse(m(r, col));
            for (int j = col; j < cols_; ++j) m(r, j) = m(r, j) * inv;
            for (int i = 0; i < rows_; ++i) {
                if (i == r || m(i, col) == K()) continue;
                const K f = m(i, col);
                for (int j = col; j < cols_; ++j) m(i, j) = m(i, j) - f * m(r, j);
            }
            pivot_col[r] = col;
            ++r;
        }
        std::vector<bool> is_pivot(cols_, false);
        for (int i = 0; i < r; ++i) is_pivot[pivot_col[i]] = true;
        std::vector<std::vector<K>> basis;
        for (int free = 0; free < cols_; ++free) {
            if (is_pivot[free]) continue;
            std::vector<K> v(cols_);
            v[free] = K(1);
            for (int i = 0; i < r; ++i) v[pivot_col[i]] = K() - m(i, free);
            basis.push_back(std::move(v));
        }
        return basis;
    }

    // Solve A x = b; returns false if inconsistent (least solution with free
    // variables set to zero otherwise).
    bool solve(const std::vector<K>& b, std::vector<K>& x) const {
        Matrix m(rows_, cols_ + 1);
        for (int i = 0; i < rows_; ++i) {
            for (int j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j);
            m(i, cols_) = b[i];
        }
        std::vector<int> pivot_col(rows_, -1);
        int r = 0;
        for (int col = 0; col < cols_ && r < rows_; ++col) {
            int pivot = -1;
            for (int i = r; i < rows_; ++i)
                if (!(m(i, col) == K())) { pivot = i; break; }
            if (pivot < 0) continue;
            if (pivot != r)
                for (int j = 0; j <= cols_; ++j) std::swap(m(pivot, j), m(r, j));
            const K inv = field_inverse(m(r, col));
            for (int j = col; j <= cols_; ++j) m(r, j) = m(r, j) * inv;
            for (int i = 0; i < rows_; ++i) {
                if (i == r || m(i, col) == K()) continue;
                const K f = m(i, col);
                for (int j = col; j <= cols_; ++j) m(i, j) = m(i, j) - f * m(r, j);
            }
            pivot_col[r] = col;
            ++r;
        }
        for (int i = r; i < rows_; ++i) {
            bool all_zero = true;
            for (int j = 0; j < cols_; ++j)
                if (!(m(i, j) == K())) { all_zero = false; break; }
            if (all_zero && !(m(i, cols_) == K())) return false;
        }
        x.assign(cols_, K());
        for (int i = 0; i < r; ++i) x[pivot_col[i]] = m(i, cols_);
        return true;
    }

    K trace() const {
        if (rows_ != cols_) throw std::domain_error("trace of non-square matrix");
        K t{};
        for (int i = 0; i < rows_; ++i) t = t + (*this)(i, i);
        return t;
    }

  private:
    int rows_, cols_;
    std::vector<K> a_;
};

// Fraction-free Bareiss determinant for integer matrices; all intermediate
// divisions are exact.
inline Integer bareiss_det(std::vector<std::vector<Integer>> m) {
    const int n = static_cast<int>(m.size());
    Integer sign = 1, prev = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m[k][k] == 0) {
            int swap_row = -1;
            for (int i = k + 1; i < n; ++i)
                if (m[i][k] != 0) { swap_row = i; break; }
            if (swap_row < 0) return 0;
            std::swap(m[k], m[swap_row]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return n == 0 ? Integer(1) : sign * m[n - 1][n - 1];
}

}  // namespace shv
