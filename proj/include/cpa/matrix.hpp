#pragma once

#include "cpa/errors.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace cpa {

// Dense matrix over a field F, row-major. F must provide + - * /, ==,
// is_zero() and construction from long.
template <class F>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, F(0)) {}
    Matrix(std::size_t rows, std::size_t cols, const F& fill) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = F(1);
        return m;
    }

    static Matrix from_rows(const std::vector<std::vector<F>>& rows) {
        Matrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
        for (std::size_t r = 0; r < m.rows_; ++r) {
            if (rows[r].size() != m.cols_) throw DimensionError("ragged matrix rows");
            for (std::size_t c = 0; c < m.cols_; ++c) m(r, c) = rows[r][c];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    F& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const F& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    const std::vector<F>& data() const { return data_; }

    bool is_zero() const {
        for (const auto& x : data_)
            if (!x.is_zero()) return false;
        return true;
    }

    Matrix transposed() const {
        Matrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
        return t;
    }

    Matrix& operator+=(const Matrix& o) {
        check_same(o);
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        check_same(o);
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
        return *this;
    }
    Matrix& operator*=(const F& s) {
        for (auto& x : data_) x *= s;
        return *this;
    }
    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, const F& s) { return a *= s; }
    friend Matrix operator*(const F& s, Matrix a) { return a *= s; }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw DimensionError("matrix product dimension mismatch");
        Matrix m(a.rows_, b.cols_);
        for (std::size_t r = 0; r < a.rows_; ++r)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const F& x = a(r, k);
                if (x.is_zero()) continue;
                for (std::size_t c = 0; c < b.cols_; ++c)
                    if (!b(k, c).is_zero()) m(r, c) += x * b(k, c);
            }
        return m;
    }

    std::vector<F> apply(const std::vector<F>& v) const {
        if (v.size() != cols_) throw DimensionError("matrix-vector dimension mismatch");
        std::vector<F> out(rows_, F(0));
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c)
                if (!(*this)(r, c).is_zero() && !v[c].is_zero()) out[r] += (*this)(r, c) * v[c];
        return out;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    template <class Fn>
    auto map(Fn fn) const -> Matrix<decltype(fn(std::declval<const F&>()))> {
        Matrix<decltype(fn(std::declval<const F&>()))> m(rows_, cols_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) m(r, c) = fn((*this)(r, c));
        return m;
    }

private:
    void check_same(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("matrix shapes differ");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<F> data_;
};

template <class F>
F determinant(Matrix<F> m) {
    if (m.rows() != m.cols()) throw DimensionError("determinant of a non-square matrix");
    std::size_t n = m.rows();
    F det(1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m(p, c).is_zero()) ++p;
        if (p == n) return F(0);
        if (p != c) {
            for (std::size_t k = 0; k < n; ++k) std::swap(m(p, k), m(c, k));
            det = -det;
        }
        det *= m(c, c);
        F inv = F(1) / m(c, c);
        for (std::size_t r = c + 1; r < n; ++r) {
            if (m(r, c).is_zero()) continue;
            F f = m(r, c) * inv;
            for (std::size_t k = c; k < n; ++k) m(r, k) -= f * m(c, k);
        }
    }
    return det;
}

// Gauss-Jordan inverse; nullopt when singular.
template <class F>
std::optional<Matrix<F>> inverse(Matrix<F> m) {
    if (m.rows() != m.cols()) throw DimensionError("inverse of a non-square matrix");
    std::size_t n = m.rows();
    Matrix<F> inv = Matrix<F>::identity(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m(p, c).is_zero()) ++p;
        if (p == n) return std::nullopt;
        if (p != c)
            for (std::size_t k = 0; k < n; ++k) {
                std::swap(m(p, k), m(c, k));
                std::swap(inv(p, k), inv(c, k));
            }
        F s = F(1) / m(c, c);
        for (std::size_t k = 0; k < n; ++k) {
            m(c, k) *= s;
            inv(c, k) *= s;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || m(r, c).is_zero()) continue;
            F f = m(r, c);
            for (std::size_t k = 0; k < n; ++k) {
                m(r, k) -= f * m(c, k);
                inv(r, k) -= f * inv(c, k);
            }
        }
    }
    return inv;
}

}  // namespace cpa
