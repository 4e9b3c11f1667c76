#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "frob/arith.hpp"
#include "frob/error.hpp"

namespace frob {

/// Dense row-major matrix over an exact ring.
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const T& fill = T(0))
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
    Matrix(std::initializer_list<std::initializer_list<T>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_) throw Error(Errc::DimensionMismatch, "ragged matrix literal");
            for (const auto& v : row) data_.push_back(v);
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::vector<T> row(std::size_t i) const {
        return std::vector<T>(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                              data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
    }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }

    /// Submatrix with column `skip` removed.
    Matrix without_column(std::size_t skip) const {
        Matrix m(rows_, cols_ - 1);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0, k = 0; j < cols_; ++j)
                if (j != skip) m(i, k++) = (*this)(i, j);
        return m;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

/// Laplace expansion along the first row. Needs only ring operations, so it
/// works for polynomial entries; exponential cost limits it to small sizes.
template <class T>
T determinant_cofactor(const Matrix<T>& m) {
    const std::size_t n = m.rows();
    if (n != m.cols()) throw Error(Errc::DimensionMismatch, "determinant of a non-square matrix");
    if (n == 0) return T(1);
    if (n == 1) return m(0, 0);
    if (n == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    T acc(0);
    for (std::size_t j = 0; j < n; ++j) {
        if (m(0, j) == T(0)) continue;
        Matrix<T> sub(n - 1, n - 1);
        for (std::size_t i = 1; i < n; ++i)
            for (std::size_t c = 0, k = 0; c < n; ++c)
                if (c != j) sub(i - 1, k++) = m(i, c);
        T term = m(0, j) * determinant_cofactor(sub);
        if (j % 2 == 0) acc = acc + term;
        else acc = acc - term;
    }
    return acc;
}

/// Gaussian elimination over Q.
inline Rational determinant(Matrix<Rational> m) {
    const std::size_t n = m.rows();
    if (n != m.cols()) throw Error(Errc::DimensionMismatch, "determinant of a non-square matrix");
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m(p, c) == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            m.swap_rows(p, c);
            det = -det;
        }
        det *= m(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (m(i, c) == 0) continue;
            Rational f = m(i, c) / m(c, c);
            for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
        }
    }
    return det;
}

inline Integer determinant(const Matrix<Integer>& m) {
    Matrix<Rational> q(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) q(i, j) = Rational(m(i, j));
    Rational d = determinant(std::move(q));
    return d.get_num();
}

/// Solves x = c * M for the row vector c (M square, nonsingular).
inline std::vector<Rational> solve_left(const Matrix<Rational>& m, const std::vector<Rational>& x) {
    const std::size_t n = m.rows();
    if (n != m.cols() || x.size() != n) throw Error(Errc::DimensionMismatch, "solve_left dimension mismatch");
    // Transpose: M^T c^T = x^T, augmented [M^T | x].
    Matrix<Rational> a(n, n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a(i, j) = m(j, i);
        a(i, n) = x[i];
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a(p, c) == 0) ++p;
        if (p == n) throw Error(Errc::RankDeficient, "singular basis");
        a.swap_rows(p, c);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || a(i, c) == 0) continue;
            Rational f = a(i, c) / a(c, c);
            for (std::size_t j = c; j <= n; ++j) a(i, j) -= f * a(c, j);
        }
    }
    std::vector<Rational> c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = a(i, n) / a(i, i);
    return c;
}

template <class T>
std::string to_string(const Matrix<T>& m) {
    std::string s;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (i) s += ";";
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) s += ",";
            s += to_string(m(i, j));
        }
    }
    return s;
}

/// Parses "r00,r01;r10,r11" (rows separated by ';', entries by ',').
inline Matrix<Rational> parse_rational_matrix(std::string_view text) {
    auto rows = split(text, ';');
    std::vector<std::vector<Rational>> parsed;
    for (auto r : rows) parsed.push_back(parse_rational_list(r));
    const std::size_t cols = parsed.empty() ? 0 : parsed.front().size();
    Matrix<Rational> m(parsed.size(), cols);
    for (std::size_t i = 0; i < parsed.size(); ++i) {
        if (parsed[i].size() != cols) throw Error(Errc::ParseError, "ragged matrix literal");
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = parsed[i][j];
    }
    return m;
}

}  // namespace frob
