#pragma once

// Dense rational matrices and the exact affine solver used for every
// weighting computation.

#include "eulerkit/rational.hpp"

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace eulerkit {

using QVector = std::vector<Rational>;

class QMatrix {
public:
    QMatrix() = default;
    QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}
    QMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries)
        : rows_(rows), cols_(cols), entries_(std::move(entries)) {
        if (entries_.size() != rows_ * cols_)
            throw std::invalid_argument("QMatrix: entry count does not match shape");
    }
    /// Row-major literal, e.g. QMatrix{{1, 1}, {0, 1}}.
    QMatrix(std::initializer_list<std::initializer_list<Rational>> rows) {
        rows_ = rows.size();
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        entries_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_) throw std::invalid_argument("QMatrix: ragged rows");
            entries_.insert(entries_.end(), r.begin(), r.end());
        }
    }

    static QMatrix identity(std::size_t n) {
        QMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const std::vector<Rational>& entries() const { return entries_; }

    Rational& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

    QVector operator*(std::span<const Rational> v) const {
        if (v.size() != cols_) throw std::invalid_argument("QMatrix * vector: dimension mismatch");
        QVector out(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (!(*this)(i, j).is_zero() && !v[j].is_zero()) out[i] += (*this)(i, j) * v[j];
        return out;
    }

    friend bool operator==(const QMatrix&, const QMatrix&) = default;

    /// Rows separated by " / ", entries by single spaces: "1 1 / 0 1".
    std::string str() const {
        std::string s;
        for (std::size_t i = 0; i < rows_; ++i) {
            if (i) s += " / ";
            for (std::size_t j = 0; j < cols_; ++j) {
                if (j) s += ' ';
                s += (*this)(i, j).str();
            }
        }
        return s;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> entries_;
};

inline QMatrix transpose(const QMatrix& m) {
    QMatrix t(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
    return t;
}

inline QMatrix kronecker(const QMatrix& a, const QMatrix& b) {
    QMatrix k(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (a(i, j).is_zero()) continue;
            for (std::size_t p = 0; p < b.rows(); ++p)
                for (std::size_t q = 0; q < b.cols(); ++q)
                    k(i * b.rows() + p, j * b.cols() + q) = a(i, j) * b(p, q);
        }
    return k;
}

inline Rational sum(std::span<const Rational> v) {
    Rational s;
    for (const auto& x : v) s += x;
    return s;
}

struct LinearSolution {
    bool consistent = false;
    std::optional<QVector> particular;
    std::vector<QVector> nullspace_basis;
};

/// Exact Gauss-Jordan solve of m * x = b.
///
/// Pivots are the first nonzero entry in each column, scanning columns left to
/// right. Free variables are pinned to zero in the particular solution, and the
/// nullspace basis holds one vector per free column, in column order.
inline LinearSolution solve_affine(const QMatrix& m, std::span<const Rational> b) {
    if (b.size() != m.rows()) throw std::invalid_argument("solve_affine: dimension mismatch");
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();

    // Augmented matrix, column `cols` is the right-hand side.
    std::vector<QVector> a(rows, QVector(cols + 1));
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) a[i][j] = m(i, j);
        a[i][cols] = b[i];
    }

    std::vector<std::size_t> pivot_cols;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c].is_zero()) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        const Rational inv = Rational(1) / a[r][c];
        for (std::size_t j = c; j <= cols; ++j)
            if (!a[r][j].is_zero()) a[r][j] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c].is_zero()) continue;
            const Rational factor = a[i][c];
            for (std::size_t j = c; j <= cols; ++j)
                if (!a[r][j].is_zero()) a[i][j] -= factor * a[r][j];
        }
        pivot_cols.push_back(c);
        ++r;
    }

    LinearSolution sol;
    for (std::size_t i = r; i < rows; ++i)
        if (!a[i][cols].is_zero()) return sol;

    sol.consistent = true;
    QVector x(cols);
    for (std::size_t i = 0; i < pivot_cols.size(); ++i) x[pivot_cols[i]] = a[i][cols];
    sol.particular = std::move(x);

    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivot_cols) is_pivot[c] = true;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        QVector v(cols);
        v[f] = 1;
        for (std::size_t i = 0; i < pivot_cols.size(); ++i) v[pivot_cols[i]] = -a[i][f];
        sol.nullspace_basis.push_back(std::move(v));
    }
    return sol;
}

inline std::string format_vector(std::span<const Rational> v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += v[i].str();
    }
    return s + "]";
}

}  // namespace eulerkit
