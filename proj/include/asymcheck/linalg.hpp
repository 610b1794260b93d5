#pragma once

#include "asymcheck/field.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace asymcheck {

using Vec = std::vector<Scalar>;

// Dense row-major matrix over a Field. Sizes here are tiny (a few dozen rows),
// so everything is straightforward Gaussian elimination with deterministic
// pivoting: first nonzero entry in column order.
class Mat {
public:
    Mat() : rows_(0), cols_(0) {}
    Mat(std::size_t rows, std::size_t cols, Scalar fill = 0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    Scalar operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    bool operator==(const Mat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

    Mat transposed() const {
        Mat t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
        return t;
    }

    Vec apply(const Field& k, const Vec& x) const {
        Vec y(rows_, 0);
        for (std::size_t r = 0; r < rows_; ++r) {
            Scalar acc = 0;
            for (std::size_t c = 0; c < cols_; ++c)
                acc = k.add(acc, k.mul((*this)(r, c), x[c]));
            y[r] = acc;
        }
        return y;
    }

    Mat mul(const Field& k, const Mat& o) const {
        Mat out(rows_, o.cols_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < o.cols_; ++c) {
                Scalar acc = 0;
                for (std::size_t i = 0; i < cols_; ++i)
                    acc = k.add(acc, k.mul((*this)(r, i), o(i, c)));
                out(r, c) = acc;
            }
        return out;
    }

    void canonicalize(const Field& k) {
        for (Scalar& v : data_) v = k.canon(v);
    }

private:
    std::size_t rows_, cols_;
    std::vector<Scalar> data_;
};

namespace linalg {

// Row-echelon reduction over a finite field; returns rank and records
// pivot columns. The matrix is modified in place.
inline std::size_t echelonize(const Field& k, Mat& a, std::vector<std::size_t>* pivot_cols = nullptr) {
    std::size_t rank = 0;
    for (std::size_t col = 0; col < a.cols() && rank < a.rows(); ++col) {
        std::size_t piv = rank;
        while (piv < a.rows() && k.canon(a(piv, col)) == 0) ++piv;
        if (piv == a.rows()) continue;
        if (piv != rank)
            for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(piv, c), a(rank, c));
        Scalar inv = k.inv(a(rank, col));
        for (std::size_t c = 0; c < a.cols(); ++c) a(rank, c) = k.mul(a(rank, c), inv);
        for (std::size_t r = 0; r < a.rows(); ++r) {
            if (r == rank) continue;
            Scalar f = k.canon(a(r, col));
            if (f == 0) continue;
            for (std::size_t c = 0; c < a.cols(); ++c)
                a(r, c) = k.sub(a(r, c), k.mul(f, a(rank, c)));
        }
        if (pivot_cols) pivot_cols->push_back(col);
        ++rank;
    }
    return rank;
}

inline std::size_t rank(const Field& k, Mat a) {
    if (k.is_int()) {
        // rational rank via fraction-free (Bareiss) elimination
        std::size_t rk = 0;
        __int128 prev = 1;
        std::vector<std::vector<__int128>> m(a.rows(), std::vector<__int128>(a.cols()));
        for (std::size_t r = 0; r < a.rows(); ++r)
            for (std::size_t c = 0; c < a.cols(); ++c) m[r][c] = a(r, c);
        for (std::size_t col = 0; col < a.cols() && rk < a.rows(); ++col) {
            std::size_t piv = rk;
            while (piv < a.rows() && m[piv][col] == 0) ++piv;
            if (piv == a.rows()) continue;
            std::swap(m[piv], m[rk]);
            for (std::size_t r = rk + 1; r < a.rows(); ++r) {
                for (std::size_t c = col + 1; c < a.cols(); ++c)
                    m[r][c] = (m[rk][col] * m[r][c] - m[r][col] * m[rk][c]) / prev;
                m[r][col] = 0;
            }
            prev = m[rk][col];
            ++rk;
        }
        return rk;
    }
    return echelonize(k, a);
}

// |det| over the integers via Bareiss; inputs here are tiny pairing tables.
inline __int128 det_abs_int(const Mat& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("determinant of non-square matrix");
    std::size_t n = a.rows();
    if (n == 0) return 1;
    std::vector<std::vector<__int128>> m(n, std::vector<__int128>(n));
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) m[r][c] = a(r, c);
    __int128 prev = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m[piv][col] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != col) std::swap(m[piv], m[col]);
        for (std::size_t r = col + 1; r < n; ++r) {
            for (std::size_t c = col + 1; c < n; ++c)
                m[r][c] = (m[col][col] * m[r][c] - m[r][col] * m[col][c]) / prev;
            m[r][col] = 0;
        }
        prev = m[col][col];
    }
    __int128 d = m[n - 1][n - 1];
    return d < 0 ? -d : d;
}

// Basis of the solution space of A x = 0 over a finite field.
// Deterministic: free columns in ascending order, each basis vector has a 1
// in its own free column.
inline std::vector<Vec> nullspace(const Field& k, Mat a) {
    std::vector<std::size_t> pivots;
    echelonize(k, a, &pivots);
    std::vector<bool> is_pivot(a.cols(), false);
    for (std::size_t c : pivots) is_pivot[c] = true;
    std::vector<Vec> basis;
    for (std::size_t free_col = 0; free_col < a.cols(); ++free_col) {
        if (is_pivot[free_col]) continue;
        Vec v(a.cols(), 0);
        v[free_col] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = k.neg(a(r, free_col));
        basis.push_back(std::move(v));
    }
    return basis;
}

// One solution of A x = b over a finite field, if any.
inline std::optional<Vec> solve(const Field& k, Mat a, Vec b) {
    if (a.rows() != b.size()) throw std::invalid_argument("solve: shape mismatch");
    Mat aug(a.rows(), a.cols() + 1);
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) aug(r, c) = a(r, c);
        aug(r, a.cols()) = b[r];
    }
    std::vector<std::size_t> pivots;
    echelonize(k, aug, &pivots);
    for (std::size_t r = 0; r < pivots.size(); ++r)
        if (pivots[r] == a.cols()) return std::nullopt;
    Vec x(a.cols(), 0);
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, a.cols());
    return x;
}

inline std::optional<Mat> inverse(const Field& k, const Mat& a) {
    if (a.rows() != a.cols()) return std::nullopt;
    std::size_t n = a.rows();
    Mat aug(n, 2 * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) aug(r, c) = a(r, c);
        aug(r, n + r) = 1;
    }
    if (echelonize(k, aug) < n) return std::nullopt;
    Mat inv(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) inv(r, c) = aug(r, n + c);
    return inv;
}

} // namespace linalg
} // namespace asymcheck
