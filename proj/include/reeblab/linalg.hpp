#pragma once

// Dense linear algebra for the small sizes this library meets (dimension 3 to
// 6). Everything is plain row-major storage; no expression templates, no
// allocator tricks. Solves use partial pivoting, positive-definiteness is
// checked by an in-place Cholesky attempt.

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "reeblab/errors.hpp"

namespace reeblab {

using Vec = std::vector<double>;

class Mat {
public:
    Mat() : rows_(0), cols_(0) {}
    Mat(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), a_(rows * cols, fill) {}
    Mat(std::size_t rows, std::size_t cols, std::initializer_list<double> entries)
        : rows_(rows), cols_(cols), a_(entries) {
        if (a_.size() != rows * cols)
            throw argument_error("Mat: initializer size does not match shape");
    }
    Mat(std::initializer_list<std::initializer_list<double>> rows)
        : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
        a_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_) throw argument_error("Mat: ragged initializer rows");
            a_.insert(a_.end(), r.begin(), r.end());
        }
    }

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    const std::vector<double>& data() const noexcept { return a_; }
    std::vector<double>& data() noexcept { return a_; }

private:
    std::size_t rows_, cols_;
    std::vector<double> a_;
};

inline Vec add(const Vec& x, const Vec& y) {
    Vec r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] + y[i];
    return r;
}

inline Vec sub(const Vec& x, const Vec& y) {
    Vec r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] - y[i];
    return r;
}

inline Vec scale(double c, const Vec& x) {
    Vec r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = c * x[i];
    return r;
}

// r += c * x
inline void axpy(double c, const Vec& x, Vec& r) {
    for (std::size_t i = 0; i < x.size(); ++i) r[i] += c * x[i];
}

inline double dot(const Vec& x, const Vec& y) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

inline double norm(const Vec& x) { return std::sqrt(dot(x, x)); }

inline double max_abs(const Vec& x) {
    double m = 0.0;
    for (double v : x) m = std::max(m, std::abs(v));
    return m;
}

inline double max_abs(const Mat& m) {
    double r = 0.0;
    for (double v : m.data()) r = std::max(r, std::abs(v));
    return r;
}

inline Vec matvec(const Mat& m, const Vec& x) {
    if (m.cols() != x.size())
        throw argument_error("matvec: shape mismatch");
    Vec r(m.rows(), 0.0);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            r[i] += m(i, j) * x[j];
    return r;
}

inline Mat matmul(const Mat& a, const Mat& b) {
    if (a.cols() != b.rows())
        throw argument_error("matmul: shape mismatch");
    Mat r(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                r(i, j) += aik * b(k, j);
        }
    return r;
}

inline Mat transpose(const Mat& m) {
    Mat r(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            r(j, i) = m(i, j);
    return r;
}

inline Mat mat_add(const Mat& a, const Mat& b) {
    Mat r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.data().size(); ++i) r.data()[i] = a.data()[i] + b.data()[i];
    return r;
}

inline Mat mat_sub(const Mat& a, const Mat& b) {
    Mat r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.data().size(); ++i) r.data()[i] = a.data()[i] - b.data()[i];
    return r;
}

inline Mat mat_scale(double c, const Mat& a) {
    Mat r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.data().size(); ++i) r.data()[i] = c * a.data()[i];
    return r;
}

// outer(x, y)_{ij} = x_i y_j
inline Mat outer(const Vec& x, const Vec& y) {
    Mat r(x.size(), y.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < y.size(); ++j)
            r(i, j) = x[i] * y[j];
    return r;
}

// Solve A x = b by Gaussian elimination with partial pivoting. A is copied.
inline Vec solve(Mat a, Vec b) {
    const std::size_t n = a.rows();
    if (a.cols() != n || b.size() != n)
        throw argument_error("solve: shape mismatch");
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        double best = std::abs(a(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            double v = std::abs(a(r, col));
            if (v > best) { best = v; piv = r; }
        }
        if (best < 1e-300)
            throw metric_error("solve: matrix is numerically singular");
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(col, j), a(piv, j));
            std::swap(b[col], b[piv]);
        }
        for (std::size_t r = col + 1; r < n; ++r) {
            double f = a(r, col) / a(col, col);
            if (f == 0.0) continue;
            a(r, col) = 0.0;
            for (std::size_t j = col + 1; j < n; ++j) a(r, j) -= f * a(col, j);
            b[r] -= f * b[col];
        }
    }
    Vec x(n);
    for (std::size_t ii = n; ii-- > 0;) {
        double s = b[ii];
        for (std::size_t j = ii + 1; j < n; ++j) s -= a(ii, j) * x[j];
        x[ii] = s / a(ii, ii);
    }
    return x;
}

inline Mat inverse(const Mat& a) {
    const std::size_t n = a.rows();
    if (a.cols() != n)
        throw argument_error("inverse: matrix must be square");
    Mat inv(n, n);
    for (std::size_t c = 0; c < n; ++c) {
        Vec e(n, 0.0);
        e[c] = 1.0;
        Vec col = solve(a, e);
        for (std::size_t r = 0; r < n; ++r) inv(r, c) = col[r];
    }
    return inv;
}

// Attempt a Cholesky factorization; returns false if the matrix is not
// positive definite (within floating-point judgement).
inline bool is_positive_definite(const Mat& a) {
    const std::size_t n = a.rows();
    if (a.cols() != n) return false;
    Mat l(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double s = a(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
            if (i == j) {
                if (s <= 0.0 || !std::isfinite(s)) return false;
                l(i, i) = std::sqrt(s);
            } else {
                l(i, j) = s / l(j, j);
            }
        }
    }
    return true;
}

inline double symmetry_defect(const Mat& a) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = i + 1; j < a.cols(); ++j)
            d = std::max(d, std::abs(a(i, j) - a(j, i)));
    return d;
}

} // namespace reeblab
