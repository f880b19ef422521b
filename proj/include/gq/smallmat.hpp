#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "gq/dual.hpp"

namespace gq {

inline double value_of(const std::complex<double>& z) { return std::abs(z); }

/// Dense row-major matrix over a small scalar-like type (double, complex,
/// dual).  Sized for the (n+1) x (n+1) and 2n x 2n workloads of this repo;
/// no attempt at large-scale performance.
template <typename T>
class Mat {
public:
    Mat() = default;
    Mat(std::size_t r, std::size_t c) : rows_(r), cols_(c), d_(r * c, T(0.0)) {}

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1.0);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return d_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return d_[i * cols_ + j]; }

    friend Mat operator+(const Mat& a, const Mat& b) {
        Mat r(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.d_.size(); ++i) r.d_[i] = a.d_[i] + b.d_[i];
        return r;
    }
    friend Mat operator-(const Mat& a, const Mat& b) {
        Mat r(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.d_.size(); ++i) r.d_[i] = a.d_[i] - b.d_[i];
        return r;
    }
    friend Mat operator*(const Mat& a, const Mat& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("Mat: size mismatch in product");
        Mat r(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T aik = a(i, k);
                for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
            }
        return r;
    }
    friend Mat operator*(const T& s, const Mat& a) {
        Mat r(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.d_.size(); ++i) r.d_[i] = s * a.d_[i];
        return r;
    }

    Mat transpose() const {
        Mat r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    T trace() const {
        T t(0.0);
        for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
        return t;
    }

    std::vector<T> apply(const std::vector<T>& v) const {
        std::vector<T> r(rows_, T(0.0));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
        return r;
    }

    /// Gauss-Jordan inverse with partial pivoting on the value part.
    Mat inverse() const {
        const std::size_t n = rows_;
        Mat a = *this;
        Mat inv = identity(n);
        for (std::size_t col = 0; col < n; ++col) {
            std::size_t piv = col;
            double best = std::abs(value_of(a(col, col)));
            for (std::size_t r = col + 1; r < n; ++r) {
                const double v = std::abs(value_of(a(r, col)));
                if (v > best) {
                    best = v;
                    piv = r;
                }
            }
            if (best == 0.0) throw std::domain_error("Mat: singular matrix in inverse");
            if (piv != col) {
                for (std::size_t j = 0; j < n; ++j) {
                    std::swap(a(col, j), a(piv, j));
                    std::swap(inv(col, j), inv(piv, j));
                }
            }
            const T d = a(col, col);
            for (std::size_t j = 0; j < n; ++j) {
                a(col, j) /= d;
                inv(col, j) /= d;
            }
            for (std::size_t r = 0; r < n; ++r) {
                if (r == col) continue;
                const T f = a(r, col);
                if (value_of(f) == 0.0) continue;
                for (std::size_t j = 0; j < n; ++j) {
                    a(r, j) -= f * a(col, j);
                    inv(r, j) -= f * inv(col, j);
                }
            }
        }
        return inv;
    }

    /// LU determinant with partial pivoting on the value part.
    T det() const {
        const std::size_t n = rows_;
        Mat a = *this;
        T d(1.0);
        for (std::size_t col = 0; col < n; ++col) {
            std::size_t piv = col;
            double best = std::abs(value_of(a(col, col)));
            for (std::size_t r = col + 1; r < n; ++r) {
                const double v = std::abs(value_of(a(r, col)));
                if (v > best) {
                    best = v;
                    piv = r;
                }
            }
            if (best == 0.0) return T(0.0);
            if (piv != col) {
                for (std::size_t j = 0; j < n; ++j) std::swap(a(col, j), a(piv, j));
                d = -d;
            }
            d *= a(col, col);
            for (std::size_t r = col + 1; r < n; ++r) {
                const T f = a(r, col) / a(col, col);
                for (std::size_t j = col; j < n; ++j) a(r, j) -= f * a(col, j);
            }
        }
        return d;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<T> d_;
};

/// Pfaffian of an antisymmetric matrix by expansion along the first row;
/// polynomial in the entries, hence differentiable through dual scalars.
template <typename T>
T pfaffian(const Mat<T>& m) {
    const std::size_t n = m.rows();
    if (n % 2 == 1) return T(0.0);
    if (n == 0) return T(1.0);
    if (n == 2) return m(0, 1);
    T acc(0.0);
    double sign = 1.0;
    for (std::size_t j = 1; j < n; ++j) {
        Mat<T> sub(n - 2, n - 2);
        std::size_t ri = 0;
        for (std::size_t r = 1; r < n; ++r) {
            if (r == j) continue;
            std::size_t ci = 0;
            for (std::size_t c = 1; c < n; ++c) {
                if (c == j) continue;
                sub(ri, ci) = m(r, c);
                ++ci;
            }
            ++ri;
        }
        acc += T(sign) * m(0, j) * pfaffian(sub);
        sign = -sign;
    }
    return acc;
}

using CMat = Mat<std::complex<double>>;
using RMat = Mat<double>;

inline CMat adjoint(const CMat& a) {
    CMat r(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(j, i) = std::conj(a(i, j));
    return r;
}

inline double frobenius_norm(const CMat& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

inline double max_abs(const CMat& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) s = std::max(s, std::abs(a(i, j)));
    return s;
}

inline double max_abs(const RMat& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) s = std::max(s, std::abs(a(i, j)));
    return s;
}

/// exp(A) by scaling and squaring with a truncated series; adequate for the
/// small well-scaled generators used here.
inline CMat expm(const CMat& a) {
    const std::size_t n = a.rows();
    double nrm = frobenius_norm(a);
    int squarings = 0;
    CMat b = a;
    while (nrm > 0.5) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) b(i, j) *= 0.5;
        nrm *= 0.5;
        ++squarings;
    }
    CMat result = CMat::identity(n);
    CMat term = CMat::identity(n);
    for (int k = 1; k <= 24; ++k) {
        term = term * b;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) term(i, j) /= double(k);
        result = result + term;
        if (frobenius_norm(term) < 1e-18) break;
    }
    for (int s = 0; s < squarings; ++s) result = result * result;
    return result;
}

} // namespace gq
