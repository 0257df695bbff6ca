// Copyright 2026 The qrange Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Small dense linear algebra for symmetric matrices up to 16x16: cyclic Jacobi
// eigendecomposition and an eigenvalue-filtered Moore-Penrose pseudoinverse.
// Everything is value-semantic and safe to share across threads.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <vector>

#include "qrange/error.hpp"

namespace qrange {

using Vec = std::vector<double>;
using Vec3 = std::array<double, 3>;

// Largest supported matrix dimension (outcome count).
inline constexpr std::size_t kMaxDim = 16;

//------------------------------------------------------------------------
// vector helpers
//------------------------------------------------------------------------

inline double dot(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw DimensionMismatch("dot: length mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

inline double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

inline Vec sub(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw DimensionMismatch("sub: length mismatch");
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

inline double dot3(const Vec3& a, const Vec3& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline double norm3(const Vec3& a) { return std::sqrt(dot3(a, a)); }

inline Vec3 add3(const Vec3& a, const Vec3& b) {
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}

inline Vec3 sub3(const Vec3& a, const Vec3& b) {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

inline Vec3 scale3(const Vec3& a, double c) { return {c * a[0], c * a[1], c * a[2]}; }

//------------------------------------------------------------------------
// dense row-major matrix
//------------------------------------------------------------------------

class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), d_(rows * cols, fill) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return d_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return d_[i * cols_ + j]; }

    std::span<const double> row(std::size_t i) const {
        return {d_.data() + i * cols_, cols_};
    }
    std::span<double> row(std::size_t i) { return {d_.data() + i * cols_, cols_}; }

    const std::vector<double>& data() const { return d_; }

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<double> d_;
};

inline Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw DimensionMismatch("matmul: shape mismatch");
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

inline Vec matvec(const Matrix& a, std::span<const double> x) {
    if (a.cols() != x.size()) throw DimensionMismatch("matvec: shape mismatch");
    Vec y(a.rows(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) y[i] = dot(a.row(i), x);
    return y;
}

inline Matrix transposed(const Matrix& a) {
    Matrix t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
    return t;
}

inline double max_abs(const Matrix& a) {
    double m = 0.0;
    for (double v : a.data()) m = std::max(m, std::abs(v));
    return m;
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionMismatch("max_abs_diff: shape mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            m = std::max(m, std::abs(a(i, j) - b(i, j)));
    return m;
}

inline double frobenius(const Matrix& a) {
    double s = 0.0;
    for (double v : a.data()) s += v * v;
    return std::sqrt(s);
}

//------------------------------------------------------------------------
// symmetric matrix with exactly mirrored storage
//------------------------------------------------------------------------

class SymMatrix {
  public:
    SymMatrix() = default;
    explicit SymMatrix(std::size_t n) : n_(n), d_(n * n, 0.0) {
        if (n < 1 || n > kMaxDim) throw DimensionMismatch("SymMatrix: dimension out of range");
    }

    // (M + M^T) / 2, entry by entry, so both triangles agree bit for bit.
    static SymMatrix symmetrized(const Matrix& m) {
        if (m.rows() != m.cols()) throw DimensionMismatch("symmetrized: matrix not square");
        SymMatrix s(m.rows());
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = i; j < m.cols(); ++j)
                s.set(i, j, 0.5 * (m(i, j) + m(j, i)));
        return s;
    }

    static SymMatrix identity(std::size_t n) {
        SymMatrix s(n);
        for (std::size_t i = 0; i < n; ++i) s.set(i, i, 1.0);
        return s;
    }

    std::size_t size() const { return n_; }

    double operator()(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }

    void set(std::size_t i, std::size_t j, double v) {
        d_[i * n_ + j] = v;
        d_[j * n_ + i] = v;
    }

    Matrix dense() const {
        Matrix m(n_, n_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) m(i, j) = (*this)(i, j);
        return m;
    }

  private:
    std::size_t n_ = 0;
    std::vector<double> d_;
};

inline Vec matvec(const SymMatrix& a, std::span<const double> x) {
    if (a.size() != x.size()) throw DimensionMismatch("matvec: shape mismatch");
    Vec y(a.size(), 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < a.size(); ++j) acc += a(i, j) * x[j];
        y[i] = acc;
    }
    return y;
}

//------------------------------------------------------------------------
// cyclic Jacobi eigendecomposition
//------------------------------------------------------------------------

struct EigenDecomposition {
    Vec eigenvalues;      // descending
    Matrix eigenvectors;  // orthonormal columns, column k pairs with eigenvalues[k]
};

// Full eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
// Sweeps until the off-diagonal Frobenius norm falls below 1e-14 * ||A||_F,
// capped at 50 sweeps (quadratic convergence makes the cap generous for
// n <= 16). Eigenvalues are sorted descending; each eigenvector's sign is
// fixed so its largest-magnitude entry is positive, which makes the output
// deterministic for identical input bits.
inline EigenDecomposition eig_sym(const SymMatrix& A) {
    const std::size_t n = A.size();
    if (n < 1 || n > kMaxDim) throw DimensionMismatch("eig_sym: dimension out of range");

    Matrix a = A.dense();
    Matrix v = Matrix::identity(n);

    const double stop = 1e-14 * frobenius(a);
    auto off_norm = [&]() {
        double s = 0.0;
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) s += 2.0 * a(p, q) * a(p, q);
        return std::sqrt(s);
    };

    int sweeps = 0;
    while (off_norm() > stop) {
        if (++sweeps > 50) throw ConvergenceFailure("eig_sym: sweep limit exceeded");
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                // Rotation angle that annihilates a(p,q); the smaller root of
                // t^2 + 2*tau*t - 1 = 0 keeps |theta| <= pi/4 and the update stable.
                const double tau = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (tau >= 0.0) ? 1.0 / (tau + std::hypot(1.0, tau))
                                              : 1.0 / (tau - std::hypot(1.0, tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                a(p, p) -= t * apq;
                a(q, q) += t * apq;
                a(p, q) = a(q, p) = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = a(p, k) = c * akp - s * akq;
                    a(k, q) = a(q, k) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });

    EigenDecomposition out{Vec(n), Matrix(n, n)};
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t src = order[k];
        out.eigenvalues[k] = a(src, src);
        std::size_t imax = 0;
        for (std::size_t i = 1; i < n; ++i)
            if (std::abs(v(i, src)) > std::abs(v(imax, src))) imax = i;
        const double sign = (v(imax, src) < 0.0) ? -1.0 : 1.0;
        for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = sign * v(i, src);
    }
    return out;
}

//------------------------------------------------------------------------
// pseudoinverse of a positive semidefinite matrix
//------------------------------------------------------------------------

struct PseudoInverse {
    SymMatrix pinv;
    SymMatrix kernel_projector;  // identity - pinv * A, symmetrized
    std::size_t rank = 0;
};

// Moore-Penrose pseudoinverse via the eigendecomposition. Eigenvalues above
// rel_tol * lambda_max are inverted; the rest are treated as an exact kernel.
// Mildly negative eigenvalues (down to -10 * rel_tol * lambda_max) are
// tolerated as roundoff and clamped to zero; anything lower throws NotPSD.
inline PseudoInverse pinv_sym(const SymMatrix& A, const EigenDecomposition& eig,
                              double rel_tol = 1e-10) {
    const std::size_t n = A.size();
    const double lmax = eig.eigenvalues.empty() ? 0.0 : std::max(eig.eigenvalues.front(), 0.0);
    const double thr = rel_tol * lmax;

    for (double lam : eig.eigenvalues)
        if (lam < -10.0 * thr)
            throw NotPSD("pinv_sym: eigenvalue " + std::to_string(lam) + " below PSD tolerance");

    PseudoInverse out;
    out.pinv = SymMatrix(n);
    std::size_t rank = 0;
    for (std::size_t k = 0; k < n; ++k)
        if (eig.eigenvalues[k] > thr) ++rank;
    out.rank = rank;

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < rank; ++k)
                acc += eig.eigenvectors(i, k) * eig.eigenvectors(j, k) / eig.eigenvalues[k];
            out.pinv.set(i, j, acc);
        }
    }

    Matrix pa = matmul(out.pinv.dense(), A.dense());
    Matrix kp(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) kp(i, j) = (i == j ? 1.0 : 0.0) - pa(i, j);
    out.kernel_projector = SymMatrix::symmetrized(kp);
    return out;
}

inline PseudoInverse pinv_sym(const SymMatrix& A, double rel_tol = 1e-10) {
    return pinv_sym(A, eig_sym(A), rel_tol);
}

//------------------------------------------------------------------------

// Largest eigenvalue of the 2x2 Hermitian operator a*I + b.sigma.
inline double lambda_max_qubit(double a, const Vec3& b) { return a + norm3(b); }

}  // namespace qrange
