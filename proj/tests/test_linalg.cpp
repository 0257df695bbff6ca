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

#include <catch2/catch_amalgamated.hpp>

#include "test_support.hpp"

using namespace qrange;
using Catch::Approx;

namespace {

Matrix sym_to_dense(const SymMatrix& a) { return a.dense(); }

double eigenpair_residual(const SymMatrix& a, const EigenDecomposition& e) {
    const std::size_t n = e.eigenvalues.size();
    const Matrix ad = a.dense();
    double worst = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            double av = 0.0;
            for (std::size_t j = 0; j < n; ++j) av += ad(i, j) * e.eigenvectors(j, k);
            worst = std::max(worst,
                             std::abs(av - e.eigenvalues[k] * e.eigenvectors(i, k)));
        }
    }
    return worst;
}

double orthonormality_defect(const Matrix& v) {
    const Matrix g = matmul(transposed(v), v);
    double worst = 0.0;
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = 0; j < g.cols(); ++j)
            worst = std::max(worst, std::abs(g(i, j) - (i == j ? 1.0 : 0.0)));
    return worst;
}

}  // namespace

TEST_CASE("vector helpers validate lengths") {
    Vec a{1.0, 2.0}, b{1.0, 2.0, 3.0};
    CHECK_THROWS_AS(dot(a, b), DimensionMismatch);
    CHECK_THROWS_AS(sub(a, b), DimensionMismatch);
    CHECK(dot(a, a) == Approx(5.0));
    CHECK(norm2(Vec{3.0, 4.0}) == Approx(5.0));
}

TEST_CASE("matrix products validate shapes") {
    Matrix a(2, 3), b(2, 2);
    CHECK_THROWS_AS(matmul(a, a), DimensionMismatch);
    CHECK_THROWS_AS(matvec(a, Vec{1.0, 2.0}), DimensionMismatch);
    CHECK_NOTHROW(matmul(a, transposed(a)));
    CHECK(matmul(b, Matrix::identity(2)).rows() == 2);
}

TEST_CASE("jacobi diagonalizes a hand-computed 2x2") {
    SymMatrix a(2);
    a.set(0, 0, 2.0);
    a.set(1, 1, 2.0);
    a.set(0, 1, 1.0);
    const EigenDecomposition e = eig_sym(a);
    // Spectrum of [[2,1],[1,2]] is {3, 1} with eigenvectors (1,1) and (1,-1).
    CHECK(e.eigenvalues[0] == Approx(3.0).margin(1e-14));
    CHECK(e.eigenvalues[1] == Approx(1.0).margin(1e-14));
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    CHECK(e.eigenvectors(0, 0) == Approx(inv_sqrt2).margin(1e-14));
    CHECK(e.eigenvectors(1, 0) == Approx(inv_sqrt2).margin(1e-14));
    CHECK(e.eigenvectors(0, 1) == Approx(inv_sqrt2).margin(1e-14));
    CHECK(e.eigenvectors(1, 1) == Approx(-inv_sqrt2).margin(1e-14));
}

TEST_CASE("jacobi matches the closed-form 3x3 spectrum") {
    Rng rng(20260301);
    double worst = 0.0;
    for (int iter = 0; iter < 1000; ++iter) {
        const SymMatrix a = qtest::random_symmetric(rng, 3);
        const EigenDecomposition e = eig_sym(a);
        const auto ref = qtest::eig3_closed(a);
        for (int k = 0; k < 3; ++k)
            worst = std::max(worst, std::abs(e.eigenvalues[k] - ref[k]));
        CHECK(eigenpair_residual(a, e) < 1e-13);
        CHECK(orthonormality_defect(e.eigenvectors) < 1e-13);
    }
    CHECK(worst < 1e-13);
}

TEST_CASE("jacobi sorts descending and fixes eigenvector signs") {
    Rng rng(7);
    for (int iter = 0; iter < 50; ++iter) {
        const std::size_t n = 2 + static_cast<std::size_t>(rng.uniform(0.0, 7.0));
        const EigenDecomposition e = eig_sym(qtest::random_symmetric(rng, n));
        for (std::size_t k = 1; k < n; ++k)
            CHECK(e.eigenvalues[k - 1] >= e.eigenvalues[k]);
        for (std::size_t k = 0; k < n; ++k) {
            std::size_t arg = 0;
            for (std::size_t i = 1; i < n; ++i)
                if (std::abs(e.eigenvectors(i, k)) > std::abs(e.eigenvectors(arg, k)))
                    arg = i;
            CHECK(e.eigenvectors(arg, k) > 0.0);
        }
    }
}

TEST_CASE("jacobi reconstructs the input at every supported size") {
    Rng rng(99);
    for (std::size_t n = 1; n <= kMaxDim; ++n) {
        const SymMatrix a = qtest::random_symmetric(rng, n);
        const EigenDecomposition e = eig_sym(a);
        Matrix rec(n, n);
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    rec(i, j) += e.eigenvalues[k] * e.eigenvectors(i, k) *
                                 e.eigenvectors(j, k);
        CHECK(max_abs_diff(rec, sym_to_dense(a)) < 1e-12 * static_cast<double>(n));
    }
}

TEST_CASE("jacobi handles diagonal input and extreme scales") {
    SymMatrix d(3);
    d.set(0, 0, -1.0);
    d.set(1, 1, 5.0);
    d.set(2, 2, 2.0);
    const EigenDecomposition e = eig_sym(d);
    CHECK(e.eigenvalues[0] == 5.0);
    CHECK(e.eigenvalues[1] == 2.0);
    CHECK(e.eigenvalues[2] == -1.0);

    for (const double scale : {1e100, 1e-100}) {
        SymMatrix a(2);
        a.set(0, 0, 2.0 * scale);
        a.set(1, 1, 2.0 * scale);
        a.set(0, 1, 1.0 * scale);
        const EigenDecomposition es = eig_sym(a);
        CHECK(es.eigenvalues[0] / scale == Approx(3.0).margin(1e-13));
        CHECK(es.eigenvalues[1] / scale == Approx(1.0).margin(1e-13));
    }
}

TEST_CASE("eig_sym rejects unsupported dimensions") {
    CHECK_THROWS_AS(eig_sym(SymMatrix(0)), DimensionMismatch);
    CHECK_THROWS_AS(eig_sym(SymMatrix(kMaxDim + 1)), DimensionMismatch);
}

TEST_CASE("pseudoinverse satisfies the Penrose identities") {
    Rng rng(123456);
    int kept = 0;
    for (int iter = 0; iter < 1000; ++iter) {
        const std::size_t n = 1 + static_cast<std::size_t>(rng.uniform(0.0, 8.0));
        const std::size_t r = static_cast<std::size_t>(rng.uniform(0.0, double(n) + 1.0));
        const SymMatrix a = qtest::random_psd(rng, n, r);
        const EigenDecomposition e = eig_sym(a);
        // Skip draws whose smallest retained eigenvalue makes the identities
        // meaningless at double precision; the property itself is unchanged.
        const double lmax = std::max(e.eigenvalues.empty() ? 0.0 : e.eigenvalues[0], 0.0);
        bool ill = false;
        for (double l : e.eigenvalues)
            if (l > 1e-10 * lmax && l < 1e-5 * lmax) ill = true;
        if (ill) continue;
        ++kept;

        const PseudoInverse pi = pinv_sym(a, e);
        const Matrix ad = a.dense();
        const Matrix pd = pi.pinv.dense();
        const Matrix apa = matmul(ad, matmul(pd, ad));
        const Matrix pap = matmul(pd, matmul(ad, pd));
        const Matrix ap = matmul(ad, pd);
        const Matrix pa = matmul(pd, ad);

        const double sa = std::max(1.0, max_abs(ad));
        const double sp = std::max(1.0, max_abs(pd));
        CHECK(max_abs_diff(apa, ad) < 1e-9 * sa);
        CHECK(max_abs_diff(pap, pd) < 1e-9 * sp);
        CHECK(max_abs_diff(ap, transposed(ap)) < 1e-10 * std::max(1.0, sa * sp));
        CHECK(max_abs_diff(ap, pa) < 1e-10 * std::max(1.0, sa * sp));
    }
    CHECK(kept > 600);
}

TEST_CASE("rank detection and kernel projector on a known spectrum") {
    // A = 2 v1 v1^T + 1 v2 v2^T on orthonormal v1, v2 in R^5.
    const std::size_t n = 5;
    Vec v1{1, 1, 1, 1, 1}, v2{1, -1, 1, -1, 0};
    for (double& x : v1) x /= std::sqrt(5.0);
    for (double& x : v2) x /= 2.0;
    SymMatrix a(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            a.set(i, j, 2.0 * v1[i] * v1[j] + v2[i] * v2[j]);

    const PseudoInverse pi = pinv_sym(a, eig_sym(a));
    CHECK(pi.rank == 2);

    SymMatrix expected_pinv(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            expected_pinv.set(i, j, 0.5 * v1[i] * v1[j] + v2[i] * v2[j]);
    CHECK(max_abs_diff(pi.pinv.dense(), expected_pinv.dense()) < 1e-12);

    // The kernel projector annihilates the range and is idempotent.
    const Matrix kp = pi.kernel_projector.dense();
    const Vec kv1 = matvec(kp, v1);
    const Vec kv2 = matvec(kp, v2);
    CHECK(norm2(kv1) < 1e-12);
    CHECK(norm2(kv2) < 1e-12);
    CHECK(max_abs_diff(matmul(kp, kp), kp) < 1e-12);
    double tr = 0.0;
    for (std::size_t i = 0; i < n; ++i) tr += kp(i, i);
    CHECK(tr == Approx(3.0).margin(1e-12));
}

TEST_CASE("pinv_sym rejects indefinite matrices but tolerates rounding dirt") {
    SymMatrix bad(2);
    bad.set(0, 0, 1.0);
    bad.set(1, 1, -1e-6);
    CHECK_THROWS_AS(pinv_sym(bad, eig_sym(bad)), NotPSD);

    SymMatrix dirt(2);
    dirt.set(0, 0, 1.0);
    dirt.set(1, 1, -1e-12);  // within the negativity allowance: treated as zero
    const PseudoInverse pi = pinv_sym(dirt, eig_sym(dirt));
    CHECK(pi.rank == 1);
    CHECK(pi.pinv(1, 1) == 0.0);
}

TEST_CASE("pinv_sym edge cases: zero and identity") {
    const SymMatrix zero(4);
    const PseudoInverse pz = pinv_sym(zero, eig_sym(zero));
    CHECK(pz.rank == 0);
    CHECK(max_abs(pz.pinv.dense()) == 0.0);
    CHECK(max_abs_diff(pz.kernel_projector.dense(), Matrix::identity(4)) < 1e-15);

    const SymMatrix id = SymMatrix::symmetrized(Matrix::identity(3));
    const PseudoInverse pid = pinv_sym(id, eig_sym(id));
    CHECK(pid.rank == 3);
    CHECK(max_abs_diff(pid.pinv.dense(), Matrix::identity(3)) < 1e-14);
    CHECK(max_abs(pid.kernel_projector.dense()) < 1e-14);
}

TEST_CASE("lambda_max_qubit matches the 2x2 Hermitian spectrum") {
    Rng rng(31);
    for (int iter = 0; iter < 200; ++iter) {
        const double a = rng.uniform(-2.0, 2.0);
        const Vec3 b = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0),
                        rng.uniform(-1.0, 1.0)};
        const auto [hi, lo] = qtest::herm2_eigs(bloch_to_matrix(a, b));
        CHECK(lambda_max_qubit(a, b) == Approx(hi).margin(1e-13));
        CHECK(a - norm3(b) == Approx(lo).margin(1e-13));
    }
}
