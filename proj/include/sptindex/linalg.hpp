// Copyright 2026 The sptindex Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <cstddef>
#include <limits>
#include <random>

#include <Eigen/Dense>

#include "sptindex/errors.hpp"

namespace sptindex {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Numerical thresholds shared by the MPS and index layers.
///
/// Ordering: eig < unitary < proj < snap threshold 1/(2|G|).
struct Tolerances {
    double eig = 1e-10;
    double unitary = 1e-8;
    double proj = 1e-6;
    double rep = 1e-8;
    double gap = 1e-8;
    double herm = 1e-10;
    int max_iter = 10000;
};

inline double max_abs(const Matrix &m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

inline double unitarity_defect(const Matrix &m) {
    if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
    return max_abs(m.adjoint() * m - Matrix::Identity(m.rows(), m.cols()));
}

inline bool is_unitary(const Matrix &m, double tol) { return unitarity_defect(m) <= tol; }

inline Matrix kron(const Matrix &a, const Matrix &b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

/// Unitary factor of the polar decomposition.
inline Matrix nearest_unitary(const Matrix &m) {
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return svd.matrixU() * svd.matrixV().adjoint();
}

/// Largest singular value.
inline double operator_norm(const Matrix &m) {
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues()(0);
}

/// exp(i t H) for hermitian H.
inline Matrix expi_hermitian(const Matrix &h, double t = 1.0) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    const Eigen::VectorXcd phases =
        (es.eigenvalues().cast<Complex>() * Complex(0.0, t)).array().exp().matrix();
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

/// Haar-random unitary via QR of a complex Gaussian matrix.
template <class Rng>
Matrix random_unitary(Eigen::Index n, Rng &rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix z(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) z(i, j) = Complex(normal(rng), normal(rng));
    Eigen::HouseholderQR<Matrix> qr(z);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < n; ++j) {
        const double a = std::abs(r(j, j));
        if (a > 0) q.col(j) *= r(j, j) / a;
    }
    return q;
}

template <class Rng>
Matrix random_hermitian(Eigen::Index n, Rng &rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix z(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) z(i, j) = Complex(normal(rng), normal(rng));
    return (z + z.adjoint()) / 2.0;
}

/// Deterministic dense start vector for iterative eigensolvers.
inline Matrix seeded_start(Eigen::Index rows, Eigen::Index cols) {
    std::mt19937_64 rng(0x5eed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = Complex(1.0 + u(rng), u(rng));
    return m / m.norm();
}

}  // namespace sptindex
