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

#include <cmath>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "sptindex/errors.hpp"
#include "sptindex/group.hpp"
#include "sptindex/linalg.hpp"

namespace sptindex {

/// On-site symmetry: a unitary representation g -> U(g) on C^d.
class OnSiteAction {
   public:
    /// Validates unitarity and the representation property U(g)U(h) = U(gh).
    OnSiteAction(FiniteGroup group, std::vector<Matrix> matrices, const Tolerances &tol = {})
        : group_(std::move(group)), matrices_(std::move(matrices)) {
        if (matrices_.size() != group_.order()) {
            throw InvalidArgument("action needs one matrix per group element");
        }
        const auto d = matrices_[0].rows();
        for (const auto &u : matrices_) {
            if (u.rows() != d || u.cols() != d) throw InvalidArgument("action matrices must be square of equal size");
        }
        // Large actions are checked on random probe vectors instead of full products.
        const bool probe = d > 64;
        Matrix v;
        if (probe) {
            v = seeded_start(d, 2);
            v.colwise().normalize();
        }
        for (std::size_t g = 0; g < matrices_.size(); ++g) {
            const auto &u = matrices_[g];
            const bool unitary = probe ? max_abs(u.adjoint() * (u * v) - v) <= tol.unitary : is_unitary(u, tol.unitary);
            if (!unitary) {
                throw InvalidArgument("action matrix for element " + std::to_string(g) + " is not unitary");
            }
        }
        if (max_abs(matrices_[group_.identity()] - Matrix::Identity(d, d)) > tol.rep) {
            throw InvalidArgument("action of the identity element is not the identity matrix");
        }
        std::vector<Matrix> images;
        if (probe) {
            for (const auto &u : matrices_) images.push_back(u * v);
        }
        for (Element g = 0; g < group_.order(); ++g) {
            for (Element h = 0; h < group_.order(); ++h) {
                const double defect = probe ? max_abs(matrices_[g] * images[h] - images[group_.mul(g, h)])
                                            : max_abs(matrices_[g] * matrices_[h] - matrices_[group_.mul(g, h)]);
                if (defect > tol.rep) {
                    throw InvalidArgument("action is not a representation at (" + std::to_string(g) + "," +
                                          std::to_string(h) + ")");
                }
            }
        }
    }

    const FiniteGroup &group() const { return group_; }
    Eigen::Index dim() const { return matrices_[0].rows(); }
    const Matrix &operator()(Element g) const { return matrices_[g]; }
    const std::vector<Matrix> &matrices() const { return matrices_; }

   private:
    FiniteGroup group_;
    std::vector<Matrix> matrices_;
};

inline OnSiteAction trivial_action(const FiniteGroup &group, Eigen::Index d) {
    return OnSiteAction(group, std::vector<Matrix>(group.order(), Matrix::Identity(d, d)));
}

/// U(g) = U_a(g) (x) U_b(g).
inline OnSiteAction tensor_action(const OnSiteAction &a, const OnSiteAction &b) {
    if (!(a.group() == b.group())) throw InvalidArgument("actions of different groups");
    std::vector<Matrix> m;
    for (Element g = 0; g < a.group().order(); ++g) m.push_back(kron(a(g), b(g)));
    return OnSiteAction(a.group(), std::move(m));
}

inline OnSiteAction tensor_power(const OnSiteAction &a, int k) {
    if (k < 1) throw InvalidArgument("tensor power needs k >= 1");
    OnSiteAction out = a;
    for (int i = 1; i < k; ++i) out = tensor_action(out, a);
    return out;
}

/// Z_n acting diagonally: U(g) = diag(exp(2 pi i g q_j / n)).
inline OnSiteAction diagonal_zn_action(std::size_t n, const std::vector<long> &charges) {
    const auto group = make_cyclic(n);
    std::vector<Matrix> m;
    for (std::size_t g = 0; g < n; ++g) {
        Matrix u = Matrix::Zero(charges.size(), charges.size());
        for (std::size_t j = 0; j < charges.size(); ++j) {
            const long q = ((charges[j] * static_cast<long>(g)) % static_cast<long>(n) + n) % n;
            u(j, j) = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(q) / static_cast<double>(n));
        }
        m.push_back(u);
    }
    return OnSiteAction(group, std::move(m));
}

/// pi-rotations of a spin-1 in the basis (S_z = +1, 0, -1), as a
/// representation of Z2xZ2 with (1,0) -> R_x, (0,1) -> R_z, (1,1) -> R_y.
inline OnSiteAction spin1_rotations_z2z2() {
    Matrix rx = Matrix::Zero(3, 3), rz = Matrix::Zero(3, 3);
    rx(0, 2) = rx(2, 0) = rx(1, 1) = -1.0;
    rz(0, 0) = rz(2, 2) = -1.0;
    rz(1, 1) = 1.0;
    const auto group = direct_product(make_cyclic(2), make_cyclic(2));
    return OnSiteAction(group, {Matrix::Identity(3, 3), rz, rx, rx * rz});
}

/// Z2xZ2 acting on two qubits by X^i (x) X^j for element (i, j).
inline OnSiteAction two_qubit_flips_z2z2() {
    Matrix x(2, 2);
    x << 0, 1, 1, 0;
    const Matrix id = Matrix::Identity(2, 2);
    const auto group = direct_product(make_cyclic(2), make_cyclic(2));
    return OnSiteAction(group, {kron(id, id), kron(id, x), kron(x, id), kron(x, x)});
}

}  // namespace sptindex
