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

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "sptindex/action.hpp"
#include "sptindex/errors.hpp"
#include "sptindex/group.hpp"
#include "sptindex/linalg.hpp"

namespace sptindex {

/// Translation-invariant matrix-product state given by one site tensor:
/// d matrices A^i of size D x D. The state on N sites has coefficients
/// tr(A^{i_1} ... A^{i_N}).
class UniformMPS {
   public:
    UniformMPS(std::vector<Matrix> tensors, std::string label = "mps", int sites_per_cell = 1)
        : tensors_(std::move(tensors)), label_(std::move(label)), sites_per_cell_(sites_per_cell) {
        if (tensors_.empty()) throw InvalidArgument("MPS needs at least one physical level");
        const auto bond = tensors_[0].rows();
        if (bond == 0) throw InvalidArgument("MPS bond dimension must be positive");
        for (const auto &a : tensors_) {
            if (a.rows() != bond || a.cols() != bond) throw InvalidArgument("MPS tensors must be square of equal size");
        }
        if (sites_per_cell_ < 1) throw InvalidArgument("sites per cell must be positive");
    }

    Eigen::Index d() const { return static_cast<Eigen::Index>(tensors_.size()); }
    Eigen::Index bond_dim() const { return tensors_[0].rows(); }
    const std::vector<Matrix> &tensors() const { return tensors_; }
    const Matrix &operator[](Eigen::Index i) const { return tensors_[i]; }
    const std::string &label() const { return label_; }
    /// Number of original lattice sites in one unit cell (grows under blocking).
    int sites_per_cell() const { return sites_per_cell_; }

    /// Set by canonicalize: right-canonical gauge with spectral radius 1.
    bool is_canonical() const { return canonical_; }
    /// Smallest blocking length at which the blocked tensors span all D x D
    /// matrices, when found.
    std::optional<int> injectivity_length() const { return injectivity_length_; }

   private:
    friend UniformMPS canonicalize(const UniformMPS &, const Tolerances &);

    std::vector<Matrix> tensors_;
    std::string label_;
    int sites_per_cell_ = 1;
    bool canonical_ = false;
    std::optional<int> injectivity_length_;
};

/// E(X) = sum_i A^i X A^i^dagger.
inline Matrix apply_transfer(const UniformMPS &s, const Matrix &x) {
    Matrix y = Matrix::Zero(x.rows(), x.cols());
    for (const auto &a : s.tensors()) y.noalias() += a * x * a.adjoint();
    return y;
}

/// Mixed transfer map X -> sum_{ij} U_ij A^j X A^i^dagger, the operator
/// sum_{ij} U_ij A^j (x) conj(A^i).
inline Matrix apply_mixed_transfer(const UniformMPS &s, const Matrix &u, const Matrix &x) {
    const auto d = s.d();
    Matrix y = Matrix::Zero(x.rows(), x.cols());
    for (Eigen::Index i = 0; i < d; ++i) {
        Matrix ua = Matrix::Zero(x.rows(), x.cols());
        for (Eigen::Index j = 0; j < d; ++j) {
            if (u(i, j) != Complex(0.0)) ua += u(i, j) * s[j];
        }
        y.noalias() += ua * x * s[i].adjoint();
    }
    return y;
}

/// Dense D^2 x D^2 transfer matrix acting on column-major vec(X).
inline Matrix transfer_matrix(const UniformMPS &s) {
    const auto bond = s.bond_dim();
    Matrix t = Matrix::Zero(bond * bond, bond * bond);
    for (const auto &a : s.tensors()) t += kron(a.conjugate(), a);
    return t;
}

/// Transfer eigenvalues sorted by decreasing modulus.
inline std::vector<Complex> transfer_spectrum(const UniformMPS &s) {
    Eigen::ComplexEigenSolver<Matrix> es(transfer_matrix(s), false);
    std::vector<Complex> ev(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    std::stable_sort(ev.begin(), ev.end(), [](Complex a, Complex b) { return std::abs(a) > std::abs(b); });
    return ev;
}

namespace detail {

/// Blocking length at which span{A^{i_1}...A^{i_L}} is all of M_D, or
/// nullopt if the span stops growing first.
inline std::optional<int> injectivity_length(const UniformMPS &s) {
    const auto bond = s.bond_dim();
    const Eigen::Index full = bond * bond;
    // Orthonormal basis of the current span, as columns of vec'd matrices.
    auto orthonormalize = [&](const Matrix &cols) {
        Eigen::ColPivHouseholderQR<Matrix> qr(cols);
        qr.setThreshold(1e-10);
        const auto rank = qr.rank();
        Matrix q = qr.householderQ();
        return Matrix(q.leftCols(rank));
    };
    Matrix gens(full, s.d());
    for (Eigen::Index i = 0; i < s.d(); ++i) gens.col(i) = s[i].reshaped();
    Matrix basis = orthonormalize(gens);
    for (int length = 1; length <= 2 * static_cast<int>(full) + 2; ++length) {
        if (basis.cols() == full) return length;
        Matrix next(full, basis.cols() * s.d());
        for (Eigen::Index b = 0; b < basis.cols(); ++b) {
            const Matrix x = basis.col(b).reshaped(bond, bond);
            for (Eigen::Index i = 0; i < s.d(); ++i) next.col(b * s.d() + i) = (x * s[i]).reshaped();
        }
        Matrix grown = orthonormalize(next);
        if (grown.cols() <= basis.cols() && length > 1) {
            // No growth: the span is stationary from here on.
            if (grown.cols() == basis.cols()) return std::nullopt;
        }
        basis = std::move(grown);
    }
    return std::nullopt;
}

}  // namespace detail

/// Rescales to spectral radius 1 and gauges to the right-canonical form
/// sum_i A^i A^i^dagger = 1.
///
/// Throws DegenerateTransfer when the leading transfer eigenvalue is not
/// unique in modulus or its fixed point is not full rank; such states are
/// not injective and carry no well-defined index here.
inline UniformMPS canonicalize(const UniformMPS &s, const Tolerances &tol = {}) {
    const auto bond = s.bond_dim();
    const Matrix t = transfer_matrix(s);
    Eigen::ComplexEigenSolver<Matrix> es(t, false);
    const auto &vals = es.eigenvalues();
    Eigen::Index lead = 0;
    for (Eigen::Index i = 1; i < vals.size(); ++i) {
        if (std::abs(vals(i)) > std::abs(vals(lead))) lead = i;
    }
    const double radius = std::abs(vals(lead));
    if (!(radius > 1e-300)) throw DegenerateTransfer("transfer operator is nilpotent");
    for (Eigen::Index i = 0; i < vals.size(); ++i) {
        if (i != lead && std::abs(vals(i)) > radius * (1.0 - tol.gap)) {
            std::ostringstream msg;
            msg << "leading transfer eigenvalue is degenerate: |" << vals(lead) << "| vs |" << vals(i) << "|";
            throw DegenerateTransfer(msg.str());
        }
    }

    // Inverse iteration for the fixed point.
    const Complex shift = vals(lead) * (1.0 + 1e-10);
    Eigen::PartialPivLU<Matrix> lu(t - shift * Matrix::Identity(t.rows(), t.cols()));
    Vector vec = seeded_start(t.rows(), 1);
    for (int it = 0; it < 3; ++it) {
        vec = lu.solve(vec);
        vec.normalize();
    }
    Matrix r = vec.reshaped(bond, bond);
    const Complex tr = r.trace();
    if (std::abs(tr) < 1e-300) throw DegenerateTransfer("right fixed point is traceless");
    r /= tr;
    r = (r + r.adjoint()).eval() / 2.0;
    Eigen::SelfAdjointEigenSolver<Matrix> rs(r);
    const double top = rs.eigenvalues().maxCoeff();
    if (rs.eigenvalues().minCoeff() <= 1e-12 * top) {
        throw DegenerateTransfer("right fixed point is not full rank");
    }
    const Eigen::VectorXd sq = rs.eigenvalues().cwiseSqrt();
    const Matrix x = rs.eigenvectors() * sq.cast<Complex>().asDiagonal() * rs.eigenvectors().adjoint();
    const Matrix xinv =
        rs.eigenvectors() * sq.cwiseInverse().cast<Complex>().asDiagonal() * rs.eigenvectors().adjoint();

    const double scale = 1.0 / std::sqrt(radius);
    std::vector<Matrix> out;
    for (const auto &a : s.tensors()) out.push_back(scale * xinv * a * x);

    // One refinement pass against accumulated rounding in the fixed point.
    UniformMPS result(std::move(out), s.label(), s.sites_per_cell());
    Matrix id = apply_transfer(result, Matrix::Identity(bond, bond));
    if (max_abs(id - Matrix::Identity(bond, bond)) > 1e-13) {
        Matrix fixed = Matrix::Identity(bond, bond);
        for (int it = 0; it < 200; ++it) {
            Matrix next = apply_transfer(result, fixed);
            next /= next.trace() / static_cast<double>(bond);
            const double change = max_abs(next - fixed);
            fixed = next;
            if (change < 1e-15) break;
        }
        Eigen::SelfAdjointEigenSolver<Matrix> fs((fixed + fixed.adjoint()) / 2.0);
        const Eigen::VectorXd fsq = fs.eigenvalues().cwiseSqrt();
        const Matrix fx = fs.eigenvectors() * fsq.cast<Complex>().asDiagonal() * fs.eigenvectors().adjoint();
        const Matrix fxinv =
            fs.eigenvectors() * fsq.cwiseInverse().cast<Complex>().asDiagonal() * fs.eigenvectors().adjoint();
        std::vector<Matrix> refined;
        for (const auto &a : result.tensors()) refined.push_back(fxinv * a * fx);
        const double norm = std::sqrt(std::abs(apply_transfer(UniformMPS(refined), Matrix::Identity(bond, bond)).trace()) /
                                      static_cast<double>(bond));
        for (auto &a : refined) a /= norm;
        result = UniformMPS(std::move(refined), s.label(), s.sites_per_cell());
    }
    result.canonical_ = true;
    result.injectivity_length_ = detail::injectivity_length(result);
    return result;
}

/// Leading eigenpair of the mixed transfer map for one group element.
struct MixedTransferLeading {
    /// Eigenvalue; modulus 1 for a symmetric state.
    Complex lambda;
    /// Virtual unitary with sum_j U_ij A^j = lambda V A^i V^dagger.
    Matrix v;
    /// max_i || sum_j U_ij A^j - lambda V A^i V^dagger ||_max.
    double residual = 0.0;
    int iterations = 0;
};

/// Power iteration for the leading eigenpair of the twisted transfer map of
/// U(g). The eigenvector is polar-projected to a unitary and gauge-fixed so
/// that the largest-magnitude entry of its first column is real positive.
inline MixedTransferLeading mixed_transfer_leading(const UniformMPS &s, const OnSiteAction &act, Element g,
                                                   const Tolerances &tol = {}) {
    if (!s.is_canonical()) throw InvalidArgument("mixed_transfer_leading needs a canonical MPS");
    if (act.dim() != s.d()) throw InvalidArgument("action dimension does not match the MPS physical dimension");
    if (g >= act.group().order()) throw InvalidArgument("group element out of range");
    const auto bond = s.bond_dim();
    const Matrix &u = act(g);

    // B^i = sum_j U_ij A^j, so the map is X -> sum_i B^i X A^i^dagger.
    std::vector<Matrix> twisted(s.d(), Matrix::Zero(bond, bond));
    for (Eigen::Index i = 0; i < s.d(); ++i)
        for (Eigen::Index j = 0; j < s.d(); ++j)
            if (u(i, j) != Complex(0.0)) twisted[i] += u(i, j) * s[j];
    auto apply = [&](const Matrix &x) {
        Matrix y = Matrix::Zero(bond, bond);
        for (Eigen::Index i = 0; i < s.d(); ++i) y.noalias() += twisted[i] * x * s[i].adjoint();
        return y;
    };

    Matrix x = seeded_start(bond, bond);
    Complex lambda = 0.0;
    double residual = 1.0;
    double log_growth = 0.0;
    int it = 0;
    const double target = tol.eig * 1e-2;
    for (; it < tol.max_iter; ++it) {
        const Matrix y = apply(x);
        lambda = (x.adjoint() * y).trace();
        residual = (y - lambda * x).norm();
        const double ny = y.norm();
        if (ny < 1e-300) {
            throw NotSymmetric("mixed transfer map annihilates the state for element " + std::to_string(g));
        }
        log_growth += std::log(ny);
        x = y / ny;
        if (residual < target) {
            ++it;
            break;
        }
    }
    if (residual >= target) {
        const double rate = std::exp(log_growth / std::max(it, 1));
        if (rate < 1.0 - tol.eig) {
            throw NotSymmetric("mixed transfer spectral radius " + std::to_string(rate) + " < 1 for element " +
                               std::to_string(g));
        }
        throw NoConvergence("power iteration did not converge for element " + std::to_string(g));
    }
    if (std::abs(lambda) < 1.0 - tol.eig) {
        std::ostringstream msg;
        msg << "state is not invariant under element " << g << ": |lambda| = " << std::abs(lambda);
        throw NotSymmetric(msg.str());
    }

    Matrix v = nearest_unitary(x);
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < bond; ++i) {
        if (std::abs(v(i, 0)) > std::abs(v(best, 0)) + 1e-12) best = i;
    }
    v *= std::conj(v(best, 0)) / std::abs(v(best, 0));

    double res = 0.0;
    for (Eigen::Index i = 0; i < s.d(); ++i) {
        res = std::max(res, max_abs(twisted[i] - lambda * v * s[i] * v.adjoint()));
    }
    return {lambda, v, res, it};
}

/// Site-wise tensor product: tensors A^i (x) B^j at index i d_b + j, action
/// U_a (x) U_b.
inline std::pair<UniformMPS, OnSiteAction> stack(const UniformMPS &a, const UniformMPS &b, const OnSiteAction &act_a,
                                                 const OnSiteAction &act_b) {
    if (!(act_a.group() == act_b.group())) throw InvalidArgument("stack: actions of different groups");
    if (act_a.dim() != a.d() || act_b.dim() != b.d()) throw InvalidArgument("stack: action/state dimension mismatch");
    if (a.sites_per_cell() != b.sites_per_cell()) throw InvalidArgument("stack: unit cells differ");
    std::vector<Matrix> t;
    for (const auto &x : a.tensors())
        for (const auto &y : b.tensors()) t.push_back(kron(x, y));
    return {UniformMPS(std::move(t), a.label() + "+" + b.label(), a.sites_per_cell()), tensor_action(act_a, act_b)};
}

/// The state composed with the on-site conjugation i_V: A^i -> sum_j
/// conj(v_ji) A^j (the state vector transforms by V^dagger per site) and
/// U(g) -> V^dagger U(g) V.
inline std::pair<UniformMPS, OnSiteAction> basis_change(const UniformMPS &s, const OnSiteAction &act, const Matrix &v,
                                                        const Tolerances &tol = {}) {
    if (v.rows() != s.d() || v.cols() != s.d()) throw InvalidArgument("basis change has wrong dimension");
    if (!is_unitary(v, tol.unitary)) throw InvalidArgument("basis change is not unitary");
    if (act.dim() != s.d()) throw InvalidArgument("action dimension does not match the MPS physical dimension");
    const Matrix vd = v.adjoint();
    std::vector<Matrix> t;
    for (Eigen::Index i = 0; i < s.d(); ++i) {
        Matrix a = Matrix::Zero(s.bond_dim(), s.bond_dim());
        for (Eigen::Index j = 0; j < s.d(); ++j) a += vd(i, j) * s[j];
        t.push_back(std::move(a));
    }
    std::vector<Matrix> m;
    for (const auto &u : act.matrices()) m.push_back(vd * u * v);
    return {UniformMPS(std::move(t), s.label(), s.sites_per_cell()), OnSiteAction(act.group(), std::move(m), tol)};
}

/// Groups k consecutive sites into one: tensors A^{i_1}...A^{i_k} at the
/// lexicographic index of (i_1, ..., i_k), action U^{(x)k}.
inline std::pair<UniformMPS, OnSiteAction> block(const UniformMPS &s, const OnSiteAction &act, int k,
                                                 Eigen::Index max_dim = 4096) {
    if (k < 1) throw InvalidArgument("block size must be >= 1");
    if (act.dim() != s.d()) throw InvalidArgument("action dimension does not match the MPS physical dimension");
    double dim = 1.0;
    for (int i = 0; i < k; ++i) dim *= static_cast<double>(s.d());
    if (dim > static_cast<double>(max_dim)) throw ResourceError("blocked physical dimension exceeds budget");
    std::vector<Matrix> t = s.tensors();
    for (int step = 1; step < k; ++step) {
        std::vector<Matrix> next;
        for (const auto &x : t)
            for (const auto &a : s.tensors()) next.push_back(x * a);
        t = std::move(next);
    }
    return {UniformMPS(std::move(t), s.label(), s.sites_per_cell() * k), tensor_power(act, k)};
}

/// Largest deviation of a two-site gate from commuting with U(g) (x) U(g).
inline double gate_symmetry_defect(const OnSiteAction &act, const Matrix &gate) {
    double worst = 0.0;
    for (const auto &u : act.matrices()) {
        const Matrix w = kron(u, u);
        worst = std::max(worst, max_abs(gate * w - w * gate));
    }
    return worst;
}

/// One brickwork layer of a symmetric two-site gate.
///
/// The gate acts on sites (2n, 2n+1) and then on (2n+1, 2n+2). The result is
/// a uniform MPS on two-site cells (starting one site later), bond
/// dimension at most D d, with action U (x) U.
inline std::pair<UniformMPS, OnSiteAction> apply_symmetric_circuit(const UniformMPS &s, const OnSiteAction &act,
                                                                   const Matrix &gate, const Tolerances &tol = {}) {
    const auto d = s.d();
    if (gate.rows() != d * d || gate.cols() != d * d) throw InvalidArgument("gate must be d^2 x d^2");
    if (!is_unitary(gate, tol.unitary)) throw InvalidArgument("gate is not unitary");
    const double defect = gate_symmetry_defect(act, gate);
    if (defect > tol.rep) {
        throw NonSymmetricGate("gate does not commute with U(g) (x) U(g): defect " + std::to_string(defect));
    }
    const auto [pair_state, pair_action] = block(s, act, 2);
    const auto bond = s.bond_dim();

    // Even layer inside each two-site block.
    std::vector<Matrix> even(d * d, Matrix::Zero(bond, bond));
    for (Eigen::Index p = 0; p < d * d; ++p)
        for (Eigen::Index q = 0; q < d * d; ++q)
            if (gate(p, q) != Complex(0.0)) even[p] += gate(p, q) * pair_state[q];

    // Split each block back into two sites: M[(s1, a), (s2, b)] = B^{s1 s2}_{ab}.
    Matrix m(d * bond, d * bond);
    for (Eigen::Index s1 = 0; s1 < d; ++s1)
        for (Eigen::Index s2 = 0; s2 < d; ++s2) m.block(s1 * bond, s2 * bond, bond, bond) = even[s1 * d + s2];
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto &sv = svd.singularValues();
    Eigen::Index rank = 0;
    while (rank < sv.size() && sv(rank) > 1e-12 * sv(0)) ++rank;
    const Eigen::VectorXd root = sv.head(rank).cwiseSqrt();
    const Matrix left = svd.matrixU().leftCols(rank) * root.cast<Complex>().asDiagonal();
    const Matrix right = root.cast<Complex>().asDiagonal() * svd.matrixV().leftCols(rank).adjoint();
    std::vector<Matrix> first(d), second(d);
    for (Eigen::Index k = 0; k < d; ++k) {
        first[k] = left.block(k * bond, 0, bond, rank);
        second[k] = right.block(0, k * bond, rank, bond);
    }

    // New cell (second site of block n, first site of block n+1), odd layer.
    std::vector<Matrix> cell(d * d);
    for (Eigen::Index t = 0; t < d; ++t)
        for (Eigen::Index v = 0; v < d; ++v) cell[t * d + v] = second[t] * first[v];
    std::vector<Matrix> odd(d * d, Matrix::Zero(rank, rank));
    for (Eigen::Index p = 0; p < d * d; ++p)
        for (Eigen::Index q = 0; q < d * d; ++q)
            if (gate(p, q) != Complex(0.0)) odd[p] += gate(p, q) * cell[q];
    return {UniformMPS(std::move(odd), s.label(), s.sites_per_cell() * 2), pair_action};
}

/// Random gate exp(iH) with H the group average of a random hermitian
/// matrix under conjugation by U(g) (x) U(g).
template <class Rng>
Matrix random_symmetric_gate(const OnSiteAction &act, Rng &rng) {
    const auto d = act.dim();
    const Matrix h = random_hermitian(d * d, rng);
    Matrix avg = Matrix::Zero(d * d, d * d);
    for (const auto &u : act.matrices()) {
        const Matrix w = kron(u, u);
        avg += w * h * w.adjoint();
    }
    avg /= static_cast<double>(act.group().order());
    return expi_hermitian((avg + avg.adjoint()) / 2.0);
}

}  // namespace sptindex
