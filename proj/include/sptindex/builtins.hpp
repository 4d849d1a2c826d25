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

#include <cctype>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "sptindex/action.hpp"
#include "sptindex/errors.hpp"
#include "sptindex/group.hpp"
#include "sptindex/mps.hpp"

namespace sptindex {

/// Product state |level> on d levels (bond dimension 1).
inline UniformMPS product_state(Eigen::Index d, Eigen::Index level, std::string label = "product") {
    if (d < 1 || level < 0 || level >= d) throw InvalidArgument("product state level out of range");
    std::vector<Matrix> t(d, Matrix::Zero(1, 1));
    t[level](0, 0) = 1.0;
    return UniformMPS(std::move(t), std::move(label));
}

/// AKLT chain in the spin-1 basis (+1, 0, -1).
inline UniformMPS aklt_state() {
    // Two spin-1/2 virtual legs per site joined by singlets and projected onto spin 1.
    Matrix plus = Matrix::Zero(2, 2), zero = Matrix::Zero(2, 2), minus = Matrix::Zero(2, 2);
    plus(0, 1) = 1.0;
    zero(0, 0) = -1.0 / std::sqrt(2.0);
    zero(1, 1) = 1.0 / std::sqrt(2.0);
    minus(1, 0) = -1.0;
    return UniformMPS({plus, zero, minus}, "aklt");
}

/// One-site MPS of the cluster chain.
inline UniformMPS cluster_chain() {
    const double h = 1.0 / std::sqrt(2.0);
    Matrix a0(2, 2), a1(2, 2);
    a0 << h, 0, h, 0;
    a1 << 0, h, 0, -h;
    return UniformMPS({a0, a1}, "cluster");
}

/// GHZ-type tensors diag(1, 0), diag(0, 1): a non-injective MPS.
inline UniformMPS ghz_state() {
    Matrix a0 = Matrix::Zero(2, 2), a1 = Matrix::Zero(2, 2);
    a0(0, 0) = 1.0;
    a1(1, 1) = 1.0;
    return UniformMPS({a0, a1}, "ghz");
}

struct BuiltinState {
    std::string name;
    std::string description;
    UniformMPS state;
    OnSiteAction action;
};

/// Cluster chain on two-site cells with Z2xZ2 flipping each sublattice.
inline BuiltinState cluster_z2z2() {
    auto [cell, act] = block(cluster_chain(), trivial_action(make_cyclic(1), 2), 2);
    return {"cluster_z2z2", "cluster chain, two-site cell, Z2xZ2 = X on each sublattice",
            UniformMPS(cell.tensors(), "cluster_z2z2", 2), two_qubit_flips_z2z2()};
}

/// Spin-1 product |level> with spin-1 pi rotations.
inline BuiltinState spin1_product(Eigen::Index level = 1) {
    return {"spin1_product", "spin-1 product state |0>, Z2xZ2 pi rotations", product_state(3, level, "spin1_product"),
            spin1_rotations_z2z2()};
}

inline BuiltinState aklt_z2z2() {
    return {"aklt", "AKLT chain, Z2xZ2 pi rotations", aklt_state(), spin1_rotations_z2z2()};
}

/// Product |level> on n levels with Z_n acting by diag(w^0, w^1, ..., w^{n-1}).
inline BuiltinState charged_product(std::size_t n, Eigen::Index level) {
    std::vector<long> charges;
    for (std::size_t j = 0; j < n; ++j) charges.push_back(static_cast<long>(j));
    return {"charged_product", "product |q> with diagonal Z_n charge q",
            product_state(static_cast<Eigen::Index>(n), level, "charged_product"), diagonal_zn_action(n, charges)};
}

inline std::vector<BuiltinState> builtin_states() {
    return {aklt_z2z2(), spin1_product(), cluster_z2z2(), charged_product(2, 1)};
}

inline BuiltinState builtin_state(const std::string &name) {
    for (auto &b : builtin_states())
        if (b.name == name) return b;
    throw InvalidArgument("unknown built-in state '" + name + "'");
}

struct BuiltinAction {
    std::string name;
    std::string description;
    std::function<OnSiteAction()> make;
};

inline std::vector<BuiltinAction> builtin_actions() {
    return {
        {"spin1_rotations_z2z2", "Z2xZ2 pi rotations of a spin 1", spin1_rotations_z2z2},
        {"two_qubit_flips_z2z2", "Z2xZ2 acting as X^i (x) X^j on two qubits", two_qubit_flips_z2z2},
    };
}

struct BuiltinGroup {
    std::string name;
    std::string description;
};

inline std::vector<BuiltinGroup> builtin_groups() {
    return {{"Zn", "cyclic group of order n, e.g. Z2, Z6"},
            {"Dn", "dihedral group of order 2n, e.g. D3, D4"},
            {"AxB", "direct product of the above, e.g. Z2xZ2, Z2xZ2xZ2"}};
}

/// Parses names like "Z2", "D4", "Z2xZ2" or "Z2xD3".
inline FiniteGroup parse_group_name(const std::string &name) {
    std::vector<FiniteGroup> factors;
    std::size_t pos = 0;
    while (pos <= name.size()) {
        const auto next = name.find('x', pos);
        const std::string part = name.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
        if (part.size() < 2 || (part[0] != 'Z' && part[0] != 'D')) {
            throw InvalidArgument("cannot parse group name '" + name + "'");
        }
        for (std::size_t i = 1; i < part.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(part[i])))
                throw InvalidArgument("cannot parse group name '" + name + "'");
        const auto n = std::stoul(part.substr(1));
        if (n < 1 || n > 4096) throw InvalidArgument("group order out of range in '" + name + "'");
        factors.push_back(part[0] == 'Z' ? make_cyclic(n) : make_dihedral(n));
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    FiniteGroup g = factors[0];
    for (std::size_t i = 1; i < factors.size(); ++i) g = direct_product(g, factors[i]);
    return g;
}

}  // namespace sptindex
