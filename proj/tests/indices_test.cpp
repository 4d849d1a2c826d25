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

#include <cmath>
#include <complex>
#include <memory>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "sptindex/builtins.hpp"
#include "sptindex/indices.hpp"

using namespace sptindex;

namespace {

const FiniteGroup kV4 = direct_product(make_cyclic(2), make_cyclic(2));

std::vector<Matrix> pauli_matrices() {
    Matrix x(2, 2), z(2, 2);
    x << 0, 1, 1, 0;
    z << 1, 0, 0, -1;
    return {Matrix::Identity(2, 2), z, x, x * z};
}

std::shared_ptr<const CohomologyGroup> h2_of(const FiniteGroup &g) {
    return std::make_shared<const CohomologyGroup>(cohomology_group(g, 2));
}

// Z3xZ3 fixed-point chain: A^{(a,b)} = X^a Z^b / 3 with clock and shift
// acting by conjugation, which is diagonal on this basis.
BuiltinState clock_shift_chain() {
    const Complex w = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
    Matrix x = Matrix::Zero(3, 3), z = Matrix::Zero(3, 3);
    for (int k = 0; k < 3; ++k) {
        x((k + 1) % 3, k) = 1.0;
        z(k, k) = std::pow(w, k);
    }
    std::vector<Matrix> tensors;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            Matrix m = Matrix::Identity(3, 3);
            for (int i = 0; i < a; ++i) m = m * x;
            for (int i = 0; i < b; ++i) m = m * z;
            tensors.push_back(m / 3.0);
        }
    const auto group = direct_product(make_cyclic(3), make_cyclic(3));
    std::vector<Matrix> us;
    for (int p = 0; p < 3; ++p)
        for (int q = 0; q < 3; ++q) {
            Matrix u = Matrix::Zero(9, 9);
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b) u(a * 3 + b, a * 3 + b) = std::pow(w, ((q * a - b * p) % 3 + 3) % 3);
            us.push_back(u);
        }
    return {"clock_shift", "", UniformMPS(tensors, "clock_shift"), OnSiteAction(group, us)};
}

}  // namespace

TEST(Projective, LinearRepGivesZeroCochain) {
    const auto act = spin1_rotations_z2z2();
    const auto c = extract_projective_cocycle(ProjectiveRep(kV4, act.matrices()));
    EXPECT_LT(c.residual, 1e-12);
    for (const auto &p : c.cocycle.values()) EXPECT_LT(torus_distance(p.value(), 0.0), 1e-12);
}

TEST(Projective, PauliWitness) {
    const auto c = extract_projective_cocycle(ProjectiveRep(kV4, pauli_matrices()));
    const auto exact = snap_to_roots(root_gauge(c.cocycle), 4);
    const auto space = h2_of(kV4);
    ASSERT_EQ(space->divisors(), std::vector<std::int64_t>{2});
    const auto cls = class_of(space, exact);
    EXPECT_EQ(cls.coordinates, std::vector<std::int64_t>{1});
    // x = element 2, z = element 1.
    EXPECT_EQ(exact.at({2, 1}) - exact.at({1, 2}), TorusValue(1, 2));
}

TEST(Projective, PhaseRescalingKeepsClass) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto mats = pauli_matrices();
    for (auto &m : mats) m *= std::polar(1.0, 2.0 * std::numbers::pi * u(rng));
    const auto c = extract_projective_cocycle(ProjectiveRep(kV4, mats));
    const auto cls = class_of(h2_of(kV4), snap_to_roots(root_gauge(c.cocycle), 4));
    EXPECT_EQ(cls.coordinates, std::vector<std::int64_t>{1});
}

TEST(Projective, RejectsNonProjective) {
    auto mats = pauli_matrices();
    mats[3] = Matrix::Identity(2, 2);
    mats[3](0, 1) = 0.3;
    EXPECT_THROW(extract_projective_cocycle(ProjectiveRep(kV4, mats)), NotProjective);
    EXPECT_THROW(ProjectiveRep(kV4, {Matrix::Identity(2, 2)}), InvalidArgument);
}

TEST(H2Index, AkltIsNontrivial) {
    const auto b = aklt_z2z2();
    const auto r = compute_h2_index(b.state, b.action);
    EXPECT_FALSE(r.index.is_trivial());
    EXPECT_LT(r.mixed_transfer_residual, 1e-8);
    EXPECT_LT(r.projective_residual, 1e-8);
    EXPECT_LT(r.snap_distance, 1e-8);
    EXPECT_TRUE(r.fingerprint_note.empty());
    EXPECT_TRUE(is_cocycle(r.index.representative));
}

TEST(H2Index, ProductStatesAreTrivial) {
    EXPECT_TRUE(h2_index(spin1_product().state, spin1_rotations_z2z2()).is_trivial());
    const auto c = charged_product(5, 3);
    EXPECT_TRUE(h2_index(c.state, c.action).is_trivial());
}

TEST(H2Index, AkltStackedTwiceIsTrivial) {
    const auto b = aklt_z2z2();
    const auto [s, act] = stack(b.state, b.state, b.action, b.action);
    EXPECT_TRUE(h2_index(s, act).is_trivial());
}

TEST(H2Index, ClusterChainIsNontrivial) {
    const auto b = cluster_z2z2();
    EXPECT_FALSE(h2_index(b.state, b.action).is_trivial());
}

TEST(H2Index, ClockShiftClassesAddUnderStacking) {
    const auto b = clock_shift_chain();
    const auto space = h2_of(b.action.group());
    ASSERT_EQ(space->divisors(), std::vector<std::int64_t>{3});
    const auto one = compute_h2_index(symmetry_data(b.state, b.action), space).index;
    ASSERT_FALSE(one.is_trivial());
    const auto [s2, a2] = stack(b.state, b.state, b.action, b.action);
    const auto two = compute_h2_index(symmetry_data(s2, a2), space).index;
    EXPECT_EQ(two.coordinates, class_add(one, one).coordinates);
    EXPECT_FALSE(two.is_trivial());
    // Three copies: the boundary representation is the triple tensor product.
    const auto data = symmetry_data(b.state, b.action);
    std::vector<Matrix> triple;
    for (const auto &l : data.leading) triple.push_back(kron(kron(l.v, l.v), l.v).transpose());
    const auto c = extract_projective_cocycle(ProjectiveRep(b.action.group(), triple));
    EXPECT_TRUE(class_of(space, snap_to_roots(root_gauge(c.cocycle), 9)).is_trivial());
}

TEST(H2Index, GhzIsRejected) {
    EXPECT_THROW(h2_index(ghz_state(), diagonal_zn_action(2, {0, 0})), DegenerateTransfer);
}

TEST(TranslationIndex, ChargedProducts) {
    const auto act = diagonal_zn_action(2, {0, 1});
    EXPECT_EQ(translation_index(product_state(2, 0), act).values(), (std::vector<TorusValue>{{0, 1}, {0, 1}}));
    EXPECT_EQ(translation_index(product_state(2, 1), act).values(), (std::vector<TorusValue>{{0, 1}, {1, 2}}));
    const auto [s, a] = stack(product_state(2, 1), product_state(2, 1), act, act);
    EXPECT_EQ(translation_index(s, a).values(), (std::vector<TorusValue>{{0, 1}, {0, 1}}));
}

TEST(TranslationIndex, SpinOneProduct) {
    const auto b = spin1_product();
    const auto alpha = translation_index(b.state, b.action);
    EXPECT_EQ(character_string(alpha), "{0, 0, 1/2, 1/2}");
    EXPECT_TRUE(h2_index(b.state, b.action).is_trivial());
}

TEST(TranslationIndex, AkltIsTrivial) {
    const auto b = aklt_z2z2();
    EXPECT_EQ(character_string(translation_index(b.state, b.action)), "{0, 0, 0, 0}");
}

TEST(TranslationIndex, ProductStateMatchesOnSiteExpectation) {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 2 + rng() % 6;
        const Eigen::Index d = 1 + static_cast<Eigen::Index>(rng() % 4);
        std::vector<long> charges;
        for (Eigen::Index j = 0; j < d; ++j) charges.push_back(static_cast<long>(rng() % 17) - 8);
        const auto act = diagonal_zn_action(n, charges);
        const Eigen::Index level = static_cast<Eigen::Index>(rng() % static_cast<unsigned>(d));
        const auto alpha = translation_index(product_state(d, level), act);
        for (Element g = 0; g < n; ++g) {
            const Complex expectation = act(g)(level, level);
            const double phase = wrap_unit(std::arg(expectation) / (2.0 * std::numbers::pi));
            EXPECT_LT(torus_distance(alpha[g].to_double(), phase), 1e-12);
            EXPECT_EQ(alpha[g], TorusValue(charges[level] * static_cast<long>(g), static_cast<long>(n)));
        }
    }
}

TEST(TwoD, ReportsRowAndColumn) {
    const auto c = charged_product(2, 1);
    auto r = two_d_index_report(c.state, c.action);
    EXPECT_EQ(character_string(*r.h1), "{0, 1/2}");
    EXPECT_TRUE(r.h2->is_trivial());
    EXPECT_FALSE(r.h2_rotated.has_value());
    EXPECT_FALSE(r.h2_rotated_note.empty());

    const auto a = aklt_z2z2();
    r = two_d_index_report(a.state, a.action, spin1_product().state);
    EXPECT_FALSE(r.h2->is_trivial());
    EXPECT_EQ(character_string(*r.h1), "{0, 0, 0, 0}");
    ASSERT_TRUE(r.h2_rotated.has_value());
    EXPECT_TRUE(r.h2_rotated->is_trivial());
    EXPECT_LT(r.residuals.at("row.mixed_transfer"), 1e-8);
}

TEST(Verify, AkltTransforms) {
    std::mt19937_64 rng(8);
    const auto b = aklt_z2z2();
    std::vector<Transform> ts;
    ts.push_back(transform::BasisChange{random_unitary(3, rng)});
    ts.push_back(transform::SymmetricCircuit{random_symmetric_gate(b.action, rng)});
    ts.push_back(transform::Block{3});
    ts.push_back(transform::Stack{b.state, b.action});
    ts.push_back(transform::Stack{spin1_product().state, spin1_rotations_z2z2()});
    const auto rows = verify_invariance(b.state, b.action, ts);
    ASSERT_EQ(rows.size(), ts.size());
    for (const auto &r : rows) EXPECT_TRUE(r.passed) << r.transform << " " << r.detail;
    EXPECT_EQ(rows[3].observed_h2, "(0)");
    EXPECT_EQ(rows[4].observed_h2, "(1)");
    EXPECT_EQ(rows[4].observed_h1, "{0, 0, 1/2, 1/2}");
}

TEST(Verify, ChargedProductCircuitAndBlock) {
    const auto c = charged_product(2, 1);
    Matrix cz = Matrix::Identity(4, 4);
    cz(3, 3) = -1.0;
    const auto rows = verify_invariance(c.state, c.action, {transform::SymmetricCircuit{cz}, transform::Block{3}});
    for (const auto &r : rows) EXPECT_TRUE(r.passed) << r.transform << " " << r.detail;
    EXPECT_EQ(rows[0].observed_h1, "{0, 0}");
    EXPECT_EQ(rows[1].observed_h1, "{0, 1/2}");
}

TEST(Verify, BrokenTransformIsReportedNotThrown) {
    const auto c = charged_product(2, 1);
    Matrix cnot = Matrix::Zero(4, 4);
    cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1.0;
    const auto rows = verify_invariance(c.state, c.action, {transform::SymmetricCircuit{cnot}});
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_FALSE(rows[0].passed);
    EXPECT_FALSE(rows[0].detail.empty());
}

TEST(Properties, BasisChangeInvarianceAkltTwentyUnitaries) {
    std::mt19937_64 rng(99);
    const auto b = aklt_z2z2();
    const auto want = h2_index(b.state, b.action);
    for (int i = 0; i < 20; ++i) {
        const auto [s, a] = basis_change(b.state, b.action, random_unitary(3, rng));
        EXPECT_EQ(h2_index(s, a).coordinates, want.coordinates);
        EXPECT_EQ(translation_index(s, a).values(), translation_index(b.state, b.action).values());
    }
}

TEST(Properties, StackAdditivityOverBuiltins) {
    std::vector<BuiltinState> states = {aklt_z2z2(), spin1_product(), cluster_z2z2()};
    const auto space = h2_of(kV4);
    for (const auto &x : states) {
        for (const auto &y : states) {
            if (x.state.sites_per_cell() != y.state.sites_per_cell()) continue;
            const auto dx = symmetry_data(x.state, x.action);
            const auto dy = symmetry_data(y.state, y.action);
            const auto [s, a] = stack(x.state, y.state, x.action, y.action);
            const auto ds = symmetry_data(s, a);
            EXPECT_EQ(compute_h2_index(ds, space).index.coordinates,
                      class_add(compute_h2_index(dx, space).index, compute_h2_index(dy, space).index).coordinates)
                << x.name << "+" << y.name;
            EXPECT_EQ(compute_translation_index(ds).character.values(),
                      (compute_translation_index(dx).character + compute_translation_index(dy).character).values());
        }
    }
}
