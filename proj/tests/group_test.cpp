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

#include <algorithm>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "sptindex/group.hpp"

using namespace sptindex;

namespace {

// Quaternion group Q8 from its action on {±1, ±i, ±j, ±k}.
FiniteGroup make_quaternion() {
    // Encoding: 0:1 1:i 2:j 3:k, +4 for the negative.
    const int unit[4][4] = {{0, 1, 2, 3}, {1, 4, 3, 6}, {2, 7, 4, 1}, {3, 2, 5, 4}};
    std::vector<std::vector<Element>> rows(8, std::vector<Element>(8));
    for (int a = 0; a < 8; ++a) {
        for (int b = 0; b < 8; ++b) {
            int r = unit[a % 4][b % 4];
            const int sign = (a / 4 + b / 4 + r / 4) % 2;
            rows[a][b] = static_cast<Element>(sign * 4 + r % 4);
        }
    }
    return FiniteGroup::from_table(rows, "Q8");
}

}  // namespace

TEST(Group, CyclicTables) {
    const auto trivial = make_cyclic(1);
    EXPECT_EQ(trivial.order(), 1u);
    EXPECT_EQ(trivial.identity(), 0u);

    const auto z2 = make_cyclic(2);
    EXPECT_EQ(z2.table(), (std::vector<std::vector<Element>>{{0, 1}, {1, 0}}));

    const auto z4 = make_cyclic(4);
    EXPECT_EQ(element_order(z4, 1), 4u);
    EXPECT_EQ(element_order(z4, 2), 2u);
    EXPECT_EQ(element_order(z4, 0), 1u);

    EXPECT_THROW(make_cyclic(0), InvalidArgument);
}

TEST(Group, RejectsInvalidTables) {
    // Not a Latin square.
    EXPECT_THROW(FiniteGroup::from_table({{0, 1}, {1, 1}}), InvalidArgument);
    // Latin square without identity.
    EXPECT_THROW(FiniteGroup::from_table({{1, 0, 2}, {0, 2, 1}, {2, 1, 0}}), InvalidArgument);
    // Latin square with identity but not associative (order-5 loop).
    EXPECT_THROW(FiniteGroup::from_table({{0, 1, 2, 3, 4},
                                          {1, 0, 3, 4, 2},
                                          {2, 4, 0, 1, 3},
                                          {3, 2, 4, 0, 1},
                                          {4, 3, 1, 2, 0}}),
                 InvalidArgument);
    EXPECT_THROW(FiniteGroup::from_table({}), InvalidArgument);
    EXPECT_THROW(FiniteGroup::from_table({{0, 2}, {1, 0}}), InvalidArgument);
}

TEST(Group, Inverses) {
    for (const auto &g : {make_cyclic(5), make_dihedral(3), make_quaternion()}) {
        for (Element x = 0; x < g.order(); ++x) {
            EXPECT_EQ(g.mul(x, g.inv(x)), g.identity());
            EXPECT_EQ(g.mul(g.inv(x), x), g.identity());
        }
    }
}

TEST(Group, DirectProductKleinFour) {
    const auto v4 = direct_product(make_cyclic(2), make_cyclic(2));
    EXPECT_EQ(v4.order(), 4u);
    EXPECT_TRUE(v4.is_abelian());
    for (Element x = 1; x < 4; ++x) EXPECT_EQ(element_order(v4, x), 2u);
    // (1,1) is encoded as 1*2 + 1.
    EXPECT_EQ(element_order(v4, 3), 2u);
    EXPECT_EQ(v4.label(), "Z2xZ2");
}

TEST(Group, DirectProductEncoding) {
    const auto a = make_cyclic(2), b = make_cyclic(3);
    const auto p = direct_product(a, b);
    for (Element g = 0; g < 6; ++g) {
        for (Element h = 0; h < 6; ++h) {
            const Element expect = a.mul(g / 3, h / 3) * 3 + b.mul(g % 3, h % 3);
            EXPECT_EQ(p.mul(g, h), expect);
        }
    }
}

// Oracle: try every bijection Z2xZ3 -> Z6 and count the homomorphic ones.
TEST(Group, Z2xZ3IsomorphicToZ6ByExhaustiveSearch) {
    const auto p = direct_product(make_cyclic(2), make_cyclic(3));
    const auto z6 = make_cyclic(6);
    std::vector<Element> perm(6);
    std::iota(perm.begin(), perm.end(), 0);
    int isomorphisms = 0;
    do {
        bool ok = true;
        for (Element g = 0; g < 6 && ok; ++g)
            for (Element h = 0; h < 6 && ok; ++h) ok = perm[p.mul(g, h)] == z6.mul(perm[g], perm[h]);
        isomorphisms += ok;
    } while (std::next_permutation(perm.begin(), perm.end()));
    // |Aut(Z6)| = 2.
    EXPECT_EQ(isomorphisms, 2);

    const auto iso = find_isomorphism(p, z6);
    ASSERT_TRUE(iso.has_value());
    EXPECT_TRUE(iso->is_bijective());
}

TEST(Group, TrivialFactorIsIdentityReindexing) {
    const auto g = make_dihedral(3);
    const auto p = direct_product(make_cyclic(1), g);
    EXPECT_EQ(p.table(), g.table());
    const auto q = direct_product(g, make_cyclic(1));
    EXPECT_EQ(q.table(), g.table());
}

TEST(Group, DirectProductAssociativeUpToIsomorphism) {
    const std::vector<FiniteGroup> small = {make_cyclic(2), make_cyclic(3), make_dihedral(3)};
    for (const auto &a : small) {
        for (const auto &b : small) {
            for (const auto &c : {make_cyclic(2), make_cyclic(1)}) {
                const auto left = direct_product(direct_product(a, b), c);
                const auto right = direct_product(a, direct_product(b, c));
                EXPECT_TRUE(find_isomorphism(left, right).has_value()) << a.label() << b.label() << c.label();
            }
        }
    }
}

TEST(Group, NotIsomorphic) {
    EXPECT_FALSE(find_isomorphism(make_cyclic(4), direct_product(make_cyclic(2), make_cyclic(2))).has_value());
    EXPECT_FALSE(find_isomorphism(make_cyclic(6), make_dihedral(3)).has_value());
    EXPECT_FALSE(find_isomorphism(make_dihedral(4), make_quaternion()).has_value());
}

TEST(Group, CommutingPairs) {
    EXPECT_EQ(commuting_pairs(make_cyclic(1)).size(), 1u);
    EXPECT_EQ(commuting_pairs(make_cyclic(5)).size(), 25u);
    EXPECT_EQ(commuting_pairs(direct_product(make_cyclic(2), make_cyclic(2))).size(), 16u);

    // Direct enumeration oracle on S3 = D3: identity commutes with 6,
    // rotations with the 3 rotations, reflections with e and themselves.
    const auto s3 = make_dihedral(3);
    std::size_t expected = 0;
    for (Element g = 0; g < 6; ++g)
        for (Element h = 0; h < 6; ++h) expected += s3.mul(g, h) == s3.mul(h, g);
    const auto pairs = commuting_pairs(s3);
    EXPECT_EQ(pairs.size(), expected);
    EXPECT_EQ(pairs.size(), 18u);
    EXPECT_LT(pairs.size(), 36u);
    EXPECT_FALSE(s3.is_abelian());
}

TEST(Group, LagrangeForSmallGroups) {
    std::vector<FiniteGroup> groups;
    for (std::size_t n = 1; n <= 16; ++n) groups.push_back(make_cyclic(n));
    for (std::size_t n = 1; n <= 8; ++n) groups.push_back(make_dihedral(n));
    groups.push_back(make_quaternion());
    groups.push_back(direct_product(make_cyclic(2), make_cyclic(4)));
    groups.push_back(direct_product(make_cyclic(4), make_cyclic(4)));
    groups.push_back(direct_product(direct_product(make_cyclic(2), make_cyclic(2)), make_cyclic(2)));
    for (const auto &g : groups) {
        for (Element x = 0; x < g.order(); ++x) {
            EXPECT_EQ(g.order() % element_order(g, x), 0u) << g.label() << " element " << x;
        }
    }
}

TEST(Group, HomomorphismValidation) {
    const auto z4 = make_cyclic(4), z2 = make_cyclic(2);
    GroupHom reduce(z4, z2, {0, 1, 0, 1});
    EXPECT_FALSE(reduce.is_bijective());
    EXPECT_EQ(reduce(3), 1u);
    EXPECT_THROW(GroupHom(z4, z2, {0, 1, 1, 0}), InvalidArgument);
    EXPECT_THROW(GroupHom(z4, z2, {1, 0, 1, 0}), InvalidArgument);
    EXPECT_THROW(GroupHom(z4, z2, {0, 1}), InvalidArgument);
}
