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

#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "sptindex/smith.hpp"

using namespace sptindex;

namespace {

using Mat = IntMatrix<std::int64_t>;

Mat from_rows(const std::vector<std::vector<std::int64_t>> &rows) {
    Mat m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    return m;
}

// Oracle: determinantal divisors D_k = gcd of all k x k minors, computed by
// cofactor expansion; invariant factors are D_k / D_{k-1}.
std::int64_t det(const std::vector<std::vector<std::int64_t>> &m) {
    const std::size_t n = m.size();
    if (n == 1) return m[0][0];
    std::int64_t d = 0;
    for (std::size_t c = 0; c < n; ++c) {
        std::vector<std::vector<std::int64_t>> minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<std::int64_t> row;
            for (std::size_t cc = 0; cc < n; ++cc)
                if (cc != c) row.push_back(m[r][cc]);
            minor.push_back(row);
        }
        d += ((c % 2) ? -1 : 1) * m[0][c] * det(minor);
    }
    return d;
}

void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t> &cur,
             std::vector<std::vector<std::size_t>> &out) {
    if (cur.size() == k) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = start; i < n; ++i) {
        cur.push_back(i);
        subsets(n, k, i + 1, cur, out);
        cur.pop_back();
    }
}

std::vector<std::int64_t> invariant_factors_oracle(const std::vector<std::vector<std::int64_t>> &a) {
    const std::size_t r = a.size(), c = a[0].size();
    std::vector<std::int64_t> dk = {1};
    for (std::size_t k = 1; k <= std::min(r, c); ++k) {
        std::vector<std::vector<std::size_t>> rs, cs;
        std::vector<std::size_t> cur;
        subsets(r, k, 0, cur, rs);
        subsets(c, k, 0, cur, cs);
        std::int64_t g = 0;
        for (const auto &ri : rs)
            for (const auto &ci : cs) {
                std::vector<std::vector<std::int64_t>> m(k, std::vector<std::int64_t>(k));
                for (std::size_t x = 0; x < k; ++x)
                    for (std::size_t y = 0; y < k; ++y) m[x][y] = a[ri[x]][ci[y]];
                g = std::gcd(g, det(m));
            }
        if (g == 0) break;
        dk.push_back(g);
    }
    std::vector<std::int64_t> out;
    for (std::size_t i = 1; i < dk.size(); ++i) out.push_back(dk[i] / dk[i - 1]);
    return out;
}

}  // namespace

TEST(Smith, ClassicExample) {
    const auto a = from_rows({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}});
    const auto s = smith_normal_form(a);
    EXPECT_EQ(s.rank, 3u);
    EXPECT_EQ(s.diagonal, (std::vector<std::int64_t>{2, 6, 12}));
}

TEST(Smith, ZeroAndRankDeficient) {
    EXPECT_EQ(smith_normal_form(Mat(3, 2)).rank, 0u);
    const auto s = smith_normal_form(from_rows({{1, 2, 3}, {2, 4, 6}}));
    EXPECT_EQ(s.rank, 1u);
    EXPECT_EQ(s.diagonal, (std::vector<std::int64_t>{1}));
}

TEST(Smith, MatchesDeterminantalDivisorsAndTransformsAreInverse) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> entry(-6, 6), dim(1, 4);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t r = dim(rng), c = dim(rng);
        std::vector<std::vector<std::int64_t>> rows(r, std::vector<std::int64_t>(c));
        for (auto &row : rows)
            for (auto &x : row) x = entry(rng) * (entry(rng) % 3 == 0 ? 2 : 1);
        const auto a = from_rows(rows);
        const auto s = smith_normal_form(a);
        EXPECT_EQ(s.diagonal, invariant_factors_oracle(rows)) << "trial " << trial;
        const auto id = s.col_transform * s.col_transform_inv;
        EXPECT_EQ(id(0, 0), 1);
        for (std::size_t i = 0; i < c; ++i)
            for (std::size_t j = 0; j < c; ++j) EXPECT_EQ(id(i, j), i == j ? 1 : 0);
        // Columns of A Q beyond the rank vanish: they span the kernel.
        const auto aq = a * s.col_transform;
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = s.rank; j < c; ++j) EXPECT_EQ(aq(i, j), 0);
        for (std::size_t i = 1; i < s.diagonal.size(); ++i) EXPECT_EQ(s.diagonal[i] % s.diagonal[i - 1], 0);
    }
}

TEST(Smith, Int64OverflowIsDetectedAndBigIntAgrees) {
    const std::int64_t big = std::int64_t{1} << 40;
    const auto a = from_rows({{big, big + 1}, {big - 1, big}});
    // det = big^2 - (big^2 - 1) = 1, so the form is the identity, but the
    // elimination multiplies 2^40-sized entries.
    const auto s = smith_normal_form(a.cast<BigInt>());
    EXPECT_EQ(s.diagonal, (std::vector<BigInt>{1, 1}));
    const auto huge = from_rows({{std::int64_t{1} << 62, 3}, {3, std::int64_t{1} << 62}});
    EXPECT_THROW(
        {
            auto t = smith_normal_form(huge);
            (void)t;
        },
        OverflowError);
    const auto hb = smith_normal_form(huge.cast<BigInt>());
    EXPECT_EQ(hb.rank, 2u);
    EXPECT_EQ(hb.diagonal[0], 1);
}
