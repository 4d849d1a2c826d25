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
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "sptindex/errors.hpp"

namespace sptindex {

using BigInt = boost::multiprecision::cpp_int;

/// Dense row-major integer matrix.
template <class Int>
class IntMatrix {
   public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Int(0)) {}

    static IntMatrix identity(std::size_t n) {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = Int(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Int &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Int &operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    template <class Other>
    IntMatrix<Other> cast() const {
        IntMatrix<Other> out(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out(i, j) = Other((*this)(i, j));
        return out;
    }

   private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Int> data_;
};

namespace detail {

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("int64 overflow in Smith normal form");
    return r;
}
inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("int64 overflow in Smith normal form");
    return r;
}
inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("int64 overflow in Smith normal form");
    return r;
}
inline BigInt checked_mul(const BigInt &a, const BigInt &b) { return a * b; }
inline BigInt checked_sub(const BigInt &a, const BigInt &b) { return a - b; }
inline BigInt checked_add(const BigInt &a, const BigInt &b) { return a + b; }

template <class Int>
Int abs_value(const Int &x) {
    return x < 0 ? Int(-x) : x;
}

}  // namespace detail

template <class Int>
IntMatrix<Int> operator*(const IntMatrix<Int> &a, const IntMatrix<Int> &b) {
    if (a.cols() != b.rows()) throw InvalidArgument("matrix shape mismatch");
    IntMatrix<Int> c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t l = 0; l < a.cols(); ++l) {
            if (a(i, l) == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                c(i, j) = detail::checked_add(c(i, j), detail::checked_mul(a(i, l), b(l, j)));
        }
    return c;
}

/// Smith normal form S = P A Q of an r x k integer matrix.
///
/// Only the column transform is recorded: `col_transform` is Q and
/// `col_transform_inv` is Q^{-1}, both unimodular k x k. The nonzero
/// diagonal entries are positive and form a divisibility chain
/// d_0 | d_1 | ... | d_{rank-1}.
template <class Int>
struct SmithResult {
    std::vector<Int> diagonal;
    std::size_t rank = 0;
    IntMatrix<Int> col_transform;
    IntMatrix<Int> col_transform_inv;
};

template <class Int>
SmithResult<Int> smith_normal_form(IntMatrix<Int> a) {
    using detail::abs_value;
    using detail::checked_mul;
    using detail::checked_sub;
    const std::size_t r = a.rows(), k = a.cols();
    IntMatrix<Int> q = IntMatrix<Int>::identity(k);
    IntMatrix<Int> qinv = IntMatrix<Int>::identity(k);

    auto swap_rows = [&](std::size_t i, std::size_t j, std::size_t from) {
        if (i == j) return;
        for (std::size_t c = from; c < k; ++c) std::swap(a(i, c), a(j, c));
    };
    // Column swaps apply to A (rows >= from), Q (columns) and Q^{-1} (rows).
    auto swap_cols = [&](std::size_t i, std::size_t j, std::size_t from) {
        if (i == j) return;
        for (std::size_t row = from; row < r; ++row) std::swap(a(row, i), a(row, j));
        for (std::size_t row = 0; row < k; ++row) std::swap(q(row, i), q(row, j));
        for (std::size_t c = 0; c < k; ++c) std::swap(qinv(i, c), qinv(j, c));
    };
    // row_i -= f * row_j
    auto row_sub = [&](std::size_t i, std::size_t j, const Int &f, std::size_t from) {
        for (std::size_t c = from; c < k; ++c) {
            if (a(j, c) != 0) a(i, c) = checked_sub(a(i, c), checked_mul(f, a(j, c)));
        }
    };
    // col_i -= f * col_j; Q^{-1}: row_j += f * row_i.
    auto col_sub = [&](std::size_t i, std::size_t j, const Int &f, std::size_t from) {
        for (std::size_t row = from; row < r; ++row) {
            if (a(row, j) != 0) a(row, i) = checked_sub(a(row, i), checked_mul(f, a(row, j)));
        }
        for (std::size_t row = 0; row < k; ++row) {
            if (q(row, j) != 0) q(row, i) = checked_sub(q(row, i), checked_mul(f, q(row, j)));
        }
        for (std::size_t c = 0; c < k; ++c) {
            if (qinv(i, c) != 0) qinv(j, c) = detail::checked_add(qinv(j, c), checked_mul(f, qinv(i, c)));
        }
    };

    SmithResult<Int> result;
    std::size_t t = 0;
    const std::size_t limit = std::min(r, k);
    for (; t < limit; ++t) {
        // Pivot: smallest nonzero magnitude in the trailing block.
        std::size_t pi = r, pj = k;
        Int best(0);
        for (std::size_t i = t; i < r && best != 1; ++i) {
            for (std::size_t j = t; j < k; ++j) {
                const Int &v = a(i, j);
                if (v == 0) continue;
                const Int av = abs_value(v);
                if (pi == r || av < best) {
                    best = av;
                    pi = i;
                    pj = j;
                    if (best == 1) break;
                }
            }
        }
        if (pi == r) break;
        swap_rows(t, pi, t);
        swap_cols(t, pj, t);

        for (;;) {
            bool dirty = false;
            for (std::size_t i = t + 1; i < r; ++i) {
                if (a(i, t) == 0) continue;
                const Int f = a(i, t) / a(t, t);
                row_sub(i, t, f, t);
                if (a(i, t) != 0) {
                    swap_rows(t, i, t);
                    dirty = true;
                }
            }
            for (std::size_t j = t + 1; j < k; ++j) {
                if (a(t, j) == 0) continue;
                const Int f = a(t, j) / a(t, t);
                col_sub(j, t, f, t);
                if (a(t, j) != 0) {
                    swap_cols(t, j, t);
                    dirty = true;
                }
            }
            if (dirty) continue;
            if (abs_value(a(t, t)) == 1) break;
            // Divisibility: fold in any row with an entry the pivot does not divide.
            bool folded = false;
            for (std::size_t i = t + 1; i < r && !folded; ++i) {
                for (std::size_t j = t + 1; j < k; ++j) {
                    if (a(i, j) % a(t, t) != 0) {
                        for (std::size_t c = t; c < k; ++c)
                            a(t, c) = detail::checked_add(a(t, c), a(i, c));
                        folded = true;
                        break;
                    }
                }
            }
            if (!folded) break;
        }
        if (a(t, t) < 0) a(t, t) = Int(-a(t, t));
        result.diagonal.push_back(a(t, t));
    }
    result.rank = t;
    result.col_transform = std::move(q);
    result.col_transform_inv = std::move(qinv);
    return result;
}

}  // namespace sptindex
