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
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sptindex/errors.hpp"

namespace sptindex {

/// Index of a group element, 0..order-1.
using Element = std::uint32_t;

/// Associativity is checked exhaustively up to this order.
inline constexpr std::size_t kAssociativityCheckLimit = 64;

/// A finite group stored as an explicit multiplication table.
///
/// Values are immutable and cheap to copy; copies share the table. Every
/// constructor validates the table (identity row/column, Latin square,
/// associativity for order <= 64) and throws InvalidArgument otherwise.
class FiniteGroup {
   public:
    /// Builds a group from a full multiplication table, `rows[g][h] = g*h`.
    static FiniteGroup from_table(std::vector<std::vector<Element>> rows, std::string label = "table");

    std::size_t order() const { return data_->order; }
    Element identity() const { return data_->identity; }
    const std::string &label() const { return data_->label; }

    Element mul(Element g, Element h) const { return data_->table[g * data_->order + h]; }
    Element inv(Element g) const { return data_->inverses[g]; }

    bool is_abelian() const;
    std::vector<std::vector<Element>> table() const;

    bool operator==(const FiniteGroup &other) const {
        return data_ == other.data_ || (data_->order == other.data_->order && data_->table == other.data_->table);
    }

   private:
    struct Data {
        std::size_t order = 0;
        std::vector<Element> table;
        Element identity = 0;
        std::vector<Element> inverses;
        std::string label;
    };
    explicit FiniteGroup(std::shared_ptr<const Data> data) : data_(std::move(data)) {}

    std::shared_ptr<const Data> data_;
};

inline FiniteGroup FiniteGroup::from_table(std::vector<std::vector<Element>> rows, std::string label) {
    const std::size_t n = rows.size();
    if (n == 0) {
        throw InvalidArgument("group table must be nonempty");
    }
    auto data = std::make_shared<Data>();
    data->order = n;
    data->label = std::move(label);
    data->table.reserve(n * n);
    for (const auto &row : rows) {
        if (row.size() != n) {
            throw InvalidArgument("group table must be square");
        }
        for (Element x : row) {
            if (x >= n) {
                throw InvalidArgument("group table entry out of range");
            }
            data->table.push_back(x);
        }
    }
    auto at = [&](std::size_t g, std::size_t h) { return data->table[g * n + h]; };

    // Latin square: every row and column is a permutation.
    std::vector<char> seen(n);
    for (std::size_t g = 0; g < n; ++g) {
        std::fill(seen.begin(), seen.end(), 0);
        for (std::size_t h = 0; h < n; ++h) {
            if (seen[at(g, h)]++) {
                throw InvalidArgument("group table row " + std::to_string(g) + " is not a permutation");
            }
        }
        std::fill(seen.begin(), seen.end(), 0);
        for (std::size_t h = 0; h < n; ++h) {
            if (seen[at(h, g)]++) {
                throw InvalidArgument("group table column " + std::to_string(g) + " is not a permutation");
            }
        }
    }

    std::optional<Element> identity;
    for (std::size_t e = 0; e < n && !identity; ++e) {
        bool ok = true;
        for (std::size_t g = 0; g < n && ok; ++g) {
            ok = at(e, g) == g && at(g, e) == g;
        }
        if (ok) {
            identity = static_cast<Element>(e);
        }
    }
    if (!identity) {
        throw InvalidArgument("group table has no identity element");
    }
    data->identity = *identity;

    if (n <= kAssociativityCheckLimit) {
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = 0; b < n; ++b) {
                const std::size_t ab = at(a, b);
                for (std::size_t c = 0; c < n; ++c) {
                    if (at(ab, c) != at(a, at(b, c))) {
                        throw InvalidArgument("group table is not associative at (" + std::to_string(a) + "," +
                                              std::to_string(b) + "," + std::to_string(c) + ")");
                    }
                }
            }
        }
    }

    data->inverses.resize(n);
    for (std::size_t g = 0; g < n; ++g) {
        for (std::size_t h = 0; h < n; ++h) {
            if (at(g, h) == *identity) {
                data->inverses[g] = static_cast<Element>(h);
                break;
            }
        }
    }
    return FiniteGroup(std::move(data));
}

inline bool FiniteGroup::is_abelian() const {
    const std::size_t n = order();
    for (Element g = 0; g < n; ++g) {
        for (Element h = g + 1; h < n; ++h) {
            if (mul(g, h) != mul(h, g)) {
                return false;
            }
        }
    }
    return true;
}

inline std::vector<std::vector<Element>> FiniteGroup::table() const {
    const std::size_t n = order();
    std::vector<std::vector<Element>> rows(n, std::vector<Element>(n));
    for (Element g = 0; g < n; ++g) {
        for (Element h = 0; h < n; ++h) {
            rows[g][h] = mul(g, h);
        }
    }
    return rows;
}

/// Z_n with table[i][j] = (i + j) mod n.
inline FiniteGroup make_cyclic(std::size_t n) {
    if (n == 0) {
        throw InvalidArgument("cyclic group order must be positive");
    }
    std::vector<std::vector<Element>> rows(n, std::vector<Element>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            rows[i][j] = static_cast<Element>((i + j) % n);
        }
    }
    return FiniteGroup::from_table(std::move(rows), "Z" + std::to_string(n));
}

/// Dihedral group of order 2n. Element r^k is k, element s r^k is n + k.
inline FiniteGroup make_dihedral(std::size_t n) {
    if (n == 0) {
        throw InvalidArgument("dihedral group parameter must be positive");
    }
    const std::size_t order = 2 * n;
    std::vector<std::vector<Element>> rows(order, std::vector<Element>(order));
    for (std::size_t a = 0; a < order; ++a) {
        for (std::size_t b = 0; b < order; ++b) {
            // (s^p r^i)(s^q r^j) = s^(p+q) r^((-1)^q i + j)
            const std::size_t p = a / n, i = a % n, q = b / n, j = b % n;
            const std::size_t ri = q ? (n - i) % n : i;
            rows[a][b] = static_cast<Element>(((p + q) % 2) * n + (ri + j) % n);
        }
    }
    return FiniteGroup::from_table(std::move(rows), "D" + std::to_string(n));
}

/// Componentwise product. Element (i_a, i_b) is encoded as i_a * |b| + i_b.
inline FiniteGroup direct_product(const FiniteGroup &a, const FiniteGroup &b) {
    const std::size_t na = a.order(), nb = b.order();
    std::vector<std::vector<Element>> rows(na * nb, std::vector<Element>(na * nb));
    for (Element g = 0; g < na * nb; ++g) {
        for (Element h = 0; h < na * nb; ++h) {
            const Element ga = g / nb, gb = g % nb, ha = h / nb, hb = h % nb;
            rows[g][h] = static_cast<Element>(a.mul(ga, ha) * nb + b.mul(gb, hb));
        }
    }
    return FiniteGroup::from_table(std::move(rows), a.label() + "x" + b.label());
}

/// All ordered pairs (g, h) with gh = hg, diagonal and identity pairs included.
inline std::vector<std::pair<Element, Element>> commuting_pairs(const FiniteGroup &group) {
    std::vector<std::pair<Element, Element>> out;
    const std::size_t n = group.order();
    for (Element g = 0; g < n; ++g) {
        for (Element h = 0; h < n; ++h) {
            if (group.mul(g, h) == group.mul(h, g)) {
                out.emplace_back(g, h);
            }
        }
    }
    return out;
}

/// Least k >= 1 with x^k = e.
inline std::size_t element_order(const FiniteGroup &group, Element x) {
    if (x >= group.order()) {
        throw InvalidArgument("element out of range");
    }
    std::size_t k = 1;
    for (Element p = x; p != group.identity(); p = group.mul(p, x)) {
        ++k;
    }
    return k;
}

/// A group homomorphism given by its values on every element.
class GroupHom {
   public:
    GroupHom(FiniteGroup source, FiniteGroup target, std::vector<Element> map)
        : source_(std::move(source)), target_(std::move(target)), map_(std::move(map)) {
        if (map_.size() != source_.order()) {
            throw InvalidArgument("homomorphism map has wrong length");
        }
        for (Element x : map_) {
            if (x >= target_.order()) {
                throw InvalidArgument("homomorphism value out of range");
            }
        }
        if (map_[source_.identity()] != target_.identity()) {
            throw InvalidArgument("homomorphism does not preserve the identity");
        }
        for (Element g = 0; g < source_.order(); ++g) {
            for (Element h = 0; h < source_.order(); ++h) {
                if (map_[source_.mul(g, h)] != target_.mul(map_[g], map_[h])) {
                    throw InvalidArgument("map is not a homomorphism");
                }
            }
        }
    }

    const FiniteGroup &source() const { return source_; }
    const FiniteGroup &target() const { return target_; }
    Element operator()(Element g) const { return map_[g]; }
    const std::vector<Element> &map() const { return map_; }

    bool is_bijective() const {
        if (source_.order() != target_.order()) {
            return false;
        }
        std::vector<char> hit(target_.order());
        for (Element x : map_) {
            if (hit[x]++) {
                return false;
            }
        }
        return true;
    }

   private:
    FiniteGroup source_;
    FiniteGroup target_;
    std::vector<Element> map_;
};

/// Brute-force isomorphism search by backtracking over bijections.
/// Only meant for tiny orders.
inline std::optional<GroupHom> find_isomorphism(const FiniteGroup &a, const FiniteGroup &b) {
    const std::size_t n = a.order();
    if (n != b.order()) {
        return std::nullopt;
    }
    std::vector<Element> map(n, 0);
    std::vector<char> assigned(n, 0), used(n, 0);
    map[a.identity()] = b.identity();
    assigned[a.identity()] = 1;
    used[b.identity()] = 1;

    std::vector<Element> order_a(n), order_b(n);
    for (Element g = 0; g < n; ++g) {
        order_a[g] = static_cast<Element>(element_order(a, g));
        order_b[g] = static_cast<Element>(element_order(b, g));
    }

    // Partial consistency: all products of assigned pairs that are assigned agree.
    auto consistent = [&]() {
        for (Element g = 0; g < n; ++g) {
            if (!assigned[g]) continue;
            for (Element h = 0; h < n; ++h) {
                if (!assigned[h]) continue;
                const Element gh = a.mul(g, h);
                if (assigned[gh] && map[gh] != b.mul(map[g], map[h])) {
                    return false;
                }
            }
        }
        return true;
    };

    auto search = [&](auto &&self, Element g) -> bool {
        if (g == n) {
            return true;
        }
        if (assigned[g]) {
            return self(self, g + 1);
        }
        for (Element x = 0; x < n; ++x) {
            if (used[x] || order_a[g] != order_b[x]) continue;
            map[g] = x;
            assigned[g] = used[x] = 1;
            if (consistent() && self(self, g + 1)) {
                return true;
            }
            assigned[g] = used[x] = 0;
        }
        return false;
    };
    if (!search(search, 0)) {
        return std::nullopt;
    }
    return GroupHom(a, b, std::move(map));
}

}  // namespace sptindex
