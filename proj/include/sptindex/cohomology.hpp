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

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sptindex/cochain.hpp"
#include "sptindex/errors.hpp"
#include "sptindex/group.hpp"
#include "sptindex/smith.hpp"
#include "sptindex/torus.hpp"

namespace sptindex {

struct CohomologyOptions {
    /// Largest allowed |G|^(n+1), the row count of the coboundary matrix.
    std::size_t max_rows = 4096;
};

/// H^n(G, T) restricted to classes with a representative valued in
/// (1/m)Z/Z, presented as a direct sum of cyclic groups Z_{d_i}.
///
/// The computation uses one Smith normal form P D Q = S of the integer
/// coboundary matrix D = d^{n+1}. A (1/m)-valued cocycle is an integer
/// vector x with D x = 0 mod m; in the coordinates y = Q^{-1} x this reads
/// s_i y_i = 0 mod m. Coboundaries of arbitrary T-valued cochains that land
/// in (1/m)Z/Z are, for a finite group and n >= 1, the reductions of integer
/// cocycles, i.e. the span of the kernel columns of Q. The quotient is
/// therefore the sum of Z_{gcd(s_i, m)} over the nonzero elementary divisors.
class CohomologyGroup {
   public:
    const FiniteGroup &group() const { return group_; }
    int degree() const { return degree_; }
    std::int64_t modulus() const { return modulus_; }
    const std::vector<std::int64_t> &divisors() const { return divisors_; }
    /// One cocycle per divisor, generating the corresponding cyclic factor.
    const std::vector<ExactCochain> &generators() const { return generators_; }
    /// Empty unless the cross-check at modulus |G|^2 disagreed.
    const std::string &diagnostic() const { return diagnostic_; }

    /// Product of the divisors.
    std::int64_t cardinality() const {
        std::int64_t c = 1;
        for (auto d : divisors_) c *= d;
        return c;
    }
    bool is_trivial() const { return divisors_.empty(); }

    /// Coordinates of an exact cocycle in the divisor decomposition.
    /// Throws NotCocycle for non-cocycles and InvalidArgument for values
    /// outside (1/m)Z/Z.
    std::vector<std::int64_t> coordinates(const ExactCochain &phi) const;

    /// Cocycle sum_i coords[i] * generator_i.
    ExactCochain representative(const std::vector<std::int64_t> &coords) const;

   private:
    friend CohomologyGroup cohomology_group(const FiniteGroup &, int, std::int64_t, const CohomologyOptions &);

    struct Factor {
        std::int64_t divisor;           // gcd(s_i, m)
        std::int64_t scale;             // m / divisor
        std::vector<std::int64_t> qinv_row;  // row i of Q^{-1}, mod m
    };

    CohomologyGroup(FiniteGroup group, int degree, std::int64_t m)
        : group_(std::move(group)), degree_(degree), modulus_(m) {}

    FiniteGroup group_;
    int degree_;
    std::int64_t modulus_;
    std::vector<std::int64_t> divisors_;
    std::vector<ExactCochain> generators_;
    std::vector<Factor> factors_;
    std::string diagnostic_;
};

namespace detail {

inline std::int64_t mod_floor(std::int64_t x, std::int64_t m) {
    x %= m;
    return x < 0 ? x + m : x;
}

template <class Int>
std::int64_t mod_to_i64(const Int &x, std::int64_t m) {
    Int r = x % Int(m);
    if (r < 0) r += Int(m);
    return static_cast<std::int64_t>(r);
}

/// Integer matrix of d^{n+1}: rows index G^{n+1}, columns index G^n.
inline IntMatrix<std::int64_t> coboundary_matrix(const FiniteGroup &group, int n) {
    const std::size_t order = group.order();
    const std::size_t rows = cochain_size(order, n + 1), cols = cochain_size(order, n);
    IntMatrix<std::int64_t> d(rows, cols);
    std::vector<Element> g(n + 1);
    for (std::size_t idx = 0; idx < rows; ++idx) {
        std::size_t rest = idx;
        for (int i = n; i >= 0; --i) {
            g[i] = static_cast<Element>(rest % order);
            rest /= order;
        }
        std::size_t first = 0;
        for (int i = 1; i <= n; ++i) first = first * order + g[i];
        d(idx, first) += 1;
        for (int i = 1; i <= n; ++i) {
            std::size_t pos = 0;
            for (int j = 0; j <= n; ++j) {
                if (j == i) continue;
                pos = pos * order + ((j == i - 1) ? group.mul(g[i - 1], g[i]) : g[j]);
            }
            d(idx, pos) += (i % 2) ? -1 : 1;
        }
        std::size_t last = 0;
        for (int i = 0; i < n; ++i) last = last * order + g[i];
        d(idx, last) += ((n + 1) % 2) ? -1 : 1;
    }
    return d;
}

struct ReducedSmith {
    std::vector<std::int64_t> diagonal;  // exact nonzero elementary divisors (all divide |G|)
    std::vector<std::vector<std::int64_t>> q_cols;     // column i of Q mod m, i < rank
    std::vector<std::vector<std::int64_t>> qinv_rows;  // row i of Q^{-1} mod m, i < rank
};

template <class Int>
ReducedSmith reduce_smith(const SmithResult<Int> &snf, std::int64_t m) {
    ReducedSmith out;
    const std::size_t k = snf.col_transform.rows();
    for (std::size_t i = 0; i < snf.rank; ++i) {
        const Int &s = snf.diagonal[i];
        if (s > Int(std::int64_t{1} << 62)) {
            throw OverflowError("elementary divisor exceeds int64");
        }
        out.diagonal.push_back(static_cast<std::int64_t>(s));
        std::vector<std::int64_t> col(k), row(k);
        for (std::size_t j = 0; j < k; ++j) {
            col[j] = mod_to_i64(snf.col_transform(j, i), m);
            row[j] = mod_to_i64(snf.col_transform_inv(i, j), m);
        }
        out.q_cols.push_back(std::move(col));
        out.qinv_rows.push_back(std::move(row));
    }
    return out;
}

inline ReducedSmith reduced_smith(const IntMatrix<std::int64_t> &d, std::int64_t m) {
    try {
        return reduce_smith(smith_normal_form(d), m);
    } catch (const OverflowError &) {
        return reduce_smith(smith_normal_form(d.cast<BigInt>()), m);
    }
}

}  // namespace detail

inline CohomologyGroup cohomology_group(const FiniteGroup &group, int n, std::int64_t m,
                                        const CohomologyOptions &options = {}) {
    if (n < 1) throw InvalidArgument("cohomology degree must be >= 1");
    if (m < 1) throw InvalidArgument("coefficient denominator must be >= 1");
    const std::size_t order = group.order();
    std::size_t rows = 1;
    for (int i = 0; i <= n; ++i) {
        rows *= order;
        if (rows > options.max_rows) {
            throw ResourceError("|G|^(n+1) exceeds the coboundary matrix budget of " +
                                std::to_string(options.max_rows) + " rows");
        }
    }

    CohomologyGroup h(group, n, m);
    const auto snf = detail::reduced_smith(detail::coboundary_matrix(group, n), m);
    for (std::size_t i = 0; i < snf.diagonal.size(); ++i) {
        const std::int64_t e = std::gcd(snf.diagonal[i], m);
        if (e <= 1) continue;
        const std::int64_t scale = m / e;
        h.divisors_.push_back(e);
        std::vector<TorusValue> values(snf.q_cols[i].size());
        for (std::size_t j = 0; j < values.size(); ++j) {
            values[j] = TorusValue(detail::mod_floor(static_cast<std::int64_t>(
                                                         static_cast<__int128>(scale) * snf.q_cols[i][j] % m),
                                                     m),
                                   m);
        }
        h.generators_.emplace_back(group, n, std::move(values));
        h.factors_.push_back({e, scale, snf.qinv_rows[i]});
    }

    // Every class of H^n(G, U(1)) is |G|-torsion: the decomposition at
    // modulus |G| must agree with the one at |G|^2.
    if (m == static_cast<std::int64_t>(order)) {
        const std::int64_t m2 = m * m;
        std::vector<std::int64_t> fine;
        for (auto s : snf.diagonal) {
            const std::int64_t e = std::gcd(s, m2);
            if (e > 1) fine.push_back(e);
        }
        if (fine != h.divisors_) {
            h.diagnostic_ = "divisors at modulus |G|^2 differ from those at |G|";
        }
    }
    return h;
}

inline CohomologyGroup cohomology_group(const FiniteGroup &group, int n) {
    return cohomology_group(group, n, static_cast<std::int64_t>(group.order()));
}

inline std::vector<std::int64_t> CohomologyGroup::coordinates(const ExactCochain &phi) const {
    if (!(phi.group() == group_) || phi.degree() != degree_) {
        throw InvalidArgument("cochain does not match the cohomology group's group or degree");
    }
    std::vector<std::int64_t> x(phi.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
        const auto &v = phi[j];
        if (modulus_ % v.den() != 0) {
            throw InvalidArgument("value " + v.to_string() + " is not in (1/" + std::to_string(modulus_) + ")Z/Z");
        }
        x[j] = v.num() * (modulus_ / v.den());
    }
    if (!is_cocycle(phi)) throw NotCocycle("class_of needs a cocycle");
    std::vector<std::int64_t> coords;
    for (const auto &f : factors_) {
        __int128 acc = 0;
        for (std::size_t j = 0; j < x.size(); ++j) {
            acc = (acc + static_cast<__int128>(f.qinv_row[j]) * x[j]) % modulus_;
        }
        const auto y = detail::mod_floor(static_cast<std::int64_t>(acc), modulus_);
        if (y % f.scale != 0) {
            throw Error("internal: cocycle coordinate not divisible by its scale");
        }
        coords.push_back((y / f.scale) % f.divisor);
    }
    return coords;
}

inline ExactCochain CohomologyGroup::representative(const std::vector<std::int64_t> &coords) const {
    if (coords.size() != divisors_.size()) throw InvalidArgument("coordinate count mismatch");
    ExactCochain out(group_, degree_);
    for (std::size_t i = 0; i < coords.size(); ++i) {
        const std::int64_t c = detail::mod_floor(coords[i], divisors_[i]);
        for (std::int64_t rep = 0; rep < c; ++rep) out = out + generators_[i];
    }
    return out;
}

/// "Z_2 x Z_4", or "0" for the trivial group.
inline std::string format_divisors(const std::vector<std::int64_t> &divisors) {
    if (divisors.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < divisors.size(); ++i) {
        if (i) s += " x ";
        s += "Z_" + std::to_string(divisors[i]);
    }
    return s;
}

/// An element of a computed cohomology group together with a cocycle
/// representing it.
struct CohomologyClass {
    std::shared_ptr<const CohomologyGroup> space;
    std::vector<std::int64_t> coordinates;
    ExactCochain representative;
    /// Commuting-pair skew table of the representative (degree 2 only).
    std::vector<SkewEntry<TorusValue>> fingerprint;

    const std::vector<std::int64_t> &divisors() const { return space->divisors(); }
    int degree() const { return space->degree(); }
    bool is_trivial() const {
        for (auto c : coordinates) {
            if (c != 0) return false;
        }
        return true;
    }
    /// "(1)" style coordinate list.
    std::string coordinates_string() const {
        std::string s = "(";
        for (std::size_t i = 0; i < coordinates.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(coordinates[i]);
        }
        return s + ")";
    }
};

inline CohomologyClass class_of(std::shared_ptr<const CohomologyGroup> space, const ExactCochain &phi) {
    CohomologyClass c{space, space->coordinates(phi), phi, {}};
    if (phi.degree() == 2) c.fingerprint = h2_fingerprint(phi);
    return c;
}

inline CohomologyClass class_add(const CohomologyClass &a, const CohomologyClass &b) {
    if (a.space != b.space) {
        const bool same = a.space->group() == b.space->group() && a.space->degree() == b.space->degree() &&
                          a.space->modulus() == b.space->modulus();
        if (!same) throw InvalidArgument("class_add: classes live in different cohomology groups");
    }
    CohomologyClass c{a.space, {}, a.representative + b.representative, {}};
    const auto &div = a.space->divisors();
    for (std::size_t i = 0; i < div.size(); ++i) {
        c.coordinates.push_back((a.coordinates[i] + b.coordinates[i]) % div[i]);
    }
    if (c.degree() == 2) c.fingerprint = h2_fingerprint(c.representative);
    return c;
}

inline CohomologyClass class_negate(const CohomologyClass &a) {
    CohomologyClass c{a.space, {}, -a.representative, {}};
    const auto &div = a.space->divisors();
    for (std::size_t i = 0; i < div.size(); ++i) c.coordinates.push_back((div[i] - a.coordinates[i]) % div[i]);
    if (c.degree() == 2) c.fingerprint = h2_fingerprint(c.representative);
    return c;
}

inline CohomologyClass trivial_class(std::shared_ptr<const CohomologyGroup> space) {
    return class_of(space, ExactCochain(space->group(), space->degree()));
}

/// Outcome of matching a numeric 2-cocycle against the classes of H^2 by
/// their commuting-pair fingerprints.
struct FingerprintMatch {
    enum class Status { matched, ambiguous, unmatched };
    Status status = Status::unmatched;
    std::vector<std::int64_t> coordinates;
};

/// Enumerates every class of a degree-2 group (at most `max_classes`) with
/// its fingerprint, as values in [0, 1).
inline std::vector<std::pair<std::vector<std::int64_t>, std::vector<double>>> enumerate_fingerprints(
    const CohomologyGroup &h2, std::int64_t max_classes = 4096) {
    if (h2.degree() != 2) throw InvalidArgument("fingerprints are defined for degree 2");
    if (h2.cardinality() > max_classes) throw ResourceError("too many classes to enumerate");
    std::vector<std::pair<std::vector<std::int64_t>, std::vector<double>>> out;
    std::vector<std::int64_t> coords(h2.divisors().size(), 0);
    for (std::int64_t n = 0; n < h2.cardinality(); ++n) {
        std::int64_t rest = n;
        for (std::size_t i = 0; i < coords.size(); ++i) {
            coords[i] = rest % h2.divisors()[i];
            rest /= h2.divisors()[i];
        }
        std::vector<double> fp;
        for (const auto &e : h2_fingerprint(h2.representative(coords))) fp.push_back(e.beta.to_double());
        out.emplace_back(coords, std::move(fp));
    }
    return out;
}

/// True when distinct classes always have distinct fingerprints.
inline bool fingerprint_separates(const CohomologyGroup &h2) {
    auto all = enumerate_fingerprints(h2);
    for (std::size_t a = 0; a < all.size(); ++a) {
        for (std::size_t b = a + 1; b < all.size(); ++b) {
            if (all[a].second == all[b].second) return false;
        }
    }
    return true;
}

inline FingerprintMatch identify_by_fingerprint(const CohomologyGroup &h2, const NumericCochain &c,
                                                double tolerance) {
    const auto fp = h2_fingerprint(c);
    FingerprintMatch match;
    std::size_t hits = 0;
    for (const auto &[coords, ref] : enumerate_fingerprints(h2)) {
        bool ok = true;
        for (std::size_t i = 0; i < fp.size() && ok; ++i) {
            ok = torus_distance(fp[i].beta.value(), ref[i]) <= tolerance;
        }
        if (ok) {
            if (hits++ == 0) match.coordinates = coords;
        }
    }
    if (hits == 1) {
        match.status = FingerprintMatch::Status::matched;
    } else if (hits > 1) {
        match.status = FingerprintMatch::Status::ambiguous;
        match.coordinates.clear();
    }
    return match;
}

}  // namespace sptindex
