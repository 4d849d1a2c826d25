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
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <istream>
#include <numeric>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "sptindex/errors.hpp"
#include "sptindex/group.hpp"
#include "sptindex/torus.hpp"

namespace sptindex {

/// Number of entries of a degree-n cochain, |G|^n.
inline std::size_t cochain_size(std::size_t order, int degree) {
    std::size_t s = 1;
    for (int i = 0; i < degree; ++i) s *= order;
    return s;
}

/// A function G^n -> T. Values are stored row-major in the element indices:
/// the tuple (g_1, ..., g_n) lives at sum_i g_i |G|^(n-i).
template <class V>
class Cochain {
   public:
    using value_type = V;

    Cochain(FiniteGroup group, int degree)
        : group_(std::move(group)), degree_(degree), values_(cochain_size(group_.order(), degree)) {
        if (degree < 0) throw InvalidArgument("cochain degree must be nonnegative");
    }
    Cochain(FiniteGroup group, int degree, std::vector<V> values)
        : group_(std::move(group)), degree_(degree), values_(std::move(values)) {
        if (degree < 0) throw InvalidArgument("cochain degree must be nonnegative");
        if (values_.size() != cochain_size(group_.order(), degree)) {
            throw InvalidArgument("cochain has " + std::to_string(values_.size()) + " values, expected " +
                                  std::to_string(cochain_size(group_.order(), degree)));
        }
    }

    const FiniteGroup &group() const { return group_; }
    int degree() const { return degree_; }
    std::size_t size() const { return values_.size(); }
    const std::vector<V> &values() const { return values_; }

    const V &operator[](std::size_t i) const { return values_[i]; }
    V &operator[](std::size_t i) { return values_[i]; }

    std::size_t index_of(std::span<const Element> tuple) const {
        if (tuple.size() != static_cast<std::size_t>(degree_)) throw InvalidArgument("tuple length mismatch");
        std::size_t idx = 0;
        for (Element g : tuple) idx = idx * group_.order() + g;
        return idx;
    }
    std::vector<Element> tuple_of(std::size_t idx) const {
        std::vector<Element> t(degree_);
        for (int i = degree_ - 1; i >= 0; --i) {
            t[i] = static_cast<Element>(idx % group_.order());
            idx /= group_.order();
        }
        return t;
    }
    const V &at(std::initializer_list<Element> tuple) const {
        return values_[index_of(std::span<const Element>(tuple.begin(), tuple.size()))];
    }
    V &at(std::initializer_list<Element> tuple) {
        return values_[index_of(std::span<const Element>(tuple.begin(), tuple.size()))];
    }

    friend Cochain operator+(const Cochain &a, const Cochain &b) {
        a.check_compatible(b);
        std::vector<V> v(a.size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.values_[i] + b.values_[i];
        return Cochain(a.group_, a.degree_, std::move(v));
    }
    friend Cochain operator-(const Cochain &a) {
        std::vector<V> v(a.size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = -a.values_[i];
        return Cochain(a.group_, a.degree_, std::move(v));
    }
    friend Cochain operator-(const Cochain &a, const Cochain &b) { return a + (-b); }

    void check_compatible(const Cochain &other) const {
        if (!(group_ == other.group_) || degree_ != other.degree_) {
            throw InvalidArgument("cochains live on different groups or degrees");
        }
    }

   private:
    FiniteGroup group_;
    int degree_;
    std::vector<V> values_;
};

using ExactCochain = Cochain<TorusValue>;
using NumericCochain = Cochain<Phase>;
/// Real-valued lift, used for gauge computations before reducing mod 1.
using RealCochain = Cochain<double>;

namespace detail {

/// Alternating-sum coboundary with trivial action on raw value arrays.
/// `finalize` reduces each accumulated sum (e.g. mod L).
template <class T, class Finalize>
std::vector<T> coboundary_values(const FiniteGroup &group, int degree, const std::vector<T> &values,
                                 Finalize finalize) {
    const std::size_t order = group.order();
    const int n = degree;
    const std::size_t out_size = cochain_size(order, n + 1);
    std::vector<T> out(out_size);
    std::vector<Element> g(n + 1);
    for (std::size_t idx = 0; idx < out_size; ++idx) {
        std::size_t rest = idx;
        for (int i = n; i >= 0; --i) {
            g[i] = static_cast<Element>(rest % order);
            rest /= order;
        }
        // phi(g_2, ..., g_{n+1})
        std::size_t first = 0;
        for (int i = 1; i <= n; ++i) first = first * order + g[i];
        T acc = values[first];
        // sum_{i=1}^{n} (-1)^i phi(g_1, ..., g_i g_{i+1}, ..., g_{n+1})
        for (int i = 1; i <= n; ++i) {
            std::size_t pos = 0;
            for (int j = 0; j <= n; ++j) {
                if (j == i) continue;
                const Element e = (j == i - 1) ? group.mul(g[i - 1], g[i]) : g[j];
                pos = pos * order + e;
            }
            if (i % 2) {
                acc = acc - values[pos];
            } else {
                acc = acc + values[pos];
            }
        }
        // (-1)^{n+1} phi(g_1, ..., g_n)
        std::size_t last = 0;
        for (int i = 0; i < n; ++i) last = last * order + g[i];
        if ((n + 1) % 2) {
            acc = acc - values[last];
        } else {
            acc = acc + values[last];
        }
        out[idx] = finalize(acc);
    }
    return out;
}

/// Common denominator of an exact cochain, guarded against overflow.
inline std::int64_t common_denominator(const ExactCochain &phi) {
    std::int64_t l = 1;
    for (const auto &v : phi.values()) {
        l = std::lcm(l, v.den());
        if (l > (std::int64_t{1} << 40)) {
            throw OverflowError("cochain denominators too large for exact arithmetic");
        }
    }
    return l;
}

}  // namespace detail

/// Coboundary d^{n+1}: C^n(G,T) -> C^{n+1}(G,T) with trivial group action.
inline ExactCochain coboundary(const ExactCochain &phi) {
    const std::int64_t l = detail::common_denominator(phi);
    std::vector<std::int64_t> nums(phi.size());
    for (std::size_t i = 0; i < nums.size(); ++i) nums[i] = phi[i].num() * (l / phi[i].den());
    auto lifted = detail::coboundary_values(phi.group(), phi.degree(), nums, [l](std::int64_t x) {
        x %= l;
        return x < 0 ? x + l : x;
    });
    std::vector<TorusValue> out(lifted.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = TorusValue(lifted[i], l);
    return ExactCochain(phi.group(), phi.degree() + 1, std::move(out));
}

inline NumericCochain coboundary(const NumericCochain &phi) {
    auto out = detail::coboundary_values(phi.group(), phi.degree(), phi.values(), [](const Phase &p) { return p; });
    return NumericCochain(phi.group(), phi.degree() + 1, std::move(out));
}

inline RealCochain coboundary(const RealCochain &phi) {
    auto out = detail::coboundary_values(phi.group(), phi.degree(), phi.values(), [](double x) { return x; });
    return RealCochain(phi.group(), phi.degree() + 1, std::move(out));
}

inline bool is_zero(const ExactCochain &phi) {
    for (const auto &v : phi.values()) {
        if (!v.is_zero()) return false;
    }
    return true;
}

/// Largest torus distance of any value from 0.
inline double max_deviation(const NumericCochain &phi) {
    double worst = 0.0;
    for (const auto &v : phi.values()) worst = std::max(worst, torus_distance(v.value(), 0.0));
    return worst;
}

inline bool is_cocycle(const ExactCochain &phi) { return is_zero(coboundary(phi)); }

inline bool is_cocycle(const NumericCochain &phi, double tolerance) {
    return max_deviation(coboundary(phi)) <= tolerance;
}

inline NumericCochain to_numeric(const ExactCochain &phi) {
    std::vector<Phase> v;
    v.reserve(phi.size());
    for (const auto &x : phi.values()) v.emplace_back(x);
    return NumericCochain(phi.group(), phi.degree(), std::move(v));
}

/// Rounds every value to the nearest multiple of 1/m.
///
/// A value at torus distance >= 1/(2m) from the lattice is rejected with
/// SnapError. Degree-1 results must additionally be homomorphisms.
inline ExactCochain snap_to_roots(const NumericCochain &phi, std::int64_t m) {
    if (m <= 0) throw InvalidArgument("snap denominator must be positive");
    const double half_step = 0.5 / static_cast<double>(m);
    std::vector<TorusValue> out(phi.size());
    for (std::size_t i = 0; i < phi.size(); ++i) {
        const double v = phi[i].value();
        const auto k = static_cast<std::int64_t>(std::llround(v * static_cast<double>(m)));
        const double dist = torus_distance(v, static_cast<double>(k) / static_cast<double>(m));
        if (!(dist < half_step)) {
            std::ostringstream msg;
            msg << "value " << v << " at index " << i << " is " << dist << " from the 1/" << m
                << " lattice (limit " << half_step << ")";
            throw SnapError(msg.str());
        }
        out[i] = TorusValue(k, m);
    }
    ExactCochain snapped(phi.group(), phi.degree(), std::move(out));
    if (snapped.degree() == 1 && !is_cocycle(snapped)) {
        throw HomomorphismError("snapped degree-1 cochain is not a homomorphism");
    }
    return snapped;
}

/// Moves a numeric n-cocycle (n >= 1) by a coboundary so that its values lie
/// near (1/|G|)Z/Z.
///
/// With chi(g_1..g_{n-1}) = sum_h omega(g_1..g_{n-1}, h) on a real lift, the
/// cocycle identity gives d chi = (-1)^n |G| omega mod 1, so
/// omega - (-1)^n d(chi/|G|) is |G|-torsion.
inline NumericCochain root_gauge(const NumericCochain &omega) {
    const int n = omega.degree();
    if (n < 1) throw InvalidArgument("root gauge needs degree >= 1");
    const auto &group = omega.group();
    const std::size_t order = group.order();
    std::vector<double> chi(cochain_size(order, n - 1), 0.0);
    for (std::size_t i = 0; i < omega.size(); ++i) chi[i / order] += omega[i].value();
    for (auto &c : chi) c /= static_cast<double>(order);
    const RealCochain d_chi = coboundary(RealCochain(group, n - 1, std::move(chi)));
    const double sign = (n % 2) ? -1.0 : 1.0;
    std::vector<Phase> out(omega.size());
    for (std::size_t i = 0; i < omega.size(); ++i) {
        out[i] = Phase(omega[i].value() - sign * d_chi[i], omega[i].tolerance());
    }
    return NumericCochain(group, n, std::move(out));
}

/// One entry beta(g, h) = c(g, h) - c(h, g) of the commuting-pair skew table.
template <class V>
struct SkewEntry {
    Element g;
    Element h;
    V beta;
};

/// Commuting-pair skew table of a 2-cochain. Vanishes on coboundaries, so it
/// is an invariant of the cohomology class.
template <class V>
std::vector<SkewEntry<V>> h2_fingerprint(const Cochain<V> &c) {
    if (c.degree() != 2) throw InvalidArgument("fingerprint needs a 2-cochain");
    std::vector<SkewEntry<V>> out;
    for (auto [g, h] : commuting_pairs(c.group())) {
        out.push_back({g, h, c.at({g, h}) - c.at({h, g})});
    }
    return out;
}

/// Text form: one line per tuple, element indices followed by the value as
/// a reduced fraction "p/q". Lines starting with '#' are comments.
inline void write_cochain_text(std::ostream &out, const ExactCochain &phi) {
    out << "# degree " << phi.degree() << " group " << phi.group().label() << " order " << phi.group().order()
        << "\n";
    for (std::size_t i = 0; i < phi.size(); ++i) {
        for (Element g : phi.tuple_of(i)) out << g << ' ';
        out << phi[i].to_string() << '\n';
    }
}

inline ExactCochain read_cochain_text(std::istream &in, const FiniteGroup &group) {
    std::vector<std::pair<std::vector<Element>, TorusValue>> rows;
    std::string line;
    int degree = -1;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::vector<std::string> tokens;
        for (std::string t; ls >> t;) tokens.push_back(t);
        if (tokens.empty()) continue;
        const int deg = static_cast<int>(tokens.size()) - 1;
        if (degree < 0) degree = deg;
        if (deg != degree) throw InvalidArgument("line " + std::to_string(line_no) + ": inconsistent tuple length");
        std::vector<Element> tuple;
        for (int i = 0; i < deg; ++i) {
            const long e = std::stol(tokens[i]);
            if (e < 0 || static_cast<std::size_t>(e) >= group.order()) {
                throw InvalidArgument("line " + std::to_string(line_no) + ": element out of range");
            }
            tuple.push_back(static_cast<Element>(e));
        }
        rows.emplace_back(std::move(tuple), TorusValue::parse(tokens.back()));
    }
    if (degree < 0) throw InvalidArgument("empty cochain text");
    ExactCochain phi(group, degree);
    std::vector<char> seen(phi.size());
    for (auto &[tuple, value] : rows) {
        const std::size_t idx = phi.index_of(tuple);
        if (seen[idx]++) throw InvalidArgument("duplicate tuple in cochain text");
        phi[idx] = value;
    }
    for (char s : seen) {
        if (!s) throw InvalidArgument("cochain text does not cover every tuple");
    }
    return phi;
}

}  // namespace sptindex
