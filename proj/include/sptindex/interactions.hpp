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
#include <compare>
#include <cstdlib>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "sptindex/action.hpp"
#include "sptindex/errors.hpp"
#include "sptindex/linalg.hpp"

namespace sptindex {

/// Lattice site; one-dimensional patches use y = 0.
struct Site {
    int x = 0;
    int y = 0;
    auto operator<=>(const Site &) const = default;
};

inline Site operator+(Site a, Site b) { return {a.x + b.x, a.y + b.y}; }

/// Finite box of Z or Z^2 with inclusive bounds.
class LatticePatch {
   public:
    LatticePatch(int dimension, std::vector<std::pair<int, int>> bounds, Eigen::Index d)
        : dimension_(dimension), bounds_(std::move(bounds)), d_(d) {
        if (dimension_ != 1 && dimension_ != 2) throw InvalidArgument("patch dimension must be 1 or 2");
        if (static_cast<int>(bounds_.size()) != dimension_) throw InvalidArgument("need one bound pair per axis");
        for (auto [lo, hi] : bounds_) {
            if (lo > hi) throw InvalidArgument("patch bounds are empty");
        }
        if (d_ < 1) throw InvalidArgument("site dimension must be positive");
    }

    /// Chain of sites 0..n-1.
    static LatticePatch chain(int n, Eigen::Index d) { return LatticePatch(1, {{0, n - 1}}, d); }

    int dimension() const { return dimension_; }
    const std::vector<std::pair<int, int>> &bounds() const { return bounds_; }
    Eigen::Index d() const { return d_; }

    bool contains(Site s) const {
        if (s.x < bounds_[0].first || s.x > bounds_[0].second) return false;
        if (dimension_ == 1) return s.y == 0;
        return s.y >= bounds_[1].first && s.y <= bounds_[1].second;
    }

    std::vector<Site> sites() const {
        std::vector<Site> out;
        const auto [ylo, yhi] = dimension_ == 2 ? bounds_[1] : std::pair<int, int>{0, 0};
        for (int x = bounds_[0].first; x <= bounds_[0].second; ++x)
            for (int y = ylo; y <= yhi; ++y) out.push_back({x, y});
        return out;
    }

    bool operator==(const LatticePatch &) const = default;

   private:
    int dimension_;
    std::vector<std::pair<int, int>> bounds_;
    Eigen::Index d_;
};

/// Site predicates for the half planes x < 0, x >= 0, y >= 0, y < 0.
namespace region {
inline bool left(Site s) { return s.x < 0; }
inline bool right(Site s) { return s.x >= 0; }
inline bool upper(Site s) { return s.y >= 0; }
inline bool lower(Site s) { return s.y < 0; }
}  // namespace region

using Region = std::function<bool(Site)>;

/// Finite-range interaction: hermitian terms Phi(Z) on sorted site tuples Z.
/// A term acts on the tensor product of its sites in the listed order.
class Interaction {
   public:
    explicit Interaction(LatticePatch patch) : patch_(std::move(patch)) {}

    const LatticePatch &patch() const { return patch_; }
    const std::map<std::vector<Site>, Matrix> &terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    /// Adds m to Phi(sites). Sites must be listed in sorted order.
    void add_term(std::vector<Site> sites, const Matrix &m, double tol_herm = 1e-10) {
        if (sites.empty()) throw InvalidArgument("interaction term needs at least one site");
        if (!std::is_sorted(sites.begin(), sites.end())) throw InvalidArgument("interaction term sites must be listed in sorted order");
        if (std::adjacent_find(sites.begin(), sites.end()) != sites.end()) {
            throw InvalidArgument("interaction term repeats a site");
        }
        for (auto s : sites) {
            if (!patch_.contains(s)) throw InvalidArgument("interaction term leaves the patch");
        }
        Eigen::Index dim = 1;
        for (std::size_t i = 0; i < sites.size(); ++i) {
            if (dim > (Eigen::Index{1} << 14) / patch_.d()) throw ResourceError("interaction term is too large");
            dim *= patch_.d();
        }
        if (m.rows() != dim || m.cols() != dim) {
            throw InvalidArgument("term matrix must be " + std::to_string(dim) + "x" + std::to_string(dim));
        }
        if (max_abs(m - m.adjoint()) > tol_herm) throw InvalidArgument("interaction term is not hermitian");
        auto [it, fresh] = terms_.try_emplace(std::move(sites), m);
        if (!fresh) it->second += m;
    }

    friend Interaction operator+(const Interaction &a, const Interaction &b) {
        if (!(a.patch_ == b.patch_)) throw InvalidArgument("interactions live on different patches");
        Interaction out = a;
        for (const auto &[z, m] : b.terms_) {
            auto [it, fresh] = out.terms_.try_emplace(z, m);
            if (!fresh) it->second += m;
        }
        return out;
    }

    friend Interaction operator*(double c, const Interaction &a) {
        Interaction out = a;
        for (auto &[z, m] : out.terms_) m *= c;
        return out;
    }

   private:
    LatticePatch patch_;
    std::map<std::vector<Site>, Matrix> terms_;
};

/// F_phi(r) = exp(-r^phi) / (1 + r)^4.
inline double f_phi(double r, double phi) {
    if (!(phi > 0.0 && phi < 1.0)) throw InvalidArgument("phi must lie in (0, 1)");
    if (!(r >= 0.0)) throw InvalidArgument("distance must be nonnegative");
    const double q = (1.0 + r) * (1.0 + r);
    return std::exp(-std::pow(r, phi)) / (q * q);
}

enum class Metric { euclidean, l1 };

inline const char *metric_name(Metric m) { return m == Metric::euclidean ? "euclidean" : "l1"; }

inline double site_distance(Site a, Site b, Metric metric) {
    const double dx = a.x - b.x, dy = a.y - b.y;
    return metric == Metric::euclidean ? std::hypot(dx, dy) : std::abs(dx) + std::abs(dy);
}

inline double hermitian_norm(const Matrix &m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

/// ||Phi||_F = sup_{x,y} sum_{Z contains x,y} ||Phi(Z)|| / F_phi(|x - y|).
///
/// Pairs outside every term contribute 0, so the supremum runs over pairs
/// drawn from the same term, x = y included.
inline double f_norm(const Interaction &i, double phi, Metric metric = Metric::euclidean) {
    f_phi(0.0, phi);
    std::map<std::pair<Site, Site>, double> sums;
    for (const auto &[z, m] : i.terms()) {
        const double n = hermitian_norm(m);
        for (auto x : z)
            for (auto y : z) sums[{x, y}] += n;
    }
    double best = 0.0;
    for (const auto &[pair, total] : sums) {
        best = std::max(best, total / f_phi(site_distance(pair.first, pair.second, metric), phi));
    }
    return best;
}

/// Phi_Gamma: keeps the terms whose sites all lie in the region.
inline Interaction restrict(const Interaction &i, const Region &inside) {
    Interaction out(i.patch());
    for (const auto &[z, m] : i.terms()) {
        if (std::all_of(z.begin(), z.end(), inside)) out.add_term(z, m, 1e300);
    }
    return out;
}

struct InvarianceCheck {
    /// max_{g, Z} |U_Z(g) Phi(Z) U_Z(g)^dagger - Phi(Z)|.
    double group_deviation = 0.0;
    /// max over shifts and terms of |Phi(Z + s) - Phi(Z)|, where both Z and
    /// Z + s lie in the patch.
    double shift_deviation = 0.0;
    std::size_t shift_comparisons = 0;
};

inline InvarianceCheck check_invariance(const Interaction &i, const OnSiteAction &act,
                                        const std::vector<Site> &shifts) {
    if (act.dim() != i.patch().d()) throw InvalidArgument("action dimension does not match the patch");
    InvarianceCheck out;
    for (const auto &[z, m] : i.terms()) {
        for (const auto &u : act.matrices()) {
            Matrix w = u;
            for (std::size_t k = 1; k < z.size(); ++k) w = kron(w, u);
            out.group_deviation = std::max(out.group_deviation, max_abs(w * m * w.adjoint() - m));
        }
    }
    auto shifted = [](const std::vector<Site> &z, Site s) {
        std::vector<Site> out;
        for (auto x : z) out.push_back(x + s);
        return out;
    };
    auto inside = [&](const std::vector<Site> &z) {
        return std::all_of(z.begin(), z.end(), [&](Site x) { return i.patch().contains(x); });
    };
    for (auto s : shifts) {
        const Site back{-s.x, -s.y};
        for (const auto &[z, m] : i.terms()) {
            const auto image = shifted(z, s);
            if (inside(image)) {
                const auto it = i.terms().find(image);
                const double dev = it == i.terms().end() ? max_abs(m) : max_abs(it->second - m);
                out.shift_deviation = std::max(out.shift_deviation, dev);
                ++out.shift_comparisons;
            }
            // Terms whose preimage is in the patch but absent.
            const auto pre = shifted(z, back);
            if (inside(pre) && !i.terms().count(pre)) {
                out.shift_deviation = std::max(out.shift_deviation, max_abs(m));
                ++out.shift_comparisons;
            }
        }
    }
    return out;
}

}  // namespace sptindex
