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
#include <map>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "sptindex/action.hpp"
#include "sptindex/cochain.hpp"
#include "sptindex/cohomology.hpp"
#include "sptindex/errors.hpp"
#include "sptindex/group.hpp"
#include "sptindex/linalg.hpp"
#include "sptindex/mps.hpp"

namespace sptindex {

/// Matrices u(g) with u(g) u(h) = C(g, h) u(gh) for a U(1)-valued C.
class ProjectiveRep {
   public:
    ProjectiveRep(FiniteGroup group, std::vector<Matrix> matrices)
        : group_(std::move(group)), matrices_(std::move(matrices)) {
        if (matrices_.size() != group_.order()) throw InvalidArgument("projective rep needs one matrix per element");
        for (const auto &m : matrices_) {
            if (m.rows() != matrices_[0].rows() || m.cols() != m.rows() || m.rows() == 0) {
                throw InvalidArgument("projective rep matrices must be square of equal size");
            }
        }
    }

    const FiniteGroup &group() const { return group_; }
    Eigen::Index dim() const { return matrices_[0].rows(); }
    const Matrix &operator()(Element g) const { return matrices_[g]; }
    const std::vector<Matrix> &matrices() const { return matrices_; }

   private:
    FiniteGroup group_;
    std::vector<Matrix> matrices_;
};

struct ExtractedCocycle {
    NumericCochain cocycle;
    /// max_{g,h} |u(g) u(h) u(gh)^-1 - C(g,h) 1|.
    double residual = 0.0;
};

/// C(g, h) = arg(tr(u(g) u(h) u(gh)^-1) / D) / 2 pi.
inline ExtractedCocycle extract_projective_cocycle(const ProjectiveRep &rep, const Tolerances &tol = {}) {
    const auto &group = rep.group();
    const auto n = group.order();
    const auto dim = rep.dim();
    const Matrix id = Matrix::Identity(dim, dim);
    std::vector<Matrix> inverse;
    for (const auto &m : rep.matrices()) inverse.push_back(m.inverse());
    std::vector<Phase> values(n * n);
    double residual = 0.0;
    for (Element g = 0; g < n; ++g) {
        for (Element h = 0; h < n; ++h) {
            const Matrix w = rep(g) * rep(h) * inverse[group.mul(g, h)];
            const Complex c = w.trace() / static_cast<double>(dim);
            if (std::abs(c) < 1e-12) throw NotProjective("u(g)u(h)u(gh)^-1 is traceless");
            const Complex unit = c / std::abs(c);
            residual = std::max(residual, max_abs(w - unit * id));
            values[g * n + h] = Phase(std::arg(unit) / (2.0 * std::numbers::pi), tol.proj);
        }
    }
    if (residual > tol.proj) {
        std::ostringstream msg;
        msg << "matrices are not projectively multiplicative: residual " << residual << " > " << tol.proj;
        throw NotProjective(msg.str());
    }
    return {NumericCochain(group, 2, std::move(values)), residual};
}

/// Canonical state together with the leading mixed-transfer data for every
/// group element.
struct MPSSymmetryData {
    UniformMPS state;
    OnSiteAction action;
    std::vector<MixedTransferLeading> leading;

    double max_residual() const {
        double r = 0.0;
        for (const auto &l : leading) r = std::max(r, l.residual);
        return r;
    }
};

inline MPSSymmetryData symmetry_data(const UniformMPS &s, const OnSiteAction &act, const Tolerances &tol = {}) {
    if (act.dim() != s.d()) throw InvalidArgument("action dimension does not match the MPS physical dimension");
    UniformMPS c = s.is_canonical() ? s : canonicalize(s, tol);
    std::vector<MixedTransferLeading> leading;
    for (Element g = 0; g < act.group().order(); ++g) leading.push_back(mixed_transfer_leading(c, act, g, tol));
    return {std::move(c), act, std::move(leading)};
}

/// Boundary action on the right half-chain: u(g) = V(g)^T. The V(g) satisfy
/// V(gh) ~ V(h) V(g), so the transpose is a projective representation.
inline ProjectiveRep boundary_rep(const MPSSymmetryData &data) {
    std::vector<Matrix> m;
    for (const auto &l : data.leading) m.push_back(l.v.transpose());
    return ProjectiveRep(data.action.group(), std::move(m));
}

namespace detail {

inline double max_lattice_distance(const NumericCochain &c, std::int64_t m) {
    double worst = 0.0;
    for (const auto &p : c.values()) {
        const double v = p.value() * static_cast<double>(m);
        worst = std::max(worst, torus_distance(p.value(), std::round(v) / static_cast<double>(m)));
    }
    return worst;
}

}  // namespace detail

struct H2IndexResult {
    CohomologyClass index;
    /// Numeric cocycle after the root gauge, before snapping.
    NumericCochain numeric;
    double mixed_transfer_residual = 0.0;
    double projective_residual = 0.0;
    double snap_distance = 0.0;
    /// Empty when the fingerprint cross-check agreed or could not separate
    /// classes; otherwise a description of the disagreement.
    std::string fingerprint_note;
};

inline H2IndexResult compute_h2_index(const MPSSymmetryData &data, std::shared_ptr<const CohomologyGroup> space,
                                      const Tolerances &tol = {}) {
    const auto &group = data.action.group();
    if (!space) space = std::make_shared<const CohomologyGroup>(cohomology_group(group, 2));
    if (!(space->group() == group) || space->degree() != 2) throw InvalidArgument("H^2 space does not match group");
    const auto m = static_cast<std::int64_t>(group.order());
    const auto extracted = extract_projective_cocycle(boundary_rep(data), tol);
    const auto gauged = root_gauge(extracted.cocycle);
    const double dist = detail::max_lattice_distance(gauged, m);
    if (dist > tol.proj) {
        std::ostringstream msg;
        msg << "gauged cocycle is " << dist << " from the 1/" << m << " lattice (tolerance " << tol.proj << ")";
        throw SnapError(msg.str());
    }
    const auto exact = snap_to_roots(gauged, m);
    if (!is_cocycle(exact)) throw NotCocycle("snapped boundary cocycle fails the cocycle condition");
    H2IndexResult out{class_of(space, exact), gauged, data.max_residual(), extracted.residual, dist, {}};
    if (space->cardinality() <= 64 && fingerprint_separates(*space)) {
        const auto match = identify_by_fingerprint(*space, extracted.cocycle, 1e3 * tol.proj);
        if (match.status != FingerprintMatch::Status::matched || match.coordinates != out.index.coordinates) {
            out.fingerprint_note = "fingerprint cross-check disagrees with class_of";
        }
    }
    return out;
}

inline H2IndexResult compute_h2_index(const UniformMPS &s, const OnSiteAction &act, const Tolerances &tol = {}) {
    return compute_h2_index(symmetry_data(s, act, tol), nullptr, tol);
}

/// Class in H^2(G, U(1)) of the projective boundary action.
inline CohomologyClass h2_index(const UniformMPS &s, const OnSiteAction &act, const Tolerances &tol = {}) {
    return compute_h2_index(s, act, tol).index;
}

struct TranslationIndexResult {
    /// The character alpha as a degree-1 cochain with values in (1/|G|)Z/Z.
    ExactCochain character;
    std::vector<Complex> lambdas;
    double mixed_transfer_residual = 0.0;
    double snap_distance = 0.0;
};

inline TranslationIndexResult compute_translation_index(const MPSSymmetryData &data, const Tolerances &tol = {}) {
    const auto &group = data.action.group();
    const auto m = static_cast<std::int64_t>(group.order());
    std::vector<Phase> phases;
    std::vector<Complex> lambdas;
    for (const auto &l : data.leading) {
        lambdas.push_back(l.lambda);
        phases.emplace_back(std::arg(l.lambda) / (2.0 * std::numbers::pi), tol.eig);
    }
    const NumericCochain numeric(group, 1, std::move(phases));
    const double dist = detail::max_lattice_distance(numeric, m);
    if (dist > tol.proj) {
        std::ostringstream msg;
        msg << "transfer eigenvalue phase is " << dist << " from the 1/" << m << " lattice (tolerance " << tol.proj
            << ")";
        throw SnapError(msg.str());
    }
    return {snap_to_roots(numeric, m), std::move(lambdas), data.max_residual(), dist};
}

inline TranslationIndexResult compute_translation_index(const UniformMPS &s, const OnSiteAction &act,
                                                        const Tolerances &tol = {}) {
    return compute_translation_index(symmetry_data(s, act, tol), tol);
}

/// Character alpha: G -> (1/|G|)Z/Z with lambda_g = exp(2 pi i alpha(g)).
inline ExactCochain translation_index(const UniformMPS &s, const OnSiteAction &act, const Tolerances &tol = {}) {
    return compute_translation_index(s, act, tol).character;
}

/// Pointwise sum and integer multiple of characters.
inline ExactCochain character_scale(const ExactCochain &alpha, std::int64_t k) {
    std::vector<TorusValue> v;
    for (const auto &x : alpha.values()) v.emplace_back(x.num() * k, x.den());
    return ExactCochain(alpha.group(), alpha.degree(), std::move(v));
}

/// "{0, 1/2}" style list of character values.
inline std::string character_string(const ExactCochain &alpha) {
    std::string s = "{";
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        if (i) s += ", ";
        s += alpha[i].to_string();
    }
    return s + "}";
}

struct IndexReport {
    std::string group_label;
    std::optional<ExactCochain> h1;
    std::optional<CohomologyClass> h2;
    std::optional<CohomologyClass> h2_rotated;
    /// Why h2_rotated is absent, when it is.
    std::string h2_rotated_note;
    std::map<std::string, double> residuals;
    std::vector<std::string> provenance;
};

/// Row-state indices of a 2D product of rows, plus the rotated H^2 index when
/// a column state is supplied.
inline IndexReport two_d_index_report(const UniformMPS &row, const OnSiteAction &act,
                                      const std::optional<UniformMPS> &column = std::nullopt,
                                      const Tolerances &tol = {}) {
    IndexReport r;
    r.group_label = act.group().label();
    const auto space = std::make_shared<const CohomologyGroup>(cohomology_group(act.group(), 2));
    const auto data = symmetry_data(row, act, tol);
    const auto h2 = compute_h2_index(data, space, tol);
    const auto h1 = compute_translation_index(data, tol);
    r.h2 = h2.index;
    r.h1 = h1.character;
    r.residuals["row.mixed_transfer"] = data.max_residual();
    r.residuals["row.projective"] = h2.projective_residual;
    r.residuals["row.h2_snap"] = h2.snap_distance;
    r.residuals["row.h1_snap"] = h1.snap_distance;
    r.provenance.push_back("h2: mixed_transfer_leading -> extract_projective_cocycle -> root_gauge -> snap m=" +
                           std::to_string(act.group().order()) + " -> class_of");
    r.provenance.push_back("h1: arg(lambda_g) snapped at m=" + std::to_string(act.group().order()));
    if (column) {
        const auto cdata = symmetry_data(*column, act, tol);
        const auto rot = compute_h2_index(cdata, space, tol);
        r.h2_rotated = rot.index;
        r.residuals["column.mixed_transfer"] = cdata.max_residual();
        r.residuals["column.projective"] = rot.projective_residual;
        r.residuals["column.h2_snap"] = rot.snap_distance;
        r.provenance.push_back("h2_rotated: h2 pipeline on the supplied column state");
    } else {
        r.h2_rotated_note = "not computable: no column state supplied";
    }
    return r;
}

namespace transform {

struct BasisChange {
    Matrix v;
};
struct SymmetricCircuit {
    Matrix gate;
};
struct Block {
    int k = 2;
};
struct Stack {
    UniformMPS other;
    OnSiteAction action;
};

}  // namespace transform

using Transform = std::variant<transform::BasisChange, transform::SymmetricCircuit, transform::Block, transform::Stack>;

inline std::string transform_name(const Transform &t) {
    struct {
        std::string operator()(const transform::BasisChange &) const { return "basis_change"; }
        std::string operator()(const transform::SymmetricCircuit &) const { return "circuit"; }
        std::string operator()(const transform::Block &b) const { return "block(" + std::to_string(b.k) + ")"; }
        std::string operator()(const transform::Stack &s) const { return "stack(" + s.other.label() + ")"; }
    } visitor;
    return std::visit(visitor, t);
}

struct VerifyRow {
    std::string transform;
    bool passed = false;
    std::string expected_h1;
    std::string observed_h1;
    std::string expected_h2;
    std::string observed_h2;
    /// Error text when the transformed state could not be indexed.
    std::string detail;
};

/// Recomputes both indices after each transform and compares them with the
/// values predicted from the untransformed state.
inline std::vector<VerifyRow> verify_invariance(const UniformMPS &s, const OnSiteAction &act,
                                                const std::vector<Transform> &transforms, const Tolerances &tol = {}) {
    const auto space = std::make_shared<const CohomologyGroup>(cohomology_group(act.group(), 2));
    const auto base = symmetry_data(s, act, tol);
    const auto h2 = compute_h2_index(base, space, tol).index;
    const auto h1 = compute_translation_index(base, tol).character;

    std::vector<VerifyRow> rows;
    for (const auto &t : transforms) {
        VerifyRow row;
        row.transform = transform_name(t);
        try {
            CohomologyClass want_h2 = h2;
            ExactCochain want_h1 = h1;
            UniformMPS next = s;
            OnSiteAction next_act = act;
            if (const auto *b = std::get_if<transform::BasisChange>(&t)) {
                std::tie(next, next_act) = basis_change(s, act, b->v, tol);
            } else if (const auto *c = std::get_if<transform::SymmetricCircuit>(&t)) {
                std::tie(next, next_act) = apply_symmetric_circuit(s, act, c->gate, tol);
                want_h1 = character_scale(h1, 2);
            } else if (const auto *k = std::get_if<transform::Block>(&t)) {
                std::tie(next, next_act) = block(s, act, k->k);
                want_h1 = character_scale(h1, k->k);
            } else if (const auto *st = std::get_if<transform::Stack>(&t)) {
                const auto other = symmetry_data(st->other, st->action, tol);
                want_h2 = class_add(h2, compute_h2_index(other, space, tol).index);
                want_h1 = h1 + compute_translation_index(other, tol).character;
                std::tie(next, next_act) = stack(s, st->other, act, st->action);
            }
            const auto data = symmetry_data(next, next_act, tol);
            const auto got_h2 = compute_h2_index(data, space, tol).index;
            const auto got_h1 = compute_translation_index(data, tol).character;
            row.expected_h1 = character_string(want_h1);
            row.observed_h1 = character_string(got_h1);
            row.expected_h2 = want_h2.coordinates_string();
            row.observed_h2 = got_h2.coordinates_string();
            row.passed = got_h2.coordinates == want_h2.coordinates && got_h1.values() == want_h1.values();
        } catch (const Error &e) {
            row.passed = false;
            row.detail = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace sptindex
