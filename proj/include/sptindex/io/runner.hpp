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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sptindex/builtins.hpp"
#include "sptindex/cohomology.hpp"
#include "sptindex/errors.hpp"
#include "sptindex/indices.hpp"
#include "sptindex/interactions.hpp"

namespace sptindex::io {

using json = nlohmann::json;

/// Invalid spec: carries the offending field path (or line/column).
class SpecError : public InvalidArgument {
   public:
    SpecError(const std::string &field, const std::string &message)
        : InvalidArgument(field + ": " + message), field_(field) {}
    const std::string &field() const { return field_; }

   private:
    std::string field_;
};

namespace detail {

inline std::string child(const std::string &path, const std::string &key) {
    return path.empty() ? key : path + "." + key;
}
inline std::string child(const std::string &path, std::size_t index) {
    return path + "[" + std::to_string(index) + "]";
}

inline const json &require(const json &obj, const std::string &key, const std::string &path) {
    if (!obj.is_object()) throw SpecError(path, "expected an object");
    const auto it = obj.find(key);
    if (it == obj.end()) throw SpecError(child(path, key), "missing field");
    return *it;
}

template <class T>
T get_as(const json &v, const std::string &path) {
    try {
        return v.get<T>();
    } catch (const json::exception &) {
        throw SpecError(path, "wrong type (" + std::string(v.type_name()) + ")");
    }
}

template <class T>
T get_or(const json &obj, const std::string &key, T fallback, const std::string &path) {
    const auto it = obj.find(key);
    return it == obj.end() ? fallback : get_as<T>(*it, child(path, key));
}

inline Complex parse_complex(const json &v, const std::string &path) {
    if (v.is_number()) return {v.get<double>(), 0.0};
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
        return {v[0].get<double>(), v[1].get<double>()};
    }
    throw SpecError(path, "expected a number or [re, im]");
}

inline Matrix parse_matrix(const json &v, const std::string &path) {
    if (!v.is_array() || v.empty()) throw SpecError(path, "expected a nonempty array of rows");
    const auto rows = v.size();
    std::size_t cols = 0;
    for (std::size_t r = 0; r < rows; ++r) {
        if (!v[r].is_array()) throw SpecError(child(path, r), "expected a row array");
        if (r == 0) cols = v[r].size();
        if (v[r].size() != cols || cols == 0) throw SpecError(child(path, r), "ragged matrix");
    }
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = parse_complex(v[r][c], child(child(path, r), c));
    return m;
}

}  // namespace detail

inline FiniteGroup parse_group(const json &v, const std::string &path) {
    if (v.is_string()) {
        try {
            return parse_group_name(v.get<std::string>());
        } catch (const Error &e) {
            throw SpecError(path, e.what());
        }
    }
    const auto kind = detail::get_as<std::string>(detail::require(v, "kind", path), detail::child(path, "kind"));
    try {
        if (kind == "cyclic" || kind == "dihedral") {
            const auto n = detail::get_as<long>(detail::require(v, "n", path), detail::child(path, "n"));
            if (n < 1 || n > 4096) throw SpecError(detail::child(path, "n"), "order out of range");
            return kind == "cyclic" ? make_cyclic(n) : make_dihedral(n);
        }
        if (kind == "product") {
            const auto &factors = detail::require(v, "factors", path);
            const auto fpath = detail::child(path, "factors");
            if (!factors.is_array() || factors.empty()) throw SpecError(fpath, "expected a nonempty list");
            FiniteGroup g = parse_group(factors[0], detail::child(fpath, 0));
            for (std::size_t i = 1; i < factors.size(); ++i) {
                g = direct_product(g, parse_group(factors[i], detail::child(fpath, i)));
            }
            return g;
        }
        if (kind == "table") {
            const auto rows = detail::get_as<std::vector<std::vector<Element>>>(detail::require(v, "rows", path),
                                                                                detail::child(path, "rows"));
            return FiniteGroup::from_table(rows, detail::get_or<std::string>(v, "label", "table", path));
        }
    } catch (const SpecError &) {
        throw;
    } catch (const Error &e) {
        throw SpecError(path, e.what());
    }
    throw SpecError(detail::child(path, "kind"), "unknown group kind '" + kind + "'");
}

inline OnSiteAction parse_action(const json &v, const FiniteGroup &group, const std::string &path,
                                 const Tolerances &tol) {
    try {
        std::optional<OnSiteAction> act;
        if (v.contains("matrices")) {
            const auto &ms = v["matrices"];
            const auto mpath = detail::child(path, "matrices");
            if (!ms.is_array()) throw SpecError(mpath, "expected a list of matrices");
            if (ms.size() != group.order()) {
                throw SpecError(mpath, "expected " + std::to_string(group.order()) + " matrices, got " +
                                           std::to_string(ms.size()));
            }
            std::vector<Matrix> m;
            for (std::size_t i = 0; i < ms.size(); ++i) m.push_back(detail::parse_matrix(ms[i], detail::child(mpath, i)));
            act.emplace(group, std::move(m), tol);
        } else {
            const auto name =
                detail::get_as<std::string>(detail::require(v, "name", path), detail::child(path, "name"));
            if (name == "spin1_rotations_z2z2") {
                act.emplace(spin1_rotations_z2z2());
            } else if (name == "two_qubit_flips_z2z2") {
                act.emplace(two_qubit_flips_z2z2());
            } else if (name == "diagonal") {
                const auto charges = detail::get_as<std::vector<long>>(detail::require(v, "charges", path),
                                                                       detail::child(path, "charges"));
                if (charges.empty()) throw SpecError(detail::child(path, "charges"), "needs at least one charge");
                act.emplace(diagonal_zn_action(group.order(), charges));
            } else if (name == "trivial") {
                const auto d = detail::get_as<long>(detail::require(v, "d", path), detail::child(path, "d"));
                if (d < 1 || d > 4096) throw SpecError(detail::child(path, "d"), "dimension out of range");
                act.emplace(trivial_action(group, d));
            } else {
                throw SpecError(detail::child(path, "name"), "unknown action '" + name + "'");
            }
        }
        if (!(act->group() == group)) {
            throw SpecError(path, "action is defined for group " + act->group().label() +
                                      ", which does not match the spec group " + group.label());
        }
        return *act;
    } catch (const SpecError &) {
        throw;
    } catch (const Error &e) {
        throw SpecError(path, e.what());
    }
}

/// State block; named product states take their dimension from `d`.
inline UniformMPS parse_state(const json &v, Eigen::Index d, const std::string &path) {
    try {
        if (v.contains("tensors")) {
            const auto &ts = v["tensors"];
            const auto tpath = detail::child(path, "tensors");
            if (!ts.is_array() || ts.empty()) throw SpecError(tpath, "expected a nonempty list of matrices");
            std::vector<Matrix> t;
            for (std::size_t i = 0; i < ts.size(); ++i) t.push_back(detail::parse_matrix(ts[i], detail::child(tpath, i)));
            for (std::size_t i = 1; i < t.size(); ++i) {
                if (t[i].rows() != t[0].rows() || t[i].cols() != t[0].cols() || t[i].rows() != t[i].cols()) {
                    throw SpecError(detail::child(tpath, i), "tensors must be square of equal bond dimension");
                }
            }
            return UniformMPS(std::move(t), detail::get_or<std::string>(v, "label", "explicit", path),
                              static_cast<int>(detail::get_or<long>(v, "sites_per_cell", 1, path)));
        }
        const auto name = detail::get_as<std::string>(detail::require(v, "name", path), detail::child(path, "name"));
        if (name == "aklt") return aklt_state();
        if (name == "cluster") return cluster_chain();
        if (name == "cluster_z2z2") return cluster_z2z2().state;
        if (name == "spin1_product") return spin1_product(detail::get_or<long>(v, "level", 1, path)).state;
        if (name == "ghz") return ghz_state();
        if (name == "product" || name == "charged_product") {
            const auto dim = detail::get_or<long>(v, "d", static_cast<long>(d), path);
            const auto level = detail::get_as<long>(detail::require(v, "level", path), detail::child(path, "level"));
            if (level < 0 || level >= dim) throw SpecError(detail::child(path, "level"), "level out of range");
            return product_state(dim, level, name);
        }
        throw SpecError(detail::child(path, "name"), "unknown state '" + name + "'");
    } catch (const SpecError &) {
        throw;
    } catch (const Error &e) {
        throw SpecError(path, e.what());
    }
}

/// Interaction file: {"patch": {"dimension", "bounds", "d"}, "terms": [{"sites", "matrix"}]}.
inline Interaction parse_interaction(const json &v, const std::string &path, double tol_herm) {
    const auto &p = detail::require(v, "patch", path);
    const auto ppath = detail::child(path, "patch");
    const auto dim = detail::get_as<int>(detail::require(p, "dimension", ppath), detail::child(ppath, "dimension"));
    const auto bounds = detail::get_as<std::vector<std::pair<int, int>>>(detail::require(p, "bounds", ppath),
                                                                         detail::child(ppath, "bounds"));
    const auto d = detail::get_as<long>(detail::require(p, "d", ppath), detail::child(ppath, "d"));
    std::optional<Interaction> out;
    try {
        out.emplace(LatticePatch(dim, bounds, d));
    } catch (const Error &e) {
        throw SpecError(ppath, e.what());
    }
    const auto &terms = detail::require(v, "terms", path);
    const auto tpath = detail::child(path, "terms");
    if (!terms.is_array()) throw SpecError(tpath, "expected a list");
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const auto ipath = detail::child(tpath, i);
        const auto coords = detail::get_as<std::vector<std::vector<int>>>(detail::require(terms[i], "sites", ipath),
                                                                          detail::child(ipath, "sites"));
        std::vector<Site> sites;
        for (const auto &c : coords) {
            if (static_cast<int>(c.size()) != dim) throw SpecError(detail::child(ipath, "sites"), "wrong coordinate arity");
            sites.push_back({c[0], dim == 2 ? c[1] : 0});
        }
        const Matrix m = detail::parse_matrix(detail::require(terms[i], "matrix", ipath), detail::child(ipath, "matrix"));
        try {
            out->add_term(std::move(sites), m, tol_herm);
        } catch (const Error &e) {
            throw SpecError(ipath, e.what());
        }
    }
    return *out;
}

inline json parse_json_text(const std::string &text, const std::string &source) {
    try {
        return json::parse(text);
    } catch (const json::parse_error &e) {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw SpecError(source + ":" + std::to_string(line) + ":" + std::to_string(col), "JSON syntax error");
    }
}

inline std::string read_file(const std::filesystem::path &path, const std::string &field) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SpecError(field, "cannot read file '" + path.string() + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

struct TaskSpec {
    std::string kind;
    json params;
    std::optional<Interaction> interaction;
    std::string interaction_source;
};

struct RunSpec {
    FiniteGroup group = make_cyclic(1);
    std::optional<OnSiteAction> action;
    std::optional<UniformMPS> state;
    std::optional<UniformMPS> column;
    std::vector<TaskSpec> tasks;
    Tolerances tol;
    /// "default" or "spec" per tolerance name.
    std::map<std::string, std::string> tol_source;
    std::uint64_t seed = 0;
    std::string label;
};

namespace detail {

inline void parse_tolerances(const json &v, RunSpec &spec) {
    std::map<std::string, double *> fields = {{"eig", &spec.tol.eig},   {"unitary", &spec.tol.unitary},
                                              {"proj", &spec.tol.proj}, {"rep", &spec.tol.rep},
                                              {"gap", &spec.tol.gap},   {"herm", &spec.tol.herm}};
    for (const auto &[name, ptr] : fields) spec.tol_source[name] = "default";
    spec.tol_source["max_iter"] = "default";
    if (v.is_null()) return;
    if (!v.is_object()) throw SpecError("tolerances", "expected an object");
    for (const auto &[key, value] : v.items()) {
        const auto path = child("tolerances", key);
        if (key == "max_iter") {
            spec.tol.max_iter = get_as<int>(value, path);
            if (spec.tol.max_iter < 1) throw SpecError(path, "must be positive");
        } else if (auto it = fields.find(key); it != fields.end()) {
            *it->second = get_as<double>(value, path);
            if (!(*it->second > 0.0 && *it->second < 1.0)) throw SpecError(path, "must lie in (0, 1)");
        } else {
            throw SpecError(path, "unknown tolerance");
        }
        spec.tol_source[key] = "spec";
    }
}

inline void check_transform(const json &t, const std::string &path) {
    const auto kind = get_as<std::string>(require(t, "kind", path), child(path, "kind"));
    if (kind == "block") {
        const auto k = get_as<long>(require(t, "k", path), child(path, "k"));
        if (k < 1 || k > 16) throw SpecError(child(path, "k"), "block size out of range");
    } else if (kind != "basis_change" && kind != "circuit" && kind != "stack") {
        throw SpecError(child(path, "kind"), "unknown transform '" + kind + "'");
    }
}

}  // namespace detail

inline RunSpec parse_spec(const json &doc, const std::filesystem::path &base_dir, std::optional<std::uint64_t> seed = {}) {
    if (!doc.is_object()) throw SpecError("<root>", "expected a JSON object");
    RunSpec spec;
    spec.label = detail::get_or<std::string>(doc, "label", "", "");
    detail::parse_tolerances(doc.contains("tolerances") ? doc["tolerances"] : json(), spec);
    spec.seed = seed ? *seed : detail::get_or<std::uint64_t>(doc, "seed", 0, "");
    spec.group = parse_group(detail::require(doc, "group", ""), "group");
    const auto &tasks = detail::require(doc, "tasks", "");
    if (!tasks.is_array()) throw SpecError("tasks", "expected a list");

    bool needs_state = false;
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        const auto path = detail::child("tasks", i);
        TaskSpec t;
        t.kind = detail::get_as<std::string>(detail::require(tasks[i], "task", path), detail::child(path, "task"));
        t.params = tasks[i];
        if (t.kind == "cohomology") {
            const auto n = detail::get_as<long>(detail::require(tasks[i], "n", path), detail::child(path, "n"));
            if (n < 0 || n > 8) throw SpecError(detail::child(path, "n"), "degree out of range");
            if (tasks[i].contains("m") && detail::get_as<long>(tasks[i]["m"], detail::child(path, "m")) < 1) {
                throw SpecError(detail::child(path, "m"), "modulus must be positive");
            }
        } else if (t.kind == "h2_index" || t.kind == "translation_index" || t.kind == "two_d_report") {
            needs_state = true;
        } else if (t.kind == "verify") {
            needs_state = true;
            const auto &ts = detail::require(tasks[i], "transforms", path);
            if (!ts.is_array()) throw SpecError(detail::child(path, "transforms"), "expected a list");
            for (std::size_t j = 0; j < ts.size(); ++j) {
                detail::check_transform(ts[j], detail::child(detail::child(path, "transforms"), j));
            }
        } else if (t.kind == "f_norm") {
            const auto file = detail::get_as<std::string>(detail::require(tasks[i], "interaction", path),
                                                          detail::child(path, "interaction"));
            const auto phi = detail::get_or<double>(tasks[i], "phi", 0.5, path);
            if (!(phi > 0.0 && phi < 1.0)) throw SpecError(detail::child(path, "phi"), "phi must lie in (0, 1)");
            const auto metric = detail::get_or<std::string>(tasks[i], "metric", "euclidean", path);
            if (metric != "euclidean" && metric != "l1") throw SpecError(detail::child(path, "metric"), "unknown metric");
            const auto full = base_dir / file;
            const auto ipath = detail::child(path, "interaction");
            t.interaction = parse_interaction(parse_json_text(read_file(full, ipath), file), file, spec.tol.herm);
            t.interaction_source = file;
        } else {
            throw SpecError(detail::child(path, "task"), "unknown task '" + t.kind + "'");
        }
        spec.tasks.push_back(std::move(t));
    }

    if (doc.contains("action") || needs_state) {
        spec.action = parse_action(detail::require(doc, "action", ""), spec.group, "action", spec.tol);
    }
    if (doc.contains("state") || needs_state) {
        const auto d = spec.action ? spec.action->dim() : 1;
        spec.state = parse_state(detail::require(doc, "state", ""), d, "state");
        if (spec.action && spec.state->d() != spec.action->dim()) {
            throw SpecError("state", "physical dimension " + std::to_string(spec.state->d()) +
                                         " does not match action dimension " + std::to_string(spec.action->dim()));
        }
    }
    if (doc.contains("column")) {
        const auto d = spec.action ? spec.action->dim() : 1;
        spec.column = parse_state(doc["column"], d, "column");
        if (spec.action && spec.column->d() != spec.action->dim()) {
            throw SpecError("column", "physical dimension " + std::to_string(spec.column->d()) +
                                          " does not match action dimension " + std::to_string(spec.action->dim()));
        }
    }
    for (std::size_t i = 0; i < spec.tasks.size(); ++i) {
        if (spec.tasks[i].kind != "verify") continue;
        const auto &ts = spec.tasks[i].params["transforms"];
        for (std::size_t j = 0; j < ts.size(); ++j) {
            const auto path = detail::child(detail::child(detail::child("tasks", i), "transforms"), j);
            const auto kind = ts[j]["kind"].get<std::string>();
            const Eigen::Index d = spec.action->dim();
            if (kind == "basis_change" && ts[j].contains("matrix")) {
                const Matrix v = detail::parse_matrix(ts[j]["matrix"], detail::child(path, "matrix"));
                if (v.rows() != d || v.cols() != d) throw SpecError(detail::child(path, "matrix"), "wrong dimension");
            }
            if (kind == "circuit" && ts[j].contains("gate")) {
                const Matrix g = detail::parse_matrix(ts[j]["gate"], detail::child(path, "gate"));
                if (g.rows() != d * d || g.cols() != d * d) throw SpecError(detail::child(path, "gate"), "wrong dimension");
            }
            if (kind == "stack" && ts[j].contains("state")) {
                const auto &other = ts[j]["state"];
                if (!(other.is_string() && other.get<std::string>() == "self")) {
                    const auto act = parse_action(detail::require(ts[j], "action", path), spec.group,
                                                  detail::child(path, "action"), spec.tol);
                    const auto st = parse_state(other, act.dim(), detail::child(path, "state"));
                    if (st.d() != act.dim()) throw SpecError(detail::child(path, "state"), "dimension mismatch with action");
                }
            }
        }
    }
    return spec;
}

inline RunSpec load_spec(const std::filesystem::path &path, std::optional<std::uint64_t> seed = {}) {
    const auto text = read_file(path, path.string());
    auto spec = parse_spec(parse_json_text(text, path.filename().string()), path.parent_path(), seed);
    if (spec.label.empty()) spec.label = path.filename().string();
    return spec;
}

/// One reported value; `tolerance` names the setting that produced or
/// bounds it ("exact" for snapped or integer data).
struct Entry {
    std::string key;
    std::string value;
    std::string tolerance;
};

struct TaskResult {
    std::string name;
    bool ok = true;
    std::vector<Entry> entries;
    std::string error;
};

inline std::string format_number(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6e", x);
    return buf;
}

inline std::string format_complex(Complex z) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.12f%+.12fi", z.real() + 0.0, z.imag() + 0.0);
    return buf;
}

struct RunReport {
    std::string label;
    std::string group;
    std::uint64_t seed = 0;
    std::vector<Entry> tolerances;
    std::vector<TaskResult> tasks;

    bool ok() const {
        for (const auto &t : tasks)
            if (!t.ok) return false;
        return true;
    }
    int exit_status() const { return ok() ? 0 : 1; }

    /// Aligned human-readable tables.
    std::string human() const {
        std::ostringstream out;
        out << "spec   " << label << "\n";
        out << "group  " << group << "\n";
        out << "seed   " << seed << "\n\n";
        auto table = [&](const std::vector<Entry> &rows) {
            std::size_t wk = 3, wv = 5;
            for (const auto &e : rows) {
                wk = std::max(wk, e.key.size());
                wv = std::max(wv, e.value.size());
            }
            for (const auto &e : rows) {
                out << "  " << e.key << std::string(wk - e.key.size() + 2, ' ') << e.value;
                if (!e.tolerance.empty()) out << std::string(wv - e.value.size() + 2, ' ') << "[" << e.tolerance << "]";
                out << "\n";
            }
        };
        out << "tolerances\n";
        table(tolerances);
        for (std::size_t i = 0; i < tasks.size(); ++i) {
            const auto &t = tasks[i];
            out << "\ntask " << (i + 1) << ": " << t.name << "  " << (t.ok ? "ok" : "FAILED") << "\n";
            if (!t.error.empty()) out << "  error: " << t.error << "\n";
            table(t.entries);
        }
        out << "\nstatus " << (ok() ? "ok" : "failed") << " (exit " << exit_status() << ")\n";
        return out.str();
    }

    /// Flat key=value lines; each entry's tolerance is a sibling key.
    std::string machine() const {
        std::ostringstream out;
        out << "spec=" << label << "\n";
        out << "group=" << group << "\n";
        out << "seed=" << seed << "\n";
        for (const auto &e : tolerances) out << "tolerance." << e.key << "=" << e.value << "\n";
        for (std::size_t i = 0; i < tasks.size(); ++i) {
            const auto prefix = "task." + std::to_string(i + 1) + ".";
            const auto &t = tasks[i];
            out << prefix << "name=" << t.name << "\n";
            out << prefix << "ok=" << (t.ok ? "true" : "false") << "\n";
            if (!t.error.empty()) out << prefix << "error=" << t.error << "\n";
            for (const auto &e : t.entries) {
                out << prefix << e.key << "=" << e.value << "\n";
                if (!e.tolerance.empty()) out << prefix << e.key << ".tolerance=" << e.tolerance << "\n";
            }
        }
        out << "exit_status=" << exit_status() << "\n";
        return out.str();
    }
};

namespace detail {

inline std::string tol_tag(const char *name, double value) { return std::string("tol_") + name + "=" + format_number(value); }

inline std::string fingerprint_string(const CohomologyClass &c) {
    std::string s;
    for (const auto &e : c.fingerprint) {
        if (e.g >= e.h) continue;
        if (!s.empty()) s += " ";
        s += "b(" + std::to_string(e.g) + "," + std::to_string(e.h) + ")=" + e.beta.to_string();
    }
    return s.empty() ? "-" : s;
}

inline void add_h2_entries(TaskResult &r, const std::string &prefix, const H2IndexResult &h2, const Tolerances &tol) {
    r.entries.push_back({prefix + "h2.group", format_divisors(h2.index.divisors()), "exact"});
    r.entries.push_back({prefix + "h2.class", h2.index.coordinates_string(), "exact"});
    r.entries.push_back({prefix + "h2.trivial", h2.index.is_trivial() ? "true" : "false", "exact"});
    r.entries.push_back({prefix + "h2.fingerprint", fingerprint_string(h2.index), "exact"});
    r.entries.push_back({prefix + "residual.mixed_transfer", format_number(h2.mixed_transfer_residual), tol_tag("eig", tol.eig)});
    r.entries.push_back({prefix + "residual.projective", format_number(h2.projective_residual), tol_tag("proj", tol.proj)});
    r.entries.push_back({prefix + "residual.h2_snap", format_number(h2.snap_distance), tol_tag("proj", tol.proj)});
    if (!h2.fingerprint_note.empty()) {
        r.entries.push_back({prefix + "h2.fingerprint_check", h2.fingerprint_note, "exact"});
        r.ok = false;
    }
}

inline void add_h1_entries(TaskResult &r, const std::string &prefix, const TranslationIndexResult &h1,
                           const Tolerances &tol) {
    r.entries.push_back({prefix + "h1.alpha", character_string(h1.character), "exact"});
    for (std::size_t g = 0; g < h1.lambdas.size(); ++g) {
        r.entries.push_back({prefix + "h1.lambda." + std::to_string(g), format_complex(h1.lambdas[g]), tol_tag("eig", tol.eig)});
    }
    r.entries.push_back({prefix + "residual.mixed_transfer", format_number(h1.mixed_transfer_residual), tol_tag("eig", tol.eig)});
    r.entries.push_back({prefix + "residual.h1_snap", format_number(h1.snap_distance), tol_tag("proj", tol.proj)});
}

}  // namespace detail

/// Executes every task in order. Task errors become failed rows.
inline RunReport run_spec(const RunSpec &spec) {
    RunReport report;
    report.label = spec.label;
    report.group = spec.group.label() + " (order " + std::to_string(spec.group.order()) + ")";
    report.seed = spec.seed;
    const auto &tol = spec.tol;
    auto tol_entry = [&](const char *name, double v) {
        report.tolerances.push_back({name, format_number(v), spec.tol_source.at(name)});
    };
    tol_entry("eig", tol.eig);
    tol_entry("unitary", tol.unitary);
    tol_entry("proj", tol.proj);
    tol_entry("rep", tol.rep);
    tol_entry("gap", tol.gap);
    tol_entry("herm", tol.herm);
    report.tolerances.push_back({"max_iter", std::to_string(tol.max_iter), spec.tol_source.at("max_iter")});

    std::mt19937_64 rng(spec.seed);
    std::shared_ptr<const CohomologyGroup> h2_space;
    auto space = [&] {
        if (!h2_space) h2_space = std::make_shared<const CohomologyGroup>(cohomology_group(spec.group, 2));
        return h2_space;
    };

    for (const auto &task : spec.tasks) {
        TaskResult r;
        r.name = task.kind;
        try {
            if (task.kind == "cohomology") {
                const int n = task.params["n"].get<int>();
                const std::int64_t m = task.params.contains("m") ? task.params["m"].get<std::int64_t>()
                                                                 : static_cast<std::int64_t>(spec.group.order());
                r.name += "(n=" + std::to_string(n) + ", m=" + std::to_string(m) + ")";
                const auto h = cohomology_group(spec.group, n, m);
                r.entries.push_back({"divisors", format_divisors(h.divisors()), "exact"});
                r.entries.push_back({"order", std::to_string(h.cardinality()), "exact"});
                if (!h.diagnostic().empty()) r.entries.push_back({"diagnostic", h.diagnostic(), "exact"});
            } else if (task.kind == "h2_index") {
                const auto data = symmetry_data(*spec.state, *spec.action, tol);
                detail::add_h2_entries(r, "", compute_h2_index(data, space(), tol), tol);
            } else if (task.kind == "translation_index") {
                const auto data = symmetry_data(*spec.state, *spec.action, tol);
                detail::add_h1_entries(r, "", compute_translation_index(data, tol), tol);
            } else if (task.kind == "two_d_report") {
                const auto data = symmetry_data(*spec.state, *spec.action, tol);
                detail::add_h1_entries(r, "row.", compute_translation_index(data, tol), tol);
                detail::add_h2_entries(r, "row.", compute_h2_index(data, space(), tol), tol);
                if (spec.column) {
                    const auto cdata = symmetry_data(*spec.column, *spec.action, tol);
                    detail::add_h2_entries(r, "column.", compute_h2_index(cdata, space(), tol), tol);
                } else {
                    r.entries.push_back({"column.h2", "not computable: no column state supplied", ""});
                }
            } else if (task.kind == "verify") {
                std::vector<Transform> ts;
                std::vector<std::string> notes;
                for (const auto &t : task.params["transforms"]) {
                    const auto kind = t["kind"].get<std::string>();
                    if (kind == "basis_change") {
                        ts.push_back(transform::BasisChange{t.contains("matrix") ? detail::parse_matrix(t["matrix"], "matrix")
                                                                                 : random_unitary(spec.action->dim(), rng)});
                        notes.push_back(t.contains("matrix") ? "explicit" : "random unitary");
                    } else if (kind == "circuit") {
                        ts.push_back(transform::SymmetricCircuit{t.contains("gate") ? detail::parse_matrix(t["gate"], "gate")
                                                                                    : random_symmetric_gate(*spec.action, rng)});
                        notes.push_back(std::string(t.contains("gate") ? "explicit gate" : "random symmetric gate") +
                                        "; h1 compared as alpha^2 per doubled cell");
                    } else if (kind == "block") {
                        const int k = t["k"].get<int>();
                        ts.push_back(transform::Block{k});
                        notes.push_back("h1 is alpha^" + std::to_string(k) + " relative to the original lattice");
                    } else {
                        const bool self = !t.contains("state") || (t["state"].is_string() && t["state"] == "self");
                        if (self) {
                            ts.push_back(transform::Stack{*spec.state, *spec.action});
                        } else {
                            auto act = parse_action(t["action"], spec.group, "action", tol);
                            auto st = parse_state(t["state"], act.dim(), "state");
                            ts.push_back(transform::Stack{std::move(st), std::move(act)});
                        }
                        notes.push_back("expect class_add and character sum");
                    }
                }
                const auto rows = verify_invariance(*spec.state, *spec.action, ts, tol);
                for (std::size_t j = 0; j < rows.size(); ++j) {
                    const auto &row = rows[j];
                    const auto p = "row." + std::to_string(j + 1) + ".";
                    r.entries.push_back({p + "transform", row.transform, ""});
                    r.entries.push_back({p + "note", notes[j], ""});
                    r.entries.push_back({p + "result", row.passed ? "pass" : "FAIL", ""});
                    if (!row.detail.empty()) {
                        r.entries.push_back({p + "error", row.detail, ""});
                    } else {
                        r.entries.push_back({p + "h1.expected", row.expected_h1, "exact"});
                        r.entries.push_back({p + "h1.observed", row.observed_h1, "exact"});
                        r.entries.push_back({p + "h2.expected", row.expected_h2, "exact"});
                        r.entries.push_back({p + "h2.observed", row.observed_h2, "exact"});
                    }
                    if (!row.passed) r.ok = false;
                }
            } else if (task.kind == "f_norm") {
                const double phi = task.params.value("phi", 0.5);
                const auto metric = task.params.value("metric", std::string("euclidean")) == "l1" ? Metric::l1 : Metric::euclidean;
                r.entries.push_back({"interaction", task.interaction_source, ""});
                r.entries.push_back({"terms", std::to_string(task.interaction->terms().size()), "exact"});
                r.entries.push_back({"phi", format_number(phi), ""});
                r.entries.push_back({"metric", metric_name(metric), ""});
                r.entries.push_back({"f_norm", format_number(f_norm(*task.interaction, phi, metric)), detail::tol_tag("herm", tol.herm)});
            }
        } catch (const Error &e) {
            r.ok = false;
            r.error = e.what();
        }
        report.tasks.push_back(std::move(r));
    }
    return report;
}

/// Built-in catalogue, one line per item. `filter` selects a category
/// ("group", "action", "state") or matches item names by substring.
inline std::string list_builtins(const std::string &filter = "") {
    struct Item {
        std::string category, name, detail;
    };
    std::vector<Item> items = {
        {"group", "cyclic", "kind=cyclic n: Z_n"},
        {"group", "dihedral", "kind=dihedral n: D_n of order 2n"},
        {"group", "product", "kind=product factors: direct product, lexicographic encoding"},
        {"group", "table", "kind=table rows: explicit multiplication table"},
        {"action", "spin1_rotations_z2z2", "Z2xZ2, d=3, pi rotations of a spin 1"},
        {"action", "two_qubit_flips_z2z2", "Z2xZ2, d=4, X^i (x) X^j"},
        {"action", "diagonal", "Z_n, d=len(charges), diag(exp(2 pi i g q_j / n))"},
        {"action", "trivial", "any group, d given, U(g) = 1"},
        {"state", "aklt", "d=3, D=2, AKLT chain"},
        {"state", "spin1_product", "d=3, D=1, spin-1 |level>"},
        {"state", "cluster", "d=2, D=2, one-site cluster chain"},
        {"state", "cluster_z2z2", "d=4, D=2, cluster chain on two-site cells"},
        {"state", "charged_product", "d=action dim, D=1, |level>"},
        {"state", "product", "d given or action dim, D=1, |level>"},
        {"state", "ghz", "d=2, D=2, non-injective (rejected by the index pipeline)"},
    };
    std::ostringstream out;
    for (const auto &it : items) {
        if (!filter.empty() && filter != it.category && it.name.find(filter) == std::string::npos) continue;
        out << it.category << std::string(8 - it.category.size(), ' ') << it.name
            << std::string(it.name.size() < 22 ? 22 - it.name.size() : 1, ' ') << it.detail << "\n";
    }
    return out.str();
}

}  // namespace sptindex::io
