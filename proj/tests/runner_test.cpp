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

#include <filesystem>
#include <string>

#include <gtest/gtest.h>

#include "sptindex/io/runner.hpp"

using namespace sptindex;
using namespace sptindex::io;

namespace {

const std::filesystem::path kSpecs = SPTINDEX_SPECS_DIR;

RunSpec parse(const std::string &text) { return parse_spec(parse_json_text(text, "inline.json"), kSpecs); }

std::string error_field(const std::string &text) {
    try {
        parse(text);
    } catch (const SpecError &e) {
        return e.field();
    }
    return "<no error>";
}

const char *kZ2Header = R"("group": {"kind": "cyclic", "n": 2}, "action": {"name": "diagonal", "charges": [0, 1]},)";

std::string value_of(const TaskResult &t, const std::string &key) {
    for (const auto &e : t.entries)
        if (e.key == key) return e.value;
    return "<missing>";
}

}  // namespace

TEST(Spec, SyntaxErrorReportsLine) {
    EXPECT_EQ(error_field("{\n  \"group\": ,\n}"), "inline.json:2:12");
}

TEST(Spec, FieldDiagnostics) {
    EXPECT_EQ(error_field(R"({"tasks": []})"), "group");
    EXPECT_EQ(error_field(R"({"group": {"kind": "cyclic"}, "tasks": []})"), "group.n");
    EXPECT_EQ(error_field(R"({"group": {"kind": "ring", "n": 2}, "tasks": []})"), "group.kind");
    EXPECT_EQ(error_field(std::string("{") + kZ2Header + R"("state": {"name": "aklt"}, "tasks": [{"task": "h2_index"}]})"),
              "state");
    EXPECT_EQ(error_field(std::string("{") + kZ2Header + R"("state": {"name": "x"}, "tasks": [{"task": "h2_index"}]})"),
              "state.name");
    EXPECT_EQ(error_field(std::string("{") + kZ2Header + R"("state": {"name": "product", "level": 0}, "tasks": [{"task": "dance"}]})"),
              "tasks[0].task");
    EXPECT_EQ(error_field(R"({"group": {"kind": "cyclic", "n": 3}, "action": {"name": "spin1_rotations_z2z2"},
                              "state": {"name": "aklt"}, "tasks": [{"task": "h2_index"}]})"),
              "action");
    EXPECT_EQ(error_field(std::string("{") + kZ2Header +
                          R"("state": {"tensors": [[[1, 0], [0, 1]], [[1]]]}, "tasks": [{"task": "h2_index"}]})"),
              "state.tensors[1]");
    EXPECT_EQ(error_field(std::string("{") + kZ2Header + R"("state": {"name": "product", "level": 0},
              "tasks": [{"task": "verify", "transforms": [{"kind": "twist"}]}]})"),
              "tasks[0].transforms[0].kind");
    EXPECT_EQ(error_field(std::string("{") + kZ2Header + R"("state": {"name": "product", "level": 0},
              "tolerances": {"eig": 2.0}, "tasks": []})"),
              "tolerances.eig");
    EXPECT_EQ(error_field(R"({"group": "Z2", "tasks": [{"task": "f_norm", "interaction": "missing.json"}]})"),
              "tasks[0].interaction");
}

TEST(Spec, ExplicitActionAndComplexEntries) {
    const auto spec = parse(R"({"group": "Z2", "action": {"matrices": [[[1, 0], [0, 1]], [[1, 0], [0, [-1, 0]]]]},
        "state": {"tensors": [[[[0, 0]]], [[[0, 1]]]]}, "tasks": [{"task": "translation_index"}]})");
    const auto report = run_spec(spec);
    ASSERT_EQ(report.tasks.size(), 1u);
    EXPECT_TRUE(report.tasks[0].ok);
    EXPECT_EQ(value_of(report.tasks[0], "h1.alpha"), "{0, 1/2}");
}

TEST(Run, ChargedProductTranslationIndex) {
    const auto report = run_spec(load_spec(kSpecs / "charged_product_z2.json"));
    EXPECT_EQ(report.exit_status(), 0);
    EXPECT_EQ(value_of(report.tasks[0], "h1.alpha"), "{0, 1/2}");
    EXPECT_EQ(value_of(report.tasks[1], "h2.trivial"), "true");
}

TEST(Run, AkltSpec) {
    const auto report = run_spec(load_spec(kSpecs / "aklt_z2z2.json"));
    EXPECT_EQ(report.exit_status(), 0) << report.human();
    EXPECT_EQ(value_of(report.tasks[1], "h2.class"), "(1)");
    EXPECT_EQ(value_of(report.tasks[4], "row.1.transform"), "stack(aklt)");
    EXPECT_EQ(value_of(report.tasks[4], "row.1.result"), "pass");
    EXPECT_EQ(value_of(report.tasks[4], "row.1.h2.observed"), "(0)");
}

TEST(Run, ReportsAreDeterministic) {
    const auto a = run_spec(load_spec(kSpecs / "aklt_z2z2.json"));
    const auto b = run_spec(load_spec(kSpecs / "aklt_z2z2.json"));
    EXPECT_EQ(a.human(), b.human());
    EXPECT_EQ(a.machine(), b.machine());
    const auto c = run_spec(load_spec(kSpecs / "aklt_z2z2.json", 123));
    EXPECT_EQ(c.seed, 123u);
    EXPECT_NE(a.machine(), c.machine());
}

TEST(Run, EveryNumericEntryCarriesTolerance) {
    const auto report = run_spec(load_spec(kSpecs / "aklt_z2z2.json"));
    for (const auto &t : report.tasks) {
        for (const auto &e : t.entries) {
            const bool numeric = e.key.find("residual") != std::string::npos || e.key.find("lambda") != std::string::npos;
            if (numeric) {
                EXPECT_FALSE(e.tolerance.empty()) << e.key;
            }
        }
    }
}

TEST(Run, TaskFailuresGiveExitOne) {
    auto spec = parse(std::string("{") + kZ2Header + R"("state": {"name": "ghz"}, "tasks": [{"task": "h2_index"}]})");
    auto report = run_spec(spec);
    EXPECT_EQ(report.exit_status(), 1);
    EXPECT_FALSE(report.tasks[0].error.empty());

    spec = parse(std::string("{") + kZ2Header + R"("state": {"name": "product", "level": 1},
        "tasks": [{"task": "verify", "transforms": [{"kind": "circuit",
        "gate": [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]}]}]})");
    report = run_spec(spec);
    EXPECT_EQ(report.exit_status(), 1);
    EXPECT_EQ(value_of(report.tasks[0], "row.1.result"), "FAIL");
}

TEST(Run, CohomologyAndFNormTasks) {
    const auto report = run_spec(load_spec(kSpecs / "heisenberg_fnorm.json"));
    EXPECT_EQ(report.exit_status(), 0);
    EXPECT_EQ(value_of(report.tasks[0], "f_norm"), "1.304775e+02");
    EXPECT_EQ(value_of(report.tasks[1], "metric"), "l1");
    const auto coh = run_spec(parse(R"({"group": "Z2xZ2", "tasks": [{"task": "cohomology", "n": 3, "m": 2}]})"));
    EXPECT_EQ(value_of(coh.tasks[0], "divisors"), "Z_2 x Z_2 x Z_2");
}

TEST(Builtins, Listing) {
    const auto all = list_builtins();
    for (const char *name : {"cyclic", "product", "aklt", "cluster_z2z2", "charged_product"}) {
        EXPECT_NE(all.find(name), std::string::npos) << name;
    }
    const auto groups = list_builtins("group");
    EXPECT_NE(groups.find("cyclic"), std::string::npos);
    EXPECT_EQ(groups.find("aklt"), std::string::npos);
    EXPECT_EQ(list_builtins("no-such-thing"), "");
}

TEST(Builtins, GroupNames) {
    EXPECT_EQ(parse_group_name("Z2xZ2").order(), 4u);
    EXPECT_EQ(parse_group_name("D3").order(), 6u);
    EXPECT_EQ(parse_group_name("Z2xD4").order(), 16u);
    EXPECT_THROW(parse_group_name("Q8"), InvalidArgument);
    EXPECT_THROW(parse_group_name("Z"), InvalidArgument);
    EXPECT_THROW(parse_group_name("Z2x"), InvalidArgument);
}
