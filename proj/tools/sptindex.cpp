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

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "sptindex/builtins.hpp"
#include "sptindex/cohomology.hpp"
#include "sptindex/io/runner.hpp"

namespace {

constexpr int kExitTaskFailure = 1;
constexpr int kExitInvalidSpec = 2;

int run_command(const std::string &spec_path, const std::string &out_path, std::optional<std::uint64_t> seed) {
    sptindex::io::RunSpec spec;
    try {
        spec = sptindex::io::load_spec(spec_path, seed);
    } catch (const sptindex::io::SpecError &e) {
        std::cerr << "invalid spec: " << e.what() << "\n";
        return kExitInvalidSpec;
    } catch (const sptindex::Error &e) {
        std::cerr << "invalid spec: " << e.what() << "\n";
        return kExitInvalidSpec;
    }
    const auto report = sptindex::io::run_spec(spec);
    std::cout << report.human();
    if (!out_path.empty()) {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) {
            std::cerr << "cannot write " << out_path << "\n";
            return kExitTaskFailure;
        }
        out << report.machine();
    }
    return report.exit_status();
}

int cohomology_command(const std::string &group_name, int n, std::optional<std::int64_t> m) {
    try {
        const auto group = sptindex::parse_group_name(group_name);
        const auto modulus = m.value_or(static_cast<std::int64_t>(group.order()));
        const auto h = sptindex::cohomology_group(group, n, modulus);
        std::cout << "group     " << group.label() << " (order " << group.order() << ")\n";
        std::cout << "degree    " << n << "\n";
        std::cout << "modulus   " << modulus << "\n";
        std::cout << "H^" << n << "       " << sptindex::format_divisors(h.divisors()) << "\n";
        std::cout << "order     " << h.cardinality() << "\n";
        if (!h.diagnostic().empty()) std::cout << "note      " << h.diagnostic() << "\n";
        for (std::size_t i = 0; i < h.generators().size(); ++i) {
            std::cout << "\ngenerator " << (i + 1) << " (order " << h.divisors()[i] << ")\n";
            sptindex::write_cochain_text(std::cout, h.generators()[i]);
        }
    } catch (const sptindex::Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidSpec;
    }
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Group cohomology and SPT indices of symmetric matrix-product states"};
    app.require_subcommand(1);

    auto *run = app.add_subcommand("run", "Run the tasks of a JSON state-spec file");
    std::string spec_path, out_path;
    std::optional<std::uint64_t> seed;
    run->add_option("spec", spec_path, "State-spec file")->required();
    run->add_option("--out", out_path, "Write key=value report to this path");
    run->add_option("--seed", seed, "Override the spec seed");

    auto *list = app.add_subcommand("list-builtins", "List built-in groups, actions and states");
    std::string filter;
    list->add_option("filter", filter, "Category (group, action, state) or name substring");

    auto *coh = app.add_subcommand("cohomology", "Compute H^n(G, U(1)) restricted to (1/m)Z/Z");
    std::string group_name;
    int degree = 0;
    std::optional<std::int64_t> modulus;
    coh->add_option("group", group_name, "Group name such as Z2xZ2 or D3")->required();
    coh->add_option("n", degree, "Degree")->required()->check(CLI::Range(0, 8));
    coh->add_option("--m", modulus, "Modulus m (default |G|)")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInvalidSpec;
    }

    if (*run) return run_command(spec_path, out_path, seed);
    if (*list) {
        std::cout << sptindex::io::list_builtins(filter);
        return 0;
    }
    return cohomology_command(group_name, degree, modulus);
}
