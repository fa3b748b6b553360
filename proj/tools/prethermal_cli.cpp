// Copyright 2026 The prethermal Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "prethermal/config.hpp"
#include "prethermal/scenarios.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitResourceCap = 3;
constexpr const char *kVersion = "1.0.0";

int load_config(const std::string &path, prethermal::ExperimentConfig &cfg) {
    std::ifstream in(path);
    if (!in) {
        std::cerr << "error: cannot read config file '" << path << "'\n";
        return kExitConfig;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    auto parsed = prethermal::validate_config(buf.str());
    if (auto *errors = std::get_if<std::vector<prethermal::ConfigError>>(&parsed)) {
        for (const auto &e : *errors)
            std::cerr << "config error: " << (e.field.empty() ? "<root>" : e.field)
                      << ": " << e.message << '\n';
        return kExitConfig;
    }
    cfg = std::get<prethermal::ExperimentConfig>(parsed);
    return kExitOk;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Floquet prethermalization simulation toolkit"};
    app.require_subcommand(1);

    std::string run_path, validate_path;
    auto *run_cmd = app.add_subcommand("run", "run an experiment described by a JSON config");
    run_cmd->add_option("config", run_path, "path to the JSON config")->required();

    auto *validate_cmd =
        app.add_subcommand("validate", "check a JSON config and report every problem");
    validate_cmd->add_option("config", validate_path, "path to the JSON config")->required();

    int budget_qubits = 0;
    double budget_depth = 0.0, budget_p = 0.0, budget_pm = 0.0, budget_eps = 1.0;
    auto *budget_cmd =
        app.add_subcommand("budget", "shot budget for the rescaled survival estimator");
    budget_cmd->add_option("-N,--qubits", budget_qubits, "number of qubits")->required();
    budget_cmd->add_option("-D,--depth", budget_depth, "circuit depth in layers")->required();
    budget_cmd->add_option("-p,--error-rate", budget_p, "per-qubit per-layer error rate")
        ->required();
    budget_cmd->add_option("--pm,--measurement-error", budget_pm,
                           "per-qubit measurement error rate");
    budget_cmd->add_option("--eps,--eps-stat", budget_eps, "target statistical error");

    auto *version_cmd = app.add_subcommand("version", "print the toolkit version");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (version_cmd->parsed()) {
            std::cout << kVersion << '\n';
            return kExitOk;
        }
        if (validate_cmd->parsed()) {
            prethermal::ExperimentConfig cfg;
            int rc = load_config(validate_path, cfg);
            if (rc == kExitOk) std::cout << "ok\n";
            return rc;
        }
        if (budget_cmd->parsed()) {
            auto budget = prethermal::sample_budget(budget_qubits, budget_depth, budget_p,
                                                    budget_pm, budget_eps);
            std::cout << std::setprecision(17) << budget.required_shots << '\n';
            return kExitOk;
        }
        // run
        prethermal::ExperimentConfig cfg;
        int rc = load_config(run_path, cfg);
        if (rc != kExitOk) return rc;
        auto result = prethermal::run_scenario(cfg);
        for (const auto &file : result.files) std::cout << file << '\n';
        return kExitOk;
    } catch (const prethermal::ResourceCapError &e) {
        std::cerr << "resource cap exceeded: " << e.what() << '\n';
        return kExitResourceCap;
    } catch (const std::invalid_argument &e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
