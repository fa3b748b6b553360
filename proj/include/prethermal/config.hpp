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

#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "prethermal/lattice.hpp"
#include "prethermal/noise.hpp"
#include "prethermal/observable.hpp"
#include "prethermal/spectral.hpp"
#include "prethermal/state.hpp"
#include "prethermal/trotter.hpp"

namespace prethermal {

enum class Scenario {
    prethermal_scan,
    ensemble_compare,
    noise_scaling,
    mitigation_run,
    magnus_compare,
    sample_budget,
};

inline std::string scenario_name(Scenario s) {
    switch (s) {
    case Scenario::prethermal_scan: return "prethermal_scan";
    case Scenario::ensemble_compare: return "ensemble_compare";
    case Scenario::noise_scaling: return "noise_scaling";
    case Scenario::mitigation_run: return "mitigation_run";
    case Scenario::magnus_compare: return "magnus_compare";
    case Scenario::sample_budget: return "sample_budget";
    }
    return "?";
}

inline std::optional<Scenario> scenario_from_name(const std::string &name) {
    for (Scenario s : {Scenario::prethermal_scan, Scenario::ensemble_compare,
                       Scenario::noise_scaling, Scenario::mitigation_run,
                       Scenario::magnus_compare, Scenario::sample_budget})
        if (scenario_name(s) == name) return s;
    return std::nullopt;
}

/// Validated experiment description. tau_list is canonical; omega entries
/// are converted on parse via tau = 2 pi / omega.
struct ExperimentConfig {
    Scenario scenario = Scenario::prethermal_scan;
    int rows = 4;
    int cols = 4;
    double J = 1.0;
    std::vector<double> tau_list;
    std::vector<ProductStateSpec> initial_states{x_plus_spec()};
    Observable observable = Observable::magnetization();
    NoiseModel noise{NoiseKind::depolarizing, 0.003, 0.0};
    int n_traj = kDefaultTrajectories;
    int n_steps = 10;         // Trotter steps for noisy scenarios
    double t_max = 1e3;       // series horizon, units 1/J
    double t_plateau = 20.0;  // time-average point for ensemble_compare, units 1/J
    double epsilon = 0.05;
    double delta = 0.5;       // microcanonical width, units J
    int magnus_order = 1;
    std::uint64_t seed = 0;
    bool has_seed = false;
    std::string output = "prethermal_out";
    int qubit_cap = kDefaultQubitCap;
    int sector_cap = kDefaultSectorCap;
    // sample_budget scenario parameters
    std::vector<double> budget_p{0.003};
    double budget_depth = 80.0;
    int budget_qubits = 50;
    double budget_p_m = 0.0;
    double budget_eps_stat = 1.0;

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["scenario"] = scenario_name(scenario);
        j["lattice"] = {{"rows", rows}, {"cols", cols}};
        j["J"] = J;
        j["tau"] = tau_list;
        nlohmann::json states = nlohmann::json::array();
        for (const auto &s : initial_states)
            states.push_back({{"theta", s.theta}, {"phi", s.phi}});
        j["initial_states"] = states;
        nlohmann::json obs_json;
        prethermal::to_json(obs_json, observable);
        j["observable"] = obs_json;
        nlohmann::json noise_json;
        prethermal::to_json(noise_json, noise);
        j["noise"] = noise_json;
        j["n_traj"] = n_traj;
        j["n_steps"] = n_steps;
        j["t_max"] = t_max;
        j["t_plateau"] = t_plateau;
        j["epsilon"] = epsilon;
        j["delta"] = delta;
        j["magnus_order"] = magnus_order;
        j["seed"] = seed;
        j["output"] = output;
        j["qubit_cap"] = qubit_cap;
        j["sector_cap"] = sector_cap;
        j["budget"] = {{"N", budget_qubits},   {"D", budget_depth},
                       {"p", budget_p},        {"p_m", budget_p_m},
                       {"eps_stat", budget_eps_stat}};
        return j;
    }
};

struct ConfigError {
    std::string field;
    std::string message;
};

using ConfigResult = std::variant<ExperimentConfig, std::vector<ConfigError>>;

/// Parses and validates a JSON config, reporting every error at once with
/// its field path.
inline ConfigResult validate_config(const std::string &text) {
    std::vector<ConfigError> errors;
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded()) {
        errors.push_back({"", "not valid JSON"});
        return errors;
    }
    ExperimentConfig cfg;

    if (!j.contains("scenario")) {
        errors.push_back({"scenario", "missing"});
    } else if (auto s = scenario_from_name(j["scenario"].get<std::string>())) {
        cfg.scenario = *s;
    } else {
        errors.push_back({"scenario", "unknown scenario '" +
                                          j["scenario"].get<std::string>() + "'"});
    }

    if (j.contains("lattice")) {
        cfg.rows = j["lattice"].value("rows", 0);
        cfg.cols = j["lattice"].value("cols", 0);
        if (cfg.rows < 1 || cfg.cols < 1 || cfg.rows * cfg.cols < 2)
            errors.push_back({"lattice", "needs rows, cols >= 1 and at least 2 sites"});
    }
    cfg.J = j.value("J", 1.0);
    if (cfg.J == 0.0) errors.push_back({"J", "must be nonzero"});

    bool has_omega = j.contains("omega"), has_tau = j.contains("tau");
    if (has_omega && has_tau) {
        errors.push_back({"omega", "omega and tau are mutually exclusive "
                                   "(omega = 2 pi / tau is canonical)"});
    } else if (has_omega || has_tau) {
        const auto &entry = has_omega ? j["omega"] : j["tau"];
        std::vector<double> vals;
        if (entry.is_number()) {
            vals.push_back(entry.get<double>());
        } else if (entry.is_array()) {
            for (const auto &v : entry) vals.push_back(v.get<double>());
        } else {
            errors.push_back({has_omega ? "omega" : "tau", "must be a number or array"});
        }
        for (double v : vals) {
            if (v <= 0.0) {
                errors.push_back({has_omega ? "omega" : "tau", "entries must be > 0"});
                break;
            }
            cfg.tau_list.push_back(has_omega ? tau_from_omega(v) : v);
        }
    }
    if (cfg.tau_list.empty() && cfg.scenario != Scenario::sample_budget)
        errors.push_back({"omega", "one of omega or tau is required"});

    if (j.contains("initial_states")) {
        cfg.initial_states.clear();
        int idx = 0;
        for (const auto &s : j["initial_states"]) {
            if (!s.contains("theta")) {
                errors.push_back({"initial_states[" + std::to_string(idx) + "].theta",
                                  "missing"});
            } else {
                cfg.initial_states.push_back(
                    {s["theta"].get<double>(), s.value("phi", 0.0)});
            }
            ++idx;
        }
        if (cfg.initial_states.empty())
            errors.push_back({"initial_states", "must not be empty"});
    }

    if (j.contains("observable")) {
        try {
            cfg.observable = j["observable"].get<Observable>();
        } catch (const std::exception &e) {
            errors.push_back({"observable", e.what()});
        }
    }

    if (j.contains("noise")) {
        const auto &njson = j["noise"];
        try {
            cfg.noise.kind = noise_kind_from_name(njson.value("kind", "depolarizing"));
        } catch (const std::exception &e) {
            errors.push_back({"noise.kind", e.what()});
        }
        cfg.noise.p = njson.value("p", 0.0);
        cfg.noise.p_m = njson.value("p_m", 0.0);
        if (cfg.noise.p < 0.0 || cfg.noise.p >= 1.0)
            errors.push_back({"noise.p", "must be in [0,1)"});
        if (cfg.noise.p_m < 0.0 || cfg.noise.p_m >= 1.0)
            errors.push_back({"noise.p_m", "must be in [0,1)"});
    }

    cfg.n_traj = j.value("n_traj", kDefaultTrajectories);
    if (cfg.n_traj < 1) errors.push_back({"n_traj", "must be >= 1"});
    cfg.n_steps = j.value("n_steps", 10);
    if (cfg.n_steps < 0) errors.push_back({"n_steps", "must be >= 0"});
    cfg.t_max = j.value("t_max", 1e3);
    if (cfg.t_max <= 0.0) errors.push_back({"t_max", "must be > 0"});
    cfg.t_plateau = j.value("t_plateau", 20.0);
    cfg.epsilon = j.value("epsilon", 0.05);
    if (cfg.epsilon <= 0.0) errors.push_back({"epsilon", "must be > 0"});
    cfg.delta = j.value("delta", 0.5);
    if (cfg.delta <= 0.0) errors.push_back({"delta", "must be > 0"});
    cfg.magnus_order = j.value("magnus_order", 1);
    if (cfg.magnus_order < 0 || cfg.magnus_order > 2)
        errors.push_back({"magnus_order", "must be 0, 1 or 2"});

    if (!j.contains("seed")) {
        errors.push_back({"seed", "missing (required for reproducibility)"});
    } else {
        cfg.seed = j["seed"].get<std::uint64_t>();
        cfg.has_seed = true;
    }

    cfg.output = j.value("output", std::string("prethermal_out"));
    cfg.qubit_cap = j.value("qubit_cap", kDefaultQubitCap);
    cfg.sector_cap = j.value("sector_cap", kDefaultSectorCap);

    if (j.contains("budget")) {
        const auto &b = j["budget"];
        cfg.budget_qubits = b.value("N", 50);
        cfg.budget_depth = b.value("D", 80.0);
        cfg.budget_p_m = b.value("p_m", 0.0);
        cfg.budget_eps_stat = b.value("eps_stat", 1.0);
        cfg.budget_p.clear();
        if (b.contains("p")) {
            if (b["p"].is_number()) {
                cfg.budget_p.push_back(b["p"].get<double>());
            } else {
                for (const auto &v : b["p"]) cfg.budget_p.push_back(v.get<double>());
            }
        } else {
            cfg.budget_p.push_back(0.003);
        }
        for (double p : cfg.budget_p)
            if (p < 0.0 || p >= 1.0) {
                errors.push_back({"budget.p", "entries must be in [0,1)"});
                break;
            }
    }

    if ((cfg.scenario == Scenario::noise_scaling ||
         cfg.scenario == Scenario::mitigation_run) &&
        cfg.observable.kind != Observable::Kind::pauli)
        errors.push_back({"observable",
                          "trajectory scenarios need a Pauli-string observable"});

    if (!errors.empty()) return errors;
    return cfg;
}

/// FNV-1a hash of the canonical JSON dump, recorded in output metadata.
inline std::string config_hash(const ExperimentConfig &cfg) {
    std::string dump = cfg.to_json().dump();
    std::uint64_t h =
        fnv1a64(reinterpret_cast<const unsigned char *>(dump.data()), dump.size());
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace prethermal
