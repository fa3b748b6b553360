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
#include <fstream>
#include <iomanip>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "prethermal/analysis.hpp"
#include "prethermal/config.hpp"
#include "prethermal/hamiltonian.hpp"
#include "prethermal/magnus.hpp"
#include "prethermal/mitigation.hpp"
#include "prethermal/noise.hpp"
#include "prethermal/spectral.hpp"
#include "prethermal/trotter.hpp"

namespace prethermal {

struct ScenarioResult {
    std::vector<std::string> files;
};

namespace detail {

inline std::ofstream open_csv(ScenarioResult &result, const std::string &path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open output file '" + path + "'");
    os << std::setprecision(17);
    result.files.push_back(path);
    return os;
}

/// Independent sub-seed for the tagged sub-experiment, so adding or
/// reordering runs never perturbs the streams of the others.
inline std::uint64_t derived_seed(std::uint64_t seed, std::uint64_t tag) {
    std::uint64_t x = seed ^ (tag * 0x9e3779b97f4a7c15ull);
    return splitmix64_next(x);
}

inline Estimate to_estimate(const TrajectoryEnsemble &e) {
    return {e.mean(), e.standard_error()};
}

inline PauliObservable require_pauli(const Observable &obs) {
    if (obs.kind != Observable::Kind::pauli)
        throw std::invalid_argument(
            "trajectory scenarios need a Pauli-string observable");
    return obs.pauli;
}

} // namespace detail

/// Stroboscopic time averages for each drive period, plus detected plateaus.
/// Uses the first configured initial state.
inline ScenarioResult run_prethermal_scan(const ExperimentConfig &cfg) {
    ScenarioResult result;
    Lattice lat = build_lattice(cfg.rows, cfg.cols, cfg.qubit_cap);
    PureState psi0 = product_state(cfg.initial_states.front(), lat);
    double norm = cfg.observable.norm(lat.num_sites());

    auto series_csv = detail::open_csv(result, cfg.output + ".csv");
    series_csv << "tau,t,instantaneous,running_average\n";
    auto plateau_csv = detail::open_csv(result, cfg.output + "_plateaus.csv");
    plateau_csv << "tau,t1,t2,value,epsilon,truncated\n";

    for (double tau : cfg.tau_list) {
        TrotterSchedule sched = make_trotter_schedule(lat, cfg.J, tau);
        int m_max = static_cast<int>(std::floor(cfg.t_max / tau));
        TimeAverageSeries series = floquet_time_average(psi0, cfg.observable, sched, m_max);
        for (std::size_t m = 0; m < series.size(); ++m)
            series_csv << tau << ',' << series.time(m) << ',' << series.instantaneous[m]
                       << ',' << series.running_average[m] << '\n';
        for (const auto &rep : find_plateaus(series, cfg.epsilon, norm, cfg.t_max))
            plateau_csv << tau << ',' << rep.t1 << ',' << rep.t2 << ',' << rep.value << ','
                        << rep.epsilon << ',' << (rep.truncated_at_cap ? 1 : 0) << '\n';
    }
    return result;
}

/// Plateau value versus diagonal, microcanonical, and Magnus-effective
/// diagonal ensembles across the configured initial-state grid.
inline ScenarioResult run_ensemble_compare(const ExperimentConfig &cfg) {
    ScenarioResult result;
    Lattice lat = build_lattice(cfg.rows, cfg.cols, cfg.qubit_cap);
    SpinHamiltonian ham = xy_hamiltonian(lat, cfg.J);
    double tau = cfg.tau_list.front();
    TrotterSchedule sched = make_trotter_schedule(lat, cfg.J, tau);
    auto spectra = all_sector_spectra(ham, cfg.sector_cap);
    auto magnus_spectra = magnus_sector_spectra(ham, tau, cfg.magnus_order, cfg.sector_cap);
    int m_plateau = static_cast<int>(std::floor(cfg.t_plateau / tau));

    auto csv = detail::open_csv(result, cfg.output + ".csv");
    csv << "theta,phi,energy_J,plateau_value,diagonal,microcanonical,magnus_diagonal\n";
    for (const auto &spec : cfg.initial_states) {
        PureState psi0 = product_state(spec, lat);
        double energy = energy_expectation(ham, psi0);
        TimeAverageSeries series =
            floquet_time_average(psi0, cfg.observable, sched, m_plateau);
        csv << spec.theta << ',' << spec.phi << ',' << energy << ','
            << series.running_average.back() << ','
            << diagonal_ensemble(psi0, cfg.observable, spectra) << ','
            << microcanonical(energy, cfg.delta, cfg.observable, spectra,
                              MicrocanonicalKind::broadened)
            << ',' << diagonal_ensemble(psi0, cfg.observable, magnus_spectra) << '\n';
    }
    return result;
}

/// Survival probabilities L_id and L_A versus circuit depth under the
/// configured noise model, against the (1-p)^{N D} prediction.
inline ScenarioResult run_noise_scaling(const ExperimentConfig &cfg) {
    ScenarioResult result;
    Lattice lat = build_lattice(cfg.rows, cfg.cols, cfg.qubit_cap);
    PureState psi0 = product_state(cfg.initial_states.front(), lat);
    TrotterSchedule sched = make_trotter_schedule(lat, cfg.J, cfg.tau_list.front());
    PauliObservable pauli = detail::require_pauli(cfg.observable);
    const int n_sites = lat.num_sites();

    auto csv = detail::open_csv(result, cfg.output + ".csv");
    csv << "N,D,t,L_id,L_id_err,L_A,L_A_err,predicted\n";
    for (int n = 1; n <= cfg.n_steps; ++n) {
        int depth = survival_circuit_depth(sched, n);
        auto id_run = noisy_survival_probability(
            psi0, sched, n, PauliObservable::identity(), cfg.noise, cfg.n_traj,
            detail::derived_seed(cfg.seed, 2 * n));
        auto obs_run = noisy_survival_probability(
            psi0, sched, n, pauli, cfg.noise, cfg.n_traj,
            detail::derived_seed(cfg.seed, 2 * n + 1));
        Estimate l_id = detail::to_estimate(id_run);
        Estimate l_a = detail::to_estimate(obs_run);
        csv << n_sites << ',' << depth << ',' << n * sched.tau << ',' << l_id.value << ','
            << l_id.stderr_ << ',' << l_a.value << ',' << l_a.stderr_ << ','
            << std::pow(1.0 - cfg.noise.p, double(n_sites) * depth) << '\n';
    }
    return result;
}

/// Full mitigation pipeline per depth: noisy L_id and L_A, the rescaled
/// estimate, and its error s against the noiseless reference.
inline ScenarioResult run_mitigation_run(const ExperimentConfig &cfg) {
    ScenarioResult result;
    Lattice lat = build_lattice(cfg.rows, cfg.cols, cfg.qubit_cap);
    PureState psi0 = product_state(cfg.initial_states.front(), lat);
    TrotterSchedule sched = make_trotter_schedule(lat, cfg.J, cfg.tau_list.front());
    PauliObservable pauli = detail::require_pauli(cfg.observable);

    auto csv = detail::open_csv(result, cfg.output + ".csv");
    csv << mitigation_csv_header() << '\n';
    for (int n = 1; n <= cfg.n_steps; ++n) {
        MitigationRecord rec;
        rec.t = n * sched.tau;
        rec.depth = survival_circuit_depth(sched, n);
        rec.l_id_noisy = detail::to_estimate(noisy_survival_probability(
            psi0, sched, n, PauliObservable::identity(), cfg.noise, cfg.n_traj,
            detail::derived_seed(cfg.seed, 2 * n)));
        rec.l_a_noisy = detail::to_estimate(noisy_survival_probability(
            psi0, sched, n, pauli, cfg.noise, cfg.n_traj,
            detail::derived_seed(cfg.seed, 2 * n + 1)));
        RescaledEstimate rescaled = rescale(rec.l_a_noisy, rec.l_id_noisy);
        rec.rescaled = rescaled.estimate;
        rec.reliable = rescaled.reliable;
        rec.l_a_noiseless = survival_probability(psi0, sched, n, pauli);
        write_mitigation_record(csv, rec);
    }
    return result;
}

/// Deviation of Floquet stroboscopic dynamics from the Magnus effective
/// Hamiltonian, one column per expansion order 0..magnus_order.
inline ScenarioResult run_magnus_compare(const ExperimentConfig &cfg) {
    ScenarioResult result;
    Lattice lat = build_lattice(cfg.rows, cfg.cols, cfg.qubit_cap);
    SpinHamiltonian ham = xy_hamiltonian(lat, cfg.J);
    PureState psi0 = product_state(cfg.initial_states.front(), lat);
    double tau = cfg.tau_list.front();

    std::vector<std::vector<double>> deviations;
    for (int order = 0; order <= cfg.magnus_order; ++order)
        deviations.push_back(floquet_vs_magnus_deviation(psi0, cfg.observable, ham, tau,
                                                         order, cfg.n_steps));

    auto csv = detail::open_csv(result, cfg.output + ".csv");
    csv << "t";
    for (int order = 0; order <= cfg.magnus_order; ++order)
        csv << ",deviation_order" << order;
    csv << '\n';
    for (int m = 0; m <= cfg.n_steps; ++m) {
        csv << m * tau;
        for (const auto &dev : deviations) csv << ',' << dev[m];
        csv << '\n';
    }
    return result;
}

/// Shot budgets required to resolve the rescaled estimator at the configured
/// sizes and error rates.
inline ScenarioResult run_sample_budget(const ExperimentConfig &cfg) {
    ScenarioResult result;
    auto csv = detail::open_csv(result, cfg.output + ".csv");
    csv << "N,D,p,p_m,eps_stat,required_shots\n";
    for (double p : cfg.budget_p) {
        SampleBudget b = sample_budget(cfg.budget_qubits, cfg.budget_depth, p,
                                       cfg.budget_p_m, cfg.budget_eps_stat);
        csv << b.num_qubits << ',' << b.depth << ',' << b.p << ',' << b.p_m << ','
            << b.eps_stat << ',' << b.required_shots << '\n';
    }
    return result;
}

/// Runs the configured scenario and writes a metadata sidecar next to the
/// CSV outputs recording the seed and a hash of the exact configuration.
inline ScenarioResult run_scenario(const ExperimentConfig &cfg) {
    ScenarioResult result;
    switch (cfg.scenario) {
    case Scenario::prethermal_scan: result = run_prethermal_scan(cfg); break;
    case Scenario::ensemble_compare: result = run_ensemble_compare(cfg); break;
    case Scenario::noise_scaling: result = run_noise_scaling(cfg); break;
    case Scenario::mitigation_run: result = run_mitigation_run(cfg); break;
    case Scenario::magnus_compare: result = run_magnus_compare(cfg); break;
    case Scenario::sample_budget: result = run_sample_budget(cfg); break;
    }

    nlohmann::json meta;
    meta["scenario"] = scenario_name(cfg.scenario);
    meta["seed"] = cfg.seed;
    meta["config_hash"] = config_hash(cfg);
    meta["config"] = cfg.to_json();
    meta["files"] = result.files;
    meta["units"] = {{"t", "1/J"}, {"tau", "1/J"}, {"energy", "J"}};
    std::string meta_path = cfg.output + ".meta.json";
    std::ofstream meta_os(meta_path);
    if (!meta_os) throw std::runtime_error("cannot open output file '" + meta_path + "'");
    meta_os << meta.dump(2) << '\n';
    result.files.push_back(meta_path);
    return result;
}

} // namespace prethermal
