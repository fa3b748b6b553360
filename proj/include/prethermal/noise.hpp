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
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "prethermal/rng.hpp"
#include "prethermal/state.hpp"
#include "prethermal/trotter.hpp"

namespace prethermal {

enum class NoiseKind { depolarizing, phase_damping, amplitude_damping };

inline std::string noise_kind_name(NoiseKind kind) {
    switch (kind) {
    case NoiseKind::depolarizing: return "depolarizing";
    case NoiseKind::phase_damping: return "phase_damping";
    case NoiseKind::amplitude_damping: return "amplitude_damping";
    }
    return "?";
}

inline NoiseKind noise_kind_from_name(const std::string &name) {
    if (name == "depolarizing") return NoiseKind::depolarizing;
    if (name == "phase_damping") return NoiseKind::phase_damping;
    if (name == "amplitude_damping") return NoiseKind::amplitude_damping;
    throw std::invalid_argument("unknown noise kind '" + name + "'");
}

/// Per-qubit, per-layer noise model. Noise acts on every qubit (idle ones
/// included) after each forward layer and before each backward layer; state
/// preparation and the observable gate are noise-free. p_m is the per-qubit
/// readout flip probability used by shot sampling.
struct NoiseModel {
    NoiseKind kind = NoiseKind::depolarizing;
    double p = 0.0;
    double p_m = 0.0;

    void validate() const {
        if (p < 0.0 || p >= 1.0) throw std::invalid_argument("noise p must be in [0,1)");
        if (p_m < 0.0 || p_m >= 1.0) throw std::invalid_argument("p_m must be in [0,1)");
    }
};

inline void to_json(nlohmann::json &j, const NoiseModel &m) {
    j = nlohmann::json{{"kind", noise_kind_name(m.kind)}, {"p", m.p}, {"p_m", m.p_m}};
}

inline void from_json(const nlohmann::json &j, NoiseModel &m) {
    m.kind = noise_kind_from_name(j.at("kind").get<std::string>());
    m.p = j.at("p").get<double>();
    m.p_m = j.value("p_m", 0.0);
    m.validate();
}

/// One stochastic unraveling step of the noise channel on every qubit.
/// Depolarizing: with probability p apply a uniformly random sigma^{x,y,z}.
/// Phase damping: with probability p apply sigma^z.
/// Amplitude damping: jump with probability p<n_i> (apply the lowering Kraus
/// operator), otherwise the no-jump Kraus operator; renormalize either way.
inline void apply_noise_layer(PureState &state, const NoiseModel &model, RngStream &rng) {
    if (model.p == 0.0) return;
    const int n = state.num_qubits();
    switch (model.kind) {
    case NoiseKind::depolarizing:
        for (int q = 0; q < n; ++q) {
            double u = rng.uniform();
            if (u < model.p) {
                switch (rng.uniform_int(3)) {
                case 0: state.apply_pauli_x(q); break;
                case 1: state.apply_pauli_y(q); break;
                default: state.apply_pauli_z(q); break;
                }
            }
        }
        break;
    case NoiseKind::phase_damping:
        for (int q = 0; q < n; ++q)
            if (rng.uniform() < model.p) state.apply_pauli_z(q);
        break;
    case NoiseKind::amplitude_damping:
        for (int q = 0; q < n; ++q) {
            const std::uint64_t bit = std::uint64_t(1) << q;
            auto &amps = state.amplitudes();
            double pop = state.excited_population(q);
            double p_jump = model.p * pop;
            if (rng.uniform() < p_jump) {
                // M1 = sqrt(p)|0><1|: move the excited component down.
                for (std::uint64_t i = 0; i < amps.size(); ++i) {
                    if (i & bit) continue;
                    amps[i] = amps[i | bit];
                    amps[i | bit] = 0.0;
                }
            } else {
                // M0 = diag(1, sqrt(1-p)).
                double damp = std::sqrt(1.0 - model.p);
                for (std::uint64_t i = 0; i < amps.size(); ++i)
                    if (i & bit) amps[i] *= damp;
            }
            state.normalize();
        }
        break;
    }
}

/// Seeded Monte Carlo ensemble of per-trajectory survival outcomes.
struct TrajectoryEnsemble {
    std::uint64_t seed = 0;
    std::vector<double> outcomes;

    std::size_t size() const { return outcomes.size(); }

    double mean() const {
        double s = 0.0;
        for (double x : outcomes) s += x;
        return outcomes.empty() ? 0.0 : s / double(outcomes.size());
    }

    /// Standard error of the mean (unbiased sample stddev / sqrt(n)).
    double standard_error() const {
        const std::size_t n = outcomes.size();
        if (n < 2) return 0.0;
        double m = mean(), ss = 0.0;
        for (double x : outcomes) ss += (x - m) * (x - m);
        return std::sqrt(ss / double(n - 1)) / std::sqrt(double(n));
    }
};

inline void to_json(nlohmann::json &j, const TrajectoryEnsemble &e) {
    j = nlohmann::json{{"seed", e.seed},
                       {"n_traj", e.outcomes.size()},
                       {"mean", e.mean()},
                       {"standard_error", e.standard_error()},
                       {"outcomes", e.outcomes}};
}

/// Summary-only serialization for large ensembles.
inline nlohmann::json ensemble_summary_json(const TrajectoryEnsemble &e) {
    return nlohmann::json{{"seed", e.seed},
                          {"n_traj", e.outcomes.size()},
                          {"mean", e.mean()},
                          {"standard_error", e.standard_error()}};
}

inline constexpr int kDefaultTrajectories = 2000;

/// Single noisy trajectory of the survival circuit:
/// prep -> (layer, noise) x forward -> A -> (noise, layer^-1) x backward ->
/// |<psi0|.>|^2. Counts 8 noise layers per round-trip Trotter step.
inline double noisy_survival_trajectory(const PureState &psi0, const TrotterSchedule &sched,
                                        int n_steps, const PauliObservable &obs,
                                        const NoiseModel &model, RngStream &rng) {
    PureState state = psi0;
    const double c = sched.gate_cos(), s = sched.gate_sin();
    for (int step = 0; step < n_steps; ++step) {
        for (const auto &layer : sched.layers) {
            apply_gate_layer(state, layer, c, s);
            apply_noise_layer(state, model, rng);
        }
    }
    if (!obs.is_identity()) state.apply_observable(obs);
    for (int step = 0; step < n_steps; ++step) {
        for (auto it = sched.layers.rbegin(); it != sched.layers.rend(); ++it) {
            apply_noise_layer(state, model, rng);
            apply_gate_layer(state, *it, c, -s);
        }
    }
    return psi0.overlap_probability(state);
}

/// Monte Carlo estimate of the noisy survival probability L_A^{N_p}(t) at
/// t = n_steps * tau. Trajectory i uses the stream (seed, i), so the
/// ensemble is reproducible bit-exactly regardless of the thread count.
inline TrajectoryEnsemble noisy_survival_probability(
    const PureState &psi0, const TrotterSchedule &sched, int n_steps,
    const PauliObservable &obs, const NoiseModel &model, int n_traj = kDefaultTrajectories,
    std::uint64_t seed = 0, unsigned num_threads = 0) {
    if (n_traj < 1) throw std::invalid_argument("n_traj must be >= 1");
    if (!obs.is_identity() && !obs.is_unitary())
        throw std::invalid_argument("observable must be unitary or the identity");
    model.validate();

    TrajectoryEnsemble ensemble;
    ensemble.seed = seed;
    ensemble.outcomes.assign(n_traj, 0.0);
    parallel_for(
        static_cast<std::size_t>(n_traj),
        [&](std::size_t i) {
            RngStream rng(seed, i);
            ensemble.outcomes[i] =
                noisy_survival_trajectory(psi0, sched, n_steps, obs, model, rng);
        },
        num_threads);
    return ensemble;
}

/// Circuit depth in layers for a forward-and-back survival circuit.
inline int survival_circuit_depth(const TrotterSchedule &sched, int n_steps) {
    return 2 * sched.layers_per_step() * n_steps;
}

/// Finite-shot estimate of a survival probability. Readout errors fold in as
/// the depth-independent suppression factor (1-p_m)^N.
inline double sample_shots(double probability, std::uint64_t shots, double p_m, int num_qubits,
                           RngStream &rng) {
    if (shots < 1) throw std::invalid_argument("shots must be >= 1");
    double effective = probability * std::pow(1.0 - p_m, num_qubits);
    return double(rng.binomial(shots, effective)) / double(shots);
}

} // namespace prethermal
