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

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "prethermal/hamiltonian.hpp"
#include "prethermal/lattice.hpp"
#include "prethermal/pauli.hpp"
#include "prethermal/state.hpp"

namespace prethermal {

/// One step of the first-order Trotter decomposition of the XY evolution:
/// the bond groups of the lattice applied in their fixed order, each group a
/// layer of disjoint two-qubit gates exp(+iJ(SxSx+SySy)tau) = iSWAP^{-Jtau/pi}.
struct TrotterSchedule {
    double tau = 0.0;
    double J = 1.0;
    int num_qubits = 0;
    std::vector<std::vector<Bond>> layers;

    int layers_per_step() const { return static_cast<int>(layers.size()); }

    double gate_cos() const { return std::cos(J * tau / 2.0); }
    double gate_sin() const { return std::sin(J * tau / 2.0); }
};

inline TrotterSchedule make_trotter_schedule(const Lattice &lattice, double J, double tau) {
    TrotterSchedule sched;
    sched.tau = tau;
    sched.J = J;
    sched.num_qubits = lattice.num_sites();
    sched.layers = lattice.bond_groups;
    return sched;
}

/// omega = 2 pi / tau.
inline double tau_from_omega(double omega) { return 2.0 * M_PI / omega; }

/// The 4x4 two-qubit matrix exp(-iJ(SxSx+SySy)tau), i.e. the gate for one
/// bond of the Trotter step with coupling -J. Basis order |00>,|01>,|10>,|11>.
inline std::array<std::array<Complex, 4>, 4> partial_iswap_gate(double J, double tau) {
    const double c = std::cos(J * tau / 2.0);
    const Complex is{0.0, std::sin(J * tau / 2.0)};
    std::array<std::array<Complex, 4>, 4> g{};
    g[0][0] = 1.0;
    g[3][3] = 1.0;
    g[1][1] = c;
    g[2][2] = c;
    g[1][2] = is;
    g[2][1] = is;
    return g;
}

inline void apply_gate_layer(PureState &state, const std::vector<Bond> &layer,
                             double c, double s) {
    for (const Bond &bond : layer) state.apply_xy_gate(bond.a, bond.b, c, s);
}

inline void apply_trotter_step(PureState &state, const TrotterSchedule &sched) {
    if (state.num_qubits() != sched.num_qubits)
        throw std::invalid_argument("state and schedule qubit counts differ");
    const double c = sched.gate_cos(), s = sched.gate_sin();
    for (const auto &layer : sched.layers) apply_gate_layer(state, layer, c, s);
}

/// Exact inverse step: conjugated gates in reversed layer order.
inline void apply_inverse_trotter_step(PureState &state, const TrotterSchedule &sched) {
    if (state.num_qubits() != sched.num_qubits)
        throw std::invalid_argument("state and schedule qubit counts differ");
    const double c = sched.gate_cos(), s = -sched.gate_sin();
    for (auto it = sched.layers.rbegin(); it != sched.layers.rend(); ++it)
        apply_gate_layer(state, *it, c, s);
}

inline void evolve(PureState &state, const TrotterSchedule &sched, int n_steps) {
    if (n_steps < 0) throw std::invalid_argument("n_steps must be >= 0");
    for (int i = 0; i < n_steps; ++i) apply_trotter_step(state, sched);
}

inline void evolve_backward(PureState &state, const TrotterSchedule &sched, int n_steps) {
    for (int i = 0; i < n_steps; ++i) apply_inverse_trotter_step(state, sched);
}

/// Noiseless survival probability L_A(t) = |<psi| U^-n A U^n |psi>|^2 at
/// t = n tau: forward evolution, the observable gate, backward evolution,
/// projection onto the initial state.
inline double survival_probability(const PureState &psi0, const TrotterSchedule &sched,
                                   int n_steps, const PauliObservable &obs) {
    if (!obs.is_identity() && !obs.is_unitary())
        throw std::invalid_argument("survival probability requires a unitary observable "
                                    "(prefactor +-1)");
    PureState state = psi0;
    evolve(state, sched, n_steps);
    if (!obs.is_identity()) state.apply_observable(obs);
    evolve_backward(state, sched, n_steps);
    return psi0.overlap_probability(state);
}

} // namespace prethermal
