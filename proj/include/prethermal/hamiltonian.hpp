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
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "prethermal/lattice.hpp"
#include "prethermal/state.hpp"

namespace prethermal {

/// XY Hamiltonian H = -J sum_<ij> (S^x_i S^x_j + S^y_i S^y_j) on a lattice.
/// Each bond term acts on the {|01>,|10>} subspace as (coeff/2) sigma^x and
/// vanishes on |00>,|11>, so H commutes with the total z-magnetization.
struct SpinHamiltonian {
    Lattice lattice;
    double J = 1.0;

    double bond_coefficient() const { return -J; }
};

inline SpinHamiltonian xy_hamiltonian(const Lattice &lattice, double J) {
    if (J == 0.0) throw std::invalid_argument("coupling J must be nonzero");
    return SpinHamiltonian{lattice, J};
}

/// out += H |psi> in the full 2^N space.
inline void accumulate_hamiltonian(const SpinHamiltonian &ham, const PureState &psi,
                                   PureState &out) {
    const auto &in = psi.amplitudes();
    auto &o = out.amplitudes();
    const double half_coeff = 0.5 * ham.bond_coefficient();
    for (const Bond &bond : ham.lattice.bonds) {
        const std::uint64_t bit_a = std::uint64_t(1) << bond.a;
        const std::uint64_t bit_b = std::uint64_t(1) << bond.b;
        for (std::uint64_t i = 0; i < in.size(); ++i) {
            bool ba = i & bit_a, bb = i & bit_b;
            if (ba != bb) o[i ^ bit_a ^ bit_b] += half_coeff * in[i];
        }
    }
}

inline PureState apply_hamiltonian(const SpinHamiltonian &ham, const PureState &psi) {
    PureState out(psi.num_qubits());
    out.amplitudes().assign(psi.dim(), Complex{0.0, 0.0});
    accumulate_hamiltonian(ham, psi, out);
    return out;
}

inline double energy_expectation(const SpinHamiltonian &ham, const PureState &psi) {
    return psi.inner_product(apply_hamiltonian(ham, psi)).real();
}

/// Closed-form energy of a bipartite product state: every bond joins the two
/// sublattices, so <SxSx + SySy> factorizes into single-site expectations,
/// giving E = -(J/4) sin^2(theta) cos(phi) per bond.
inline double product_state_energy(const ProductStateSpec &spec, const Lattice &lattice,
                                   double J) {
    double st = std::sin(spec.theta);
    return -(J / 4.0) * st * st * std::cos(spec.phi) *
           static_cast<double>(lattice.bonds.size());
}

inline void to_json(nlohmann::json &j, const SpinHamiltonian &h) {
    j = nlohmann::json{{"lattice", h.lattice}, {"J", h.J}, {"model", "xy"}};
}

inline void from_json(const nlohmann::json &j, SpinHamiltonian &h) {
    h.lattice = j.at("lattice").get<Lattice>();
    h.J = j.at("J").get<double>();
}

} // namespace prethermal
