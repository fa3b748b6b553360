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

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "prethermal/pauli.hpp"
#include "prethermal/state.hpp"

namespace prethermal {

/// Observable used by time averages and ensembles: either a Pauli string or
/// the mean-squared in-plane magnetization per site.
struct Observable {
    enum class Kind { pauli, msq_magnetization };

    Kind kind = Kind::msq_magnetization;
    PauliObservable pauli; // only for Kind::pauli

    static Observable magnetization() { return {Kind::msq_magnetization, {}}; }

    static Observable from_pauli(const PauliObservable &p) {
        return {Kind::pauli, p};
    }

    /// Operator norm, used in plateau tolerances: the magnetization operator
    /// has largest eigenvalue 1 + 1/N, Pauli strings have norm |prefactor|.
    double norm(int num_qubits) const {
        if (kind == Kind::msq_magnetization) return 1.0 + 1.0 / double(num_qubits);
        return std::abs(pauli.prefactor);
    }

    /// Both supported observables commute with the total z-magnetization
    /// only in the magnetization case; Pauli strings generally do not.
    bool conserves_mz() const {
        if (kind == Kind::msq_magnetization) return true;
        for (auto op : pauli.ops)
            if (op != PauliOp::Z) return false;
        return true;
    }

    double expectation(const PureState &psi) const {
        if (kind == Kind::msq_magnetization)
            return mean_squared_inplane_magnetization(psi);
        return observable_expectation(psi, pauli);
    }

    /// out = A |psi>.
    void apply(const PureState &psi, PureState &out) const {
        const int n = psi.num_qubits();
        if (kind == Kind::pauli) {
            out = psi;
            out.apply_observable(pauli);
            return;
        }
        out = PureState(n);
        out.amplitudes().assign(psi.dim(), Complex{0.0, 0.0});
        PureState sx(n), sy(n);
        sx.amplitudes().assign(psi.dim(), Complex{0.0, 0.0});
        sy.amplitudes().assign(psi.dim(), Complex{0.0, 0.0});
        accumulate_total_spin(psi, PauliOp::X, sx);
        accumulate_total_spin(psi, PauliOp::Y, sy);
        PureState tmp(n);
        tmp.amplitudes().assign(psi.dim(), Complex{0.0, 0.0});
        accumulate_total_spin(sx, PauliOp::X, tmp);
        accumulate_total_spin(sy, PauliOp::Y, tmp);
        const double scale = 4.0 / (double(n) * double(n));
        for (std::size_t i = 0; i < psi.dim(); ++i)
            out.amplitudes()[i] = scale * tmp.amplitudes()[i];
    }

    std::string name() const {
        return kind == Kind::msq_magnetization ? "msq_magnetization"
                                               : "pauli:" + pauli.to_string();
    }
};

inline void to_json(nlohmann::json &j, const Observable &obs) {
    if (obs.kind == Observable::Kind::msq_magnetization) {
        j = nlohmann::json{{"kind", "msq_magnetization"}};
    } else {
        j = nlohmann::json{{"kind", "pauli"}};
        nlohmann::json p;
        to_json(p, obs.pauli);
        j["pauli"] = p;
    }
}

inline void from_json(const nlohmann::json &j, Observable &obs) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "msq_magnetization") {
        obs = Observable::magnetization();
    } else if (kind == "pauli") {
        obs = Observable::from_pauli(j.at("pauli").get<PauliObservable>());
    } else {
        throw std::invalid_argument("unknown observable kind '" + kind + "'");
    }
}

} // namespace prethermal
