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
#include <string>
#include <vector>

#include <json.hpp>

namespace prethermal {

enum class PauliOp { X, Y, Z };

inline char pauli_char(PauliOp op) {
    switch (op) {
    case PauliOp::X: return 'X';
    case PauliOp::Y: return 'Y';
    case PauliOp::Z: return 'Z';
    }
    return '?';
}

inline PauliOp pauli_from_char(char c) {
    switch (c) {
    case 'X': case 'x': return PauliOp::X;
    case 'Y': case 'y': return PauliOp::Y;
    case 'Z': case 'z': return PauliOp::Z;
    default:
        throw std::invalid_argument(std::string("unknown Pauli operator '") + c + "'");
    }
}

/// Weighted Pauli string. The empty string is the identity. With prefactor
/// +-1 the observable is Hermitian and unitary (squares to the identity),
/// which is what the survival-probability circuit requires.
struct PauliObservable {
    std::vector<int> sites;
    std::vector<PauliOp> ops;
    double prefactor = 1.0;

    static PauliObservable identity() { return {}; }

    /// A = 4 S^x_i S^x_j = X_i X_j, the nearest-neighbor in-plane correlator.
    static PauliObservable xx(int i, int j) {
        return {{i, j}, {PauliOp::X, PauliOp::X}, 1.0};
    }

    bool is_identity() const { return sites.empty() && prefactor == 1.0; }
    bool is_unitary() const { return std::abs(std::abs(prefactor) - 1.0) < 1e-15; }

    std::string to_string() const {
        if (sites.empty()) return "I";
        std::string s;
        for (std::size_t k = 0; k < sites.size(); ++k) {
            if (k) s += ' ';
            s += pauli_char(ops[k]);
            s += std::to_string(sites[k]);
        }
        return s;
    }
};

inline void to_json(nlohmann::json &j, const PauliObservable &obs) {
    std::string paulis;
    for (auto op : obs.ops) paulis += pauli_char(op);
    j = nlohmann::json{{"sites", obs.sites},
                       {"paulis", paulis},
                       {"prefactor", obs.prefactor}};
}

inline void from_json(const nlohmann::json &j, PauliObservable &obs) {
    obs.sites = j.at("sites").get<std::vector<int>>();
    obs.ops.clear();
    for (char c : j.at("paulis").get<std::string>()) obs.ops.push_back(pauli_from_char(c));
    obs.prefactor = j.value("prefactor", 1.0);
    if (obs.ops.size() != obs.sites.size())
        throw std::invalid_argument("Pauli string length does not match site list");
}

} // namespace prethermal
