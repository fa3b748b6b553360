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
#include <vector>

#include <json.hpp>

namespace prethermal {

/// Thrown when a request exceeds a configured resource cap (qubit count,
/// exact-diagonalization dimension). Distinct from invalid input so callers
/// can map it to a dedicated exit code.
class ResourceCapError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

inline constexpr int kDefaultQubitCap = 26;

/// Nearest-neighbor bond between two sites, stored with a < b.
struct Bond {
    int a = 0;
    int b = 0;

    friend bool operator==(const Bond &, const Bond &) = default;
};

/// Open-boundary square lattice with sites indexed row-major, its
/// nearest-neighbor bonds, and a coloring of the bonds into layers of
/// mutually non-overlapping gates.
///
/// The coloring follows the even/odd horizontal/vertical pattern: horizontal
/// bonds whose left column is even, horizontal-odd, vertical-even,
/// vertical-odd, in this fixed order. The order matters: the stroboscopic
/// dynamics depend on the sequence in which the groups are applied within a
/// step. Degenerate single-row (single-column) lattices keep only the two
/// horizontal (vertical) groups.
struct Lattice {
    int rows = 0;
    int cols = 0;
    std::vector<Bond> bonds;
    std::vector<std::vector<Bond>> bond_groups;

    int num_sites() const { return rows * cols; }
    int site(int r, int c) const { return r * cols + c; }

    /// Sublattice A = sites with even (row + col).
    bool on_sublattice_a(int s) const {
        return ((s / cols) + (s % cols)) % 2 == 0;
    }
};

inline Lattice build_lattice(int rows, int cols, int qubit_cap = kDefaultQubitCap) {
    if (rows < 1 || cols < 1 || rows * cols < 2)
        throw std::invalid_argument("lattice requires rows,cols >= 1 and at least 2 sites");
    if (rows * cols > qubit_cap)
        throw ResourceCapError("lattice with " + std::to_string(rows * cols) +
                               " sites exceeds the qubit cap of " +
                               std::to_string(qubit_cap));

    Lattice lat;
    lat.rows = rows;
    lat.cols = cols;

    std::vector<Bond> h_even, h_odd, v_even, v_odd;
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c + 1 < cols; ++c) {
            Bond b{lat.site(r, c), lat.site(r, c + 1)};
            (c % 2 == 0 ? h_even : h_odd).push_back(b);
        }
    }
    for (int r = 0; r + 1 < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            Bond b{lat.site(r, c), lat.site(r + 1, c)};
            (r % 2 == 0 ? v_even : v_odd).push_back(b);
        }
    }

    if (rows == 1) {
        lat.bond_groups = {h_even, h_odd};
    } else if (cols == 1) {
        lat.bond_groups = {v_even, v_odd};
    } else {
        lat.bond_groups = {h_even, h_odd, v_even, v_odd};
    }
    for (const auto &group : lat.bond_groups)
        lat.bonds.insert(lat.bonds.end(), group.begin(), group.end());
    return lat;
}

inline void to_json(nlohmann::json &j, const Bond &b) { j = {b.a, b.b}; }

inline void from_json(const nlohmann::json &j, Bond &b) {
    b.a = j.at(0).get<int>();
    b.b = j.at(1).get<int>();
}

inline void to_json(nlohmann::json &j, const Lattice &lat) {
    j = nlohmann::json{{"rows", lat.rows},
                       {"cols", lat.cols},
                       {"bonds", lat.bonds},
                       {"bond_groups", lat.bond_groups}};
}

inline void from_json(const nlohmann::json &j, Lattice &lat) {
    lat.rows = j.at("rows").get<int>();
    lat.cols = j.at("cols").get<int>();
    lat.bonds = j.at("bonds").get<std::vector<Bond>>();
    lat.bond_groups = j.at("bond_groups").get<std::vector<std::vector<Bond>>>();
}

} // namespace prethermal
