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

#include <cassert>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "prethermal/lattice.hpp"
#include "prethermal/pauli.hpp"

namespace prethermal {

using Complex = std::complex<double>;

/// Pure state of N qubits as a dense amplitude vector over the 2^N
/// computational basis. Site i maps to bit i (LSB first); bit value 0 is
/// |0> = sigma^z eigenvalue +1.
class PureState {
  public:
    PureState() = default;

    explicit PureState(int num_qubits)
        : n_(num_qubits), amps_(std::size_t(1) << num_qubits, Complex{0.0, 0.0}) {
        amps_[0] = 1.0;
    }

    static PureState basis_state(int num_qubits, std::uint64_t index) {
        PureState s(num_qubits);
        s.amps_[0] = 0.0;
        s.amps_[index] = 1.0;
        return s;
    }

    int num_qubits() const { return n_; }
    std::size_t dim() const { return amps_.size(); }
    Complex &operator[](std::size_t i) { return amps_[i]; }
    const Complex &operator[](std::size_t i) const { return amps_[i]; }
    std::vector<Complex> &amplitudes() { return amps_; }
    const std::vector<Complex> &amplitudes() const { return amps_; }

    double norm_squared() const {
        double s = 0.0;
        for (const auto &a : amps_) s += std::norm(a);
        return s;
    }

    double norm() const { return std::sqrt(norm_squared()); }

    void normalize() {
        double nrm = norm();
        if (nrm == 0.0) throw std::runtime_error("cannot normalize the zero vector");
        double inv = 1.0 / nrm;
        for (auto &a : amps_) a *= inv;
    }

    Complex inner_product(const PureState &other) const {
        assert(n_ == other.n_);
        Complex s{0.0, 0.0};
        for (std::size_t i = 0; i < amps_.size(); ++i)
            s += std::conj(amps_[i]) * other.amps_[i];
        return s;
    }

    double overlap_probability(const PureState &other) const {
        return std::norm(inner_product(other));
    }

    void apply_pauli_x(int q) {
        const std::uint64_t bit = std::uint64_t(1) << q;
        for (std::uint64_t i = 0; i < amps_.size(); ++i)
            if (!(i & bit)) std::swap(amps_[i], amps_[i | bit]);
    }

    void apply_pauli_y(int q) {
        const std::uint64_t bit = std::uint64_t(1) << q;
        const Complex im{0.0, 1.0};
        for (std::uint64_t i = 0; i < amps_.size(); ++i) {
            if (i & bit) continue;
            Complex a0 = amps_[i], a1 = amps_[i | bit];
            amps_[i] = -im * a1;
            amps_[i | bit] = im * a0;
        }
    }

    void apply_pauli_z(int q) {
        const std::uint64_t bit = std::uint64_t(1) << q;
        for (std::uint64_t i = 0; i < amps_.size(); ++i)
            if (i & bit) amps_[i] = -amps_[i];
    }

    void apply_pauli(PauliOp op, int q) {
        switch (op) {
        case PauliOp::X: apply_pauli_x(q); break;
        case PauliOp::Y: apply_pauli_y(q); break;
        case PauliOp::Z: apply_pauli_z(q); break;
        }
    }

    void apply_observable(const PauliObservable &obs) {
        for (std::size_t k = 0; k < obs.sites.size(); ++k)
            apply_pauli(obs.ops[k], obs.sites[k]);
        if (obs.prefactor != 1.0)
            for (auto &a : amps_) a *= obs.prefactor;
    }

    /// Two-qubit XY-bond gate: identity on |00>,|11>, and on {|01>,|10>}
    ///   [ c   i s ]
    ///   [ i s   c ]
    /// which is exp(-i h tau) for the bond term h = -J(SxSx+SySy) with
    /// c = cos(J tau / 2), s = sin(J tau / 2).
    void apply_xy_gate(int qa, int qb, double c, double s) {
        if (qa > qb) std::swap(qa, qb);
        const std::uint64_t bit_a = std::uint64_t(1) << qa;
        const std::uint64_t bit_b = std::uint64_t(1) << qb;
        const std::uint64_t mask_low = bit_a - 1;
        const std::uint64_t mask_mid = (bit_b >> 1) - bit_a; // bits between a and b
        const Complex is{0.0, s};
        const std::uint64_t count = amps_.size() >> 2;
        for (std::uint64_t i = 0; i < count; ++i) {
            std::uint64_t low = i & mask_low;
            std::uint64_t mid = (i << 1) & (mask_mid << 1);
            std::uint64_t high = (i << 2) & ~((bit_b << 1) - 1);
            std::uint64_t base = high | mid | low;
            std::uint64_t i01 = base | bit_b;
            std::uint64_t i10 = base | bit_a;
            Complex a01 = amps_[i01], a10 = amps_[i10];
            amps_[i01] = c * a01 + is * a10;
            amps_[i10] = is * a01 + c * a10;
        }
    }

    /// Population of |1> on qubit q.
    double excited_population(int q) const {
        const std::uint64_t bit = std::uint64_t(1) << q;
        double s = 0.0;
        for (std::uint64_t i = 0; i < amps_.size(); ++i)
            if (i & bit) s += std::norm(amps_[i]);
        return s;
    }

    /// <Sum_i sigma^z_i>.
    double total_sigma_z() const {
        double s = 0.0;
        for (std::uint64_t i = 0; i < amps_.size(); ++i) {
            int ones = __builtin_popcountll(i);
            s += std::norm(amps_[i]) * double(n_ - 2 * ones);
        }
        return s;
    }

  private:
    int n_ = 0;
    std::vector<Complex> amps_;
};

/// Bipartite product-state family: sublattice A sites in |theta,0>,
/// sublattice B sites in |pi-theta,phi>, where
/// |theta,phi> = cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>.
/// When the two sublattices have equal size, <sum sigma^z> = 0.
struct ProductStateSpec {
    double theta = M_PI / 2.0;
    double phi = 0.0;
};

/// |X+> = [(|0>+|1>)/sqrt(2)]^{(x)N}, corresponding to theta = pi/2, phi = 0.
inline ProductStateSpec x_plus_spec() { return {M_PI / 2.0, 0.0}; }

inline PureState product_state(const ProductStateSpec &spec, const Lattice &lat) {
    const int n = lat.num_sites();
    // Single-site amplitudes per sublattice: A sites carry |theta, 0>, B
    // sites |pi - theta, phi>, so the azimuthal phase lives on B only.
    const Complex a0{std::cos(spec.theta / 2.0), 0.0};
    const Complex a1{std::sin(spec.theta / 2.0), 0.0};
    const Complex b0{std::sin(spec.theta / 2.0), 0.0};
    const Complex b1{std::cos(spec.theta / 2.0) * std::cos(spec.phi),
                     std::cos(spec.theta / 2.0) * std::sin(spec.phi)};

    PureState psi(n);
    auto &amps = psi.amplitudes();
    for (std::uint64_t idx = 0; idx < amps.size(); ++idx) {
        Complex amp{1.0, 0.0};
        for (int q = 0; q < n; ++q) {
            bool one = (idx >> q) & 1;
            amp *= lat.on_sublattice_a(q) ? (one ? a1 : a0) : (one ? b1 : b0);
        }
        amps[idx] = amp;
    }
    return psi;
}

/// <psi|P|psi> for a Pauli string P (real since P is Hermitian).
inline double observable_expectation(const PureState &state, const PauliObservable &obs) {
    if (obs.is_identity()) return 1.0;
    PureState tmp = state;
    tmp.apply_observable(obs);
    return state.inner_product(tmp).real();
}

/// Accumulates acc += Sum_i S^alpha_i |psi> for alpha = x or y (S = sigma/2).
inline void accumulate_total_spin(const PureState &psi, PauliOp axis, PureState &acc) {
    const auto &in = psi.amplitudes();
    auto &out = acc.amplitudes();
    const int n = psi.num_qubits();
    const Complex im{0.0, 1.0};
    for (int q = 0; q < n; ++q) {
        const std::uint64_t bit = std::uint64_t(1) << q;
        if (axis == PauliOp::X) {
            for (std::uint64_t i = 0; i < in.size(); ++i) out[i] += 0.5 * in[i ^ bit];
        } else {
            for (std::uint64_t i = 0; i < in.size(); ++i) {
                // sigma^y: |0> -> i|1>, |1> -> -i|0>
                out[i] += 0.5 * ((i & bit) ? im : -im) * in[i ^ bit];
            }
        }
    }
}

/// Mean-squared in-plane magnetization per site,
/// 4 [ <(Sum S^x)^2> + <(Sum S^y)^2> ] / N^2.
inline double mean_squared_inplane_magnetization(const PureState &state) {
    const int n = state.num_qubits();
    PureState ax(n), ay(n);
    ax.amplitudes().assign(state.dim(), Complex{0.0, 0.0});
    ay.amplitudes().assign(state.dim(), Complex{0.0, 0.0});
    accumulate_total_spin(state, PauliOp::X, ax);
    accumulate_total_spin(state, PauliOp::Y, ay);
    return 4.0 * (ax.norm_squared() + ay.norm_squared()) / (double(n) * double(n));
}

} // namespace prethermal
