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

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "prethermal/noise.hpp"
#include "prethermal/state.hpp"
#include "prethermal/trotter.hpp"

namespace prethermal {

inline constexpr int kDensityMatrixQubitCap = 12;

/// Dense density matrix for small systems: the exact Kraus-map reference
/// against which the Monte Carlo unraveling and the rescaling bound are
/// checked. Index layout: entry (r, c) at r * 2^n + c, so row bits live at
/// positions n..2n-1 and column bits at 0..n-1 of the flat index.
class DensityMatrix {
  public:
    explicit DensityMatrix(int num_qubits)
        : n_(num_qubits), dim_(checked_dim(num_qubits)),
          data_(dim_ * dim_, Complex{0.0, 0.0}) {
        data_[0] = 1.0;
    }

    static DensityMatrix from_pure(const PureState &psi) {
        DensityMatrix rho(psi.num_qubits());
        const auto &a = psi.amplitudes();
        for (std::size_t r = 0; r < rho.dim_; ++r)
            for (std::size_t c = 0; c < rho.dim_; ++c)
                rho.data_[r * rho.dim_ + c] = a[r] * std::conj(a[c]);
        return rho;
    }

    int num_qubits() const { return n_; }
    std::size_t dim() const { return dim_; }
    Complex &at(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
    const Complex &at(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }

    double trace_real() const {
        double t = 0.0;
        for (std::size_t r = 0; r < dim_; ++r) t += data_[r * dim_ + r].real();
        return t;
    }

    double purity() const {
        // Tr rho^2 = sum |rho_rc|^2 for Hermitian rho.
        double s = 0.0;
        for (const auto &x : data_) s += std::norm(x);
        return s;
    }

    /// U rho U^dagger for the two-qubit XY gate on bond (a, b): the gate acts
    /// on the row bits and its conjugate on the column bits.
    void apply_xy_gate(int qa, int qb, double c, double s) {
        apply_xy_block(qa + n_, qb + n_, c, s);
        apply_xy_block(qa, qb, c, -s);
    }

    void apply_gate_layer(const std::vector<Bond> &layer, double c, double s) {
        for (const Bond &bond : layer) apply_xy_gate(bond.a, bond.b, c, s);
    }

    /// Exact single-qubit channel on qubit q.
    void apply_channel(NoiseKind kind, double p, int q) {
        switch (kind) {
        case NoiseKind::depolarizing: {
            std::vector<Complex> acc(data_.size());
            for (std::size_t i = 0; i < data_.size(); ++i) acc[i] = (1.0 - p) * data_[i];
            for (int mu = 0; mu < 3; ++mu) {
                std::vector<Complex> tmp = data_;
                conjugate_by_pauli(tmp, static_cast<PauliOp>(mu), q);
                for (std::size_t i = 0; i < data_.size(); ++i) acc[i] += (p / 3.0) * tmp[i];
            }
            data_.swap(acc);
            break;
        }
        case NoiseKind::phase_damping: {
            std::vector<Complex> tmp = data_;
            conjugate_by_pauli(tmp, PauliOp::Z, q);
            for (std::size_t i = 0; i < data_.size(); ++i)
                data_[i] = (1.0 - p) * data_[i] + p * tmp[i];
            break;
        }
        case NoiseKind::amplitude_damping: {
            // Blocks by (row bit, col bit): 00 += p * 11; 01,10 *= sqrt(1-p);
            // 11 *= 1-p.
            const std::uint64_t row_bit = std::uint64_t(1) << (q + n_);
            const std::uint64_t col_bit = std::uint64_t(1) << q;
            const double damp = std::sqrt(1.0 - p);
            for (std::uint64_t i = 0; i < data_.size(); ++i) {
                bool rb = i & row_bit, cb = i & col_bit;
                if (!rb && !cb) {
                    data_[i] += p * data_[i | row_bit | col_bit];
                } else if (rb && cb) {
                    data_[i] *= 1.0 - p;
                } else {
                    data_[i] *= damp;
                }
            }
            break;
        }
        }
    }

    void apply_noise_layer(const NoiseModel &model) {
        if (model.p == 0.0) return;
        for (int q = 0; q < n_; ++q) apply_channel(model.kind, model.p, q);
    }

    /// A rho A for a Pauli-string observable with prefactor +-1.
    void apply_observable(const PauliObservable &obs) {
        for (std::size_t k = 0; k < obs.sites.size(); ++k) {
            conjugate_by_pauli(data_, obs.ops[k], obs.sites[k]);
        }
        // prefactor^2 = 1 for unitary observables; nothing else to do.
    }

    double overlap(const PureState &psi) const {
        const auto &a = psi.amplitudes();
        Complex s{0.0, 0.0};
        for (std::size_t r = 0; r < dim_; ++r)
            for (std::size_t c = 0; c < dim_; ++c)
                s += std::conj(a[r]) * data_[r * dim_ + c] * a[c];
        return s.real();
    }

    double expectation(const PauliObservable &obs) const {
        if (obs.is_identity()) return trace_real();
        DensityMatrix tmp = *this;
        // Tr(A rho): apply the Pauli string to the rows only.
        for (std::size_t k = 0; k < obs.sites.size(); ++k)
            apply_pauli_to_bits(tmp.data_, obs.ops[k], obs.sites[k] + n_, false);
        return obs.prefactor * tmp.trace_real();
    }

    /// Tr[(A rho)^2] for a Hermitian unitary observable.
    double survival_functional(const PauliObservable &obs) const {
        DensityMatrix tmp = *this;
        if (!obs.is_identity())
            for (std::size_t k = 0; k < obs.sites.size(); ++k)
                apply_pauli_to_bits(tmp.data_, obs.ops[k], obs.sites[k] + n_, false);
        // Tr[M^2] = sum_rc M_rc M_cr.
        Complex s{0.0, 0.0};
        for (std::size_t r = 0; r < dim_; ++r)
            for (std::size_t c = 0; c < dim_; ++c)
                s += tmp.data_[r * dim_ + c] * tmp.data_[c * dim_ + r];
        return s.real();
    }

    Eigen::MatrixXcd to_eigen() const {
        Eigen::MatrixXcd m(dim_, dim_);
        for (std::size_t r = 0; r < dim_; ++r)
            for (std::size_t c = 0; c < dim_; ++c) m(r, c) = data_[r * dim_ + c];
        return m;
    }

    /// Trace distance (1/2)||rho - other||_1.
    double trace_distance(const DensityMatrix &other) const {
        Eigen::MatrixXcd diff = to_eigen() - other.to_eigen();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(diff);
        return 0.5 * solver.eigenvalues().cwiseAbs().sum();
    }

    void scale(double f) {
        for (auto &x : data_) x *= f;
    }

    void subtract_pure(const PureState &psi, double weight) {
        const auto &a = psi.amplitudes();
        for (std::size_t r = 0; r < dim_; ++r)
            for (std::size_t c = 0; c < dim_; ++c)
                data_[r * dim_ + c] -= weight * a[r] * std::conj(a[c]);
    }

  private:
    static std::size_t checked_dim(int num_qubits) {
        if (num_qubits > kDensityMatrixQubitCap)
            throw ResourceCapError("density-matrix oracle limited to " +
                                   std::to_string(kDensityMatrixQubitCap) + " qubits");
        return std::size_t(1) << num_qubits;
    }

    // sigma rho sigma for a Pauli on qubit q: apply to row bits, conjugate to
    // column bits.
    void conjugate_by_pauli(std::vector<Complex> &d, PauliOp op, int q) const {
        apply_pauli_to_bits(d, op, q + n_, false);
        apply_pauli_to_bits(d, op, q, true);
    }

    static void apply_pauli_to_bits(std::vector<Complex> &d, PauliOp op, int bit_pos,
                                    bool conjugated) {
        const std::uint64_t bit = std::uint64_t(1) << bit_pos;
        const Complex up = conjugated ? Complex{0.0, -1.0} : Complex{0.0, 1.0};
        switch (op) {
        case PauliOp::X:
            for (std::uint64_t i = 0; i < d.size(); ++i)
                if (!(i & bit)) std::swap(d[i], d[i | bit]);
            break;
        case PauliOp::Y:
            for (std::uint64_t i = 0; i < d.size(); ++i) {
                if (i & bit) continue;
                Complex a0 = d[i], a1 = d[i | bit];
                d[i] = -up * a1;
                d[i | bit] = up * a0;
            }
            break;
        case PauliOp::Z:
            for (std::uint64_t i = 0; i < d.size(); ++i)
                if (i & bit) d[i] = -d[i];
            break;
        }
    }

    void apply_xy_block(int bit_a, int bit_b, double c, double s) {
        const std::uint64_t ba = std::uint64_t(1) << bit_a;
        const std::uint64_t bb = std::uint64_t(1) << bit_b;
        const Complex is{0.0, s};
        for (std::uint64_t i = 0; i < data_.size(); ++i) {
            if ((i & ba) || !(i & bb)) continue; // visit the (0,1) pattern once
            std::uint64_t j = (i ^ ba) ^ bb;     // the (1,0) partner
            Complex a01 = data_[i], a10 = data_[j];
            data_[i] = c * a01 + is * a10;
            data_[j] = is * a01 + c * a10;
        }
    }

    int n_;
    std::size_t dim_;
    std::vector<Complex> data_;
};

/// Exact density-matrix run of the noisy survival circuit (same layer and
/// noise placement as the trajectory sampler). Returns the survival
/// probability <psi0| rho_final |psi0>.
inline double exact_noisy_survival(const PureState &psi0, const TrotterSchedule &sched,
                                   int n_steps, const PauliObservable &obs,
                                   const NoiseModel &model) {
    DensityMatrix rho = DensityMatrix::from_pure(psi0);
    const double c = sched.gate_cos(), s = sched.gate_sin();
    for (int step = 0; step < n_steps; ++step) {
        for (const auto &layer : sched.layers) {
            rho.apply_gate_layer(layer, c, s);
            rho.apply_noise_layer(model);
        }
    }
    if (!obs.is_identity()) rho.apply_observable(obs);
    for (int step = 0; step < n_steps; ++step) {
        for (auto it = sched.layers.rbegin(); it != sched.layers.rend(); ++it) {
            rho.apply_noise_layer(model);
            rho.apply_gate_layer(*it, c, -s);
        }
    }
    return rho.overlap(psi0);
}

/// Exact noisy forward evolution only (no observable, no return trip).
inline DensityMatrix exact_noisy_forward(const PureState &psi0, const TrotterSchedule &sched,
                                         int n_steps, const NoiseModel &model) {
    DensityMatrix rho = DensityMatrix::from_pure(psi0);
    const double c = sched.gate_cos(), s = sched.gate_sin();
    for (int step = 0; step < n_steps; ++step) {
        for (const auto &layer : sched.layers) {
            rho.apply_gate_layer(layer, c, s);
            rho.apply_noise_layer(model);
        }
    }
    return rho;
}

/// Trajectory-averaged density matrix of the noisy forward evolution; the
/// Monte Carlo counterpart of exact_noisy_forward.
inline DensityMatrix trajectory_averaged_forward(const PureState &psi0,
                                                 const TrotterSchedule &sched, int n_steps,
                                                 const NoiseModel &model, int n_traj,
                                                 std::uint64_t seed) {
    DensityMatrix avg(psi0.num_qubits());
    avg.scale(0.0);
    const double c = sched.gate_cos(), s = sched.gate_sin();
    for (int t = 0; t < n_traj; ++t) {
        RngStream rng(seed, t);
        PureState state = psi0;
        for (int step = 0; step < n_steps; ++step) {
            for (const auto &layer : sched.layers) {
                apply_gate_layer(state, layer, c, s);
                apply_noise_layer(state, model, rng);
            }
        }
        const auto &a = state.amplitudes();
        for (std::size_t r = 0; r < avg.dim(); ++r)
            for (std::size_t col = 0; col < avg.dim(); ++col)
                avg.at(r, col) += a[r] * std::conj(a[col]);
    }
    avg.scale(1.0 / double(n_traj));
    return avg;
}

} // namespace prethermal
