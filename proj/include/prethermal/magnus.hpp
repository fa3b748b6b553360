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
#include <complex>
#include <stdexcept>
#include <vector>

#include "prethermal/spectral.hpp"
#include "prethermal/trotter.hpp"

namespace prethermal {

/// Piecewise-constant periodic drive: H(t) = segments[j] on the j-th of
/// equally long segments of one period. For the Trotterized XY model the
/// segment values are Gamma * H_j, so that one period reproduces one
/// Trotter step and the time average is the full Hamiltonian.
struct PiecewiseDrive {
    double period = 0.0;
    std::vector<Eigen::MatrixXcd> segments;

    double segment_duration() const { return period / double(segments.size()); }
};

/// Bond-group block of the XY Hamiltonian in a sector basis.
inline Eigen::MatrixXcd bond_group_sector_matrix(const SpinHamiltonian &ham,
                                                 const SectorBasis &basis,
                                                 const std::vector<Bond> &group) {
    const std::size_t d = basis.dim();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
    const double half_coeff = 0.5 * ham.bond_coefficient();
    for (const Bond &bond : group) {
        const std::uint32_t bit_a = std::uint32_t(1) << bond.a;
        const std::uint32_t bit_b = std::uint32_t(1) << bond.b;
        for (std::size_t col = 0; col < d; ++col) {
            std::uint32_t s = basis.states[col];
            bool ba = s & bit_a, bb = s & bit_b;
            if (ba != bb) m(basis.index_of[s ^ bit_a ^ bit_b], col) += half_coeff;
        }
    }
    return m;
}

inline PiecewiseDrive xy_sector_drive(const SpinHamiltonian &ham, const SectorBasis &basis,
                                      double tau) {
    PiecewiseDrive drive;
    drive.period = tau;
    const double gamma = double(ham.lattice.bond_groups.size());
    for (const auto &group : ham.lattice.bond_groups)
        drive.segments.push_back(gamma * bond_group_sector_matrix(ham, basis, group));
    return drive;
}

/// Truncated Magnus terms for an equal-segment piecewise-constant drive.
///
/// Writing A_j for the segment values and d for the segment duration, the
/// nested integrals collapse segment by segment:
///   Omega_0 = (d/T) sum_j A_j
///   Omega_1 = (d^2 / 2iT) sum_{a>b} [A_a, A_b]
///   Omega_2 = -(d^3 / 6T) ( sum_{a>b>c} ([A_a,[A_b,A_c]] + [A_c,[A_b,A_a]])
///             + 1/2 sum_{a>c} [A_a,[A_a,A_c]] + 1/2 sum_{a>b} [A_b,[A_b,A_a]] )
/// The 1/2 factors come from the triangular volume of the ordered-time region
/// when two integration variables share a segment; same-segment commutators
/// vanish identically.
inline Eigen::MatrixXcd magnus_term(const PiecewiseDrive &drive, int k) {
    const auto &a = drive.segments;
    if (a.empty()) throw std::invalid_argument("drive has no segments");
    const std::size_t m = a.size();
    const auto d0 = a[0].rows();
    const double seg = drive.segment_duration();
    const double tau = drive.period;
    auto comm = [](const Eigen::MatrixXcd &x, const Eigen::MatrixXcd &y) {
        return (x * y - y * x).eval();
    };

    switch (k) {
    case 0: {
        Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(d0, d0);
        for (const auto &h : a) sum += h;
        return (seg / tau) * sum;
    }
    case 1: {
        Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(d0, d0);
        for (std::size_t p = 1; p < m; ++p)
            for (std::size_t q = 0; q < p; ++q) sum += comm(a[p], a[q]);
        return (seg * seg / (2.0 * tau)) * (Complex{0.0, -1.0} * sum);
    }
    case 2: {
        Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(d0, d0);
        for (std::size_t p = 2; p < m; ++p)
            for (std::size_t q = 1; q < p; ++q)
                for (std::size_t r = 0; r < q; ++r)
                    sum += comm(a[p], comm(a[q], a[r])) + comm(a[r], comm(a[q], a[p]));
        for (std::size_t p = 1; p < m; ++p)
            for (std::size_t q = 0; q < p; ++q) {
                sum += 0.5 * comm(a[p], comm(a[p], a[q]));
                sum += 0.5 * comm(a[q], comm(a[q], a[p]));
            }
        return -(seg * seg * seg / (6.0 * tau)) * sum;
    }
    default:
        throw std::invalid_argument("Magnus terms are implemented for k in {0, 1, 2}");
    }
}

/// H_Magnus^{(n)} = sum_{k<=n} Omega_k.
inline Eigen::MatrixXcd magnus_effective_hamiltonian(const PiecewiseDrive &drive, int order) {
    Eigen::MatrixXcd h = magnus_term(drive, 0);
    for (int k = 1; k <= order; ++k) h += magnus_term(drive, k);
    return h;
}

/// Spectra of the order-n Magnus effective Hamiltonian in every m_z sector.
inline std::vector<SectorSpectrum> magnus_sector_spectra(const SpinHamiltonian &ham,
                                                         double tau, int order,
                                                         int sector_cap = kDefaultSectorCap) {
    const int n = ham.lattice.num_sites();
    std::vector<SectorSpectrum> spectra;
    for (int mz = -n; mz <= n; mz += 2) {
        SectorBasis basis = sector_basis(n, mz);
        if (basis.dim() > static_cast<std::size_t>(sector_cap))
            throw ResourceCapError("sector dimension " + std::to_string(basis.dim()) +
                                   " exceeds the cap of " + std::to_string(sector_cap));
        PiecewiseDrive drive = xy_sector_drive(ham, basis, tau);
        Eigen::MatrixXcd h = magnus_effective_hamiltonian(drive, order);
        spectra.push_back(diagonalize_hermitian_sector(h, std::move(basis)));
    }
    return spectra;
}

/// Stroboscopic deviation |<A>_Floquet(m tau) - <A>_Magnus^{(n)}(m tau)| for
/// m = 0..n_steps. The Floquet side evolves the statevector step by step;
/// the Magnus side uses exact exponentials from the sector spectra.
inline std::vector<double> floquet_vs_magnus_deviation(const PureState &psi0,
                                                       const Observable &obs,
                                                       const SpinHamiltonian &ham, double tau,
                                                       int order, int n_steps) {
    auto spectra = magnus_sector_spectra(ham, tau, order);
    TrotterSchedule sched = make_trotter_schedule(ham.lattice, ham.J, tau);

    std::vector<double> deviation;
    deviation.reserve(n_steps + 1);
    PureState floquet = psi0;
    for (int m = 0; m <= n_steps; ++m) {
        if (m > 0) apply_trotter_step(floquet, sched);
        PureState magnus = exact_evolve(spectra, psi0, m * tau);
        deviation.push_back(std::abs(obs.expectation(floquet) - obs.expectation(magnus)));
    }
    return deviation;
}

} // namespace prethermal
