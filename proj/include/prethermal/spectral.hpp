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
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "prethermal/hamiltonian.hpp"
#include "prethermal/observable.hpp"
#include "prethermal/state.hpp"

namespace prethermal {

inline constexpr int kDefaultSectorCap = 16000;

/// Basis of the m_z symmetry sector: all bitstrings with fixed Hamming
/// weight w, where m_z = N - 2w is the eigenvalue of Sum_i sigma^z_i.
struct SectorBasis {
    int num_qubits = 0;
    int mz = 0;
    std::vector<std::uint32_t> states;       // ascending
    std::vector<std::int32_t> index_of;      // 2^N entries, -1 outside sector

    std::size_t dim() const { return states.size(); }
};

inline SectorBasis sector_basis(int num_qubits, int mz) {
    if ((num_qubits - mz) % 2 != 0 || mz < -num_qubits || mz > num_qubits)
        throw std::invalid_argument("m_z = " + std::to_string(mz) +
                                    " is not a valid sector of " +
                                    std::to_string(num_qubits) + " qubits");
    const int weight = (num_qubits - mz) / 2;
    SectorBasis basis;
    basis.num_qubits = num_qubits;
    basis.mz = mz;
    basis.index_of.assign(std::size_t(1) << num_qubits, -1);
    for (std::uint32_t s = 0; s < (std::uint32_t(1) << num_qubits); ++s) {
        if (__builtin_popcount(s) == weight) {
            basis.index_of[s] = static_cast<std::int32_t>(basis.states.size());
            basis.states.push_back(s);
        }
    }
    return basis;
}

/// Spectrum of a Hermitian operator restricted to one m_z sector.
/// Eigenvalues ascending; eigenvector columns in the sector basis.
struct SectorSpectrum {
    SectorBasis basis;
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXcd eigenvectors;

    int mz() const { return basis.mz; }
    std::size_t dim() const { return basis.dim(); }
};

/// Dense XY Hamiltonian block in the sector basis.
inline Eigen::MatrixXcd sector_matrix(const SpinHamiltonian &ham, const SectorBasis &basis) {
    const std::size_t d = basis.dim();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
    const double half_coeff = 0.5 * ham.bond_coefficient();
    for (const Bond &bond : ham.lattice.bonds) {
        const std::uint32_t bit_a = std::uint32_t(1) << bond.a;
        const std::uint32_t bit_b = std::uint32_t(1) << bond.b;
        for (std::size_t col = 0; col < d; ++col) {
            std::uint32_t s = basis.states[col];
            bool ba = s & bit_a, bb = s & bit_b;
            if (ba != bb) {
                std::int32_t row = basis.index_of[s ^ bit_a ^ bit_b];
                m(row, col) += half_coeff;
            }
        }
    }
    return m;
}

inline SectorSpectrum diagonalize_hermitian_sector(const Eigen::MatrixXcd &block,
                                                   SectorBasis basis) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(block);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("sector diagonalization failed");
    SectorSpectrum spec;
    spec.basis = std::move(basis);
    spec.eigenvalues = solver.eigenvalues();
    spec.eigenvectors = solver.eigenvectors();
    return spec;
}

inline SectorSpectrum diagonalize_sector(const SpinHamiltonian &ham, int mz,
                                         int sector_cap = kDefaultSectorCap) {
    SectorBasis basis = sector_basis(ham.lattice.num_sites(), mz);
    if (basis.dim() > static_cast<std::size_t>(sector_cap))
        throw ResourceCapError(
            "sector dimension " + std::to_string(basis.dim()) + " exceeds the cap of " +
            std::to_string(sector_cap) + "; use a smaller lattice");
    Eigen::MatrixXcd block = sector_matrix(ham, basis);
    return diagonalize_hermitian_sector(block, std::move(basis));
}

/// All m_z sectors, ordered mz = -N, -N+2, ..., N.
inline std::vector<SectorSpectrum> all_sector_spectra(const SpinHamiltonian &ham,
                                                      int sector_cap = kDefaultSectorCap) {
    const int n = ham.lattice.num_sites();
    std::vector<SectorSpectrum> spectra;
    for (int mz = -n; mz <= n; mz += 2) spectra.push_back(diagonalize_sector(ham, mz, sector_cap));
    return spectra;
}

/// Embeds eigenvector k of a sector into the full 2^N space.
inline PureState embed_eigenvector(const SectorSpectrum &spec, std::size_t k) {
    PureState psi(spec.basis.num_qubits);
    psi.amplitudes().assign(psi.dim(), Complex{0.0, 0.0});
    for (std::size_t b = 0; b < spec.dim(); ++b)
        psi.amplitudes()[spec.basis.states[b]] = spec.eigenvectors(b, k);
    return psi;
}

/// <k|psi> for eigenvector k against a full-space state.
inline Complex eigenstate_overlap(const SectorSpectrum &spec, std::size_t k,
                                  const PureState &psi) {
    Complex s{0.0, 0.0};
    for (std::size_t b = 0; b < spec.dim(); ++b)
        s += std::conj(spec.eigenvectors(b, k)) * psi[spec.basis.states[b]];
    return s;
}

/// <k|A|k> for eigenvector k.
inline double eigenstate_expectation(const SectorSpectrum &spec, std::size_t k,
                                     const Observable &obs) {
    PureState v = embed_eigenvector(spec, k);
    PureState av(v.num_qubits());
    obs.apply(v, av);
    return v.inner_product(av).real();
}

/// Exact (continuous-time) evolution e^{-iHt}|psi> built from sector spectra.
inline PureState exact_evolve(const std::vector<SectorSpectrum> &spectra, const PureState &psi,
                              double t) {
    PureState out(psi.num_qubits());
    out.amplitudes().assign(psi.dim(), Complex{0.0, 0.0});
    for (const auto &spec : spectra) {
        const std::size_t d = spec.dim();
        if (d == 0) continue;
        // Project into the sector eigenbasis, apply phases, map back.
        Eigen::VectorXcd c(d);
        for (std::size_t b = 0; b < d; ++b) c(b) = psi[spec.basis.states[b]];
        Eigen::VectorXcd coeff = spec.eigenvectors.adjoint() * c;
        for (std::size_t k = 0; k < d; ++k)
            coeff(k) *= std::exp(Complex{0.0, -spec.eigenvalues(k) * t});
        Eigen::VectorXcd back = spec.eigenvectors * coeff;
        for (std::size_t b = 0; b < d; ++b) out[spec.basis.states[b]] = back(b);
    }
    return out;
}

inline constexpr double kDegeneracyTolerance = 1e-9;

/// Diagonal-ensemble value sum_E <psi|P_E A P_E|psi>, resolving degenerate
/// eigenspaces (within tol, in units of |J|) by projecting the state onto
/// each eigenspace. Equals the infinite-time average of <A(t)> under
/// continuous evolution.
inline double diagonal_ensemble(const PureState &psi, const Observable &obs,
                                const std::vector<SectorSpectrum> &spectra,
                                double degeneracy_tol = kDegeneracyTolerance) {
    struct Entry {
        double energy;
        const SectorSpectrum *spec;
        std::size_t k;
    };
    std::vector<Entry> entries;
    for (const auto &spec : spectra)
        for (std::size_t k = 0; k < spec.dim(); ++k)
            entries.push_back({spec.eigenvalues(k), &spec, k});
    std::sort(entries.begin(), entries.end(),
              [](const Entry &a, const Entry &b) { return a.energy < b.energy; });

    const int n = psi.num_qubits();
    double value = 0.0;
    std::size_t i = 0;
    PureState w(n), aw(n);
    while (i < entries.size()) {
        std::size_t j = i + 1;
        while (j < entries.size() &&
               entries[j].energy - entries[j - 1].energy <= degeneracy_tol)
            ++j;
        // w = P_E |psi> over the degenerate block [i, j).
        w.amplitudes().assign(w.dim(), Complex{0.0, 0.0});
        double weight = 0.0;
        for (std::size_t e = i; e < j; ++e) {
            const auto &spec = *entries[e].spec;
            Complex c = eigenstate_overlap(spec, entries[e].k, psi);
            weight += std::norm(c);
            if (c != Complex{0.0, 0.0})
                for (std::size_t b = 0; b < spec.dim(); ++b)
                    w[spec.basis.states[b]] += c * spec.eigenvectors(b, entries[e].k);
        }
        if (weight > 1e-14) {
            obs.apply(w, aw);
            value += w.inner_product(aw).real();
        }
        i = j;
    }
    return value;
}

enum class MicrocanonicalKind { sharp, broadened };

/// Microcanonical ensemble value at energy E over the given sectors:
/// sharp -- mean of <k|A|k> over |E_k - E| < delta/2;
/// broadened -- Gaussian-weighted mean, weight exp(-(E-E_k)^2 / (2 delta^2)).
inline double microcanonical(double energy, double delta, const Observable &obs,
                             const std::vector<SectorSpectrum> &spectra,
                             MicrocanonicalKind kind = MicrocanonicalKind::broadened) {
    if (delta <= 0.0) throw std::invalid_argument("microcanonical width delta must be > 0");
    double weighted = 0.0, total_weight = 0.0;
    double nearest = std::numeric_limits<double>::infinity();
    for (const auto &spec : spectra) {
        for (std::size_t k = 0; k < spec.dim(); ++k) {
            double ek = spec.eigenvalues(k);
            if (std::abs(ek - energy) < std::abs(nearest - energy)) nearest = ek;
            double weight;
            if (kind == MicrocanonicalKind::sharp) {
                if (std::abs(ek - energy) >= delta / 2.0) continue;
                weight = 1.0;
            } else {
                double z = (energy - ek) / delta;
                weight = std::exp(-0.5 * z * z);
                if (weight < 1e-300) continue;
            }
            weighted += weight * eigenstate_expectation(spec, k, obs);
            total_weight += weight;
        }
    }
    if (total_weight == 0.0)
        throw std::runtime_error("no eigenstate inside the microcanonical window at E = " +
                                 std::to_string(energy) + "; nearest eigenvalue is " +
                                 std::to_string(nearest));
    return weighted / total_weight;
}

// ---------------------------------------------------------------------------
// Disk cache for sector spectra: versioned binary format with magic bytes and
// an FNV-1a checksum over the payload.
// ---------------------------------------------------------------------------

inline constexpr char kSpectrumCacheMagic[8] = {'P', 'T', 'S', 'P', 'E', 'C', '0', '1'};

inline std::uint64_t fnv1a64(const unsigned char *data, std::size_t len,
                             std::uint64_t hash = 0xcbf29ce484222325ULL) {
    for (std::size_t i = 0; i < len; ++i) {
        hash ^= data[i];
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

inline std::string spectrum_cache_filename(int rows, int cols, double J, int mz) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "spectrum_%dx%d_J%.12g_mz%+d.bin", rows, cols, J, mz);
    return buf;
}

inline void save_sector_spectrum(const std::string &path, const SectorSpectrum &spec,
                                 int rows, int cols, double J) {
    std::vector<unsigned char> payload;
    auto put = [&payload](const void *p, std::size_t len) {
        const auto *b = static_cast<const unsigned char *>(p);
        payload.insert(payload.end(), b, b + len);
    };
    std::int32_t header[4] = {rows, cols, spec.basis.mz,
                              static_cast<std::int32_t>(spec.dim())};
    put(header, sizeof(header));
    put(&J, sizeof(J));
    put(spec.eigenvalues.data(), sizeof(double) * spec.dim());
    put(spec.eigenvectors.data(), sizeof(Complex) * spec.dim() * spec.dim());
    std::uint64_t checksum = fnv1a64(payload.data(), payload.size());

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open cache file for writing: " + path);
    out.write(kSpectrumCacheMagic, sizeof(kSpectrumCacheMagic));
    out.write(reinterpret_cast<const char *>(payload.data()),
              static_cast<std::streamsize>(payload.size()));
    out.write(reinterpret_cast<const char *>(&checksum), sizeof(checksum));
}

/// Loads a cached sector spectrum; returns nullopt when the file is missing,
/// has the wrong magic/key, or fails its checksum.
inline std::optional<SectorSpectrum> load_sector_spectrum(const std::string &path, int rows,
                                                          int cols, double J, int mz) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    char magic[8];
    if (!in.read(magic, sizeof(magic)) ||
        !std::equal(magic, magic + 8, kSpectrumCacheMagic))
        return std::nullopt;
    std::vector<unsigned char> payload((std::istreambuf_iterator<char>(in)),
                                       std::istreambuf_iterator<char>());
    if (payload.size() < sizeof(std::uint64_t)) return std::nullopt;
    std::uint64_t stored;
    std::memcpy(&stored, payload.data() + payload.size() - sizeof(stored), sizeof(stored));
    payload.resize(payload.size() - sizeof(stored));
    if (fnv1a64(payload.data(), payload.size()) != stored) return std::nullopt;

    std::size_t off = 0;
    auto get = [&payload, &off](void *p, std::size_t len) {
        if (off + len > payload.size()) throw std::runtime_error("truncated cache payload");
        std::memcpy(p, payload.data() + off, len);
        off += len;
    };
    std::int32_t header[4];
    double j_stored;
    get(header, sizeof(header));
    get(&j_stored, sizeof(j_stored));
    if (header[0] != rows || header[1] != cols || header[2] != mz || j_stored != J)
        return std::nullopt;

    SectorSpectrum spec;
    spec.basis = sector_basis(rows * cols, mz);
    const std::size_t d = static_cast<std::size_t>(header[3]);
    if (d != spec.basis.dim()) return std::nullopt;
    spec.eigenvalues.resize(d);
    spec.eigenvectors.resize(d, d);
    get(spec.eigenvalues.data(), sizeof(double) * d);
    get(spec.eigenvectors.data(), sizeof(Complex) * d * d);
    return spec;
}

} // namespace prethermal
