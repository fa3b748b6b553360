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
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace prethermal {

/// Scalar estimate with a propagated standard error.
struct Estimate {
    double value = 0.0;
    double stderr_ = 0.0;
};

/// Denominator cutoff below which the rescaled estimator is flagged
/// unreliable: too few surviving trajectories/shots to resolve the signal.
inline constexpr double kRescaleReliabilityCutoff = 0.01;

struct RescaledEstimate {
    Estimate estimate;
    bool reliable = true;
};

/// Mitigated survival probability L_A(t) ~ L_A^noisy / L_id^noisy, with
/// first-order (delta-method) error propagation. The numerator and the
/// denominator come from independent measurements.
inline RescaledEstimate rescale(const Estimate &l_a_noisy, const Estimate &l_id_noisy) {
    if (l_id_noisy.value <= 0.0)
        throw std::invalid_argument("rescale requires a positive denominator");
    RescaledEstimate out;
    double ratio = l_a_noisy.value / l_id_noisy.value;
    double rel_num = l_a_noisy.value != 0.0 ? l_a_noisy.stderr_ / l_a_noisy.value : 0.0;
    double rel_den = l_id_noisy.stderr_ / l_id_noisy.value;
    double err = (l_a_noisy.value != 0.0)
                     ? std::abs(ratio) * std::sqrt(rel_num * rel_num + rel_den * rel_den)
                     : l_a_noisy.stderr_ / l_id_noisy.value;
    out.estimate = {ratio, err};
    out.reliable = l_id_noisy.value >= kRescaleReliabilityCutoff;
    return out;
}

/// Mitigation error s = rescaled - L_A(t) against a noiseless reference.
inline double mitigation_error_s(const Estimate &rescaled, double l_a_noiseless) {
    return rescaled.value - l_a_noiseless;
}

/// Closed-form mitigation bias under global depolarizing noise
/// (rho~ = 1/2^N): s = (1 - L_A) (1 - q^2) / (q^2 2^N + (1 - q^2)).
inline double global_depolarizing_bias(double l_a_true, double q, int num_qubits) {
    double q2 = q * q;
    double pow2n = std::pow(2.0, num_qubits);
    return (1.0 - l_a_true) * (1.0 - q2) / (q2 * pow2n + (1.0 - q2));
}

struct BoundCheckResult {
    bool holds = false;
    double lhs = 0.0; // |L_A_noisy / q^2 - L_A_true|
    double rhs = 0.0; // (1-q)^2 (r/q)^2 + 2 (1-q) (r/q)
    double q = 0.0;
    double r = 0.0;
};

/// Cauchy-Schwarz bound on the rescaled estimator:
/// |L_A^noisy / q^2 - L_A| <= (1-q)^2 (r/q)^2 + 2(1-q)(r/q),
/// with q the no-error amplitude and r = sqrt(Tr rho~^2) the purity root of
/// the error-conditioned state. Exact inputs come from the density-matrix
/// oracle on small lattices.
inline BoundCheckResult bound_check(double q, double r, double l_a_noisy, double l_a_true) {
    if (q <= 0.0 || q > 1.0) throw std::invalid_argument("q must be in (0, 1]");
    BoundCheckResult res;
    res.q = q;
    res.r = r;
    res.lhs = std::abs(l_a_noisy / (q * q) - l_a_true);
    double rq = r / q;
    res.rhs = (1.0 - q) * (1.0 - q) * rq * rq + 2.0 * (1.0 - q) * rq;
    res.holds = res.lhs <= res.rhs + 1e-12;
    return res;
}

/// Depth bound from q >> r with the global-depolarizing purity floor
/// r^2 = 2^-N:  ND < (N log 2 + log(1/C)) / log(1/(1-p)).
inline double max_depth(int num_qubits, double p, double c = 1.0) {
    if (p <= 0.0 || p >= 1.0) throw std::invalid_argument("p must be in (0,1)");
    if (c <= 0.0) throw std::invalid_argument("C must be > 0");
    double nd = (num_qubits * std::log(2.0) + std::log(1.0 / c)) / std::log(1.0 / (1.0 - p));
    return nd / double(num_qubits);
}

/// Thermodynamic-limit depth bound, lim N->inf of max_depth.
inline double max_depth_infinite(double p, double c = 1.0) {
    if (p <= 0.0 || p >= 1.0) throw std::invalid_argument("p must be in (0,1)");
    (void)c; // the log(1/C)/N term vanishes in the limit
    return std::log(2.0) / std::log(1.0 / (1.0 - p));
}

/// Shot budget to resolve the exponentially suppressed survival signal.
/// With eps_stat = 1 the shot noise matches the signal scale; a caller
/// wanting relative precision alpha divides by alpha^2.
struct SampleBudget {
    int num_qubits = 0;
    double depth = 0.0;
    double p = 0.0;
    double p_m = 0.0;
    double eps_stat = 1.0;
    double required_shots = 0.0;
};

inline SampleBudget sample_budget(int num_qubits, double depth, double p, double p_m = 0.0,
                                  double eps_stat = 1.0) {
    if (p < 0.0 || p >= 1.0 || p_m < 0.0 || p_m >= 1.0)
        throw std::invalid_argument("probabilities must be in [0,1)");
    if (eps_stat <= 0.0) throw std::invalid_argument("eps_stat must be > 0");
    SampleBudget budget{num_qubits, depth, p, p_m, eps_stat, 0.0};
    double log_shots = -2.0 * num_qubits * depth * std::log(1.0 - p) -
                       2.0 * num_qubits * std::log(1.0 - p_m) - 2.0 * std::log(eps_stat);
    budget.required_shots = std::ceil(std::exp(log_shots));
    return budget;
}

/// One row of the mitigation pipeline; `s` is defined only when a noiseless
/// reference is attached.
struct MitigationRecord {
    double t = 0.0;
    int depth = 0;
    Estimate l_id_noisy;
    Estimate l_a_noisy;
    Estimate rescaled;
    bool reliable = true;
    std::optional<double> l_a_noiseless;

    std::optional<double> s() const {
        if (!l_a_noiseless) return std::nullopt;
        return rescaled.value - *l_a_noiseless;
    }
};

inline const char *mitigation_csv_header() {
    return "t,D,L_id,L_id_err,L_A,L_A_err,rescaled,rescaled_err,s";
}

inline void write_mitigation_record(std::ostream &os, const MitigationRecord &rec) {
    os << rec.t << ',' << rec.depth << ',' << rec.l_id_noisy.value << ','
       << rec.l_id_noisy.stderr_ << ',' << rec.l_a_noisy.value << ',' << rec.l_a_noisy.stderr_
       << ',' << rec.rescaled.value << ',' << rec.rescaled.stderr_ << ',';
    if (auto sv = rec.s()) os << *sv;
    os << '\n';
}

/// Sign assignment for a series of expectation magnitudes sqrt(L_A): the
/// sign is tracked from the known initial value and flips whenever the
/// magnitude dips below the zero-crossing threshold, assuming the underlying
/// expectation is smooth. A local minimum that approaches the threshold
/// without crossing it (within the ambiguity factor) is flagged rather than
/// guessed.
struct SignedSeries {
    std::vector<double> values;      // signed expectations
    std::vector<bool> ambiguous;     // per-point plausible-flip flag
};

inline constexpr double kSignAmbiguityFactor = 2.0;

inline SignedSeries track_sign(const std::vector<double> &magnitudes, int initial_sign,
                               double threshold) {
    if (magnitudes.empty()) throw std::invalid_argument("empty magnitude series");
    if (initial_sign == 0 || magnitudes.front() <= threshold)
        throw std::invalid_argument("initial sign undefined: magnitude at t=0 is below the "
                                    "zero-crossing threshold or sign is 0");
    SignedSeries out;
    out.values.resize(magnitudes.size());
    out.ambiguous.assign(magnitudes.size(), false);
    int sign = initial_sign > 0 ? 1 : -1;
    bool below = false;
    for (std::size_t i = 0; i < magnitudes.size(); ++i) {
        double m = magnitudes[i];
        if (below && m >= threshold) {
            sign = -sign; // crossed through (or touched) zero
            below = false;
        } else if (!below && m < threshold) {
            below = true;
        }
        // Local minimum close to the threshold but above it: a flip is
        // plausible yet unresolved.
        if (i > 0 && i + 1 < magnitudes.size() && m >= threshold &&
            m < kSignAmbiguityFactor * threshold && magnitudes[i - 1] > m &&
            magnitudes[i + 1] > m)
            out.ambiguous[i] = true;
        out.values[i] = sign * m;
    }
    return out;
}

} // namespace prethermal
