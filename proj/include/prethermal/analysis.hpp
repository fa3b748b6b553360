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

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>
#include <vector>

#include "prethermal/observable.hpp"
#include "prethermal/state.hpp"
#include "prethermal/trotter.hpp"

namespace prethermal {

/// Stroboscopic observable record: instantaneous values <psi|U^-m A U^m|psi>
/// and their running averages <A>_t = (1/(m+1)) sum_{n<=m} <A(n tau)> at
/// t = m tau.
struct TimeAverageSeries {
    double tau = 0.0;
    std::vector<double> instantaneous;
    std::vector<double> running_average;

    std::size_t size() const { return instantaneous.size(); }
    double time(std::size_t m) const { return double(m) * tau; }
};

/// Computes the Floquet time average in a single forward sweep.
inline TimeAverageSeries floquet_time_average(const PureState &psi0, const Observable &obs,
                                              const TrotterSchedule &sched, int m_max) {
    if (m_max < 0) throw std::invalid_argument("m_max must be >= 0");
    TimeAverageSeries series;
    series.tau = sched.tau;
    series.instantaneous.reserve(m_max + 1);
    series.running_average.reserve(m_max + 1);
    PureState state = psi0;
    double cumulative = 0.0;
    for (int m = 0; m <= m_max; ++m) {
        if (m > 0) apply_trotter_step(state, sched);
        double value = obs.expectation(state);
        cumulative += value;
        series.instantaneous.push_back(value);
        series.running_average.push_back(cumulative / double(m + 1));
    }
    return series;
}

/// Plateau of the running average: a stroboscopic interval [t1, t2) on which
/// max - min of <A>_t stays within epsilon * ||A||, selected among maximal
/// such intervals by locally largest ratio t2 / t1.
struct PlateauReport {
    bool found = false;
    bool truncated_at_cap = false;
    double t1 = 0.0;
    double t2 = 0.0;
    double value = 0.0;   // <A>_{t1}
    double epsilon = 0.0;
    double ratio = 0.0;   // t2 / t1
};

inline constexpr double kDefaultPlateauCap = 1e3; // t_cap in units of 1/J
inline constexpr std::size_t kPlateauExactSearchLimit = 10000;

namespace detail {

/// For each start index i, the largest end index e(i) such that the window
/// of running averages [i, e(i)] has max - min <= band. Two-pointer sweep
/// with monotonic deques; e(i) is nondecreasing in i.
inline std::vector<std::size_t> maximal_window_ends(const std::vector<double> &values,
                                                    std::size_t first, std::size_t last,
                                                    double band) {
    std::vector<std::size_t> ends(last + 1, 0);
    std::deque<std::size_t> maxq, minq;
    auto push = [&](std::size_t idx) {
        while (!maxq.empty() && values[maxq.back()] <= values[idx]) maxq.pop_back();
        maxq.push_back(idx);
        while (!minq.empty() && values[minq.back()] >= values[idx]) minq.pop_back();
        minq.push_back(idx);
    };
    std::size_t right = first;
    push(first);
    for (std::size_t left = first; left <= last; ++left) {
        if (right < left) { // window emptied; restart at [left, left]
            maxq.clear();
            minq.clear();
            right = left;
            push(left);
        }
        while (right < last) {
            // Test [left, right+1] without committing to it.
            double x = values[right + 1];
            double new_max = std::max(values[maxq.front()], x);
            double new_min = std::min(values[minq.front()], x);
            if (new_max - new_min > band) break;
            push(right + 1);
            ++right;
        }
        ends[left] = right;
        if (maxq.front() == left) maxq.pop_front();
        if (minq.front() == left) minq.pop_front();
    }
    return ends;
}

} // namespace detail

/// All locally maximal plateaus: maximal windows whose ratio t2/t1 is not
/// beaten by any overlapping maximal window. Sorted by descending ratio.
/// Search starts at t1 = tau (the ratio is undefined at t1 = 0) and ends at
/// the cap. Windows must contain at least two stroboscopic points. When the
/// series is longer than the exact-search limit, candidate starts are
/// thinned onto a geometric grid.
inline std::vector<PlateauReport> find_plateaus(const TimeAverageSeries &series,
                                                double epsilon, double observable_norm,
                                                double t_cap = kDefaultPlateauCap) {
    std::vector<PlateauReport> result;
    if (series.size() < 3 || series.tau <= 0.0) return result;
    std::size_t cap_index = series.size() - 1;
    double cap_time = t_cap / series.tau;
    if (cap_time < double(cap_index)) cap_index = static_cast<std::size_t>(cap_time);
    if (cap_index < 2) return result;

    const double band = epsilon * observable_norm;
    auto ends = detail::maximal_window_ends(series.running_average, 1, cap_index, band);

    std::vector<std::size_t> starts;
    if (cap_index <= kPlateauExactSearchLimit) {
        for (std::size_t i = 1; i <= cap_index; ++i) starts.push_back(i);
    } else {
        double i = 1.0;
        while (i <= double(cap_index)) {
            starts.push_back(static_cast<std::size_t>(i));
            i = std::max(i + 1.0, i * 1.01);
        }
    }

    struct Candidate {
        std::size_t i, e; // window covers indices [i, e]; t2 = (e+1) tau
        double ratio;
    };
    std::vector<Candidate> candidates;
    for (std::size_t i : starts) {
        std::size_t e = ends[i];
        if (e < i + 1) continue; // needs at least two stroboscopic points
        candidates.push_back({i, e, double(e + 1) / double(i)});
    }

    for (const auto &c : candidates) {
        bool dominated = false;
        for (const auto &o : candidates) {
            if (&o == &c) continue;
            bool overlap = o.i <= c.e && c.i <= o.e;
            if (overlap && o.ratio > c.ratio) {
                dominated = true;
                break;
            }
        }
        if (dominated) continue;
        PlateauReport rep;
        rep.found = true;
        rep.t1 = series.time(c.i);
        rep.t2 = series.time(c.e + 1);
        rep.value = series.running_average[c.i];
        rep.epsilon = epsilon;
        rep.ratio = c.ratio;
        rep.truncated_at_cap = (c.e == cap_index);
        result.push_back(rep);
    }
    std::sort(result.begin(), result.end(),
              [](const PlateauReport &a, const PlateauReport &b) { return a.ratio > b.ratio; });
    return result;
}

/// Best plateau (largest ratio) or found = false.
inline PlateauReport detect_plateau(const TimeAverageSeries &series, double epsilon,
                                    double observable_norm,
                                    double t_cap = kDefaultPlateauCap) {
    auto all = find_plateaus(series, epsilon, observable_norm, t_cap);
    if (all.empty()) {
        PlateauReport rep;
        rep.epsilon = epsilon;
        return rep;
    }
    return all.front();
}

/// Prethermalized expectation value: the running average at the plateau
/// start, <A>_{t1}.
inline double solve_pevp(const TimeAverageSeries &series, double epsilon,
                         double observable_norm, double t_cap = kDefaultPlateauCap) {
    PlateauReport rep = detect_plateau(series, epsilon, observable_norm, t_cap);
    if (!rep.found) throw std::runtime_error("no plateau found within the time cap");
    return rep.value;
}

/// Continuous-limit energy of the noise-heating random walk:
/// sinh(g E / N sigma^2) = sinh(g E0 / N sigma^2) exp(-p g^2 D / sigma^2).
/// Noise drives the energy exponentially toward the infinite-temperature
/// value E = 0 with circuit depth.
inline double heating_model_energy(double e0, double g, double sigma, int num_qubits,
                                   double p, double depth) {
    if (g <= 0.0 || sigma <= 0.0) throw std::invalid_argument("g and sigma must be > 0");
    if (p <= 0.0 || p >= 1.0) throw std::invalid_argument("p must be in (0,1)");
    const double scale = g / (double(num_qubits) * sigma * sigma);
    const double decay = std::exp(-p * g * g * depth / (sigma * sigma));
    return std::asinh(std::sinh(scale * e0) * decay) / scale;
}

} // namespace prethermal
