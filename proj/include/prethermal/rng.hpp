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

#include <atomic>
#include <cstdint>
#include <functional>
#include <random>
#include <thread>
#include <vector>

namespace prethermal {

/// SplitMix64 step; used to expand (seed, stream) pairs into full seed material.
inline std::uint64_t splitmix64_next(std::uint64_t &state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Deterministic random stream derived from a base seed and a stream index.
/// Streams with distinct indices are statistically independent, so work items
/// (e.g. Monte Carlo trajectories) can run in any order on any number of
/// threads and still produce bit-identical results.
class RngStream {
  public:
    RngStream(std::uint64_t seed, std::uint64_t stream_index) {
        std::uint64_t s = seed;
        (void)splitmix64_next(s);
        s ^= 0xd1b54a32d192ed03ULL * (stream_index + 1);
        std::seed_seq seq{splitmix64_next(s), splitmix64_next(s),
                          splitmix64_next(s), splitmix64_next(s)};
        engine_.seed(seq);
    }

    /// Uniform double in [0, 1).
    double uniform() {
        return std::uniform_real_distribution<double>(0.0, 1.0)(engine_);
    }

    /// Uniform integer in [0, n).
    std::uint64_t uniform_int(std::uint64_t n) {
        return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(engine_);
    }

    std::uint64_t binomial(std::uint64_t trials, double prob) {
        if (trials == 0 || prob <= 0.0) return 0;
        if (prob >= 1.0) return trials;
        return static_cast<std::uint64_t>(
            std::binomial_distribution<long long>(
                static_cast<long long>(trials), prob)(engine_));
    }

    std::mt19937_64 &engine() { return engine_; }

  private:
    std::mt19937_64 engine_;
};

/// Runs body(i) for i in [0, n). Work items must be independent; results
/// keyed by index stay deterministic regardless of the thread count.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)> &body,
                         unsigned num_threads = 0) {
    if (num_threads == 0) num_threads = std::thread::hardware_concurrency();
    if (num_threads <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            body(i);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(num_threads);
    for (unsigned t = 0; t < num_threads; ++t) pool.emplace_back(worker);
    for (auto &th : pool) th.join();
}

} // namespace prethermal
