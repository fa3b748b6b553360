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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "prethermal/mitigation.hpp"

using namespace prethermal;

TEST_CASE("rescale by a unit denominator is the identity") {
    RescaledEstimate r = rescale({0.37, 0.0}, {1.0, 0.0});
    CHECK(r.estimate.value == doctest::Approx(0.37));
    CHECK(r.estimate.stderr_ == doctest::Approx(0.0));
    CHECK(r.reliable);
}

TEST_CASE("rescale propagates errors to first order") {
    Estimate num{0.3, 0.02}, den{0.6, 0.03};
    RescaledEstimate r = rescale(num, den);
    CHECK(r.estimate.value == doctest::Approx(0.5));
    // Delta method: (a/b) * sqrt((da/a)^2 + (db/b)^2).
    double expected = 0.5 * std::sqrt(std::pow(0.02 / 0.3, 2) + std::pow(0.03 / 0.6, 2));
    CHECK(r.estimate.stderr_ == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("rescale flags an unreliable denominator below the cutoff") {
    CHECK(!rescale({0.005, 0.001}, {0.009, 0.001}).reliable);
    CHECK(rescale({0.05, 0.001}, {0.02, 0.001}).reliable);
    CHECK_THROWS_AS(rescale({0.1, 0.0}, {0.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(rescale({0.1, 0.0}, {-0.2, 0.0}), std::invalid_argument);
}

TEST_CASE("global depolarizing synthetic channel reproduces the closed-form bias") {
    // Under a global depolarizing channel rho -> q^2 rho + (1-q^2) I/2^N the
    // noisy survival probabilities have exact closed forms; rescaling them
    // must land exactly on L_A_true + bias.
    const int n = 16;
    const double pow2n = std::pow(2.0, n);
    for (double q : {0.99, 0.9, 0.6}) {
        for (double l_true : {0.9, 0.3, 0.05}) {
            double q2 = q * q;
            double l_a_noisy = q2 * l_true + (1.0 - q2) / pow2n;
            double l_id_noisy = q2 + (1.0 - q2) / pow2n;
            RescaledEstimate r = rescale({l_a_noisy, 0.0}, {l_id_noisy, 0.0});
            double bias = r.estimate.value - l_true;
            CHECK(bias == doctest::Approx(global_depolarizing_bias(l_true, q, n))
                              .epsilon(1e-10));
            // The systematic shift is toward positive s.
            CHECK(bias > 0.0);
        }
    }
}

TEST_CASE("mitigation error s is the rescaled estimate minus the reference") {
    CHECK(mitigation_error_s({0.35, 0.01}, 0.3) == doctest::Approx(0.05));
}

TEST_CASE("Cauchy-Schwarz bound: trivial and synthetic cases") {
    // p = 0: q = 1, both sides vanish.
    BoundCheckResult trivial = bound_check(1.0, 0.1, 0.42, 0.42);
    CHECK(trivial.holds);
    CHECK(trivial.lhs == doctest::Approx(0.0));
    CHECK(trivial.rhs == doctest::Approx(0.0));

    // Globally depolarized residual state: r^2 = 2^-N. The synthetic noisy
    // value sits far inside the bound.
    const int n = 8;
    double q = 0.8, r = std::pow(2.0, -n / 2.0), l_true = 0.5;
    double l_noisy = q * q * l_true + (1.0 - q * q) / std::pow(2.0, n);
    CHECK(bound_check(q, r, l_noisy, l_true).holds);

    // A wildly inconsistent value violates it.
    CHECK(!bound_check(0.9, 0.01, 0.9, 0.0).holds);
    CHECK_THROWS_AS(bound_check(0.0, 0.1, 0.5, 0.5), std::invalid_argument);
}

TEST_CASE("bound_check right-hand side matches the formula") {
    double q = 0.7, r = 0.2;
    BoundCheckResult res = bound_check(q, r, 0.2, 0.3);
    double rq = r / q;
    CHECK(res.rhs ==
          doctest::Approx((1.0 - q) * (1.0 - q) * rq * rq + 2.0 * (1.0 - q) * rq));
    CHECK(res.lhs == doctest::Approx(std::abs(0.2 / (q * q) - 0.3)));
}

TEST_CASE("maximum mitigable depth constants") {
    // ND <= log(C+1) / log(1/(1-p)): p = 0.3% gives about 230.7 layers in
    // the large-N per-qubit normalization.
    CHECK(max_depth_infinite(0.003) == doctest::Approx(230.7).epsilon(0.001));
    CHECK(std::floor(max_depth_infinite(0.003)) == 230.0);
    // With C = 1 the finite-N bound coincides with the limit; a stricter
    // signal-to-noise constant C > 1 costs depth.
    CHECK(max_depth(16, 0.003) == doctest::Approx(max_depth_infinite(0.003)));
    CHECK(max_depth(16, 0.003, 2.0) < max_depth(16, 0.003, 1.0));
    CHECK_THROWS_AS(max_depth(16, 0.0), std::invalid_argument);
}

TEST_CASE("sample budget matches a direct power computation") {
    // Direct computation, no logs: shots = ceil((1-p)^{-2ND} (1-p_m)^{-2N} / eps^2).
    auto direct = [](int n, double d, double p, double pm, double eps) {
        long double shots = std::pow((long double)(1.0 - p), (long double)(-2.0 * n * d)) *
                            std::pow((long double)(1.0 - pm), (long double)(-2.0 * n)) /
                            (long double)(eps * eps);
        return std::ceil((double)shots);
    };
    SampleBudget b1 = sample_budget(50, 80, 0.003);
    CHECK(b1.required_shots == doctest::Approx(direct(50, 80, 0.003, 0.0, 1.0)).epsilon(1e-9));
    CHECK(b1.required_shots == doctest::Approx(2.75e10).epsilon(0.01));

    SampleBudget b2 = sample_budget(50, 80, 0.002);
    CHECK(b2.required_shots == doctest::Approx(9.04e6).epsilon(0.01));

    SampleBudget b3 = sample_budget(50, 80, 0.002, 0.002, 0.5);
    CHECK(b3.required_shots ==
          doctest::Approx(direct(50, 80, 0.002, 0.002, 0.5)).epsilon(1e-9));
    CHECK_THROWS_AS(sample_budget(50, 80, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(sample_budget(50, 80, 0.003, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("mitigation record CSV line") {
    MitigationRecord rec;
    rec.t = 1.5;
    rec.depth = 16;
    rec.l_id_noisy = {0.8, 0.01};
    rec.l_a_noisy = {0.4, 0.02};
    rec.rescaled = {0.5, 0.03};
    rec.l_a_noiseless = 0.45;
    std::ostringstream os;
    write_mitigation_record(os, rec);
    CHECK(os.str() == "1.5,16,0.8,0.01,0.4,0.02,0.5,0.03,0.05\n");
    CHECK(std::string(mitigation_csv_header()) ==
          "t,D,L_id,L_id_err,L_A,L_A_err,rescaled,rescaled_err,s");

    MitigationRecord no_ref = rec;
    no_ref.l_a_noiseless.reset();
    CHECK(!no_ref.s().has_value());
    std::ostringstream os2;
    write_mitigation_record(os2, no_ref);
    CHECK(os2.str() == "1.5,16,0.8,0.01,0.4,0.02,0.5,0.03,\n");
}

TEST_CASE("sign tracking follows a cosine through its zero") {
    // |cos| dips below the threshold near t = pi/2; the recovered signed
    // series must match cos itself.
    std::vector<double> mags;
    const int m = 200;
    for (int i = 0; i <= m; ++i) mags.push_back(std::abs(std::cos(0.02 * i)));
    SignedSeries s = track_sign(mags, +1, 0.01);
    for (int i = 0; i <= m; ++i) {
        double expected = std::cos(0.02 * i);
        if (std::abs(expected) > 0.02)
            CHECK(s.values[i] == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("a near-threshold local minimum is flagged ambiguous, not flipped") {
    // Magnitude dips to 1.5x the threshold and recovers: no crossing, so no
    // flip, but the point is flagged.
    std::vector<double> mags{1.0, 0.6, 0.15, 0.6, 1.0};
    SignedSeries s = track_sign(mags, +1, 0.1);
    CHECK(s.values.back() == doctest::Approx(1.0));
    CHECK(s.ambiguous[2]);
    CHECK(!s.ambiguous[1]);
    CHECK(!s.ambiguous[3]);
}

TEST_CASE("sign tracking rejects undefined starting conditions") {
    CHECK_THROWS_AS(track_sign({0.005, 0.5}, +1, 0.01), std::invalid_argument);
    CHECK_THROWS_AS(track_sign({0.5, 0.5}, 0, 0.01), std::invalid_argument);
    CHECK_THROWS_AS(track_sign({}, +1, 0.01), std::invalid_argument);
}

TEST_CASE("estimate stderr propagation keeps rescaled nonnegative") {
    RescaledEstimate r = rescale({0.0, 0.01}, {0.5, 0.01});
    CHECK(r.estimate.value == doctest::Approx(0.0));
    CHECK(r.estimate.stderr_ >= 0.0);
}
