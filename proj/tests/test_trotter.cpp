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
#include <random>

#include "prethermal/spectral.hpp"
#include "prethermal/trotter.hpp"

using namespace prethermal;

namespace {

PureState random_state(int n, unsigned seed) {
    std::mt19937 gen(seed);
    std::normal_distribution<double> dist;
    PureState psi(n);
    for (auto &a : psi.amplitudes()) a = Complex{dist(gen), dist(gen)};
    psi.normalize();
    return psi;
}

double state_distance(const PureState &a, const PureState &b) {
    double d = 0.0;
    for (std::uint64_t i = 0; i < a.dim(); ++i) d += std::norm(a[i] - b[i]);
    return std::sqrt(d);
}

} // namespace

TEST_CASE("partial iswap gate is unitary") {
    auto g = partial_iswap_gate(1.1, 0.6);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            Complex dot{0.0, 0.0};
            for (int k = 0; k < 4; ++k) dot += std::conj(g[k][i]) * g[k][j];
            CHECK(std::abs(dot - (i == j ? 1.0 : 0.0)) < 1e-14);
        }
    }
}

TEST_CASE("partial iswap at J tau = pi is iSWAP^-1 up to the stated phase") {
    auto g = partial_iswap_gate(1.0, M_PI);
    CHECK(std::abs(g[1][1]) < 1e-15);
    CHECK(std::abs(g[2][1] - Complex{0.0, 1.0}) < 1e-15);
    CHECK(std::abs(g[0][0] - Complex{1.0, 0.0}) < 1e-15);
}

TEST_CASE("trotter step is norm preserving over many steps") {
    Lattice lat = build_lattice(3, 3);
    TrotterSchedule sched = make_trotter_schedule(lat, 1.0, tau_from_omega(8.0));
    PureState psi = random_state(lat.num_sites(), 5);
    evolve(psi, sched, 200);
    CHECK(psi.norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("backward evolution inverts forward evolution exactly") {
    Lattice lat = build_lattice(2, 3);
    TrotterSchedule sched = make_trotter_schedule(lat, 1.3, 0.7);
    PureState psi0 = random_state(lat.num_sites(), 17);
    PureState psi = psi0;
    evolve(psi, sched, 25);
    evolve_backward(psi, sched, 25);
    CHECK(state_distance(psi, psi0) < 1e-10);
}

TEST_CASE("trotter step conserves total sigma_z") {
    Lattice lat = build_lattice(2, 3);
    TrotterSchedule sched = make_trotter_schedule(lat, 1.0, 0.5);
    PureState psi = random_state(lat.num_sites(), 23);
    double mz = psi.total_sigma_z();
    evolve(psi, sched, 10);
    CHECK(psi.total_sigma_z() == doctest::Approx(mz).epsilon(1e-10));
}

TEST_CASE("one trotter step converges to the exact propagator at second order in tau") {
    // First-order Trotter: ||U_trotter(tau) - exp(-iH tau)|| = O(tau^2),
    // so halving tau must shrink the one-step error by about 4.
    Lattice lat = build_lattice(1, 4);
    SpinHamiltonian ham = xy_hamiltonian(lat, 1.0);
    auto spectra = all_sector_spectra(ham);
    PureState psi0 = random_state(lat.num_sites(), 31);

    auto one_step_error = [&](double tau) {
        TrotterSchedule sched = make_trotter_schedule(lat, ham.J, tau);
        PureState trot = psi0;
        apply_trotter_step(trot, sched);
        PureState exact = exact_evolve(spectra, psi0, tau);
        return state_distance(trot, exact);
    };

    double e1 = one_step_error(0.2);
    double e2 = one_step_error(0.1);
    double e3 = one_step_error(0.05);
    CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.15));
    CHECK(e2 / e3 == doctest::Approx(4.0).epsilon(0.15));
}

TEST_CASE("survival probability of the identity is exactly 1") {
    Lattice lat = build_lattice(2, 2);
    TrotterSchedule sched = make_trotter_schedule(lat, 1.0, 0.9);
    PureState psi0 = product_state(x_plus_spec(), lat);
    CHECK(survival_probability(psi0, sched, 7, PauliObservable::identity()) ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("survival probability equals the squared direct expectation") {
    // L_A(t) = |<psi0|U^-n A U^n|psi0>|^2: the echo circuit must agree with
    // evolving forward once and taking the overlap directly.
    Lattice lat = build_lattice(2, 3);
    TrotterSchedule sched = make_trotter_schedule(lat, 1.0, tau_from_omega(8.0));
    PureState psi0 = product_state({1.1, 0.4}, lat);
    PauliObservable a = PauliObservable::xx(2, 3);

    for (int n : {0, 1, 5, 12}) {
        PureState fwd = psi0;
        evolve(fwd, sched, n);
        PureState afwd = fwd;
        afwd.apply_observable(a);
        double direct = std::norm(fwd.inner_product(afwd));
        CHECK(survival_probability(psi0, sched, n, a) ==
              doctest::Approx(direct).epsilon(1e-10));
    }
}

TEST_CASE("survival probability rejects non-unitary observables") {
    Lattice lat = build_lattice(2, 2);
    TrotterSchedule sched = make_trotter_schedule(lat, 1.0, 0.5);
    PureState psi0 = product_state(x_plus_spec(), lat);
    PauliObservable scaled{{0}, {PauliOp::X}, 0.5};
    CHECK_THROWS_AS(survival_probability(psi0, sched, 1, scaled), std::invalid_argument);
}

TEST_CASE("schedule layer count matches the lattice bond groups") {
    CHECK(make_trotter_schedule(build_lattice(4, 4), 1.0, 0.1).layers_per_step() == 4);
    CHECK(make_trotter_schedule(build_lattice(1, 6), 1.0, 0.1).layers_per_step() == 2);
}
