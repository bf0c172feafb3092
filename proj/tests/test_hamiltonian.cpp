// Copyright 2026 The qpt authors
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

#include "qpt/hamiltonian.hpp"
#include "qpt/verify.hpp"

using namespace qpt;

namespace {

StateVector gaussian_packet(int n) {
    const std::size_t dim = std::size_t{1} << n;
    const double center = (static_cast<double>(dim) - 1.0) / 2.0;
    std::vector<cxd> amps(dim);
    for (std::size_t x = 0; x < dim; ++x) {
        const double dx = static_cast<double>(x) - center;
        amps[x] = std::exp(-dx * dx / 4.0);
    }
    return from_amplitudes(std::move(amps));
}

/// Bures distance between pure states, sqrt(2 (1 - |<a|b>|)); linear in the
/// size of a state perturbation, unlike the raw infidelity.
double state_error(const StateVector& a, const StateVector& b) {
    return std::sqrt(std::max(0.0, 2.0 * (1.0 - fidelity_up_to_global_phase(a, b))));
}

}  // namespace

TEST_CASE("profile encoding: quadratic, constant, zero, mixed sign") {
    // quadratic table k x^2 encodes as the linearly growing state with
    // alpha = k * sum x^2
    std::vector<double> quadratic(8);
    const double k = 0.05;
    for (int x = 0; x < 8; ++x) quadratic[static_cast<std::size_t>(x)] = k * x * x;
    const PhaseProfile profile = profile_to_software_state(quadratic);
    CHECK(profile.alpha == doctest::Approx(k * 140.0).epsilon(1e-14));
    for (int x = 0; x < 8; ++x) {
        CHECK(std::abs(profile.software_state.amplitudes[static_cast<std::size_t>(x)] -
                       cxd{x / std::sqrt(140.0), 0.0}) < 1e-14);
        CHECK(profile.alpha *
                  std::norm(profile.software_state.amplitudes[static_cast<std::size_t>(x)]) ==
              doctest::Approx(quadratic[static_cast<std::size_t>(x)]).epsilon(1e-10));
    }

    const PhaseProfile constant = profile_to_software_state(std::vector<double>(8, 0.25));
    CHECK(constant.alpha == doctest::Approx(2.0).epsilon(1e-14));
    for (const cxd& a : constant.software_state.amplitudes) {
        CHECK(std::abs(a - cxd{1.0 / std::sqrt(8.0), 0.0}) < 1e-14);
    }

    CHECK_THROWS_AS(profile_to_software_state(std::vector<double>(8, 0.0)),
                    std::invalid_argument);
    CHECK_THROWS_AS(profile_to_software_state({1.0, -1.0, 0.5, 0.0}), std::invalid_argument);
}

TEST_CASE("protocol-mode phases reject mixed signs and match exact phases otherwise") {
    const StateVector state = gaussian_packet(3);
    std::vector<double> mixed(8, 0.1);
    mixed[3] = -0.1;
    CHECK_THROWS_AS(apply_phase_profile(state, mixed, PhaseMode::ProtocolPhase),
                    std::invalid_argument);
    // exact mode happily applies mixed-sign tables
    CHECK(std::abs(norm(apply_phase_profile(state, mixed, PhaseMode::ExactPhase)) - 1.0) < 1e-12);

    SplitMix64 rng(70);
    for (const double sign : {1.0, -1.0}) {
        std::vector<double> theta(8);
        for (double& v : theta) v = sign * rng.uniform();
        const StateVector exact = apply_phase_profile(state, theta, PhaseMode::ExactPhase);
        const StateVector via_protocol =
            apply_phase_profile(state, theta, PhaseMode::ProtocolPhase);
        CHECK(fidelity_up_to_global_phase(exact, via_protocol) >= 1.0 - 1e-4);
        CHECK(std::abs(norm(via_protocol) - 1.0) < 1e-12);
    }

    // all-zero table is the identity in both modes
    const StateVector zero_phase =
        apply_phase_profile(state, std::vector<double>(8, 0.0), PhaseMode::ProtocolPhase);
    CHECK(fidelity_up_to_global_phase(zero_phase, state) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("trivial steps: V = T = 0 is the identity") {
    HamiltonianSpec spec;
    spec.n = 3;
    spec.potential.assign(8, 0.0);
    spec.kinetic.assign(8, 0.0);
    spec.total_time = 2.0;
    spec.steps = 4;
    const StateVector state = gaussian_packet(3);
    const StateVector evolved = evolve(state, spec, PhaseMode::ExactPhase);
    for (std::size_t i = 0; i < state.dim(); ++i) {
        CHECK(std::abs(evolved.amplitudes[i] - state.amplitudes[i]) < 1e-12);
    }
}

TEST_CASE("pure potential: single split step is exact, result independent of steps") {
    HamiltonianSpec spec = harmonic_oscillator_spec(3, 1.0, 1.7, 1);
    std::fill(spec.kinetic.begin(), spec.kinetic.end(), 0.0);
    const StateVector state = gaussian_packet(3);

    StateVector expected = state;
    for (std::size_t x = 0; x < 8; ++x) {
        expected.amplitudes[x] *= std::polar(1.0, -spec.potential[x] * spec.total_time);
    }

    for (const int steps : {1, 2, 8}) {
        spec.steps = steps;
        const StateVector evolved = evolve(state, spec, PhaseMode::ExactPhase);
        for (std::size_t x = 0; x < 8; ++x) {
            CHECK(std::abs(evolved.amplitudes[x] - expected.amplitudes[x]) < 1e-12);
        }
        // dense reference agrees: the two terms commute trivially
        CHECK(fidelity_up_to_global_phase(evolved, dense_evolution(state, spec)) >=
              1.0 - 1e-12);
    }
}

TEST_CASE("free particle: split step equals the spectral evolution for any step count") {
    HamiltonianSpec spec = harmonic_oscillator_spec(3, 1.0, 0.9, 1);
    std::fill(spec.potential.begin(), spec.potential.end(), 0.0);
    const StateVector state = gaussian_packet(3);

    StateVector expected = qft(state, {0, 1, 2}, false);
    for (std::size_t p = 0; p < 8; ++p) {
        expected.amplitudes[p] *= std::polar(1.0, -spec.kinetic[p] * spec.total_time);
    }
    expected = qft(expected, {0, 1, 2}, true);

    for (const int steps : {1, 3, 16}) {
        spec.steps = steps;
        const StateVector evolved = evolve(state, spec, PhaseMode::ExactPhase);
        for (std::size_t x = 0; x < 8; ++x) {
            CHECK(std::abs(evolved.amplitudes[x] - expected.amplitudes[x]) < 1e-12);
        }
    }
}

TEST_CASE("harmonic oscillator: protocol phases track exact phases per step") {
    const HamiltonianSpec spec = harmonic_oscillator_spec(3, 1.0, 1.0, 8);
    const StateVector state = gaussian_packet(3);
    const StateVector exact_step = trotter_step(state, spec, PhaseMode::ExactPhase);
    const StateVector protocol_step = trotter_step(state, spec, PhaseMode::ProtocolPhase);
    CHECK(fidelity_up_to_global_phase(exact_step, protocol_step) >= 1.0 - 1e-4);
}

TEST_CASE("first-order split error halves when the step count doubles") {
    const HamiltonianSpec base = harmonic_oscillator_spec(3, 1.0, 1.0, 1);
    const StateVector state = gaussian_packet(3);
    const StateVector reference = dense_evolution(state, base);

    double previous_error = -1.0;
    for (const int steps : {8, 16, 32}) {
        HamiltonianSpec spec = base;
        spec.steps = steps;
        const double error = state_error(evolve(state, spec, PhaseMode::ExactPhase), reference);
        if (previous_error > 0.0) {
            const double ratio = previous_error / error;
            CHECK(ratio >= 1.7);
            CHECK(ratio <= 2.3);
        }
        previous_error = error;
    }
}

TEST_CASE("split error is monotone in the step count") {
    const HamiltonianSpec base = harmonic_oscillator_spec(3, 1.0, 1.0, 1);
    const StateVector state = gaussian_packet(3);
    const StateVector reference = dense_evolution(state, base);
    double previous = 2.0;
    for (const int steps : {1, 2, 4, 8, 16}) {
        HamiltonianSpec spec = base;
        spec.steps = steps;
        const double deficit =
            1.0 - fidelity_up_to_global_phase(evolve(state, spec, PhaseMode::ExactPhase),
                                              reference);
        CHECK(deficit <= previous + 1e-15);
        previous = deficit;
    }
}

TEST_CASE("norm is preserved through evolution in both modes") {
    SplitMix64 rng(71);
    const HamiltonianSpec spec = harmonic_oscillator_spec(3, 1.0, 0.8, 4);
    for (int trial = 0; trial < 10; ++trial) {
        const StateVector state = verify::random_state(3, rng);
        CHECK(std::abs(norm(evolve(state, spec, PhaseMode::ExactPhase)) - 1.0) < 1e-12);
    }
    CHECK(std::abs(norm(evolve(gaussian_packet(3), spec, PhaseMode::ProtocolPhase)) - 1.0) <
          1e-12);
}

TEST_CASE("dense Hamiltonian is Hermitian and spec validation works") {
    const HamiltonianSpec spec = harmonic_oscillator_spec(3, 1.0, 1.0, 4);
    const Eigen::MatrixXcd h = dense_hamiltonian(spec);
    CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() < 1e-12);

    HamiltonianSpec bad = spec;
    bad.potential.pop_back();
    CHECK_THROWS_AS(evolve(gaussian_packet(3), bad, PhaseMode::ExactPhase),
                    std::invalid_argument);
    HamiltonianSpec bad_steps = spec;
    bad_steps.steps = 0;
    CHECK_THROWS_AS(evolve(gaussian_packet(3), bad_steps, PhaseMode::ExactPhase),
                    std::invalid_argument);
    CHECK_THROWS_AS(trotter_step(gaussian_packet(2), spec, PhaseMode::ExactPhase),
                    std::invalid_argument);
}
