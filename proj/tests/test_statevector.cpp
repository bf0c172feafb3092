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
#include <numbers>

#include "qpt/partial_phase.hpp"
#include "qpt/statevector.hpp"
#include "qpt/verify.hpp"

using namespace qpt;

namespace {

StateVector tensor(const StateVector& primary, const StateVector& ancilla) {
    StateVector out;
    out.n_qubits = primary.n_qubits + ancilla.n_qubits;
    out.amplitudes.resize(primary.dim() * ancilla.dim());
    for (std::size_t x = 0; x < primary.dim(); ++x) {
        for (std::size_t y = 0; y < ancilla.dim(); ++y) {
            out.amplitudes[x * ancilla.dim() + y] =
                primary.amplitudes[x] * ancilla.amplitudes[y];
        }
    }
    return out;
}

/// Brute-force marginal: for every outcome, scan all basis states and test
/// each qubit's bit explicitly.
std::vector<double> marginal_by_enumeration(const StateVector& state,
                                            const std::vector<int>& qubits) {
    std::vector<double> probs(std::size_t{1} << qubits.size(), 0.0);
    for (std::size_t outcome = 0; outcome < probs.size(); ++outcome) {
        for (std::uint64_t s = 0; s < state.dim(); ++s) {
            bool matches = true;
            for (std::size_t j = 0; j < qubits.size(); ++j) {
                const std::uint64_t state_bit = (s >> qubits[j]) & 1ULL;
                const std::uint64_t outcome_bit = (outcome >> j) & 1ULL;
                if (state_bit != outcome_bit) {
                    matches = false;
                    break;
                }
            }
            if (matches) probs[outcome] += std::norm(state.amplitudes[s]);
        }
    }
    return probs;
}

}  // namespace

TEST_CASE("basis_state places a single unit amplitude") {
    const StateVector zero = basis_state(1, 0);
    CHECK(zero.amplitudes[0] == cxd{1.0, 0.0});
    CHECK(zero.amplitudes[1] == cxd{0.0, 0.0});

    const StateVector three = basis_state(2, 3);
    CHECK(three.amplitudes[3] == cxd{1.0, 0.0});
    for (int i = 0; i < 3; ++i) CHECK(three.amplitudes[i] == cxd{0.0, 0.0});

    CHECK_THROWS_AS(basis_state(3, 8), std::out_of_range);
    CHECK_THROWS_AS(basis_state(0, 0), std::invalid_argument);
}

TEST_CASE("from_amplitudes normalizes and validates") {
    const StateVector uniform = from_amplitudes(std::vector<cxd>(8, cxd{3.0, 0.0}));
    for (const cxd& a : uniform.amplitudes) {
        CHECK(std::abs(a - cxd{1.0 / std::sqrt(8.0), 0.0}) < 1e-15);
    }

    std::vector<cxd> linear(8);
    for (int x = 0; x < 8; ++x) linear[x] = cxd{static_cast<double>(x), 0.0};
    const StateVector ramp = from_amplitudes(linear);
    for (int x = 0; x < 8; ++x) {
        CHECK(std::abs(ramp.amplitudes[x] - cxd{x / std::sqrt(140.0), 0.0}) < 1e-15);
    }

    CHECK_THROWS_AS(from_amplitudes({cxd{0, 0}, cxd{0, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(from_amplitudes(std::vector<cxd>(3, cxd{1, 0})), std::invalid_argument);
}

TEST_CASE("cnot_control0 flips the target exactly when the control is 0") {
    // composite |x>|y> with x on qubit 1, y on qubit 0
    const GateOp gate = GateOp::cnot_control0(0, 1);

    const StateVector from_y0 = apply_gate(basis_state(2, 0), gate);  // y=0, x=0
    CHECK(std::abs(from_y0.amplitudes[2] - cxd{1.0, 0.0}) < 1e-15);   // -> x=1, y=0

    const StateVector from_y1 = apply_gate(basis_state(2, 1), gate);  // y=1, x=0
    CHECK(std::abs(from_y1.amplitudes[1] - cxd{1.0, 0.0}) < 1e-15);   // unchanged

    CHECK_THROWS_AS(apply_gate(basis_state(2, 0), GateOp::cnot_control0(1, 1)),
                    std::invalid_argument);
    CHECK_THROWS_AS(apply_gate(basis_state(2, 0), GateOp::cnot_control0(0, 2)),
                    std::out_of_range);
}

TEST_CASE("multi-controlled phase marks the all-ones subspace") {
    const StateVector flipped =
        apply_gate(basis_state(2, 3), GateOp::multi_controlled_phase({0, 1}, std::numbers::pi));
    CHECK(std::abs(flipped.amplitudes[3] - cxd{-1.0, 0.0}) < 1e-12);

    const StateVector untouched =
        apply_gate(basis_state(2, 2), GateOp::multi_controlled_phase({0, 1}, std::numbers::pi));
    CHECK(std::abs(untouched.amplitudes[2] - cxd{1.0, 0.0}) < 1e-15);
}

TEST_CASE("single-qubit gates must be unitary") {
    Eigen::Matrix2cd bad;
    bad << 1, 0, 0, 2;
    CHECK_THROWS_AS(apply_gate(basis_state(1, 0), GateOp::single_qubit(bad, 0)),
                    std::invalid_argument);
}

TEST_CASE("gates and qft preserve the norm") {
    SplitMix64 rng(11);
    Eigen::Matrix2cd h;
    h << 1, 1, 1, -1;
    h /= std::numbers::sqrt2;
    for (int trial = 0; trial < 30; ++trial) {
        StateVector state = verify::random_state(3, rng);
        state = apply_gate(state, GateOp::single_qubit(h, 1));
        state = apply_gate(state, GateOp::cnot_control0(0, 2));
        state = apply_gate(state, GateOp::multi_controlled_phase({0, 1, 2}, rng.uniform()));
        state = qft(state, {0, 1, 2}, trial % 2 == 0);
        CHECK(std::abs(norm(state) - 1.0) < 1e-12);
    }
}

TEST_CASE("marginal probabilities: uniform, deterministic, and random oracle") {
    const StateVector uniform = from_amplitudes(std::vector<cxd>(4, cxd{1.0, 0.0}));
    const std::vector<double> half = marginal_probabilities(uniform, {0});
    CHECK(half[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(half[1] == doctest::Approx(0.5).epsilon(1e-12));

    const std::vector<double> sure = marginal_probabilities(basis_state(2, 2), {1});
    CHECK(sure[0] == 0.0);
    CHECK(sure[1] == 1.0);

    SplitMix64 rng(12);
    for (int trial = 0; trial < 20; ++trial) {
        const StateVector state = verify::random_state(3, rng);
        for (const std::vector<int>& qubits :
             {std::vector<int>{0}, {1}, {2}, {0, 1}, {0, 2}, {1, 2}, {0, 1, 2}}) {
            const std::vector<double> fast = marginal_probabilities(state, qubits);
            const std::vector<double> slow = marginal_by_enumeration(state, qubits);
            REQUIRE(fast.size() == slow.size());
            double total = 0.0;
            for (std::size_t k = 0; k < fast.size(); ++k) {
                CHECK(std::abs(fast[k] - slow[k]) < 1e-12);
                total += fast[k];
            }
            CHECK(std::abs(total - 1.0) < 1e-12);
        }
    }

    CHECK_THROWS_AS(marginal_probabilities(uniform, {}), std::invalid_argument);
    CHECK_THROWS_AS(marginal_probabilities(uniform, {0, 5}), std::out_of_range);
}

TEST_CASE("measurement: deterministic branches, collapse norm, binomial statistics") {
    // product state |0>|phi> with a basis-state phi measures deterministically
    std::vector<cxd> phi_amps{cxd{0, 0}, cxd{0, 0}, cxd{1, 0}, cxd{0, 0}};
    const StateVector product = tensor(basis_state(2, 0), from_amplitudes(phi_amps));
    SplitMix64 rng(77);
    const MeasurementResult deterministic = measure_subregister(product, {0, 1}, rng);
    CHECK(deterministic.outcome == 2);
    CHECK(deterministic.probability == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(norm(deterministic.collapsed) - 1.0) < 1e-12);

    // seeded runs are reproducible
    const StateVector state = verify::random_state(3, rng);
    SplitMix64 rng_a(999), rng_b(999);
    for (int shot = 0; shot < 300; ++shot) {
        CHECK(measure_subregister(state, {0, 2}, rng_a).outcome ==
              measure_subregister(state, {0, 2}, rng_b).outcome);
    }

    // empirical frequencies on a [0.25, 0.75, 0, ...] marginal stay within
    // 4 sigma binomial bounds over 1000 shots
    std::vector<cxd> biased(8, cxd{0, 0});
    biased[0] = cxd{0.5, 0.0};
    biased[1] = cxd{std::sqrt(0.75), 0.0};
    const StateVector biased_state = from_amplitudes(biased);
    SplitMix64 shot_rng(2024);
    int count0 = 0;
    for (int shot = 0; shot < 1000; ++shot) {
        const MeasurementResult m = measure_subregister(biased_state, {0, 1, 2}, shot_rng);
        CHECK((m.outcome == 0 || m.outcome == 1));
        if (m.outcome == 0) ++count0;
    }
    const double frequency = count0 / 1000.0;
    const double sigma = std::sqrt(0.25 * 0.75 / 1000.0);  // 0.01369
    CHECK(std::abs(frequency - 0.25) <= 4.0 * sigma);
}

TEST_CASE("reduced density matrix: product, Bell, and contraction bound") {
    SplitMix64 rng(5);
    const StateVector psi = verify::random_state(2, rng);
    const StateVector phi = verify::random_state(2, rng);
    const StateVector product = tensor(psi, phi);
    const DensityMatrix rho = reduced_density_matrix(product, {0, 1});
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            CHECK(std::abs(rho.entries(a, b) -
                           phi.amplitudes[a] * std::conj(phi.amplitudes[b])) < 1e-12);
        }
    }

    std::vector<cxd> bell_amps{cxd{1, 0}, cxd{0, 0}, cxd{0, 0}, cxd{1, 0}};
    const DensityMatrix half = reduced_density_matrix(from_amplitudes(bell_amps), {0});
    CHECK(std::abs(half.entries(0, 0) - cxd{0.5, 0.0}) < 1e-12);
    CHECK(std::abs(half.entries(1, 1) - cxd{0.5, 0.0}) < 1e-12);
    CHECK(std::abs(half.entries(0, 1)) < 1e-12);

    // ancilla state after the partial phase stays within trace distance
    // 2|sin(delta/2)| of the input software state
    const RegisterLayout layout = RegisterLayout::standard(2);
    for (int trial = 0; trial < 25; ++trial) {
        const StateVector a = verify::random_state(2, rng);
        const StateVector b = verify::random_state(2, rng);
        const double delta = -8.0 + 16.0 * rng.uniform();
        const StateVector entangled =
            apply_partial_phase_direct(tensor(a, b), layout, delta);
        const DensityMatrix after = reduced_density_matrix(entangled, layout.ancilla_qubits);
        const DensityMatrix before = reduced_density_matrix(tensor(a, b), layout.ancilla_qubits);
        CHECK(trace_distance(after, before) <= 2.0 * std::abs(std::sin(delta / 2.0)) + 1e-12);
    }

    // spectrum of any reduction is a probability spectrum
    for (int trial = 0; trial < 20; ++trial) {
        const StateVector state = verify::random_state(3, rng);
        const DensityMatrix reduced = reduced_density_matrix(state, {0, 2});
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(reduced.entries);
        CHECK(solver.eigenvalues().minCoeff() >= -1e-10);
        CHECK(solver.eigenvalues().maxCoeff() <= 1.0 + 1e-10);
        CHECK(std::abs(reduced.entries.trace().real() - 1.0) < 1e-12);
    }

    CHECK_THROWS_AS(reduced_density_matrix(product, {0, 1, 2, 3}), std::invalid_argument);
}

TEST_CASE("fidelity ignores global phase") {
    SplitMix64 rng(31);
    const StateVector s = verify::random_state(3, rng);
    StateVector rotated = s;
    for (cxd& a : rotated.amplitudes) a *= std::polar(1.0, 1.234);
    CHECK(fidelity_up_to_global_phase(s, s) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fidelity_up_to_global_phase(s, rotated) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fidelity_up_to_global_phase(basis_state(2, 0), basis_state(2, 3)) == 0.0);
    CHECK_THROWS_AS(fidelity_up_to_global_phase(basis_state(1, 0), basis_state(2, 0)),
                    std::invalid_argument);
}

TEST_CASE("qft matches the dense DFT and inverts cleanly") {
    const StateVector uniform = qft(basis_state(3, 0), {0, 1, 2}, false);
    for (const cxd& a : uniform.amplitudes) {
        CHECK(std::abs(a - cxd{1.0 / std::sqrt(8.0), 0.0}) < 1e-12);
    }

    for (std::uint64_t k = 0; k < 8; ++k) {
        const StateVector column = qft(basis_state(3, k), {0, 1, 2}, false);
        for (std::uint64_t x = 0; x < 8; ++x) {
            const cxd expected = std::polar(
                1.0 / std::sqrt(8.0),
                2.0 * std::numbers::pi * static_cast<double>(k * x) / 8.0);
            CHECK(std::abs(column.amplitudes[x] - expected) < 1e-12);
        }
    }

    SplitMix64 rng(8);
    for (int trial = 0; trial < 10; ++trial) {
        const StateVector state = verify::random_state(3, rng);
        const StateVector round_trip = qft(qft(state, {0, 1, 2}, false), {0, 1, 2}, true);
        for (std::size_t i = 0; i < state.dim(); ++i) {
            CHECK(std::abs(round_trip.amplitudes[i] - state.amplitudes[i]) < 1e-12);
        }
    }

    // subregister transform leaves the other qubits alone: applying it to a
    // product state transforms only the register factor
    const StateVector two = tensor(basis_state(1, 1), basis_state(2, 0));
    const StateVector transformed = qft(two, {0, 1}, false);
    for (std::size_t y = 0; y < 4; ++y) {
        CHECK(std::abs(transformed.amplitudes[4 + y] - cxd{0.5, 0.0}) < 1e-12);
        CHECK(std::abs(transformed.amplitudes[y]) < 1e-15);
    }
}
