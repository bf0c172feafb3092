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

#include "qpt/partial_phase.hpp"

#include <cmath>
#include <stdexcept>

namespace qpt {

StateVector apply_partial_phase_direct(const StateVector& state, const RegisterLayout& layout,
                                       double delta) {
    if (state.n_qubits != 2 * layout.n) {
        throw std::invalid_argument("apply_partial_phase_direct: state has " +
                                    std::to_string(state.n_qubits) + " qubits, layout expects " +
                                    std::to_string(2 * layout.n));
    }
    const std::size_t reg_dim = std::size_t{1} << layout.n;
    const cxd phase = std::polar(1.0, delta);
    StateVector out = state;
    for (std::size_t x = 0; x < reg_dim; ++x) {
        out.amplitudes[x * reg_dim + x] *= phase;  // s = x * 2^n + y with y = x
    }
    return out;
}

PartialPhaseCircuit build_partial_phase_circuit(int n, double delta) {
    if (n < 1) throw std::invalid_argument("build_partial_phase_circuit: n must be >= 1");
    PartialPhaseCircuit circuit;
    circuit.n = n;
    circuit.delta = delta;
    circuit.gates.reserve(2 * static_cast<std::size_t>(n) + 1);

    // Compute flag bits z_j = x_j XOR NOT y_j in place on the primary qubits:
    // control is ancilla qubit j (control state 0), target is primary qubit n+j.
    for (int j = 0; j < n; ++j) {
        circuit.gates.push_back(GateOp::cnot_control0(j, n + j));
    }
    std::vector<int> flags(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) flags[j] = n + j;
    circuit.gates.push_back(GateOp::multi_controlled_phase(std::move(flags), delta));
    for (int j = n - 1; j >= 0; --j) {
        circuit.gates.push_back(GateOp::cnot_control0(j, n + j));
    }
    return circuit;
}

StateVector apply_circuit(const StateVector& state, const PartialPhaseCircuit& circuit) {
    if (state.n_qubits != 2 * circuit.n) {
        throw std::invalid_argument("apply_circuit: state size does not match circuit registers");
    }
    StateVector out = state;
    for (const GateOp& gate : circuit.gates) {
        out = apply_gate(out, gate);
    }
    return out;
}

Eigen::MatrixXcd dense_operator(int n, double delta, DenseSource source) {
    if (n < 1) throw std::invalid_argument("dense_operator: n must be >= 1");
    if (n > 4) throw std::invalid_argument("dense_operator: n > 4 exceeds the dense guard");
    const RegisterLayout layout = RegisterLayout::standard(n);
    const PartialPhaseCircuit circuit =
        source == DenseSource::Circuit ? build_partial_phase_circuit(n, delta) : PartialPhaseCircuit{};
    const std::size_t dim = std::size_t{1} << (2 * n);

    Eigen::MatrixXcd u(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::uint64_t col = 0; col < dim; ++col) {
        const StateVector basis = basis_state(2 * n, col);
        const StateVector image = source == DenseSource::Direct
                                      ? apply_partial_phase_direct(basis, layout, delta)
                                      : apply_circuit(basis, circuit);
        for (std::uint64_t row = 0; row < dim; ++row) {
            u(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) =
                image.amplitudes[row];
        }
    }
    return u;
}

}  // namespace qpt
