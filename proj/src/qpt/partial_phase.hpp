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

#ifndef QPT_PARTIAL_PHASE_HPP
#define QPT_PARTIAL_PHASE_HPP

#include <vector>

#include <Eigen/Dense>

#include "qpt/statevector.hpp"

namespace qpt {

/// Gate realization of the partial phase operator U(delta) on two n-qubit
/// registers: n CNOT_0 gates compute per-qubit equality flags in place on
/// the primary register, one phase gate controlled on all n flags applies
/// e^{i delta} exactly on the x = y subspace, and the same n CNOT_0 gates
/// uncompute the flags. 2n + 1 gates total.
struct PartialPhaseCircuit {
    int n = 0;
    double delta = 0.0;
    std::vector<GateOp> gates;
};

enum class DenseSource { Direct, Circuit };

/// U(delta)|x>|y> = e^{i delta}|x>|y> when x = y, identity otherwise,
/// applied as a diagonal on the composite amplitudes.
StateVector apply_partial_phase_direct(const StateVector& state, const RegisterLayout& layout,
                                       double delta);

PartialPhaseCircuit build_partial_phase_circuit(int n, double delta);

/// Runs the circuit gates in order; equivalent to the direct application on
/// every input.
StateVector apply_circuit(const StateVector& state, const PartialPhaseCircuit& circuit);

/// Full 4^n x 4^n matrix of U(delta), built column by column by applying the
/// chosen realization to every composite basis state. Guarded to n <= 4.
Eigen::MatrixXcd dense_operator(int n, double delta, DenseSource source);

}  // namespace qpt

#endif  // QPT_PARTIAL_PHASE_HPP
