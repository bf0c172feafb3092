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

#ifndef QPT_HAMILTONIAN_HPP
#define QPT_HAMILTONIAN_HPP

#include <vector>

#include <Eigen/Dense>

#include "qpt/initializer.hpp"
#include "qpt/statevector.hpp"

namespace qpt {

/// Split-step evolution spec for H = T(P) + V(X) on an N = 2^n grid.
/// Profiles are already-discretized energy tables (hbar = 1): potential is
/// indexed by position, kinetic by the DFT frequency index (no fftshift;
/// index p >= N/2 means frequency p - N).
struct HamiltonianSpec {
    int n = 0;
    std::vector<double> potential;  // V(x), length N
    std::vector<double> kinetic;    // T(p), length N
    double total_time = 0.0;
    int steps = 1;
};

/// A nonnegative phase table together with the software state that encodes
/// it: alpha * |software_state(x)|^2 == values(x).
struct PhaseProfile {
    std::vector<double> values;
    StateVector software_state;
    double alpha = 0.0;
};

enum class PhaseMode { ExactPhase, ProtocolPhase };

/// Controls how a diagonal phase is driven through the protocol: the total
/// coefficient alpha is split into ceil(|alpha| / max_cycle_delta)
/// postselected cycles.
struct ProtocolPhaseOptions {
    double max_cycle_delta = 0.01;
    Completion completion = Completion::Householder;
};

/// Encodes a nonnegative, not-all-zero phase table into a software state,
/// phi(x) = sqrt(values(x) / A) with A = sum(values) and alpha = A.
PhaseProfile profile_to_software_state(const std::vector<double>& values);

/// Applies the diagonal phase e^{i theta(x)}. Exact mode multiplies the
/// amplitudes directly; protocol mode encodes |theta| as a software state and
/// runs postselected protocol cycles with the sign of theta carried by the
/// cycle phase step. Protocol mode rejects mixed-sign theta.
StateVector apply_phase_profile(const StateVector& state, const std::vector<double>& theta,
                                PhaseMode mode, const ProtocolPhaseOptions& options = {});

/// One first-order split step of duration total_time / steps:
/// e^{-i V dt} in the position basis, then QFT, e^{-i T dt}, inverse QFT.
/// Time-dependent profiles are driven by calling this with a per-step spec.
StateVector trotter_step(const StateVector& state, const HamiltonianSpec& spec, PhaseMode mode,
                         const ProtocolPhaseOptions& options = {});

/// All spec.steps split steps composed.
StateVector evolve(const StateVector& state, const HamiltonianSpec& spec, PhaseMode mode,
                   const ProtocolPhaseOptions& options = {});

/// Dense N x N matrix F^dag diag(T) F + diag(V).
Eigen::MatrixXcd dense_hamiltonian(const HamiltonianSpec& spec);

/// Reference evolution e^{-i H t} by eigendecomposition of the dense
/// Hamiltonian; the oracle the split-step path is checked against.
StateVector dense_evolution(const StateVector& state, const HamiltonianSpec& spec);

/// Harmonic oscillator on the discrete grid: V(x) = omega^2 (x - c)^2 / 2
/// centered at c = (N-1)/2, T(p) = f(p)^2 / 2 with f the signed DFT
/// frequency.
HamiltonianSpec harmonic_oscillator_spec(int n, double omega, double total_time, int steps);

}  // namespace qpt

#endif  // QPT_HAMILTONIAN_HPP
