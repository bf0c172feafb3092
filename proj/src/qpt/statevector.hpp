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

#ifndef QPT_STATEVECTOR_HPP
#define QPT_STATEVECTOR_HPP

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "qpt/rng.hpp"

namespace qpt {

using cxd = std::complex<double>;

/// Dense pure state over n qubits: 2^n complex amplitudes, unit norm.
///
/// Index convention, used everywhere in this library: qubit j carries bit j
/// of the basis index, so qubit 0 is the least significant bit. A register
/// given as a set of qubit indices reads its value with ascending qubit
/// index mapping to ascending bit significance.
struct StateVector {
    int n_qubits = 0;
    std::vector<cxd> amplitudes;

    std::size_t dim() const { return amplitudes.size(); }
};

/// Two equal-size registers inside a 2n-qubit state. The primary register
/// occupies the high-order bits and the ancilla the low-order bits, so the
/// composite basis index of |x>|y> is s = x * 2^n + y.
struct RegisterLayout {
    int n = 0;
    std::vector<int> primary_qubits;  // n .. 2n-1, ascending
    std::vector<int> ancilla_qubits;  // 0 .. n-1, ascending

    static RegisterLayout standard(int n);
};

/// Density operator on a 2^k-dimensional register.
struct DensityMatrix {
    Eigen::MatrixXcd entries;

    Eigen::Index dim() const { return entries.rows(); }
};

/// Gate alphabet of the simulator: arbitrary single-qubit unitaries,
/// CNOT with control state 0, and the multi-controlled phase.
struct GateOp {
    enum class Kind { SingleQubit, CnotControl0, MultiControlledPhase };

    Kind kind = Kind::SingleQubit;
    Eigen::Matrix2cd matrix = Eigen::Matrix2cd::Identity();  // SingleQubit only
    int target = -1;                                         // SingleQubit, CnotControl0
    int control = -1;                                        // CnotControl0 only
    std::vector<int> controls;                               // MultiControlledPhase only
    double delta = 0.0;                                      // MultiControlledPhase only

    static GateOp single_qubit(const Eigen::Matrix2cd& u, int target);
    static GateOp cnot_control0(int control, int target);
    static GateOp multi_controlled_phase(std::vector<int> controls, double delta);
};

struct MeasurementResult {
    std::uint64_t outcome = 0;
    StateVector collapsed;
    double probability = 0.0;
};

// -- construction -----------------------------------------------------------

/// |index> on n_qubits qubits.
StateVector basis_state(int n_qubits, std::uint64_t index);

/// State with the given amplitudes, normalized to unit norm. The length must
/// be a power of two >= 2 and the vector must not be (numerically) zero.
StateVector from_amplitudes(std::vector<cxd> values);

// -- gates and transforms ---------------------------------------------------

/// Applies a gate, returning a new state. CNOT_0 maps |y>|x> to |y>|x ^ !y>
/// (target flips when the control qubit is 0); the multi-controlled phase
/// multiplies by e^{i delta} exactly on basis states whose control qubits
/// are all 1.
StateVector apply_gate(const StateVector& state, const GateOp& gate);

/// Discrete Fourier transform F_N, entries e^{2 pi i jk / N} / sqrt(N),
/// applied along the amplitude axis of the given register (the rest of the
/// state is untouched). `inverse` applies the conjugate transpose.
StateVector qft(const StateVector& state, const std::vector<int>& register_qubits, bool inverse);

// -- measurement and reduction ----------------------------------------------

/// Probability of each outcome of measuring the given qubits in the
/// computational basis; entry k sums |amplitude|^2 over all basis states
/// whose restriction to `qubits` equals k.
std::vector<double> marginal_probabilities(const StateVector& state, const std::vector<int>& qubits);

/// Samples an outcome for the given qubits from the state's marginal,
/// collapses onto it and renormalizes by the exact branch norm.
/// Deterministic given (state, qubits, rng seed).
MeasurementResult measure_subregister(const StateVector& state, const std::vector<int>& qubits,
                                      SplitMix64& rng);

/// Projects onto the given outcome of the given qubits without sampling and
/// renormalizes by the exact branch norm; also reports the branch
/// probability. Throws if the branch has (numerically) zero weight.
MeasurementResult collapse_onto(const StateVector& state, const std::vector<int>& qubits,
                                std::uint64_t outcome);

/// Reduced density matrix over `keep` (a nonempty proper subset), tracing
/// out the remaining qubits.
DensityMatrix reduced_density_matrix(const StateVector& state, const std::vector<int>& keep);

// -- metrics ----------------------------------------------------------------

double norm(const StateVector& state);
cxd inner_product(const StateVector& a, const StateVector& b);

/// |<a|b>|, insensitive to global phase.
double fidelity_up_to_global_phase(const StateVector& a, const StateVector& b);

/// Half the trace norm of a - b.
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

// -- register index helpers (shared by the modules above this one) ----------

/// Value of the subregister `qubits` inside composite index s.
std::uint64_t gather_bits(std::uint64_t s, const std::vector<int>& qubits);

/// Composite index with value k written into the `qubits` positions and
/// zeros elsewhere.
std::uint64_t scatter_bits(std::uint64_t k, const std::vector<int>& qubits);

/// Ascending list of qubits of an n-qubit state not in `qubits`.
std::vector<int> complement_qubits(int n_qubits, const std::vector<int>& qubits);

/// Validates that `qubits` is a nonempty, strictly ascending, in-range list.
void validate_register(int n_qubits, const std::vector<int>& qubits, const char* what);

}  // namespace qpt

#endif  // QPT_STATEVECTOR_HPP
