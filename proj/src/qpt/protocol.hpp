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

#ifndef QPT_PROTOCOL_HPP
#define QPT_PROTOCOL_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "qpt/initializer.hpp"
#include "qpt/rng.hpp"
#include "qpt/statevector.hpp"

namespace qpt {

// One cycle of the phase transformation protocol on equal-size registers:
//
//   |psi>|0>  ->  (I x U_phi)  ->  U(Delta)  ->  (I x U_phi^dag)  ->  measure ancilla
//
// Outcome 0 leaves the primary register with each amplitude multiplied by
// 1 + (e^{i Delta} - 1) |phi(x)|^2 (then renormalized), which for small Delta
// approximates the phase profile e^{i Delta |phi(x)|^2}. Any other outcome mu
// corrupts the register to psi(x) phi_mu^*(x) phi(x), where phi_mu is column
// mu of the initializer. Iterating m cycles with Delta = alpha / m builds the
// profile e^{i alpha |phi(x)|^2} with success probability 1 - O(alpha^2 / m).

enum class ProtocolMode { Sampled, Postselected, Exact };

struct ProtocolConfig {
    double delta = 0.0;
    int cycles = 1;
    double alpha = 0.0;
    ProtocolMode mode = ProtocolMode::Sampled;
    Completion completion = Completion::Householder;
    std::uint64_t seed = 0;

    /// Delta computed as alpha / cycles in full precision.
    static ProtocolConfig from_alpha(double alpha, int cycles, ProtocolMode mode,
                                     std::uint64_t seed = 0,
                                     Completion completion = Completion::Householder);
    static ProtocolConfig from_delta(double delta, int cycles, ProtocolMode mode,
                                     std::uint64_t seed = 0,
                                     Completion completion = Completion::Householder);
};

struct CycleOutcome {
    std::uint64_t mu = 0;
    bool success = false;  // mu == 0
    double probability = 0.0;
    StateVector post_state;  // primary register after collapse
};

struct OutcomeDistribution {
    std::vector<double> probabilities;  // indexed by mu
};

struct ProtocolResult {
    StateVector final_state;
    int cycles_run = 0;
    std::optional<int> failed_at;  // 0-based cycle index of the first failure
    /// Product over executed cycles of the exact per-cycle success
    /// probability, i.e. the a-priori probability that every executed cycle
    /// succeeds.
    double total_success_probability = 1.0;
    std::vector<CycleOutcome> outcome_log;
};

/// Simulates one full cycle on the 2n-qubit composite state and samples the
/// ancilla measurement. Returns the sampled outcome, its exact probability
/// and the collapsed, renormalized primary state.
CycleOutcome run_cycle(const StateVector& psi, const StateVector& phi, double delta,
                       Completion completion, SplitMix64& rng);

/// Closed-form probability of every measurement outcome:
///   P(0)      = sum_x |psi(x)|^2 (1 - 4 sin^2(Delta/2) |phi(x)|^2 (1 - |phi(x)|^2))
///   P(mu!=0)  = 4 sin^2(Delta/2) sum_x |psi(x) phi_mu(x) phi(x)|^2
OutcomeDistribution exact_outcome_distribution(const StateVector& psi, const StateVector& phi,
                                               double delta, Completion completion);

/// P(0) above; independent of the completion and bounded below by
/// cos^2(Delta/2).
double exact_success_probability(const StateVector& psi, const StateVector& phi, double delta);

/// Normalized success-branch state psi(x) (1 + (e^{i Delta} - 1)|phi(x)|^2);
/// independent of the completion.
StateVector exact_postselected_state(const StateVector& psi, const StateVector& phi, double delta);

/// Normalized failure-branch state psi(x) phi_mu^*(x) phi(x) for mu != 0.
/// Throws when the branch probability is below 1e-14.
StateVector exact_failure_state(const StateVector& psi, const StateVector& phi, double delta,
                                std::uint64_t mu, Completion completion);

/// Runs config.cycles cycles. Sampled mode draws each measurement and stops
/// at the first failure; postselected mode forces the mu = 0 branch of the
/// simulated composite state; exact mode applies the closed-form
/// success-branch map without touching the composite state.
ProtocolResult run_protocol(const StateVector& psi, const StateVector& phi,
                            const ProtocolConfig& config);

}  // namespace qpt

#endif  // QPT_PROTOCOL_HPP
