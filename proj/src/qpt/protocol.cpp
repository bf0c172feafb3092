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

#include "qpt/protocol.hpp"

#include <cmath>
#include <stdexcept>

#include "qpt/partial_phase.hpp"

namespace qpt {

namespace {

constexpr double kBranchTol = 1e-14;

void check_same_register(const StateVector& psi, const StateVector& phi, const char* what) {
    if (psi.dim() != phi.dim()) {
        throw std::invalid_argument(std::string(what) + ": psi and phi dimensions differ");
    }
}

/// |psi>|0> on 2n qubits under the s = x * 2^n + y convention.
StateVector compose_with_zero_ancilla(const StateVector& psi) {
    StateVector composite;
    composite.n_qubits = 2 * psi.n_qubits;
    composite.amplitudes.assign(std::size_t{1} << composite.n_qubits, cxd{0.0, 0.0});
    const std::size_t reg_dim = psi.dim();
    for (std::size_t x = 0; x < reg_dim; ++x) {
        composite.amplitudes[x * reg_dim] = psi.amplitudes[x];
    }
    return composite;
}

/// Primary register of a composite state collapsed onto ancilla value mu.
StateVector extract_primary(const StateVector& composite, std::uint64_t mu, int n) {
    const std::size_t reg_dim = std::size_t{1} << n;
    StateVector primary;
    primary.n_qubits = n;
    primary.amplitudes.resize(reg_dim);
    for (std::size_t x = 0; x < reg_dim; ++x) {
        primary.amplitudes[x] = composite.amplitudes[x * reg_dim + mu];
    }
    return primary;
}

/// The uncollapsed pre-measurement composite state of one cycle.
StateVector cycle_state(const StateVector& psi, const InitializerUnitary& u, double delta) {
    const RegisterLayout layout = RegisterLayout::standard(psi.n_qubits);
    StateVector composite = compose_with_zero_ancilla(psi);
    composite = apply_initializer(composite, u, layout.ancilla_qubits, /*adjoint=*/false);
    composite = apply_partial_phase_direct(composite, layout, delta);
    composite = apply_initializer(composite, u, layout.ancilla_qubits, /*adjoint=*/true);
    return composite;
}

CycleOutcome outcome_from_collapse(const MeasurementResult& m, int n) {
    CycleOutcome outcome;
    outcome.mu = m.outcome;
    outcome.success = m.outcome == 0;
    outcome.probability = m.probability;
    outcome.post_state = extract_primary(m.collapsed, m.outcome, n);
    return outcome;
}

}  // namespace

ProtocolConfig ProtocolConfig::from_alpha(double alpha, int cycles, ProtocolMode mode,
                                          std::uint64_t seed, Completion completion) {
    if (cycles < 1) throw std::invalid_argument("ProtocolConfig: cycles must be >= 1");
    ProtocolConfig config;
    config.alpha = alpha;
    config.cycles = cycles;
    config.delta = alpha / cycles;
    config.mode = mode;
    config.seed = seed;
    config.completion = completion;
    return config;
}

ProtocolConfig ProtocolConfig::from_delta(double delta, int cycles, ProtocolMode mode,
                                          std::uint64_t seed, Completion completion) {
    if (cycles < 1) throw std::invalid_argument("ProtocolConfig: cycles must be >= 1");
    ProtocolConfig config;
    config.delta = delta;
    config.cycles = cycles;
    config.alpha = delta * cycles;
    config.mode = mode;
    config.seed = seed;
    config.completion = completion;
    return config;
}

CycleOutcome run_cycle(const StateVector& psi, const StateVector& phi, double delta,
                       Completion completion, SplitMix64& rng) {
    check_same_register(psi, phi, "run_cycle");
    const InitializerUnitary u = make_initializer(phi.amplitudes, completion);
    const RegisterLayout layout = RegisterLayout::standard(psi.n_qubits);
    const StateVector composite = cycle_state(psi, u, delta);
    const MeasurementResult m = measure_subregister(composite, layout.ancilla_qubits, rng);
    return outcome_from_collapse(m, psi.n_qubits);
}

double exact_success_probability(const StateVector& psi, const StateVector& phi, double delta) {
    check_same_register(psi, phi, "exact_success_probability");
    const double s2 = std::sin(delta / 2.0);
    const double weight = 4.0 * s2 * s2;
    double p = 0.0;
    for (std::size_t x = 0; x < psi.dim(); ++x) {
        const double q = std::norm(phi.amplitudes[x]);
        p += std::norm(psi.amplitudes[x]) * (1.0 - weight * q * (1.0 - q));
    }
    return p;
}

OutcomeDistribution exact_outcome_distribution(const StateVector& psi, const StateVector& phi,
                                               double delta, Completion completion) {
    check_same_register(psi, phi, "exact_outcome_distribution");
    const InitializerUnitary u = make_initializer(phi.amplitudes, completion);
    const double s2 = std::sin(delta / 2.0);
    const double weight = 4.0 * s2 * s2;

    OutcomeDistribution dist;
    dist.probabilities.assign(psi.dim(), 0.0);
    dist.probabilities[0] = exact_success_probability(psi, phi, delta);
    for (std::size_t mu = 1; mu < psi.dim(); ++mu) {
        double p = 0.0;
        for (std::size_t x = 0; x < psi.dim(); ++x) {
            p += std::norm(psi.amplitudes[x] *
                           u.matrix(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(mu)) *
                           phi.amplitudes[x]);
        }
        dist.probabilities[mu] = weight * p;
    }
    return dist;
}

StateVector exact_postselected_state(const StateVector& psi, const StateVector& phi,
                                     double delta) {
    check_same_register(psi, phi, "exact_postselected_state");
    const cxd lever = std::polar(1.0, delta) - 1.0;  // e^{i Delta} - 1
    std::vector<cxd> amps(psi.dim());
    for (std::size_t x = 0; x < psi.dim(); ++x) {
        const double q = std::norm(phi.amplitudes[x]);
        amps[x] = psi.amplitudes[x] * (1.0 + lever * q);
    }
    return from_amplitudes(std::move(amps));
}

StateVector exact_failure_state(const StateVector& psi, const StateVector& phi, double delta,
                                std::uint64_t mu, Completion completion) {
    check_same_register(psi, phi, "exact_failure_state");
    if (mu == 0) throw std::invalid_argument("exact_failure_state: mu must be nonzero");
    if (mu >= psi.dim()) throw std::out_of_range("exact_failure_state: mu out of range");
    const OutcomeDistribution dist = exact_outcome_distribution(psi, phi, delta, completion);
    if (dist.probabilities[mu] < kBranchTol) {
        throw std::invalid_argument("exact_failure_state: branch probability below 1e-14");
    }
    const InitializerUnitary u = make_initializer(phi.amplitudes, completion);
    std::vector<cxd> amps(psi.dim());
    for (std::size_t x = 0; x < psi.dim(); ++x) {
        amps[x] = psi.amplitudes[x] *
                  std::conj(u.matrix(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(mu))) *
                  phi.amplitudes[x];
    }
    return from_amplitudes(std::move(amps));
}

ProtocolResult run_protocol(const StateVector& psi, const StateVector& phi,
                            const ProtocolConfig& config) {
    check_same_register(psi, phi, "run_protocol");
    if (config.cycles < 1) throw std::invalid_argument("run_protocol: cycles must be >= 1");
    if (std::abs(config.alpha - config.cycles * config.delta) > 1e-12 * std::max(1.0, std::abs(config.alpha))) {
        throw std::invalid_argument("run_protocol: alpha must equal cycles * delta");
    }

    const int n = psi.n_qubits;
    const RegisterLayout layout = RegisterLayout::standard(n);
    InitializerUnitary u;
    if (config.mode != ProtocolMode::Exact) {
        u = make_initializer(phi.amplitudes, config.completion);
    }

    ProtocolResult result;
    result.final_state = psi;
    result.outcome_log.reserve(static_cast<std::size_t>(config.cycles));

    for (int cycle = 0; cycle < config.cycles; ++cycle) {
        const double p0 = exact_success_probability(result.final_state, phi, config.delta);
        CycleOutcome outcome;
        switch (config.mode) {
            case ProtocolMode::Sampled: {
                SplitMix64 rng(derive_seed(config.seed, {static_cast<std::uint64_t>(cycle)}));
                const StateVector composite = cycle_state(result.final_state, u, config.delta);
                const MeasurementResult m =
                    measure_subregister(composite, layout.ancilla_qubits, rng);
                outcome = outcome_from_collapse(m, n);
                break;
            }
            case ProtocolMode::Postselected: {
                const StateVector composite = cycle_state(result.final_state, u, config.delta);
                const MeasurementResult m = collapse_onto(composite, layout.ancilla_qubits, 0);
                outcome = outcome_from_collapse(m, n);
                break;
            }
            case ProtocolMode::Exact: {
                outcome.mu = 0;
                outcome.success = true;
                outcome.probability = p0;
                outcome.post_state =
                    exact_postselected_state(result.final_state, phi, config.delta);
                break;
            }
        }
        result.total_success_probability *= p0;
        result.final_state = outcome.post_state;
        result.cycles_run = cycle + 1;
        const bool success = outcome.success;
        result.outcome_log.push_back(std::move(outcome));
        if (!success) {
            result.failed_at = cycle;
            break;
        }
    }
    return result;
}

}  // namespace qpt
