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

#include "qpt/hamiltonian.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qpt/protocol.hpp"

namespace qpt {

namespace {

std::vector<int> full_register(int n) {
    std::vector<int> reg(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) reg[j] = j;
    return reg;
}

void check_spec(const HamiltonianSpec& spec) {
    if (spec.n < 1) throw std::invalid_argument("HamiltonianSpec: n must be >= 1");
    const std::size_t dim = std::size_t{1} << spec.n;
    if (spec.potential.size() != dim || spec.kinetic.size() != dim) {
        throw std::invalid_argument("HamiltonianSpec: profile lengths must equal 2^n");
    }
    if (spec.steps < 1) throw std::invalid_argument("HamiltonianSpec: steps must be >= 1");
    for (double v : spec.potential) {
        if (!std::isfinite(v)) throw std::invalid_argument("HamiltonianSpec: non-finite potential");
    }
    for (double t : spec.kinetic) {
        if (!std::isfinite(t)) throw std::invalid_argument("HamiltonianSpec: non-finite kinetic");
    }
}

Eigen::MatrixXcd dft_matrix(std::size_t dim) {
    Eigen::MatrixXcd f(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
    for (std::size_t j = 0; j < dim; ++j) {
        for (std::size_t k = 0; k < dim; ++k) {
            f(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) = std::polar(
                scale, 2.0 * std::numbers::pi * static_cast<double>(j * k % dim) /
                           static_cast<double>(dim));
        }
    }
    return f;
}

}  // namespace

PhaseProfile profile_to_software_state(const std::vector<double>& values) {
    if (values.size() < 2) {
        throw std::invalid_argument("profile_to_software_state: need at least two entries");
    }
    double total = 0.0;
    for (double v : values) {
        if (!(v >= 0.0)) {
            throw std::invalid_argument(
                "profile_to_software_state: profile must be nonnegative; carry the overall "
                "sign in the phase coefficient instead");
        }
        total += v;
    }
    if (total <= 0.0) {
        throw std::invalid_argument("profile_to_software_state: all-zero profile");
    }
    PhaseProfile profile;
    profile.values = values;
    profile.alpha = total;
    std::vector<cxd> amps(values.size());
    for (std::size_t x = 0; x < values.size(); ++x) {
        amps[x] = cxd{std::sqrt(values[x] / total), 0.0};
    }
    profile.software_state = from_amplitudes(std::move(amps));
    return profile;
}

StateVector apply_phase_profile(const StateVector& state, const std::vector<double>& theta,
                                PhaseMode mode, const ProtocolPhaseOptions& options) {
    if (theta.size() != state.dim()) {
        throw std::invalid_argument("apply_phase_profile: profile length must match state");
    }
    if (mode == PhaseMode::ExactPhase) {
        StateVector out = state;
        for (std::size_t x = 0; x < theta.size(); ++x) {
            out.amplitudes[x] *= std::polar(1.0, theta[x]);
        }
        return out;
    }

    bool has_positive = false;
    bool has_negative = false;
    for (double v : theta) {
        if (v > 0.0) has_positive = true;
        if (v < 0.0) has_negative = true;
    }
    if (has_positive && has_negative) {
        throw std::invalid_argument(
            "apply_phase_profile: mixed-sign profile cannot be encoded in one software state; "
            "split it into two applications");
    }
    if (!has_positive && !has_negative) return state;

    const double sign = has_negative ? -1.0 : 1.0;
    std::vector<double> magnitude(theta.size());
    for (std::size_t x = 0; x < theta.size(); ++x) magnitude[x] = sign * theta[x];
    const PhaseProfile profile = profile_to_software_state(magnitude);

    if (options.max_cycle_delta <= 0.0) {
        throw std::invalid_argument("apply_phase_profile: max_cycle_delta must be positive");
    }
    const double alpha = sign * profile.alpha;
    const int cycles =
        std::max(1, static_cast<int>(std::ceil(profile.alpha / options.max_cycle_delta)));
    const ProtocolConfig config = ProtocolConfig::from_alpha(
        alpha, cycles, ProtocolMode::Postselected, /*seed=*/0, options.completion);
    return run_protocol(state, profile.software_state, config).final_state;
}

StateVector trotter_step(const StateVector& state, const HamiltonianSpec& spec, PhaseMode mode,
                         const ProtocolPhaseOptions& options) {
    check_spec(spec);
    if (state.dim() != spec.potential.size()) {
        throw std::invalid_argument("trotter_step: state dimension does not match spec");
    }
    const double dt = spec.total_time / spec.steps;
    const std::vector<int> reg = full_register(spec.n);

    std::vector<double> theta(state.dim());
    for (std::size_t x = 0; x < theta.size(); ++x) theta[x] = -spec.potential[x] * dt;
    StateVector out = apply_phase_profile(state, theta, mode, options);

    out = qft(out, reg, /*inverse=*/false);
    for (std::size_t p = 0; p < theta.size(); ++p) theta[p] = -spec.kinetic[p] * dt;
    out = apply_phase_profile(out, theta, mode, options);
    return qft(out, reg, /*inverse=*/true);
}

StateVector evolve(const StateVector& state, const HamiltonianSpec& spec, PhaseMode mode,
                   const ProtocolPhaseOptions& options) {
    check_spec(spec);
    StateVector out = state;
    for (int step = 0; step < spec.steps; ++step) {
        out = trotter_step(out, spec, mode, options);
    }
    return out;
}

Eigen::MatrixXcd dense_hamiltonian(const HamiltonianSpec& spec) {
    check_spec(spec);
    const std::size_t dim = spec.potential.size();
    const Eigen::MatrixXcd f = dft_matrix(dim);
    Eigen::VectorXcd kinetic(static_cast<Eigen::Index>(dim));
    Eigen::VectorXcd potential(static_cast<Eigen::Index>(dim));
    for (std::size_t i = 0; i < dim; ++i) {
        kinetic(static_cast<Eigen::Index>(i)) = spec.kinetic[i];
        potential(static_cast<Eigen::Index>(i)) = spec.potential[i];
    }
    return f.adjoint() * kinetic.asDiagonal() * f +
           Eigen::MatrixXcd(potential.asDiagonal());
}

StateVector dense_evolution(const StateVector& state, const HamiltonianSpec& spec) {
    if (state.dim() != spec.potential.size()) {
        throw std::invalid_argument("dense_evolution: state dimension does not match spec");
    }
    Eigen::MatrixXcd h = dense_hamiltonian(spec);
    h = (h + h.adjoint().eval()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
    const Eigen::VectorXd eigenvalues = solver.eigenvalues();
    const Eigen::MatrixXcd& basis = solver.eigenvectors();

    Eigen::VectorXcd amps(static_cast<Eigen::Index>(state.dim()));
    for (std::size_t i = 0; i < state.dim(); ++i) {
        amps(static_cast<Eigen::Index>(i)) = state.amplitudes[i];
    }
    Eigen::VectorXcd coords = basis.adjoint() * amps;
    for (Eigen::Index i = 0; i < coords.size(); ++i) {
        coords(i) *= std::polar(1.0, -eigenvalues(i) * spec.total_time);
    }
    const Eigen::VectorXcd evolved = basis * coords;

    StateVector out = state;
    for (std::size_t i = 0; i < state.dim(); ++i) {
        out.amplitudes[i] = evolved(static_cast<Eigen::Index>(i));
    }
    return out;
}

HamiltonianSpec harmonic_oscillator_spec(int n, double omega, double total_time, int steps) {
    if (n < 1) throw std::invalid_argument("harmonic_oscillator_spec: n must be >= 1");
    const std::size_t dim = std::size_t{1} << n;
    HamiltonianSpec spec;
    spec.n = n;
    spec.total_time = total_time;
    spec.steps = steps;
    spec.potential.resize(dim);
    spec.kinetic.resize(dim);
    const double center = (static_cast<double>(dim) - 1.0) / 2.0;
    for (std::size_t x = 0; x < dim; ++x) {
        const double dx = static_cast<double>(x) - center;
        spec.potential[x] = 0.5 * omega * omega * dx * dx;
    }
    for (std::size_t p = 0; p < dim; ++p) {
        const double freq = p < dim / 2 ? static_cast<double>(p)
                                        : static_cast<double>(p) - static_cast<double>(dim);
        spec.kinetic[p] = 0.5 * freq * freq;
    }
    return spec;
}

}  // namespace qpt
