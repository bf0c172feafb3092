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

#include "qpt/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qpt {

namespace {

constexpr double kUnitaryTol = 1e-12;
constexpr double kBranchTol = 1e-14;

bool is_power_of_two(std::size_t v) { return v != 0 && (v & (v - 1)) == 0; }

int log2_exact(std::size_t v) {
    int n = 0;
    while ((std::size_t{1} << n) < v) ++n;
    return n;
}

void check_qubit_index(int n_qubits, int q, const char* what) {
    if (q < 0 || q >= n_qubits) {
        throw std::out_of_range(std::string(what) + ": qubit index " + std::to_string(q) +
                                " out of range for " + std::to_string(n_qubits) + " qubits");
    }
}

}  // namespace

RegisterLayout RegisterLayout::standard(int n) {
    if (n < 1) throw std::invalid_argument("RegisterLayout: n must be >= 1");
    RegisterLayout layout;
    layout.n = n;
    layout.primary_qubits.resize(n);
    layout.ancilla_qubits.resize(n);
    for (int j = 0; j < n; ++j) {
        layout.ancilla_qubits[j] = j;
        layout.primary_qubits[j] = n + j;
    }
    return layout;
}

GateOp GateOp::single_qubit(const Eigen::Matrix2cd& u, int target) {
    GateOp g;
    g.kind = Kind::SingleQubit;
    g.matrix = u;
    g.target = target;
    return g;
}

GateOp GateOp::cnot_control0(int control, int target) {
    GateOp g;
    g.kind = Kind::CnotControl0;
    g.control = control;
    g.target = target;
    return g;
}

GateOp GateOp::multi_controlled_phase(std::vector<int> controls, double delta) {
    GateOp g;
    g.kind = Kind::MultiControlledPhase;
    g.controls = std::move(controls);
    g.delta = delta;
    return g;
}

StateVector basis_state(int n_qubits, std::uint64_t index) {
    if (n_qubits < 1) throw std::invalid_argument("basis_state: n_qubits must be >= 1");
    const std::size_t dim = std::size_t{1} << n_qubits;
    if (index >= dim) {
        throw std::out_of_range("basis_state: index " + std::to_string(index) +
                                " out of range for dimension " + std::to_string(dim));
    }
    StateVector s;
    s.n_qubits = n_qubits;
    s.amplitudes.assign(dim, cxd{0.0, 0.0});
    s.amplitudes[index] = cxd{1.0, 0.0};
    return s;
}

StateVector from_amplitudes(std::vector<cxd> values) {
    if (values.size() < 2 || !is_power_of_two(values.size())) {
        throw std::invalid_argument("from_amplitudes: length must be a power of two >= 2");
    }
    double norm2 = 0.0;
    for (const cxd& a : values) norm2 += std::norm(a);
    const double n = std::sqrt(norm2);
    if (n <= 1e-12) {
        throw std::invalid_argument("from_amplitudes: zero vector has no direction");
    }
    for (cxd& a : values) a /= n;
    StateVector s;
    s.n_qubits = log2_exact(values.size());
    s.amplitudes = std::move(values);
    return s;
}

void validate_register(int n_qubits, const std::vector<int>& qubits, const char* what) {
    if (qubits.empty()) {
        throw std::invalid_argument(std::string(what) + ": empty qubit set");
    }
    for (std::size_t i = 0; i < qubits.size(); ++i) {
        check_qubit_index(n_qubits, qubits[i], what);
        if (i > 0 && qubits[i] <= qubits[i - 1]) {
            throw std::invalid_argument(std::string(what) +
                                        ": qubit set must be strictly ascending");
        }
    }
}

std::uint64_t gather_bits(std::uint64_t s, const std::vector<int>& qubits) {
    std::uint64_t k = 0;
    for (std::size_t j = 0; j < qubits.size(); ++j) {
        k |= ((s >> qubits[j]) & 1ULL) << j;
    }
    return k;
}

std::uint64_t scatter_bits(std::uint64_t k, const std::vector<int>& qubits) {
    std::uint64_t s = 0;
    for (std::size_t j = 0; j < qubits.size(); ++j) {
        s |= ((k >> j) & 1ULL) << qubits[j];
    }
    return s;
}

std::vector<int> complement_qubits(int n_qubits, const std::vector<int>& qubits) {
    std::vector<int> rest;
    rest.reserve(static_cast<std::size_t>(n_qubits) - qubits.size());
    std::size_t i = 0;
    for (int q = 0; q < n_qubits; ++q) {
        if (i < qubits.size() && qubits[i] == q) {
            ++i;
        } else {
            rest.push_back(q);
        }
    }
    return rest;
}

StateVector apply_gate(const StateVector& state, const GateOp& gate) {
    StateVector out = state;
    const std::size_t dim = state.dim();
    switch (gate.kind) {
        case GateOp::Kind::SingleQubit: {
            check_qubit_index(state.n_qubits, gate.target, "apply_gate(single_qubit)");
            const Eigen::Matrix2cd& u = gate.matrix;
            if (((u.adjoint() * u) - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() >
                kUnitaryTol) {
                throw std::invalid_argument("apply_gate: single-qubit matrix is not unitary");
            }
            const std::uint64_t bit = 1ULL << gate.target;
            for (std::uint64_t s = 0; s < dim; ++s) {
                if (s & bit) continue;
                const cxd a0 = state.amplitudes[s];
                const cxd a1 = state.amplitudes[s | bit];
                out.amplitudes[s] = u(0, 0) * a0 + u(0, 1) * a1;
                out.amplitudes[s | bit] = u(1, 0) * a0 + u(1, 1) * a1;
            }
            break;
        }
        case GateOp::Kind::CnotControl0: {
            check_qubit_index(state.n_qubits, gate.control, "apply_gate(cnot_control0)");
            check_qubit_index(state.n_qubits, gate.target, "apply_gate(cnot_control0)");
            if (gate.control == gate.target) {
                throw std::invalid_argument("apply_gate: control and target must differ");
            }
            const std::uint64_t cbit = 1ULL << gate.control;
            const std::uint64_t tbit = 1ULL << gate.target;
            for (std::uint64_t s = 0; s < dim; ++s) {
                if ((s & cbit) == 0 && (s & tbit) == 0) {
                    std::swap(out.amplitudes[s], out.amplitudes[s | tbit]);
                }
            }
            break;
        }
        case GateOp::Kind::MultiControlledPhase: {
            validate_register(state.n_qubits, gate.controls, "apply_gate(multi_controlled_phase)");
            std::uint64_t mask = 0;
            for (int q : gate.controls) mask |= 1ULL << q;
            const cxd phase = std::polar(1.0, gate.delta);
            for (std::uint64_t s = 0; s < dim; ++s) {
                if ((s & mask) == mask) out.amplitudes[s] *= phase;
            }
            break;
        }
    }
    return out;
}

StateVector qft(const StateVector& state, const std::vector<int>& register_qubits, bool inverse) {
    validate_register(state.n_qubits, register_qubits, "qft");
    const std::size_t reg_dim = std::size_t{1} << register_qubits.size();
    const std::vector<int> rest = complement_qubits(state.n_qubits, register_qubits);
    const std::size_t rest_dim = std::size_t{1} << rest.size();

    Eigen::MatrixXcd dft(reg_dim, reg_dim);
    const double sign = inverse ? -1.0 : 1.0;
    const double scale = 1.0 / std::sqrt(static_cast<double>(reg_dim));
    for (std::size_t j = 0; j < reg_dim; ++j) {
        for (std::size_t k = 0; k < reg_dim; ++k) {
            const double angle = sign * 2.0 * std::numbers::pi *
                                 static_cast<double>(j * k % reg_dim) /
                                 static_cast<double>(reg_dim);
            dft(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) =
                std::polar(scale, angle);
        }
    }

    StateVector out = state;
    Eigen::VectorXcd slice(reg_dim);
    for (std::size_t r = 0; r < rest_dim; ++r) {
        const std::uint64_t base = scatter_bits(r, rest);
        for (std::size_t k = 0; k < reg_dim; ++k) {
            slice(static_cast<Eigen::Index>(k)) =
                state.amplitudes[base | scatter_bits(k, register_qubits)];
        }
        const Eigen::VectorXcd transformed = dft * slice;
        for (std::size_t k = 0; k < reg_dim; ++k) {
            out.amplitudes[base | scatter_bits(k, register_qubits)] =
                transformed(static_cast<Eigen::Index>(k));
        }
    }
    return out;
}

std::vector<double> marginal_probabilities(const StateVector& state,
                                           const std::vector<int>& qubits) {
    validate_register(state.n_qubits, qubits, "marginal_probabilities");
    std::vector<double> probs(std::size_t{1} << qubits.size(), 0.0);
    for (std::uint64_t s = 0; s < state.dim(); ++s) {
        probs[gather_bits(s, qubits)] += std::norm(state.amplitudes[s]);
    }
    return probs;
}

MeasurementResult collapse_onto(const StateVector& state, const std::vector<int>& qubits,
                                std::uint64_t outcome) {
    validate_register(state.n_qubits, qubits, "collapse_onto");
    if (outcome >= (std::uint64_t{1} << qubits.size())) {
        throw std::out_of_range("collapse_onto: outcome out of range");
    }
    std::uint64_t mask = 0;
    for (int q : qubits) mask |= 1ULL << q;
    const std::uint64_t pattern = scatter_bits(outcome, qubits);

    double branch2 = 0.0;
    for (std::uint64_t s = 0; s < state.dim(); ++s) {
        if ((s & mask) == pattern) branch2 += std::norm(state.amplitudes[s]);
    }
    if (branch2 < kBranchTol) {
        throw std::runtime_error("collapse_onto: branch norm below 1e-14, "
                                 "outcome numerically impossible");
    }
    const double inv = 1.0 / std::sqrt(branch2);
    MeasurementResult result;
    result.outcome = outcome;
    result.probability = branch2;
    result.collapsed = state;
    for (std::uint64_t s = 0; s < state.dim(); ++s) {
        result.collapsed.amplitudes[s] =
            ((s & mask) == pattern) ? state.amplitudes[s] * inv : cxd{0.0, 0.0};
    }
    return result;
}

MeasurementResult measure_subregister(const StateVector& state, const std::vector<int>& qubits,
                                      SplitMix64& rng) {
    const std::vector<double> probs = marginal_probabilities(state, qubits);
    const std::size_t outcome = sample_index(probs, rng);
    MeasurementResult result = collapse_onto(state, qubits, outcome);
    result.probability = probs[outcome];
    return result;
}

DensityMatrix reduced_density_matrix(const StateVector& state, const std::vector<int>& keep) {
    validate_register(state.n_qubits, keep, "reduced_density_matrix");
    if (keep.size() >= static_cast<std::size_t>(state.n_qubits)) {
        throw std::invalid_argument("reduced_density_matrix: keep must be a proper subset");
    }
    const std::size_t keep_dim = std::size_t{1} << keep.size();
    const std::vector<int> rest = complement_qubits(state.n_qubits, keep);
    const std::size_t rest_dim = std::size_t{1} << rest.size();

    DensityMatrix rho;
    rho.entries = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(keep_dim),
                                         static_cast<Eigen::Index>(keep_dim));
    for (std::size_t r = 0; r < rest_dim; ++r) {
        const std::uint64_t base = scatter_bits(r, rest);
        for (std::size_t a = 0; a < keep_dim; ++a) {
            const cxd va = state.amplitudes[base | scatter_bits(a, keep)];
            if (va == cxd{0.0, 0.0}) continue;
            for (std::size_t b = 0; b < keep_dim; ++b) {
                const cxd vb = state.amplitudes[base | scatter_bits(b, keep)];
                rho.entries(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) +=
                    va * std::conj(vb);
            }
        }
    }
    return rho;
}

double norm(const StateVector& state) {
    double norm2 = 0.0;
    for (const cxd& a : state.amplitudes) norm2 += std::norm(a);
    return std::sqrt(norm2);
}

cxd inner_product(const StateVector& a, const StateVector& b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("inner_product: dimension mismatch");
    }
    cxd acc{0.0, 0.0};
    for (std::size_t i = 0; i < a.dim(); ++i) {
        acc += std::conj(a.amplitudes[i]) * b.amplitudes[i];
    }
    return acc;
}

double fidelity_up_to_global_phase(const StateVector& a, const StateVector& b) {
    return std::abs(inner_product(a, b));
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("trace_distance: dimension mismatch");
    }
    Eigen::MatrixXcd diff = a.entries - b.entries;
    diff = (diff + diff.adjoint().eval()) / 2.0;  // enforce Hermiticity before eigensolve
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(diff);
    return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

}  // namespace qpt
