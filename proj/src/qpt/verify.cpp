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

#include "qpt/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "qpt/experiments.hpp"
#include "qpt/hamiltonian.hpp"
#include "qpt/initializer.hpp"
#include "qpt/partial_phase.hpp"
#include "qpt/protocol.hpp"

namespace qpt {
namespace verify {

namespace {

std::string bound_detail(const char* label, double worst, double bound) {
    std::ostringstream out;
    out << label << " " << worst << " (bound " << bound << ")";
    return out.str();
}

CheckResult bounded_check(const std::string& name, double worst, double bound) {
    return CheckResult{name, worst <= bound, bound_detail("worst", worst, bound)};
}

std::vector<int> full_register(int n) {
    std::vector<int> reg(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) reg[j] = j;
    return reg;
}

/// All nonempty subsets of {0, ..., n-1} as ascending qubit lists.
std::vector<std::vector<int>> all_subregisters(int n) {
    std::vector<std::vector<int>> subsets;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
        std::vector<int> qubits;
        for (int q = 0; q < n; ++q) {
            if (mask & (1ULL << q)) qubits.push_back(q);
        }
        subsets.push_back(std::move(qubits));
    }
    return subsets;
}

/// Independent dense simulation of one protocol cycle: build |psi>|0>,
/// run initialize / partial phase / uncompute, and return the composite
/// pre-measurement state.
StateVector dense_cycle_state(const StateVector& psi, const InitializerUnitary& u, double delta) {
    const int n = psi.n_qubits;
    const std::size_t reg_dim = psi.dim();
    StateVector composite;
    composite.n_qubits = 2 * n;
    composite.amplitudes.assign(reg_dim * reg_dim, cxd{0.0, 0.0});
    for (std::size_t x = 0; x < reg_dim; ++x) {
        composite.amplitudes[x * reg_dim] = psi.amplitudes[x];
    }
    const RegisterLayout layout = RegisterLayout::standard(n);
    composite = apply_initializer(composite, u, layout.ancilla_qubits, false);
    composite = apply_partial_phase_direct(composite, layout, delta);
    composite = apply_initializer(composite, u, layout.ancilla_qubits, true);
    return composite;
}

StateVector primary_of(const StateVector& collapsed_composite, std::uint64_t mu, int n) {
    const std::size_t reg_dim = std::size_t{1} << n;
    std::vector<cxd> amps(reg_dim);
    for (std::size_t x = 0; x < reg_dim; ++x) {
        amps[x] = collapsed_composite.amplitudes[x * reg_dim + mu];
    }
    return from_amplitudes(std::move(amps));
}

// ---- core suite -------------------------------------------------------------

SuiteReport core_suite(std::uint64_t seed) {
    SuiteReport report;
    report.suite = "core";
    SplitMix64 rng(derive_seed(seed, {1}));

    {
        double worst = 0.0;
        for (int trial = 0; trial < 50; ++trial) {
            const int n = 2 + static_cast<int>(rng() % 3);
            StateVector state = random_state(n, rng);
            const int target = static_cast<int>(rng() % n);
            Eigen::Matrix2cd h;
            h << 1, 1, 1, -1;
            h /= std::numbers::sqrt2;
            state = apply_gate(state, GateOp::single_qubit(h, target));
            const int control = (target + 1) % n;
            state = apply_gate(state, GateOp::cnot_control0(control, target));
            state = apply_gate(state, GateOp::multi_controlled_phase({target}, rng.uniform()));
            state = qft(state, full_register(n), trial % 2 == 0);
            worst = std::max(worst, std::abs(norm(state) - 1.0));
        }
        report.checks.push_back(bounded_check("norm preservation (gates + qft)", worst, 1e-12));
    }
    {
        double worst = 0.0;
        for (int trial = 0; trial < 100; ++trial) {
            const int n = 1 + static_cast<int>(rng() % 4);
            const StateVector state = random_state(n, rng);
            for (const std::vector<int>& qubits : all_subregisters(n)) {
                const std::vector<double> probs = marginal_probabilities(state, qubits);
                double total = 0.0;
                for (double p : probs) total += p;
                worst = std::max(worst, std::abs(total - 1.0));
            }
        }
        report.checks.push_back(bounded_check("marginal probabilities sum to 1", worst, 1e-12));
    }
    {
        bool deterministic = true;
        const StateVector state = random_state(3, rng);
        const std::vector<int> qubits{0, 2};
        for (int run = 0; run < 5 && deterministic; ++run) {
            SplitMix64 rng_a(4242);
            SplitMix64 rng_b(4242);
            for (int shot = 0; shot < 200; ++shot) {
                const MeasurementResult a = measure_subregister(state, qubits, rng_a);
                const MeasurementResult b = measure_subregister(state, qubits, rng_b);
                if (a.outcome != b.outcome) {
                    deterministic = false;
                    break;
                }
            }
        }
        report.checks.push_back(
            CheckResult{"measurement deterministic under fixed seed", deterministic,
                        deterministic ? "identical outcome sequences" : "sequences diverged"});
    }
    {
        double worst_eig_low = 0.0, worst_eig_high = 0.0, worst_trace = 0.0;
        for (int trial = 0; trial < 30; ++trial) {
            const int n = 2 + static_cast<int>(rng() % 3);
            const StateVector state = random_state(n, rng);
            const std::vector<std::vector<int>> subsets = all_subregisters(n);
            const std::vector<int>& keep = subsets[rng() % (subsets.size() - 1)];  // proper subset
            const DensityMatrix rho = reduced_density_matrix(state, keep);
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho.entries);
            worst_eig_low = std::min(worst_eig_low, solver.eigenvalues().minCoeff());
            worst_eig_high = std::max(worst_eig_high, solver.eigenvalues().maxCoeff() - 1.0);
            worst_trace = std::max(worst_trace, std::abs(rho.entries.trace().real() - 1.0));
        }
        const bool ok = worst_eig_low >= -1e-10 && worst_eig_high <= 1e-10 && worst_trace <= 1e-12;
        std::ostringstream detail;
        detail << "min eig " << worst_eig_low << ", max eig-1 " << worst_eig_high << ", trace dev "
               << worst_trace;
        report.checks.push_back(
            CheckResult{"reduced density matrix spectrum and trace", ok, detail.str()});
    }
    {
        double worst = 0.0;
        for (int n = 1; n <= 3; ++n) {
            const std::size_t dim = std::size_t{1} << n;
            for (std::uint64_t k = 0; k < dim; ++k) {
                const StateVector image = qft(basis_state(n, k), full_register(n), false);
                for (std::size_t j = 0; j < dim; ++j) {
                    const cxd expected =
                        std::polar(1.0 / std::sqrt(static_cast<double>(dim)),
                                   2.0 * std::numbers::pi * static_cast<double>(j * k) /
                                       static_cast<double>(dim));
                    worst = std::max(worst, std::abs(image.amplitudes[j] - expected));
                }
            }
        }
        report.checks.push_back(bounded_check("qft equals dense DFT matrix", worst, 1e-12));
    }
    return report;
}

// ---- partial-phase suite ----------------------------------------------------

SuiteReport partial_phase_suite(std::uint64_t seed) {
    SuiteReport report;
    report.suite = "partial-phase";
    SplitMix64 rng(derive_seed(seed, {2}));

    {
        double worst = 0.0;
        bool counts_ok = true;
        for (int n = 1; n <= 3; ++n) {
            counts_ok = counts_ok &&
                        build_partial_phase_circuit(n, 0.1).gates.size() ==
                            2 * static_cast<std::size_t>(n) + 1;
            for (int trial = 0; trial < 20; ++trial) {
                const double delta = -8.0 + 16.0 * rng.uniform();
                const Eigen::MatrixXcd direct = dense_operator(n, delta, DenseSource::Direct);
                const Eigen::MatrixXcd circuit = dense_operator(n, delta, DenseSource::Circuit);
                worst = std::max(worst, (direct - circuit).cwiseAbs().maxCoeff());
            }
        }
        CheckResult check = bounded_check("circuit decomposition equals direct form", worst, 1e-12);
        check.passed = check.passed && counts_ok;
        if (!counts_ok) check.detail += "; gate count != 2n+1";
        report.checks.push_back(check);
    }
    {
        double worst = 0.0;
        for (int trial = 0; trial < 20; ++trial) {
            const int n = 1 + static_cast<int>(rng() % 3);
            const RegisterLayout layout = RegisterLayout::standard(n);
            const StateVector state = random_state(2 * n, rng);
            const double d1 = -8.0 + 16.0 * rng.uniform();
            const double d2 = -8.0 + 16.0 * rng.uniform();
            const StateVector two_step =
                apply_partial_phase_direct(apply_partial_phase_direct(state, layout, d1), layout, d2);
            const StateVector one_step = apply_partial_phase_direct(state, layout, d1 + d2);
            double dev = 0.0;
            for (std::size_t i = 0; i < state.dim(); ++i) {
                dev = std::max(dev, std::abs(two_step.amplitudes[i] - one_step.amplitudes[i]));
            }
            worst = std::max(worst, dev);
        }
        report.checks.push_back(bounded_check("phase steps compose additively", worst, 1e-12));
    }
    {
        double worst = 0.0;
        for (int n = 1; n <= 2; ++n) {
            const std::size_t reg_dim = std::size_t{1} << n;
            const double delta = -8.0 + 16.0 * rng.uniform();
            const Eigen::MatrixXcd u = dense_operator(n, delta, DenseSource::Direct);
            Eigen::MatrixXcd swapped(u.rows(), u.cols());
            for (std::size_t row = 0; row < reg_dim * reg_dim; ++row) {
                const std::size_t swapped_row = (row % reg_dim) * reg_dim + row / reg_dim;
                for (std::size_t col = 0; col < reg_dim * reg_dim; ++col) {
                    const std::size_t swapped_col = (col % reg_dim) * reg_dim + col / reg_dim;
                    swapped(static_cast<Eigen::Index>(swapped_row),
                            static_cast<Eigen::Index>(swapped_col)) =
                        u(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
                }
            }
            worst = std::max(worst, (swapped - u).cwiseAbs().maxCoeff());
        }
        report.checks.push_back(bounded_check("register-swap symmetry", worst, 1e-12));
    }
    {
        double worst = 0.0;
        for (int trial = 0; trial < 20; ++trial) {
            const int n = 1 + static_cast<int>(rng() % 3);
            const double delta = -8.0 + 16.0 * rng.uniform();
            const Eigen::MatrixXcd u = dense_operator(n, delta, DenseSource::Direct);
            const std::size_t dim = std::size_t{1} << (2 * n);
            const double distance =
                (u - Eigen::MatrixXcd::Identity(static_cast<Eigen::Index>(dim),
                                                static_cast<Eigen::Index>(dim)))
                    .cwiseAbs()
                    .maxCoeff();
            worst = std::max(worst, std::abs(distance - 2.0 * std::abs(std::sin(delta / 2.0))));
        }
        report.checks.push_back(
            bounded_check("max distance from identity is 2|sin(delta/2)|", worst, 1e-12));
    }
    {
        double worst = 0.0;
        for (int n = 1; n <= 3; ++n) {
            for (DenseSource source : {DenseSource::Direct, DenseSource::Circuit}) {
                const double delta = -8.0 + 16.0 * rng.uniform();
                const Eigen::MatrixXcd u = dense_operator(n, delta, source);
                const Eigen::MatrixXcd gram = u.adjoint() * u;
                worst = std::max(
                    worst, (gram - Eigen::MatrixXcd::Identity(u.rows(), u.cols()))
                               .cwiseAbs()
                               .maxCoeff());
            }
        }
        report.checks.push_back(bounded_check("dense operators unitary", worst, 1e-12));
    }
    return report;
}

// ---- protocol suite ---------------------------------------------------------

SuiteReport protocol_suite(std::uint64_t seed) {
    SuiteReport report;
    report.suite = "protocol";
    SplitMix64 rng(derive_seed(seed, {3}));

    {
        double worst_prob = 0.0;
        double worst_state = 0.0;
        for (int trial = 0; trial < 100; ++trial) {
            const int n = 1 + static_cast<int>(rng() % 3);
            const StateVector psi = random_state(n, rng);
            const StateVector phi = random_state(n, rng);
            const double delta = -8.0 + 16.0 * rng.uniform();
            const Completion completion =
                trial % 2 == 0 ? Completion::Householder : Completion::GramSchmidt;
            const InitializerUnitary u = make_initializer(phi.amplitudes, completion);

            const StateVector composite = dense_cycle_state(psi, u, delta);
            const std::vector<double> marginal =
                marginal_probabilities(composite, RegisterLayout::standard(n).ancilla_qubits);
            const OutcomeDistribution dist =
                exact_outcome_distribution(psi, phi, delta, completion);
            for (std::size_t mu = 0; mu < marginal.size(); ++mu) {
                worst_prob = std::max(worst_prob,
                                      std::abs(marginal[mu] - dist.probabilities[mu]));
            }

            for (std::size_t mu = 0; mu < marginal.size(); ++mu) {
                if (dist.probabilities[mu] < 1e-12) continue;
                const MeasurementResult m = collapse_onto(
                    composite, RegisterLayout::standard(n).ancilla_qubits, mu);
                const StateVector simulated = primary_of(m.collapsed, mu, n);
                const StateVector predicted =
                    mu == 0 ? exact_postselected_state(psi, phi, delta)
                            : exact_failure_state(psi, phi, delta, mu, completion);
                worst_state = std::max(
                    worst_state, 1.0 - fidelity_up_to_global_phase(simulated, predicted));
            }
        }
        std::ostringstream detail;
        detail << "worst probability dev " << worst_prob << ", worst state infidelity "
               << worst_state;
        report.checks.push_back(CheckResult{"closed-form outcomes match dense cycle simulation",
                                            worst_prob <= 1e-12 && worst_state <= 1e-10,
                                            detail.str()});
    }
    report.checks.push_back(check_success_lower_bound(
        [](const StateVector& psi, const StateVector& phi, double delta) {
            return exact_success_probability(psi, phi, delta);
        },
        1000, derive_seed(seed, {31})));
    {
        double worst = 0.0;
        for (int trial = 0; trial < 50; ++trial) {
            const int n = 1 + static_cast<int>(rng() % 3);
            const StateVector psi = random_state(n, rng);
            const StateVector phi = random_state(n, rng);
            const double delta = -8.0 + 16.0 * rng.uniform();
            const OutcomeDistribution household =
                exact_outcome_distribution(psi, phi, delta, Completion::Householder);
            const OutcomeDistribution gram =
                exact_outcome_distribution(psi, phi, delta, Completion::GramSchmidt);
            worst = std::max(worst,
                             std::abs(household.probabilities[0] - gram.probabilities[0]));
            const std::vector<int> ancilla = RegisterLayout::standard(n).ancilla_qubits;
            const StateVector composite_h = dense_cycle_state(
                psi, make_initializer(phi.amplitudes, Completion::Householder), delta);
            const StateVector composite_g = dense_cycle_state(
                psi, make_initializer(phi.amplitudes, Completion::GramSchmidt), delta);
            const StateVector post_h =
                primary_of(collapse_onto(composite_h, ancilla, 0).collapsed, 0, n);
            const StateVector post_g =
                primary_of(collapse_onto(composite_g, ancilla, 0).collapsed, 0, n);
            worst = std::max(worst, 1.0 - fidelity_up_to_global_phase(post_h, post_g));
        }
        report.checks.push_back(
            bounded_check("success branch independent of completion", worst, 1e-12));
    }
    {
        double worst_margin = -1e300;  // positive means violation
        for (int trial = 0; trial < 50; ++trial) {
            const int n = 1 + static_cast<int>(rng() % 3);
            const StateVector psi = random_state(n, rng);
            const StateVector phi = random_state(n, rng);
            const double delta = rng.uniform() * 1e-3;
            const StateVector post = exact_postselected_state(psi, phi, delta);
            StateVector ideal = psi;
            for (std::size_t x = 0; x < psi.dim(); ++x) {
                ideal.amplitudes[x] *= std::polar(1.0, delta * std::norm(phi.amplitudes[x]));
            }
            const double fidelity = fidelity_up_to_global_phase(post, ideal);
            worst_margin = std::max(worst_margin, (1.0 - 10.0 * delta * delta) - fidelity);
        }
        report.checks.push_back(CheckResult{
            "small-delta cycles approximate the pure phase map", worst_margin <= 0.0,
            bound_detail("worst margin", worst_margin, 0.0)});
    }
    {
        double worst = 0.0;
        for (int trial = 0; trial < 50; ++trial) {
            const int n = 1 + static_cast<int>(rng() % 3);
            const StateVector psi = random_state(n, rng);
            const StateVector phi = random_state(n, rng);
            const double delta = -8.0 + 16.0 * rng.uniform();
            const Completion completion =
                trial % 2 == 0 ? Completion::Householder : Completion::GramSchmidt;
            const OutcomeDistribution dist =
                exact_outcome_distribution(psi, phi, delta, completion);
            double total = 0.0;
            for (double p : dist.probabilities) total += p;
            worst = std::max(worst, std::abs(total - 1.0));
        }
        report.checks.push_back(bounded_check("outcome probabilities sum to 1", worst, 1e-12));
    }
    return report;
}

// ---- hamiltonian suite ------------------------------------------------------

SuiteReport hamiltonian_suite(std::uint64_t seed) {
    SuiteReport report;
    report.suite = "hamiltonian";
    SplitMix64 rng(derive_seed(seed, {4}));

    StateVector packet;
    {
        const std::size_t dim = 8;
        std::vector<cxd> amps(dim);
        for (std::size_t x = 0; x < dim; ++x) {
            const double dx = static_cast<double>(x) - 3.5;
            amps[x] = std::exp(-dx * dx / 4.0);
        }
        packet = from_amplitudes(std::move(amps));
    }

    {
        double worst = 0.0;
        for (int trial = 0; trial < 10; ++trial) {
            const HamiltonianSpec spec = harmonic_oscillator_spec(3, 1.0, 1.0, 4);
            const StateVector state = random_state(3, rng);
            worst = std::max(worst, std::abs(norm(evolve(state, spec, PhaseMode::ExactPhase)) - 1.0));
        }
        const HamiltonianSpec spec = harmonic_oscillator_spec(3, 1.0, 0.5, 2);
        worst = std::max(worst,
                         std::abs(norm(evolve(packet, spec, PhaseMode::ProtocolPhase)) - 1.0));
        report.checks.push_back(bounded_check("norm preserved through evolution", worst, 1e-12));
    }
    {
        HamiltonianSpec spec = harmonic_oscillator_spec(3, 1.0, 1.3, 1);
        std::fill(spec.kinetic.begin(), spec.kinetic.end(), 0.0);
        double worst = 0.0;
        StateVector reference;
        for (int steps : {1, 2, 5, 9}) {
            spec.steps = steps;
            const StateVector evolved = evolve(packet, spec, PhaseMode::ExactPhase);
            if (steps == 1) {
                reference = evolved;
            } else {
                worst = std::max(worst, 1.0 - fidelity_up_to_global_phase(reference, evolved));
            }
        }
        report.checks.push_back(
            bounded_check("pure potential evolution independent of step count", worst, 1e-12));
    }
    {
        const double t = 1.0;
        const StateVector exact = dense_evolution(packet, harmonic_oscillator_spec(3, 1.0, t, 1));
        double previous = 2.0;
        bool monotone = true;
        std::ostringstream detail;
        detail << "deficits";
        for (int steps : {1, 2, 4, 8, 16}) {
            const HamiltonianSpec spec = harmonic_oscillator_spec(3, 1.0, t, steps);
            const StateVector approx = evolve(packet, spec, PhaseMode::ExactPhase);
            const double deficit = 1.0 - fidelity_up_to_global_phase(exact, approx);
            detail << " " << deficit;
            if (deficit > previous + 1e-15) monotone = false;
            previous = deficit;
        }
        report.checks.push_back(CheckResult{
            "split-step error non-increasing in step count", monotone, detail.str()});
    }
    return report;
}

}  // namespace

bool SuiteReport::passed() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const CheckResult& check) { return check.passed; });
}

StateVector random_state(int n_qubits, SplitMix64& rng) {
    const std::size_t dim = std::size_t{1} << n_qubits;
    std::vector<cxd> amps(dim);
    for (cxd& a : amps) a = cxd{rng.normal(), rng.normal()};
    return from_amplitudes(std::move(amps));
}

CheckResult check_success_lower_bound(const SuccessProbabilityFn& probability_fn, int instances,
                                      std::uint64_t seed) {
    SplitMix64 rng(seed);
    double worst_margin = -1e300;  // positive means violation
    for (int trial = 0; trial < instances; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 3);
        const StateVector psi = random_state(n, rng);
        const StateVector phi = random_state(n, rng);
        const double delta = -8.0 + 16.0 * rng.uniform();
        const double bound = std::cos(delta / 2.0) * std::cos(delta / 2.0) - 1e-12;
        worst_margin = std::max(worst_margin, bound - probability_fn(psi, phi, delta));
    }
    return CheckResult{"success probability >= cos^2(delta/2)", worst_margin <= 0.0,
                       bound_detail("worst margin", worst_margin, 0.0)};
}

std::vector<SuiteReport> run(const std::string& suite, std::uint64_t seed) {
    std::vector<SuiteReport> reports;
    const bool all = suite == "all";
    if (all || suite == "core") reports.push_back(core_suite(seed));
    if (all || suite == "partial-phase") reports.push_back(partial_phase_suite(seed));
    if (all || suite == "protocol") reports.push_back(protocol_suite(seed));
    if (all || suite == "hamiltonian") reports.push_back(hamiltonian_suite(seed));
    if (reports.empty()) {
        throw std::invalid_argument("unknown verify suite: " + suite +
                                    " (expected core, partial-phase, protocol, hamiltonian or all)");
    }
    return reports;
}

bool all_passed(const std::vector<SuiteReport>& reports) {
    return std::all_of(reports.begin(), reports.end(),
                       [](const SuiteReport& report) { return report.passed(); });
}

std::string to_json(const std::vector<SuiteReport>& reports) {
    nlohmann::json doc;
    doc["passed"] = all_passed(reports);
    doc["suites"] = nlohmann::json::array();
    for (const SuiteReport& report : reports) {
        nlohmann::json suite;
        suite["suite"] = report.suite;
        suite["passed"] = report.passed();
        suite["checks"] = nlohmann::json::array();
        for (const CheckResult& check : report.checks) {
            suite["checks"].push_back(
                {{"name", check.name}, {"passed", check.passed}, {"detail", check.detail}});
        }
        doc["suites"].push_back(std::move(suite));
    }
    return doc.dump(2) + "\n";
}

}  // namespace verify
}  // namespace qpt
