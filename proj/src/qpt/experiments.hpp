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

#ifndef QPT_EXPERIMENTS_HPP
#define QPT_EXPERIMENTS_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qpt/fitting.hpp"
#include "qpt/initializer.hpp"
#include "qpt/statevector.hpp"

namespace qpt {

enum class ReportFormat { Csv, Json };

/// Homogeneous superposition, amplitude 1/sqrt(N) everywhere.
StateVector uniform_state(int n_qubits);

/// Linearly growing amplitude x / sqrt(A), A = sum of x^2 over the grid.
StateVector linear_state(int n_qubits);

// -- quadratic-phase demo -----------------------------------------------------

struct DemoConfig {
    int n_qubits = 3;
    double delta = 0.05;
    int cycles = 100;
};

struct DemoRow {
    std::uint64_t x = 0;
    double magnitude = 0.0;
    double relative_phase = 0.0;  // phase(x) - phase(0), wrapped to (-pi, pi]
    double unwrapped_phase = 0.0;
    double ideal_phase = 0.0;  // alpha x^2 with alpha = cycles * delta / A
    double deviation = 0.0;    // unwrapped - ideal
};

struct DemoReport {
    DemoConfig config;
    double alpha = 0.0;
    std::vector<DemoRow> rows;
    double fidelity_vs_ideal = 0.0;
    /// Largest |amplitude difference| between the simulated (postselected)
    /// final state and the per-cycle closed-form map iterated cycles times,
    /// after aligning global phase.
    double max_deviation_vs_exact_map = 0.0;
    double total_success_probability = 0.0;
};

/// Runs the protocol in postselected mode on the uniform state with the
/// linear software state, producing the quadratic phase profile.
DemoReport demo_quadratic(const DemoConfig& config);

void export_demo(const DemoReport& report, ReportFormat format, const std::string& path);

// -- success-probability sweep ------------------------------------------------

enum class SweepMode { Sampled, Exact };

struct SweepConfig {
    int n_qubits = 3;
    double delta_min = -8.0;
    double delta_max = 8.0;
    int delta_points = 65;
    int n_shot = 1000;
    int n_repetition = 100;
    std::uint64_t seed = 0;
    SweepMode mode = SweepMode::Sampled;
    Completion completion = Completion::Householder;
};

struct SweepRow {
    double delta = 0.0;
    double p_mean = 0.0;
    double p_std = 0.0;  // sample standard deviation across repetitions
    double p_exact = 0.0;
};

struct SweepReport {
    SweepConfig config;
    std::vector<SweepRow> rows;
    FitParams fit;  // fit of p_mean over delta, weighted by 1/p_std^2
    /// Scatter of per-repetition fits, as standard error of the mean; an
    /// alternative uncertainty estimate reported next to the fit covariance.
    std::optional<std::array<double, 3>> repetition_scatter_stderr;
    /// Rows where |p_mean - p_exact| > 5 p_std / sqrt(n_repetition) + 1e-9;
    /// reported, not fatal (5-sigma excursions happen).
    std::vector<int> flagged_rows;
    double wall_time_seconds = 0.0;
};

/// Estimates single-cycle success probability over a delta grid. Each
/// repetition counts successes over n_shot Bernoulli draws from the exact
/// per-delta success probability, with one derived RNG stream per
/// (delta index, repetition, shot), so results do not depend on execution
/// order. Exact mode records the closed form with zero spread.
SweepReport sweep_success(const SweepConfig& config);

void export_sweep(const SweepReport& report, ReportFormat format, const std::string& path);

/// Reads rows back from a sweep CSV (delta, p_mean, p_std, p_exact).
std::vector<SweepRow> read_sweep_csv(const std::string& path);

/// The weight recipe shared by sweep_success and the CSV fitting path:
/// 1 / max(p_std, 1e-6)^2.
std::vector<double> fit_weights_from_rows(const std::vector<SweepRow>& rows);

/// Fits the success-probability model to sweep rows (p_mean over delta).
FitParams fit_sweep_rows(const std::vector<SweepRow>& rows);

}  // namespace qpt

#endif  // QPT_EXPERIMENTS_HPP
