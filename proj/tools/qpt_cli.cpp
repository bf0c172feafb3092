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

// Experiment front end. All functionality goes through the C API in
// qpt/qpt.h; this translation unit only parses flags and prints summaries.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O error.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include <qpt/qpt.h>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

int exit_code_for(qpt_status status) {
    switch (status) {
        case QPT_OK: return kExitOk;
        case QPT_ERROR_IO: return kExitIo;
        default: return kExitUsage;
    }
}

int fail(qpt_status status) {
    std::cerr << "error: " << qpt_last_error() << "\n";
    return exit_code_for(status);
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("QPT_SEED"); env != nullptr && *env != '\0') {
        char* end = nullptr;
        const unsigned long long parsed = std::strtoull(env, &end, 10);
        if (end != nullptr && *end == '\0') return parsed;
        std::cerr << "warning: ignoring non-numeric QPT_SEED\n";
    }
    return 12345;
}

int parse_format(const std::string& name, qpt_format* out) {
    if (name == "csv") {
        *out = QPT_FORMAT_CSV;
        return kExitOk;
    }
    if (name == "json") {
        *out = QPT_FORMAT_JSON;
        return kExitOk;
    }
    std::cerr << "error: unknown format '" << name << "'\n";
    return kExitUsage;
}

int parse_completion(const std::string& name, int* out) {
    if (name == "householder") {
        *out = QPT_COMPLETION_HOUSEHOLDER;
        return kExitOk;
    }
    if (name == "gram-schmidt") {
        *out = QPT_COMPLETION_GRAM_SCHMIDT;
        return kExitOk;
    }
    std::cerr << "error: unknown completion '" << name << "'\n";
    return kExitUsage;
}

void print_fit(const qpt_fit_result& fit) {
    std::printf("fit: a = %.6g +/- %.2g, b = %.6g +/- %.2g, c = %.6g +/- %.2g\n", fit.a,
                fit.stderr_a, fit.b, fit.stderr_b, fit.c, fit.stderr_c);
    std::printf("     residual norm %.3g, %s after %d iterations\n", fit.residual_norm,
                fit.converged ? "converged" : "NOT converged", fit.iterations);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qpt: programmable phase-transformation protocol experiments"};
    app.require_subcommand(1);
    app.set_version_flag("--version", qpt_version());

    std::string format_name = "csv";
    std::string completion_name = "householder";
    std::string output_path;
    std::string mode_name;
    int qubits = 3;
    double delta = 0.05;
    double alpha = 0.0;
    int cycles = 100;
    int shots = 1000;
    int repetitions = 100;
    std::optional<std::uint64_t> seed;

    // demo-quadratic ---------------------------------------------------------
    CLI::App* demo = app.add_subcommand(
        "demo-quadratic", "Apply a quadratic phase profile to the uniform state and report "
                          "magnitudes and phases per basis state");
    demo->add_option("--qubits", qubits, "register size n")->capture_default_str();
    CLI::Option* demo_delta =
        demo->add_option("--delta", delta, "per-cycle phase step")->capture_default_str();
    CLI::Option* demo_alpha =
        demo->add_option("--alpha", alpha, "total protocol coefficient (delta = alpha / cycles)");
    demo_alpha->excludes(demo_delta);
    demo->add_option("--cycles", cycles, "number of protocol cycles m")->capture_default_str();
    demo->add_option("--format", format_name, "csv or json")->capture_default_str();
    demo->add_option("--output", output_path, "report path")->required();

    // sweep-success ----------------------------------------------------------
    double delta_min = -8.0, delta_max = 8.0;
    int delta_points = 65;
    CLI::App* sweep = app.add_subcommand(
        "sweep-success", "Estimate the single-cycle success probability over a delta grid and "
                         "fit 1 - a sin^2(b delta/2 - c)");
    sweep->add_option("--qubits", qubits, "register size n")->capture_default_str();
    sweep->add_option("--delta-min", delta_min, "grid start")->capture_default_str();
    sweep->add_option("--delta-max", delta_max, "grid end")->capture_default_str();
    sweep->add_option("--delta-points", delta_points, "grid size")->capture_default_str();
    sweep->add_option("--shots", shots, "cycles per estimate")->capture_default_str();
    sweep->add_option("--repetitions", repetitions, "estimates per delta")->capture_default_str();
    sweep->add_option("--seed", seed, "root RNG seed (default: QPT_SEED or 12345)");
    sweep->add_option("--mode", mode_name, "sampled or exact")->default_str("sampled");
    sweep->add_option("--completion", completion_name, "householder or gram-schmidt")
        ->capture_default_str();
    sweep->add_option("--format", format_name, "csv or json")->capture_default_str();
    sweep->add_option("--output", output_path, "report path")->required();

    // fit ----------------------------------------------------------------------
    std::string input_path;
    CLI::App* fit_cmd = app.add_subcommand(
        "fit", "Fit the success-probability model to a sweep CSV (delta, p_mean, p_std, p_exact)");
    fit_cmd->add_option("--input", input_path, "sweep CSV path")->required();
    fit_cmd->add_option("--format", format_name, "csv or json")->capture_default_str();
    fit_cmd->add_option("--output", output_path, "optional fit document path");

    // trotter --------------------------------------------------------------------
    std::string spec_path;
    std::string state_path;
    double max_cycle_delta = 0.01;
    CLI::App* trotter = app.add_subcommand(
        "trotter", "Split-step evolution under a Hamiltonian spec file (JSON: n, potential, "
                   "kinetic, t, m)");
    trotter->add_option("--spec", spec_path, "Hamiltonian spec path")->required();
    trotter->add_option("--state", state_path,
                        "initial amplitude-vector file (default: centered Gaussian)");
    trotter->add_option("--mode", mode_name, "exact or protocol")->default_str("exact");
    trotter->add_option("--max-cycle-delta", max_cycle_delta,
                        "per-cycle phase cap in protocol mode")
        ->capture_default_str();
    trotter->add_option("--output", output_path, "final state path")->required();

    // verify -----------------------------------------------------------------------
    std::string suite = "all";
    CLI::App* verify = app.add_subcommand("verify", "Run the module property suites");
    verify->add_option("suite", suite, "core, partial-phase, protocol, hamiltonian or all")
        ->capture_default_str();
    verify->add_option("--output", output_path, "optional JSON summary path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    qpt_format format = QPT_FORMAT_CSV;
    if (int rc = parse_format(format_name, &format); rc != kExitOk) return rc;
    int completion = QPT_COMPLETION_HOUSEHOLDER;
    if (int rc = parse_completion(completion_name, &completion); rc != kExitOk) return rc;

    if (demo->parsed()) {
        if (demo_alpha->count() > 0) {
            if (cycles < 1) {
                std::cerr << "error: --alpha needs --cycles >= 1\n";
                return kExitUsage;
            }
            delta = alpha / cycles;
        }
        qpt_demo_config config{qubits, delta, cycles};
        qpt_demo_summary summary{};
        const qpt_status status = qpt_demo_quadratic(&config, format, output_path.c_str(), &summary);
        if (status != QPT_OK) return fail(status);
        std::printf("quadratic-phase demo: n = %d, delta = %g, cycles = %d\n", qubits, delta,
                    cycles);
        std::printf("alpha = %.10g, fidelity vs ideal profile = %.12f\n", summary.alpha,
                    summary.fidelity_vs_ideal);
        std::printf("max deviation vs closed-form map = %.3g\n",
                    summary.max_deviation_vs_exact_map);
        std::printf("success probability of the full run = %.12f\n",
                    summary.total_success_probability);
        std::printf("report written to %s\n", output_path.c_str());
        return kExitOk;
    }

    if (sweep->parsed()) {
        if (mode_name.empty()) mode_name = "sampled";
        int mode = 0;
        if (mode_name == "sampled") {
            mode = 0;
        } else if (mode_name == "exact") {
            mode = 1;
        } else {
            std::cerr << "error: unknown mode '" << mode_name << "' (expected sampled or exact)\n";
            return kExitUsage;
        }
        qpt_sweep_config config{};
        config.n_qubits = qubits;
        config.delta_min = delta_min;
        config.delta_max = delta_max;
        config.delta_points = delta_points;
        config.n_shot = shots;
        config.n_repetition = repetitions;
        config.seed = seed.value_or(default_seed());
        config.mode = mode;
        config.completion = completion;
        qpt_fit_result fit{};
        const qpt_status status = qpt_sweep_success(&config, format, output_path.c_str(), &fit);
        if (status != QPT_OK) return fail(status);
        std::printf("sweep: %d points in [%g, %g], %d shots x %d repetitions, seed %llu, %s\n",
                    delta_points, delta_min, delta_max, shots, repetitions,
                    static_cast<unsigned long long>(config.seed), mode_name.c_str());
        print_fit(fit);
        std::printf("report written to %s\n", output_path.c_str());
        return kExitOk;
    }

    if (fit_cmd->parsed()) {
        qpt_fit_result fit{};
        const qpt_status status = qpt_fit_sweep_csv(
            input_path.c_str(), format, output_path.empty() ? nullptr : output_path.c_str(), &fit);
        if (status != QPT_OK) return fail(status);
        print_fit(fit);
        if (!output_path.empty()) std::printf("fit written to %s\n", output_path.c_str());
        return kExitOk;
    }

    if (trotter->parsed()) {
        if (mode_name.empty()) mode_name = "exact";
        int phase_mode = QPT_PHASE_EXACT;
        if (mode_name == "protocol") {
            phase_mode = QPT_PHASE_PROTOCOL;
        } else if (mode_name != "exact") {
            std::cerr << "error: unknown mode '" << mode_name
                      << "' (expected exact or protocol)\n";
            return kExitUsage;
        }
        double fidelity = 0.0;
        const qpt_status status =
            qpt_trotter_evolve(spec_path.c_str(), state_path.empty() ? nullptr : state_path.c_str(),
                               phase_mode, max_cycle_delta, output_path.c_str(), &fidelity);
        if (status != QPT_OK) return fail(status);
        std::printf("split-step evolution (%s phases) written to %s\n", mode_name.c_str(),
                    output_path.c_str());
        std::printf("fidelity vs dense matrix exponential = %.12f\n", fidelity);
        return kExitOk;
    }

    if (verify->parsed()) {
        int n_failed = 0;
        const qpt_status status =
            qpt_verify(suite.c_str(), output_path.empty() ? nullptr : output_path.c_str(),
                       /*verbose=*/1, &n_failed);
        if (status != QPT_OK) return fail(status);
        if (n_failed == 0) {
            std::printf("verify %s: all checks passed\n", suite.c_str());
            return kExitOk;
        }
        std::printf("verify %s: %d check(s) FAILED\n", suite.c_str(), n_failed);
        return kExitVerificationFailure;
    }

    return kExitUsage;
}
