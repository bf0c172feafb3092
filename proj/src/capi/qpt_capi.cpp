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

#include "qpt/qpt.h"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <stdexcept>
#include <string>
#include <vector>

#include "qpt/experiments.hpp"
#include "qpt/fitting.hpp"
#include "qpt/hamiltonian.hpp"
#include "qpt/io.hpp"
#include "qpt/protocol.hpp"
#include "qpt/statevector.hpp"
#include "qpt/verify.hpp"

struct qpt_state {
    qpt::StateVector value;
};

namespace {

thread_local std::string g_last_error;

void set_error(const char* message) { g_last_error = message; }

qpt_status classify(const std::exception& e) {
    set_error(e.what());
    if (dynamic_cast<const qpt::IoError*>(&e) != nullptr) return QPT_ERROR_IO;
    if (dynamic_cast<const std::out_of_range*>(&e) != nullptr) return QPT_ERROR_INVALID_ARGUMENT;
    if (dynamic_cast<const std::invalid_argument*>(&e) != nullptr) {
        return std::strstr(e.what(), "dimension") != nullptr ||
                       std::strstr(e.what(), "dimensions differ") != nullptr
                   ? QPT_ERROR_DIMENSION_MISMATCH
                   : QPT_ERROR_INVALID_ARGUMENT;
    }
    if (dynamic_cast<const std::runtime_error*>(&e) != nullptr) return QPT_ERROR_NUMERICAL;
    return QPT_ERROR_INTERNAL;
}

template <typename Fn>
qpt_status guarded(Fn&& fn) {
    try {
        fn();
        return QPT_OK;
    } catch (const std::exception& e) {
        return classify(e);
    } catch (...) {
        set_error("unknown error");
        return QPT_ERROR_INTERNAL;
    }
}

qpt_status require(bool condition, const char* message) {
    if (condition) return QPT_OK;
    set_error(message);
    return QPT_ERROR_INVALID_ARGUMENT;
}

qpt::ProtocolConfig convert(const qpt_protocol_config& config) {
    const qpt::ProtocolMode mode = config.mode == QPT_MODE_SAMPLED ? qpt::ProtocolMode::Sampled
                                   : config.mode == QPT_MODE_POSTSELECTED
                                       ? qpt::ProtocolMode::Postselected
                                       : qpt::ProtocolMode::Exact;
    if (config.mode < 0 || config.mode > 2) {
        throw std::invalid_argument("protocol config: unknown mode");
    }
    if (config.completion < 0 || config.completion > 1) {
        throw std::invalid_argument("protocol config: unknown completion");
    }
    const qpt::Completion completion = config.completion == QPT_COMPLETION_HOUSEHOLDER
                                           ? qpt::Completion::Householder
                                           : qpt::Completion::GramSchmidt;
    return config.use_alpha != 0
               ? qpt::ProtocolConfig::from_alpha(config.alpha, config.cycles, mode, config.seed,
                                                 completion)
               : qpt::ProtocolConfig::from_delta(config.delta, config.cycles, mode, config.seed,
                                                 completion);
}

void fill_fit(const qpt::FitParams& fit, qpt_fit_result* out) {
    if (out == nullptr) return;
    out->a = fit.a;
    out->b = fit.b;
    out->c = fit.c;
    out->stderr_a = fit.stderr_a;
    out->stderr_b = fit.stderr_b;
    out->stderr_c = fit.stderr_c;
    out->residual_norm = fit.residual_norm;
    out->converged = fit.converged ? 1 : 0;
    out->iterations = fit.iterations;
}

std::string fit_document(const qpt::FitParams& fit) {
    std::string json = "{\n";
    const auto field = [&json](const char* name, double value, bool comma = true) {
        json += "  \"";
        json += name;
        json += "\": ";
        if (std::isfinite(value)) {
            char buffer[64];
            std::snprintf(buffer, sizeof(buffer), "%.17g", value);
            json += buffer;
        } else {
            json += "null";
        }
        if (comma) json += ",";
        json += "\n";
    };
    field("a", fit.a);
    field("b", fit.b);
    field("c", fit.c);
    field("stderr_a", fit.stderr_a);
    field("stderr_b", fit.stderr_b);
    field("stderr_c", fit.stderr_c);
    field("residual_norm", fit.residual_norm);
    json += "  \"converged\": ";
    json += fit.converged ? "true" : "false";
    json += ",\n";
    json += "  \"iterations\": " + std::to_string(fit.iterations) + "\n}\n";
    return json;
}

}  // namespace

extern "C" {

const char* qpt_version(void) { return "1.0.0"; }

const char* qpt_last_error(void) { return g_last_error.c_str(); }

qpt_status qpt_state_basis(int n_qubits, uint64_t index, qpt_state** out) {
    if (qpt_status s = require(out != nullptr, "out must not be NULL"); s != QPT_OK) return s;
    return guarded([&] { *out = new qpt_state{qpt::basis_state(n_qubits, index)}; });
}

qpt_status qpt_state_from_amplitudes(const double* interleaved, size_t n_amplitudes,
                                     qpt_state** out) {
    if (qpt_status s = require(out != nullptr && interleaved != nullptr,
                               "interleaved and out must not be NULL");
        s != QPT_OK) {
        return s;
    }
    return guarded([&] {
        std::vector<qpt::cxd> values(n_amplitudes);
        for (size_t i = 0; i < n_amplitudes; ++i) {
            values[i] = qpt::cxd{interleaved[2 * i], interleaved[2 * i + 1]};
        }
        *out = new qpt_state{qpt::from_amplitudes(std::move(values))};
    });
}

qpt_status qpt_state_load(const char* path, qpt_state** out) {
    if (qpt_status s = require(out != nullptr && path != nullptr, "path and out must not be NULL");
        s != QPT_OK) {
        return s;
    }
    return guarded([&] { *out = new qpt_state{qpt::load_amplitude_file(path)}; });
}

qpt_status qpt_state_save(const qpt_state* state, const char* path) {
    if (qpt_status s =
            require(state != nullptr && path != nullptr, "state and path must not be NULL");
        s != QPT_OK) {
        return s;
    }
    return guarded([&] { qpt::save_amplitude_file(state->value, path); });
}

void qpt_state_free(qpt_state* state) { delete state; }

int qpt_state_num_qubits(const qpt_state* state) {
    return state == nullptr ? 0 : state->value.n_qubits;
}

size_t qpt_state_dim(const qpt_state* state) {
    return state == nullptr ? 0 : state->value.dim();
}

qpt_status qpt_state_copy_amplitudes(const qpt_state* state, double* interleaved) {
    if (qpt_status s = require(state != nullptr && interleaved != nullptr,
                               "state and interleaved must not be NULL");
        s != QPT_OK) {
        return s;
    }
    for (size_t i = 0; i < state->value.dim(); ++i) {
        interleaved[2 * i] = state->value.amplitudes[i].real();
        interleaved[2 * i + 1] = state->value.amplitudes[i].imag();
    }
    return QPT_OK;
}

qpt_status qpt_state_fidelity(const qpt_state* a, const qpt_state* b, double* out) {
    if (qpt_status s = require(a != nullptr && b != nullptr && out != nullptr,
                               "a, b and out must not be NULL");
        s != QPT_OK) {
        return s;
    }
    return guarded([&] { *out = qpt::fidelity_up_to_global_phase(a->value, b->value); });
}

qpt_status qpt_state_qft(const qpt_state* state, int inverse, qpt_state** out) {
    if (qpt_status s =
            require(state != nullptr && out != nullptr, "state and out must not be NULL");
        s != QPT_OK) {
        return s;
    }
    return guarded([&] {
        std::vector<int> reg(static_cast<size_t>(state->value.n_qubits));
        for (int j = 0; j < state->value.n_qubits; ++j) reg[static_cast<size_t>(j)] = j;
        *out = new qpt_state{qpt::qft(state->value, reg, inverse != 0)};
    });
}

qpt_status qpt_protocol_run(const qpt_state* psi, const qpt_state* phi,
                            const qpt_protocol_config* config, qpt_state** final_state,
                            qpt_protocol_stats* stats) {
    if (qpt_status s = require(psi != nullptr && phi != nullptr && config != nullptr &&
                                   final_state != nullptr,
                               "psi, phi, config and final_state must not be NULL");
        s != QPT_OK) {
        return s;
    }
    return guarded([&] {
        const qpt::ProtocolResult result =
            qpt::run_protocol(psi->value, phi->value, convert(*config));
        *final_state = new qpt_state{result.final_state};
        if (stats != nullptr) {
            stats->cycles_run = result.cycles_run;
            stats->failed_at = result.failed_at ? *result.failed_at : -1;
            stats->total_success_probability = result.total_success_probability;
        }
    });
}

qpt_status qpt_protocol_run_to_file(const qpt_state* psi, const qpt_state* phi,
                                    const qpt_protocol_config* config, const char* path) {
    if (qpt_status s = require(psi != nullptr && phi != nullptr && config != nullptr &&
                                   path != nullptr,
                               "psi, phi, config and path must not be NULL");
        s != QPT_OK) {
        return s;
    }
    return guarded([&] {
        const qpt::ProtocolConfig native = convert(*config);
        const qpt::ProtocolResult result = qpt::run_protocol(psi->value, phi->value, native);
        qpt::save_protocol_result(result, native, path);
    });
}

qpt_status qpt_exact_success_probability(const qpt_state* psi, const qpt_state* phi, double delta,
                                         double* out) {
    if (qpt_status s = require(psi != nullptr && phi != nullptr && out != nullptr,
                               "psi, phi and out must not be NULL");
        s != QPT_OK) {
        return s;
    }
    return guarded(
        [&] { *out = qpt::exact_success_probability(psi->value, phi->value, delta); });
}

qpt_status qpt_exact_outcome_distribution(const qpt_state* psi, const qpt_state* phi, double delta,
                                          int completion, double* probabilities) {
    if (qpt_status s = require(psi != nullptr && phi != nullptr && probabilities != nullptr,
                               "psi, phi and probabilities must not be NULL");
        s != QPT_OK) {
        return s;
    }
    return guarded([&] {
        const qpt::Completion native = completion == QPT_COMPLETION_GRAM_SCHMIDT
                                           ? qpt::Completion::GramSchmidt
                                           : qpt::Completion::Householder;
        const qpt::OutcomeDistribution dist =
            qpt::exact_outcome_distribution(psi->value, phi->value, delta, native);
        for (size_t mu = 0; mu < dist.probabilities.size(); ++mu) {
            probabilities[mu] = dist.probabilities[mu];
        }
    });
}

qpt_status qpt_exact_postselected_state(const qpt_state* psi, const qpt_state* phi, double delta,
                                        qpt_state** out) {
    if (qpt_status s = require(psi != nullptr && phi != nullptr && out != nullptr,
                               "psi, phi and out must not be NULL");
        s != QPT_OK) {
        return s;
    }
    return guarded([&] {
        *out = new qpt_state{qpt::exact_postselected_state(psi->value, phi->value, delta)};
    });
}

qpt_status qpt_fit_success_curve(const double* deltas, const double* probabilities,
                                 const double* weights, size_t n_points, qpt_fit_result* out) {
    if (qpt_status s = require(deltas != nullptr && probabilities != nullptr && out != nullptr,
                               "deltas, probabilities and out must not be NULL");
        s != QPT_OK) {
        return s;
    }
    return guarded([&] {
        const std::vector<double> d(deltas, deltas + n_points);
        const std::vector<double> p(probabilities, probabilities + n_points);
        if (weights != nullptr) {
            const std::vector<double> w(weights, weights + n_points);
            fill_fit(qpt::fit_success_curve(d, p, &w), out);
        } else {
            fill_fit(qpt::fit_success_curve(d, p), out);
        }
    });
}

double qpt_model_eval(double a, double b, double c, double delta) {
    return qpt::model_eval(a, b, c, delta);
}

qpt_status qpt_fit_sweep_csv(const char* csv_path, int format, const char* output_path_or_null,
                             qpt_fit_result* out) {
    if (qpt_status s = require(csv_path != nullptr, "csv_path must not be NULL"); s != QPT_OK) {
        return s;
    }
    return guarded([&] {
        const std::vector<qpt::SweepRow> rows = qpt::read_sweep_csv(csv_path);
        const qpt::FitParams fit = qpt::fit_sweep_rows(rows);
        fill_fit(fit, out);
        if (output_path_or_null != nullptr) {
            if (format == QPT_FORMAT_CSV) {
                std::string csv = "a,b,c,stderr_a,stderr_b,stderr_c,residual_norm,converged\n";
                char buffer[256];
                std::snprintf(buffer, sizeof(buffer),
                              "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%d\n", fit.a, fit.b,
                              fit.c, fit.stderr_a, fit.stderr_b, fit.stderr_c, fit.residual_norm,
                              fit.converged ? 1 : 0);
                csv += buffer;
                qpt::write_text_file(output_path_or_null, csv);
            } else {
                qpt::write_text_file(output_path_or_null, fit_document(fit));
            }
        }
    });
}

qpt_status qpt_demo_quadratic(const qpt_demo_config* config, int format, const char* output_path,
                              qpt_demo_summary* summary_or_null) {
    if (qpt_status s = require(config != nullptr && output_path != nullptr,
                               "config and output_path must not be NULL");
        s != QPT_OK) {
        return s;
    }
    return guarded([&] {
        qpt::DemoConfig native;
        native.n_qubits = config->n_qubits;
        native.delta = config->delta;
        native.cycles = config->cycles;
        const qpt::DemoReport report = qpt::demo_quadratic(native);
        qpt::export_demo(report,
                         format == QPT_FORMAT_CSV ? qpt::ReportFormat::Csv
                                                  : qpt::ReportFormat::Json,
                         output_path);
        if (summary_or_null != nullptr) {
            summary_or_null->alpha = report.alpha;
            summary_or_null->fidelity_vs_ideal = report.fidelity_vs_ideal;
            summary_or_null->max_deviation_vs_exact_map = report.max_deviation_vs_exact_map;
            summary_or_null->total_success_probability = report.total_success_probability;
        }
    });
}

qpt_status qpt_sweep_success(const qpt_sweep_config* config, int format, const char* output_path,
                             qpt_fit_result* fit_or_null) {
    if (qpt_status s = require(config != nullptr && output_path != nullptr,
                               "config and output_path must not be NULL");
        s != QPT_OK) {
        return s;
    }
    return guarded([&] {
        qpt::SweepConfig native;
        native.n_qubits = config->n_qubits;
        native.delta_min = config->delta_min;
        native.delta_max = config->delta_max;
        native.delta_points = config->delta_points;
        native.n_shot = config->n_shot;
        native.n_repetition = config->n_repetition;
        native.seed = config->seed;
        native.mode = config->mode == 1 ? qpt::SweepMode::Exact : qpt::SweepMode::Sampled;
        native.completion = config->completion == QPT_COMPLETION_GRAM_SCHMIDT
                                ? qpt::Completion::GramSchmidt
                                : qpt::Completion::Householder;
        const qpt::SweepReport report = qpt::sweep_success(native);
        qpt::export_sweep(report,
                          format == QPT_FORMAT_CSV ? qpt::ReportFormat::Csv
                                                   : qpt::ReportFormat::Json,
                          output_path);
        fill_fit(report.fit, fit_or_null);
    });
}

qpt_status qpt_trotter_evolve(const char* spec_path, const char* initial_path_or_null,
                              int phase_mode, double max_cycle_delta, const char* output_path,
                              double* fidelity_vs_dense_or_null) {
    if (qpt_status s = require(spec_path != nullptr && output_path != nullptr,
                               "spec_path and output_path must not be NULL");
        s != QPT_OK) {
        return s;
    }
    return guarded([&] {
        const qpt::HamiltonianSpec spec = qpt::load_hamiltonian_spec(spec_path);
        qpt::StateVector initial;
        if (initial_path_or_null != nullptr) {
            initial = qpt::load_amplitude_file(initial_path_or_null);
        } else {
            // centered Gaussian packet as a generic smoke-test input
            const size_t dim = size_t{1} << spec.n;
            const double center = (static_cast<double>(dim) - 1.0) / 2.0;
            std::vector<qpt::cxd> amps(dim);
            for (size_t x = 0; x < dim; ++x) {
                const double dx = static_cast<double>(x) - center;
                amps[x] = std::exp(-dx * dx / 4.0);
            }
            initial = qpt::from_amplitudes(std::move(amps));
        }
        qpt::ProtocolPhaseOptions options;
        if (max_cycle_delta > 0.0) options.max_cycle_delta = max_cycle_delta;
        const qpt::StateVector evolved =
            qpt::evolve(initial, spec,
                        phase_mode == QPT_PHASE_PROTOCOL ? qpt::PhaseMode::ProtocolPhase
                                                         : qpt::PhaseMode::ExactPhase,
                        options);
        qpt::save_amplitude_file(evolved, output_path);
        if (fidelity_vs_dense_or_null != nullptr) {
            const qpt::StateVector reference = qpt::dense_evolution(initial, spec);
            *fidelity_vs_dense_or_null = qpt::fidelity_up_to_global_phase(evolved, reference);
        }
    });
}

qpt_status qpt_verify(const char* suite, const char* output_path_or_null, int verbose,
                      int* n_failed) {
    if (qpt_status s = require(suite != nullptr && n_failed != nullptr,
                               "suite and n_failed must not be NULL");
        s != QPT_OK) {
        return s;
    }
    return guarded([&] {
        const std::vector<qpt::verify::SuiteReport> reports = qpt::verify::run(suite);
        int failed = 0;
        for (const qpt::verify::SuiteReport& report : reports) {
            for (const qpt::verify::CheckResult& check : report.checks) {
                if (!check.passed) ++failed;
                if (verbose != 0) {
                    std::printf("[%s] %-55s %s  (%s)\n", report.suite.c_str(),
                                check.name.c_str(), check.passed ? "pass" : "FAIL",
                                check.detail.c_str());
                }
            }
        }
        *n_failed = failed;
        if (output_path_or_null != nullptr) {
            qpt::write_text_file(output_path_or_null, qpt::verify::to_json(reports));
        }
    });
}

}  // extern "C"
