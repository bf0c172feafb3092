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

#include "qpt/experiments.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "qpt/io.hpp"
#include "qpt/protocol.hpp"
#include "qpt/rng.hpp"

namespace qpt {

namespace {

using nlohmann::json;

/// Shortest round-trip decimal representation; locale-independent, so
/// identical runs produce byte-identical files.
std::string format_double(double value) {
    char buffer[64];
    const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, ptr);
}

double wrap_to_pi(double angle) {
    const double two_pi = 2.0 * std::numbers::pi;
    double wrapped = std::fmod(angle, two_pi);
    if (wrapped > std::numbers::pi) wrapped -= two_pi;
    if (wrapped <= -std::numbers::pi) wrapped += two_pi;
    return wrapped;
}

/// Pairwise summation; keeps aggregation independent of chunking decisions.
double pairwise_sum(const double* data, std::size_t count) {
    if (count <= 8) {
        double total = 0.0;
        for (std::size_t i = 0; i < count; ++i) total += data[i];
        return total;
    }
    const std::size_t half = count / 2;
    return pairwise_sum(data, half) + pairwise_sum(data + half, count - half);
}

struct MeanStd {
    double mean = 0.0;
    double std = 0.0;  // sample standard deviation (ddof = 1)
};

MeanStd mean_and_std(const std::vector<double>& values) {
    MeanStd out;
    const std::size_t count = values.size();
    if (count == 0) return out;
    out.mean = pairwise_sum(values.data(), count) / static_cast<double>(count);
    if (count < 2) return out;
    std::vector<double> sq(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double d = values[i] - out.mean;
        sq[i] = d * d;
    }
    out.std = std::sqrt(pairwise_sum(sq.data(), count) / static_cast<double>(count - 1));
    return out;
}

json fit_to_json(const FitParams& fit) {
    json doc;
    doc["a"] = fit.a;
    doc["b"] = fit.b;
    doc["c"] = fit.c;
    doc["stderr_a"] = fit.stderr_a;
    doc["stderr_b"] = std::isfinite(fit.stderr_b) ? json(fit.stderr_b) : json(nullptr);
    doc["stderr_c"] = std::isfinite(fit.stderr_c) ? json(fit.stderr_c) : json(nullptr);
    doc["residual_norm"] = fit.residual_norm;
    doc["converged"] = fit.converged;
    doc["iterations"] = fit.iterations;
    return doc;
}

}  // namespace

StateVector uniform_state(int n_qubits) {
    if (n_qubits < 1) throw std::invalid_argument("uniform_state: n_qubits must be >= 1");
    const std::size_t dim = std::size_t{1} << n_qubits;
    return from_amplitudes(std::vector<cxd>(dim, cxd{1.0, 0.0}));
}

StateVector linear_state(int n_qubits) {
    if (n_qubits < 1) throw std::invalid_argument("linear_state: n_qubits must be >= 1");
    const std::size_t dim = std::size_t{1} << n_qubits;
    std::vector<cxd> amps(dim);
    for (std::size_t x = 0; x < dim; ++x) amps[x] = cxd{static_cast<double>(x), 0.0};
    return from_amplitudes(std::move(amps));
}

DemoReport demo_quadratic(const DemoConfig& config) {
    if (config.n_qubits < 1) throw std::invalid_argument("demo_quadratic: n_qubits must be >= 1");
    if (config.cycles < 1) throw std::invalid_argument("demo_quadratic: cycles must be >= 1");
    const std::size_t dim = std::size_t{1} << config.n_qubits;

    const StateVector psi = uniform_state(config.n_qubits);
    const StateVector phi = linear_state(config.n_qubits);
    double amplitude_norm = 0.0;  // A = sum x^2
    for (std::size_t x = 0; x < dim; ++x) {
        amplitude_norm += static_cast<double>(x) * static_cast<double>(x);
    }

    const ProtocolConfig simulated_config =
        ProtocolConfig::from_delta(config.delta, config.cycles, ProtocolMode::Postselected);
    const ProtocolResult simulated = run_protocol(psi, phi, simulated_config);

    const ProtocolConfig map_config =
        ProtocolConfig::from_delta(config.delta, config.cycles, ProtocolMode::Exact);
    const ProtocolResult mapped = run_protocol(psi, phi, map_config);

    DemoReport report;
    report.config = config;
    report.alpha = config.cycles * config.delta / amplitude_norm;
    report.total_success_probability = simulated.total_success_probability;

    // align global phases before the elementwise comparison
    const cxd overlap = inner_product(mapped.final_state, simulated.final_state);
    const cxd align = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : cxd{1.0, 0.0};
    double max_dev = 0.0;
    for (std::size_t x = 0; x < dim; ++x) {
        max_dev = std::max(max_dev,
                           std::abs(simulated.final_state.amplitudes[x] / align -
                                    mapped.final_state.amplitudes[x]));
    }
    report.max_deviation_vs_exact_map = max_dev;

    std::vector<cxd> ideal(dim);
    for (std::size_t x = 0; x < dim; ++x) {
        const double phase = report.alpha * static_cast<double>(x) * static_cast<double>(x);
        ideal[x] = std::polar(1.0 / std::sqrt(static_cast<double>(dim)), phase);
    }
    StateVector ideal_state;
    ideal_state.n_qubits = config.n_qubits;
    ideal_state.amplitudes = std::move(ideal);
    report.fidelity_vs_ideal = fidelity_up_to_global_phase(simulated.final_state, ideal_state);

    const StateVector& final_state = simulated.final_state;
    // phase reference: the lowest-index component with nonzero weight
    std::size_t reference = 0;
    while (reference + 1 < dim && std::abs(final_state.amplitudes[reference]) < 1e-12) {
        ++reference;
    }
    const double phase0 = std::arg(final_state.amplitudes[reference]);
    double previous_unwrapped = 0.0;
    double previous_wrapped = 0.0;
    report.rows.resize(dim);
    for (std::size_t x = 0; x < dim; ++x) {
        DemoRow& row = report.rows[x];
        row.x = x;
        row.magnitude = std::abs(final_state.amplitudes[x]);
        row.relative_phase = wrap_to_pi(std::arg(final_state.amplitudes[x]) - phase0);
        if (x == 0) {
            row.unwrapped_phase = row.relative_phase;
        } else {
            // cumulative nearest-branch selection
            row.unwrapped_phase =
                previous_unwrapped + wrap_to_pi(row.relative_phase - previous_wrapped);
        }
        previous_unwrapped = row.unwrapped_phase;
        previous_wrapped = row.relative_phase;
        row.ideal_phase = report.alpha * static_cast<double>(x) * static_cast<double>(x);
        row.deviation = row.unwrapped_phase - row.ideal_phase;
    }
    return report;
}

void export_demo(const DemoReport& report, ReportFormat format, const std::string& path) {
    if (format == ReportFormat::Csv) {
        std::ostringstream out;
        out << "x,magnitude,relative_phase,unwrapped_phase,ideal_phase,deviation\n";
        for (const DemoRow& row : report.rows) {
            out << row.x << ',' << format_double(row.magnitude) << ','
                << format_double(row.relative_phase) << ',' << format_double(row.unwrapped_phase)
                << ',' << format_double(row.ideal_phase) << ',' << format_double(row.deviation)
                << '\n';
        }
        write_text_file(path, out.str());
        return;
    }
    json doc;
    doc["config"] = {{"n_qubits", report.config.n_qubits},
                     {"delta", report.config.delta},
                     {"cycles", report.config.cycles}};
    doc["alpha"] = report.alpha;
    doc["fidelity_vs_ideal"] = report.fidelity_vs_ideal;
    doc["max_deviation_vs_exact_map"] = report.max_deviation_vs_exact_map;
    doc["total_success_probability"] = report.total_success_probability;
    doc["rows"] = json::array();
    for (const DemoRow& row : report.rows) {
        doc["rows"].push_back({{"x", row.x},
                               {"magnitude", row.magnitude},
                               {"relative_phase", row.relative_phase},
                               {"unwrapped_phase", row.unwrapped_phase},
                               {"ideal_phase", row.ideal_phase},
                               {"deviation", row.deviation}});
    }
    write_text_file(path, doc.dump(2) + "\n");
}

SweepReport sweep_success(const SweepConfig& config) {
    if (config.delta_points < 2) throw std::invalid_argument("sweep_success: delta_points >= 2");
    if (config.n_shot < 1) throw std::invalid_argument("sweep_success: n_shot >= 1");
    if (config.n_repetition < 1) throw std::invalid_argument("sweep_success: n_repetition >= 1");
    if (config.n_qubits < 1) throw std::invalid_argument("sweep_success: n_qubits >= 1");
    const auto start_time = std::chrono::steady_clock::now();

    const StateVector psi = uniform_state(config.n_qubits);
    const StateVector phi = linear_state(config.n_qubits);

    SweepReport report;
    report.config = config;
    report.rows.resize(static_cast<std::size_t>(config.delta_points));
    std::vector<std::vector<double>> per_repetition(
        static_cast<std::size_t>(config.delta_points));

    const double span = config.delta_max - config.delta_min;
    const auto point_delta = [&](int i) {
        return config.delta_points == 1
                   ? config.delta_min
                   : config.delta_min + span * static_cast<double>(i) /
                                            static_cast<double>(config.delta_points - 1);
    };

    // Each delta point is an independent work item with its own derived RNG
    // streams, so the rows are identical no matter how the points are
    // scheduled across threads.
    const auto run_point = [&](int i) {
        const double delta = point_delta(i);
        const double p_exact = exact_success_probability(psi, phi, delta);
        SweepRow row;
        row.delta = delta;
        row.p_exact = p_exact;
        if (config.mode == SweepMode::Exact) {
            row.p_mean = p_exact;
            row.p_std = 0.0;
            report.rows[static_cast<std::size_t>(i)] = row;
            return;
        }
        std::vector<double> estimates(static_cast<std::size_t>(config.n_repetition));
        for (int rep = 0; rep < config.n_repetition; ++rep) {
            int successes = 0;
            for (int shot = 0; shot < config.n_shot; ++shot) {
                SplitMix64 rng(derive_seed(config.seed,
                                           {static_cast<std::uint64_t>(i),
                                            static_cast<std::uint64_t>(rep),
                                            static_cast<std::uint64_t>(shot)}));
                if (rng.uniform() < p_exact) ++successes;
            }
            estimates[static_cast<std::size_t>(rep)] =
                static_cast<double>(successes) / static_cast<double>(config.n_shot);
        }
        const MeanStd stats = mean_and_std(estimates);
        row.p_mean = stats.mean;
        row.p_std = stats.std;
        report.rows[static_cast<std::size_t>(i)] = row;
        per_repetition[static_cast<std::size_t>(i)] = std::move(estimates);
    };

    unsigned requested = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("QPT_THREADS"); env != nullptr && *env != '\0') {
        const unsigned long parsed = std::strtoul(env, nullptr, 10);
        if (parsed >= 1) requested = static_cast<unsigned>(parsed);
    }
    const unsigned worker_count =
        std::min<unsigned>(requested, static_cast<unsigned>(config.delta_points));
    if (worker_count <= 1) {
        for (int i = 0; i < config.delta_points; ++i) run_point(i);
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> workers;
        workers.reserve(worker_count);
        for (unsigned w = 0; w < worker_count; ++w) {
            workers.emplace_back([&] {
                for (int i = next.fetch_add(1); i < config.delta_points; i = next.fetch_add(1)) {
                    run_point(i);
                }
            });
        }
        for (std::thread& worker : workers) worker.join();
    }

    report.fit = fit_sweep_rows(report.rows);

    if (config.mode == SweepMode::Sampled && config.n_repetition >= 2) {
        // second uncertainty estimate: scatter of per-repetition fits
        std::vector<double> deltas(report.rows.size());
        for (std::size_t i = 0; i < report.rows.size(); ++i) deltas[i] = report.rows[i].delta;
        std::vector<double> fit_a, fit_b, fit_c;
        fit_a.reserve(static_cast<std::size_t>(config.n_repetition));
        for (int rep = 0; rep < config.n_repetition; ++rep) {
            std::vector<double> curve(report.rows.size());
            for (std::size_t i = 0; i < report.rows.size(); ++i) {
                curve[i] = per_repetition[i][static_cast<std::size_t>(rep)];
            }
            const FitParams fit = fit_success_curve(deltas, curve);
            fit_a.push_back(fit.a);
            fit_b.push_back(fit.b);
            fit_c.push_back(fit.c);
        }
        const double scale = std::sqrt(static_cast<double>(config.n_repetition));
        report.repetition_scatter_stderr = {mean_and_std(fit_a).std / scale,
                                            mean_and_std(fit_b).std / scale,
                                            mean_and_std(fit_c).std / scale};
    }

    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        const SweepRow& row = report.rows[i];
        const double band =
            5.0 * row.p_std / std::sqrt(static_cast<double>(config.n_repetition)) + 1e-9;
        if (std::abs(row.p_mean - row.p_exact) > band) {
            report.flagged_rows.push_back(static_cast<int>(i));
        }
    }

    report.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_time).count();
    return report;
}

std::vector<double> fit_weights_from_rows(const std::vector<SweepRow>& rows) {
    std::vector<double> weights(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const double sigma = std::max(rows[i].p_std, 1e-6);
        weights[i] = 1.0 / (sigma * sigma);
    }
    return weights;
}

FitParams fit_sweep_rows(const std::vector<SweepRow>& rows) {
    std::vector<double> deltas(rows.size());
    std::vector<double> means(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        deltas[i] = rows[i].delta;
        means[i] = rows[i].p_mean;
    }
    const std::vector<double> weights = fit_weights_from_rows(rows);
    return fit_success_curve(deltas, means, &weights);
}

void export_sweep(const SweepReport& report, ReportFormat format, const std::string& path) {
    if (format == ReportFormat::Csv) {
        std::ostringstream out;
        out << "delta,p_mean,p_std,p_exact\n";
        for (const SweepRow& row : report.rows) {
            out << format_double(row.delta) << ',' << format_double(row.p_mean) << ','
                << format_double(row.p_std) << ',' << format_double(row.p_exact) << '\n';
        }
        write_text_file(path, out.str());
        return;
    }
    json doc;
    doc["config"] = {{"n_qubits", report.config.n_qubits},
                     {"delta_min", report.config.delta_min},
                     {"delta_max", report.config.delta_max},
                     {"delta_points", report.config.delta_points},
                     {"n_shot", report.config.n_shot},
                     {"n_repetition", report.config.n_repetition},
                     {"seed", report.config.seed},
                     {"mode", report.config.mode == SweepMode::Exact ? "exact" : "sampled"},
                     {"completion", to_string(report.config.completion)}};
    doc["rows"] = json::array();
    for (const SweepRow& row : report.rows) {
        doc["rows"].push_back({{"delta", row.delta},
                               {"p_mean", row.p_mean},
                               {"p_std", row.p_std},
                               {"p_exact", row.p_exact}});
    }
    doc["fit"] = fit_to_json(report.fit);
    if (report.repetition_scatter_stderr) {
        doc["repetition_scatter_stderr"] = {{"a", (*report.repetition_scatter_stderr)[0]},
                                            {"b", (*report.repetition_scatter_stderr)[1]},
                                            {"c", (*report.repetition_scatter_stderr)[2]}};
    } else {
        doc["repetition_scatter_stderr"] = nullptr;
    }
    doc["flagged_rows"] = report.flagged_rows;
    doc["wall_time_seconds"] = report.wall_time_seconds;
    write_text_file(path, doc.dump(2) + "\n");
}

std::vector<SweepRow> read_sweep_csv(const std::string& path) {
    const std::string text = read_text_file(path);
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw IoError(path + ": empty file");
    // header line is required but not validated beyond the column count
    std::vector<SweepRow> rows;
    std::size_t line_number = 1;
    while (std::getline(in, line)) {
        ++line_number;
        if (line.empty()) continue;
        std::array<double, 4> fields{};
        const char* cursor = line.data();
        const char* end = line.data() + line.size();
        for (int f = 0; f < 4; ++f) {
            const auto [ptr, ec] = std::from_chars(cursor, end, fields[static_cast<std::size_t>(f)]);
            if (ec != std::errc{}) {
                throw IoError(path + ": malformed number at line " + std::to_string(line_number));
            }
            cursor = ptr;
            if (f < 3) {
                if (cursor == end || *cursor != ',') {
                    throw IoError(path + ": expected 4 comma-separated columns at line " +
                                  std::to_string(line_number));
                }
                ++cursor;
            }
        }
        rows.push_back(SweepRow{fields[0], fields[1], fields[2], fields[3]});
    }
    if (rows.empty()) throw IoError(path + ": no data rows");
    return rows;
}

}  // namespace qpt
