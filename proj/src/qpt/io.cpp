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

#include "qpt/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace qpt {

namespace {

using nlohmann::json;

json parse_file(const std::string& path) {
    const std::string text = read_text_file(path);
    json doc = json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (doc.is_discarded()) {
        throw IoError("malformed JSON in " + path);
    }
    return doc;
}

std::vector<cxd> amplitudes_from_json(const json& array, const std::string& path) {
    if (!array.is_array()) {
        throw IoError("expected an array of [re, im] pairs in " + path);
    }
    std::vector<cxd> values;
    values.reserve(array.size());
    for (const json& pair : array) {
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
            throw IoError("expected [re, im] number pairs in " + path);
        }
        values.emplace_back(pair[0].get<double>(), pair[1].get<double>());
    }
    return values;
}

json amplitudes_to_json(const StateVector& state) {
    json array = json::array();
    for (const cxd& a : state.amplitudes) {
        array.push_back(json::array({a.real(), a.imag()}));
    }
    return array;
}

}  // namespace

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path + " for reading");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw IoError("failed while reading " + path);
    return buffer.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << content;
    out.flush();
    if (!out) throw IoError("failed while writing " + path);
}

StateVector load_amplitude_file(const std::string& path) {
    json doc = parse_file(path);
    if (doc.is_object() && doc.contains("amplitudes")) {
        doc = doc["amplitudes"];
    }
    std::vector<cxd> values = amplitudes_from_json(doc, path);
    try {
        return from_amplitudes(std::move(values));
    } catch (const std::invalid_argument& e) {
        throw IoError(path + ": " + e.what());
    }
}

void save_amplitude_file(const StateVector& state, const std::string& path) {
    write_text_file(path, amplitudes_to_json(state).dump(2) + "\n");
}

HamiltonianSpec load_hamiltonian_spec(const std::string& path) {
    const json doc = parse_file(path);
    if (!doc.is_object()) throw IoError("expected a JSON object in " + path);
    for (const char* key : {"n", "potential", "kinetic", "t", "m"}) {
        if (!doc.contains(key)) {
            throw IoError(path + ": missing field \"" + key + "\"");
        }
    }
    HamiltonianSpec spec;
    try {
        spec.n = doc["n"].get<int>();
        spec.potential = doc["potential"].get<std::vector<double>>();
        spec.kinetic = doc["kinetic"].get<std::vector<double>>();
        spec.total_time = doc["t"].get<double>();
        spec.steps = doc["m"].get<int>();
    } catch (const json::exception& e) {
        throw IoError(path + ": " + e.what());
    }
    return spec;
}

void save_hamiltonian_spec(const HamiltonianSpec& spec, const std::string& path) {
    json doc;
    doc["n"] = spec.n;
    doc["potential"] = spec.potential;
    doc["kinetic"] = spec.kinetic;
    doc["t"] = spec.total_time;
    doc["m"] = spec.steps;
    write_text_file(path, doc.dump(2) + "\n");
}

void save_protocol_result(const ProtocolResult& result, const ProtocolConfig& config,
                          const std::string& path) {
    json doc;
    doc["mode"] = to_string(config.mode);
    doc["completion"] = to_string(config.completion);
    doc["delta"] = config.delta;
    doc["alpha"] = config.alpha;
    doc["cycles"] = config.cycles;
    doc["seed"] = config.seed;
    doc["cycles_run"] = result.cycles_run;
    doc["failed_at"] = result.failed_at ? json(*result.failed_at) : json(nullptr);
    doc["total_success_probability"] = result.total_success_probability;
    doc["final_amplitudes"] = amplitudes_to_json(result.final_state);
    write_text_file(path, doc.dump(2) + "\n");
}

const char* to_string(ProtocolMode mode) {
    switch (mode) {
        case ProtocolMode::Sampled: return "sampled";
        case ProtocolMode::Postselected: return "postselected";
        case ProtocolMode::Exact: return "exact";
    }
    return "unknown";
}

const char* to_string(Completion completion) {
    return completion == Completion::Householder ? "householder" : "gram-schmidt";
}

}  // namespace qpt
