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

#ifndef QPT_IO_HPP
#define QPT_IO_HPP

#include <stdexcept>
#include <string>

#include "qpt/hamiltonian.hpp"
#include "qpt/protocol.hpp"
#include "qpt/statevector.hpp"

namespace qpt {

/// Raised for unreadable/unwritable paths and malformed documents.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Amplitude-vector files are JSON arrays of [re, im] pairs, e.g.
// [[0.5, 0.0], [0.5, 0.0], [0.5, 0.0], [0.5, 0.0]]. The loader validates the
// power-of-two length and normalizes. A {"amplitudes": [...]} wrapper object
// is also accepted.
StateVector load_amplitude_file(const std::string& path);
void save_amplitude_file(const StateVector& state, const std::string& path);

// Hamiltonian spec files are JSON objects {"n", "potential", "kinetic",
// "t", "m"}.
HamiltonianSpec load_hamiltonian_spec(const std::string& path);
void save_hamiltonian_spec(const HamiltonianSpec& spec, const std::string& path);

// Protocol results are emitted as JSON: mode, delta, cycles, failed_at
// (null when absent), total_success_probability and the final amplitudes as
// [re, im] pairs.
void save_protocol_result(const ProtocolResult& result, const ProtocolConfig& config,
                          const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

const char* to_string(ProtocolMode mode);
const char* to_string(Completion completion);

}  // namespace qpt

#endif  // QPT_IO_HPP
