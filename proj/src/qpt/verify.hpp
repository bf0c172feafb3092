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

#ifndef QPT_VERIFY_HPP
#define QPT_VERIFY_HPP

#include <functional>
#include <string>
#include <vector>

#include "qpt/statevector.hpp"

namespace qpt {
namespace verify {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;  // worst observed value / bound, or a failure note
};

struct SuiteReport {
    std::string suite;
    std::vector<CheckResult> checks;

    bool passed() const;
};

/// Runs the property suites. Suite may be "core", "partial-phase",
/// "protocol", "hamiltonian" or "all".
std::vector<SuiteReport> run(const std::string& suite, std::uint64_t seed = 1234);

/// Lower-bound property P(0) >= cos^2(delta/2) over random instances,
/// parameterized over the probability function so a deliberately broken
/// implementation can be shown to trip the check.
using SuccessProbabilityFn =
    std::function<double(const StateVector& psi, const StateVector& phi, double delta)>;
CheckResult check_success_lower_bound(const SuccessProbabilityFn& probability_fn, int instances,
                                      std::uint64_t seed);

/// Haar-ish random state: i.i.d. complex normal amplitudes, normalized.
StateVector random_state(int n_qubits, SplitMix64& rng);

std::string to_json(const std::vector<SuiteReport>& reports);
bool all_passed(const std::vector<SuiteReport>& reports);

}  // namespace verify
}  // namespace qpt

#endif  // QPT_VERIFY_HPP
