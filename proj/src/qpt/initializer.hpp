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

#ifndef QPT_INITIALIZER_HPP
#define QPT_INITIALIZER_HPP

#include <vector>

#include <Eigen/Dense>

#include "qpt/statevector.hpp"

namespace qpt {

enum class Completion { Householder, GramSchmidt };

/// Full N x N unitary whose column 0 is the target state phi. Column 0 is
/// fixed by the target; the remaining columns depend on the completion used
/// to build the matrix.
struct InitializerUnitary {
    int n = 0;
    Eigen::MatrixXcd matrix;
    Completion construction = Completion::Householder;
};

/// Single Householder reflection mapping |0> to phi, with the phase of
/// phi(0) folded in so column 0 equals phi exactly (not up to sign or
/// global phase). phi must be unit norm (deviation <= 1e-9).
InitializerUnitary householder_unitary(const std::vector<cxd>& phi);

/// Alternate completion: phi followed by Gram-Schmidt orthonormalization of
/// the computational basis. Column 0 identical to the Householder build;
/// interior columns generally different.
InitializerUnitary gram_schmidt_unitary(const std::vector<cxd>& phi);

InitializerUnitary make_initializer(const std::vector<cxd>& phi, Completion completion);

/// Applies the matrix (adjoint = conjugate transpose) along the given
/// register's amplitude axis.
StateVector apply_initializer(const StateVector& state, const InitializerUnitary& u,
                              const std::vector<int>& register_qubits, bool adjoint);

/// Unit-norm column mu; column 0 is phi itself.
std::vector<cxd> column(const InitializerUnitary& u, std::uint64_t mu);

}  // namespace qpt

#endif  // QPT_INITIALIZER_HPP
