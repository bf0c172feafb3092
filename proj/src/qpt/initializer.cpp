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

#include "qpt/initializer.hpp"

#include <cmath>
#include <stdexcept>

namespace qpt {

namespace {

constexpr double kNormTol = 1e-9;
constexpr double kDegenerateTol = 1e-12;

bool is_power_of_two(std::size_t v) { return v != 0 && (v & (v - 1)) == 0; }

int checked_register_size(const std::vector<cxd>& phi, const char* what) {
    if (phi.size() < 2 || !is_power_of_two(phi.size())) {
        throw std::invalid_argument(std::string(what) + ": length must be a power of two >= 2");
    }
    double norm2 = 0.0;
    for (const cxd& a : phi) norm2 += std::norm(a);
    if (norm2 <= 1e-24) {
        throw std::invalid_argument(std::string(what) + ": zero vector");
    }
    if (std::abs(std::sqrt(norm2) - 1.0) > kNormTol) {
        throw std::invalid_argument(std::string(what) + ": input must be unit norm");
    }
    int n = 0;
    while ((std::size_t{1} << n) < phi.size()) ++n;
    return n;
}

Eigen::VectorXcd to_eigen(const std::vector<cxd>& v) {
    Eigen::VectorXcd out(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = v[i];
    return out;
}

}  // namespace

InitializerUnitary householder_unitary(const std::vector<cxd>& phi) {
    InitializerUnitary u;
    u.n = checked_register_size(phi, "householder_unitary");
    u.construction = Completion::Householder;
    const Eigen::Index dim = static_cast<Eigen::Index>(phi.size());
    const Eigen::VectorXcd target = to_eigen(phi);

    // Phase gauge: reflect e^{i theta}|0> onto phi with theta = arg(phi(0)),
    // then fold the phase into column 0 so it lands on phi exactly.
    const double theta = std::abs(phi[0]) > 0.0 ? std::arg(phi[0]) : 0.0;
    const cxd gauge = std::polar(1.0, theta);

    Eigen::VectorXcd reflector = target;
    reflector(0) -= gauge;
    const double reflector_norm2 = reflector.squaredNorm();

    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(dim, dim);
    m(0, 0) = gauge;
    if (reflector_norm2 < kDegenerateTol * kDegenerateTol) {
        u.matrix = std::move(m);  // phi is |0> up to phase; reflector vanishes
        return u;
    }
    const Eigen::MatrixXcd reflection =
        Eigen::MatrixXcd::Identity(dim, dim) -
        (2.0 / reflector_norm2) * (reflector * reflector.adjoint());
    u.matrix = reflection * m;
    u.matrix.col(0) = target;  // exact by construction; clear residual rounding
    return u;
}

InitializerUnitary gram_schmidt_unitary(const std::vector<cxd>& phi) {
    InitializerUnitary u;
    u.n = checked_register_size(phi, "gram_schmidt_unitary");
    u.construction = Completion::GramSchmidt;
    const Eigen::Index dim = static_cast<Eigen::Index>(phi.size());

    u.matrix = Eigen::MatrixXcd::Zero(dim, dim);
    u.matrix.col(0) = to_eigen(phi);
    Eigen::Index filled = 1;
    for (Eigen::Index k = 0; k < dim && filled < dim; ++k) {
        Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
        v(k) = cxd{1.0, 0.0};
        // two orthogonalization passes keep the basis orthonormal to ~1e-15
        for (int pass = 0; pass < 2; ++pass) {
            for (Eigen::Index c = 0; c < filled; ++c) {
                v -= u.matrix.col(c).dot(v) * u.matrix.col(c);
            }
        }
        const double residual = v.norm();
        if (residual < 1e-8) continue;  // basis vector absorbed by earlier columns
        u.matrix.col(filled++) = v / residual;
    }
    if (filled != dim) {
        throw std::runtime_error("gram_schmidt_unitary: completion did not span the space");
    }
    return u;
}

InitializerUnitary make_initializer(const std::vector<cxd>& phi, Completion completion) {
    return completion == Completion::Householder ? householder_unitary(phi)
                                                 : gram_schmidt_unitary(phi);
}

StateVector apply_initializer(const StateVector& state, const InitializerUnitary& u,
                              const std::vector<int>& register_qubits, bool adjoint) {
    validate_register(state.n_qubits, register_qubits, "apply_initializer");
    if (register_qubits.size() != static_cast<std::size_t>(u.n)) {
        throw std::invalid_argument("apply_initializer: register size does not match unitary");
    }
    const std::size_t reg_dim = std::size_t{1} << u.n;
    const std::vector<int> rest = complement_qubits(state.n_qubits, register_qubits);
    const std::size_t rest_dim = std::size_t{1} << rest.size();
    const Eigen::MatrixXcd op =
        adjoint ? Eigen::MatrixXcd(u.matrix.adjoint()) : u.matrix;

    StateVector out = state;
    Eigen::VectorXcd slice(static_cast<Eigen::Index>(reg_dim));
    for (std::size_t r = 0; r < rest_dim; ++r) {
        const std::uint64_t base = scatter_bits(r, rest);
        for (std::size_t k = 0; k < reg_dim; ++k) {
            slice(static_cast<Eigen::Index>(k)) =
                state.amplitudes[base | scatter_bits(k, register_qubits)];
        }
        const Eigen::VectorXcd transformed = op * slice;
        for (std::size_t k = 0; k < reg_dim; ++k) {
            out.amplitudes[base | scatter_bits(k, register_qubits)] =
                transformed(static_cast<Eigen::Index>(k));
        }
    }
    return out;
}

std::vector<cxd> column(const InitializerUnitary& u, std::uint64_t mu) {
    const std::size_t dim = std::size_t{1} << u.n;
    if (mu >= dim) throw std::out_of_range("column: index out of range");
    std::vector<cxd> out(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        out[i] = u.matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(mu));
    }
    return out;
}

}  // namespace qpt
