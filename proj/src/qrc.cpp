// Copyright 2026 The rescomp authors
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

#include "rescomp/qrc.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace rescomp::qrc {

using qlinalg::ComplexMatrix;
using qlinalg::HermitianOperator;

void Config::validate() const {
    if (qubits < 1 || qubits > kMaxQubits) {
        throw std::invalid_argument("qrc: qubits must lie in [1, "
                                    + std::to_string(kMaxQubits) + "]");
    }
    if (!(tau > 0)) throw std::invalid_argument("qrc: tau must be > 0");
    if (virtual_nodes < 1) throw std::invalid_argument("qrc: virtual_nodes must be >= 1");
    if (!(coupling_scale >= 0) || !std::isfinite(coupling_scale)) {
        throw std::invalid_argument("qrc: coupling_scale must be finite and >= 0");
    }
    if (!std::isfinite(field)) throw std::invalid_argument("qrc: field must be finite");
}

DensityMatrix::DensityMatrix(ComplexMatrix matrix) : matrix_(std::move(matrix)) {
    const long d = matrix_.rows();
    if (matrix_.cols() != d || d < 1 || (d & (d - 1)) != 0) {
        throw std::invalid_argument("DensityMatrix: dimension must be a power of two");
    }
    if (!matrix_.allFinite()) {
        throw std::invalid_argument("DensityMatrix: non-finite entries");
    }
    if (qlinalg::hermiticity_error(matrix_) > 1e-10) {
        throw std::invalid_argument("DensityMatrix: not Hermitian within 1e-10");
    }
    const std::complex<double> trace = matrix_.trace();
    if (std::abs(trace - std::complex<double>(1.0, 0.0)) > 1e-10) {
        throw std::invalid_argument("DensityMatrix: trace deviates from 1 by more than 1e-10");
    }
}

DensityMatrix DensityMatrix::maximally_mixed(long qubits) {
    const long dim = 1L << qubits;
    return DensityMatrix(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

double DensityMatrix::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(matrix_, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

DensityMatrix encode_input(double u) {
    if (!(u >= 0.0 && u <= 1.0)) {
        throw std::invalid_argument("encode_input: input must lie in [0, 1], got "
                                    + std::to_string(u));
    }
    const double cross = std::sqrt(u * (1.0 - u));
    ComplexMatrix rho(2, 2);
    rho << 1.0 - u, cross, cross, u;
    return DensityMatrix(std::move(rho));
}

qlinalg::ComplexMatrix embed_single_site(const ComplexMatrix& op, long site, long qubits) {
    if (site < 1 || site > qubits) {
        throw std::invalid_argument("embed_single_site: site out of range");
    }
    ComplexMatrix out = ComplexMatrix::Identity(1, 1);
    for (long s = 1; s <= qubits; ++s) {
        out = qlinalg::kron(out, s == site ? op : qlinalg::identity2());
    }
    return out;
}

qlinalg::HermitianOperator build_hamiltonian(const Config& config) {
    config.validate();
    const long n = config.qubits;
    const long dim = 1L << n;

    std::mt19937_64 rng(config.seed);
    std::uniform_real_distribution<double> coupling(-config.coupling_scale / 2.0,
                                                    config.coupling_scale / 2.0);

    ComplexMatrix h = ComplexMatrix::Zero(dim, dim);
    const ComplexMatrix x = qlinalg::pauli_x();
    for (long i = 1; i <= n; ++i) {
        for (long j = i + 1; j <= n; ++j) {
            const double j_ij = coupling(rng);
            h += j_ij * (embed_single_site(x, i, n) * embed_single_site(x, j, n));
        }
    }
    const ComplexMatrix z = qlinalg::pauli_z();
    for (long i = 1; i <= n; ++i) {
        h += config.field * embed_single_site(z, i, n);
    }
    return HermitianOperator(std::move(h));
}

Reservoir::Reservoir(const Config& config)
    : config_(config),
      hamiltonian_(build_hamiltonian(config)),
      step_unitary_(qlinalg::evolution_unitary(
          hamiltonian_, config.tau / static_cast<double>(config.virtual_nodes))) {
    observables_.reserve(config_.qubits);
    for (long i = 1; i <= config_.qubits; ++i) {
        observables_.emplace_back(embed_single_site(qlinalg::pauli_z(), i, config_.qubits));
    }
}

DensityMatrix Reservoir::inject(const DensityMatrix& rho, double u) const {
    if (rho.dim() != (1L << config_.qubits)) {
        throw std::invalid_argument("qrc: density matrix dimension mismatch");
    }
    return DensityMatrix(qlinalg::kron(encode_input(u).matrix(),
                                       qlinalg::partial_trace_first_qubit(rho.matrix())));
}

Reservoir::StepResult Reservoir::step(const DensityMatrix& rho, double u) const {
    const long n = config_.qubits;
    const long v_count = config_.virtual_nodes;

    ComplexMatrix state = inject(rho, u).matrix();
    Eigen::VectorXd signals(n * v_count);
    for (long v = 0; v < v_count; ++v) {
        state = step_unitary_ * state * step_unitary_.adjoint();
        for (long i = 0; i < n; ++i) {
            signals[v * n + i] = qlinalg::real_trace_product(state, observables_[i]);
        }
    }
    return {DensityMatrix(std::move(state)), std::move(signals)};
}

StateTrajectory Reservoir::drive(const TimeSeries& input) const {
    return drive_from(input, maximally_mixed_state()).trajectory;
}

Reservoir::DriveResult Reservoir::drive_from(const TimeSeries& input, State initial) const {
    if (input.channels() != 1) {
        throw std::invalid_argument(
            "qrc: input must be one-dimensional; got " + std::to_string(input.channels())
            + " channels");
    }
    const long steps = input.length();
    Eigen::MatrixXd states(steps, config_.qubits * config_.virtual_nodes);
    State state = std::move(initial);
    for (long t = 0; t < steps; ++t) {
        const double u = input.at(t);
        if (!(u >= 0.0 && u <= 1.0)) {
            throw std::invalid_argument("qrc: input sample at step " + std::to_string(t)
                                        + " lies outside [0, 1]; normalize inputs first");
        }
        StepResult result = step(state, u);
        states.row(t) = result.signals.transpose();
        state = std::move(result.state);
    }
    return {StateTrajectory(std::move(states)), std::move(state)};
}

Reservoir::State Reservoir::maximally_mixed_state() const {
    return DensityMatrix::maximally_mixed(config_.qubits);
}

Reservoir::State Reservoir::random_initial_state(std::mt19937_64& rng) const {
    const long dim = 1L << config_.qubits;
    std::uniform_real_distribution<double> unit01(0.0, 1.0);
    Eigen::VectorXd weights(dim);
    for (long i = 0; i < dim; ++i) weights[i] = unit01(rng);
    weights /= weights.sum();
    ComplexMatrix rho = ComplexMatrix::Zero(dim, dim);
    for (long i = 0; i < dim; ++i) rho(i, i) = weights[i];
    return DensityMatrix(std::move(rho));
}

ReservoirDescriptor Reservoir::descriptor() const {
    const long dim = 1L << config_.qubits;
    return {ReservoirKind::Quantum, config_.qubits * config_.virtual_nodes, dim * dim};
}

}  // namespace rescomp::qrc
