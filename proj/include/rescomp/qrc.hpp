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

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "rescomp/qlinalg.hpp"
#include "rescomp/time_series.hpp"

namespace rescomp::qrc {

struct Config {
    long qubits = 4;
    double tau = 1.0;          // evolution time per input sample, coupling scale J = 1
    long virtual_nodes = 4;    // sub-interval measurements per sample
    double coupling_scale = 1.0;
    double field = 1.0;
    std::uint64_t seed = 0;

    void validate() const;
};

// Memory is 4^N complex entries; 12 qubits is already a 256 MB state.
inline constexpr long kMaxQubits = 12;

/// Hermitian, unit-trace matrix describing the quantum state. Positivity is
/// not verified on construction (it costs a full eigensolve); callers that
/// care use min_eigenvalue().
class DensityMatrix {
public:
    explicit DensityMatrix(qlinalg::ComplexMatrix matrix);

    static DensityMatrix maximally_mixed(long qubits);

    const qlinalg::ComplexMatrix& matrix() const { return matrix_; }
    long dim() const { return matrix_.rows(); }
    double min_eigenvalue() const;

private:
    qlinalg::ComplexMatrix matrix_;
};

/// Pure state |psi><psi| with |psi> = sqrt(1-u)|0> + sqrt(u)|1>.
DensityMatrix encode_input(double u);

/// Single-site operator embedded into the N-qubit space. Site 1 is the most
/// significant index bit.
qlinalg::ComplexMatrix embed_single_site(const qlinalg::ComplexMatrix& op, long site,
                                         long qubits);

/// Quantum reservoir: a fixed spin network driven by re-preparing the first
/// qubit, evolved unitarily, and observed through per-site Z expectations at
/// sub-intervals of each step (temporal multiplexing).
class Reservoir {
public:
    using State = DensityMatrix;

    struct StepResult {
        DensityMatrix state;
        Eigen::VectorXd signals;  // virtual-node-major, length qubits * virtual_nodes
    };

    struct DriveResult {
        StateTrajectory trajectory;
        State final_state;
    };

    explicit Reservoir(const Config& config);

    /// Overwrites the first qubit with the input-encoding state:
    /// rho -> encode_input(u) (x) Tr_1(rho).
    DensityMatrix inject(const DensityMatrix& rho, double u) const;

    /// Injects the sample, then alternates sub-evolution and Z readout
    /// virtual_nodes times. Total evolution time per step is tau.
    StepResult step(const DensityMatrix& rho, double u) const;

    StateTrajectory drive(const TimeSeries& input) const;
    DriveResult drive_from(const TimeSeries& input, State initial) const;

    State maximally_mixed_state() const;
    State random_initial_state(std::mt19937_64& rng) const;

    ReservoirDescriptor descriptor() const;
    long input_dimension() const { return 1; }
    const Config& config() const { return config_; }
    const qlinalg::HermitianOperator& hamiltonian() const { return hamiltonian_; }
    const qlinalg::ComplexMatrix& step_unitary() const { return step_unitary_; }
    const std::vector<qlinalg::HermitianOperator>& observables() const { return observables_; }

private:
    Config config_;
    qlinalg::HermitianOperator hamiltonian_;
    qlinalg::ComplexMatrix step_unitary_;          // exp(-i H tau / V)
    std::vector<qlinalg::HermitianOperator> observables_;  // Z_1 .. Z_N
};

/// Assembles the fully connected transverse-field Ising Hamiltonian
///   H = sum_{i<j} J_ij X_i X_j + h sum_i Z_i
/// with J_ij drawn uniformly from [-J/2, J/2], determined by config.seed.
qlinalg::HermitianOperator build_hamiltonian(const Config& config);

}  // namespace rescomp::qrc
