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

#include <Eigen/Dense>
#include <complex>

namespace rescomp::qlinalg {

using ComplexMatrix = Eigen::MatrixXcd;

inline constexpr double kHermitianTolerance = 1e-12;

/// Largest entrywise deviation |M - M^dagger|.
double hermiticity_error(const ComplexMatrix& m);

/// A square complex matrix checked to be Hermitian on construction.
class HermitianOperator {
public:
    explicit HermitianOperator(ComplexMatrix m, double tolerance = kHermitianTolerance);

    const ComplexMatrix& matrix() const { return matrix_; }
    long dim() const { return matrix_.rows(); }

private:
    ComplexMatrix matrix_;
};

struct Eigendecomposition {
    Eigen::VectorXd eigenvalues;   // ascending
    ComplexMatrix eigenvectors;    // unitary, columns match eigenvalues
};

/// Spectral decomposition A = U diag(lambda) U^dagger.
Eigendecomposition eigendecompose(const HermitianOperator& a);

/// Propagator exp(-i H tau), computed from the spectral decomposition of H.
ComplexMatrix evolution_unitary(const HermitianOperator& h, double tau);

/// Kronecker product, dimension dim(a) * dim(b).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Reduced matrix after tracing out the first qubit.
///
/// Convention: the first qubit is the most significant bit of the
/// computational-basis index, so entry (i, j) of the result is
/// rho(i, j) + rho(i + D/2, j + D/2).
ComplexMatrix partial_trace_first_qubit(const ComplexMatrix& rho);

/// Re Tr(rho * A) for Hermitian rho and A. The imaginary part of the trace
/// must vanish to 1e-10; anything larger signals corrupted inputs and throws.
double real_trace_product(const ComplexMatrix& rho, const HermitianOperator& a);

/// 2x2 constants used throughout the quantum backend.
ComplexMatrix pauli_x();
ComplexMatrix pauli_z();
ComplexMatrix identity2();

}  // namespace rescomp::qlinalg
