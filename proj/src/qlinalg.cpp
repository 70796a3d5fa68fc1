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

#include "rescomp/qlinalg.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace rescomp::qlinalg {

namespace {

bool is_power_of_two(long n) { return n > 0 && (n & (n - 1)) == 0; }

void check_square(const ComplexMatrix& m, const char* what) {
    if (m.rows() != m.cols() || m.rows() < 1) {
        throw std::invalid_argument(std::string(what) + ": matrix must be square and non-empty");
    }
}

}  // namespace

double hermiticity_error(const ComplexMatrix& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

HermitianOperator::HermitianOperator(ComplexMatrix m, double tolerance) : matrix_(std::move(m)) {
    check_square(matrix_, "HermitianOperator");
    if (!matrix_.allFinite()) {
        throw std::invalid_argument("HermitianOperator: non-finite entries");
    }
    const double err = hermiticity_error(matrix_);
    if (err > tolerance) {
        throw std::invalid_argument("HermitianOperator: hermiticity deviation "
                                    + std::to_string(err) + " exceeds tolerance");
    }
}

Eigendecomposition eigendecompose(const HermitianOperator& a) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a.matrix());
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("eigendecompose: solver failed to converge");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

ComplexMatrix evolution_unitary(const HermitianOperator& h, double tau) {
    const Eigendecomposition eig = eigendecompose(h);
    const long d = h.dim();
    Eigen::VectorXcd phases(d);
    for (long i = 0; i < d; ++i) {
        phases[i] = std::exp(std::complex<double>(0.0, -eig.eigenvalues[i] * tau));
    }
    return eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.adjoint();
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (long i = 0; i < a.rows(); ++i) {
        for (long j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

ComplexMatrix partial_trace_first_qubit(const ComplexMatrix& rho) {
    check_square(rho, "partial_trace_first_qubit");
    const long dim = rho.rows();
    if (!is_power_of_two(dim) || dim < 2) {
        throw std::invalid_argument(
            "partial_trace_first_qubit: dimension must be a power of two, >= 2");
    }
    const long half = dim / 2;
    return rho.topLeftCorner(half, half) + rho.bottomRightCorner(half, half);
}

double real_trace_product(const ComplexMatrix& rho, const HermitianOperator& a) {
    if (rho.rows() != a.dim() || rho.cols() != a.dim()) {
        throw std::invalid_argument("real_trace_product: dimension mismatch");
    }
    // Tr(rho A) = sum_ij rho(j, i) A(i, j), evaluated without forming rho*A.
    const std::complex<double> trace =
        (rho.transpose().cwiseProduct(a.matrix())).sum();
    if (std::abs(trace.imag()) > 1e-10) {
        throw std::runtime_error("real_trace_product: trace has imaginary part "
                                 + std::to_string(trace.imag()) + "; inputs corrupted");
    }
    return trace.real();
}

ComplexMatrix pauli_x() {
    ComplexMatrix x(2, 2);
    x << 0, 1, 1, 0;
    return x;
}

ComplexMatrix pauli_z() {
    ComplexMatrix z(2, 2);
    z << 1, 0, 0, -1;
    return z;
}

ComplexMatrix identity2() { return ComplexMatrix::Identity(2, 2); }

}  // namespace rescomp::qlinalg
