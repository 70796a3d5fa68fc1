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

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "rescomp/qrc.hpp"
#include "support/qrc_reference.hpp"

using namespace rescomp;
using qlinalg::ComplexMatrix;

namespace {

qrc_reference::Matrix to_reference(const ComplexMatrix& m) {
    qrc_reference::Matrix out(m.rows());
    for (long r = 0; r < m.rows(); ++r) {
        for (long c = 0; c < m.cols(); ++c) out.at(r, c) = m(r, c);
    }
    return out;
}

TimeSeries unit_input(long length, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit01(0.0, 1.0);
    Eigen::VectorXd v(length);
    for (long i = 0; i < length; ++i) v[i] = unit01(rng);
    return TimeSeries::from_vector(v);
}

}  // namespace

TEST_CASE("encode_input") {
    SUBCASE("u=0 is the ground state") {
        ComplexMatrix rho = qrc::encode_input(0.0).matrix();
        CHECK(rho(0, 0) == std::complex<double>(1.0, 0.0));
        CHECK(std::abs(rho(0, 1)) == 0.0);
        CHECK(std::abs(rho(1, 1)) == 0.0);
    }
    SUBCASE("u=1 is the excited state") {
        ComplexMatrix rho = qrc::encode_input(1.0).matrix();
        CHECK(rho(1, 1) == std::complex<double>(1.0, 0.0));
        CHECK(std::abs(rho(0, 0)) == 0.0);
    }
    SUBCASE("u=0.25 matches the closed form") {
        ComplexMatrix rho = qrc::encode_input(0.25).matrix();
        CHECK(rho(0, 0).real() == doctest::Approx(0.75).epsilon(1e-15));
        CHECK(rho(1, 1).real() == doctest::Approx(0.25).epsilon(1e-15));
        CHECK(rho(0, 1).real() == doctest::Approx(std::sqrt(0.1875)).epsilon(1e-15));
        CHECK(rho(1, 0).real() == doctest::Approx(std::sqrt(0.1875)).epsilon(1e-15));
    }
    SUBCASE("inputs outside [0,1] are rejected") {
        CHECK_THROWS_AS(qrc::encode_input(-0.01), std::invalid_argument);
        CHECK_THROWS_AS(qrc::encode_input(1.01), std::invalid_argument);
    }
}

TEST_CASE("build_hamiltonian") {
    SUBCASE("single qubit reduces to the field term") {
        qrc::Config config;
        config.qubits = 1;
        config.field = 0.75;
        config.seed = 1;
        ComplexMatrix h = qrc::build_hamiltonian(config).matrix();
        CHECK((h - 0.75 * qlinalg::pauli_z()).cwiseAbs().maxCoeff() == 0.0);
    }
    SUBCASE("same seed reproduces the same Hamiltonian") {
        qrc::Config config;
        config.qubits = 3;
        config.seed = 2;
        ComplexMatrix a = qrc::build_hamiltonian(config).matrix();
        ComplexMatrix b = qrc::build_hamiltonian(config).matrix();
        CHECK((a - b).cwiseAbs().maxCoeff() == 0.0);
    }
    SUBCASE("two qubits match a hand-assembled 4x4 matrix") {
        qrc::Config config;
        config.qubits = 2;
        config.coupling_scale = 1.0;
        config.field = 0.5;
        config.seed = 3;
        // reproduce the single coupling draw
        std::mt19937_64 rng(config.seed);
        std::uniform_real_distribution<double> coupling(-0.5, 0.5);
        const double j12 = coupling(rng);

        ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
        // X (x) X swaps both bits
        expected(0, 3) = j12;
        expected(1, 2) = j12;
        expected(2, 1) = j12;
        expected(3, 0) = j12;
        // h (Z (x) I + I (x) Z) on the diagonal: 2h, 0, 0, -2h
        expected(0, 0) = 2.0 * 0.5;
        expected(3, 3) = -2.0 * 0.5;

        ComplexMatrix h = qrc::build_hamiltonian(config).matrix();
        CHECK((h - expected).cwiseAbs().maxCoeff() < 1e-15);
    }
    SUBCASE("qubit cap is enforced") {
        qrc::Config config;
        config.qubits = qrc::kMaxQubits + 1;
        CHECK_THROWS_AS(qrc::build_hamiltonian(config), std::invalid_argument);
    }
}

TEST_CASE("inject") {
    SUBCASE("re-inserting the traced-out ground state is the identity operation") {
        qrc::Config config;
        config.qubits = 3;
        config.seed = 4;
        qrc::Reservoir reservoir(config);

        // eta: arbitrary state of the remaining two qubits
        std::mt19937_64 rng(5);
        std::uniform_real_distribution<double> unit(-1.0, 1.0);
        ComplexMatrix m(4, 4);
        for (long r = 0; r < 4; ++r) {
            for (long c = 0; c < 4; ++c) m(r, c) = {unit(rng), unit(rng)};
        }
        ComplexMatrix eta = m * m.adjoint();
        eta /= eta.trace().real();

        qrc::DensityMatrix rho(qlinalg::kron(qrc::encode_input(0.0).matrix(), eta));
        ComplexMatrix injected = reservoir.inject(rho, 0.0).matrix();
        CHECK((injected - rho.matrix()).cwiseAbs().maxCoeff() < 1e-14);
    }
    SUBCASE("trace stays 1") {
        qrc::Config config;
        config.qubits = 2;
        config.seed = 6;
        qrc::Reservoir reservoir(config);
        std::mt19937_64 rng(7);
        qrc::DensityMatrix rho = reservoir.random_initial_state(rng);
        for (double u : {0.0, 0.3, 0.99}) {
            CHECK(std::abs(reservoir.inject(rho, u).matrix().trace()
                           - std::complex<double>(1.0, 0.0))
                  < 1e-12);
        }
    }
    SUBCASE("matches the composed partial-trace and kron oracle") {
        qrc::Config config;
        config.qubits = 2;
        config.seed = 8;
        qrc::Reservoir reservoir(config);
        std::mt19937_64 rng(9);
        qrc::DensityMatrix rho = reservoir.random_initial_state(rng);

        qrc_reference::Matrix expected = qrc_reference::inject(to_reference(rho.matrix()), 0.5);
        ComplexMatrix actual = reservoir.inject(rho, 0.5).matrix();
        for (long r = 0; r < 4; ++r) {
            for (long c = 0; c < 4; ++c) {
                CHECK(std::abs(actual(r, c) - expected.at(r, c)) < 1e-14);
            }
        }
    }
}

TEST_CASE("step: closed-form single-qubit checks") {
    SUBCASE("no dynamics keeps the injected qubit where it was put") {
        // field 0 and a single qubit leave H = 0.
        qrc::Config config;
        config.qubits = 1;
        config.field = 0.0;
        config.tau = 1.3;
        config.virtual_nodes = 4;
        config.seed = 10;
        qrc::Reservoir reservoir(config);

        auto ground = reservoir.step(reservoir.maximally_mixed_state(), 0.0);
        CHECK((ground.signals.array() - 1.0).abs().maxCoeff() < 1e-12);

        auto balanced = reservoir.step(reservoir.maximally_mixed_state(), 0.5);
        CHECK(balanced.signals.cwiseAbs().maxCoeff() < 1e-12);
    }
    SUBCASE("Z-field commutes with Z readout") {
        qrc::Config config;
        config.qubits = 1;
        config.field = 1.0;
        config.tau = std::numbers::pi;
        config.virtual_nodes = 2;
        config.seed = 11;
        qrc::Reservoir reservoir(config);
        auto result = reservoir.step(reservoir.maximally_mixed_state(), 0.0);
        CHECK((result.signals.array() - 1.0).abs().maxCoeff() < 1e-12);
    }
    SUBCASE("half-period Z evolution flips the X expectation of |+>") {
        // d/dt <X> under H = Z: <X>(t) = cos(2t) for |+>; at t = pi/2 it is -1.
        qlinalg::HermitianOperator h(qlinalg::pauli_z());
        ComplexMatrix u = qlinalg::evolution_unitary(h, std::numbers::pi / 2.0);
        ComplexMatrix plus(2, 2);
        plus.setConstant(0.5);  // |+><+|
        ComplexMatrix evolved = u * plus * u.adjoint();
        const double x_expectation = qlinalg::real_trace_product(
            evolved, qlinalg::HermitianOperator(qlinalg::pauli_x()));
        CHECK(x_expectation == doctest::Approx(-1.0).epsilon(1e-12));
    }
}

TEST_CASE("drive") {
    SUBCASE("trajectory has one row of N*V signals per sample") {
        qrc::Config config;
        config.qubits = 3;
        config.virtual_nodes = 5;
        config.seed = 12;
        qrc::Reservoir reservoir(config);
        StateTrajectory trajectory = reservoir.drive(unit_input(11, 13));
        CHECK(trajectory.length() == 11);
        CHECK(trajectory.signals() == 15);
        CHECK(reservoir.descriptor().readout_dimension == 15);
    }
    SUBCASE("signals are Z expectations, so they stay in [-1, 1]") {
        qrc::Config config;
        config.qubits = 2;
        config.tau = 3.0;
        config.virtual_nodes = 3;
        config.seed = 14;
        qrc::Reservoir reservoir(config);
        StateTrajectory trajectory = reservoir.drive(unit_input(200, 15));
        CHECK(trajectory.states().cwiseAbs().maxCoeff() <= 1.0 + 1e-12);
    }
    SUBCASE("multichannel input is rejected") {
        qrc::Config config;
        config.qubits = 2;
        config.seed = 16;
        qrc::Reservoir reservoir(config);
        CHECK_THROWS_AS(reservoir.drive(TimeSeries(Eigen::MatrixXd::Constant(4, 2, 0.5))),
                        std::invalid_argument);
    }
    SUBCASE("out-of-range samples are rejected with their step index") {
        qrc::Config config;
        config.qubits = 2;
        config.seed = 17;
        qrc::Reservoir reservoir(config);
        Eigen::VectorXd v(3);
        v << 0.5, 1.5, 0.5;
        CHECK_THROWS_WITH_AS(reservoir.drive(TimeSeries::from_vector(v)),
                             doctest::Contains("step 1"), std::invalid_argument);
    }
    SUBCASE("matches the independent dense-arithmetic reference") {
        for (long qubits : {1L, 2L, 3L}) {
            qrc::Config config;
            config.qubits = qubits;
            config.tau = 1.7;
            config.virtual_nodes = 3;
            config.seed = 18 + static_cast<std::uint64_t>(qubits);
            qrc::Reservoir reservoir(config);

            TimeSeries input = unit_input(8, 19);
            StateTrajectory trajectory = reservoir.drive(input);

            std::vector<double> inputs(input.data().data(),
                                       input.data().data() + input.length());
            auto expected = qrc_reference::drive(to_reference(reservoir.hamiltonian().matrix()),
                                                 qubits, config.tau, config.virtual_nodes,
                                                 inputs);
            for (long t = 0; t < input.length(); ++t) {
                for (long k = 0; k < trajectory.signals(); ++k) {
                    CHECK(trajectory.states()(t, k)
                          == doctest::Approx(expected[static_cast<std::size_t>(t)]
                                                     [static_cast<std::size_t>(k)])
                                 .epsilon(1e-10));
                }
            }
        }
    }
    SUBCASE("drive composition holds for the quantum fold too") {
        qrc::Config config;
        config.qubits = 2;
        config.tau = 0.9;
        config.virtual_nodes = 2;
        config.seed = 20;
        qrc::Reservoir reservoir(config);

        TimeSeries full = unit_input(10, 21);
        TimeSeries head(full.data().topRows(6));
        TimeSeries tail(full.data().bottomRows(4));

        auto whole = reservoir.drive_from(full, reservoir.maximally_mixed_state());
        auto first = reservoir.drive_from(head, reservoir.maximally_mixed_state());
        auto second = reservoir.drive_from(tail, first.final_state);
        CHECK((whole.trajectory.states().topRows(6) - first.trajectory.states())
                  .cwiseAbs()
                  .maxCoeff()
              == 0.0);
        CHECK((whole.trajectory.states().bottomRows(4) - second.trajectory.states())
                  .cwiseAbs()
                  .maxCoeff()
              == 0.0);
    }
}

TEST_CASE("physicality over many steps") {
    qrc::Config config;
    config.qubits = 4;
    config.tau = 2.0;
    config.virtual_nodes = 4;
    config.seed = 22;
    qrc::Reservoir reservoir(config);

    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> unit01(0.0, 1.0);
    qrc::DensityMatrix rho = reservoir.maximally_mixed_state();
    for (int step = 1; step <= 300; ++step) {
        rho = reservoir.step(rho, unit01(rng)).state;
        CHECK(std::abs(rho.matrix().trace() - std::complex<double>(1.0, 0.0)) <= 1e-10);
        CHECK(qlinalg::hermiticity_error(rho.matrix()) <= 1e-10);
        if (step % 100 == 0) CHECK(rho.min_eigenvalue() >= -1e-8);
    }
}

TEST_CASE("unitary sub-evolution preserves the spectrum of rho") {
    qrc::Config config;
    config.qubits = 3;
    config.tau = 1.1;
    config.virtual_nodes = 1;
    config.seed = 24;
    qrc::Reservoir reservoir(config);

    std::mt19937_64 rng(25);
    qrc::DensityMatrix rho = reservoir.random_initial_state(rng);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> before(rho.matrix(), Eigen::EigenvaluesOnly);

    const ComplexMatrix u = reservoir.step_unitary();
    qrc::DensityMatrix evolved(u * rho.matrix() * u.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> after(evolved.matrix(),
                                                       Eigen::EigenvaluesOnly);
    CHECK((before.eigenvalues() - after.eigenvalues()).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("signals carry memory of earlier inputs beyond the injected qubit") {
    qrc::Config config;
    config.qubits = 3;
    config.tau = 2.0;
    config.virtual_nodes = 2;
    config.seed = 26;
    qrc::Reservoir reservoir(config);

    Eigen::VectorXd a(3), b(3);
    a << 0.2, 0.9, 0.5;
    b << 0.2, 0.1, 0.5;  // differs only at step 1
    StateTrajectory run_a = reservoir.drive(TimeSeries::from_vector(a));
    StateTrajectory run_b = reservoir.drive(TimeSeries::from_vector(b));

    // At step 2 the first qubit has been overwritten by the (equal) input,
    // but sites 2..N keep a trace of the differing step-1 input.
    const long v_last = (config.virtual_nodes - 1) * config.qubits;
    double site_difference = 0.0;
    for (long i = 1; i < config.qubits; ++i) {
        site_difference += std::abs(run_a.states()(2, v_last + i) - run_b.states()(2, v_last + i));
    }
    CHECK(site_difference > 1e-6);
}
