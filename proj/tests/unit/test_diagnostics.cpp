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

#include <random>

#include "rescomp/diagnostics.hpp"
#include "rescomp/esn.hpp"
#include "rescomp/qrc.hpp"

using namespace rescomp;

namespace {

TimeSeries unit_stream(long length, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit01(0.0, 1.0);
    Eigen::VectorXd v(length);
    for (long i = 0; i < length; ++i) v[i] = unit01(rng);
    return TimeSeries::from_vector(v);
}

esn::Reservoir memoryless_esn(long nodes) {
    // W = 0, full leak: the state depends only on the current input.
    return esn::Reservoir(Eigen::MatrixXd::Zero(nodes, nodes),
                          Eigen::MatrixXd::Random(nodes, 1), Eigen::VectorXd::Zero(nodes), 1.0,
                          esn::Nonlinearity::Tanh);
}

}  // namespace

TEST_CASE("echo_state_test") {
    SUBCASE("memoryless reservoir converges at step 1") {
        esn::Reservoir r = memoryless_esn(6);
        auto result = diagnostics::echo_state_test(r, unit_stream(50, 1), 4, 1e-9, 2);
        REQUIRE(result.convergence_step.has_value());
        CHECK(*result.convergence_step == 1);
        CHECK(result.final_distance == 0.0);
    }
    SUBCASE("contracting ESN converges below 1e-6 within 500 steps") {
        esn::Config config;
        config.nodes = 100;
        config.spectral_radius = 0.9;
        config.input_scaling = 1.0;
        config.seed = 3;
        esn::Reservoir r = esn::generate(config);
        const TimeSeries input = unit_stream(500, 4);
        auto result = diagnostics::echo_state_test(r, input, 2, 1e-6, 5);
        REQUIRE(result.convergence_step.has_value());
        CHECK(*result.convergence_step <= 500);
        CHECK(result.final_distance < 1e-6);

        // once below epsilon the spread stays below it: the final distance
        // does not exceed the spread at the reported convergence step
        std::mt19937_64 rng(5);  // replays the trial draws of the test above
        auto a = r.drive_from(input, r.random_initial_state(rng));
        auto b = r.drive_from(input, r.random_initial_state(rng));
        const long converged_at = *result.convergence_step - 1;
        const double spread_at_convergence =
            (a.trajectory.states().row(converged_at) - b.trajectory.states().row(converged_at))
                .norm();
        CHECK(result.final_distance <= spread_at_convergence);
        CHECK(spread_at_convergence < 1e-6);
    }
    SUBCASE("expanding linear map is reported as not converged") {
        esn::Config config;
        config.nodes = 30;
        config.spectral_radius = 2.0;
        config.nonlinearity = esn::Nonlinearity::Identity;
        config.seed = 6;
        esn::Reservoir r = esn::generate(config);
        auto result = diagnostics::echo_state_test(r, unit_stream(200, 7), 3, 1e-6, 8);
        CHECK_FALSE(result.convergence_step.has_value());
        CHECK(result.final_distance > 1.0);
    }
    SUBCASE("quantum backend forgets its initial mixture when the dynamics mix") {
        // How fast the initial state washes out depends on the coupling draw
        // and tau; this instance is a measured, strongly mixing one.
        qrc::Config config;
        config.qubits = 3;
        config.tau = 4.0;
        config.virtual_nodes = 2;
        config.seed = 29;
        qrc::Reservoir r(config);
        auto result = diagnostics::echo_state_test(r, unit_stream(400, 10), 3, 1e-3, 11);
        CHECK(result.convergence_step.has_value());
        CHECK(result.final_distance < 1e-3);
    }
    SUBCASE("needs at least two trials") {
        CHECK_THROWS_AS(
            diagnostics::echo_state_test(memoryless_esn(3), unit_stream(10, 12), 1, 1e-6),
            std::invalid_argument);
    }
}

TEST_CASE("separation_test") {
    esn::Config config;
    config.nodes = 40;
    config.seed = 13;
    esn::Reservoir r = esn::generate(config);
    TimeSeries base = unit_stream(200, 14);

    SUBCASE("identical inputs score zero") {
        CHECK(diagnostics::separation_test(r, base, base, 20) == 0.0);
    }
    SUBCASE("distinct inputs score strictly positive, symmetrically") {
        TimeSeries other = unit_stream(200, 15);
        const double ab = diagnostics::separation_test(r, base, other, 20);
        const double ba = diagnostics::separation_test(r, other, base, 20);
        CHECK(ab > 0.0);
        CHECK(ab == doctest::Approx(ba).epsilon(1e-12));
    }
    SUBCASE("length mismatch is rejected") {
        CHECK_THROWS_AS(diagnostics::separation_test(r, base, unit_stream(100, 16), 5),
                        std::invalid_argument);
    }
}

TEST_CASE("reproducibility_test") {
    esn::Config config;
    config.nodes = 40;
    config.seed = 17;
    esn::Reservoir r = esn::generate(config);
    TimeSeries input = unit_stream(150, 18);

    SUBCASE("zero noise scores zero by convention") {
        CHECK(diagnostics::reproducibility_test(r, input, 0.0, 3, 19) == 0.0);
    }
    SUBCASE("score is locally linear in the noise amplitude") {
        const double fine = diagnostics::reproducibility_test(r, input, 1e-4, 4, 20);
        const double coarse = diagnostics::reproducibility_test(r, input, 1e-3, 4, 20);
        CHECK(fine > 0.0);
        const double ratio = coarse / fine;
        CHECK(ratio > 0.5);
        CHECK(ratio < 2.0);
    }
    SUBCASE("decoupled input cannot disturb the state") {
        esn::Reservoir deaf(Eigen::MatrixXd::Zero(5, 5), Eigen::MatrixXd::Zero(5, 1),
                            Eigen::VectorXd::Zero(5), 1.0, esn::Nonlinearity::Tanh);
        CHECK(diagnostics::reproducibility_test(deaf, input, 1e-3, 3, 21) == 0.0);
    }
}

TEST_CASE("fading_memory_profile") {
    SUBCASE("entries are r^2 values in [0, 1] and memory fades") {
        esn::Config config;
        config.nodes = 50;
        config.spectral_radius = 0.9;
        config.leak_rate = 0.5;
        config.seed = 22;
        esn::Reservoir r = esn::generate(config);
        auto profile = diagnostics::fading_memory_profile(r, 30, 1500, 23, 1e-6);
        REQUIRE(profile.size() == 30);
        for (double r2 : profile) {
            CHECK(r2 >= 0.0);
            CHECK(r2 <= 1.0);
        }
        CHECK(profile[0] > profile[29]);  // r^2(1) > r^2(30)
        CHECK(profile[0] > 0.9);
    }
    SUBCASE("memoryless reservoir has no recall at any positive delay") {
        auto profile = diagnostics::fading_memory_profile(memoryless_esn(10), 5, 800, 24, 1e-6);
        for (double r2 : profile) CHECK(r2 < 0.05);
    }
    SUBCASE("diagnostics are deterministic in the seeds") {
        esn::Config config;
        config.nodes = 20;
        config.seed = 25;
        esn::Reservoir r = esn::generate(config);
        auto a = diagnostics::fading_memory_profile(r, 8, 600, 26, 1e-6);
        auto b = diagnostics::fading_memory_profile(r, 8, 600, 26, 1e-6);
        CHECK(a == b);
    }
}
