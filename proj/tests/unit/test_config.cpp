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

#include "rescomp/config.hpp"

using namespace rescomp;
using cli::ConfigError;

namespace {

const char* kEsnConfig = R"(
# smoke experiment
[experiment]
backend = esn
seed = 42
train_fraction = 0.8
lambda = 1e-4
washout = 25

[task]
kind = sine-prediction
length = 500
horizon = 1
period = 50

[esn]
nodes = 80
spectral_radius = 0.95
connectivity = 0.2
)";

}  // namespace

TEST_CASE("a complete esn config parses with defaults and explicit values") {
    cli::ExperimentConfig config = cli::parse_config_text(kEsnConfig);
    CHECK(config.global_seed == 42);
    CHECK(config.spec.train_fraction == 0.8);
    CHECK(config.spec.lambda == 1e-4);
    REQUIRE(config.spec.washout.has_value());
    CHECK(*config.spec.washout == 25);

    CHECK(config.spec.task.kind == tasks::TaskKind::SinePrediction);
    CHECK(config.spec.task.length == 500);
    CHECK(config.spec.task.seed == 42);  // inherits the global seed

    const auto& backend = std::get<esn::Config>(config.spec.backend);
    CHECK(backend.nodes == 80);
    CHECK(backend.spectral_radius == 0.95);
    CHECK(backend.connectivity == 0.2);
    CHECK(backend.leak_rate == 1.0);  // default
    CHECK(backend.seed == 42);

    CHECK(config.output.directory == "out");
    CHECK(config.output.workers == 1);
    CHECK_FALSE(config.output.emit_states);
}

TEST_CASE("qrc config selects the quantum backend") {
    cli::ExperimentConfig config = cli::parse_config_text(R"(
[experiment]
backend = qrc
[task]
kind = delay-memory
length = 100
delay = 2
[qrc]
qubits = 4
tau = 2.0
virtual_nodes = 8
)");
    const auto& backend = std::get<qrc::Config>(config.spec.backend);
    CHECK(backend.qubits == 4);
    CHECK(backend.tau == 2.0);
    CHECK(backend.virtual_nodes == 8);
    CHECK(backend.coupling_scale == 1.0);
    CHECK(backend.field == 1.0);
}

TEST_CASE("fail-closed parsing") {
    SUBCASE("unknown key") {
        CHECK_THROWS_WITH_AS(cli::parse_config_text(R"(
[experiment]
backend = esn
typo_key = 3
[task]
kind = narma10
length = 100
[esn]
nodes = 10
)"),
                             doctest::Contains("typo_key"), ConfigError);
    }
    SUBCASE("unknown section") {
        CHECK_THROWS_WITH_AS(cli::parse_config_text(R"(
[experiment]
backend = esn
[task]
kind = narma10
length = 100
[esn]
nodes = 10
[plotting]
style = dark
)"),
                             doctest::Contains("plotting"), ConfigError);
    }
    SUBCASE("task keys that do not apply to the kind") {
        CHECK_THROWS_AS(cli::parse_config_text(R"(
[experiment]
backend = esn
[task]
kind = narma10
length = 100
period = 50
[esn]
nodes = 10
)"),
                        ConfigError);
    }
    SUBCASE("both backend sections present") {
        CHECK_THROWS_WITH_AS(cli::parse_config_text(R"(
[experiment]
backend = esn
[task]
kind = narma10
length = 100
[esn]
nodes = 10
[qrc]
qubits = 2
)"),
                             doctest::Contains("exactly one backend"), ConfigError);
    }
    SUBCASE("missing required key") {
        CHECK_THROWS_WITH_AS(cli::parse_config_text(R"(
[experiment]
backend = esn
[task]
kind = narma10
length = 100
[esn]
spectral_radius = 0.9
)"),
                             doctest::Contains("nodes"), ConfigError);
    }
    SUBCASE("duplicate key") {
        CHECK_THROWS_WITH_AS(cli::parse_config_text(R"(
[experiment]
backend = esn
seed = 1
seed = 2
[task]
kind = narma10
length = 100
[esn]
nodes = 10
)"),
                             doctest::Contains("duplicate"), ConfigError);
    }
    SUBCASE("malformed number carries the line number") {
        CHECK_THROWS_WITH_AS(cli::parse_config_text(R"(
[experiment]
backend = esn
[task]
kind = narma10
length = ten
[esn]
nodes = 10
)"),
                             doctest::Contains(":6:"), ConfigError);
    }
    SUBCASE("missing file names the path") {
        CHECK_THROWS_WITH_AS(cli::parse_config_file("/no/such/config.ini"),
                             doctest::Contains("/no/such/config.ini"), ConfigError);
    }
}

TEST_CASE("seed override respects explicitly pinned section seeds") {
    cli::ExperimentConfig config = cli::parse_config_text(R"(
[experiment]
backend = esn
seed = 1
[task]
kind = narma10
length = 100
seed = 77
[esn]
nodes = 10
)");
    CHECK(config.spec.task.seed == 77);
    CHECK(std::get<esn::Config>(config.spec.backend).seed == 1);

    cli::override_global_seed(config, 5);
    CHECK(config.global_seed == 5);
    CHECK(config.spec.task.seed == 77);  // stays pinned
    CHECK(std::get<esn::Config>(config.spec.backend).seed == 5);
}

TEST_CASE("sweeps") {
    SUBCASE("a single declaration enumerates in order") {
        cli::ExperimentConfig config = cli::parse_config_text(R"(
[experiment]
backend = esn
[task]
kind = narma10
length = 100
[esn]
nodes = 10
[sweep]
esn.spectral_radius = 0.5, 0.9, 1.2
)");
        auto points = cli::expand_sweeps(config);
        REQUIRE(points.size() == 3);
        CHECK(std::get<esn::Config>(points[0].backend).spectral_radius == 0.5);
        CHECK(std::get<esn::Config>(points[1].backend).spectral_radius == 0.9);
        CHECK(std::get<esn::Config>(points[2].backend).spectral_radius == 1.2);
    }
    SUBCASE("two declarations take the Cartesian product, first varying slowest") {
        cli::ExperimentConfig config = cli::parse_config_text(R"(
[experiment]
backend = qrc
[task]
kind = delay-memory
length = 100
delay = 2
[qrc]
qubits = 2
[sweep]
qrc.tau = 1, 2
qrc.virtual_nodes = 3, 5
)");
        auto points = cli::expand_sweeps(config);
        REQUIRE(points.size() == 4);
        CHECK(std::get<qrc::Config>(points[0].backend).tau == 1.0);
        CHECK(std::get<qrc::Config>(points[0].backend).virtual_nodes == 3);
        CHECK(std::get<qrc::Config>(points[1].backend).virtual_nodes == 5);
        CHECK(std::get<qrc::Config>(points[2].backend).tau == 2.0);
    }
    SUBCASE("sweep keys must name existing fields of the active backend") {
        CHECK_THROWS_AS(cli::parse_config_text(R"(
[experiment]
backend = esn
[task]
kind = narma10
length = 100
[esn]
nodes = 10
[sweep]
qrc.tau = 1, 2
)"),
                        ConfigError);
        CHECK_THROWS_AS(cli::parse_config_text(R"(
[experiment]
backend = esn
[task]
kind = narma10
length = 100
[esn]
nodes = 10
[sweep]
esn.flux = 1, 2
)"),
                        ConfigError);
    }
    SUBCASE("integer-valued fields reject fractional sweep values") {
        CHECK_THROWS_AS(cli::parse_config_text(R"(
[experiment]
backend = esn
[task]
kind = narma10
length = 100
[esn]
nodes = 10
[sweep]
esn.nodes = 10.5, 20
)"),
                        ConfigError);
    }
}
