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

#include <optional>
#include <variant>

#include "rescomp/esn.hpp"
#include "rescomp/qrc.hpp"
#include "rescomp/readout.hpp"
#include "rescomp/tasks.hpp"
#include "rescomp/time_series.hpp"

namespace rescomp {

using BackendConfig = std::variant<esn::Config, qrc::Config>;
using Backend = std::variant<esn::Reservoir, qrc::Reservoir>;

Backend build_backend(const BackendConfig& config);
ReservoirDescriptor backend_descriptor(const Backend& backend);
ReservoirKind backend_kind(const BackendConfig& config);

struct ExperimentSpec {
    tasks::TaskSpec task;
    BackendConfig backend;
    double lambda = 1e-6;
    std::optional<long> washout;  // default: 10% of the training segment
    double train_fraction = 0.7;

    void validate() const;
};

struct Metrics {
    double nmse = 0.0;
    double mse = 0.0;
    double r2 = 0.0;
    double train_nmse = 0.0;
    double nmse_mean_baseline = 0.0;   // train-mean predictor on the test segment
    double nmse_persistence = 0.0;     // previous target value as prediction
};

struct ExperimentResult {
    Metrics metrics;
    readout::Readout readout;
    TimeSeries predictions;    // test segment, target units
    TimeSeries test_targets;
    StateTrajectory trajectory;
    tasks::AffineMap input_map;  // map fed to the reservoir (identity for classical)
    ReservoirDescriptor descriptor;
    long washout = 0;
    long train_length = 0;
    long test_length = 0;
    int task_regenerations = 0;
};

/// Generates the task, drives the configured backend, fits the readout on
/// the training prefix and evaluates on the held-out suffix. The split is
/// contiguous in time; reservoirs are stateful, so rows are never shuffled.
ExperimentResult run_experiment(const ExperimentSpec& spec);

/// Same protocol against a caller-supplied reservoir (the task data is still
/// generated from spec.task). Lets tests and sweeps reuse a built backend.
ExperimentResult run_experiment_with(const ExperimentSpec& spec, const Backend& backend);

}  // namespace rescomp
