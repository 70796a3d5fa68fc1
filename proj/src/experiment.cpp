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

#include "rescomp/experiment.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace rescomp {

namespace {

[[noreturn]] void rethrow_with_stage(const char* stage, const std::exception& e) {
    throw std::runtime_error(std::string(stage) + ": " + e.what());
}

}  // namespace

Backend build_backend(const BackendConfig& config) {
    return std::visit(
        [](const auto& c) -> Backend {
            using C = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<C, esn::Config>) {
                return esn::generate(c);
            } else {
                return qrc::Reservoir(c);
            }
        },
        config);
}

ReservoirDescriptor backend_descriptor(const Backend& backend) {
    return std::visit([](const auto& r) { return r.descriptor(); }, backend);
}

ReservoirKind backend_kind(const BackendConfig& config) {
    return std::holds_alternative<esn::Config>(config) ? ReservoirKind::ClassicalEsn
                                                       : ReservoirKind::Quantum;
}

void ExperimentSpec::validate() const {
    task.validate();
    std::visit([](const auto& c) { c.validate(); }, backend);
    if (!(lambda >= 0) || !std::isfinite(lambda)) {
        throw std::invalid_argument("experiment: lambda must be finite and >= 0");
    }
    if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
        throw std::invalid_argument("experiment: train_fraction must lie in (0, 1)");
    }
    if (washout && *washout < 0) {
        throw std::invalid_argument("experiment: washout must be >= 0");
    }
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
    spec.validate();
    Backend backend = [&] {
        try {
            return build_backend(spec.backend);
        } catch (const std::exception& e) {
            rethrow_with_stage("backend-build", e);
        }
    }();
    return run_experiment_with(spec, backend);
}

ExperimentResult run_experiment_with(const ExperimentSpec& spec, const Backend& backend) {
    spec.validate();

    tasks::TaskData data = [&] {
        try {
            return tasks::generate(spec.task);
        } catch (const std::exception& e) {
            rethrow_with_stage("task-generation", e);
        }
    }();

    const ReservoirDescriptor descriptor = backend_descriptor(backend);
    const bool quantum = descriptor.kind == ReservoirKind::Quantum;
    const tasks::AffineMap input_map =
        quantum ? data.input_map : tasks::AffineMap{0.0, 1.0};

    StateTrajectory trajectory = [&] {
        try {
            const TimeSeries drive_input =
                quantum ? tasks::apply_map(data.input, input_map) : data.input;
            return std::visit([&](const auto& r) { return r.drive(drive_input); }, backend);
        } catch (const std::exception& e) {
            rethrow_with_stage("drive", e);
        }
    }();

    const long total = data.input.length();
    const long train_length = static_cast<long>(std::floor(spec.train_fraction * total));
    const long test_length = total - train_length;
    if (test_length < 1) {
        throw std::runtime_error("split: no test data (train fraction too large)");
    }
    const long washout = spec.washout ? *spec.washout : train_length / 10;
    if (washout >= train_length) {
        throw std::runtime_error("split: washout consumes the whole training segment");
    }

    const Eigen::MatrixXd design = harvest(trajectory, 0);
    const Eigen::MatrixXd train_design = design.middleRows(washout, train_length - washout);
    const Eigen::MatrixXd test_design = design.bottomRows(test_length);
    const Eigen::MatrixXd train_targets =
        data.target.data().middleRows(washout, train_length - washout);
    const Eigen::MatrixXd test_targets = data.target.data().bottomRows(test_length);

    readout::Readout fitted = [&] {
        try {
            return readout::fit(train_design, train_targets, spec.lambda);
        } catch (const std::exception& e) {
            rethrow_with_stage("fit", e);
        }
    }();

    ExperimentResult result{.metrics = {},
                            .readout = std::move(fitted),
                            .predictions = TimeSeries(Eigen::MatrixXd::Zero(1, 1)),
                            .test_targets = TimeSeries(test_targets),
                            .trajectory = std::move(trajectory),
                            .input_map = input_map,
                            .descriptor = descriptor,
                            .washout = washout,
                            .train_length = train_length,
                            .test_length = test_length,
                            .task_regenerations = data.regenerations};
    try {
        const Eigen::MatrixXd predicted = readout::apply_rows(result.readout, test_design);
        result.predictions = TimeSeries(predicted);

        Metrics& m = result.metrics;
        m.nmse = readout::nmse(predicted, test_targets);
        m.mse = (predicted - test_targets).squaredNorm()
                / static_cast<double>(test_targets.size());
        m.r2 = readout::r_squared(predicted, test_targets);
        m.train_nmse =
            readout::nmse(readout::apply_rows(result.readout, train_design), train_targets);

        Eigen::MatrixXd mean_prediction(test_length, test_targets.cols());
        for (long c = 0; c < test_targets.cols(); ++c) {
            mean_prediction.col(c).setConstant(train_targets.col(c).mean());
        }
        m.nmse_mean_baseline = readout::nmse(mean_prediction, test_targets);

        // Persistence: predict each test target with its predecessor.
        const Eigen::MatrixXd persisted =
            data.target.data().middleRows(train_length - 1, test_length);
        m.nmse_persistence = readout::nmse(persisted, test_targets);
    } catch (const std::exception& e) {
        rethrow_with_stage("evaluate", e);
    }
    return result;
}

}  // namespace rescomp
