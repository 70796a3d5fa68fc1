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

#include "rescomp/time_series.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace rescomp {

namespace {

void check_finite(const Eigen::MatrixXd& m, const char* what) {
    for (long t = 0; t < m.rows(); ++t) {
        for (long c = 0; c < m.cols(); ++c) {
            if (!std::isfinite(m(t, c))) {
                throw std::invalid_argument(std::string(what) + ": non-finite sample at step "
                                            + std::to_string(t) + ", channel "
                                            + std::to_string(c));
            }
        }
    }
}

}  // namespace

TimeSeries::TimeSeries(Eigen::MatrixXd data, double dt) : data_(std::move(data)), dt_(dt) {
    if (data_.rows() < 1 || data_.cols() < 1) {
        throw std::invalid_argument("TimeSeries: need at least one step and one channel");
    }
    check_finite(data_, "TimeSeries");
}

TimeSeries TimeSeries::from_vector(const Eigen::VectorXd& samples, double dt) {
    Eigen::MatrixXd m(samples.size(), 1);
    m.col(0) = samples;
    return TimeSeries(std::move(m), dt);
}

StateTrajectory::StateTrajectory(Eigen::MatrixXd states, long washout)
    : states_(std::move(states)), washout_(washout) {
    if (states_.rows() < 1 || states_.cols() < 1) {
        throw std::invalid_argument("StateTrajectory: need at least one step and one signal");
    }
    if (washout_ < 0 || washout_ >= states_.rows()) {
        throw std::invalid_argument("StateTrajectory: washout must lie in [0, length)");
    }
    check_finite(states_, "StateTrajectory");
}

const char* to_string(ReservoirKind kind) {
    switch (kind) {
        case ReservoirKind::ClassicalEsn: return "esn";
        case ReservoirKind::Quantum: return "qrc";
    }
    return "unknown";
}

Eigen::MatrixXd harvest(const StateTrajectory& trajectory, long washout) {
    const long total = trajectory.length();
    if (washout < 0 || washout >= total) {
        throw std::invalid_argument("harvest: washout must lie in [0, trajectory length)");
    }
    const long rows = total - washout;
    const long k = trajectory.signals();
    Eigen::MatrixXd design(rows, k + 1);
    design.leftCols(k) = trajectory.states().bottomRows(rows);
    design.col(k).setOnes();
    return design;
}

}  // namespace rescomp
