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

namespace rescomp {

/// A finite multi-channel signal sampled at a fixed step spacing.
///
/// Rows are time steps, columns are channels. The step spacing `dt` is
/// metadata only; nothing in the library integrates against it.
class TimeSeries {
public:
    explicit TimeSeries(Eigen::MatrixXd data, double dt = 1.0);

    static TimeSeries from_vector(const Eigen::VectorXd& samples, double dt = 1.0);

    long length() const { return data_.rows(); }
    long channels() const { return data_.cols(); }
    double dt() const { return dt_; }
    const Eigen::MatrixXd& data() const { return data_; }
    double at(long step, long channel = 0) const { return data_(step, channel); }

private:
    Eigen::MatrixXd data_;
    double dt_;
};

/// Observed reservoir signals over time, one row per driven input step.
class StateTrajectory {
public:
    explicit StateTrajectory(Eigen::MatrixXd states, long washout = 0);

    long length() const { return states_.rows(); }
    long signals() const { return states_.cols(); }
    long washout() const { return washout_; }
    const Eigen::MatrixXd& states() const { return states_; }

private:
    Eigen::MatrixXd states_;
    long washout_;
};

enum class ReservoirKind { ClassicalEsn, Quantum };

/// Uniform handle describing a backend without exposing its state type.
struct ReservoirDescriptor {
    ReservoirKind kind = ReservoirKind::ClassicalEsn;
    long readout_dimension = 0;
    long state_dimension = 0;
};

const char* to_string(ReservoirKind kind);

/// Assembles the regression design matrix from a trajectory: rows after the
/// washout, with a constant-1 column appended for the bias term.
Eigen::MatrixXd harvest(const StateTrajectory& trajectory, long washout);

}  // namespace rescomp
