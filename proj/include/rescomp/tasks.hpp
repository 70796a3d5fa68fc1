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
#include <string>
#include <vector>

#include "rescomp/time_series.hpp"

namespace rescomp::tasks {

enum class TaskKind { Narma10, DelayMemory, SinePrediction, MackeyGlass };

const char* to_string(TaskKind kind);
TaskKind task_kind_from_string(const std::string& name);

/// Invertible affine map recorded alongside normalized data:
/// unit = (raw - offset) * scale.
struct AffineMap {
    double offset = 0.0;
    double scale = 1.0;

    double to_unit(double raw) const { return (raw - offset) * scale; }
    double from_unit(double unit) const { return unit / scale + offset; }
};

struct TaskSpec {
    TaskKind kind = TaskKind::Narma10;
    long length = 1000;
    long delay = 1;       // delay-memory
    long horizon = 1;     // sine-prediction, mackey-glass
    double period = 50.0; // sine-prediction
    std::uint64_t seed = 0;

    void validate() const;
};

struct TaskData {
    TimeSeries input;
    TimeSeries target;
    AffineMap input_map;   // maps realized input into [0, 1]
    int regenerations = 0; // divergence-guard redraws (NARMA only)
};

TaskData generate(const TaskSpec& spec);

/// NARMA-10: input i.i.d. uniform on [0, 0.5];
///   y[t+1] = 0.3 y[t] + 0.05 y[t] sum_{i=0..9} y[t-i] + 1.5 u[t-9] u[t] + 0.1
/// with zero-padded history. Redraws the input (seed offset +1) if |y| > 10.
TaskData narma10(long length, std::uint64_t seed);

/// target[t] = input[t-d], zero-padded; input i.i.d. uniform on [0, 1].
TaskData delay_memory(long length, long delay, std::uint64_t seed);

/// input sin(2 pi t / period); target is the same wave advanced by horizon.
TaskData sine_prediction(long length, long horizon, double period, std::uint64_t seed);

/// Chaotic delay-differential benchmark, integrated with fixed-step RK4;
/// target is the series advanced by horizon.
TaskData mackey_glass(long length, long horizon, std::uint64_t seed);

/// Sum of per-delay squared correlations; entries must lie in [0, 1].
double memory_capacity(const std::vector<double>& per_delay_r2);

/// Affine map onto [0, 1] from the realized min/max, with a degenerate-range
/// guard (constant series map to 0.5).
AffineMap unit_interval_map(const TimeSeries& series);

TimeSeries apply_map(const TimeSeries& series, const AffineMap& map);

/// series shifted down by `delay` steps, zero-padded at the start.
Eigen::VectorXd delayed_series(const Eigen::VectorXd& series, long delay);

namespace detail {

/// NARMA-10 recurrence applied to a given input sequence.
Eigen::VectorXd narma10_targets(const Eigen::VectorXd& input);

/// RK4 integration of dx/dt = 0.2 x(t-17) / (1 + x(t-17)^10) - 0.1 x(t) from
/// constant history 1.2, discarding the leading transient. Delayed values
/// off the step grid are linearly interpolated.
Eigen::VectorXd integrate_mackey_glass(long samples, double dt, double transient_time = 1000.0);

}  // namespace detail

}  // namespace rescomp::tasks
