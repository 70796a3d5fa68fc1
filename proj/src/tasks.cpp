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

#include "rescomp/tasks.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace rescomp::tasks {

const char* to_string(TaskKind kind) {
    switch (kind) {
        case TaskKind::Narma10: return "narma10";
        case TaskKind::DelayMemory: return "delay-memory";
        case TaskKind::SinePrediction: return "sine-prediction";
        case TaskKind::MackeyGlass: return "mackey-glass";
    }
    return "unknown";
}

TaskKind task_kind_from_string(const std::string& name) {
    if (name == "narma10") return TaskKind::Narma10;
    if (name == "delay-memory") return TaskKind::DelayMemory;
    if (name == "sine-prediction") return TaskKind::SinePrediction;
    if (name == "mackey-glass") return TaskKind::MackeyGlass;
    throw std::invalid_argument("unknown task kind '" + name + "'");
}

void TaskSpec::validate() const {
    if (length < 1) throw std::invalid_argument("task: length must be >= 1");
    switch (kind) {
        case TaskKind::Narma10:
            if (length <= 10) throw std::invalid_argument("narma10: length must exceed 10");
            break;
        case TaskKind::DelayMemory:
            if (delay < 0) throw std::invalid_argument("delay-memory: delay must be >= 0");
            if (length <= delay) {
                throw std::invalid_argument("delay-memory: length must exceed the delay");
            }
            break;
        case TaskKind::SinePrediction:
            if (horizon < 0) throw std::invalid_argument("sine-prediction: horizon must be >= 0");
            if (length <= horizon) {
                throw std::invalid_argument("sine-prediction: length must exceed the horizon");
            }
            if (!(period > 0)) throw std::invalid_argument("sine-prediction: period must be > 0");
            break;
        case TaskKind::MackeyGlass:
            if (horizon < 0) throw std::invalid_argument("mackey-glass: horizon must be >= 0");
            break;
    }
}

namespace {

Eigen::VectorXd uniform_vector(long length, double low, double high, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(low, high);
    Eigen::VectorXd v(length);
    for (long i = 0; i < length; ++i) v[i] = dist(rng);
    return v;
}

TaskData make_task(Eigen::VectorXd input, Eigen::VectorXd target, int regenerations = 0) {
    TimeSeries in = TimeSeries::from_vector(std::move(input));
    AffineMap map = unit_interval_map(in);
    return TaskData{std::move(in), TimeSeries::from_vector(std::move(target)), map,
                    regenerations};
}

}  // namespace

namespace detail {

Eigen::VectorXd narma10_targets(const Eigen::VectorXd& input) {
    const long length = input.size();
    Eigen::VectorXd y = Eigen::VectorXd::Zero(length);
    auto at = [](const Eigen::VectorXd& v, long i) { return i >= 0 ? v[i] : 0.0; };
    for (long t = 0; t + 1 < length; ++t) {
        double history_sum = 0.0;
        for (long i = 0; i <= 9; ++i) history_sum += at(y, t - i);
        y[t + 1] = 0.3 * y[t] + 0.05 * y[t] * history_sum + 1.5 * at(input, t - 9) * input[t]
                   + 0.1;
    }
    return y;
}

Eigen::VectorXd integrate_mackey_glass(long samples, double dt, double transient_time) {
    constexpr double kDelay = 17.0;
    constexpr double kInitialLevel = 1.2;

    const long transient_steps = static_cast<long>(std::llround(transient_time / dt));
    const long history_steps = static_cast<long>(std::ceil(kDelay / dt));
    const long total_steps = transient_steps + samples;

    // grid[k] holds x at time (k - history_steps) * dt; constant prehistory.
    std::vector<double> grid(history_steps + 1 + total_steps, kInitialLevel);
    // Cubic Lagrange interpolation keeps the delayed term accurate enough
    // not to spoil the RK4 order. The stencil never straddles the derivative
    // jump where the constant history meets the flow at time 0.
    auto delayed = [&](double time) {
        const double position = (time - kDelay) / dt + history_steps;
        if (position < history_steps) return kInitialLevel;
        const long base = static_cast<long>(std::floor(position));
        if (position == static_cast<double>(base)) return grid[base];
        const long start = std::max(base - 1, history_steps);
        const double u = position - start;
        const double w_0 = -(u - 1.0) * (u - 2.0) * (u - 3.0) / 6.0;
        const double w_1 = u * (u - 2.0) * (u - 3.0) / 2.0;
        const double w_2 = -u * (u - 1.0) * (u - 3.0) / 2.0;
        const double w_3 = u * (u - 1.0) * (u - 2.0) / 6.0;
        return w_0 * grid[start] + w_1 * grid[start + 1] + w_2 * grid[start + 2]
               + w_3 * grid[start + 3];
    };
    auto production = [](double z) { return 0.2 * z / (1.0 + std::pow(z, 10)); };

    for (long k = 0; k < total_steps; ++k) {
        const double t = k * dt;
        const double x = grid[history_steps + k];
        const double k1 = production(delayed(t)) - 0.1 * x;
        const double k2 = production(delayed(t + dt / 2)) - 0.1 * (x + dt / 2 * k1);
        const double k3 = production(delayed(t + dt / 2)) - 0.1 * (x + dt / 2 * k2);
        const double k4 = production(delayed(t + dt)) - 0.1 * (x + dt * k3);
        grid[history_steps + k + 1] = x + dt / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
    }

    Eigen::VectorXd out(samples);
    for (long i = 0; i < samples; ++i) out[i] = grid[history_steps + transient_steps + i + 1];
    return out;
}

}  // namespace detail

TaskData narma10(long length, std::uint64_t seed) {
    if (length <= 10) throw std::invalid_argument("narma10: length must exceed 10");
    for (int offset = 0; offset < 100; ++offset) {
        Eigen::VectorXd input = uniform_vector(length, 0.0, 0.5, seed + offset);
        Eigen::VectorXd target = detail::narma10_targets(input);
        if (target.cwiseAbs().maxCoeff() <= 10.0) {
            return make_task(std::move(input), std::move(target), offset);
        }
    }
    throw std::runtime_error("narma10: sequence diverged for 100 consecutive seed offsets");
}

TaskData delay_memory(long length, long delay, std::uint64_t seed) {
    if (delay < 0 || length <= delay) {
        throw std::invalid_argument("delay-memory: need 0 <= delay < length");
    }
    Eigen::VectorXd input = uniform_vector(length, 0.0, 1.0, seed);
    return make_task(input, delayed_series(input, delay));
}

TaskData sine_prediction(long length, long horizon, double period, std::uint64_t /*seed*/) {
    if (horizon < 0 || length <= horizon) {
        throw std::invalid_argument("sine-prediction: need 0 <= horizon < length");
    }
    if (!(period > 0)) throw std::invalid_argument("sine-prediction: period must be > 0");
    const double omega = 2.0 * std::numbers::pi / period;
    Eigen::VectorXd input(length), target(length);
    for (long t = 0; t < length; ++t) {
        input[t] = std::sin(omega * static_cast<double>(t));
        target[t] = std::sin(omega * static_cast<double>(t + horizon));
    }
    return make_task(std::move(input), std::move(target));
}

TaskData mackey_glass(long length, long horizon, std::uint64_t /*seed*/) {
    if (length < 1) throw std::invalid_argument("mackey-glass: length must be >= 1");
    if (horizon < 0) throw std::invalid_argument("mackey-glass: horizon must be >= 0");
    Eigen::VectorXd series = detail::integrate_mackey_glass(length + horizon, 1.0);
    return make_task(series.head(length), series.tail(length));
}

TaskData generate(const TaskSpec& spec) {
    spec.validate();
    switch (spec.kind) {
        case TaskKind::Narma10: return narma10(spec.length, spec.seed);
        case TaskKind::DelayMemory: return delay_memory(spec.length, spec.delay, spec.seed);
        case TaskKind::SinePrediction:
            return sine_prediction(spec.length, spec.horizon, spec.period, spec.seed);
        case TaskKind::MackeyGlass: return mackey_glass(spec.length, spec.horizon, spec.seed);
    }
    throw std::invalid_argument("generate: unknown task kind");
}

double memory_capacity(const std::vector<double>& per_delay_r2) {
    double sum = 0.0;
    for (double r2 : per_delay_r2) {
        if (!(r2 >= 0.0 && r2 <= 1.0)) {
            throw std::invalid_argument("memory_capacity: r2 values must lie in [0, 1]");
        }
        sum += r2;
    }
    return sum;
}

AffineMap unit_interval_map(const TimeSeries& series) {
    const double low = series.data().minCoeff();
    const double high = series.data().maxCoeff();
    if (high - low < 1e-300) {
        return AffineMap{low - 0.5, 1.0};  // constant series map to 0.5
    }
    return AffineMap{low, 1.0 / (high - low)};
}

TimeSeries apply_map(const TimeSeries& series, const AffineMap& map) {
    Eigen::MatrixXd unit = (series.data().array() - map.offset) * map.scale;
    return TimeSeries(std::move(unit), series.dt());
}

Eigen::VectorXd delayed_series(const Eigen::VectorXd& series, long delay) {
    if (delay < 0) throw std::invalid_argument("delayed_series: delay must be >= 0");
    Eigen::VectorXd out = Eigen::VectorXd::Zero(series.size());
    if (delay < series.size()) {
        out.tail(series.size() - delay) = series.head(series.size() - delay);
    }
    return out;
}

}  // namespace rescomp::tasks
