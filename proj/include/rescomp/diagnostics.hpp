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

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "rescomp/readout.hpp"
#include "rescomp/tasks.hpp"
#include "rescomp/time_series.hpp"

namespace rescomp::diagnostics {

template <typename B>
concept DrivableReservoir = requires(const B& r, const TimeSeries& ts,
                                     typename B::State s, std::mt19937_64& rng) {
    { r.drive(ts) } -> std::same_as<StateTrajectory>;
    { r.drive_from(ts, std::move(s)).trajectory } -> std::convertible_to<StateTrajectory>;
    { r.random_initial_state(rng) } -> std::same_as<typename B::State>;
    { r.descriptor() } -> std::same_as<ReservoirDescriptor>;
};

struct EchoStateResult {
    std::optional<long> convergence_step;  // 1-based; empty when never below epsilon
    double final_distance = 0.0;
};

/// Measured reservoir-quality scores. These are comparative tools; no
/// universal pass/fail threshold exists, so none is baked in here.
struct Report {
    EchoStateResult echo_state;
    std::vector<double> memory_profile;  // r^2 per delay, 1-based delays
    double memory_capacity = 0.0;
    double separation_score = 0.0;
    double reproducibility_score = 0.0;
};

namespace detail {

inline double max_pairwise_row_distance(const std::vector<StateTrajectory>& runs, long step) {
    double worst = 0.0;
    for (std::size_t a = 0; a < runs.size(); ++a) {
        for (std::size_t b = a + 1; b < runs.size(); ++b) {
            const double dist =
                (runs[a].states().row(step) - runs[b].states().row(step)).norm();
            worst = std::max(worst, dist);
        }
    }
    return worst;
}

}  // namespace detail

/// Drives the reservoir from several random initial states under one input
/// and reports when (1-based step) the trajectories first agree to within
/// epsilon, plus the final-step spread. Non-convergence is an outcome, not
/// an error.
template <DrivableReservoir B>
EchoStateResult echo_state_test(const B& reservoir, const TimeSeries& input, int trials,
                                double epsilon, std::uint64_t seed = 0) {
    if (trials < 2) throw std::invalid_argument("echo_state_test: need at least 2 trials");
    std::mt19937_64 rng(seed);
    std::vector<StateTrajectory> runs;
    runs.reserve(trials);
    for (int trial = 0; trial < trials; ++trial) {
        runs.push_back(
            reservoir.drive_from(input, reservoir.random_initial_state(rng)).trajectory);
    }

    EchoStateResult result;
    for (long t = 0; t < input.length(); ++t) {
        const double spread = detail::max_pairwise_row_distance(runs, t);
        if (!result.convergence_step && spread < epsilon) result.convergence_step = t + 1;
        if (t + 1 == input.length()) result.final_distance = spread;
    }
    return result;
}

/// Mean post-washout distance between two driven trajectories, normalized by
/// the mean state norm. Symmetric in its inputs; identical inputs score 0.
template <DrivableReservoir B>
double separation_test(const B& reservoir, const TimeSeries& base,
                       const TimeSeries& perturbed, long washout) {
    if (base.length() != perturbed.length()) {
        throw std::invalid_argument("separation_test: inputs must have equal length");
    }
    if (washout < 0 || washout >= base.length()) {
        throw std::invalid_argument("separation_test: washout must lie in [0, length)");
    }
    const StateTrajectory a = reservoir.drive(base);
    const StateTrajectory b = reservoir.drive(perturbed);

    double distance_sum = 0.0;
    double norm_sum = 0.0;
    const long steps = base.length() - washout;
    for (long t = washout; t < base.length(); ++t) {
        distance_sum += (a.states().row(t) - b.states().row(t)).norm();
        norm_sum += 0.5 * (a.states().row(t).norm() + b.states().row(t).norm());
    }
    if (norm_sum == 0.0) return 0.0;
    return (distance_sum / steps) / (norm_sum / steps);
}

/// Finite-difference input sensitivity: mean state distance between the
/// clean trajectory and noisy replays, divided by the noise amplitude.
/// Quantum backends clamp noisy inputs back into [0, 1].
template <DrivableReservoir B>
double reproducibility_test(const B& reservoir, const TimeSeries& input, double delta,
                            int trials, std::uint64_t seed = 0) {
    if (delta < 0) throw std::invalid_argument("reproducibility_test: delta must be >= 0");
    if (trials < 1) throw std::invalid_argument("reproducibility_test: need >= 1 trial");
    if (delta == 0.0) return 0.0;

    const bool clamp_unit = reservoir.descriptor().kind == ReservoirKind::Quantum;
    const StateTrajectory clean = reservoir.drive(input);

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> noise(-delta, delta);
    double score_sum = 0.0;
    for (int trial = 0; trial < trials; ++trial) {
        Eigen::MatrixXd perturbed = input.data();
        for (long t = 0; t < perturbed.rows(); ++t) {
            for (long c = 0; c < perturbed.cols(); ++c) {
                double sample = perturbed(t, c) + noise(rng);
                if (clamp_unit) sample = std::clamp(sample, 0.0, 1.0);
                perturbed(t, c) = sample;
            }
        }
        const StateTrajectory noisy = reservoir.drive(TimeSeries(perturbed, input.dt()));
        double distance_sum = 0.0;
        for (long t = 0; t < input.length(); ++t) {
            distance_sum += (clean.states().row(t) - noisy.states().row(t)).norm();
        }
        score_sum += (distance_sum / input.length()) / delta;
    }
    return score_sum / trials;
}

/// Test r^2 of reconstructing the input delayed by d, for d = 1..max_delay.
///
/// One uniform input stream is driven once; every delay fits its own readout
/// over the same trajectory. Washout is 10% of the stream, the last 30% of
/// the remainder is the held-out segment.
template <DrivableReservoir B>
std::vector<double> fading_memory_profile(const B& reservoir, long max_delay, long length,
                                          std::uint64_t seed, double lambda) {
    if (max_delay < 1) throw std::invalid_argument("fading_memory_profile: max_delay >= 1");
    if (length < 20 + max_delay) {
        throw std::invalid_argument("fading_memory_profile: stream too short");
    }

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit01(0.0, 1.0);
    Eigen::VectorXd stream(length);
    for (long t = 0; t < length; ++t) stream[t] = unit01(rng);

    const TimeSeries input = TimeSeries::from_vector(stream);
    const StateTrajectory trajectory = reservoir.drive(input);

    const long washout = length / 10;
    const Eigen::MatrixXd design = harvest(trajectory, washout);
    const long usable = design.rows();
    const long train_rows = (usable * 7) / 10;
    const long test_rows = usable - train_rows;
    if (train_rows < 1 || test_rows < 1) {
        throw std::invalid_argument("fading_memory_profile: stream too short to split");
    }

    std::vector<double> profile;
    profile.reserve(max_delay);
    for (long d = 1; d <= max_delay; ++d) {
        const Eigen::VectorXd target_full = tasks::delayed_series(stream, d);
        const Eigen::MatrixXd targets = target_full.tail(usable);
        const readout::Readout fitted =
            readout::fit(design.topRows(train_rows), targets.topRows(train_rows), lambda);
        const Eigen::MatrixXd predicted =
            readout::apply_rows(fitted, design.bottomRows(test_rows));
        const double r2 = readout::r_squared(predicted, targets.bottomRows(test_rows));
        profile.push_back(std::clamp(r2, 0.0, 1.0));
    }
    return profile;
}

}  // namespace rescomp::diagnostics
