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
#include <random>

#include <Eigen/Dense>

#include "rescomp/time_series.hpp"

namespace rescomp::esn {

enum class Nonlinearity { Tanh, Identity };

const char* to_string(Nonlinearity g);
Nonlinearity nonlinearity_from_string(const std::string& name);

struct Config {
    long nodes = 100;
    long input_dim = 1;
    double spectral_radius = 0.9;
    double input_scaling = 1.0;
    double connectivity = 0.1;
    double leak_rate = 1.0;
    std::uint64_t seed = 0;
    Nonlinearity nonlinearity = Nonlinearity::Tanh;

    void validate() const;
};

/// Echo state network: a randomly generated recurrent network that stays
/// fixed after generation. Only the readout trained elsewhere ever changes.
class Reservoir {
public:
    using State = Eigen::VectorXd;

    struct DriveResult {
        StateTrajectory trajectory;
        State final_state;
    };

    /// Builds a reservoir from explicit matrices. Used by tests and the
    /// generator; most callers want generate().
    Reservoir(Eigen::MatrixXd recurrent_weights, Eigen::MatrixXd input_weights,
              Eigen::VectorXd bias, double leak_rate, Nonlinearity nonlinearity);

    /// One application of the state update
    ///   x' = (1 - a) x + a g(W x + W_in u + b).
    State step(const State& state, const Eigen::VectorXd& input) const;

    /// All state variables of this backend are observable.
    State observed_state(const State& state) const { return state; }

    StateTrajectory drive(const TimeSeries& input) const;
    DriveResult drive_from(const TimeSeries& input, State initial) const;

    State zero_state() const;
    State random_initial_state(std::mt19937_64& rng) const;

    ReservoirDescriptor descriptor() const;
    long nodes() const { return recurrent_weights_.rows(); }
    long input_dimension() const { return input_weights_.cols(); }
    double leak_rate() const { return leak_rate_; }
    Nonlinearity nonlinearity() const { return nonlinearity_; }
    const Eigen::MatrixXd& recurrent_weights() const { return recurrent_weights_; }
    const Eigen::MatrixXd& input_weights() const { return input_weights_; }
    const Eigen::VectorXd& bias() const { return bias_; }

private:
    Eigen::MatrixXd recurrent_weights_;
    Eigen::MatrixXd input_weights_;
    Eigen::VectorXd bias_;
    double leak_rate_;
    Nonlinearity nonlinearity_;
};

/// Draws the random network for a config and rescales the recurrent weights
/// to the requested spectral radius. Fully determined by config.seed.
Reservoir generate(const Config& config);

/// Largest-magnitude eigenvalue estimate via two-column power (subspace)
/// iteration, which converges for a dominant real eigenvalue and for a
/// dominant complex pair alike. Structurally nilpotent matrices (acyclic
/// nonzero pattern) return exactly 0.
double spectral_radius(const Eigen::MatrixXd& m, double tolerance = 1e-12,
                       long max_iterations = 100000);

}  // namespace rescomp::esn
