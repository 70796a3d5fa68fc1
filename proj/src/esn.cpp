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

#include "rescomp/esn.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rescomp::esn {

const char* to_string(Nonlinearity g) {
    return g == Nonlinearity::Tanh ? "tanh" : "identity";
}

Nonlinearity nonlinearity_from_string(const std::string& name) {
    if (name == "tanh") return Nonlinearity::Tanh;
    if (name == "identity") return Nonlinearity::Identity;
    throw std::invalid_argument("unknown nonlinearity '" + name + "' (use tanh or identity)");
}

void Config::validate() const {
    if (nodes < 1) throw std::invalid_argument("esn: nodes must be >= 1");
    if (input_dim < 1) throw std::invalid_argument("esn: input_dim must be >= 1");
    if (!(spectral_radius > 0)) throw std::invalid_argument("esn: spectral_radius must be > 0");
    if (!(input_scaling > 0)) throw std::invalid_argument("esn: input_scaling must be > 0");
    if (!(connectivity > 0 && connectivity <= 1)) {
        throw std::invalid_argument("esn: connectivity must lie in (0, 1]");
    }
    if (!(leak_rate > 0 && leak_rate <= 1)) {
        throw std::invalid_argument("esn: leak_rate must lie in (0, 1]");
    }
}

Reservoir::Reservoir(Eigen::MatrixXd recurrent_weights, Eigen::MatrixXd input_weights,
                     Eigen::VectorXd bias, double leak_rate, Nonlinearity nonlinearity)
    : recurrent_weights_(std::move(recurrent_weights)),
      input_weights_(std::move(input_weights)),
      bias_(std::move(bias)),
      leak_rate_(leak_rate),
      nonlinearity_(nonlinearity) {
    const long k = recurrent_weights_.rows();
    if (recurrent_weights_.cols() != k || k < 1) {
        throw std::invalid_argument("esn: recurrent weight matrix must be square");
    }
    if (input_weights_.rows() != k || input_weights_.cols() < 1) {
        throw std::invalid_argument("esn: input weight matrix must have one row per node");
    }
    if (bias_.size() != k) {
        throw std::invalid_argument("esn: bias length must equal node count");
    }
    if (!(leak_rate_ > 0 && leak_rate_ <= 1)) {
        throw std::invalid_argument("esn: leak_rate must lie in (0, 1]");
    }
    if (!recurrent_weights_.allFinite() || !input_weights_.allFinite() || !bias_.allFinite()) {
        throw std::invalid_argument("esn: weights must be finite");
    }
}

Reservoir::State Reservoir::step(const State& state, const Eigen::VectorXd& input) const {
    if (state.size() != nodes()) {
        throw std::invalid_argument("esn: state dimension mismatch");
    }
    if (input.size() != input_dimension()) {
        throw std::invalid_argument("esn: input dimension mismatch");
    }
    Eigen::VectorXd pre = recurrent_weights_ * state + input_weights_ * input + bias_;
    if (nonlinearity_ == Nonlinearity::Tanh) {
        pre = pre.array().tanh().matrix();
    }
    return (1.0 - leak_rate_) * state + leak_rate_ * pre;
}

StateTrajectory Reservoir::drive(const TimeSeries& input) const {
    return drive_from(input, zero_state()).trajectory;
}

Reservoir::DriveResult Reservoir::drive_from(const TimeSeries& input, State initial) const {
    if (input.channels() != input_dimension()) {
        throw std::invalid_argument("esn: input has " + std::to_string(input.channels())
                                    + " channels, reservoir expects "
                                    + std::to_string(input_dimension()));
    }
    if (initial.size() != nodes()) {
        throw std::invalid_argument("esn: initial state dimension mismatch");
    }
    Eigen::MatrixXd states(input.length(), nodes());
    State state = std::move(initial);
    for (long t = 0; t < input.length(); ++t) {
        state = step(state, input.data().row(t).transpose());
        states.row(t) = observed_state(state).transpose();
    }
    return {StateTrajectory(std::move(states)), std::move(state)};
}

Reservoir::State Reservoir::zero_state() const { return State::Zero(nodes()); }

Reservoir::State Reservoir::random_initial_state(std::mt19937_64& rng) const {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    State state(nodes());
    for (long i = 0; i < nodes(); ++i) state[i] = unit(rng);
    return state;
}

ReservoirDescriptor Reservoir::descriptor() const {
    return {ReservoirKind::ClassicalEsn, nodes(), nodes()};
}

namespace {

Eigen::MatrixXd power_iteration_start(long dim, long cols) {
    std::mt19937_64 rng(0x5ca1ab1eULL);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    Eigen::MatrixXd block(dim, cols);
    for (long j = 0; j < cols; ++j) {
        for (long i = 0; i < dim; ++i) block(i, j) = unit(rng);
    }
    return Eigen::HouseholderQR<Eigen::MatrixXd>(block).householderQ()
           * Eigen::MatrixXd::Identity(dim, cols);
}

// A weight matrix has spectral radius zero exactly when its nonzero pattern
// is acyclic (for generic weights): depth-first search for a directed cycle.
bool pattern_has_cycle(const Eigen::MatrixXd& m) {
    const long n = m.rows();
    std::vector<std::vector<long>> successors(n);
    for (long i = 0; i < n; ++i) {
        for (long j = 0; j < n; ++j) {
            if (m(i, j) != 0.0) successors[j].push_back(i);  // edge j -> i
        }
    }
    enum class Mark : unsigned char { Unseen, Active, Done };
    std::vector<Mark> marks(n, Mark::Unseen);
    std::vector<std::pair<long, std::size_t>> stack;
    for (long root = 0; root < n; ++root) {
        if (marks[root] != Mark::Unseen) continue;
        stack.push_back({root, 0});
        marks[root] = Mark::Active;
        while (!stack.empty()) {
            auto& [node, edge] = stack.back();
            if (edge < successors[node].size()) {
                const long next = successors[node][edge++];
                if (marks[next] == Mark::Active) return true;
                if (marks[next] == Mark::Unseen) {
                    marks[next] = Mark::Active;
                    stack.push_back({next, 0});
                }
            } else {
                marks[node] = Mark::Done;
                stack.pop_back();
            }
        }
    }
    return false;
}

double max_eigenvalue_modulus_2x2(const Eigen::Matrix2d& t) {
    const double mean = 0.5 * (t(0, 0) + t(1, 1));
    const double det = t(0, 0) * t(1, 1) - t(0, 1) * t(1, 0);
    const double disc = mean * mean - det;
    if (disc < 0.0) return std::sqrt(det);  // complex pair: |lambda|^2 = det
    const double root = std::sqrt(disc);
    return std::max(std::abs(mean + root), std::abs(mean - root));
}

}  // namespace

double spectral_radius(const Eigen::MatrixXd& m, double tolerance, long max_iterations) {
    if (m.rows() != m.cols() || m.rows() < 1) {
        throw std::invalid_argument("spectral_radius: matrix must be square");
    }
    const long n = m.rows();
    if (m.cwiseAbs().maxCoeff() == 0.0) return 0.0;
    if (n == 1) return std::abs(m(0, 0));
    if (!pattern_has_cycle(m)) return 0.0;  // structurally nilpotent

    // Two-column subspace iteration: the 2x2 Rayleigh quotient tracks the
    // dominant eigenvalue whether it is real or a complex conjugate pair.
    Eigen::MatrixXd basis = power_iteration_start(n, 2);
    double previous = -1.0;
    int stable_steps = 0;
    double tail_sum = 0.0;
    long tail_count = 0;
    const long tail_start = max_iterations / 2;

    for (long it = 0; it < max_iterations; ++it) {
        const Eigen::MatrixXd image = m * basis;
        const Eigen::Matrix2d quotient = basis.transpose() * image;
        const double estimate = max_eigenvalue_modulus_2x2(quotient);

        if (image.cwiseAbs().maxCoeff() == 0.0) return 0.0;  // basis annihilated

        if (previous >= 0.0 && std::abs(estimate - previous) <= tolerance * estimate) {
            if (++stable_steps >= 3) return estimate;
        } else {
            stable_steps = 0;
        }
        previous = estimate;
        if (it >= tail_start) {
            tail_sum += estimate;
            ++tail_count;
        }

        basis = Eigen::HouseholderQR<Eigen::MatrixXd>(image).householderQ()
                * Eigen::MatrixXd::Identity(n, 2);
    }
    return tail_sum / static_cast<double>(tail_count);
}

Reservoir generate(const Config& config) {
    config.validate();

    for (std::uint64_t attempt = 0; attempt < 8; ++attempt) {
        std::seed_seq seq{static_cast<std::uint32_t>(config.seed),
                          static_cast<std::uint32_t>(config.seed >> 32),
                          static_cast<std::uint32_t>(attempt)};
        std::mt19937_64 rng(seq);
        std::uniform_real_distribution<double> unit01(0.0, 1.0);
        std::uniform_real_distribution<double> weight(-1.0, 1.0);

        Eigen::MatrixXd w = Eigen::MatrixXd::Zero(config.nodes, config.nodes);
        for (long i = 0; i < config.nodes; ++i) {
            for (long j = 0; j < config.nodes; ++j) {
                if (unit01(rng) < config.connectivity) w(i, j) = weight(rng);
            }
        }

        const double radius = spectral_radius(w);
        if (radius == 0.0) continue;  // all-zero or nilpotent draw; redraw deterministically
        w *= config.spectral_radius / radius;

        Eigen::MatrixXd w_in(config.nodes, config.input_dim);
        for (long i = 0; i < config.nodes; ++i) {
            for (long j = 0; j < config.input_dim; ++j) {
                w_in(i, j) = config.input_scaling * weight(rng);
            }
        }
        Eigen::VectorXd bias(config.nodes);
        for (long i = 0; i < config.nodes; ++i) {
            bias[i] = 0.1 * config.input_scaling * weight(rng);
        }

        return Reservoir(std::move(w), std::move(w_in), std::move(bias), config.leak_rate,
                         config.nonlinearity);
    }
    throw std::runtime_error(
        "esn: spectral radius of the raw draw was zero for 8 consecutive attempts");
}

}  // namespace rescomp::esn
