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

#include "rescomp/readout.hpp"

#include <cmath>
#include <stdexcept>

namespace rescomp::readout {

Readout fit(const Eigen::MatrixXd& design, const Eigen::MatrixXd& targets, double lambda) {
    if (design.rows() < 1) throw std::invalid_argument("fit: empty design matrix");
    if (design.rows() != targets.rows()) {
        throw std::invalid_argument("fit: design and target row counts differ");
    }
    if (!(lambda >= 0) || !std::isfinite(lambda)) {
        throw std::invalid_argument("fit: lambda must be finite and >= 0");
    }
    if (!design.allFinite() || !targets.allFinite()) {
        throw std::invalid_argument("fit: non-finite entries");
    }

    const long cols = design.cols();
    Eigen::MatrixXd gram = design.transpose() * design;
    gram.diagonal().head(cols - 1).array() += lambda;  // bias column stays unpenalized

    Eigen::LDLT<Eigen::MatrixXd> solver(gram);
    if (lambda == 0.0) {
        const Eigen::VectorXd d = solver.vectorD();
        const double d_max = d.cwiseAbs().maxCoeff();
        if (d_max <= 0.0 || d.cwiseAbs().minCoeff() <= d_max * 1e-12) {
            throw std::invalid_argument(
                "fit: design matrix is rank-deficient and lambda = 0; use lambda > 0");
        }
    }

    Eigen::MatrixXd solution = solver.solve(design.transpose() * targets);
    if (!solution.allFinite()) {
        throw std::invalid_argument("fit: normal equations produced non-finite weights");
    }
    return Readout{solution.transpose(), lambda};
}

Eigen::VectorXd apply(const Readout& readout, const Eigen::VectorXd& augmented_signals) {
    if (augmented_signals.size() != readout.columns()) {
        throw std::invalid_argument("apply: signal vector length does not match readout width");
    }
    return readout.weights * augmented_signals;
}

Eigen::MatrixXd apply_rows(const Readout& readout, const Eigen::MatrixXd& design) {
    if (design.cols() != readout.columns()) {
        throw std::invalid_argument("apply: design width does not match readout width");
    }
    return design * readout.weights.transpose();
}

double nmse(const Eigen::MatrixXd& predicted, const Eigen::MatrixXd& target) {
    if (predicted.rows() != target.rows() || predicted.cols() != target.cols()) {
        throw std::invalid_argument("nmse: shape mismatch");
    }
    const long steps = target.rows();
    double total = 0.0;
    for (long c = 0; c < target.cols(); ++c) {
        const double mean = target.col(c).mean();
        const double variance =
            (target.col(c).array() - mean).square().sum() / static_cast<double>(steps);
        if (variance <= 0.0) {
            throw std::invalid_argument("nmse: target channel " + std::to_string(c)
                                        + " has zero variance");
        }
        const double mse =
            (predicted.col(c) - target.col(c)).squaredNorm() / static_cast<double>(steps);
        total += mse / variance;
    }
    return total / static_cast<double>(target.cols());
}

double nmse(const TimeSeries& predicted, const TimeSeries& target) {
    return nmse(predicted.data(), target.data());
}

double r_squared(const Eigen::MatrixXd& predicted, const Eigen::MatrixXd& target) {
    if (predicted.rows() != target.rows() || predicted.cols() != target.cols()) {
        throw std::invalid_argument("r_squared: shape mismatch");
    }
    const double steps = static_cast<double>(target.rows());
    double total = 0.0;
    for (long c = 0; c < target.cols(); ++c) {
        const Eigen::ArrayXd p = predicted.col(c).array() - predicted.col(c).mean();
        const Eigen::ArrayXd t = target.col(c).array() - target.col(c).mean();
        const double var_p = p.square().sum() / steps;
        const double var_t = t.square().sum() / steps;
        if (var_p <= 0.0 || var_t <= 0.0) continue;  // degenerate channel contributes 0
        const double cov = (p * t).sum() / steps;
        total += (cov * cov) / (var_p * var_t);
    }
    return total / static_cast<double>(target.cols());
}

}  // namespace rescomp::readout
