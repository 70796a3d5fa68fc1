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

#include "rescomp/time_series.hpp"

namespace rescomp::readout {

/// The trained component: an affine map from harvested signals to outputs.
/// The bias lives in the last weight column, matching harvest()'s layout.
struct Readout {
    Eigen::MatrixXd weights;     // outputs x (signals + 1)
    double regularization = 0.0;

    long outputs() const { return weights.rows(); }
    long columns() const { return weights.cols(); }
};

/// Ridge regression on a harvested design matrix.
///
/// Solves the regularized normal equations
///   (G^T G + lambda I') W^T = G^T Y
/// where I' is the identity with a zero in the bias slot, so the intercept
/// is never penalized. Throws for a rank-deficient system at lambda = 0.
Readout fit(const Eigen::MatrixXd& design, const Eigen::MatrixXd& targets, double lambda);

/// y = W x for one augmented signal vector (bias component included).
Eigen::VectorXd apply(const Readout& readout, const Eigen::VectorXd& augmented_signals);

/// Batch application: one output row per design row.
Eigen::MatrixXd apply_rows(const Readout& readout, const Eigen::MatrixXd& design);

/// Mean squared error over target variance, averaged across channels.
double nmse(const TimeSeries& predicted, const TimeSeries& target);
double nmse(const Eigen::MatrixXd& predicted, const Eigen::MatrixXd& target);

/// Squared Pearson correlation between prediction and target, averaged
/// across channels; 0 when either side is degenerate (zero variance).
double r_squared(const Eigen::MatrixXd& predicted, const Eigen::MatrixXd& target);

}  // namespace rescomp::readout
