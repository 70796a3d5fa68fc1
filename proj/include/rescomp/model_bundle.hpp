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

#include <string>

#include "rescomp/experiment.hpp"

namespace rescomp::cli {

/// A trained model on disk: the backend generation recipe (config + seed),
/// the fitted readout, and the input normalization map. Reservoirs are
/// random-but-fixed, so storing the seed reconstructs them exactly and keeps
/// bundles small.
struct ModelBundle {
    int version = 1;
    BackendConfig backend;
    readout::Readout readout;
    tasks::AffineMap input_map;
};

inline constexpr int kBundleVersion = 1;

/// Versioned line-oriented text format; weights at 17 significant digits so
/// the round trip is bit-exact. See README for the grammar.
void save_bundle(const ModelBundle& bundle, const std::string& path);
ModelBundle load_bundle(const std::string& path);

/// Regenerates the reservoir from the stored recipe and checks the readout
/// width against its readout dimension.
Backend rebuild_backend(const ModelBundle& bundle);

/// Kind/dimension cross-check against an independently configured backend.
void validate_bundle_against(const ModelBundle& bundle, const BackendConfig& expected);

/// Drives raw input through the rebuilt reservoir (normalizing via the
/// stored map for quantum backends) and applies the readout.
Eigen::MatrixXd predict(const ModelBundle& bundle, const Backend& backend,
                        const TimeSeries& raw_input);

}  // namespace rescomp::cli
