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
#include <stdexcept>
#include <string>
#include <vector>

#include "rescomp/experiment.hpp"

namespace rescomp::cli {

/// Faults in user-supplied configuration (exit code 1 at the CLI), as
/// opposed to runtime faults (exit code 2).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SweepDeclaration {
    std::string key;             // section-qualified, e.g. esn.spectral_radius
    std::vector<double> values;  // enumerated in declaration order
};

struct OutputOptions {
    std::string directory = "out";
    bool emit_states = false;
    int workers = 1;
};

struct DiagnosticsOptions {
    int trials = 4;
    double epsilon = 1e-6;
    long max_delay = 20;
    long input_length = 1000;
    double noise_amplitude = 1e-3;
};

/// A parsed experiment file: the resolved base spec plus sweep/output/
/// diagnostics settings. See README for the file grammar.
struct ExperimentConfig {
    ExperimentSpec spec;
    std::uint64_t global_seed = 0;
    std::vector<SweepDeclaration> sweeps;
    OutputOptions output;
    DiagnosticsOptions diagnostics;
    bool task_seed_explicit = false;
    bool backend_seed_explicit = false;
};

ExperimentConfig parse_config_file(const std::string& path);
ExperimentConfig parse_config_text(const std::string& text, const std::string& origin = "<text>");

/// Applies `--seed`: replaces the global seed and every section seed that
/// the file did not pin explicitly.
void override_global_seed(ExperimentConfig& config, std::uint64_t seed);

/// Sets one numeric field addressed as section.key; integer fields reject
/// non-integral values. Throws ConfigError for unknown or inapplicable keys.
void apply_override(ExperimentSpec& spec, const std::string& key, double value);

/// Cartesian product of all sweep declarations, first-declared varying
/// slowest. No sweeps yields exactly the base spec.
std::vector<ExperimentSpec> expand_sweeps(const ExperimentConfig& config);

}  // namespace rescomp::cli
