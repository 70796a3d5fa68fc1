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
#include <optional>
#include <ostream>
#include <string>

#include "rescomp/config.hpp"

namespace rescomp::cli {

struct CommonOptions {
    std::string config_path;
    std::optional<std::string> out_dir;        // overrides [output] directory
    std::optional<std::uint64_t> seed;         // overrides the global seed
    bool emit_states = false;                  // forces states.csv on
    std::optional<int> workers;                // overrides [output] workers
};

struct LoadOptions {
    std::string model_path;
    std::optional<std::string> config_path;    // cross-validate bundle against a config
    std::optional<std::string> input_csv;      // drive this input through the model
    std::optional<std::string> out_dir;
};

/// Runs the configured experiment (all sweep points) and writes metrics.csv,
/// predictions.csv and optionally states.csv into the output directory.
void cmd_run(const CommonOptions& options, std::ostream& out);

/// Runs the reservoir-quality suite on the configured backend and writes
/// diagnostics.csv and memory_profile.csv.
void cmd_diagnose(const CommonOptions& options, std::ostream& out);

/// Trains on the base configuration (sweeps ignored) and persists the model.
void cmd_save(const CommonOptions& options, const std::string& model_path, std::ostream& out);

/// Loads and validates a model bundle; optionally predicts on a CSV input.
void cmd_load(const LoadOptions& options, std::ostream& out);

/// Writes the generated task dataset as task.csv.
void cmd_tasks_export(const CommonOptions& options, std::ostream& out);

/// Applies CLI overrides (seed, output dir, workers, emit-states) on top of
/// a parsed config.
void apply_cli_overrides(ExperimentConfig& config, const CommonOptions& options);

}  // namespace rescomp::cli
