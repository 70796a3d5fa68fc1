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

#include <algorithm>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "rescomp/commands.hpp"

namespace {

std::string one_line(std::string message) {
    std::replace(message.begin(), message.end(), '\n', ';');
    return message;
}

void add_common_flags(CLI::App* cmd, rescomp::cli::CommonOptions& options) {
    cmd->add_option("--config", options.config_path, "experiment config file")->required();
    cmd->add_option("--out", options.out_dir, "output directory (overrides config)");
    cmd->add_option("--seed", options.seed, "global seed (overrides config)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"reservoir computing experiments: classical echo state networks and "
                 "simulated quantum reservoirs"};
    app.require_subcommand(1);

    rescomp::cli::CommonOptions run_options;
    CLI::App* run = app.add_subcommand("run", "train and evaluate an experiment");
    add_common_flags(run, run_options);
    run->add_flag("--emit-states", run_options.emit_states, "also write states.csv");
    run->add_option("--workers", run_options.workers, "parallel sweep workers");

    rescomp::cli::CommonOptions diagnose_options;
    CLI::App* diagnose =
        app.add_subcommand("diagnose", "measure reservoir quality criteria");
    add_common_flags(diagnose, diagnose_options);

    rescomp::cli::CommonOptions save_options;
    std::string save_model_path;
    CLI::App* save = app.add_subcommand("save", "train and persist a model bundle");
    add_common_flags(save, save_options);
    save->add_option("--model", save_model_path, "model bundle path")->required();

    rescomp::cli::LoadOptions load_options;
    CLI::App* load = app.add_subcommand("load", "load and validate a model bundle");
    load->add_option("--model", load_options.model_path, "model bundle path")->required();
    load->add_option("--config", load_options.config_path,
                     "validate the bundle against this config");
    load->add_option("--input", load_options.input_csv, "predict on this input CSV");
    load->add_option("--out", load_options.out_dir, "output directory for predictions");

    rescomp::cli::CommonOptions export_options;
    CLI::App* tasks_cmd = app.add_subcommand("tasks", "task dataset utilities");
    tasks_cmd->require_subcommand(1);
    CLI::App* tasks_export =
        tasks_cmd->add_subcommand("export", "write the generated dataset as CSV");
    add_common_flags(tasks_export, export_options);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
        std::cerr << "error: config: " << one_line(e.what()) << "\n";
        return 1;
    }

    try {
        if (run->parsed()) {
            rescomp::cli::cmd_run(run_options, std::cout);
        } else if (diagnose->parsed()) {
            rescomp::cli::cmd_diagnose(diagnose_options, std::cout);
        } else if (save->parsed()) {
            rescomp::cli::cmd_save(save_options, save_model_path, std::cout);
        } else if (load->parsed()) {
            rescomp::cli::cmd_load(load_options, std::cout);
        } else if (tasks_export->parsed()) {
            rescomp::cli::cmd_tasks_export(export_options, std::cout);
        }
    } catch (const rescomp::cli::ConfigError& e) {
        std::cerr << "error: config: " << one_line(e.what()) << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: runtime: " << one_line(e.what()) << "\n";
        return 2;
    }
    return 0;
}
