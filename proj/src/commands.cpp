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

#include "rescomp/commands.hpp"

#include <atomic>
#include <filesystem>
#include <random>
#include <thread>
#include <vector>

#include "rescomp/csv.hpp"
#include "rescomp/diagnostics.hpp"
#include "rescomp/model_bundle.hpp"

namespace rescomp::cli {

namespace fs = std::filesystem;

namespace {

void ensure_directory(const std::string& path) {
    std::error_code ec;
    fs::create_directories(path, ec);
    if (ec) throw std::runtime_error("cannot create output directory '" + path + "'");
}

std::string fmt(double v) { return format_double(v); }

std::vector<std::string> metrics_header() {
    return {"sweep_index",
            "task.kind",
            "task.length",
            "task.delay",
            "task.horizon",
            "task.period",
            "task.seed",
            "backend",
            "esn.nodes",
            "esn.spectral_radius",
            "esn.input_scaling",
            "esn.connectivity",
            "esn.leak_rate",
            "esn.nonlinearity",
            "esn.seed",
            "qrc.qubits",
            "qrc.tau",
            "qrc.virtual_nodes",
            "qrc.coupling_scale",
            "qrc.field",
            "qrc.seed",
            "lambda",
            "washout",
            "train_fraction",
            "nmse",
            "mse",
            "r2",
            "train_nmse",
            "nmse_mean_baseline",
            "nmse_persistence",
            "task_regenerations"};
}

// What metrics.csv needs per sweep point; full results (trajectories,
// predictions) are kept only for the final point.
struct PointSummary {
    Metrics metrics;
    long washout = 0;
    int task_regenerations = 0;
};

std::vector<std::string> metrics_row(long index, const ExperimentSpec& spec,
                                     const PointSummary& result) {
    const tasks::TaskSpec& task = spec.task;
    const bool has_delay = task.kind == tasks::TaskKind::DelayMemory;
    const bool has_horizon = task.kind == tasks::TaskKind::SinePrediction
                             || task.kind == tasks::TaskKind::MackeyGlass;
    const bool has_period = task.kind == tasks::TaskKind::SinePrediction;

    std::vector<std::string> row;
    row.reserve(31);
    row.push_back(std::to_string(index));
    row.push_back(tasks::to_string(task.kind));
    row.push_back(std::to_string(task.length));
    row.push_back(has_delay ? std::to_string(task.delay) : "");
    row.push_back(has_horizon ? std::to_string(task.horizon) : "");
    row.push_back(has_period ? fmt(task.period) : "");
    row.push_back(std::to_string(task.seed));

    if (const auto* config = std::get_if<esn::Config>(&spec.backend)) {
        row.push_back("esn");
        row.push_back(std::to_string(config->nodes));
        row.push_back(fmt(config->spectral_radius));
        row.push_back(fmt(config->input_scaling));
        row.push_back(fmt(config->connectivity));
        row.push_back(fmt(config->leak_rate));
        row.push_back(esn::to_string(config->nonlinearity));
        row.push_back(std::to_string(config->seed));
        for (int i = 0; i < 6; ++i) row.push_back("");
    } else {
        const auto& qconfig = std::get<qrc::Config>(spec.backend);
        row.push_back("qrc");
        for (int i = 0; i < 7; ++i) row.push_back("");
        row.push_back(std::to_string(qconfig.qubits));
        row.push_back(fmt(qconfig.tau));
        row.push_back(std::to_string(qconfig.virtual_nodes));
        row.push_back(fmt(qconfig.coupling_scale));
        row.push_back(fmt(qconfig.field));
        row.push_back(std::to_string(qconfig.seed));
    }

    row.push_back(fmt(spec.lambda));
    row.push_back(std::to_string(result.washout));
    row.push_back(fmt(spec.train_fraction));
    row.push_back(fmt(result.metrics.nmse));
    row.push_back(fmt(result.metrics.mse));
    row.push_back(fmt(result.metrics.r2));
    row.push_back(fmt(result.metrics.train_nmse));
    row.push_back(fmt(result.metrics.nmse_mean_baseline));
    row.push_back(fmt(result.metrics.nmse_persistence));
    row.push_back(std::to_string(result.task_regenerations));
    return row;
}

struct SweepOutcome {
    std::vector<PointSummary> summaries;
    ExperimentResult last;  // full artifacts of the final sweep point
};

SweepOutcome run_points(const std::vector<ExperimentSpec>& specs, int workers) {
    std::vector<PointSummary> summaries(specs.size());
    std::vector<std::exception_ptr> errors(specs.size());
    std::optional<ExperimentResult> last;
    std::atomic<std::size_t> cursor{0};

    auto work = [&] {
        while (true) {
            const std::size_t index = cursor.fetch_add(1);
            if (index >= specs.size()) break;
            try {
                ExperimentResult result = run_experiment(specs[index]);
                summaries[index] =
                    PointSummary{result.metrics, result.washout, result.task_regenerations};
                if (index + 1 == specs.size()) last = std::move(result);
            } catch (...) {
                errors[index] = std::current_exception();
            }
        }
    };

    const int thread_count =
        std::max(1, std::min<int>(workers, static_cast<int>(specs.size())));
    if (thread_count == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(thread_count);
        for (int i = 0; i < thread_count; ++i) pool.emplace_back(work);
        for (std::thread& t : pool) t.join();
    }

    for (std::size_t i = 0; i < specs.size(); ++i) {
        if (errors[i]) {
            try {
                std::rethrow_exception(errors[i]);
            } catch (const std::exception& e) {
                throw std::runtime_error("sweep point " + std::to_string(i) + ": " + e.what());
            }
        }
    }
    return SweepOutcome{std::move(summaries), std::move(*last)};
}

void write_predictions(const std::string& path, const ExperimentResult& result) {
    const long channels = result.test_targets.channels();
    std::vector<std::string> header{"step"};
    for (long c = 0; c < channels; ++c) {
        header.push_back("target_" + std::to_string(c));
        header.push_back("prediction_" + std::to_string(c));
    }
    CsvWriter csv(std::move(header));
    for (long t = 0; t < result.test_length; ++t) {
        std::vector<std::string> row{std::to_string(result.train_length + t)};
        for (long c = 0; c < channels; ++c) {
            row.push_back(fmt(result.test_targets.at(t, c)));
            row.push_back(fmt(result.predictions.at(t, c)));
        }
        csv.add_row(std::move(row));
    }
    csv.write_file(path);
}

void write_states(const std::string& path, const StateTrajectory& trajectory) {
    std::vector<std::string> header{"step"};
    for (long k = 0; k < trajectory.signals(); ++k) {
        header.push_back("s_" + std::to_string(k));
    }
    CsvWriter csv(std::move(header));
    for (long t = 0; t < trajectory.length(); ++t) {
        std::vector<std::string> row{std::to_string(t)};
        for (long k = 0; k < trajectory.signals(); ++k) {
            row.push_back(fmt(trajectory.states()(t, k)));
        }
        csv.add_row(std::move(row));
    }
    csv.write_file(path);
}

TimeSeries uniform_unit_series(long length, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit01(0.0, 1.0);
    Eigen::VectorXd v(length);
    for (long i = 0; i < length; ++i) v[i] = unit01(rng);
    return TimeSeries::from_vector(v);
}

ExperimentConfig load_config(const CommonOptions& options) {
    ExperimentConfig config = parse_config_file(options.config_path);
    apply_cli_overrides(config, options);
    return config;
}

}  // namespace

void apply_cli_overrides(ExperimentConfig& config, const CommonOptions& options) {
    if (options.seed) override_global_seed(config, *options.seed);
    if (options.out_dir) config.output.directory = *options.out_dir;
    if (options.emit_states) config.output.emit_states = true;
    if (options.workers) {
        if (*options.workers < 1) throw ConfigError("--workers must be >= 1");
        config.output.workers = *options.workers;
    }
}

void cmd_run(const CommonOptions& options, std::ostream& out) {
    const ExperimentConfig config = load_config(options);
    const std::vector<ExperimentSpec> points = expand_sweeps(config);
    const SweepOutcome outcome = run_points(points, config.output.workers);

    ensure_directory(config.output.directory);
    const fs::path dir(config.output.directory);

    CsvWriter metrics(metrics_header());
    for (std::size_t i = 0; i < points.size(); ++i) {
        metrics.add_row(metrics_row(static_cast<long>(i), points[i], outcome.summaries[i]));
    }
    metrics.write_file((dir / "metrics.csv").string());
    write_predictions((dir / "predictions.csv").string(), outcome.last);
    if (config.output.emit_states) {
        write_states((dir / "states.csv").string(), outcome.last.trajectory);
    }

    out << "run: " << tasks::to_string(config.spec.task.kind) << " on "
        << to_string(backend_kind(config.spec.backend)) << ", " << points.size()
        << " sweep point(s), seed " << config.global_seed << "\n";
    for (std::size_t i = 0; i < outcome.summaries.size(); ++i) {
        const Metrics& m = outcome.summaries[i].metrics;
        out << "  point " << i << ": nmse=" << fmt(m.nmse) << " r2=" << fmt(m.r2)
            << " train_nmse=" << fmt(m.train_nmse) << "\n";
    }
    out << "wrote " << (dir / "metrics.csv").string() << ", "
        << (dir / "predictions.csv").string();
    if (config.output.emit_states) out << ", " << (dir / "states.csv").string();
    out << "\n";
}

void cmd_diagnose(const CommonOptions& options, std::ostream& out) {
    const ExperimentConfig config = load_config(options);
    const DiagnosticsOptions& d = config.diagnostics;
    const Backend backend = build_backend(config.spec.backend);

    const TimeSeries stream = uniform_unit_series(d.input_length, config.global_seed);
    const TimeSeries second_stream =
        uniform_unit_series(d.input_length, config.global_seed + 2);
    const long washout = d.input_length / 10;

    diagnostics::Report report = std::visit(
        [&](const auto& reservoir) {
            diagnostics::Report r;
            r.echo_state = diagnostics::echo_state_test(reservoir, stream, d.trials, d.epsilon,
                                                        config.global_seed + 1);
            r.separation_score =
                diagnostics::separation_test(reservoir, stream, second_stream, washout);
            r.reproducibility_score = diagnostics::reproducibility_test(
                reservoir, stream, d.noise_amplitude, d.trials, config.global_seed + 3);
            r.memory_profile = diagnostics::fading_memory_profile(
                reservoir, d.max_delay, d.input_length, config.global_seed,
                config.spec.lambda);
            r.memory_capacity = tasks::memory_capacity(r.memory_profile);
            return r;
        },
        backend);

    ensure_directory(config.output.directory);
    const fs::path dir(config.output.directory);

    CsvWriter summary({"esp_convergence_step", "esp_final_distance", "separation_score",
                       "reproducibility_score", "memory_capacity"});
    summary.add_row({report.echo_state.convergence_step
                         ? std::to_string(*report.echo_state.convergence_step)
                         : "none",
                     fmt(report.echo_state.final_distance), fmt(report.separation_score),
                     fmt(report.reproducibility_score), fmt(report.memory_capacity)});
    summary.write_file((dir / "diagnostics.csv").string());

    CsvWriter profile({"delay", "r2"});
    for (std::size_t i = 0; i < report.memory_profile.size(); ++i) {
        profile.add_row({std::to_string(i + 1), fmt(report.memory_profile[i])});
    }
    profile.write_file((dir / "memory_profile.csv").string());

    out << "diagnose: backend " << to_string(backend_kind(config.spec.backend)) << ", seed "
        << config.global_seed << "\n";
    out << "  echo state: "
        << (report.echo_state.convergence_step
                ? "converged at step " + std::to_string(*report.echo_state.convergence_step)
                : std::string("not converged"))
        << ", final distance " << fmt(report.echo_state.final_distance) << "\n";
    out << "  separation=" << fmt(report.separation_score)
        << " reproducibility=" << fmt(report.reproducibility_score)
        << " memory_capacity=" << fmt(report.memory_capacity) << "\n";
    out << "wrote " << (dir / "diagnostics.csv").string() << ", "
        << (dir / "memory_profile.csv").string() << "\n";
}

void cmd_save(const CommonOptions& options, const std::string& model_path, std::ostream& out) {
    const ExperimentConfig config = load_config(options);
    const ExperimentResult result = run_experiment(config.spec);

    ModelBundle bundle{kBundleVersion, config.spec.backend, result.readout, result.input_map};
    save_bundle(bundle, model_path);

    out << "save: trained " << to_string(backend_kind(config.spec.backend)) << " on "
        << tasks::to_string(config.spec.task.kind) << " (nmse=" << fmt(result.metrics.nmse)
        << "), model written to " << model_path << "\n";
}

void cmd_load(const LoadOptions& options, std::ostream& out) {
    const ModelBundle bundle = load_bundle(options.model_path);
    const Backend backend = rebuild_backend(bundle);

    if (options.config_path) {
        const ExperimentConfig config = parse_config_file(*options.config_path);
        validate_bundle_against(bundle, config.spec.backend);
    }

    const ReservoirDescriptor descriptor = backend_descriptor(backend);
    out << "load: " << to_string(descriptor.kind) << " model, readout "
        << bundle.readout.outputs() << " x " << bundle.readout.columns()
        << ", readout dimension " << descriptor.readout_dimension << "\n";

    if (options.input_csv) {
        const CsvTable table = read_numeric_csv(*options.input_csv);
        const bool has_step = !table.header.empty() && table.header.front() == "step";
        const long first_channel = has_step ? 1 : 0;
        const long channels = static_cast<long>(table.header.size()) - first_channel;
        if (channels < 1 || table.values.rows() < 1) {
            throw std::runtime_error(*options.input_csv + ": no input channels");
        }
        const TimeSeries input(table.values.rightCols(channels));
        const Eigen::MatrixXd predicted = predict(bundle, backend, input);

        const std::string dir = options.out_dir.value_or("out");
        ensure_directory(dir);
        std::vector<std::string> header{"step"};
        for (long c = 0; c < predicted.cols(); ++c) {
            header.push_back("prediction_" + std::to_string(c));
        }
        CsvWriter csv(std::move(header));
        for (long t = 0; t < predicted.rows(); ++t) {
            std::vector<std::string> row{std::to_string(t)};
            for (long c = 0; c < predicted.cols(); ++c) row.push_back(fmt(predicted(t, c)));
            csv.add_row(std::move(row));
        }
        const std::string path = (fs::path(dir) / "predictions.csv").string();
        csv.write_file(path);
        out << "wrote " << path << "\n";
    }
}

void cmd_tasks_export(const CommonOptions& options, std::ostream& out) {
    const ExperimentConfig config = load_config(options);
    const tasks::TaskData data = tasks::generate(config.spec.task);

    ensure_directory(config.output.directory);
    const fs::path path = fs::path(config.output.directory) / "task.csv";

    std::vector<std::string> header{"step"};
    for (long c = 0; c < data.input.channels(); ++c) {
        header.push_back("input_" + std::to_string(c));
    }
    for (long c = 0; c < data.target.channels(); ++c) {
        header.push_back("target_" + std::to_string(c));
    }
    CsvWriter csv(std::move(header));
    for (long t = 0; t < data.input.length(); ++t) {
        std::vector<std::string> row{std::to_string(t)};
        for (long c = 0; c < data.input.channels(); ++c) row.push_back(fmt(data.input.at(t, c)));
        for (long c = 0; c < data.target.channels(); ++c) {
            row.push_back(fmt(data.target.at(t, c)));
        }
        csv.add_row(std::move(row));
    }
    csv.write_file(path.string());

    out << "tasks export: " << tasks::to_string(config.spec.task.kind) << ", "
        << data.input.length() << " steps, wrote " << path.string() << "\n";
}

}  // namespace rescomp::cli
