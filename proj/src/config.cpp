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

#include "rescomp/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace rescomp::cli {

namespace {

struct Entry {
    std::string value;
    int line = 0;
    bool used = false;
};

using Section = std::map<std::string, Entry>;

struct RawConfig {
    std::string origin;
    std::map<std::string, Section> sections;
    std::vector<std::pair<std::string, int>> sweep_order;  // keys in declaration order
};

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

[[noreturn]] void fail(const RawConfig& raw, int line, const std::string& message) {
    throw ConfigError(raw.origin + ":" + std::to_string(line) + ": " + message);
}

RawConfig tokenize(const std::string& text, const std::string& origin) {
    RawConfig raw;
    raw.origin = origin;
    std::istringstream stream(text);
    std::string line;
    std::string section;
    int line_no = 0;
    while (std::getline(stream, line)) {
        ++line_no;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#' || stripped[0] == ';') continue;
        if (stripped.front() == '[') {
            if (stripped.back() != ']' || stripped.size() < 3) {
                fail(raw, line_no, "malformed section header '" + stripped + "'");
            }
            section = trim(stripped.substr(1, stripped.size() - 2));
            if (raw.sections.count(section)) {
                fail(raw, line_no, "duplicate section [" + section + "]");
            }
            raw.sections[section] = {};
            continue;
        }
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) {
            fail(raw, line_no, "expected 'key = value', got '" + stripped + "'");
        }
        if (section.empty()) {
            fail(raw, line_no, "key outside of any [section]");
        }
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty()) fail(raw, line_no, "empty key");
        if (value.empty()) fail(raw, line_no, "empty value for key '" + key + "'");
        auto [it, inserted] = raw.sections[section].insert({key, Entry{value, line_no, false}});
        if (!inserted) {
            fail(raw, line_no, "duplicate key '" + key + "' in section [" + section + "]");
        }
        if (section == "sweep") raw.sweep_order.emplace_back(key, line_no);
    }
    return raw;
}

double parse_double(const RawConfig& raw, const Entry& e, const std::string& key) {
    std::size_t consumed = 0;
    double value = 0.0;
    try {
        value = std::stod(e.value, &consumed);
    } catch (const std::exception&) {
        fail(raw, e.line, "key '" + key + "': expected a number, got '" + e.value + "'");
    }
    if (consumed != e.value.size() || !std::isfinite(value)) {
        fail(raw, e.line, "key '" + key + "': expected a finite number, got '" + e.value + "'");
    }
    return value;
}

long parse_count(const RawConfig& raw, const Entry& e, const std::string& key) {
    const double value = parse_double(raw, e, key);
    if (value != std::floor(value)) {
        fail(raw, e.line, "key '" + key + "': expected an integer, got '" + e.value + "'");
    }
    return static_cast<long>(value);
}

std::uint64_t parse_seed(const RawConfig& raw, const Entry& e, const std::string& key) {
    try {
        std::size_t consumed = 0;
        const std::uint64_t value = std::stoull(e.value, &consumed);
        if (consumed == e.value.size()) return value;
    } catch (const std::exception&) {
    }
    fail(raw, e.line, "key '" + key + "': expected a non-negative integer seed, got '"
                          + e.value + "'");
}

bool parse_bool(const RawConfig& raw, const Entry& e, const std::string& key) {
    if (e.value == "true") return true;
    if (e.value == "false") return false;
    fail(raw, e.line, "key '" + key + "': expected true or false, got '" + e.value + "'");
}

class SectionReader {
public:
    SectionReader(RawConfig& raw, const std::string& name) : raw_(raw), name_(name) {
        auto it = raw_.sections.find(name);
        section_ = it == raw_.sections.end() ? nullptr : &it->second;
    }

    bool present() const { return section_ != nullptr; }

    Entry* find(const std::string& key) {
        if (!section_) return nullptr;
        auto it = section_->find(key);
        if (it == section_->end()) return nullptr;
        it->second.used = true;
        return &it->second;
    }

    bool require_has(const std::string& key) {
        if (find(key)) return true;
        throw ConfigError(raw_.origin + ": section [" + name_ + "] is missing required key '"
                          + key + "'");
    }

    double number(const std::string& key, double fallback) {
        Entry* e = find(key);
        return e ? parse_double(raw_, *e, key) : fallback;
    }
    long count(const std::string& key, long fallback) {
        Entry* e = find(key);
        return e ? parse_count(raw_, *e, key) : fallback;
    }
    std::string text(const std::string& key, const std::string& fallback) {
        Entry* e = find(key);
        return e ? e->value : fallback;
    }
    bool boolean(const std::string& key, bool fallback) {
        Entry* e = find(key);
        return e ? parse_bool(raw_, *e, key) : fallback;
    }

    void reject_unused() {
        if (!section_) return;
        for (const auto& [key, entry] : *section_) {
            if (!entry.used) {
                fail(raw_, entry.line,
                     "unknown key '" + key + "' in section [" + name_ + "]");
            }
        }
    }

private:
    RawConfig& raw_;
    std::string name_;
    Section* section_;
};

std::vector<double> parse_value_list(const RawConfig& raw, const Entry& e,
                                     const std::string& key) {
    std::vector<double> values;
    std::stringstream items(e.value);
    std::string item;
    while (std::getline(items, item, ',')) {
        const std::string token = trim(item);
        if (token.empty()) fail(raw, e.line, "sweep '" + key + "': empty value in list");
        std::size_t consumed = 0;
        double value = 0.0;
        try {
            value = std::stod(token, &consumed);
        } catch (const std::exception&) {
            fail(raw, e.line, "sweep '" + key + "': '" + token + "' is not a number");
        }
        if (consumed != token.size() || !std::isfinite(value)) {
            fail(raw, e.line, "sweep '" + key + "': '" + token + "' is not a finite number");
        }
        values.push_back(value);
    }
    if (values.empty()) fail(raw, e.line, "sweep '" + key + "': empty value list");
    return values;
}

tasks::TaskSpec read_task(RawConfig& raw, SectionReader& reader, std::uint64_t global_seed,
                          bool& seed_explicit) {
    reader.require_has("kind");
    tasks::TaskSpec spec;
    try {
        spec.kind = tasks::task_kind_from_string(reader.text("kind", ""));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(raw.origin + ": " + e.what());
    }
    reader.require_has("length");
    spec.length = reader.count("length", 0);

    Entry* seed_entry = reader.find("seed");
    seed_explicit = seed_entry != nullptr;
    spec.seed = seed_entry ? parse_seed(raw, *seed_entry, "seed") : global_seed;

    const bool wants_delay = spec.kind == tasks::TaskKind::DelayMemory;
    const bool wants_horizon = spec.kind == tasks::TaskKind::SinePrediction
                               || spec.kind == tasks::TaskKind::MackeyGlass;
    const bool wants_period = spec.kind == tasks::TaskKind::SinePrediction;
    if (wants_delay) spec.delay = reader.count("delay", 1);
    if (wants_horizon) spec.horizon = reader.count("horizon", 1);
    if (wants_period) spec.period = reader.number("period", 50.0);
    return spec;
}

esn::Config read_esn(RawConfig& raw, SectionReader& reader, std::uint64_t global_seed,
                     bool& seed_explicit) {
    esn::Config config;
    reader.require_has("nodes");
    config.nodes = reader.count("nodes", 0);
    config.input_dim = reader.count("input_dim", 1);
    config.spectral_radius = reader.number("spectral_radius", 0.9);
    config.input_scaling = reader.number("input_scaling", 1.0);
    config.connectivity = reader.number("connectivity", 0.1);
    config.leak_rate = reader.number("leak_rate", 1.0);
    try {
        config.nonlinearity = esn::nonlinearity_from_string(reader.text("nonlinearity", "tanh"));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(raw.origin + ": " + e.what());
    }
    Entry* seed_entry = reader.find("seed");
    seed_explicit = seed_entry != nullptr;
    config.seed = seed_entry ? parse_seed(raw, *seed_entry, "seed") : global_seed;
    return config;
}

qrc::Config read_qrc(RawConfig& raw, SectionReader& reader, std::uint64_t global_seed,
                     bool& seed_explicit) {
    qrc::Config config;
    reader.require_has("qubits");
    config.qubits = reader.count("qubits", 0);
    config.tau = reader.number("tau", 1.0);
    config.virtual_nodes = reader.count("virtual_nodes", 4);
    config.coupling_scale = reader.number("coupling", 1.0);
    config.field = reader.number("field", 1.0);
    Entry* seed_entry = reader.find("seed");
    seed_explicit = seed_entry != nullptr;
    config.seed = seed_entry ? parse_seed(raw, *seed_entry, "seed") : global_seed;
    return config;
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text, const std::string& origin) {
    RawConfig raw = tokenize(text, origin);

    static const std::set<std::string> known_sections = {
        "experiment", "task", "esn", "qrc", "sweep", "output", "diagnostics"};
    for (const auto& [name, section] : raw.sections) {
        if (!known_sections.count(name)) {
            throw ConfigError(origin + ": unknown section [" + name + "]");
        }
    }
    if (!raw.sections.count("experiment")) {
        throw ConfigError(origin + ": missing required section [experiment]");
    }
    if (!raw.sections.count("task")) {
        throw ConfigError(origin + ": missing required section [task]");
    }

    ExperimentConfig config;

    SectionReader experiment(raw, "experiment");
    experiment.require_has("backend");
    const std::string backend_name = experiment.text("backend", "");
    if (backend_name != "esn" && backend_name != "qrc") {
        throw ConfigError(origin + ": backend must be 'esn' or 'qrc', got '" + backend_name
                          + "'");
    }
    const std::string other = backend_name == "esn" ? "qrc" : "esn";
    if (raw.sections.count(other)) {
        throw ConfigError(origin + ": backend is '" + backend_name + "' but section [" + other
                          + "] is present; exactly one backend section is allowed");
    }
    if (!raw.sections.count(backend_name)) {
        throw ConfigError(origin + ": missing section [" + backend_name
                          + "] for the selected backend");
    }

    Entry* seed_entry = experiment.find("seed");
    config.global_seed =
        seed_entry ? parse_seed(raw, *seed_entry, "seed") : std::uint64_t{0};
    config.spec.train_fraction = experiment.number("train_fraction", 0.7);
    config.spec.lambda = experiment.number("lambda", 1e-6);
    if (Entry* washout = experiment.find("washout")) {
        if (washout->value != "auto") {
            config.spec.washout = parse_count(raw, *washout, "washout");
        }
    }

    SectionReader task(raw, "task");
    config.spec.task = read_task(raw, task, config.global_seed, config.task_seed_explicit);

    if (backend_name == "esn") {
        SectionReader esn_section(raw, "esn");
        config.spec.backend =
            read_esn(raw, esn_section, config.global_seed, config.backend_seed_explicit);
        esn_section.reject_unused();
    } else {
        SectionReader qrc_section(raw, "qrc");
        config.spec.backend =
            read_qrc(raw, qrc_section, config.global_seed, config.backend_seed_explicit);
        qrc_section.reject_unused();
    }

    SectionReader output(raw, "output");
    config.output.directory = output.text("directory", "out");
    config.output.emit_states = output.boolean("emit_states", false);
    config.output.workers = static_cast<int>(output.count("workers", 1));
    if (config.output.workers < 1) {
        throw ConfigError(origin + ": output.workers must be >= 1");
    }

    SectionReader diagnostics(raw, "diagnostics");
    config.diagnostics.trials = static_cast<int>(diagnostics.count("trials", 4));
    config.diagnostics.epsilon = diagnostics.number("epsilon", 1e-6);
    config.diagnostics.max_delay = diagnostics.count("max_delay", 20);
    config.diagnostics.input_length = diagnostics.count("input_length", 1000);
    config.diagnostics.noise_amplitude = diagnostics.number("noise_amplitude", 1e-3);
    if (config.diagnostics.trials < 2) {
        throw ConfigError(origin + ": diagnostics.trials must be >= 2");
    }
    if (!(config.diagnostics.epsilon > 0)) {
        throw ConfigError(origin + ": diagnostics.epsilon must be > 0");
    }
    if (config.diagnostics.max_delay < 1) {
        throw ConfigError(origin + ": diagnostics.max_delay must be >= 1");
    }
    if (config.diagnostics.input_length < config.diagnostics.max_delay + 20) {
        throw ConfigError(origin + ": diagnostics.input_length too short for max_delay");
    }
    if (config.diagnostics.noise_amplitude < 0) {
        throw ConfigError(origin + ": diagnostics.noise_amplitude must be >= 0");
    }

    if (raw.sections.count("sweep")) {
        Section& sweep_section = raw.sections["sweep"];
        for (const auto& [key, line] : raw.sweep_order) {
            Entry& entry = sweep_section[key];
            entry.used = true;
            SweepDeclaration declaration{key, parse_value_list(raw, entry, key)};
            // Fail fast on unknown or inapplicable sweep targets.
            ExperimentSpec probe = config.spec;
            apply_override(probe, key, declaration.values.front());
            config.sweeps.push_back(std::move(declaration));
        }
    }

    experiment.reject_unused();
    task.reject_unused();
    output.reject_unused();
    diagnostics.reject_unused();

    try {
        config.spec.validate();
    } catch (const std::exception& e) {
        throw ConfigError(origin + ": " + e.what());
    }
    return config;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream file(path);
    if (!file) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << file.rdbuf();
    return parse_config_text(buffer.str(), path);
}

void override_global_seed(ExperimentConfig& config, std::uint64_t seed) {
    config.global_seed = seed;
    if (!config.task_seed_explicit) config.spec.task.seed = seed;
    if (!config.backend_seed_explicit) {
        std::visit([seed](auto& backend) { backend.seed = seed; }, config.spec.backend);
    }
}

void apply_override(ExperimentSpec& spec, const std::string& key, double value) {
    auto integral = [&](const char* what) {
        if (value != std::floor(value)) {
            throw ConfigError("sweep '" + key + "': " + what + " requires an integer, got "
                              + std::to_string(value));
        }
        return static_cast<long>(value);
    };
    auto seed_value = [&]() {
        if (value != std::floor(value) || value < 0) {
            throw ConfigError("sweep '" + key + "': seeds must be non-negative integers");
        }
        return static_cast<std::uint64_t>(value);
    };

    if (key == "experiment.lambda") {
        spec.lambda = value;
        return;
    }
    if (key == "experiment.train_fraction") {
        spec.train_fraction = value;
        return;
    }
    if (key == "experiment.washout") {
        spec.washout = integral("washout");
        return;
    }
    if (key == "task.length") {
        spec.task.length = integral("length");
        return;
    }
    if (key == "task.delay") {
        if (spec.task.kind != tasks::TaskKind::DelayMemory) {
            throw ConfigError("sweep 'task.delay' requires the delay-memory task");
        }
        spec.task.delay = integral("delay");
        return;
    }
    if (key == "task.horizon") {
        if (spec.task.kind != tasks::TaskKind::SinePrediction
            && spec.task.kind != tasks::TaskKind::MackeyGlass) {
            throw ConfigError("sweep 'task.horizon' requires sine-prediction or mackey-glass");
        }
        spec.task.horizon = integral("horizon");
        return;
    }
    if (key == "task.period") {
        if (spec.task.kind != tasks::TaskKind::SinePrediction) {
            throw ConfigError("sweep 'task.period' requires the sine-prediction task");
        }
        spec.task.period = value;
        return;
    }
    if (key == "task.seed") {
        spec.task.seed = seed_value();
        return;
    }

    if (key.rfind("esn.", 0) == 0) {
        auto* config = std::get_if<esn::Config>(&spec.backend);
        if (!config) throw ConfigError("sweep '" + key + "': active backend is not esn");
        const std::string field = key.substr(4);
        if (field == "nodes") config->nodes = integral("nodes");
        else if (field == "spectral_radius") config->spectral_radius = value;
        else if (field == "input_scaling") config->input_scaling = value;
        else if (field == "connectivity") config->connectivity = value;
        else if (field == "leak_rate") config->leak_rate = value;
        else if (field == "seed") config->seed = seed_value();
        else throw ConfigError("sweep '" + key + "': unknown esn field");
        return;
    }
    if (key.rfind("qrc.", 0) == 0) {
        auto* config = std::get_if<qrc::Config>(&spec.backend);
        if (!config) throw ConfigError("sweep '" + key + "': active backend is not qrc");
        const std::string field = key.substr(4);
        if (field == "qubits") config->qubits = integral("qubits");
        else if (field == "tau") config->tau = value;
        else if (field == "virtual_nodes") config->virtual_nodes = integral("virtual_nodes");
        else if (field == "coupling") config->coupling_scale = value;
        else if (field == "field") config->field = value;
        else if (field == "seed") config->seed = seed_value();
        else throw ConfigError("sweep '" + key + "': unknown qrc field");
        return;
    }
    throw ConfigError("sweep: unknown config field '" + key + "'");
}

std::vector<ExperimentSpec> expand_sweeps(const ExperimentConfig& config) {
    std::vector<ExperimentSpec> points{config.spec};
    for (const SweepDeclaration& sweep : config.sweeps) {
        std::vector<ExperimentSpec> expanded;
        expanded.reserve(points.size() * sweep.values.size());
        for (const ExperimentSpec& base : points) {
            for (double value : sweep.values) {
                ExperimentSpec next = base;
                apply_override(next, sweep.key, value);
                expanded.push_back(std::move(next));
            }
        }
        points = std::move(expanded);
    }
    for (const ExperimentSpec& point : points) {
        try {
            point.validate();
        } catch (const std::exception& e) {
            throw ConfigError(std::string("sweep produces an invalid configuration: ")
                              + e.what());
        }
    }
    return points;
}

}  // namespace rescomp::cli
