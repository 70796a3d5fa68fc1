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

#include "rescomp/model_bundle.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rescomp::cli {

namespace {

std::string full_precision(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

class BundleReader {
public:
    BundleReader(std::istream& in, std::string path) : in_(in), path_(std::move(path)) {}

    std::string next_line() {
        std::string line;
        if (!std::getline(in_, line)) {
            fail("unexpected end of file");
        }
        ++line_no_;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return line;
    }

    /// Reads "key value"; enforces the expected key.
    std::string field(const std::string& key) {
        const std::string line = next_line();
        const auto space = line.find(' ');
        if (space == std::string::npos || line.substr(0, space) != key) {
            fail("expected '" + key + " <value>', got '" + line + "'");
        }
        return line.substr(space + 1);
    }

    double number(const std::string& key) { return to_number(field(key), key); }

    long count(const std::string& key) {
        const std::string value = field(key);
        try {
            std::size_t consumed = 0;
            const long parsed = std::stol(value, &consumed);
            if (consumed == value.size()) return parsed;
        } catch (const std::exception&) {
        }
        fail("field '" + key + "': '" + value + "' is not an integer");
    }

    std::uint64_t seed(const std::string& key) {
        const std::string value = field(key);
        try {
            std::size_t consumed = 0;
            const std::uint64_t parsed = std::stoull(value, &consumed);
            if (consumed == value.size()) return parsed;
        } catch (const std::exception&) {
        }
        fail("field '" + key + "': '" + value + "' is not a seed");
    }

    double to_number(const std::string& token, const std::string& context) {
        try {
            std::size_t consumed = 0;
            const double parsed = std::stod(token, &consumed);
            if (consumed == token.size()) return parsed;
        } catch (const std::exception&) {
        }
        fail("corrupted numeric field in " + context + ": '" + token + "'");
    }

    [[noreturn]] void fail(const std::string& message) const {
        throw std::runtime_error(path_ + ":" + std::to_string(line_no_) + ": " + message);
    }

    int line() const { return line_no_; }

private:
    std::istream& in_;
    std::string path_;
    int line_no_ = 0;
};

}  // namespace

void save_bundle(const ModelBundle& bundle, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");

    out << "rescomp-model " << bundle.version << '\n';
    if (const auto* config = std::get_if<esn::Config>(&bundle.backend)) {
        out << "backend esn\n";
        out << "nodes " << config->nodes << '\n';
        out << "input_dim " << config->input_dim << '\n';
        out << "spectral_radius " << full_precision(config->spectral_radius) << '\n';
        out << "input_scaling " << full_precision(config->input_scaling) << '\n';
        out << "connectivity " << full_precision(config->connectivity) << '\n';
        out << "leak_rate " << full_precision(config->leak_rate) << '\n';
        out << "nonlinearity " << esn::to_string(config->nonlinearity) << '\n';
        out << "seed " << config->seed << '\n';
    } else {
        const auto& qconfig = std::get<qrc::Config>(bundle.backend);
        out << "backend qrc\n";
        out << "qubits " << qconfig.qubits << '\n';
        out << "tau " << full_precision(qconfig.tau) << '\n';
        out << "virtual_nodes " << qconfig.virtual_nodes << '\n';
        out << "coupling_scale " << full_precision(qconfig.coupling_scale) << '\n';
        out << "field " << full_precision(qconfig.field) << '\n';
        out << "seed " << qconfig.seed << '\n';
    }

    out << "lambda " << full_precision(bundle.readout.regularization) << '\n';
    out << "outputs " << bundle.readout.outputs() << '\n';
    out << "columns " << bundle.readout.columns() << '\n';
    out << "weights\n";
    for (long r = 0; r < bundle.readout.outputs(); ++r) {
        for (long c = 0; c < bundle.readout.columns(); ++c) {
            if (c) out << ' ';
            out << full_precision(bundle.readout.weights(r, c));
        }
        out << '\n';
    }
    out << "normalization " << full_precision(bundle.input_map.offset) << ' '
        << full_precision(bundle.input_map.scale) << '\n';
    out << "end\n";
    if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

ModelBundle load_bundle(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open model file '" + path + "'");
    BundleReader reader(in, path);

    const std::string version_value = reader.field("rescomp-model");
    if (version_value != std::to_string(kBundleVersion)) {
        reader.fail("unsupported model format version '" + version_value + "' (expected "
                    + std::to_string(kBundleVersion) + ")");
    }

    ModelBundle bundle;
    bundle.version = kBundleVersion;

    const std::string backend_name = reader.field("backend");
    if (backend_name == "esn") {
        esn::Config config;
        config.nodes = reader.count("nodes");
        config.input_dim = reader.count("input_dim");
        config.spectral_radius = reader.number("spectral_radius");
        config.input_scaling = reader.number("input_scaling");
        config.connectivity = reader.number("connectivity");
        config.leak_rate = reader.number("leak_rate");
        const std::string gname = reader.field("nonlinearity");
        try {
            config.nonlinearity = esn::nonlinearity_from_string(gname);
        } catch (const std::invalid_argument&) {
            reader.fail("unknown nonlinearity '" + gname + "'");
        }
        config.seed = reader.seed("seed");
        bundle.backend = config;
    } else if (backend_name == "qrc") {
        qrc::Config config;
        config.qubits = reader.count("qubits");
        config.tau = reader.number("tau");
        config.virtual_nodes = reader.count("virtual_nodes");
        config.coupling_scale = reader.number("coupling_scale");
        config.field = reader.number("field");
        config.seed = reader.seed("seed");
        bundle.backend = config;
    } else {
        reader.fail("unknown backend '" + backend_name + "'");
    }

    bundle.readout.regularization = reader.number("lambda");
    const long outputs = reader.count("outputs");
    const long columns = reader.count("columns");
    if (outputs < 1 || columns < 2) reader.fail("implausible readout dimensions");
    if (reader.next_line() != "weights") reader.fail("expected 'weights' marker");

    bundle.readout.weights.resize(outputs, columns);
    for (long r = 0; r < outputs; ++r) {
        std::istringstream cells(reader.next_line());
        for (long c = 0; c < columns; ++c) {
            std::string token;
            if (!(cells >> token)) {
                reader.fail("weights row " + std::to_string(r) + " has fewer than "
                            + std::to_string(columns) + " entries");
            }
            bundle.readout.weights(r, c) = reader.to_number(token, "weights");
        }
        std::string excess;
        if (cells >> excess) {
            reader.fail("weights row " + std::to_string(r) + " has trailing data");
        }
    }

    {
        std::istringstream cells(reader.field("normalization"));
        std::string offset_token, scale_token, excess;
        if (!(cells >> offset_token >> scale_token) || (cells >> excess)) {
            reader.fail("normalization expects exactly two numbers");
        }
        bundle.input_map.offset = reader.to_number(offset_token, "normalization");
        bundle.input_map.scale = reader.to_number(scale_token, "normalization");
    }
    if (reader.next_line() != "end") reader.fail("expected 'end' marker");
    return bundle;
}

Backend rebuild_backend(const ModelBundle& bundle) {
    Backend backend = build_backend(bundle.backend);
    const ReservoirDescriptor descriptor = backend_descriptor(backend);
    if (bundle.readout.columns() != descriptor.readout_dimension + 1) {
        throw std::runtime_error(
            "model bundle: readout expects " + std::to_string(bundle.readout.columns())
            + " columns but the regenerated backend provides "
            + std::to_string(descriptor.readout_dimension + 1));
    }
    return backend;
}

void validate_bundle_against(const ModelBundle& bundle, const BackendConfig& expected) {
    const ReservoirKind bundle_kind = backend_kind(bundle.backend);
    const ReservoirKind expected_kind = backend_kind(expected);
    if (bundle_kind != expected_kind) {
        throw std::runtime_error(std::string("model bundle backend kind '")
                                 + to_string(bundle_kind) + "' does not match configured '"
                                 + to_string(expected_kind) + "'");
    }
    const ReservoirDescriptor bundle_desc = backend_descriptor(build_backend(bundle.backend));
    const ReservoirDescriptor expected_desc = backend_descriptor(build_backend(expected));
    if (bundle_desc.readout_dimension != expected_desc.readout_dimension) {
        throw std::runtime_error(
            "model bundle readout dimension " + std::to_string(bundle_desc.readout_dimension)
            + " does not match configured backend dimension "
            + std::to_string(expected_desc.readout_dimension));
    }
}

Eigen::MatrixXd predict(const ModelBundle& bundle, const Backend& backend,
                        const TimeSeries& raw_input) {
    const bool quantum = backend_descriptor(backend).kind == ReservoirKind::Quantum;
    const TimeSeries drive_input =
        quantum ? tasks::apply_map(raw_input, bundle.input_map) : raw_input;
    const StateTrajectory trajectory =
        std::visit([&](const auto& r) { return r.drive(drive_input); }, backend);
    return readout::apply_rows(bundle.readout, harvest(trajectory, 0));
}

}  // namespace rescomp::cli
